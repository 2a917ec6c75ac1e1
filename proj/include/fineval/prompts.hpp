#pragma once

#include <string>
#include <vector>

#include "fineval/gateway.hpp"

namespace fineval::prompts {

// Every builder is a pure function of its inputs, so request fingerprints and
// cache keys are stable across runs. Construction-path prompts take the
// sampling temperature from config; evaluation-path prompts are always built
// at temperature 0.

// Three-step mining request: segment the report, bucket sentences per positive
// finding, convert them to [sentence, finding, attribute, value] quadruplets.
// Step outputs arrive wrapped in <step1>/<step2>/<step3> tags.
ChatRequest mining_request(const std::string& report_text,
                           const std::vector<std::string>& positive_findings,
                           const std::string& model, double temperature, int max_tokens);

// Three-step QA construction for one (finding, attribute): mention gate
// (<step1>Yes/No</step1>), content extraction (<step2>[attribute, content]</step2>),
// question-answer pair (<step3>[question, answer]</step3>).
ChatRequest qa_construction_request(const std::string& report_text, const std::string& finding,
                                    const std::string& attribute, const std::string& explanation,
                                    const std::vector<std::string>& examples,
                                    const std::string& model, double temperature, int max_tokens);

// Answer extraction from a candidate report; the model must return the
// literal 'no answer' when the report does not address the question. The
// attribute block is omitted for existence questions.
ChatRequest answer_extraction_request(const std::string& candidate_text,
                                      const std::string& question, const std::string& finding,
                                      const std::string& attribute, const std::string& explanation,
                                      const std::vector<std::string>& examples,
                                      const std::string& model, int max_tokens);

// Graded comparison of a predicted answer against the reference; the model
// must output exactly one token from {0, 0.5, 1}.
ChatRequest answer_scoring_request(const std::string& question, const std::string& gold,
                                   const std::string& predicted, const std::string& model,
                                   int max_tokens);

// Detail-corrupting rewrite: flip fine-grained attributes, preserve every
// finding's existence, keep high n-gram similarity.
ChatRequest adversarial_request(const std::string& report_text, const std::string& model,
                                double temperature, int max_tokens);

// Fact-preserving rewrite that minimizes n-gram overlap.
ChatRequest paraphrase_request(const std::string& report_text, const std::string& model,
                               double temperature, int max_tokens);

}  // namespace fineval::prompts
