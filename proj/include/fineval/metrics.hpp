#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fineval {

// The one tokenizer every lexical metric uses: lowercase, tokens are maximal
// runs of alphanumeric bytes (non-ASCII bytes count as letters so UTF-8 words
// survive), everything else separates. Stated once so BLEU/ROUGE are
// reproducible bit-exactly.
std::vector<std::string> tokenize(std::string_view text);

// Sentence-level BLEU-2: geometric mean of clipped 1-gram and 2-gram modified
// precisions times the brevity penalty exp(1 - r/c) for c < r. A zero
// precision is replaced by epsilon = 1e-9. Throws EmptyText when either side
// has no tokens.
double bleu2(std::string_view candidate, std::string_view reference);

// ROUGE-L F-measure (beta = 1): F = 2PR/(P+R) with P = LCS/|candidate| and
// R = LCS/|reference|. Throws EmptyText when either side has no tokens.
double rouge_l(std::string_view candidate, std::string_view reference);

// Clipped 2-gram modified precision of `text` against `base`; 1.0 for
// identical texts. Used by the paraphrase closeness check. Texts whose token
// count is below 2 fall back to 1-gram precision.
double bigram_overlap(std::string_view text, std::string_view base);

}  // namespace fineval
