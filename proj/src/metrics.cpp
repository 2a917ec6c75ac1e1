#include "fineval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fineval/errors.hpp"

namespace fineval {

namespace {

constexpr double kEpsilon = 1e-9;

bool is_token_byte(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

// Clipped n-gram matches of cand against ref, and the total n-gram count of
// cand. N-grams are joined token sequences.
std::pair<std::size_t, std::size_t> clipped_ngram_matches(const std::vector<std::string>& cand,
                                                          const std::vector<std::string>& ref,
                                                          std::size_t n) {
  if (cand.size() < n) return {0, 0};
  auto count_ngrams = [n](const std::vector<std::string>& tokens) {
    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (std::size_t j = 1; j < n; ++j) {
        key.push_back('\x1f');
        key += tokens[i + j];
      }
      ++counts[key];
    }
    return counts;
  };
  auto cand_counts = count_ngrams(cand);
  auto ref_counts = count_ngrams(ref);
  std::size_t matches = 0;
  std::size_t total = 0;
  for (const auto& [key, count] : cand_counts) {
    total += count;
    auto it = ref_counts.find(key);
    if (it != ref_counts.end()) matches += std::min(count, it->second);
  }
  return {matches, total};
}

// Modified n-gram precision with the degenerate cases pinned: when the
// candidate has no n-grams the precision is 1 if the reference has none
// either (so bleu2(a, a) == 1 holds for single-token texts) and 0 otherwise.
double modified_precision(const std::vector<std::string>& cand, const std::vector<std::string>& ref,
                          std::size_t n) {
  auto [matches, total] = clipped_ngram_matches(cand, ref, n);
  if (total == 0) return ref.size() < n ? 1.0 : 0.0;
  return static_cast<double>(matches) / static_cast<double>(total);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (is_token_byte(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double bleu2(std::string_view candidate, std::string_view reference) {
  auto cand = tokenize(candidate);
  auto ref = tokenize(reference);
  if (cand.empty() || ref.empty()) throw EmptyText("bleu2 requires non-empty texts");

  double p1 = modified_precision(cand, ref, 1);
  double p2 = modified_precision(cand, ref, 2);
  if (p1 == 0.0) p1 = kEpsilon;
  if (p2 == 0.0) p2 = kEpsilon;

  double bp = 1.0;
  if (cand.size() < ref.size()) {
    bp = std::exp(1.0 - static_cast<double>(ref.size()) / static_cast<double>(cand.size()));
  }
  return bp * std::sqrt(p1 * p2);
}

double rouge_l(std::string_view candidate, std::string_view reference) {
  auto cand = tokenize(candidate);
  auto ref = tokenize(reference);
  if (cand.empty() || ref.empty()) throw EmptyText("rouge_l requires non-empty texts");

  // Classic O(|cand| * |ref|) LCS table, rolling rows.
  std::vector<std::size_t> prev(ref.size() + 1, 0);
  std::vector<std::size_t> curr(ref.size() + 1, 0);
  for (std::size_t i = 1; i <= cand.size(); ++i) {
    for (std::size_t j = 1; j <= ref.size(); ++j) {
      if (cand[i - 1] == ref[j - 1]) {
        curr[j] = prev[j - 1] + 1;
      } else {
        curr[j] = std::max(prev[j], curr[j - 1]);
      }
    }
    std::swap(prev, curr);
  }
  double lcs = static_cast<double>(prev[ref.size()]);
  if (lcs == 0.0) return 0.0;
  double p = lcs / static_cast<double>(cand.size());
  double r = lcs / static_cast<double>(ref.size());
  return 2.0 * p * r / (p + r);
}

double bigram_overlap(std::string_view text, std::string_view base) {
  auto cand = tokenize(text);
  auto ref = tokenize(base);
  if (cand.empty() || ref.empty()) throw EmptyText("bigram_overlap requires non-empty texts");
  std::size_t n = (cand.size() < 2 || ref.size() < 2) ? 1 : 2;
  auto [matches, total] = clipped_ngram_matches(cand, ref, n);
  if (total == 0) return 0.0;
  return static_cast<double>(matches) / static_cast<double>(total);
}

}  // namespace fineval
