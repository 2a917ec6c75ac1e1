#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fineval {

// Per-report score series for one metric or rater, the unit the correlation
// analyses operate on. Imported external metrics and human ratings arrive as
// these.
struct ScoreVector {
  std::string label;
  std::vector<std::pair<std::string, double>> values;  // (report_id, value)
};

struct CorrelationReport {
  std::vector<std::string> labels;
  // Square matrices indexed [i][j]; NaN where a coefficient is undefined
  // (zero variance / all tied).
  std::vector<std::vector<double>> pearson;
  std::vector<std::vector<double>> kendall;
  std::vector<std::vector<double>> spearman;
  std::size_t aligned_count = 0;  // size of the report_id intersection
};

// Pearson product-moment correlation. Throws LengthMismatch, ZeroVariance;
// requires length >= 2.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Kendall tau-b (tie-corrected), computed by sort + merge-sort inversion
// counting rather than pair enumeration. Throws LengthMismatch; AllTied when
// either input is constant.
double kendall_tau(std::span<const double> xs, std::span<const double> ys);

// Spearman rank correlation: Pearson over mid-ranks (ties get average ranks).
// Errors as pearson.
double spearman(std::span<const double> xs, std::span<const double> ys);

// Mid-ranks (1-based, ties averaged). Exposed because Spearman's contract is
// defined through it.
std::vector<double> mid_ranks(std::span<const double> values);

// Aligns the vectors on the intersection of their report_ids (sorted order)
// and computes all three coefficient matrices. Requires >= 2 vectors and an
// intersection of >= 2 ids, else InsufficientOverlap.
CorrelationReport correlation_matrix(const std::vector<ScoreVector>& vectors);

// Score-vector file: header record {"label": ...} followed by
// {"report_id", "value"} records. The import contract for external metrics
// and human ratings.
ScoreVector load_score_vector(const std::filesystem::path& path);
void save_score_vector(const ScoreVector& vec, const std::filesystem::path& path);

void save_correlation_report(const CorrelationReport& report, const std::filesystem::path& path);

// Human-readable coefficient tables.
std::string format_correlation_report(const CorrelationReport& report);

}  // namespace fineval
