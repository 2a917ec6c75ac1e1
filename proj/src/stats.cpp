#include "fineval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "fineval/jsonl.hpp"

namespace fineval {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_lengths(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw LengthMismatch(xs.size(), ys.size());
  if (xs.size() < 2) throw LengthMismatch(xs.size(), 2);
}

// Merge-sort that counts strict inversions (pairs i < j with v[i] > v[j]).
std::size_t count_inversions(std::vector<double>& v) {
  std::vector<double> buf(v.size());
  std::size_t inversions = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo + width < v.size(); lo += 2 * width) {
      std::size_t mid = lo + width;
      std::size_t hi = std::min(mid + width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          inversions += mid - i;
          buf[k++] = v[j++];
        } else {
          buf[k++] = v[i++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
      std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                buf.begin() + static_cast<std::ptrdiff_t>(hi),
                v.begin() + static_cast<std::ptrdiff_t>(lo));
    }
  }
  return inversions;
}

// Sum over runs of equal keys of t*(t-1)/2, i.e. the number of tied pairs.
template <class It, class Eq>
std::size_t tied_pairs(It begin, It end, Eq eq) {
  std::size_t pairs = 0;
  It run = begin;
  for (It it = begin; it != end; ++it) {
    if (it == run || eq(*run, *it)) continue;
    std::size_t t = static_cast<std::size_t>(it - run);
    pairs += t * (t - 1) / 2;
    run = it;
  }
  std::size_t t = static_cast<std::size_t>(end - run);
  pairs += t * (t - 1) / 2;
  return pairs;
}

double coefficient_or_nan(double (*fn)(std::span<const double>, std::span<const double>),
                          std::span<const double> xs, std::span<const double> ys) {
  try {
    return fn(xs, ys);
  } catch (const ZeroVariance&) {
    return kNaN;
  } catch (const AllTied&) {
    return kNaN;
  }
}

Json matrix_to_json(const std::vector<std::vector<double>>& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (double v : row) {
      if (std::isnan(v)) {
        r.push_back(nullptr);
      } else {
        r.push_back(v);
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
  check_lengths(xs, ys);
  const double n = static_cast<double>(xs.size());
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx;
    double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ZeroVariance("pearson input has zero variance");
  return sxy / std::sqrt(sxx * syy);
}

double kendall_tau(std::span<const double> xs, std::span<const double> ys) {
  check_lengths(xs, ys);
  const std::size_t n = xs.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (xs[a] != xs[b]) return xs[a] < xs[b];
    return ys[a] < ys[b];
  });

  // Pairs tied in x, and tied in both, counted over the (x, y)-sorted order.
  std::size_t xtie = 0, xytie = 0;
  {
    std::size_t run_x = 1, run_xy = 1;
    for (std::size_t i = 1; i <= n; ++i) {
      bool same_x = i < n && xs[order[i]] == xs[order[i - 1]];
      bool same_xy = same_x && ys[order[i]] == ys[order[i - 1]];
      if (same_x) {
        ++run_x;
      } else {
        xtie += run_x * (run_x - 1) / 2;
        run_x = 1;
      }
      if (same_xy) {
        ++run_xy;
      } else {
        xytie += run_xy * (run_xy - 1) / 2;
        run_xy = 1;
      }
    }
  }

  std::vector<double> y_in_x_order(n);
  for (std::size_t i = 0; i < n; ++i) y_in_x_order[i] = ys[order[i]];
  std::size_t discordant = count_inversions(y_in_x_order);  // sorts the copy

  std::size_t ytie = tied_pairs(y_in_x_order.begin(), y_in_x_order.end(),
                                [](double a, double b) { return a == b; });

  const std::size_t total = n * (n - 1) / 2;
  if (xtie == total || ytie == total) throw AllTied("kendall_tau input is constant");

  double con_minus_dis = static_cast<double>(total) - static_cast<double>(xtie) -
                         static_cast<double>(ytie) + static_cast<double>(xytie) -
                         2.0 * static_cast<double>(discordant);
  double denom = std::sqrt(static_cast<double>(total - xtie)) *
                 std::sqrt(static_cast<double>(total - ytie));
  return con_minus_dis / denom;
}

std::vector<double> mid_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  check_lengths(xs, ys);
  auto rx = mid_ranks(xs);
  auto ry = mid_ranks(ys);
  return pearson(rx, ry);
}

CorrelationReport correlation_matrix(const std::vector<ScoreVector>& vectors) {
  if (vectors.size() < 2)
    throw InsufficientOverlap("correlation_matrix needs at least two score vectors");

  // Intersection of report_ids, processed in sorted id order.
  std::map<std::string, std::size_t> id_count;
  for (const ScoreVector& vec : vectors) {
    std::map<std::string, double> dedup;
    for (const auto& [id, value] : vec.values) dedup.emplace(id, value);
    if (dedup.size() != vec.values.size())
      throw DuplicateId("score vector \"" + vec.label + "\" repeats a report id");
    for (const auto& [id, value] : dedup) ++id_count[id];
  }
  std::vector<std::string> shared_ids;
  for (const auto& [id, count] : id_count) {
    if (count == vectors.size()) shared_ids.push_back(id);
  }
  if (shared_ids.size() < 2)
    throw InsufficientOverlap("only " + std::to_string(shared_ids.size()) +
                              " report ids shared by all vectors");

  std::vector<std::vector<double>> aligned(vectors.size());
  for (std::size_t v = 0; v < vectors.size(); ++v) {
    std::map<std::string, double> lookup(vectors[v].values.begin(), vectors[v].values.end());
    aligned[v].reserve(shared_ids.size());
    for (const std::string& id : shared_ids) aligned[v].push_back(lookup.at(id));
  }

  CorrelationReport report;
  report.aligned_count = shared_ids.size();
  for (const ScoreVector& vec : vectors) report.labels.push_back(vec.label);
  const std::size_t m = vectors.size();
  auto square = [m] { return std::vector<std::vector<double>>(m, std::vector<double>(m, kNaN)); };
  report.pearson = square();
  report.kendall = square();
  report.spearman = square();

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      double p = coefficient_or_nan(&pearson, aligned[i], aligned[j]);
      double k = coefficient_or_nan(&kendall_tau, aligned[i], aligned[j]);
      double s = coefficient_or_nan(&spearman, aligned[i], aligned[j]);
      report.pearson[i][j] = report.pearson[j][i] = p;
      report.kendall[i][j] = report.kendall[j][i] = k;
      report.spearman[i][j] = report.spearman[j][i] = s;
    }
  }
  return report;
}

ScoreVector load_score_vector(const std::filesystem::path& path) {
  ScoreVector vec;
  bool have_header = false;
  read_jsonl(path, [&](std::size_t line_no, const Json& record) {
    if (!have_header) {
      vec.label = require_string(record, "label", line_no);
      have_header = true;
      return;
    }
    std::string id = require_string(record, "report_id", line_no);
    const Json& value = require_field(record, "value", line_no);
    if (!value.is_number()) throw MalformedRecord(line_no, "'value' is not a number");
    vec.values.emplace_back(std::move(id), value.get<double>());
  });
  if (!have_header) throw MalformedRecord(0, "score vector file has no header record");
  if (vec.values.empty()) throw MalformedRecord(0, "score vector \"" + vec.label + "\" is empty");
  return vec;
}

void save_score_vector(const ScoreVector& vec, const std::filesystem::path& path) {
  JsonlWriter out(path);
  out.write({{"label", vec.label}});
  for (const auto& [id, value] : vec.values) {
    out.write({{"report_id", id}, {"value", value}});
  }
  out.close();
}

void save_correlation_report(const CorrelationReport& report, const std::filesystem::path& path) {
  Json j{{"labels", report.labels},
         {"aligned_count", report.aligned_count},
         {"pearson", matrix_to_json(report.pearson)},
         {"kendall", matrix_to_json(report.kendall)},
         {"spearman", matrix_to_json(report.spearman)}};
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoFailure("write error on " + path.string());
}

std::string format_correlation_report(const CorrelationReport& report) {
  std::ostringstream os;
  auto print_matrix = [&](const char* name, const std::vector<std::vector<double>>& m) {
    os << name << " (n=" << report.aligned_count << ")\n";
    os << "  " << std::string(14, ' ');
    for (const std::string& label : report.labels) os << " " << label.substr(0, 12);
    os << "\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::string label = report.labels[i].substr(0, 14);
      os << "  " << label << std::string(14 - label.size(), ' ');
      for (double v : m[i]) {
        char buf[16];
        if (std::isnan(v)) {
          std::snprintf(buf, sizeof(buf), " %8s", "nan");
        } else {
          std::snprintf(buf, sizeof(buf), " %8.4f", v);
        }
        os << buf;
      }
      os << "\n";
    }
  };
  print_matrix("pearson", report.pearson);
  print_matrix("kendall", report.kendall);
  print_matrix("spearman", report.spearman);
  return os.str();
}

}  // namespace fineval
