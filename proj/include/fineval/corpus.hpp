#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fineval {

enum class Role { reference, candidate };

// Positive/negative label for one finding of one report. Names are kept in
// canonical form (lowercase, collapsed whitespace) so schema lookups are
// exact-match.
struct FindingLabel {
  std::string name;
  bool positive = false;

  bool operator==(const FindingLabel&) const = default;
};

struct Report {
  std::string id;
  std::string text;
  std::vector<FindingLabel> findings;
  Role role = Role::reference;

  bool operator==(const Report& other) const {
    return id == other.id && text == other.text && findings == other.findings;
  }
};

// Invariant check for a single report: non-empty id and text, finding names
// non-empty, canonical, and unique within the report. Throws MalformedRecord
// with the given line number on violation.
void validate_report(const Report& report, std::size_t line_no = 0);

// Names of positive findings, input order preserved.
std::vector<std::string> positive_findings(const Report& report);

// Reads a line-delimited corpus file. Finding names are normalized on ingest;
// ids must be unique across the file. Candidate corpora may omit the findings
// array entirely.
std::vector<Report> load_corpus(const std::filesystem::path& path, Role role);

// Writes a corpus in the same line-delimited format. load_corpus(save_corpus(R))
// reproduces R field for field.
void save_corpus(const std::vector<Report>& reports, const std::filesystem::path& path);

}  // namespace fineval
