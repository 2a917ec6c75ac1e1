#include "fineval/corpus.hpp"

#include <unordered_set>

#include "fineval/jsonl.hpp"
#include "fineval/text.hpp"

namespace fineval {

void validate_report(const Report& report, std::size_t line_no) {
  if (report.id.empty()) throw MalformedRecord(line_no, "empty report id");
  if (report.text.empty()) throw MalformedRecord(line_no, "empty report text");
  std::unordered_set<std::string> seen;
  for (const FindingLabel& f : report.findings) {
    if (f.name.empty()) throw MalformedRecord(line_no, "empty finding name");
    if (f.name != normalize_label(f.name))
      throw MalformedRecord(line_no, "finding name \"" + f.name + "\" is not in canonical form");
    if (!seen.insert(f.name).second)
      throw MalformedRecord(line_no, "finding \"" + f.name + "\" listed twice");
  }
}

std::vector<std::string> positive_findings(const Report& report) {
  std::vector<std::string> names;
  for (const FindingLabel& f : report.findings) {
    if (f.positive) names.push_back(f.name);
  }
  return names;
}

std::vector<Report> load_corpus(const std::filesystem::path& path, Role role) {
  std::vector<Report> reports;
  std::unordered_set<std::string> ids;
  read_jsonl(path, [&](std::size_t line_no, const Json& record) {
    Report report;
    report.role = role;
    report.id = require_string(record, "id", line_no);
    report.text = require_string(record, "text", line_no);
    if (record.contains("findings")) {
      const Json& findings = record.at("findings");
      if (!findings.is_array()) throw MalformedRecord(line_no, "'findings' is not an array");
      for (const Json& f : findings) {
        if (!f.is_object()) throw MalformedRecord(line_no, "finding entry is not an object");
        FindingLabel label;
        label.name = normalize_label(require_string(f, "name", line_no));
        const Json& positive = require_field(f, "positive", line_no);
        if (!positive.is_boolean()) throw MalformedRecord(line_no, "'positive' is not a boolean");
        label.positive = positive.get<bool>();
        report.findings.push_back(std::move(label));
      }
    }
    validate_report(report, line_no);
    if (!ids.insert(report.id).second) throw DuplicateId(report.id);
    reports.push_back(std::move(report));
  });
  return reports;
}

void save_corpus(const std::vector<Report>& reports, const std::filesystem::path& path) {
  std::unordered_set<std::string> ids;
  for (const Report& report : reports) {
    validate_report(report);
    if (!ids.insert(report.id).second) throw DuplicateId(report.id);
  }
  JsonlWriter out(path);
  for (const Report& report : reports) {
    Json findings = Json::array();
    for (const FindingLabel& f : report.findings) {
      findings.push_back({{"name", f.name}, {"positive", f.positive}});
    }
    out.write({{"id", report.id}, {"text", report.text}, {"findings", findings}});
  }
  out.close();
}

}  // namespace fineval
