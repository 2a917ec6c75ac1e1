#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "fineval/errors.hpp"

namespace fineval {

using Json = nlohmann::json;

// Parses one line of a line-delimited record file. Throws MalformedRecord with
// the 1-based line number on bad syntax or when the record is not an object.
Json parse_record_line(const std::string& line, std::size_t line_no);

// Calls fn(line_no, record) for every non-blank line of the file.
template <class Fn>
void read_jsonl(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    fn(line_no, parse_record_line(line, line_no));
  }
  if (in.bad()) throw IoFailure("read error on " + path.string());
}

// One JSON record per line, '\n' separated. Key order within a record is
// alphabetical (nlohmann's object order), which keeps output files
// byte-stable across runs.
class JsonlWriter {
public:
  explicit JsonlWriter(const std::filesystem::path& path);
  void write(const Json& record);
  void close();

private:
  std::filesystem::path path_;
  std::ofstream out_;
};

// Field accessors that turn schema violations into line-numbered errors.
std::string require_string(const Json& record, const char* key, std::size_t line_no);
const Json& require_field(const Json& record, const char* key, std::size_t line_no);

}  // namespace fineval
