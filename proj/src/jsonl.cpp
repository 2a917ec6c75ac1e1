#include "fineval/jsonl.hpp"

namespace fineval {

Json parse_record_line(const std::string& line, std::size_t line_no) {
  Json record = Json::parse(line, nullptr, false);
  if (record.is_discarded()) throw MalformedRecord(line_no, "invalid JSON");
  if (!record.is_object()) throw MalformedRecord(line_no, "record is not an object");
  return record;
}

JsonlWriter::JsonlWriter(const std::filesystem::path& path) : path_(path), out_(path) {
  if (!out_) throw IoFailure("cannot open " + path.string() + " for writing");
}

void JsonlWriter::write(const Json& record) {
  out_ << record.dump() << '\n';
  if (!out_) throw IoFailure("write error on " + path_.string());
}

void JsonlWriter::close() {
  out_.close();
  if (out_.fail()) throw IoFailure("close error on " + path_.string());
}

std::string require_string(const Json& record, const char* key, std::size_t line_no) {
  const Json& field = require_field(record, key, line_no);
  if (!field.is_string())
    throw MalformedRecord(line_no, std::string("field '") + key + "' is not a string");
  return field.get<std::string>();
}

const Json& require_field(const Json& record, const char* key, std::size_t line_no) {
  auto it = record.find(key);
  if (it == record.end())
    throw MalformedRecord(line_no, std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace fineval
