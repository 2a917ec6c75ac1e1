#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fineval {

// Base class for every error the library raises. `what()` carries a
// module-qualified, human-readable message; derived types exist so callers
// and tests can catch specific failure modes.
class Error : public std::runtime_error {
public:
  explicit Error(std::string message) : std::runtime_error(std::move(message)) {}
};

// ---- corpus / record files -------------------------------------------------

class IoFailure : public Error {
public:
  using Error::Error;
};

class MalformedRecord : public Error {
public:
  MalformedRecord(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class DuplicateId : public Error {
public:
  explicit DuplicateId(const std::string& id)
      : Error("duplicate report id \"" + id + "\""), id_(id) {}
  const std::string& id() const { return id_; }

private:
  std::string id_;
};

// ---- llm gateway -----------------------------------------------------------

class TransportError : public Error {
public:
  TransportError(int status, const std::string& body)
      : Error("transport failure, status " + std::to_string(status) + ": " + body),
        status_(status) {}
  int status() const { return status_; }

private:
  int status_;
};

class RateLimited : public Error {
public:
  using Error::Error;
};

class UnscriptedRequest : public Error {
public:
  using Error::Error;
};

class ResponseEmpty : public Error {
public:
  using Error::Error;
};

class TagMissing : public Error {
public:
  explicit TagMissing(const std::string& tag) : Error("tag <" + tag + "> not found") {}
};

class TagUnclosed : public Error {
public:
  explicit TagUnclosed(const std::string& tag) : Error("tag <" + tag + "> never closed") {}
};

class NoPayloadFound : public Error {
public:
  using Error::Error;
};

class PayloadMalformed : public Error {
public:
  PayloadMalformed(std::size_t position, const std::string& reason)
      : Error("malformed payload at offset " + std::to_string(position) + ": " + reason),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// ---- attribute mining / curation -------------------------------------------

class MiningFailed : public Error {
public:
  MiningFailed(const std::string& report_id, const std::string& stage, const std::string& why)
      : Error("mining failed for report \"" + report_id + "\" at " + stage + ": " + why) {}
};

class DanglingTarget : public Error {
public:
  DanglingTarget(const std::string& op, const std::string& finding, const std::string& attribute)
      : Error(op + " targets unknown group (" + finding + ", " + attribute + ")") {}
};

class UncommentedGroup : public Error {
public:
  UncommentedGroup(const std::string& finding, const std::string& attribute)
      : Error("group (" + finding + ", " + attribute + ") survived curation without a comment") {}
};

class DuplicateEntry : public Error {
public:
  using Error::Error;
};

class EmptySchema : public Error {
public:
  using Error::Error;
};

// ---- qa construction --------------------------------------------------------

class GenerationInconsistent : public Error {
public:
  GenerationInconsistent(const std::string& report_id, const std::string& finding,
                         const std::string& attribute, const std::string& why)
      : Error("inconsistent generation for (" + report_id + ", " + finding + ", " + attribute +
              "): " + why) {}
};

// ---- evaluation --------------------------------------------------------------

class ExtractionFailed : public Error {
public:
  ExtractionFailed(const std::string& qa_id, const std::string& why)
      : Error("answer extraction failed for " + qa_id + ": " + why) {}
};

class JudgeProtocolError : public Error {
public:
  JudgeProtocolError(const std::string& qa_id, const std::string& raw)
      : Error("judge returned \"" + raw + "\" for " + qa_id + ", expected 0, 0.5 or 1"),
        raw_(raw) {}
  const std::string& raw() const { return raw_; }

private:
  std::string raw_;
};

class MissingCandidate : public Error {
public:
  explicit MissingCandidate(const std::string& report_id)
      : Error("no candidate report for benchmark id \"" + report_id + "\"") {}
};

class MissingBenchmark : public Error {
public:
  explicit MissingBenchmark(const std::string& report_id)
      : Error("no benchmark pairs for candidate id \"" + report_id + "\"") {}
};

// ---- perturbation -------------------------------------------------------------

class ExistenceViolated : public Error {
public:
  ExistenceViolated(const std::string& report_id, const std::string& finding)
      : Error("adversarial rewrite of \"" + report_id + "\" dropped finding \"" + finding + "\"") {}
};

class EmptyRewrite : public Error {
public:
  using Error::Error;
};

// ---- metrics / statistics ------------------------------------------------------

class EmptyText : public Error {
public:
  using Error::Error;
};

class LengthMismatch : public Error {
public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("vector lengths differ: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class ZeroVariance : public Error {
public:
  using Error::Error;
};

class AllTied : public Error {
public:
  using Error::Error;
};

class InsufficientOverlap : public Error {
public:
  using Error::Error;
};

}  // namespace fineval
