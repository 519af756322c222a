#pragma once

#include <stdexcept>
#include <string>

namespace proc2bpmn {

/// Base class of every failure raised by the compiler.  `kind()` is the
/// stable, machine-readable name printed in CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define PROC2BPMN_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  };

// annotation
PROC2BPMN_DEFINE_ERROR(MalformedInput)
PROC2BPMN_DEFINE_ERROR(SchemaViolation)
// lexicon
PROC2BPMN_DEFINE_ERROR(MalformedLexicon)
// coreference
PROC2BPMN_DEFINE_ERROR(StaleResolution)
// extraction
PROC2BPMN_DEFINE_ERROR(NoParticipants)
PROC2BPMN_DEFINE_ERROR(DanglingAlternative)
// process table
PROC2BPMN_DEFINE_ERROR(BadOrderLabel)
PROC2BPMN_DEFINE_ERROR(EmptyProcess)
PROC2BPMN_DEFINE_ERROR(CsvSchemaError)
PROC2BPMN_DEFINE_ERROR(TableInvariantError)
// bpmn
PROC2BPMN_DEFINE_ERROR(UnlaidModel)

#undef PROC2BPMN_DEFINE_ERROR

}  // namespace proc2bpmn
