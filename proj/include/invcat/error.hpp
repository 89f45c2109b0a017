#ifndef INVCAT_ERROR_HPP
#define INVCAT_ERROR_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace invcat {

enum class ErrorKind {
  CycleFound,
  DuplicateLabel,
  UnknownLabel,
  StepFailure,
  NonCommutingDiagram,
  CompositionMismatch,
  SimplicialIdentity,
  InvalidMap,
  AssocFailure,
  SpanLegNotPrefibration,
  MissingComposite,
  LabelClash,
  InvalidProfile,
  InvalidDiagram,
  TargetMismatch,
  NotPrefibrantBelow,
  MatchingObjectFailure,
  NotFibrantBase,
  NotPrefibrant,
  SizeBoundExceeded,
  UniversalPropertyViolation,
  BoundExceeded,
  NotPrime,
  NotAGroup,
  UnorderedObjects,
  ScopeError,
  SyntaxError,
  UnresolvedName,
  InstanceMismatch,
};

const char* to_string(ErrorKind kind);

/// Error carrying a machine-readable kind and a JSON detail payload.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message, nlohmann::json detail = {})
    : std::runtime_error(message), kind_(kind), detail_(std::move(detail)) {}

  ErrorKind kind() const { return kind_; }
  const nlohmann::json& detail() const { return detail_; }

  nlohmann::json to_json() const {
    return {{"error", to_string(kind_)}, {"message", what()}, {"detail", detail_}};
  }

private:
  ErrorKind kind_;
  nlohmann::json detail_;
};

} // namespace invcat

#endif
