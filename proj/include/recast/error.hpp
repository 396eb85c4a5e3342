#ifndef RECAST_ERROR_HPP
#define RECAST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace recast {

// Base class for all domain errors raised by the toolkit.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- type system ---
struct UnifyError : Error {
  using Error::Error;
};
struct MismatchError : UnifyError {
  using UnifyError::UnifyError;
};
struct OccursCheckError : UnifyError {
  using UnifyError::UnifyError;
};
struct UnknownSymbolError : Error {
  using Error::Error;
};
struct TypeError : Error {
  using Error::Error;
};

// --- coercion repair ---
struct NoRepairError : Error {
  using Error::Error;
};
struct AmbiguousRepairError : Error {
  // Renderings of two distinct minimal repairs, for diagnostics.
  std::string first, second;
  AmbiguousRepairError(const std::string& msg, std::string a, std::string b)
      : Error(msg), first(std::move(a)), second(std::move(b)) {}
};

// --- s-expressions / treebank ---
struct SexprError : Error {
  using Error::Error;
};
struct UnbalancedParensError : SexprError {
  using SexprError::SexprError;
};
struct EmptyExpressionError : SexprError {
  using SexprError::SexprError;
};
struct StrayTokenError : SexprError {
  using SexprError::SexprError;
};
struct EmptyChildrenError : SexprError {
  using SexprError::SexprError;
};
struct ArityError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

// --- grammar ---
struct EmptyTreebankError : Error {
  using Error::Error;
};
struct LabelClashError : Error {
  using Error::Error;
};
struct MalformedIntermediateError : Error {
  using Error::Error;
};

// --- parser ---
struct EmptyInputError : Error {
  using Error::Error;
};
struct InvalidKError : Error {
  using Error::Error;
};

// --- experiment ---
struct MissingGoldTermError : Error {
  using Error::Error;
};
struct TooSmallError : Error {
  using Error::Error;
};

// --- baselines ---
struct EmptyCorpusError : Error {
  using Error::Error;
};

// --- configuration / CLI ---
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace recast

#endif
