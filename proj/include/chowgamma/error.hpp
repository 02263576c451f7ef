#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chowgamma/flat.hpp"

namespace chowgamma {

enum class ErrorKind {
  InvalidMatroid,
  InvalidInput,
  BadParameters,
  NotAFlat,
  NotSimple,
  NotUpwardClosed,
  NotMeetClosed,
  MissingIrreducible,
  JoinClosureViolation,
  NotGCompatible,
  ImproperCut,
  CutContainsAtom,
  NotContained,
  NotFlag,
  Stuck,
  NotUnique,
  NotNested,
  NotNestedLocal,
  RankNotOne,
  NotMaximal,
  NotIrreducible,
  NotPalindromic,
  TooLarge,
  MixedFactorStep,
  NoBinaryFiltration,
  FiberMismatch,
  Overflow,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `witness` names the offending flats, if any.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<Flat> witness = {});

  ErrorKind kind() const { return kind_; }
  const std::vector<Flat>& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<Flat> witness_;
};

}  // namespace chowgamma
