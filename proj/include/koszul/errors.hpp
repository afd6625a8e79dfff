#pragma once
#include <stdexcept>
#include <string>

namespace koszul {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define KOSZUL_ERROR(Name)                                            \
  struct Name : Error {                                               \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }      \
  };

KOSZUL_ERROR(FieldMismatch)
KOSZUL_ERROR(DivisionByZero)
KOSZUL_ERROR(NotAComplex)
KOSZUL_ERROR(UnknownObject)
KOSZUL_ERROR(NotSplit)
KOSZUL_ERROR(IllFormedDifferential)
KOSZUL_ERROR(NotCurvedMap)
KOSZUL_ERROR(EnumerationTooLarge)
KOSZUL_ERROR(TruncationTooSmall)
KOSZUL_ERROR(NotSimplicial)
KOSZUL_ERROR(IncompleteCandidate)
KOSZUL_ERROR(ComparisonFailure)
KOSZUL_ERROR(Mismatch)
KOSZUL_ERROR(InvalidInput)

#undef KOSZUL_ERROR

// carries a JSON pointer to the offending node
struct ParseError : Error {
  std::string pointer;
  std::string detail;  // message without the pointer
  ParseError(std::string ptr, const std::string& msg)
      : Error(msg + " at " + (ptr.empty() ? std::string("/") : ptr)), pointer(std::move(ptr)), detail(msg) {}
  const char* kind() const noexcept override { return "ParseError"; }
};

}  // namespace koszul
