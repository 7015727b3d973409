#pragma once

#include <stdexcept>
#include <string>

namespace rzlab {

/// Base class of every error raised by the library. `kind()` is a stable
/// identifier that reports and the CLI surface verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

  /// True for errors caused by bad user input rather than a failed check.
  virtual bool is_input_error() const noexcept { return true; }

 private:
  std::string kind_;
};

#define RZLAB_DEFINE_ERROR(Name, Input)                                    \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(#Name, what) {}         \
    bool is_input_error() const noexcept override { return Input; }        \
  }

RZLAB_DEFINE_ERROR(InvalidEisenstein, true);
RZLAB_DEFINE_ERROR(ReducibleUnramifiedPoly, true);
RZLAB_DEFINE_ERROR(InvalidExtension, true);
RZLAB_DEFINE_ERROR(NotAUnit, true);
RZLAB_DEFINE_ERROR(InexactDivision, false);
RZLAB_DEFINE_ERROR(PrecisionExhausted, true);
RZLAB_DEFINE_ERROR(DegenerateLattice, true);
RZLAB_DEFINE_ERROR(UnsupportedModularity, true);
RZLAB_DEFINE_ERROR(LiftStall, false);
RZLAB_DEFINE_ERROR(SingularGramError, true);
RZLAB_DEFINE_ERROR(CaseInapplicable, true);
RZLAB_DEFINE_ERROR(NotRUCase, true);
RZLAB_DEFINE_ERROR(DerivationMismatch, false);
RZLAB_DEFINE_ERROR(TruncatedTail, false);
RZLAB_DEFINE_ERROR(FormatError, true);

#undef RZLAB_DEFINE_ERROR

}  // namespace rzlab
