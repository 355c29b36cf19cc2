#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Base of every error raised by the library. `name()` is the stable
/// identifier reported by the CLI ("ZeroDrive", "IndexRange", ...).
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  /// Numerical errors map to CLI exit code 3, usage errors to 2.
  virtual bool is_usage() const noexcept { return false; }

private:
  std::string name_;
};

#define DICKE_DEFINE_ERROR(Type, usage)                                  \
  class Type : public Error {                                            \
  public:                                                                \
    explicit Type(const std::string& what) : Error(#Type, what) {}       \
    bool is_usage() const noexcept override { return usage; }            \
  };

DICKE_DEFINE_ERROR(InvalidParams, true)
DICKE_DEFINE_ERROR(ZeroDrive, false)
DICKE_DEFINE_ERROR(IndexRange, false)
DICKE_DEFINE_ERROR(PairUndefined, false)
DICKE_DEFINE_ERROR(NumericalFailure, false)
DICKE_DEFINE_ERROR(SizeExceeded, false)
DICKE_DEFINE_ERROR(DegenerateNullSpace, false)
DICKE_DEFINE_ERROR(NotConverged, false)
DICKE_DEFINE_ERROR(GridTooCoarse, true)
DICKE_DEFINE_ERROR(InvalidAxis, true)
DICKE_DEFINE_ERROR(UnknownFigure, true)

#undef DICKE_DEFINE_ERROR

}  // namespace dicke
