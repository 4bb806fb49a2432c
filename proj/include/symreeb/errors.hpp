#pragma once

#include <stdexcept>
#include <string>

namespace symreeb {

// Exit-code classes used by the command line front end.
enum class ErrorClass { usage = 1, degenerate = 2, numerical = 3 };

class Error : public std::runtime_error {
 public:
  Error(const char* name, ErrorClass cls, const std::string& detail)
      : std::runtime_error(detail.empty() ? std::string(name) : std::string(name) + ": " + detail),
        name_(name),
        class_(cls) {}

  const char* name() const noexcept { return name_; }
  ErrorClass error_class() const noexcept { return class_; }
  int exit_code() const noexcept { return static_cast<int>(class_); }

 private:
  const char* name_;
  ErrorClass class_;
};

#define SYMREEB_DEFINE_ERROR(Name, Class)                                         \
  struct Name : Error {                                                           \
    explicit Name(const std::string& detail = {}) : Error(#Name, ErrorClass::Class, detail) {} \
  };

// linear algebra
SYMREEB_DEFINE_ERROR(NotSymplectic, degenerate)
SYMREEB_DEFINE_ERROR(ShapeMismatch, usage)

// crossing-form indices
SYMREEB_DEFINE_ERROR(DegenerateCrossing, degenerate)
SYMREEB_DEFINE_ERROR(CrossingClusterTooDense, numerical)
SYMREEB_DEFINE_ERROR(DegeneratePath, degenerate)
SYMREEB_DEFINE_ERROR(DegeneratePair, degenerate)
SYMREEB_DEFINE_ERROR(PreconditionViolated, degenerate)

// spectral
SYMREEB_DEFINE_ERROR(IntegratorFailure, numerical)
SYMREEB_DEFINE_ERROR(WindowTooCoarse, numerical)
SYMREEB_DEFINE_ERROR(ZeroEigenfunction, numerical)
SYMREEB_DEFINE_ERROR(DegenerateSpectrum, degenerate)
SYMREEB_DEFINE_ERROR(KernelNonTrivial, degenerate)
SYMREEB_DEFINE_ERROR(SymmetryViolated, numerical)

// Reeb dynamics
SYMREEB_DEFINE_ERROR(NotOnSurface, degenerate)
SYMREEB_DEFINE_ERROR(VanishingPairing, degenerate)
SYMREEB_DEFINE_ERROR(NoConvergence, numerical)
SYMREEB_DEFINE_ERROR(NonSymplecticDrift, numerical)
SYMREEB_DEFINE_ERROR(FrameDegenerate, numerical)
SYMREEB_DEFINE_ERROR(MethodDisagreement, numerical)
SYMREEB_DEFINE_ERROR(DegenerateOrbit, degenerate)

// surfaces of section
SYMREEB_DEFINE_ERROR(DegenerateRatio, degenerate)
SYMREEB_DEFINE_ERROR(EscapeTimeout, numerical)
SYMREEB_DEFINE_ERROR(EdgeTooClose, degenerate)
SYMREEB_DEFINE_ERROR(QuadratureNoConvergence, numerical)
SYMREEB_DEFINE_ERROR(TransversalityFailure, numerical)

// input parsing
SYMREEB_DEFINE_ERROR(InvalidSpec, usage)

#undef SYMREEB_DEFINE_ERROR

}  // namespace symreeb
