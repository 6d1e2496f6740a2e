#pragma once

#include <stdexcept>
#include <string>

namespace swwlab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define SWWLAB_ERROR(Name)                                                     \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string& what) : Error(what) {}                    \
  }

SWWLAB_ERROR(ZeroDirection);
SWWLAB_ERROR(PoleProximity);
SWWLAB_ERROR(SingularJacobian);
SWWLAB_ERROR(AngleViolation);
SWWLAB_ERROR(MissingProfile);
SWWLAB_ERROR(NonPositiveH0);
SWWLAB_ERROR(DomainError);
SWWLAB_ERROR(SingularTime);
SWWLAB_ERROR(StencilFailure);
SWWLAB_ERROR(DegenerateSamples);
SWWLAB_ERROR(DomainSingular);
SWWLAB_ERROR(ConfigError);

#undef SWWLAB_ERROR

class NoConvergence : public Error {
public:
  NoConvergence(int iterations, double last_residual);
  int iterations() const noexcept { return iterations_; }
  double last_residual() const noexcept { return last_residual_; }

private:
  int iterations_;
  double last_residual_;
};

} // namespace swwlab
