#pragma once

#include <stdexcept>
#include <string>

namespace gravent {

/// Base class for all domain errors raised by the library.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept = 0;
};

#define GRAVENT_DEFINE_ERROR(Name, Kind)                        \
  struct Name : error {                                         \
    explicit Name(const std::string& what) : error(what) {}     \
    const char* kind() const noexcept override { return Kind; } \
  }

GRAVENT_DEFINE_ERROR(invalid_argument_error, "InvalidArgument");
GRAVENT_DEFINE_ERROR(trap_unstable, "TrapUnstable");
GRAVENT_DEFINE_ERROR(unphysical_theta, "UnphysicalTheta");
GRAVENT_DEFINE_ERROR(epsilon_out_of_range, "EpsilonOutOfRange");
GRAVENT_DEFINE_ERROR(not_positive_definite, "NotPositiveDefinite");
GRAVENT_DEFINE_ERROR(asymmetric_matrix, "AsymmetricMatrix");
GRAVENT_DEFINE_ERROR(negative_discriminant, "NegativeDiscriminant");
GRAVENT_DEFINE_ERROR(non_positive_nu, "NonPositiveNu");
GRAVENT_DEFINE_ERROR(invariant_inconsistency, "InvariantInconsistency");
GRAVENT_DEFINE_ERROR(bona_fide_violation, "BonaFideViolation");
GRAVENT_DEFINE_ERROR(degenerate_discriminant, "DegenerateDiscriminant");
GRAVENT_DEFINE_ERROR(log_domain_error, "LogDomain");
GRAVENT_DEFINE_ERROR(geometry_invalid, "GeometryInvalid");
GRAVENT_DEFINE_ERROR(no_sign_change, "NoSignChange");
GRAVENT_DEFINE_ERROR(no_interior_maximum, "NoInteriorMaximum");
GRAVENT_DEFINE_ERROR(acceptance_too_low, "AcceptanceTooLow");
GRAVENT_DEFINE_ERROR(bound_violation, "BoundViolation");
GRAVENT_DEFINE_ERROR(impossibility_violated, "ImpossibilityViolated");
GRAVENT_DEFINE_ERROR(symplectic_defect_error, "SymplecticDefect");
GRAVENT_DEFINE_ERROR(io_error, "IoError");

#undef GRAVENT_DEFINE_ERROR

}  // namespace gravent
