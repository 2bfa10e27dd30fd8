// Exception types for numerical-domain failures.
#ifndef THETABAND_ERRORS_HPP
#define THETABAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thetaband {

// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define THETABAND_DEFINE_ERROR(NAME)                                   \
    struct NAME : Error {                                              \
        explicit NAME(const std::string& msg) : Error(msg) {}          \
    };

THETABAND_DEFINE_ERROR(NonConvergent)      // series / iteration failed to converge
THETABAND_DEFINE_ERROR(PoleError)          // evaluation at (or too close to) a pole
THETABAND_DEFINE_ERROR(BranchPointOnPath)  // integration path hits a branch point
THETABAND_DEFINE_ERROR(SingularParameter)  // parameter in the excluded set of a closed formula
THETABAND_DEFINE_ERROR(BranchError)        // y^2 = (1-x^2)(1-k^2 x^2) vanishes
THETABAND_DEFINE_ERROR(PoleState)          // vector field pole (theta_1 = 0)
THETABAND_DEFINE_ERROR(DegenerateState)    // degenerate point of a coordinate change
THETABAND_DEFINE_ERROR(DegenerateInertia)  // two principal moments of inertia coincide
THETABAND_DEFINE_ERROR(StepUnderflow)      // adaptive step collapsed
THETABAND_DEFINE_ERROR(SingularJacobian)   // pushforward through a degenerate map
THETABAND_DEFINE_ERROR(FieldZero)          // planar field component vanishes on the path
THETABAND_DEFINE_ERROR(TruncationOverflow) // operator application would leave the basis
THETABAND_DEFINE_ERROR(IdentityViolation)  // an exact operator identity failed
THETABAND_DEFINE_ERROR(NotConverged)       // spectral truncation not yet converged

#undef THETABAND_DEFINE_ERROR

} // namespace thetaband

#endif
