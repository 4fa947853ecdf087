// Error types shared across the library. Each class corresponds to one
// failure mode of the public API; all derive from steklov::error so callers
// can catch broadly or precisely.

#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation (t outside [0,1],
// lambda < 0, unsupported dimension, ...).
class domain_error : public error {
public:
    using error::error;
};

// Family parameter outside its admissible range (eps too large/small, knot
// violating a cap, incompatible family/dimension, ...).
class parameter_error : public error {
public:
    using error::error;
};

// Frobenius seeding failed: start offset not inside the region where the
// warp function is given by its endpoint expansion, or series not converged.
class seed_error : public error {
public:
    using error::error;
};

// Adaptive integration ran out of steps or failed to reach the requested
// tolerance.
class convergence_error : public error {
public:
    using error::error;
};

// Boundary trace of the shot solution vanished relative to its running
// maximum; sigma would be meaningless.
class degenerate_shoot_error : public error {
public:
    using error::error;
};

// Downstream data violates an invariant that can only come from a numerical
// failure upstream (non-monotone sigma sequence, ...).
class solver_inconsistency_error : public error {
public:
    using error::error;
};

// Mesh construction could not satisfy the request (budget too small for the
// forced nodes, ...).
class mesh_error : public error {
public:
    using error::error;
};

// Assembled FEM system is not symmetric positive definite; indicates an
// assembly bug rather than a user error.
class assembly_error : public error {
public:
    using error::error;
};

// Quadrature or assembly produced non-finite weights.
class conditioning_error : public error {
public:
    using error::error;
};

// Test function fails the admissibility constraints of the Rayleigh quotient.
class inadmissible_test_function : public error {
public:
    using error::error;
};

// Trend fitting requested with fewer than three usable rows.
class insufficient_data_error : public error {
public:
    using error::error;
};

// Bound hypothesis parameters are mutually inconsistent (h(0) > C2, ...).
class hypothesis_error : public error {
public:
    using error::error;
};

} // namespace steklov
