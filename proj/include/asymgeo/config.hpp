#pragma once

#include <cstdint>
#include <limits>

#include "errors.hpp"

namespace asymgeo {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Tolerances and iteration caps shared by the root finders, the quadrature
/// and the LP. Values are read-only once handed to an operation.
struct SolverConfig
{
    double abs_tol = 1e-10;
    int max_iter = 200;
    double bracket_growth = 2.0;
    double quad_tol = 1e-9;
    double inf_conv_tol = 1e-3;
    std::uint64_t rng_seed = 20160901;

    void validate() const
    {
        if (!(abs_tol > 0.0))
            throw DomainError("SolverConfig: abs_tol must be positive");
        if (max_iter < 1)
            throw DomainError("SolverConfig: max_iter must be at least 1");
        if (!(bracket_growth > 1.0))
            throw DomainError("SolverConfig: bracket_growth must exceed 1");
        if (!(quad_tol > 0.0) || !(inf_conv_tol > 0.0))
            throw DomainError("SolverConfig: tolerances must be positive");
    }
};

} // namespace asymgeo
