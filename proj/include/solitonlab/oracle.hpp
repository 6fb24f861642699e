#pragma once

#include <functional>
#include <utility>

#include "solitonlab/radial.hpp"

namespace soliton {

// Closed-form rotationally symmetric soliton in the moment coordinate τ = u' ∈ (0,2):
// v(τ) = u'' solves v'' + c v' + beta = 0 with v(0) = v(2) = 0, v'(0) = alpha0,
// v'(2) = -alpha_inf. Cone parameters are the log-density slopes at the poles;
// alpha0 + alpha_inf = 2·beta (integrated ODE).
struct FootballSoliton {
    double c = 0.0;
    double alpha0 = 1.0;
    double alpha_inf = 1.0;
    double beta = 1.0;
    double A = 0.0, B = 0.0;  // v = A + B e^{-cτ} - (beta/c)τ when c ≠ 0

    double v(double tau) const;
};

// Determines beta and alpha_inf from (c, alpha0) through the two-point problem.
// alpha_inf may exceed 1 for strongly negative c; alpha0 must lie in (0,1].
FootballSoliton solve_football(double c, double alpha0);

// Teardrop closure: root-finds c so that the cone sits at 0 with angle 2π(1-ν)
// and the metric is smooth at ∞ (alpha_inf = 1); beta = 1 - ν/2 results.
struct TeardropResult {
    double c;
    double bracket_lo, bracket_hi;
    FootballSoliton soliton;
};
TeardropResult soliton_coefficient(double nu);

// Reconstructs u(s) on the grid by integrating dτ/ds = v(τ), centered so that
// u' = 1 at s = 0 and u(0) = 2 log 2 (matches the round metric exactly).
RadialPotential to_radial(const FootballSoliton& sol, const GridPtr& grid);

// the same reconstruction as the increment u - u0 over the round base (kept
// O(1) so downstream differencing does not see the 2s growth of u itself)
Vec to_radial_increment(const FootballSoliton& sol, const GridPtr& grid);

// High-resolution ∫_M f ω = 2π ∫_0^2 f(τ, s(τ)) dτ in moment space.
double reference_quadrature(const std::function<double(double tau, double s)>& f,
                            const FootballSoliton& sol, int panels);

// s(τ) with s(1) = 0 (monotone; diverges logarithmically at the endpoints).
double oracle_s_of_tau(const FootballSoliton& sol, double tau);

}  // namespace soliton
