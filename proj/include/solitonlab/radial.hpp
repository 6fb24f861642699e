#pragma once

#include "solitonlab/grid.hpp"

namespace soliton {

// Holomorphic vector field X = c·z∂z. Im X acts trivially on radial functions.
struct VectorFieldSpec {
    double c = 0.0;
};

// S¹-invariant Kähler metric ω = i∂∂̄u on the sphere model, sampled on a grid.
// du ∈ (0,2) is the moment coordinate, d2u > 0 the density against i dz∧dz̄/|z|².
struct RadialPotential {
    GridPtr grid;
    Vec u, du, d2u;

    void validate(double positivity_floor = 0.0) const;
};

// Reference metric u0(s) = 2 log(1+e^s): the Fubini-Study round metric, area 4π.
RadialPotential fs_potential(const GridPtr& g);

// base + φ with finite-difference derivatives of φ.
RadialPotential applied(const RadialPotential& base, const Vec& phi);

// derivatives of a potential increment with its mid value subtracted first
Vec d1_centered(const Grid& g, const Vec& phi);
Vec d2_centered(const Grid& g, const Vec& phi);

// ∫_M f ω_u = 2π ∫ f u'' ds plus analytic boundary tails (du → 0 and 2).
double integrate(const Vec& f, const RadialPotential& u);

// ∫ dens ds over the grid plus exponential-rate tail estimates fitted at the
// edges (for weighted densities whose decay rate differs from u'').
double integrate_density(const Grid& g, const Vec& dens);

struct ThetaPotential {
    Vec values;         // θ_X(ω_u) = c·u' + norm_shift
    double norm_shift;  // fixes (1/V)∫ e^θ ω_u = 1
};
ThetaPotential theta_potential(const RadialPotential& u, const VectorFieldSpec& X);

// Coefficient of Ric(ω_u) against i dz∧dz̄/|z|²: -(log u'')''.
Vec ricci_density(const RadialPotential& u);

// Twisting-form flux data: F(s) = ∫_{-∞}^{s} η over the meridian line and the
// total class mass ∫η; closed-form per twist kind, so the Ricci potential
// needs only one numerical differentiation.
struct TwistFlux {
    Vec cumulative;      // F(s) at the nodes, F(-∞) = 0
    double total = 0.0;  // ∫η over the whole line (2(1-β), 2λν, ...)
};

// h with i∂∂̄h = Ric(ω_u) - beta·ω_u - η, normalized by ∫ e^h ω_u = ∫ ω_u,
// computed from h'(s) = (alpha_left - (log u'')'(s)) - beta·u'(s) - F_η(s).
// alpha_left/right are the asymptotic slopes of log u'' for the class; the
// class balance alpha_left + alpha_right = 2·beta + ∫η is checked exactly and
// a mismatch throws CohomologyError.
struct RicciPotentialParts {
    Vec h;   // normalized potential
    Vec hp;  // its first derivative h'
};
RicciPotentialParts ricci_potential_parts(const RadialPotential& u, double beta,
                                          const TwistFlux& flux, double alpha_left = 1.0,
                                          double alpha_right = 1.0, double tolerance = 1e-6);
Vec ricci_potential_density(const RadialPotential& u, double beta, const TwistFlux& flux,
                            double alpha_left = 1.0, double alpha_right = 1.0,
                            double tolerance = 1e-6);

// Gauss-Legendre nodes/weights on [0,1].
struct QuadRule {
    Vec x, w;
};
QuadRule gauss_legendre_01(int n);

struct MeridianMetrics {
    GridPtr grid;
    Vec cumlen;      // meridian length from the left grid edge
    double tail_left = 0.0, tail_right = 0.0;
    double diameter = 0.0;
    double tail_fraction = 0.0;

    double distance(double s1, double s2) const;  // along the meridian
    double from_pole(double s) const;             // distance from the s = -∞ pole
};
// Length element √(u''/2) ds; diameter includes cone-angle tail estimates.
// Throws NumericalError when the tail estimate exceeds 1% of the total.
MeridianMetrics meridian_metrics(const RadialPotential& u, double alpha_left = 1.0,
                                 double alpha_right = 1.0, bool enforce_tail_bound = true);

// Divisor datum: points ⊂ {0, ∞}, λ = (#points)/2, log|s|²_H with the §-style
// normalization constant for weight ν.
struct DivisorModel {
    bool at_zero = true;
    bool at_infinity = false;
    double lambda = 0.5;
    double nu = 0.5;
    double norm_const = 0.0;
    Vec log_weight;  // log|s|²_H including norm_const
    GridPtr grid;

    int point_count() const { return (at_zero ? 1 : 0) + (at_infinity ? 1 : 0); }
    // d/ds log|s|²_H (smooth closed form)
    Vec log_weight_slope(const RadialPotential& u0) const;
};

// Fills log_weight = (0∈D ? s : 0) - λ·u0 + norm_const with the normalization
// (1/V)∫ e^{h0}/|s|_H^{2ν} ω0 = 1, h0 the §5 Ricci potential of u0.
DivisorModel divisor_weight(const RadialPotential& u0, bool at_zero, bool at_infinity, double nu);

// Pairs (τ_i, v_i) = (u'(s_i), u''(s_i)): the moment profile of the metric.
struct MomentProfile {
    Vec tau, v;
};
MomentProfile moment_profile(const RadialPotential& u);

}  // namespace soliton
