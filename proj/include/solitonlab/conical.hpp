#pragma once

#include "solitonlab/ma_solver.hpp"

namespace soliton {

// χ(ε²+t) = 1/(1-ν) ∫₀ᵗ ((ε²+r)^{1-ν} - ε^{2-2ν})/r dr, evaluated per node at
// t = |s|²_H. Smooth for ε > 0, and → t^{1-ν}/(1-ν) pointwise as ε → 0.
double chi_smoothing_scalar(double epsilon, double nu, double t);
Vec chi_smoothing(double epsilon, double nu, const Vec& weight_values);

// dχ/dt and d²χ/dt², stable for t ≪ ε².
double chi_prime(double epsilon, double nu, double t);
double chi_second(double epsilon, double nu, double t);

// density of ω_ε = ω0 + k·i∂∂̄ χ(ε²+|s|²_H) against i dz∧dz̄/|z|²
Vec omega_eps_density(double k, double epsilon, double nu, const DivisorModel& D,
                      const RadialPotential& u0);

struct RegularizationSchedule {
    Vec epsilons;  // decreasing
    double k = 0.0;
    double nu = 0.5;
    double lambda = 0.5;

    static RegularizationSchedule geometric(double nu, double lambda, double eps_hi = 1.0,
                                            double eps_lo = 1e-4, int count = 17);
};

// largest k in {2^-1, ..., 2^-10} keeping the ω_ε density ≥ 0.1·u0'' across
// the whole schedule
double choose_smoothing_k(const RegularizationSchedule& sched, const DivisorModel& D,
                          const RadialPotential& u0);

struct EpsStep {
    double epsilon = 0.0;
    Vec phi;  // solution potential relative to ω0 (the paper's φ + kχ)
    double residual_sup = 0.0;
    double diameter = 0.0;
    double mu_log = 0.0, F_log = 0.0;
    double cone_slope_est = 0.0;
    double sup_X = 0.0;              // sup |X|_ω = |c|·sup √(2u'')
    double ratio_lo = 1.0, ratio_hi = 1.0;  // ω_φ vs ω_ε nodewise
    double F_eps_sup = 0.0;          // sup |log[(ω_ε/ω0)(W+ε²)^ν]|
};

struct ConicalSolution {
    std::vector<EpsStep> trace;
    Vec phi;  // limit potential (smallest ε reached)
    double cone_slope = 0.0;
    bool completed = false;
    double diverged_at_eps = -1.0;
    double nu = 0.0, lambda = 0.0;
    DivisorModel divisor;
    RadialPotential base;
};

NewtonSettings conical_newton_defaults();

// ε-homotopy: full t-continuity at the first ε, then warm-started Newton at
// t = 1 with adaptive ε-insertion. Divergence is recorded in the status.
ConicalSolution solve_conical(const RadialPotential& base, double nu, const DivisorModel& D,
                              const VectorFieldSpec& X, const RegularizationSchedule& sched,
                              NewtonSettings settings = conical_newton_defaults());

// cone slope: least-squares slope of log u'' over s ∈ [-s_max, -s_max/2]
double cone_slope_estimate(const RadialPotential& u, bool left_pole = true);

// pole angle by quartic extrapolation of the moment profile v(τ) toward the
// pole (τ → 0 or 2); reaches angles whose asymptotic regime lies beyond the
// truncated grid (slowly closing caps)
double pole_angle_estimate(const RadialPotential& u, bool left_pole, double window = 0.5);

// Pairing of both sides of Ric(ω) = γω + ν[D] + L_Xω (current sense) against
// compactly supported test functions; the divisor delta carries mass 2πν per
// pole, the tips carry 2π(1-α) each.
struct CurrentCheckItem {
    double lhs = 0.0, rhs = 0.0;
    double mismatch_rel = 0.0;
    double delta_recovered = 0.0;  // LHS minus the smooth right-hand side
    double delta_expected = 0.0;
};
struct CurrentCheckReport {
    std::vector<CurrentCheckItem> items;
    double max_mismatch = 0.0;
    bool pass = true;
};
CurrentCheckReport current_limit_check(const ConicalSolution& sol, const VectorFieldSpec& X,
                                       const std::vector<Vec>& test_forms, double tol = 1e-2);

// test-form builders: smooth bump supported in |s-center| < width, and a
// plateau equal to 1 left of `edge` rolled off to 0 before `cut`
Vec test_form_bump(const Grid& g, double center, double width);
Vec test_form_plateau_left(const Grid& g, double edge, double cut);

}  // namespace soliton
