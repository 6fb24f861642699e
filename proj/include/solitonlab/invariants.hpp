#pragma once

#include "solitonlab/conical.hpp"
#include "solitonlab/spectral.hpp"

namespace soliton {

struct SpectralReport {
    double lambda1 = 0.0;  // Richardson-extrapolated
    double lambda1_raw = 0.0;
    Vec eigenfunction;
    double measure_orthogonality = 0.0;  // |∫ v e^θ ω| / V against constants
};
SpectralReport spectral_report(const RadialPotential& u, const VectorFieldSpec& X);

// a(ω): min over r ∈ {0.1,...,1.0} and meridian centers (poles included) of the
// e^θ-weighted geodesic-ball volume over r². Distances by fast marching on the
// (s,θ) surface of revolution.
struct NonCollapse {
    double a = 0.0;
    double attained_r = 0.0;
    double attained_center = 0.0;  // s coordinate, ±s_max for the poles
};
NonCollapse noncollapse_a(const RadialPotential& u, const VectorFieldSpec& X, int n_s = 384,
                          int n_theta = 192);

// geodesic-ball volume around a single meridian center (test hook)
double ball_volume(const RadialPotential& u, const VectorFieldSpec& X, double center_s, double r,
                   int n_s = 384, int n_theta = 192);

// e^β (1 + √(2V(c1+n)/(a·λ1)))
double smoothing_constant(double beta, double V, double c1, double n, double a, double lambda1);

struct AlphaEstimate {
    double alpha_low = 0.0;   // largest tested α with all family integrals stable
    double alpha_high = 0.0;  // first tested α showing divergence (0 if none)
    double worst_growth = 0.0;
    int family_size = 0;
};
// Bracketed empirical α-invariant from a concentrating family. Finite families
// bias the estimate high; the family's extremal slope is 2 (full degree).
AlphaEstimate alpha_lower_bound(const RadialPotential& base, const DivisorModel* divisor,
                                double exponent_weight, int family_size = 16);

struct ConeWindow {
    double beta_min = 0.0, beta_max = 0.0;  // Prop-style window
    bool empty = true;
    double thm_beta_min = 0.0, thm_beta_max = 0.0;  // R(X) = 1 window
    bool thm_empty = true;
    double lambda = 0.0, C_tilde = 0.0, alpha0 = 0.0, alphaD = 0.0;
    std::vector<std::string> reasons;
};
ConeWindow cone_window(double lambda, double C_tilde, double alpha0, double alphaD,
                       bool r_equals_one = true);

struct MTFit {
    double C1 = 0.0, C2 = 0.0;        // Ding-functional fit
    double C1_mu = 0.0, C2_mu = 0.0;  // K-energy fit
    int violations = 0;
    int samples = 0;
};
// Largest supporting slope of the lower convex hull of (J̃, F̃) over the family
// (and the μ̃ variant); zero violations of F̃ ≥ C1·J̃ - C2 by construction.
MTFit mt_fit(const EnergyContext& ctx, const std::vector<Vec>& family);

struct ConvergenceDiagnostics {
    bool sup_X_bounded = true;
    double sup_X_max = 0.0;
    bool diameters_cauchy = true;
    std::vector<double> diameters;
    std::vector<double> diameter_gaps;
    bool density_gaps_trending = true;
    std::vector<double> density_gaps;  // sup over |s| ≤ s_max/2 vs the limit profile
    double diam_sqrt_beta = 0.0;
};
ConvergenceDiagnostics convergence_diagnostics(const ConicalSolution& sol, double beta);

}  // namespace soliton
