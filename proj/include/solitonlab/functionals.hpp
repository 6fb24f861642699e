#pragma once

#include <optional>

#include "solitonlab/twist.hpp"

namespace soliton {

struct EnergyReport {
    double I = 0.0, J = 0.0;
    double I_tilde = 0.0, J_tilde = 0.0;
    double mu_tilde = 0.0, F_tilde = 0.0, F_hat = 0.0;
    std::optional<double> mu_log, F_log;
};

// Energy functionals of a potential increment φ over a fixed base metric,
// twist and vector field. Path functionals integrate along φ_t = tφ with
// Gauss-Legendre quadrature in t; θ_X(ω) is renormalized per metric.
class EnergyContext {
  public:
    EnergyContext(RadialPotential base, TwistSpec twist, VectorFieldSpec X, int n_path = 32);

    const RadialPotential& base() const { return base_; }
    const TwistSpec& twist() const { return twist_; }
    const VectorFieldSpec& field() const { return X_; }
    const Vec& theta_base() const { return theta0_; }
    const Vec& h_base() const { return h0_; }
    // §-gauge Ricci potential Ric(ω0) = γω0 + λνω0 + i∂∂̄h (cone twists)
    const Vec& h_base_cone_gauge() const { return h0_cone_; }

    struct AubinYau {
        double I, J, I_tilde, J_tilde;
    };
    AubinYau aubin_yau(const Vec& phi) const;

    // twisted Mabuchi K-energy μ̃_{base,η}(φ)
    double k_energy(const Vec& phi) const;
    // same functional along the quadratic path φ_t = t²φ (well-definedness check)
    double k_energy_quadratic_path(const Vec& phi) const;
    double j_tilde_quadratic_path(const Vec& phi) const;

    // (F̃_{base,η}, F̂_base)
    std::pair<double, double> ding(const Vec& phi) const;

    // (μ̃_{base,νD}, F̃_{base,νD}) for cone twists (conical or regularized carrier)
    std::pair<double, double> log_functionals(const Vec& phi) const;

    EnergyReport report(const Vec& phi) const;

    // (1/V)∫(h0-θ0)e^{θ0}ω0, the constant in the K-energy / Ding comparison
    double comparison_constant() const;

    // (ν/V)∫ log((W+ε²)/W) e^{θ0}ω0: uniform-properness gap constant at ε
    double properness_gap_constant(double epsilon) const;

  private:
    struct PathPoint {
        RadialPotential u;
        Vec theta;
        Vec dphi;
    };
    PathPoint at(const Vec& phi, double t) const;
    double i_tilde_pair(const Vec& phi, const PathPoint& p) const;
    double mu_integrand(const PathPoint& p) const;
    double log_weight_pairing(const Vec& logw, const Vec& phi) const;

    RadialPotential base_;
    TwistSpec twist_;
    VectorFieldSpec X_;
    QuadRule rule_;
    Vec theta0_;
    Vec h0_;          // base Ricci potential for the twist (empty for conical kind)
    Vec h0_cone_;     // §5 gauge: Ric(ω0) = γω0 + λνω0 + i∂∂̄h0 (cone twists only)
    Vec smooth_part_; // λν ω0 twist density for the log K-energy split
};

// Family-level inequality report (positivity chain, base-change and
// twist-change bounds). Violations are itemized, never silent.
struct FunctionalChecks {
    double C1 = 0.0, C2 = 0.0, C3 = 0.0, C4 = 0.0;  // fitted chain constants
    int samples = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};
FunctionalChecks functional_checks(const EnergyContext& ctx, const std::vector<Vec>& family,
                                   double tolerance = 1e-7);

// Deterministic family of smooth ω0-psh test potentials spanning J scales.
std::vector<Vec> make_test_family(const RadialPotential& base, int count, double scale,
                                  unsigned seed);

}  // namespace soliton
