#pragma once

#include "solitonlab/radial.hpp"

namespace soliton {

enum class TwistKind { smooth, conical, regularized };

// Twisting datum η of the soliton equation Ric(ω) = βω + η + L_Xω.
//   smooth:      η = (1-β)(ω0 + i∂∂̄ f_eta), sup f_eta = 0
//   conical:     η = ν[D] (current; handled through the log functionals)
//   regularized: η = ν·η_ε, η_ε = λω0 + i∂∂̄ log(|s|²_H + ε²)
// The density is a fixed function of s once the twist is built from the
// reference metric.
struct TwistSpec {
    TwistKind kind = TwistKind::smooth;
    double beta = 1.0;  // γ(λ,ν) = 1-λν for the cone kinds
    Vec f_eta;          // empty means f_eta ≡ 0
    double nu = 0.0;
    double epsilon = 0.0;
    DivisorModel divisor;

    static TwistSpec smooth(double beta, const RadialPotential& base, Vec f_eta = {});
    static TwistSpec conical(double nu, DivisorModel D, const RadialPotential& base);
    static TwistSpec regularized(double nu, DivisorModel D, double epsilon,
                                 const RadialPotential& base);

    double lambda() const { return divisor.lambda; }
    bool has_density() const { return kind != TwistKind::conical; }

    const Vec& density() const;
    const TwistFlux& flux() const;

    // Ricci potential of u relative to this twist: Ric(ω_u) - beta·ω_u - η = i∂∂̄h,
    // normalized by ∫ e^h ω_u = ∫ ω_u.
    Vec ricci_potential(const RadialPotential& u, double alpha_left = 1.0,
                        double alpha_right = 1.0) const;
    RicciPotentialParts ricci_potential_parts_of(const RadialPotential& u, double alpha_left = 1.0,
                                                 double alpha_right = 1.0,
                                                 double tolerance = 1e-6) const;

  private:
    Vec density_;
    TwistFlux flux_;
};

// Density of ν·η_ε with η_ε = λω0 + i∂∂̄ log(W+ε²); nonnegative by construction.
Vec regularized_twist_density(double epsilon, double nu, const DivisorModel& D,
                              const RadialPotential& u0);

}  // namespace soliton
