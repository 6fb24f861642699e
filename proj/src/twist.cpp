#include "solitonlab/twist.hpp"

#include <cmath>

namespace soliton {

Vec regularized_twist_density(double epsilon, double nu, const DivisorModel& D,
                              const RadialPotential& u0) {
    if (!(nu > 0.0 && nu < 1.0)) throw ConfigError("regularized density needs nu in (0,1)");
    const std::size_t n = u0.grid->n();
    const Vec gp = D.log_weight_slope(u0);
    const double e2 = epsilon * epsilon;
    Vec dens(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double W = std::exp(D.log_weight[i]);
        const double q = W + e2;
        // λu0''·ε²/(W+ε²) + (g')²·ε²·W/(W+ε²)², both terms nonnegative
        dens[i] = nu * (D.lambda * u0.d2u[i] * e2 / q + gp[i] * gp[i] * e2 * W / (q * q));
        if (dens[i] < -1e-10) throw NumericalError("regularized twist density negative");
    }
    return dens;
}

TwistSpec TwistSpec::smooth(double beta, const RadialPotential& base, Vec f_eta) {
    if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("smooth twist needs beta in (0,1]");
    TwistSpec t;
    t.kind = TwistKind::smooth;
    t.beta = beta;
    const std::size_t n = base.grid->n();
    if (!f_eta.empty()) {
        const double m = max_of(f_eta);  // sup-normalization
        for (double& x : f_eta) x -= m;
    }
    t.density_.resize(n);
    t.flux_.cumulative.resize(n);
    t.flux_.total = 2.0 * (1.0 - beta);
    if (f_eta.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            t.density_[i] = (1.0 - beta) * base.d2u[i];
            t.flux_.cumulative[i] = (1.0 - beta) * base.du[i];
        }
    } else {
        const Vec fpp = base.grid->ops->d2(f_eta);
        const Vec fp = base.grid->ops->d1(f_eta);
        for (std::size_t i = 0; i < n; ++i) {
            t.density_[i] = (1.0 - beta) * (base.d2u[i] + fpp[i]);
            if (t.density_[i] < -1e-10)
                throw PositivityError("smooth twist density negative (f_eta too large)");
            t.flux_.cumulative[i] = (1.0 - beta) * (base.du[i] + fp[i]);
        }
    }
    t.f_eta = std::move(f_eta);
    return t;
}

TwistSpec TwistSpec::conical(double nu, DivisorModel D, const RadialPotential&) {
    if (!(nu > 0.0 && nu < 1.0)) throw ConfigError("conical twist needs nu in (0,1)");
    TwistSpec t;
    t.kind = TwistKind::conical;
    t.nu = nu;
    t.beta = 1.0 - D.lambda * nu;
    t.divisor = std::move(D);
    return t;
}

TwistSpec TwistSpec::regularized(double nu, DivisorModel D, double epsilon,
                                 const RadialPotential& base) {
    if (!(epsilon > 0.0)) throw ConfigError("regularized twist needs epsilon > 0");
    TwistSpec t;
    t.kind = TwistKind::regularized;
    t.nu = nu;
    t.epsilon = epsilon;
    t.beta = 1.0 - D.lambda * nu;
    t.density_ = regularized_twist_density(epsilon, nu, D, base);
    const std::size_t n = base.grid->n();
    const Vec gp = D.log_weight_slope(base);
    const double e2 = epsilon * epsilon;
    t.flux_.cumulative.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double W = std::exp(D.log_weight[i]);
        // ∫_{-∞}^{s} ν·η_ε = ν(λ u0' + (log(W+ε²))'), the left limit vanishes
        t.flux_.cumulative[i] = nu * (D.lambda * base.du[i] + gp[i] * W / (W + e2));
    }
    t.flux_.total = 2.0 * nu * D.lambda;
    t.divisor = std::move(D);
    return t;
}

const Vec& TwistSpec::density() const {
    if (!has_density())
        throw NumericalError("conical twist has no nodewise density; use the log functionals");
    return density_;
}

const TwistFlux& TwistSpec::flux() const {
    if (!has_density())
        throw NumericalError("conical twist has no nodewise density; use the log functionals");
    return flux_;
}

RicciPotentialParts TwistSpec::ricci_potential_parts_of(const RadialPotential& u,
                                                        double alpha_left, double alpha_right,
                                                        double tolerance) const {
    return ricci_potential_parts(u, beta, flux(), alpha_left, alpha_right, tolerance);
}

Vec TwistSpec::ricci_potential(const RadialPotential& u, double alpha_left,
                               double alpha_right) const {
    return ricci_potential_parts_of(u, alpha_left, alpha_right).h;
}

}  // namespace soliton
