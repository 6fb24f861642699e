#include "solitonlab/functionals.hpp"

#include <cmath>
#include <random>

namespace soliton {

EnergyContext::EnergyContext(RadialPotential base, TwistSpec twist, VectorFieldSpec X, int n_path)
    : base_(std::move(base)), twist_(std::move(twist)), X_(X) {
    if (n_path < 16) throw ConfigError("path quadrature needs n_path >= 16");
    base_.validate();
    rule_ = gauss_legendre_01(n_path);
    theta0_ = theta_potential(base_, X_).values;
    const std::size_t n = base_.grid->n();
    if (twist_.has_density()) {
        h0_ = twist_.ricci_potential(base_);
    }
    if (twist_.kind != TwistKind::smooth) {
        // §-gauge pieces shared by the log functionals
        const double gamma = twist_.beta;
        const double lnu = twist_.lambda() * twist_.nu;
        smooth_part_.resize(n);
        for (std::size_t i = 0; i < n; ++i) smooth_part_[i] = lnu * base_.d2u[i];
        TwistFlux flux;
        flux.cumulative.resize(n);
        for (std::size_t i = 0; i < n; ++i) flux.cumulative[i] = lnu * base_.du[i];
        flux.total = 2.0 * lnu;
        h0_cone_ = ricci_potential_density(base_, gamma, flux);
    }
}

EnergyContext::PathPoint EnergyContext::at(const Vec& phi, double t) const {
    PathPoint p;
    p.u = applied(base_, t * phi);
    if (min_of(p.u.d2u) <= 0.0)
        throw PositivityError("positivity fails along the path at t = " + std::to_string(t));
    p.theta = theta_potential(p.u, X_).values;
    p.dphi = d1_centered(*base_.grid, phi);
    return p;
}

double EnergyContext::i_tilde_pair(const Vec& phi, const PathPoint& p) const {
    const std::size_t n = base_.grid->n();
    Vec f0(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) {
        f0[i] = phi[i] * std::exp(theta0_[i]);
        f1[i] = phi[i] * std::exp(p.theta[i]);
    }
    return (integrate(f0, base_) - integrate(f1, p.u)) / kVolume;
}

EnergyContext::AubinYau EnergyContext::aubin_yau(const Vec& phi) const {
    AubinYau r{};
    {
        const PathPoint p = at(phi, 1.0);
        r.I_tilde = i_tilde_pair(phi, p);
        r.I = (integrate(phi, base_) - integrate(phi, p.u)) / kVolume;
    }
    for (std::size_t q = 0; q < rule_.x.size(); ++q) {
        const double t = rule_.x[q];
        const PathPoint p = at(phi, t);
        r.J_tilde += rule_.w[q] * i_tilde_pair(phi, p);
        r.J += rule_.w[q] * (integrate(phi, base_) - integrate(phi, p.u)) / kVolume;
    }
    return r;
}

double EnergyContext::mu_integrand(const PathPoint& p) const {
    // (1/V) ∫ ⟨∇(h-θ), ∇φ⟩ e^θ ω at the path metric. This Dirichlet-pairing
    // normalization is the one under which the K-energy/Ding comparison and
    // the log-weight split are exact identities.
    const std::size_t n = base_.grid->n();
    const RicciPotentialParts parts = twist_.ricci_potential_parts_of(p.u);
    Vec f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double thp = X_.c * p.u.d2u[i];  // θ' = c u''
        f[i] = std::exp(p.theta[i]) * (parts.hp[i] - thp) * p.dphi[i] / p.u.d2u[i];
    }
    return integrate(f, p.u) / kVolume;
}

double EnergyContext::k_energy(const Vec& phi) const {
    double acc = 0.0;
    for (std::size_t q = 0; q < rule_.x.size(); ++q)
        acc += rule_.w[q] * mu_integrand(at(phi, rule_.x[q]));
    return acc;
}

double EnergyContext::k_energy_quadratic_path(const Vec& phi) const {
    // φ_t = t²φ, φ̇_t = 2tφ
    double acc = 0.0;
    for (std::size_t q = 0; q < rule_.x.size(); ++q) {
        const double t = rule_.x[q];
        acc += rule_.w[q] * 2.0 * t * mu_integrand(at(phi, t * t));
    }
    return acc;
}

double EnergyContext::j_tilde_quadratic_path(const Vec& phi) const {
    double acc = 0.0;
    for (std::size_t q = 0; q < rule_.x.size(); ++q) {
        const double t = rule_.x[q];
        acc += rule_.w[q] * 2.0 * t * i_tilde_pair(phi, at(phi, t * t));
    }
    return acc;
}

std::pair<double, double> EnergyContext::ding(const Vec& phi) const {
    const std::size_t n = base_.grid->n();
    double jt = 0.0;
    for (std::size_t q = 0; q < rule_.x.size(); ++q)
        jt += rule_.w[q] * i_tilde_pair(phi, at(phi, rule_.x[q]));
    Vec f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = phi[i] * std::exp(theta0_[i]);
    const double F_hat = jt - integrate(f, base_) / kVolume;
    Vec e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = std::exp(h0_[i] - twist_.beta * phi[i]);
    const double mass = integrate(e, base_) / kVolume;
    const double F_tilde = F_hat - std::log(mass) / twist_.beta;
    return {F_tilde, F_hat};
}

double EnergyContext::log_weight_pairing(const Vec& logw, const Vec& phi) const {
    const Grid& g = *base_.grid;
    const std::size_t n = g.n();
    const PathPoint p = at(phi, 1.0);
    // -logw grows linearly toward the divisor; fit the decay rate of the
    // product density at the edges instead of assuming a constant integrand
    Vec m0(n), m1(n);
    for (std::size_t i = 0; i < n; ++i) {
        m0[i] = -2.0 * kPi * logw[i] * std::exp(theta0_[i]) * base_.d2u[i];
        m1[i] = -2.0 * kPi * logw[i] * std::exp(p.theta[i]) * p.u.d2u[i];
    }
    return -(integrate_density(g, m1) - integrate_density(g, m0));
}

std::pair<double, double> EnergyContext::log_functionals(const Vec& phi) const {
    if (twist_.kind == TwistKind::smooth) throw ConfigError("log functionals need a cone twist");
    const double nu = twist_.nu;
    const double gamma = twist_.beta;
    const Grid& g = *base_.grid;
    const std::size_t n = g.n();
    const DivisorModel& D = twist_.divisor;

    // μ̃_{ω0,νλω0} is the smooth twist with the same γ
    EnergyContext smooth_ctx(base_, TwistSpec::smooth(gamma, base_), X_,
                             static_cast<int>(rule_.x.size()));
    const double mu_log =
        smooth_ctx.k_energy(phi) + nu / kVolume * log_weight_pairing(D.log_weight, phi);

    double jt = 0.0;
    for (std::size_t q = 0; q < rule_.x.size(); ++q)
        jt += rule_.w[q] * i_tilde_pair(phi, at(phi, rule_.x[q]));
    Vec f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = phi[i] * std::exp(theta0_[i]);
    const double F_hat = jt - integrate(f, base_) / kVolume;
    Vec dens(n);
    for (std::size_t i = 0; i < n; ++i)
        dens[i] =
            2.0 * kPi * std::exp(h0_cone_[i] - gamma * phi[i] - nu * D.log_weight[i]) * base_.d2u[i];
    const double mass = integrate_density(g, dens) / kVolume;
    const double F_log = F_hat - std::log(mass) / gamma;
    return {mu_log, F_log};
}

EnergyReport EnergyContext::report(const Vec& phi) const {
    EnergyReport r;
    const AubinYau ay = aubin_yau(phi);
    r.I = ay.I;
    r.J = ay.J;
    r.I_tilde = ay.I_tilde;
    r.J_tilde = ay.J_tilde;
    if (twist_.has_density()) {
        r.mu_tilde = k_energy(phi);
        auto [ft, fh] = ding(phi);
        r.F_tilde = ft;
        r.F_hat = fh;
    } else {
        Vec f(base_.grid->n());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = phi[i] * std::exp(theta0_[i]);
        r.F_hat = ay.J_tilde - integrate(f, base_) / kVolume;
    }
    if (twist_.kind != TwistKind::smooth) {
        auto [ml, fl] = log_functionals(phi);
        r.mu_log = ml;
        r.F_log = fl;
    }
    return r;
}

double EnergyContext::comparison_constant() const {
    const std::size_t n = base_.grid->n();
    Vec f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = (h0_[i] - theta0_[i]) * std::exp(theta0_[i]);
    return integrate(f, base_) / kVolume;
}

double EnergyContext::properness_gap_constant(double epsilon) const {
    if (twist_.kind == TwistKind::smooth) throw ConfigError("gap constant needs a cone twist");
    const std::size_t n = base_.grid->n();
    const DivisorModel& D = twist_.divisor;
    Vec f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double W = std::exp(D.log_weight[i]);
        f[i] = std::log1p(epsilon * epsilon / W) * std::exp(theta0_[i]);
    }
    return twist_.nu / kVolume * integrate(f, base_);
}

FunctionalChecks functional_checks(const EnergyContext& ctx, const std::vector<Vec>& family,
                                   double tolerance) {
    FunctionalChecks out;
    if (family.empty()) throw ConfigError("functional_checks: empty family");
    out.samples = static_cast<int>(family.size());
    double c1 = 1.0, c2 = 0.0, c3 = 1e300, c4 = 0.0;
    std::vector<EnergyContext::AubinYau> ays;
    ays.reserve(family.size());
    for (std::size_t k = 0; k < family.size(); ++k) {
        const auto ay = ctx.aubin_yau(family[k]);
        ays.push_back(ay);
        auto check_pos = [&](double v, const char* name) {
            if (v < -1e-9)
                out.violations.push_back(std::string(name) + " negative at sample " +
                                         std::to_string(k) + ": " + std::to_string(v));
        };
        check_pos(ay.I, "I");
        check_pos(ay.J, "J");
        check_pos(ay.I_tilde, "I_tilde");
        check_pos(ay.J_tilde, "J_tilde");
        check_pos(ay.I_tilde - ay.J_tilde, "I_tilde - J_tilde");
        if (ay.I_tilde > 1e-12) {
            const double ratio = (ay.I_tilde - ay.J_tilde) / ay.I_tilde;
            c1 = std::min(c1, ratio);
            c2 = std::max(c2, ratio);
            if (ay.I > 1e-12) {
                c3 = std::min(c3, ay.I_tilde / ay.I);
                c4 = std::max(c4, ay.I_tilde / ay.I);
            }
        }
    }
    out.C1 = c1;
    out.C2 = c2;
    out.C3 = c1 * (c3 > 1e299 ? 1.0 : c3);
    out.C4 = c2 * c4;

    // base-change bound |I_{ω_ψ}(φ-ψ) - I_{ω0}(φ)| ≤ (n+1)·OSC(ψ), n = 1
    const std::size_t pairs = family.size() > 1 ? std::min<std::size_t>(family.size() - 1, 8) : 0;
    for (std::size_t k = 0; k < pairs; ++k) {
        const Vec& phi = family[k];
        const Vec& psi = family[k + 1];
        const RadialPotential shifted = applied(ctx.base(), psi);
        EnergyContext moved(shifted, ctx.twist(), ctx.field(), 16);
        const auto ay = moved.aubin_yau(phi - psi);
        const double lhs = std::abs(ay.I - ays[k].I);
        const double bound = 2.0 * oscillation(psi) + tolerance;
        if (lhs > bound)
            out.violations.push_back("base-change bound violated at pair " + std::to_string(k) +
                                     ": " + std::to_string(lhs) + " > " + std::to_string(bound));
    }

    // twist-change bound |μ̃_{η1} - μ̃_{η2}| ≤ OSC(f) for η2 - η1 = i∂∂̄f
    if (ctx.twist().kind == TwistKind::smooth && ctx.twist().beta < 1.0) {
        const Grid& g = *ctx.base().grid;
        const double a = 0.05 * (1.0 - ctx.twist().beta);  // keep η2 semipositive
        Vec f(g.n());
        for (std::size_t i = 0; i < g.n(); ++i) {
            const double x = std::tanh(0.5 * (g.s[i] - 0.5));
            f[i] = a * (1.0 - x * x);
        }
        Vec f_eta2 = ctx.twist().f_eta;
        if (f_eta2.empty()) f_eta2.assign(g.n(), 0.0);
        const double w = 1.0 / (1.0 - ctx.twist().beta);
        for (std::size_t i = 0; i < g.n(); ++i) f_eta2[i] += w * f[i];
        EnergyContext moved(ctx.base(), TwistSpec::smooth(ctx.twist().beta, ctx.base(), f_eta2),
                            ctx.field(), 16);
        for (std::size_t k = 0; k < std::min<std::size_t>(family.size(), 4); ++k) {
            const double lhs = std::abs(moved.k_energy(family[k]) - ctx.k_energy(family[k]));
            const double bound = oscillation(f) + tolerance;
            if (lhs > bound)
                out.violations.push_back("twist-change bound violated at sample " +
                                         std::to_string(k));
        }
    }
    return out;
}

std::vector<Vec> make_test_family(const RadialPotential& base, int count, double scale,
                                  unsigned seed) {
    // random low-degree polynomials in x = tanh(s/2), the radial chart function:
    // these are restrictions of smooth functions on the sphere, so all
    // derivatives decay like e^{-|s|} and the class balance closes exactly
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(-1.0, 1.0);
    std::vector<Vec> family;
    family.reserve(count);
    const Grid& g = *base.grid;
    for (int k = 0; k < count; ++k) {
        const int degree = 1 + static_cast<int>(rng() % 5);
        Vec coef(degree);
        for (double& a : coef) a = ua(rng);
        // ramp the amplitude across the family so J spans scales
        const double amp = scale * (0.15 + 1.5 * static_cast<double>(k) / std::max(1, count - 1));
        Vec phi(g.n(), 0.0);
        for (std::size_t i = 0; i < g.n(); ++i) {
            const double x = std::tanh(0.5 * g.s[i]);
            double p = 0.0;
            for (int d = degree - 1; d >= 0; --d) p = p * x + coef[d];
            phi[i] = amp * p * x;  // no constant term; constants are gauge
        }
        for (int guard = 0; guard < 80; ++guard) {
            const RadialPotential u = applied(base, phi);
            bool uniform_kahler = true;  // keep ω_φ ≥ 0.1 ω0 so Ric stays resolvable
            for (std::size_t i = 0; i < g.n(); ++i)
                if (u.d2u[i] < 0.1 * base.d2u[i]) {
                    uniform_kahler = false;
                    break;
                }
            if (uniform_kahler) break;
            for (double& x : phi) x *= 0.7;
        }
        family.push_back(std::move(phi));
    }
    return family;
}

}  // namespace soliton
