#include "solitonlab/radial.hpp"

#include <algorithm>
#include <cmath>

namespace soliton {

void RadialPotential::validate(double positivity_floor) const {
    if (!grid || u.size() != grid->n() || du.size() != grid->n() || d2u.size() != grid->n())
        throw NumericalError("radial potential: inconsistent sizes");
    if (!all_finite(u) || !all_finite(du) || !all_finite(d2u))
        throw NumericalError("radial potential: non-finite values");
    for (std::size_t i = 0; i < d2u.size(); ++i)
        if (d2u[i] <= positivity_floor)
            throw PositivityError("Kahler positivity violated at node " + std::to_string(i));
}

RadialPotential fs_potential(const GridPtr& g) {
    RadialPotential p;
    p.grid = g;
    const std::size_t n = g->n();
    p.u.resize(n);
    p.du.resize(n);
    p.d2u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = g->s[i];
        p.u[i] = 2.0 * (std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s))));
        p.du[i] = 2.0 / (1.0 + std::exp(-s));
        const double ch = std::cosh(0.5 * s);  // cancellation-free near the poles
        p.d2u[i] = 0.5 / (ch * ch);
    }
    return p;
}

namespace {

// Differentiate φ minus its endpoint plateau model A + B·tanh(s/2), adding the
// model derivatives back analytically. Nodal doubles cannot carry the second
// derivative of an O(1) potential at the edges (where u'' ~ e^{-s_max}), so
// the stencil must only ever see the edge-decaying remainder.
Vec deriv_with_plateau_model(const Grid& g, const Vec& phi, int order) {
    const std::size_t n = g.n();
    const long double m0 = g.chart.front(), m1 = g.chart.back();
    const long double f0 = phi.front(), f1 = phi.back();
    const long double B = (f1 - f0) / (m1 - m0);
    const long double A = f0 - B * m0;
    const Vec& model_deriv = (order == 1) ? g.chart_d1 : g.chart_d2;
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = g.ops->row(static_cast<int>(i), order);
        long double acc = 0.0L;
        for (std::size_t k = 0; k < row.w.size(); ++k) {
            const std::size_t j = row.first + k;
            acc += static_cast<long double>(row.w[k]) *
                   (static_cast<long double>(phi[j]) - A - B * g.chart[j]);
        }
        out[i] = static_cast<double>(acc + B * static_cast<long double>(model_deriv[i]));
    }
    return out;
}

}  // namespace

Vec d1_centered(const Grid& g, const Vec& phi) { return deriv_with_plateau_model(g, phi, 1); }

Vec d2_centered(const Grid& g, const Vec& phi) { return deriv_with_plateau_model(g, phi, 2); }

RadialPotential applied(const RadialPotential& base, const Vec& phi) {
    RadialPotential p;
    p.grid = base.grid;
    p.u = base.u + phi;
    p.du = base.du + d1_centered(*base.grid, phi);
    p.d2u = base.d2u + d2_centered(*base.grid, phi);
    return p;
}

namespace {

// Euler-Maclaurin endpoint correction lifting trapezoid to O(h^4) on uniform grids.
double em_correction(const Grid& g, const Vec& F) {
    if (!g.uniform) return 0.0;
    const double h = g.spacing();
    const int last = static_cast<int>(g.n()) - 1;
    return -h * h / 12.0 * (g.ops->deriv_at(F, last, 1) - g.ops->deriv_at(F, 0, 1));
}

}  // namespace

double integrate(const Vec& f, const RadialPotential& u) {
    const Grid& g = *u.grid;
    if (f.size() != g.n()) throw NumericalError("integrate: size mismatch");
    if (!all_finite(f)) throw NumericalError("integrate: non-finite integrand");
    Vec F(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) F[i] = f[i] * u.d2u[i];
    double acc = quad(g, F) + em_correction(g, F);
    // boundary tails of the measure: du → 0 on the left, → 2 on the right
    acc += f.front() * u.du.front();
    acc += f.back() * (2.0 - u.du.back());
    return 2.0 * kPi * acc;
}

double integrate_density(const Grid& g, const Vec& dens) {
    double acc = quad(g, dens) + em_correction(g, dens);
    const std::size_t n = g.n();
    auto tail = [](double inner, double edge, double h) {
        // fit edge ≈ inner·e^{-ρ h} toward the boundary and integrate the fit
        if (edge <= 0.0 || inner <= 0.0 || edge >= inner * (1.0 - 1e-12)) return 0.0;
        const double rho = std::log(inner / edge) / h;
        if (rho < 0.05) return 0.0;
        return edge / rho;
    };
    acc += tail(dens[1], dens[0], g.s[1] - g.s[0]);
    acc += tail(dens[n - 2], dens[n - 1], g.s[n - 1] - g.s[n - 2]);
    return acc;
}

ThetaPotential theta_potential(const RadialPotential& u, const VectorFieldSpec& X) {
    const std::size_t n = u.grid->n();
    Vec e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = std::exp(X.c * u.du[i]);
    const double total = integrate(e, u);
    if (!std::isfinite(total) || total <= 0.0)
        throw NumericalError("theta normalization integral is not finite");
    ThetaPotential out;
    out.norm_shift = -std::log(total / kVolume);
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = X.c * u.du[i] + out.norm_shift;
    return out;
}

Vec ricci_density(const RadialPotential& u) {
    u.validate();
    Vec logd(u.grid->n());
    for (std::size_t i = 0; i < logd.size(); ++i) logd[i] = std::log(u.d2u[i]);
    Vec r = u.grid->ops->d2(logd);
    for (double& x : r) x = -x;
    return r;
}

RicciPotentialParts ricci_potential_parts(const RadialPotential& u, double beta,
                                          const TwistFlux& flux, double alpha_left,
                                          double alpha_right, double tolerance) {
    const Grid& g = *u.grid;
    const std::size_t n = g.n();
    u.validate();
    if (flux.cumulative.size() != n) throw NumericalError("twist flux size mismatch");

    // exact class balance: ∫Ric = alpha_left + alpha_right, ∫ω = 2, ∫η = total
    const double defect = (alpha_left + alpha_right) - 2.0 * beta - flux.total;
    if (std::abs(defect) > tolerance)
        throw CohomologyError("Ricci potential class balance off by " + std::to_string(defect) +
                              " (wrong beta/nu/lambda combination?)");

    Vec logd(n);
    for (std::size_t i = 0; i < n; ++i) logd[i] = std::log(u.d2u[i]);
    const Vec slope = g.ops->d1(logd);

    RicciPotentialParts out;
    out.hp.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.hp[i] = (alpha_left - slope[i]) - beta * u.du[i] - flux.cumulative[i];
    out.h = cumulative_integral(g, out.hp, 0.0);
    Vec eh(n);
    for (std::size_t i = 0; i < n; ++i) eh[i] = std::exp(out.h[i]);
    const double mass = integrate(eh, u);
    const double c = std::log(mass / kVolume);
    for (double& x : out.h) x -= c;
    return out;
}

Vec ricci_potential_density(const RadialPotential& u, double beta, const TwistFlux& flux,
                            double alpha_left, double alpha_right, double tolerance) {
    return ricci_potential_parts(u, beta, flux, alpha_left, alpha_right, tolerance).h;
}

QuadRule gauss_legendre_01(int n) {
    if (n < 1) throw ConfigError("quadrature rule needs n >= 1");
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int k = 0; k < n; ++k) {
        double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[n - 1 - k] = 0.5 * (1.0 - x);  // map [-1,1] → [0,1], ascending
        r.w[n - 1 - k] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

double MeridianMetrics::from_pole(double s) const {
    const Vec& xs = grid->s;
    if (s <= xs.front()) return tail_left;
    if (s >= xs.back()) return tail_left + cumlen.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double t = (s - xs[i]) / (xs[i + 1] - xs[i]);
    return tail_left + (1.0 - t) * cumlen[i] + t * cumlen[i + 1];
}

double MeridianMetrics::distance(double s1, double s2) const {
    return std::abs(from_pole(s2) - from_pole(s1));
}

MeridianMetrics meridian_metrics(const RadialPotential& u, double alpha_left, double alpha_right,
                                 bool enforce_tail_bound) {
    u.validate();
    const Grid& g = *u.grid;
    Vec f(g.n());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sqrt(0.5 * u.d2u[i]);
    MeridianMetrics m;
    m.grid = u.grid;
    m.cumlen = cumulative_integral(g, f, 0.0);
    m.tail_left = f.front() * 2.0 / alpha_left;
    m.tail_right = f.back() * 2.0 / alpha_right;
    m.diameter = m.tail_left + m.cumlen.back() + m.tail_right;
    m.tail_fraction = (m.tail_left + m.tail_right) / m.diameter;
    if (enforce_tail_bound && m.tail_fraction > 0.01)
        throw NumericalError("meridian tail estimate above 1%: grid too small");
    return m;
}

Vec DivisorModel::log_weight_slope(const RadialPotential& u0) const {
    Vec gp(u0.grid->n());
    for (std::size_t i = 0; i < gp.size(); ++i)
        gp[i] = (at_zero ? 1.0 : 0.0) - lambda * u0.du[i];
    return gp;
}

DivisorModel divisor_weight(const RadialPotential& u0, bool at_zero, bool at_infinity, double nu) {
    if (!at_zero && !at_infinity) throw ConfigError("divisor needs at least one point");
    if (!(nu > 0.0 && nu < 1.0)) throw ConfigError("divisor weight needs nu in (0,1)");
    DivisorModel d;
    d.grid = u0.grid;
    d.at_zero = at_zero;
    d.at_infinity = at_infinity;
    d.lambda = 0.5 * d.point_count();
    d.nu = nu;
    const std::size_t n = u0.grid->n();

    // § Ricci potential of the base: Ric(ω0) = γω0 + λνω0 + i∂∂̄h0
    const double gamma = 1.0 - d.lambda * nu;
    TwistFlux flux;
    flux.cumulative.resize(n);
    for (std::size_t i = 0; i < n; ++i) flux.cumulative[i] = d.lambda * nu * u0.du[i];
    flux.total = 2.0 * d.lambda * nu;
    const Vec h0 = ricci_potential_density(u0, gamma, flux);

    Vec graw(n), dens(n);
    for (std::size_t i = 0; i < n; ++i) {
        graw[i] = (at_zero ? u0.grid->s[i] : 0.0) - d.lambda * u0.u[i];
        dens[i] = 2.0 * kPi * std::exp(h0[i] - nu * graw[i]) * u0.d2u[i];
    }
    const double mass = integrate_density(*u0.grid, dens);
    if (!std::isfinite(mass) || mass <= 0.0)
        throw NumericalError("divisor normalization integral diverged");
    d.norm_const = std::log(mass / kVolume) / nu;
    d.log_weight.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.log_weight[i] = graw[i] + d.norm_const;
    return d;
}

MomentProfile moment_profile(const RadialPotential& u) {
    return MomentProfile{u.du, u.d2u};
}

}  // namespace soliton
