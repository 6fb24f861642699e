#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "solitonlab/radial.hpp"
#include "solitonlab/twist.hpp"

using namespace soliton;

namespace {

GridPtr default_grid() { return build_grid(2048, 12.0, 0.0); }

// smooth compactly-concentrated test potential, small enough to keep positivity
Vec bump_potential(const Grid& g, double amp, double center, double width) {
    Vec phi(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double x = (g.s[i] - center) / width;
        phi[i] = amp / std::cosh(x);
    }
    return phi;
}

}  // namespace

TEST_CASE("fs potential pointwise values at s = 0") {
    auto g = default_grid();
    auto u0 = fs_potential(g);
    std::size_t i0 = g->n() / 2;
    for (std::size_t i = 0; i < g->n(); ++i)
        if (std::abs(g->s[i]) < std::abs(g->s[i0])) i0 = i;
    // closest node to 0 on the even grid sits half a spacing away
    const double s = g->s[i0];
    CHECK(u0.u[i0] == doctest::Approx(2.0 * std::log(1.0 + std::exp(s))).epsilon(1e-14));
    CHECK(u0.du[i0] == doctest::Approx(2.0 * std::exp(s) / (1.0 + std::exp(s))).epsilon(1e-14));
    auto gg = build_grid(2049, 12.0, 0.0);  // odd grid has the s = 0 node
    auto v0 = fs_potential(gg);
    const std::size_t m = gg->n() / 2;
    CHECK(gg->s[m] == 0.0);
    CHECK(v0.u[m] == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(v0.du[m] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v0.d2u[m] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("fs area and moment profile") {
    auto g = default_grid();
    auto u0 = fs_potential(g);
    Vec one(g->n(), 1.0);
    CHECK(integrate(one, u0) == doctest::Approx(4.0 * kPi).epsilon(1e-10));
    // v(τ) = τ - τ²/2
    for (std::size_t i = 0; i < g->n(); i += 97) {
        const double tau = u0.du[i];
        CHECK(u0.d2u[i] == doctest::Approx(tau - tau * tau / 2.0).epsilon(1e-13));
    }
    // half-line mass and moment-map mean
    Vec left(g->n(), 0.0);
    for (std::size_t i = 0; i < g->n(); ++i) left[i] = g->s[i] < 0.0 ? 1.0 : 0.0;
    CHECK(integrate(left, u0) == doctest::Approx(2.0 * kPi).epsilon(1e-4));
    CHECK(integrate(u0.du, u0) == doctest::Approx(4.0 * kPi).epsilon(1e-9));
}

TEST_CASE("derivative consistency of fs against finite differences") {
    auto g = default_grid();
    auto u0 = fs_potential(g);
    const Vec du = g->ops->d1(u0.u);
    const Vec d2u = g->ops->d2(u0.u);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < g->n(); ++i) {
        e1 = std::max(e1, std::abs(du[i] - u0.du[i]));
        e2 = std::max(e2, std::abs(d2u[i] - u0.d2u[i]));
    }
    CHECK(e1 < 1e-8);
    CHECK(e2 < 1e-7);
}

TEST_CASE("theta potential: zero field, normalization, additivity") {
    auto g = default_grid();
    auto u0 = fs_potential(g);

    auto th0 = theta_potential(u0, VectorFieldSpec{0.0});
    CHECK(std::abs(th0.norm_shift) < 1e-10);
    CHECK(sup_norm(th0.values) < 1e-10);

    VectorFieldSpec X{1.0};
    auto th = theta_potential(u0, X);
    Vec e(g->n());
    for (std::size_t i = 0; i < g->n(); ++i) e[i] = std::exp(th.values[i]);
    CHECK(integrate(e, u0) == doctest::Approx(4.0 * kPi).epsilon(1e-8));
    // analytic shift: (1/V)∫ e^{cu'} ω = (e^{2c}-1)/(2c)
    CHECK(th.norm_shift == doctest::Approx(-std::log(std::expm1(2.0) / 2.0)).epsilon(1e-9));

    // invariance of ∫ e^{θ_X + X(φ)} ω_φ under φ
    const Vec phi = bump_potential(*g, 0.4, 0.7, 1.3);
    auto uphi = applied(u0, phi);
    uphi.validate();
    const Vec dphi = g->ops->d1(phi);
    Vec f(g->n());
    for (std::size_t i = 0; i < g->n(); ++i) f[i] = std::exp(th.values[i] + X.c * dphi[i]);
    const double lhs = integrate(f, uphi);
    CHECK(lhs == doctest::Approx(4.0 * kPi).epsilon(1e-8));
    // per-metric renormalization equals the transported shift
    auto thphi = theta_potential(uphi, X);
    CHECK(thphi.norm_shift == doctest::Approx(th.norm_shift).epsilon(1e-8));
}

TEST_CASE("ricci density: round metric is Einstein, affine shifts drop out") {
    auto g = default_grid();
    auto u0 = fs_potential(g);
    const Vec ric = ricci_density(u0);
    double err = 0.0;
    for (std::size_t i = 0; i < g->n(); ++i) err = std::max(err, std::abs(ric[i] - u0.d2u[i]));
    CHECK(err < 1e-7);

    RadialPotential shifted = u0;
    for (std::size_t i = 0; i < g->n(); ++i) {
        shifted.u[i] += 0.3 * g->s[i] + 1.7;
        shifted.du[i] += 0.3;
    }
    const Vec ric2 = ricci_density(shifted);
    double diff = 0.0;
    for (std::size_t i = 0; i < g->n(); ++i) diff = std::max(diff, std::abs(ric2[i] - ric[i]));
    CHECK(diff < 1e-12);

    // Gauss-Bonnet: 2π∫Ric over the grid plus unit boundary slopes gives 4π
    const double interior = 2.0 * kPi * quad(*g, ric);
    Vec logd(g->n());
    for (std::size_t i = 0; i < g->n(); ++i) logd[i] = std::log(u0.d2u[i]);
    const Vec slope = g->ops->d1(logd);
    const double total = interior + 2.0 * kPi * ((1.0 - slope.front()) + (slope.back() + 1.0));
    CHECK(total == doctest::Approx(4.0 * kPi).epsilon(1e-3));
}

TEST_CASE("ricci potential: KE case vanishes, conical case bounded, normalized") {
    auto g = default_grid();
    auto u0 = fs_potential(g);

    auto none = TwistSpec::smooth(1.0, u0);
    const Vec h = none.ricci_potential(u0);
    CHECK(sup_norm(h) < 1e-7);

    // β = γ(1/2,1/2) = 3/4 with twist ν[D] smooth part λν ω0: h bounded, normalized
    auto D = divisor_weight(u0, true, false, 0.5);
    const double gamma = 1.0 - 0.5 * 0.5;
    TwistFlux flux;
    flux.cumulative.resize(g->n());
    for (std::size_t i = 0; i < g->n(); ++i) flux.cumulative[i] = 0.25 * u0.du[i];
    flux.total = 0.5;
    const Vec hc = ricci_potential_density(u0, gamma, flux);
    CHECK(all_finite(hc));
    Vec eh(g->n());
    for (std::size_t i = 0; i < g->n(); ++i) eh[i] = std::exp(hc[i]);
    CHECK(integrate(eh, u0) == doctest::Approx(4.0 * kPi).epsilon(1e-8));

    // wrong class balance must throw
    CHECK_THROWS_AS(ricci_potential_density(u0, 0.6, flux), CohomologyError);
}

TEST_CASE("divisor weight: formula, asymptotics, X pairing, normalization") {
    auto g = default_grid();
    auto u0 = fs_potential(g);
    auto D = divisor_weight(u0, true, false, 0.5);
    CHECK(D.lambda == doctest::Approx(0.5));
    // log|s|²_H = s - log(1+e^s) + const
    double err = 0.0;
    for (std::size_t i = 0; i < g->n(); i += 53) {
        const double expect = g->s[i] - std::log1p(std::exp(g->s[i])) + D.norm_const;
        err = std::max(err, std::abs(D.log_weight[i] - expect));
    }
    CHECK(err < 1e-12);
    // tends to s + const at -∞ and to a constant at +∞
    CHECK(std::abs(D.log_weight.front() - (g->s.front() + D.norm_const)) < 1e-4);
    CHECK(std::abs(D.log_weight.back() - D.norm_const) < 2e-5);

    // |X(log|s|²_H)| = |c(1-λu0')| ≤ |c|
    const double c = 0.8;
    const Vec gp = D.log_weight_slope(u0);
    for (std::size_t i = 0; i < g->n(); i += 97) {
        CHECK(std::abs(c * gp[i]) <= std::abs(c) + 1e-12);
    }

    // normalization (1/V)∫ e^{h0}/|s|_H^{2ν} ω0 = 1
    const double gammav = 1.0 - D.lambda * D.nu;
    TwistFlux flux2;
    flux2.cumulative.resize(g->n());
    for (std::size_t i = 0; i < g->n(); ++i) flux2.cumulative[i] = D.lambda * D.nu * u0.du[i];
    flux2.total = 2.0 * D.lambda * D.nu;
    const Vec h0 = ricci_potential_density(u0, gammav, flux2);
    Vec dens(g->n());
    for (std::size_t i = 0; i < g->n(); ++i)
        dens[i] = 2.0 * kPi * std::exp(h0[i] - D.nu * D.log_weight[i]) * u0.d2u[i];
    CHECK(integrate_density(*g, dens) == doctest::Approx(4.0 * kPi).epsilon(1e-5));

    // both poles: log|s|²_H = s - u0 + const (λ = 1)
    auto D2 = divisor_weight(u0, true, true, 0.5);
    CHECK(D2.lambda == doctest::Approx(1.0));
    for (std::size_t i = 0; i < g->n(); i += 211) {
        const double expect = g->s[i] - u0.u[i] + D2.norm_const;
        CHECK(D2.log_weight[i] == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK_THROWS_AS(divisor_weight(u0, true, false, 1.0), ConfigError);
}

TEST_CASE("meridian metrics: diameter of the round sphere is π") {
    auto g = default_grid();
    auto u0 = fs_potential(g);
    auto m = meridian_metrics(u0);
    CHECK(m.diameter == doctest::Approx(kPi).epsilon(1e-4 / kPi));
    // truncation insensitivity
    auto g2 = build_grid(2048, 14.0, 0.0);
    auto m2 = meridian_metrics(fs_potential(g2));
    CHECK(std::abs(m2.diameter - m.diameter) < 1e-4);
    // distance is dominated by the diameter
    CHECK(m.distance(-3.0, 5.0) <= m.diameter);
    CHECK(m.distance(-3.0, 5.0) == doctest::Approx(m.from_pole(5.0) - m.from_pole(-3.0)));
}

TEST_CASE("grid refinement: area and diameter converge at order >= 2") {
    double area[3], diam[3];
    int k = 0;
    for (std::size_t n : {512u, 1024u, 2048u}) {
        auto g = build_grid(n, 12.0, 0.0);
        auto u0 = fs_potential(g);
        Vec one(g->n(), 1.0);
        area[k] = integrate(one, u0);
        diam[k] = meridian_metrics(u0).diameter;
        ++k;
    }
    CHECK(std::abs(diam[2] - diam[1]) <= std::abs(diam[1] - diam[0]));
    CHECK(std::abs(area[2] - area[1]) <= std::abs(area[1] - area[0]) + 1e-14);
}

TEST_CASE("positivity violations are rejected") {
    auto g = default_grid();
    auto u0 = fs_potential(g);
    RadialPotential bad = u0;
    bad.d2u[100] = -1e-6;
    CHECK_THROWS_AS(bad.validate(), PositivityError);
    CHECK_THROWS_AS(ricci_density(bad), PositivityError);
}
