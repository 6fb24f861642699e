#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "solitonlab/functionals.hpp"

using namespace soliton;

namespace {

struct Setup {
    GridPtr g = build_grid(2048, 12.0, 0.0);
    RadialPotential u0 = fs_potential(g);
};

// amp·sech²((s-c)/2): restriction of a smooth sphere function, tails ~ e^{-|s|}
Vec chart_bump(const Grid& g, double amp, double center) {
    Vec phi(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double c = std::cosh(0.5 * (g.s[i] - center));
        phi[i] = amp / (c * c);
    }
    return phi;
}

}  // namespace

TEST_CASE("phi = 0 gives vanishing functionals") {
    Setup S;
    EnergyContext ctx(S.u0, TwistSpec::smooth(1.0, S.u0), VectorFieldSpec{0.0});
    Vec zero(S.g->n(), 0.0);
    const auto ay = ctx.aubin_yau(zero);
    CHECK(std::abs(ay.I) < 1e-12);
    CHECK(std::abs(ay.J) < 1e-12);
    CHECK(std::abs(ay.I_tilde) < 1e-12);
    CHECK(std::abs(ay.J_tilde) < 1e-12);
    CHECK(std::abs(ctx.k_energy(zero)) < 1e-12);
    auto [ft, fh] = ctx.ding(zero);
    CHECK(std::abs(ft) < 1e-9);  // F̃(0) = -(1/β)log((1/V)∫e^{h0}ω0) = 0
    CHECK(std::abs(fh) < 1e-12);
}

TEST_CASE("dimension-1 exactness: I = 2J for X = 0 on random potentials") {
    Setup S;
    EnergyContext ctx(S.u0, TwistSpec::smooth(1.0, S.u0), VectorFieldSpec{0.0});
    const auto family = make_test_family(S.u0, 100, 0.8, 12345);
    for (const Vec& phi : family) {
        const auto ay = ctx.aubin_yau(phi);
        CHECK(std::abs(ay.I - 2.0 * ay.J) < 1e-8 * std::max(1.0, std::abs(ay.I)));
        CHECK(std::abs((ay.I - ay.J) - ay.J) < 1e-8 * std::max(1.0, std::abs(ay.I)));
        // with X = 0 the twisted functionals reduce to the plain ones
        CHECK(ay.I_tilde == doctest::Approx(ay.I).epsilon(1e-10));
        CHECK(ay.J_tilde == doctest::Approx(ay.J).epsilon(1e-10));
    }
}

TEST_CASE("twisted positivity chain with X = c z d/dz") {
    Setup S;
    EnergyContext ctx(S.u0, TwistSpec::smooth(1.0, S.u0), VectorFieldSpec{1.0});
    const auto family = make_test_family(S.u0, 25, 0.8, 777);
    for (const Vec& phi : family) {
        const auto ay = ctx.aubin_yau(phi);
        CHECK(ay.I_tilde >= -1e-9);
        CHECK(ay.J_tilde >= -1e-9);
        CHECK(ay.I_tilde - ay.J_tilde >= -1e-9);
        CHECK(ay.I_tilde - ay.J_tilde <= ay.I_tilde + 1e-9);
    }
}

TEST_CASE("K-energy is minimized at the KE metric") {
    Setup S;
    EnergyContext ctx(S.u0, TwistSpec::smooth(1.0, S.u0), VectorFieldSpec{0.0});
    const Vec dir = chart_bump(*S.g, 0.55, 0.4);
    // V-shape along the ray through 0 in both directions
    const double m_m6 = ctx.k_energy(-0.6 * dir);
    const double m_m3 = ctx.k_energy(-0.3 * dir);
    const double m_p3 = ctx.k_energy(0.3 * dir);
    const double m_p6 = ctx.k_energy(0.6 * dir);
    CHECK(m_m3 > 1e-6);
    CHECK(m_p3 > 1e-6);
    CHECK(m_m6 > m_m3);
    CHECK(m_p6 > m_p3);
}

TEST_CASE("path independence of mu and J along linear vs quadratic paths") {
    Setup S;
    EnergyContext ctx(S.u0, TwistSpec::smooth(0.7, S.u0), VectorFieldSpec{0.5});
    const auto family = make_test_family(S.u0, 5, 0.7, 2024);
    for (const Vec& phi : family) {
        const double mu_lin = ctx.k_energy(phi);
        const double mu_quad = ctx.k_energy_quadratic_path(phi);
        CHECK(std::abs(mu_lin - mu_quad) < 1e-5);
        const auto ay = ctx.aubin_yau(phi);
        const double jt_quad = ctx.j_tilde_quadratic_path(phi);
        CHECK(std::abs(ay.J_tilde - jt_quad) < 1e-5);
    }
}

TEST_CASE("cocycle property for mu, F_tilde, F_hat") {
    Setup S;
    EnergyContext ctx(S.u0, TwistSpec::smooth(0.6, S.u0), VectorFieldSpec{0.3});
    const Vec phi = chart_bump(*S.g, 0.3, -0.8);
    const Vec psi = chart_bump(*S.g, -0.2, 1.1);
    const Vec chi = phi + psi;

    const RadialPotential mid = applied(S.u0, phi);
    EnergyContext ctx_mid(mid, TwistSpec::smooth(0.6, S.u0), VectorFieldSpec{0.3});

    CHECK(std::abs(ctx.k_energy(chi) - ctx.k_energy(phi) - ctx_mid.k_energy(psi)) < 1e-6);
    const auto [ft_all, fh_all] = ctx.ding(chi);
    const auto [ft_a, fh_a] = ctx.ding(phi);
    const auto [ft_b, fh_b] = ctx_mid.ding(psi);
    CHECK(std::abs(ft_all - ft_a - ft_b) < 1e-6);
    CHECK(std::abs(fh_all - fh_a - fh_b) < 1e-6);
}

TEST_CASE("constant-shift invariance of F_tilde and mu") {
    Setup S;
    EnergyContext ctx(S.u0, TwistSpec::smooth(0.8, S.u0), VectorFieldSpec{0.4});
    const Vec phi = chart_bump(*S.g, 0.45, 0.2);
    // κ·ε input granularity is FD-amplified, so keep the gauge constant moderate
    Vec shifted = phi;
    shift(shifted, 0.25);
    CHECK(std::abs(ctx.k_energy(shifted) - ctx.k_energy(phi)) < 1e-10);
    const auto [ft, fh] = ctx.ding(phi);
    const auto [fts, fhs] = ctx.ding(shifted);
    CHECK(std::abs(fts - ft) < 1e-10);
    CHECK(fhs == doctest::Approx(fh - 0.25).epsilon(1e-10));
}

TEST_CASE("comparison identity relating mu, F_tilde and the Ricci potentials") {
    Setup S;
    const double beta = 0.7;
    auto twist = TwistSpec::smooth(beta, S.u0, chart_bump(*S.g, 0.3, -0.5));
    VectorFieldSpec X{0.6};
    EnergyContext ctx(S.u0, twist, X);
    const auto family = make_test_family(S.u0, 8, 0.6, 99);
    const double cst = ctx.comparison_constant();
    for (const Vec& phi : family) {
        const double mu = ctx.k_energy(phi);
        const auto [ft, fh] = ctx.ding(phi);
        // exact identity: μ̃ = βF̃ + cst - (1/V)∫(h_φ - θ0 - X(φ))e^{θ0+X(φ)}ω_φ
        const RadialPotential uphi = applied(S.u0, phi);
        const Vec hphi = twist.ricci_potential(uphi);
        const Vec dphi = S.g->ops->d1(phi);
        Vec f(S.g->n());
        for (std::size_t i = 0; i < S.g->n(); ++i) {
            const double th = ctx.theta_base()[i] + X.c * dphi[i];
            f[i] = (hphi[i] - th) * std::exp(th);
        }
        const double defect = integrate(f, uphi) / kVolume;
        CHECK(std::abs(mu - (beta * ft + cst - defect)) < 5e-6);
        // and the inequality form
        CHECK(mu >= beta * ft + cst - 5e-6);
    }
}

TEST_CASE("log functionals: zero at phi = 0 and Lemma-style inequality") {
    Setup S;
    auto D = divisor_weight(S.u0, true, false, 0.5);
    auto twist = TwistSpec::conical(0.5, D, S.u0);
    VectorFieldSpec X{0.4};
    EnergyContext ctx(S.u0, twist, X);
    Vec zero(S.g->n(), 0.0);
    auto [mu0, fl0] = ctx.log_functionals(zero);
    CHECK(std::abs(mu0) < 1e-10);
    CHECK(std::abs(fl0) < 1e-5);  // H-normalization

    // μ̃_{νD} ≥ γ F̃_{νD} + (1/V)∫(h0 - θ - ν log|s|²_H)e^θ ω0, h0 in the cone gauge
    const double gamma = twist.beta;
    Vec f(S.g->n());
    for (std::size_t i = 0; i < S.g->n(); ++i)
        f[i] = (ctx.h_base_cone_gauge()[i] - ctx.theta_base()[i] - 0.5 * D.log_weight[i]) *
               std::exp(ctx.theta_base()[i]);
    const double cst = integrate(f, S.u0) / kVolume;
    const auto family = make_test_family(S.u0, 50, 0.7, 4242);
    for (const Vec& phi : family) {
        auto [mu, fl] = ctx.log_functionals(phi);
        CHECK(mu >= gamma * fl + cst - 1e-4);
    }
}

TEST_CASE("uniform properness gap over epsilon") {
    Setup S;
    auto D = divisor_weight(S.u0, true, false, 0.5);
    auto twist = TwistSpec::conical(0.5, D, S.u0);
    EnergyContext ctx(S.u0, twist, VectorFieldSpec{0.3});
    const double C = ctx.properness_gap_constant(1.0);
    CHECK(C > 0.0);
    const auto family = make_test_family(S.u0, 10, 0.6, 31);
    for (double eps : {1.0, 0.1, 0.01, 0.001}) {
        auto reg = TwistSpec::regularized(0.5, D, eps, S.u0);
        EnergyContext rctx(S.u0, reg, VectorFieldSpec{0.3});
        for (const Vec& phi : family) {
            const double mu_eps = rctx.k_energy(phi);
            const double mu_D = ctx.log_functionals(phi).first;
            CHECK(mu_eps - mu_D >= -C - 1e-3);
        }
    }
}

TEST_CASE("functional checks: trivial family and the exact n = 1 constant") {
    Setup S;
    EnergyContext ctx(S.u0, TwistSpec::smooth(0.85, S.u0), VectorFieldSpec{0.0});
    std::vector<Vec> trivial{Vec(S.g->n(), 0.0)};
    auto rep0 = functional_checks(ctx, trivial);
    CHECK(rep0.ok());

    const auto family = make_test_family(S.u0, 100, 0.8, 555);
    auto rep = functional_checks(ctx, family);
    for (const auto& v : rep.violations) MESSAGE(v);
    CHECK(rep.ok());
    CHECK(rep.C2 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(rep.C1 == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("regularized K-energy agrees with the smooth-part + weight-shift split") {
    Setup S;
    auto D = divisor_weight(S.u0, true, false, 0.5);
    const double eps = 0.5;
    auto reg = TwistSpec::regularized(0.5, D, eps, S.u0);
    VectorFieldSpec X{0.2};
    EnergyContext rctx(S.u0, reg, X);
    EnergyContext sctx(S.u0, TwistSpec::smooth(reg.beta, S.u0), X);
    const auto family = make_test_family(S.u0, 5, 0.6, 8);
    for (const Vec& phi : family) {
        const double direct = rctx.k_energy(phi);
        // shift route: μ_smooth + (ν/V)∫log(W+ε²)(dμ_φ - dμ_0)
        Vec logw(S.g->n());
        for (std::size_t i = 0; i < S.g->n(); ++i)
            logw[i] = std::log(std::exp(D.log_weight[i]) + eps * eps);
        const RadialPotential uphi = applied(S.u0, phi);
        const Vec thphi = theta_potential(uphi, X).values;
        const Vec th0 = theta_potential(S.u0, X).values;
        Vec f1(S.g->n()), f0(S.g->n());
        for (std::size_t i = 0; i < S.g->n(); ++i) {
            f1[i] = logw[i] * std::exp(thphi[i]);
            f0[i] = logw[i] * std::exp(th0[i]);
        }
        const double split =
            sctx.k_energy(phi) + 0.5 / kVolume * (integrate(f1, uphi) - integrate(f0, S.u0));
        CHECK(std::abs(direct - split) < 2e-4);
    }
}
