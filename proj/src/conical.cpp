#include "solitonlab/conical.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace soliton {

namespace {

constexpr std::array<double, 16> kGL16x = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr std::array<double, 16> kGL16w = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
double gl16(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int k = 0; k < 16; ++k) acc += kGL16w[k] * f(mid + half * kGL16x[k]);
    return acc * half;
}

}  // namespace

double chi_smoothing_scalar(double epsilon, double nu, double t) {
    if (!(nu > 0.0 && nu < 1.0)) throw ConfigError("chi: nu must be in (0,1)");
    if (!(epsilon > 0.0)) throw ConfigError("chi: epsilon must be positive");
    if (t < 0.0) throw ConfigError("chi: negative weight value");
    if (t == 0.0) return 0.0;
    // substitute r = ε²y: χ = ε^{2-2ν}/(1-ν) ∫_0^{T} ((1+y)^{1-ν} - 1)/y dy, T = t/ε²
    const double T = t / (epsilon * epsilon);
    auto f = [nu](double y) {
        if (y < 1e-8) return (1.0 - nu) * (1.0 - 0.5 * nu * y);
        return std::expm1((1.0 - nu) * std::log1p(y)) / y;
    };
    double acc = 0.0;
    const double split = std::min(T, 1.0);
    acc += gl16(f, 0.0, split);
    if (T > 1.0) {
        // log substitution y = e^w on [0, log T]
        auto flog = [&](double w) {
            const double y = std::exp(w);
            return f(y) * y;
        };
        const double L = std::log(T);
        const int panels = std::max(1, static_cast<int>(std::ceil(L / 2.0)));
        for (int p = 0; p < panels; ++p) acc += gl16(flog, L * p / panels, L * (p + 1) / panels);
    }
    return std::pow(epsilon, 2.0 - 2.0 * nu) / (1.0 - nu) * acc;
}

Vec chi_smoothing(double epsilon, double nu, const Vec& weight_values) {
    Vec out(weight_values.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = chi_smoothing_scalar(epsilon, nu, weight_values[i]);
    return out;
}

double chi_prime(double epsilon, double nu, double t) {
    const double e2 = epsilon * epsilon;
    const double x = t / e2;
    if (x < 1e-6) return std::pow(epsilon, -2.0 * nu) * (1.0 - 0.5 * nu * x);
    return std::pow(e2, -nu) * std::expm1((1.0 - nu) * std::log1p(x)) / ((1.0 - nu) * x);
}

double chi_second(double epsilon, double nu, double t) {
    const double e2 = epsilon * epsilon;
    const double x = t / e2;
    if (x < 1e-6)
        return std::pow(epsilon, -2.0 * nu) / e2 * nu * (-0.5 + (nu + 1.0) * x / 3.0);
    return (std::pow(e2 * (1.0 + x), -nu) - chi_prime(epsilon, nu, t)) / t;
}

Vec omega_eps_density(double k, double epsilon, double nu, const DivisorModel& D,
                      const RadialPotential& u0) {
    const std::size_t n = u0.grid->n();
    const Vec gp = D.log_weight_slope(u0);
    Vec dens(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double W = std::exp(D.log_weight[i]);
        const double Wp = gp[i] * W;
        const double Wpp = (-D.lambda * u0.d2u[i] + gp[i] * gp[i]) * W;
        dens[i] = u0.d2u[i] +
                  k * (chi_second(epsilon, nu, W) * Wp * Wp + chi_prime(epsilon, nu, W) * Wpp);
    }
    return dens;
}

RegularizationSchedule RegularizationSchedule::geometric(double nu, double lambda, double eps_hi,
                                                         double eps_lo, int count) {
    if (!(eps_hi > eps_lo && eps_lo > 0.0) || count < 2)
        throw ConfigError("bad regularization schedule");
    RegularizationSchedule s;
    s.nu = nu;
    s.lambda = lambda;
    s.epsilons.resize(count);
    const double ratio = std::pow(eps_lo / eps_hi, 1.0 / (count - 1));
    double e = eps_hi;
    for (int i = 0; i < count; ++i) {
        s.epsilons[i] = e;
        e *= ratio;
    }
    return s;
}

double choose_smoothing_k(const RegularizationSchedule& sched, const DivisorModel& D,
                          const RadialPotential& u0) {
    for (int p = 1; p <= 10; ++p) {
        const double k = std::pow(2.0, -p);
        bool ok = true;
        for (double eps : sched.epsilons) {
            const Vec dens = omega_eps_density(k, eps, sched.nu, D, u0);
            for (std::size_t i = 0; i < dens.size() && ok; ++i)
                if (dens[i] < 0.1 * u0.d2u[i]) ok = false;
            if (!ok) break;
        }
        if (ok) return k;
    }
    throw NumericalError("no admissible smoothing coefficient k found");
}

namespace {

double pde_interior_sup(const Vec& r) {
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < r.size(); ++i) m = std::max(m, std::abs(r[i]));
    return m;
}

}  // namespace

NewtonSettings conical_newton_defaults() {
    NewtonSettings s;
    s.residual_tol = 1e-8;  // edge densities sit near the FD rounding floor
    s.max_iters = 80;       // capped steps crawl along the Lichnerowicz valley
    s.step_cap = 0.25;
    return s;
}

double cone_slope_estimate(const RadialPotential& u, bool left_pole) {
    const Grid& g = *u.grid;
    const std::size_t n = g.n();
    double sa = 0.0, sb = 0.0, saa = 0.0, sab = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = g.s[i];
        const bool in_window = left_pole ? (s <= -0.5 * g.s_max) : (s >= 0.5 * g.s_max);
        if (!in_window) continue;
        const double y = std::log(u.d2u[i]);
        sa += s;
        sb += y;
        saa += s * s;
        sab += s * y;
        ++count;
    }
    if (count < 8) throw NumericalError("cone slope: window too small");
    const double m = static_cast<double>(count);
    const double slope = (m * sab - sa * sb) / (m * saa - sa * sa);
    return left_pole ? slope : -slope;
}

double pole_angle_estimate(const RadialPotential& u, bool left_pole, double window) {
    const std::size_t n = u.grid->n();
    // x = distance to the pole in the moment coordinate
    double amat[4][4] = {};
    double bvec[4] = {};
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = left_pole ? u.du[i] : 2.0 - u.du[i];
        if (x <= 0.0 || x > window) continue;
        const double y = u.d2u[i];
        double p[4] = {x, x * x, x * x * x, x * x * x * x};
        for (int a = 0; a < 4; ++a) {
            bvec[a] += p[a] * y;
            for (int b = 0; b < 4; ++b) amat[a][b] += p[a] * p[b];
        }
        ++used;
    }
    if (used < 12) throw NumericalError("pole angle: too few nodes near the pole");
    // Gaussian elimination on the 4x4 normal equations
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(amat[r][c]) > std::abs(amat[piv][c])) piv = r;
        std::swap(amat[c], amat[piv]);
        std::swap(bvec[c], bvec[piv]);
        if (std::abs(amat[c][c]) < 1e-300) throw NumericalError("pole angle: singular fit");
        for (int r = c + 1; r < 4; ++r) {
            const double f = amat[r][c] / amat[c][c];
            for (int k = c; k < 4; ++k) amat[r][k] -= f * amat[c][k];
            bvec[r] -= f * bvec[c];
        }
    }
    double sol[4];
    for (int r = 3; r >= 0; --r) {
        double acc = bvec[r];
        for (int k = r + 1; k < 4; ++k) acc -= amat[r][k] * sol[k];
        sol[r] = acc / amat[r][r];
    }
    return sol[0];
}

ConicalSolution solve_conical(const RadialPotential& base, double nu, const DivisorModel& D,
                              const VectorFieldSpec& X, const RegularizationSchedule& sched,
                              NewtonSettings settings) {
    ConicalSolution sol;
    sol.nu = nu;
    sol.lambda = D.lambda;
    sol.divisor = D;
    sol.base = base;
    const Grid& g = *base.grid;
    const std::size_t n = g.n();
    const double k = sched.k > 0.0 ? sched.k : choose_smoothing_k(sched, D, base);

    SplitPotential phi = SplitPotential::zero(g);
    bool have_start = false;
    double eps_prev = -1.0;
    double last_residual = 0.0;

    auto solve_at = [&](double eps, const SplitPotential& warm) -> NewtonResult {
        const TwistSpec reg = TwistSpec::regularized(nu, D, eps, base);
        const ContinuityProblem pr = ContinuityProblem::conical(base, reg, X);
        return newton_solve(pr, warm, 1.0, settings);
    };

    for (double eps : sched.epsilons) {
        bool converged = false;
        if (!have_start) {
            const TwistSpec reg = TwistSpec::regularized(nu, D, eps, base);
            const ContinuityTrace tr =
                continuity_path(base, reg, X, default_schedule(), settings, false);
            if (tr.completed) {
                phi = SplitPotential::from_values(g, tr.steps.back().phi);
                // re-polish so the split representation reaches the full tolerance
                NewtonResult nr = solve_at(eps, phi);
                if (nr.converged) {
                    phi = nr.split;
                    last_residual = nr.residual_sup;
                    converged = true;
                    have_start = true;
                }
            }
        } else {
            // warm Newton at t = 1 with an adaptive geometric ε-ratio: failures
            // refine the ratio toward 1 instead of re-attempting the full jump
            SplitPotential trial = phi;
            double from = eps_prev;
            double ratio = eps / eps_prev;
            int guard = 0;
            while (guard++ < 60) {
                const double target = std::max(eps, from * ratio);
                NewtonResult nr = solve_at(target, trial);
                if (nr.converged) {
                    trial = nr.split;
                    from = target;
                    if (target <= eps * (1.0 + 1e-12)) {
                        phi = trial;
                        last_residual = nr.residual_sup;
                        converged = true;
                        break;
                    }
                } else {
                    ratio = std::sqrt(ratio);
                    if (1.0 - ratio < 1e-4) break;
                }
            }
        }
        if (!converged) {
            sol.completed = false;
            sol.diverged_at_eps = eps;
            return sol;
        }
        eps_prev = eps;

        // per-ε record
        EpsStep st;
        st.epsilon = eps;
        st.phi = phi.values(g);
        const TwistSpec reg = TwistSpec::regularized(nu, D, eps, base);
        const ContinuityProblem pr = ContinuityProblem::conical(base, reg, X);
        st.residual_sup = last_residual;
        RadialPotential u;
        u.grid = base.grid;
        u.u = base.u + st.phi;
        u.du = base.du + phi.d1(g);
        u.d2u = base.d2u + phi.d2(g);
        u.validate();
        st.diameter =
            meridian_metrics(u, pr.alpha_left, pr.alpha_right, false).diameter;
        EnergyContext ctx(base, reg, X);
        auto [ml, fl] = ctx.log_functionals(st.phi);
        st.mu_log = ml;
        st.F_log = fl;
        st.cone_slope_est = cone_slope_estimate(u, D.at_zero);
        double supx = 0.0;
        for (std::size_t i = 0; i < n; ++i) supx = std::max(supx, std::sqrt(2.0 * u.d2u[i]));
        st.sup_X = std::abs(X.c) * supx;
        const Vec eps_density = omega_eps_density(k, eps, nu, D, base);
        double rlo = 1e300, rhi = 0.0, fsup = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ratio = u.d2u[i] / eps_density[i];
            rlo = std::min(rlo, ratio);
            rhi = std::max(rhi, ratio);
            const double W = std::exp(D.log_weight[i]);
            const double Feps = std::log(eps_density[i] / base.d2u[i]) +
                                nu * std::log(W + eps * eps);
            fsup = std::max(fsup, std::abs(Feps));
        }
        st.ratio_lo = rlo;
        st.ratio_hi = rhi;
        st.F_eps_sup = fsup;
        sol.trace.push_back(std::move(st));
    }
    sol.phi = phi.values(g);
    sol.cone_slope = sol.trace.empty() ? 0.0 : sol.trace.back().cone_slope_est;
    sol.completed = true;
    return sol;
}

Vec test_form_bump(const Grid& g, double center, double width) {
    Vec z(g.n(), 0.0);
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double x = (g.s[i] - center) / width;
        if (std::abs(x) < 1.0) {
            const double q = 1.0 - x * x;
            z[i] = std::exp(1.0 - 1.0 / q);  // C^∞ bump
        }
    }
    return z;
}

Vec test_form_plateau_left(const Grid& g, double edge, double cut) {
    if (!(edge < cut)) throw ConfigError("plateau: edge must lie left of cut");
    Vec z(g.n(), 0.0);
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double s = g.s[i];
        if (s <= edge) {
            z[i] = 1.0;
        } else if (s < cut) {
            const double x = (s - edge) / (cut - edge);  // smoothstep roll-off
            const double q = std::exp(-1.0 / std::max(1e-12, 1.0 - x));
            const double p = std::exp(-1.0 / std::max(1e-12, x));
            z[i] = q / (p + q);
        }
    }
    return z;
}

CurrentCheckReport current_limit_check(const ConicalSolution& sol, const VectorFieldSpec& X,
                                       const std::vector<Vec>& test_forms, double tol) {
    if (!sol.completed) throw NumericalError("current check needs a completed conical trace");
    const RadialPotential u = applied(sol.base, sol.phi);
    const Grid& g = *u.grid;
    const std::size_t n = g.n();
    const int last = static_cast<int>(n) - 1;
    const double gamma = 1.0 - sol.lambda * sol.nu;
    const double alpha_class = 1.0 - sol.nu;

    Vec neglog(n);
    for (std::size_t i = 0; i < n; ++i) neglog[i] = -std::log(u.d2u[i]);
    const double slope_l = -g.ops->deriv_at(neglog, 0, 1);
    const double slope_r = -g.ops->deriv_at(neglog, last, 1);

    CurrentCheckReport rep;
    for (const Vec& zeta : test_forms) {
        const Vec zpp = d2_centered(g, zeta);
        const Vec zp = d1_centered(g, zeta);
        Vec f(n), fr(n), fx(n);
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = neglog[i] * zpp[i];
            fr[i] = u.d2u[i] * zeta[i];
            fx[i] = u.du[i] * zpp[i];
        }
        const double zl = zeta.front(), zr = zeta.back();
        // smooth flux through the poles + cone-tip deltas
        double lhs = 2.0 * kPi * quad(g, f);
        lhs += 2.0 * kPi * zl * (slope_l + (sol.divisor.at_zero ? 1.0 - alpha_class : 0.0));
        lhs += 2.0 * kPi * zr * (-slope_r + (sol.divisor.at_infinity ? 1.0 - alpha_class : 0.0));
        const double rhs_smooth = 2.0 * kPi * (gamma * quad(g, fr) + X.c * quad(g, fx));
        double rhs = rhs_smooth;
        double delta_expected = 0.0;
        if (sol.divisor.at_zero) {
            rhs += 2.0 * kPi * sol.nu * zl;
            delta_expected += 2.0 * kPi * sol.nu * zl;
        }
        if (sol.divisor.at_infinity) {
            rhs += 2.0 * kPi * sol.nu * zr;
            delta_expected += 2.0 * kPi * sol.nu * zr;
        }
        CurrentCheckItem item;
        item.lhs = lhs;
        item.rhs = rhs;
        item.delta_recovered = lhs - rhs_smooth;
        item.delta_expected = delta_expected;
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        item.mismatch_rel = std::abs(lhs - rhs) / scale;
        rep.max_mismatch = std::max(rep.max_mismatch, item.mismatch_rel);
        rep.items.push_back(item);
    }
    rep.pass = rep.max_mismatch <= tol;
    return rep;
}

}  // namespace soliton
