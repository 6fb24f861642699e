#include "solitonlab/ma_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "solitonlab/banded.hpp"
#include "solitonlab/spectral.hpp"

namespace soliton {

namespace {

// effective boundary slopes of log u'' read off the equation's right-hand side
std::pair<double, double> equation_slopes(const RadialPotential& base, const Vec& H) {
    const Grid& g = *base.grid;
    const int last = static_cast<int>(g.n()) - 1;
    Vec logd(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) logd[i] = std::log(base.d2u[i]);
    const double aL = g.ops->deriv_at(logd, 0, 1) + g.ops->deriv_at(H, 0, 1);
    const double aR = -(g.ops->deriv_at(logd, last, 1) + g.ops->deriv_at(H, last, 1));
    return {aL, aR};
}

}  // namespace

ContinuityProblem ContinuityProblem::twisted(const RadialPotential& base, const TwistSpec& twist,
                                             const VectorFieldSpec& X) {
    ContinuityProblem pr;
    pr.base = base;
    pr.H = twist.ricci_potential(base);
    pr.theta0 = theta_potential(base, X).values;
    pr.beta_eff = twist.beta;
    pr.c = X.c;
    auto [aL, aR] = equation_slopes(base, pr.H);
    pr.alpha_left = aL;
    pr.alpha_right = aR;
    return pr;
}

ContinuityProblem ContinuityProblem::conical(const RadialPotential& base,
                                             const TwistSpec& reg_twist,
                                             const VectorFieldSpec& X) {
    if (reg_twist.kind != TwistKind::regularized)
        throw ConfigError("conical continuity problem needs a regularized twist");
    ContinuityProblem pr;
    pr.base = base;
    const std::size_t n = base.grid->n();
    const double gamma = reg_twist.beta;
    const double lnu = reg_twist.lambda() * reg_twist.nu;
    TwistFlux flux;
    flux.cumulative.resize(n);
    for (std::size_t i = 0; i < n; ++i) flux.cumulative[i] = lnu * base.du[i];
    flux.total = 2.0 * lnu;
    const Vec h0c = ricci_potential_density(base, gamma, flux);
    const double e2 = reg_twist.epsilon * reg_twist.epsilon;
    pr.H.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double W = std::exp(reg_twist.divisor.log_weight[i]);
        pr.H[i] = h0c[i] - reg_twist.nu * std::log(W + e2);
    }
    pr.theta0 = theta_potential(base, X).values;
    pr.beta_eff = gamma;
    pr.c = X.c;
    auto [aL, aR] = equation_slopes(base, pr.H);
    pr.alpha_left = aL;
    pr.alpha_right = aR;
    return pr;
}

SplitPotential SplitPotential::from_values(const Grid& g, const Vec& phi) {
    SplitPotential sp;
    const long double m0 = g.chart.front(), m1 = g.chart.back();
    const long double B = (static_cast<long double>(phi.back()) - phi.front()) / (m1 - m0);
    const long double A = static_cast<long double>(phi.front()) - B * m0;
    sp.A = static_cast<double>(A);
    sp.B = static_cast<double>(B);
    sp.psi.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        sp.psi[i] = static_cast<double>(static_cast<long double>(phi[i]) - A - B * g.chart[i]);
    return sp;
}

SplitPotential SplitPotential::zero(const Grid& g) {
    SplitPotential sp;
    sp.psi.assign(g.n(), 0.0);
    return sp;
}

Vec SplitPotential::values(const Grid& g) const {
    Vec out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        out[i] = static_cast<double>(static_cast<long double>(A) +
                                     static_cast<long double>(B) * g.chart[i] + psi[i]);
    return out;
}

Vec SplitPotential::d1(const Grid& g) const {
    Vec out = g.ops->d1(psi);
    for (std::size_t i = 0; i < g.n(); ++i) out[i] += B * g.chart_d1[i];
    return out;
}

Vec SplitPotential::d2(const Grid& g) const {
    Vec out = g.ops->d2(psi);
    for (std::size_t i = 0; i < g.n(); ++i) out[i] += B * g.chart_d2[i];
    return out;
}

namespace {

Vec residual_impl(const ContinuityProblem& pr, const Vec& values, const Vec& dphi,
                  const Vec& d2phi, double t) {
    const std::size_t n = pr.base.grid->n();
    Vec r(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d2 = pr.base.d2u[i] + d2phi[i];
        if (d2 <= 0.0)
            throw PositivityError("residual: density nonpositive at node " + std::to_string(i));
        r[i] = std::log(d2 / pr.base.d2u[i]) - pr.H[i] + t * pr.beta_eff * values[i] +
               pr.theta0[i] + pr.c * dphi[i];
    }
    return r;
}

}  // namespace

Vec residual(const ContinuityProblem& pr, const Vec& phi, double t) {
    const Grid& g = *pr.base.grid;
    return residual_impl(pr, phi, d1_centered(g, phi), d2_centered(g, phi), t);
}

Vec residual(const ContinuityProblem& pr, const SplitPotential& phi, double t) {
    const Grid& g = *pr.base.grid;
    return residual_impl(pr, phi.values(g), phi.d1(g), phi.d2(g), t);
}

Vec apply_linearized(const ContinuityProblem& pr, const Vec& phi, double t, const Vec& psi) {
    const Grid& g = *pr.base.grid;
    const std::size_t n = g.n();
    const Vec d2phi = d2_centered(g, phi);
    const Vec dpsi = d1_centered(g, psi);
    const Vec d2psi = d2_centered(g, psi);
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d2 = pr.base.d2u[i] + d2phi[i];
        out[i] = d2psi[i] / d2 + t * pr.beta_eff * psi[i] + pr.c * dpsi[i];
    }
    return out;
}

double volume_gauge_shift(const ContinuityProblem& pr, const Vec& phi, double t) {
    const double tb = t * pr.beta_eff;
    if (tb < 1e-8) return 0.0;
    const Grid& g = *pr.base.grid;
    Vec dens(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        dens[i] = 2.0 * kPi * std::exp(pr.H[i] - tb * phi[i]) * pr.base.d2u[i];
    const double mass = integrate_density(g, dens);
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw NumericalError("volume gauge: normalization integral not finite");
    return std::log(mass / kVolume) / tb;
}

namespace {

struct AssembledSystem {
    BandedMatrix J;
    Vec rhs;         // -[system residual]
    double sys_sup;  // sup |system residual| (Robin rows in scaled units)
    double pde_sup;  // sup |PDE residual| over interior nodes
};

AssembledSystem assemble(const ContinuityProblem& pr, const SplitPotential& phi, double t,
                         bool robin_on_increment, double diag_shift = 0.0) {
    const Grid& g = *pr.base.grid;
    const int n = static_cast<int>(g.n());
    const int bw = g.ops->half_bandwidth();
    AssembledSystem sys{BandedMatrix(n, bw, bw), Vec(n, 0.0), 0.0, 0.0};

    const Vec vals = phi.values(g);
    const Vec dphi = phi.d1(g);
    const Vec d2phi = phi.d2(g);
    const Vec r = residual_impl(pr, vals, dphi, d2phi, t);

    for (int i = 1; i + 1 < n; ++i) {
        const double d2 = pr.base.d2u[i] + d2phi[i];
        const auto r2 = g.ops->row(i, 2);
        for (std::size_t k = 0; k < r2.w.size(); ++k)
            sys.J.add(i, r2.first + static_cast<int>(k), r2.w[k] / d2);
        const auto r1 = g.ops->row(i, 1);
        for (std::size_t k = 0; k < r1.w.size(); ++k)
            sys.J.add(i, r1.first + static_cast<int>(k), pr.c * r1.w[k]);
        sys.J.add(i, i, t * pr.beta_eff + diag_shift);
        sys.rhs[i] = -r[i];
        sys.pde_sup = std::max(sys.pde_sup, std::abs(r[i]));
    }

    // Robin closure rows: (D2 ∓ α·D1)φ matched to the class asymptotics
    for (int edge = 0; edge < 2; ++edge) {
        const int i = edge == 0 ? 0 : n - 1;
        const double alpha = edge == 0 ? pr.alpha_left : pr.alpha_right;
        const double sgn = edge == 0 ? 1.0 : -1.0;  // right edge: u'' = α(2-u')
        const auto r2 = g.ops->row(i, 2);
        const auto r1 = g.ops->row(i, 1);
        double mx = 0.0;
        for (std::size_t k = 0; k < r2.w.size(); ++k)
            mx = std::max(mx, std::abs(r2.w[k] - sgn * alpha * r1.w[k]));
        for (std::size_t k = 0; k < r2.w.size(); ++k)
            sys.J.add(i, r2.first + static_cast<int>(k), (r2.w[k] - sgn * alpha * r1.w[k]) / mx);
        const double du_i = pr.base.du[i] + dphi[i];
        const double d2u_i = pr.base.d2u[i] + d2phi[i];
        double defect = edge == 0 ? (d2u_i - alpha * du_i) : (d2u_i - alpha * (2.0 - du_i));
        if (robin_on_increment) {
            defect -= edge == 0 ? (pr.base.d2u[i] - alpha * pr.base.du[i])
                                : (pr.base.d2u[i] - alpha * (2.0 - pr.base.du[i]));
        }
        sys.rhs[i] = -defect / mx;
        sys.sys_sup = std::max(sys.sys_sup, std::abs(defect) / mx);
    }
    sys.sys_sup = std::max(sys.sys_sup, sys.pde_sup);
    return sys;
}

}  // namespace

NewtonResult newton_solve(const ContinuityProblem& pr, const SplitPotential& phi0, double t,
                          const NewtonSettings& settings) {
    const Grid& g = *pr.base.grid;
    const std::size_t n = g.n();
    if (phi0.psi.size() != n) throw ConfigError("newton_solve: initial guess size mismatch");
    // cone problems keep the Robin condition on u itself; smooth classes are
    // matched against the base profile (exact at the round solution)
    const bool increment_form = std::abs(pr.alpha_left - 1.0) < 0.2;

    NewtonResult res;
    res.split = phi0;
    const bool pin_constant = t * pr.beta_eff < 1e-8;

    auto add_step = [&](const SplitPotential& sp, const Vec& step, double lam) {
        // peel the plateau part off the update so ψ stays edge-small
        SplitPotential out = sp;
        const long double m0 = g.chart.front(), m1 = g.chart.back();
        const long double dB = (static_cast<long double>(step.back()) - step.front()) / (m1 - m0);
        const long double dA = static_cast<long double>(step.front()) - dB * m0;
        out.A += lam * static_cast<double>(dA);
        out.B += lam * static_cast<double>(dB);
        for (std::size_t i = 0; i < n; ++i)
            out.psi[i] += lam * static_cast<double>(static_cast<long double>(step[i]) - dA -
                                                    dB * g.chart[i]);
        return out;
    };

    // the volume gauge seeds the additive constant once; at t > 0 the equation
    // itself pins it, and re-gauging each iteration would fight Newton at the
    // quadrature accuracy of the normalization integral
    if (!pin_constant) res.split.A += volume_gauge_shift(pr, res.split.values(g), t);
    for (int iter = 0; iter < settings.max_iters; ++iter) {
        AssembledSystem sys = assemble(pr, res.split, t, increment_form);
        res.residual_history.push_back(sys.pde_sup);
        res.iterations = iter;
        if (settings.verbose)
            std::fprintf(stderr, "[newton] it=%d pde=%.3e sys=%.3e robinL=%.3e robinR=%.3e\n",
                         iter, sys.pde_sup, sys.sys_sup, sys.rhs.front(), sys.rhs.back());
        if (sys.sys_sup < settings.residual_tol) {
            res.converged = true;
            res.residual_sup = sys.pde_sup;
            res.phi = res.split.values(g);
            return res;
        }
        Vec step;
        if (pin_constant) {
            // shift the constant kernel at t = 0 and project the mean out after
            AssembledSystem reg = assemble(pr, res.split, t, increment_form, 1e-4);
            step = reg.J.solve(reg.rhs);
            double wm = 0.0, ws = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                wm += g.w[i] * step[i];
                ws += g.w[i];
            }
            shift(step, -wm / ws);
        } else {
            step = sys.J.solve(sys.rhs);
        }
        if (!all_finite(step))
            throw NumericalError("newton step not finite (eigenvalue crossing?)");
        const double step_sup = sup_norm(step);
        if (step_sup > settings.step_cap)
            for (double& x : step) x *= settings.step_cap / step_sup;

        double lam = settings.damping;
        bool accepted = false;
        for (int half = 0; half < 24; ++half, lam *= 0.5) {
            SplitPotential trial = add_step(res.split, step, lam);
            const Vec d2t = trial.d2(g);
            bool positive = true;
            for (std::size_t i = 0; i < n; ++i)
                if (pr.base.d2u[i] + d2t[i] <= settings.positivity_floor) {
                    positive = false;
                    break;
                }
            if (!positive) continue;
            AssembledSystem nsys = assemble(pr, trial, t, increment_form);
            if (settings.verbose && half < 3)
                std::fprintf(stderr, "[newton]   lam=%.3f -> sys=%.3e\n", lam, nsys.sys_sup);
            if (nsys.sys_sup <= (1.0 - 1e-4 * lam) * sys.sys_sup ||
                nsys.sys_sup < settings.residual_tol) {
                res.split = std::move(trial);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            res.converged = false;
            res.residual_sup = sys.pde_sup;
            res.phi = res.split.values(g);
            return res;
        }
    }
    AssembledSystem fin = assemble(pr, res.split, t, increment_form);
    res.residual_history.push_back(fin.pde_sup);
    res.converged = fin.sys_sup < settings.residual_tol;
    res.residual_sup = fin.pde_sup;
    res.iterations = settings.max_iters;
    res.phi = res.split.values(g);
    return res;
}

NewtonResult newton_solve(const ContinuityProblem& pr, const Vec& phi0, double t,
                          const NewtonSettings& settings) {
    return newton_solve(pr, SplitPotential::from_values(*pr.base.grid, phi0), t, settings);
}

Vec default_schedule(int steps, double t0) {
    if (steps < 2 || !(t0 > 0.0 && t0 < 1.0)) throw ConfigError("bad schedule parameters");
    Vec ts(steps);
    const double ratio = std::pow(1.0 / t0, 1.0 / (steps - 1));
    double t = t0;
    for (int k = 0; k < steps; ++k) {
        ts[k] = std::min(t, 1.0);
        t *= ratio;
    }
    ts.back() = 1.0;
    return ts;
}

ContinuityTrace continuity_path(const RadialPotential& base, const TwistSpec& twist,
                                const VectorFieldSpec& X, const Vec& schedule,
                                const NewtonSettings& settings, bool record_energies) {
    ContinuityTrace trace;
    trace.schedule = schedule;
    const ContinuityProblem pr = twist.kind == TwistKind::regularized
                                     ? ContinuityProblem::conical(base, twist, X)
                                     : ContinuityProblem::twisted(base, twist, X);
    SplitPotential phi = SplitPotential::zero(*base.grid);
    double t_solved = 0.0;

    auto record = [&](double t, const Vec& p, double rsup) {
        TraceStep st;
        st.t = t;
        st.phi = p;
        st.residual_sup = rsup;
        if (record_energies) {
            const RadialPotential u = applied(base, p);
            EnergyContext ctx(base, twist, X);
            st.energies = ctx.report(p);
            st.lambda1 = lambda1_single_grid(u, X).lambda1;
        }
        st.osc_phi = oscillation(p);
        const Vec dphi = d1_centered(*base.grid, p);
        st.x_phi_sup = X.c == 0.0 ? 0.0 : sup_norm(dphi) * std::abs(X.c);
        trace.steps.push_back(std::move(st));
    };

    for (double target : schedule) {
        while (t_solved < target) {
            double t_try = target;
            while (true) {
                NewtonResult nr = newton_solve(pr, phi, t_try, settings);
                if (nr.converged && oscillation(nr.phi) < 1e3) {
                    phi = std::move(nr.split);
                    t_solved = t_try;
                    if (t_try == target) record(t_try, nr.phi, nr.residual_sup);
                    break;
                }
                t_try = 0.5 * (t_solved + t_try);
                if (t_try - t_solved < 1e-4) {
                    trace.completed = false;
                    trace.diverged_at = t_try;
                    return trace;
                }
            }
        }
    }
    trace.completed = true;
    return trace;
}

FlowResult flow_smooth(const RadialPotential& omega_init, double beta, const TwistSpec& twist,
                       const VectorFieldSpec& X, double horizon, double dt) {
    if (std::abs(twist.beta - beta) > 1e-12)
        throw ConfigError("flow_smooth: twist beta must match the flow constant");
    ContinuityProblem pr = ContinuityProblem::twisted(omega_init, twist, X);
    const Grid& g = *omega_init.grid;
    const std::size_t n = g.n();
    const int bw = g.ops->half_bandwidth();

    FlowResult out;
    Vec drive(n);
    for (std::size_t i = 0; i < n; ++i) drive[i] = pr.H[i] - pr.theta0[i];
    out.drive = sup_norm(drive);
    out.bound = std::exp(beta) / beta * out.drive;

    Vec phi(n, 0.0);
    double time = 0.0;
    double step = dt;
    while (time < horizon - 1e-14) {
        step = std::min(step, horizon - time);
        const Vec r = residual(pr, phi, 1.0);
        const Vec dphi = d1_centered(g, phi);
        const Vec d2phi = d2_centered(g, phi);
        BandedMatrix M(static_cast<int>(n), bw, bw);
        Vec rhs(n, 0.0);
        for (int i = 1; i + 1 < static_cast<int>(n); ++i) {
            const double d2 = omega_init.d2u[i] + d2phi[i];
            M.at(i, i) = 1.0 - step * beta;
            const auto r2 = g.ops->row(i, 2);
            for (std::size_t k = 0; k < r2.w.size(); ++k)
                M.add(i, r2.first + static_cast<int>(k), -step * r2.w[k] / d2);
            const auto r1 = g.ops->row(i, 1);
            for (std::size_t k = 0; k < r1.w.size(); ++k)
                M.add(i, r1.first + static_cast<int>(k), -step * pr.c * r1.w[k]);
            rhs[i] = step * r[i];
        }
        for (int edge = 0; edge < 2; ++edge) {
            const int i = edge == 0 ? 0 : static_cast<int>(n) - 1;
            const double alpha = edge == 0 ? pr.alpha_left : pr.alpha_right;
            const double sgn = edge == 0 ? 1.0 : -1.0;
            const auto r2 = g.ops->row(i, 2);
            const auto r1 = g.ops->row(i, 1);
            double mx = 0.0;
            for (std::size_t k = 0; k < r2.w.size(); ++k)
                mx = std::max(mx, std::abs(r2.w[k] - sgn * alpha * r1.w[k]));
            for (std::size_t k = 0; k < r2.w.size(); ++k)
                M.add(i, r2.first + static_cast<int>(k), (r2.w[k] - sgn * alpha * r1.w[k]) / mx);
            const double du_i = omega_init.du[i] + dphi[i];
            const double d2u_i = omega_init.d2u[i] + d2phi[i];
            double defect = edge == 0 ? (d2u_i - alpha * du_i) : (d2u_i - alpha * (2.0 - du_i));
            defect -= edge == 0 ? (omega_init.d2u[i] - alpha * omega_init.du[i])
                                : (omega_init.d2u[i] - alpha * (2.0 - omega_init.du[i]));
            rhs[i] = -defect / mx;
        }
        Vec delta = M.solve(rhs);
        if (!all_finite(delta)) throw NumericalError("flow step not finite");
        if (sup_norm(delta) > 0.25 * (1.0 + oscillation(phi))) {
            step *= 0.5;  // overshoot: halve and retry
            if (step < 1e-8) throw NumericalError("flow time step collapsed");
            continue;
        }
        phi += delta;
        time += step;
        ++out.steps_taken;
        if (sup_norm(phi) > 1e3) throw NumericalError("flow instability: potential blow-up");
        step = std::min(dt, step * 2.0);
    }

    out.u1 = phi;
    out.sup_u1 = sup_norm(phi);

    // Hölder seminorm of h_{ω1} - θ(ω1) in the ω1 meridian distance
    const RadialPotential u1 = applied(omega_init, phi);
    const Vec h1 = twist.ricci_potential(u1);
    const Vec th1 = theta_potential(u1, X).values;
    const MeridianMetrics m = meridian_metrics(u1, pr.alpha_left, pr.alpha_right, false);
    double semi = 0.0;
    const std::size_t stride = std::max<std::size_t>(1, n / 512);
    for (std::size_t i = 0; i < n; i += stride)
        for (std::size_t j = i + stride; j < n; j += stride) {
            const double d = m.distance(g.s[i], g.s[j]);
            if (d < 1e-9) continue;
            const double df = std::abs((h1[i] - th1[i]) - (h1[j] - th1[j]));
            semi = std::max(semi, df / std::sqrt(d));
        }
    out.holder_seminorm = semi;
    return out;
}

RInvariantResult r_invariant(const RadialPotential& base, const VectorFieldSpec& X,
                             const NewtonSettings& settings, double beta_tol) {
    if (beta_tol < 1e-3) throw ConfigError("r_invariant: beta_tol must be at least 1e-3");
    RInvariantResult out;
    auto solvable = [&](double beta) {
        const TwistSpec twist = TwistSpec::smooth(beta, base);
        const ContinuityTrace tr =
            continuity_path(base, twist, X, default_schedule(), settings, false);
        out.trials.emplace_back(beta, tr.completed);
        return tr.completed;
    };
    if (solvable(1.0)) {
        out.estimate = 1.0;
        out.bracket_lo = 1.0 - beta_tol;
        out.bracket_hi = 1.0;
        return out;
    }
    double hi = 1.0;  // unsolvable end
    double probe = 0.5;
    while (probe > 1e-3 && !solvable(probe)) {
        hi = probe;
        probe *= 0.5;
    }
    if (probe <= 1e-3) {
        out.estimate = probe;
        out.bracket_lo = 0.0;
        out.bracket_hi = hi;
        return out;
    }
    double lo = probe;
    while (hi - lo > beta_tol) {
        const double mid = 0.5 * (lo + hi);
        (solvable(mid) ? lo : hi) = mid;
    }
    out.estimate = 0.5 * (lo + hi);
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    return out;
}

}  // namespace soliton
