#include "solitonlab/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "solitonlab/banded.hpp"

namespace soliton {

SpectralPair lambda1_single_grid(const RadialPotential& u, const VectorFieldSpec& X) {
    u.validate();
    const Grid& g = *u.grid;
    const std::size_t n = g.n();
    const Vec theta = theta_potential(u, X).values;

    // P1 stiffness ∫ v'w' e^θ ds and lumped mass ∫ vw e^θ ω (with ω tails)
    Vec diag(n, 0.0), off(n - 1, 0.0), mass(n, 0.0);
    for (std::size_t e = 0; e + 1 < n; ++e) {
        const double h = g.s[e + 1] - g.s[e];
        const double we = 0.5 * (std::exp(theta[e]) + std::exp(theta[e + 1])) * h;
        diag[e] += we / (h * h);
        diag[e + 1] += we / (h * h);
        off[e] -= we / (h * h);
    }
    for (std::size_t i = 0; i < n; ++i) mass[i] = g.w[i] * std::exp(theta[i]) * u.d2u[i];
    mass.front() += std::exp(theta.front()) * u.du.front();
    mass.back() += std::exp(theta.back()) * (2.0 - u.du.back());

    Vec d(n), e2(n - 1);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] / mass[i];
    for (std::size_t i = 0; i + 1 < n; ++i) e2[i] = off[i] / std::sqrt(mass[i] * mass[i + 1]);
    const TridiagPairs pairs = smallest_eigenpairs(d, e2, 2);

    SpectralPair out;
    out.lambda1 = pairs.values[1];
    out.eigenfunction.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.eigenfunction[i] = pairs.vectors[1][i] / std::sqrt(mass[i]);
    const double mx = sup_norm(out.eigenfunction);
    if (mx > 0.0)
        for (double& x : out.eigenfunction) x /= mx;
    return out;
}

namespace {

// restriction of the potential to every other node (plus the right endpoint)
RadialPotential coarsen(const RadialPotential& u) {
    const Grid& g = *u.grid;
    auto cg = std::make_shared<Grid>();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.n(); i += 2) idx.push_back(i);
    if (idx.back() != g.n() - 1) idx.push_back(g.n() - 1);
    cg->s_max = g.s_max;
    cg->uniform = false;
    for (std::size_t i : idx) cg->s.push_back(g.s[i]);
    cg->w.assign(cg->s.size(), 0.0);
    for (std::size_t i = 0; i + 1 < cg->s.size(); ++i) {
        const double h = cg->s[i + 1] - cg->s[i];
        cg->w[i] += 0.5 * h;
        cg->w[i + 1] += 0.5 * h;
    }
    fill_chart(*cg);
    cg->ops = std::make_shared<DiffOps>(cg->s);
    RadialPotential cu;
    cu.grid = cg;
    for (std::size_t i : idx) {
        cu.u.push_back(u.u[i]);
        cu.du.push_back(u.du[i]);
        cu.d2u.push_back(u.d2u[i]);
    }
    return cu;
}

}  // namespace

SpectralReport spectral_report(const RadialPotential& u, const VectorFieldSpec& X) {
    SpectralReport rep;
    const SpectralPair fine = lambda1_single_grid(u, X);
    const SpectralPair coarse = lambda1_single_grid(coarsen(u), X);
    rep.lambda1_raw = fine.lambda1;
    rep.lambda1 = (4.0 * fine.lambda1 - coarse.lambda1) / 3.0;  // 2nd-order Richardson
    rep.eigenfunction = fine.eigenfunction;

    const Vec theta = theta_potential(u, X).values;
    Vec f(u.grid->n());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = rep.eigenfunction[i] * std::exp(theta[i]);
    rep.measure_orthogonality = std::abs(integrate(f, u)) / kVolume;
    return rep;
}

namespace {

struct MarchGrid {
    int ns, nt;
    Vec T;          // distances, row-major (i_s * nt + j_theta)
    double t_pole_left = 0.0, t_pole_right = 0.0;
};

// Fast marching for (T_s²)/g_ss + (T_θ²)/g_θθ = 1 on the periodic strip plus
// two pole vertices joined to the boundary rings by the meridian tails.
// pole_center: -1 = left pole vertex, +1 = right pole vertex, 0 = grid node
MarchGrid march_distance(const RadialPotential& u, std::size_t center_idx, int ns, int nt,
                         int pole_center = 0) {
    const Grid& g = *u.grid;
    const std::size_t n = g.n();
    const std::size_t stride = std::max<std::size_t>(1, n / ns);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < n; i += stride) rows.push_back(i);
    if (rows.back() != n - 1) rows.push_back(n - 1);
    const int NS = static_cast<int>(rows.size());
    const int NT = nt;
    const double dth = 2.0 * kPi / NT;

    Vec gss(NS), gtt(NS), svals(NS);
    for (int i = 0; i < NS; ++i) {
        gss[i] = 0.5 * u.d2u[rows[i]];
        gtt[i] = 2.0 * u.d2u[rows[i]];
        svals[i] = g.s[rows[i]];
    }
    // through-pole tails ∫√(u''/2) = √(u''(edge)/2)·2/α with the measured angles
    Vec logd(n);
    for (std::size_t i = 0; i < n; ++i) logd[i] = std::log(u.d2u[i]);
    const double aL =
        std::clamp(g.ops->deriv_at(logd, 0, 1), 0.05, 1.5);
    const double aR =
        std::clamp(-g.ops->deriv_at(logd, static_cast<int>(n) - 1, 1), 0.05, 1.5);
    const double tail_l = std::sqrt(gss.front()) * 2.0 / aL;
    const double tail_r = std::sqrt(gss.back()) * 2.0 / aR;

    const double INF = 1e300;
    MarchGrid M{NS, NT, Vec(static_cast<std::size_t>(NS) * NT, INF), INF, INF};
    using QE = std::pair<double, int>;  // (value, flat index); poles are NS*NT and +1
    std::priority_queue<QE, std::vector<QE>, std::greater<>> heap;

    if (pole_center < 0) {
        M.t_pole_left = 0.0;
        heap.push({0.0, NS * NT});
    } else if (pole_center > 0) {
        M.t_pole_right = 0.0;
        heap.push({0.0, NS * NT + 1});
    } else {
        int ci = 0;
        for (int i = 1; i < NS; ++i)
            if (std::abs(svals[i] - g.s[center_idx]) < std::abs(svals[ci] - g.s[center_idx]))
                ci = i;
        M.T[static_cast<std::size_t>(ci) * NT] = 0.0;
        heap.push({0.0, ci * NT});
    }

    auto update = [&](int i, int j) {
        const std::size_t id = static_cast<std::size_t>(i) * NT + j;
        // upwind neighbors along each axis
        double ts = INF;
        double hs_used = 1.0;
        if (i > 0) {
            const double h = svals[i] - svals[i - 1];
            if (M.T[id - NT] < ts) {
                ts = M.T[id - NT];
                hs_used = h;
            }
        }
        if (i + 1 < NS) {
            const double h = svals[i + 1] - svals[i];
            const std::size_t nid = id + NT;
            if (M.T[nid] < ts) {
                ts = M.T[nid];
                hs_used = h;
            }
        }
        double tt = INF;
        const std::size_t jm = static_cast<std::size_t>(i) * NT + (j + NT - 1) % NT;
        const std::size_t jp = static_cast<std::size_t>(i) * NT + (j + 1) % NT;
        tt = std::min(M.T[jm], M.T[jp]);

        // solve (max(0,T-ts)/hs)²·(1/gss) + (max(0,T-tt)/ht)²·(1/gtt) = 1
        const double hs = hs_used;
        const double ht = dth;
        const double a = (ts >= INF) ? 0.0 : 1.0 / (gss[i] * hs * hs);
        const double b = (tt >= INF) ? 0.0 : 1.0 / (gtt[i] * ht * ht);
        double T;
        if (a + b == 0.0) return INF;
        if (a == 0.0) {
            T = tt + std::sqrt(gtt[i]) * ht;
        } else if (b == 0.0) {
            T = ts + std::sqrt(gss[i]) * hs;
        } else {
            // quadratic a(T-ts)² + b(T-tt)² = 1
            const double A = a + b;
            const double B = -2.0 * (a * ts + b * tt);
            const double C = a * ts * ts + b * tt * tt - 1.0;
            const double disc = B * B - 4.0 * A * C;
            if (disc >= 0.0) {
                T = (-B + std::sqrt(disc)) / (2.0 * A);
                if (T < std::max(ts, tt)) T = std::min(ts + std::sqrt(gss[i]) * hs,
                                                       tt + std::sqrt(gtt[i]) * ht);
            } else {
                T = std::min(ts + std::sqrt(gss[i]) * hs, tt + std::sqrt(gtt[i]) * ht);
            }
        }
        return T;
    };

    while (!heap.empty()) {
        auto [val, flat] = heap.top();
        heap.pop();
        if (flat == NS * NT) {  // left pole
            if (val > M.t_pole_left) continue;
            for (int j = 0; j < NT; ++j) {
                const std::size_t id = j;
                const double cand = M.t_pole_left + tail_l;
                if (cand < M.T[id]) {
                    M.T[id] = cand;
                    heap.push({cand, static_cast<int>(id)});
                }
            }
            continue;
        }
        if (flat == NS * NT + 1) {  // right pole
            if (val > M.t_pole_right) continue;
            for (int j = 0; j < NT; ++j) {
                const std::size_t id = static_cast<std::size_t>(NS - 1) * NT + j;
                const double cand = M.t_pole_right + tail_r;
                if (cand < M.T[id]) {
                    M.T[id] = cand;
                    heap.push({cand, static_cast<int>(id)});
                }
            }
            continue;
        }
        const std::size_t id = static_cast<std::size_t>(flat);
        if (val > M.T[id]) continue;
        const int i = flat / NT, j = flat % NT;
        // pole links
        if (i == 0 && M.T[id] + tail_l < M.t_pole_left) {
            M.t_pole_left = M.T[id] + tail_l;
            heap.push({M.t_pole_left, NS * NT});
        }
        if (i == NS - 1 && M.T[id] + tail_r < M.t_pole_right) {
            M.t_pole_right = M.T[id] + tail_r;
            heap.push({M.t_pole_right, NS * NT + 1});
        }
        const int di[4] = {-1, 1, 0, 0};
        const int dj[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
            const int ii = i + di[k];
            const int jj = (j + dj[k] + NT) % NT;
            if (ii < 0 || ii >= NS) continue;
            const std::size_t nid = static_cast<std::size_t>(ii) * NT + jj;
            const double cand = update(ii, jj);
            if (cand < M.T[nid] - 1e-14) {
                M.T[nid] = cand;
                heap.push({cand, static_cast<int>(nid)});
            }
        }
        // diagonal graph relaxations temper the axis-aligned shortest-path bias
        for (int ds = -1; ds <= 1; ds += 2)
            for (int dt = -1; dt <= 1; dt += 2) {
                const int ii = i + ds;
                if (ii < 0 || ii >= NS) continue;
                const int jj = (j + dt + NT) % NT;
                const double hs = std::abs(svals[ii] - svals[i]);
                const double g1 = 0.5 * (gss[i] + gss[ii]);
                const double g2 = 0.5 * (gtt[i] + gtt[ii]);
                const double len = std::sqrt(g1 * hs * hs + g2 * dth * dth);
                const std::size_t nid = static_cast<std::size_t>(ii) * NT + jj;
                if (M.T[id] + len < M.T[nid] - 1e-14) {
                    M.T[nid] = M.T[id] + len;
                    heap.push({M.T[nid], static_cast<int>(nid)});
                }
            }
    }

    // stash row metadata for volume sums
    MarchGrid out = std::move(M);
    out.ns = NS;
    out.nt = NT;
    return out;
}

double weighted_ball_volume(const RadialPotential& u, const Vec& theta, const MarchGrid& M,
                            double r, const std::vector<std::size_t>& rows, double dth) {
    const Grid& g = *u.grid;
    double vol = 0.0;
    for (int i = 0; i < M.ns; ++i) {
        const std::size_t gi = rows[i];
        const double sl = i > 0 ? 0.5 * (g.s[rows[i]] - g.s[rows[i - 1]]) : 0.0;
        const double sr = i + 1 < M.ns ? 0.5 * (g.s[rows[i + 1]] - g.s[rows[i]]) : 0.0;
        const double ws = sl + sr;
        const double cell = u.d2u[gi] * std::exp(theta[gi]) * ws * dth;
        // fractional rim coverage over the local metric cell extent
        const double h_loc =
            0.5 * (std::sqrt(0.5 * u.d2u[gi]) * ws + std::sqrt(2.0 * u.d2u[gi]) * dth);
        for (int j = 0; j < M.nt; ++j) {
            const double T = M.T[static_cast<std::size_t>(i) * M.nt + j];
            const double w = std::clamp(0.5 + (r - T) / std::max(h_loc, 1e-300), 0.0, 1.0);
            vol += w * cell;
        }
    }
    // pole caps
    if (M.t_pole_left < r) vol += 2.0 * kPi * u.du.front() * std::exp(theta.front());
    if (M.t_pole_right < r) vol += 2.0 * kPi * (2.0 - u.du.back()) * std::exp(theta.back());
    return vol;
}

std::vector<std::size_t> subsample_rows(const Grid& g, int ns) {
    const std::size_t n = g.n();
    const std::size_t stride = std::max<std::size_t>(1, n / ns);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < n; i += stride) rows.push_back(i);
    if (rows.back() != n - 1) rows.push_back(n - 1);
    return rows;
}

}  // namespace

double ball_volume(const RadialPotential& u, const VectorFieldSpec& X, double center_s, double r,
                   int n_s, int n_theta) {
    const Grid& g = *u.grid;
    const int pole = center_s < g.s.front() ? -1 : (center_s > g.s.back() ? 1 : 0);
    std::size_t ci = 0;
    for (std::size_t i = 1; i < g.n(); ++i)
        if (std::abs(g.s[i] - center_s) < std::abs(g.s[ci] - center_s)) ci = i;
    const Vec theta = theta_potential(u, X).values;
    const MarchGrid M = march_distance(u, ci, n_s, n_theta, pole);
    const auto rows = subsample_rows(g, n_s);
    return weighted_ball_volume(u, theta, M, r, rows, 2.0 * kPi / n_theta);
}

NonCollapse noncollapse_a(const RadialPotential& u, const VectorFieldSpec& X, int n_s,
                          int n_theta) {
    const Grid& g = *u.grid;
    const Vec theta = theta_potential(u, X).values;
    const auto rows = subsample_rows(g, n_s);
    const double dth = 2.0 * kPi / n_theta;

    NonCollapse best;
    best.a = 1e300;
    // meridian centers incl. near-pole samples; poles are reached through the
    // boundary-ring tails inside the march
    Vec centers;
    for (double frac : {-1.1, -0.75, -0.5, -0.25, -0.1, 0.0, 0.1, 0.25, 0.5, 0.75, 1.1})
        centers.push_back(frac * g.s_max);  // |frac| > 1 marks the pole vertices
    for (double cs : centers) {
        const int pole = cs < g.s.front() ? -1 : (cs > g.s.back() ? 1 : 0);
        std::size_t ci = 0;
        for (std::size_t i = 1; i < g.n(); ++i)
            if (std::abs(g.s[i] - cs) < std::abs(g.s[ci] - cs)) ci = i;
        const MarchGrid M = march_distance(u, ci, n_s, n_theta, pole);
        for (int k = 1; k <= 10; ++k) {
            const double r = 0.1 * k;
            const double vol = weighted_ball_volume(u, theta, M, r, rows, dth);
            const double ratio = vol / (r * r);
            if (ratio < best.a) {
                best.a = ratio;
                best.attained_r = r;
                best.attained_center = cs;
            }
        }
    }
    return best;
}

double smoothing_constant(double beta, double V, double c1, double n, double a, double lambda1) {
    if (!(a > 0.0) || !(lambda1 > 0.0))
        throw ConfigError("smoothing constant needs positive a and lambda1");
    return std::exp(beta) * (1.0 + std::sqrt(2.0 * V * (c1 + n) / (a * lambda1)));
}

AlphaEstimate alpha_lower_bound(const RadialPotential& base, const DivisorModel* divisor,
                                double exponent_weight, int family_size) {
    const Grid& g = *base.grid;
    const std::size_t n = g.n();
    AlphaEstimate est;
    est.family_size = 0;

    // concentrating family: φ = σ·smoothmax(s+R,0) - σR, slopes up to the full degree 2
    std::vector<std::pair<double, Vec>> family;  // (sigma, values)
    const int nR = std::max(5, family_size / 4);
    for (double sigma : {0.5, 1.0, 1.5, 2.0}) {
        for (int kR = 0; kR < nR; ++kR) {
            const double R = 2.0 + (g.s_max - 2.0) * kR / std::max(1, nR - 1);
            Vec phi(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = g.s[i] + R;
                phi[i] = sigma * 0.5 * (x + std::sqrt(x * x + 1.0)) - sigma * R;
            }
            family.emplace_back(sigma, std::move(phi));
            ++est.family_size;
        }
    }

    auto integral = [&](double alpha, const Vec& phi) {
        const double sup = max_of(phi);
        Vec dens(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double lw = 0.0;
            if (divisor) lw = exponent_weight * divisor->log_weight[i];
            dens[i] = 2.0 * kPi * std::exp(-alpha * (phi[i] - sup) - lw) * base.d2u[i];
        }
        return integrate_density(g, dens) / kVolume;
    };

    // divergence probe along the concentration ladder R ↑: below threshold the
    // rung growths decay geometrically (integrals saturate); at and above it
    // they decay polynomially or rise, so classify on the tail growth and its
    // decay ratio together
    double last_ok = 0.0, first_bad = 0.0, worst = 0.0;
    for (int ka = 1; ka <= 40; ++ka) {
        const double alpha = 0.05 * ka;
        bool divergent = false;
        double growth = 0.0;
        for (double sigma : {0.5, 1.0, 1.5, 2.0}) {
            std::vector<double> vals;
            for (const auto& [sg, phi] : family)
                if (sg == sigma) vals.push_back(integral(alpha, phi));
            if (vals.size() < 3) continue;
            const std::size_t m = vals.size();
            const double g_last = vals[m - 1] / vals[m - 2] - 1.0;
            const double g_prev = vals[m - 2] / vals[m - 3] - 1.0;
            growth = std::max(growth, g_last);
            if (g_last > 0.05 && g_last > 0.72 * g_prev) divergent = true;
        }
        if (!divergent) {
            last_ok = alpha;
        } else if (first_bad == 0.0) {
            first_bad = alpha;
            worst = growth;
        }
    }
    est.alpha_low = last_ok;
    est.alpha_high = first_bad;
    est.worst_growth = worst;
    return est;
}

ConeWindow cone_window(double lambda, double C_tilde, double alpha0, double alphaD,
                       bool r_equals_one) {
    ConeWindow w;
    w.lambda = lambda;
    w.C_tilde = C_tilde;
    w.alpha0 = alpha0;
    w.alphaD = alphaD;
    auto bad = [&](bool cond, const char* msg) {
        if (cond) w.reasons.emplace_back(msg);
        return cond;
    };
    if (bad(!(lambda > 0.0 && lambda <= 1.0), "lambda outside (0,1]") ||
        bad(!(C_tilde > 0.0 && C_tilde < 1.0), "C_tilde outside (0,1)") ||
        bad(!(alpha0 > 0.0 && alpha0 <= 1.0), "alpha0 outside (0,1]") ||
        bad(!(alphaD > 0.0), "alphaD not positive"))
        return w;

    const double lo = std::max((1.0 - lambda) / (1.0 - C_tilde), 0.0);
    const double hi = std::min({alpha0 / C_tilde, lambda * alphaD / C_tilde, 1.0});
    w.beta_min = lo;
    w.beta_max = hi;
    w.empty = !(lo < hi);
    if (w.empty) w.reasons.emplace_back("proposition window empty: lower bound meets upper");

    if (r_equals_one) {
        bool ok = true;
        if (!(C_tilde < lambda)) {
            w.reasons.emplace_back("theorem condition C_tilde < lambda fails");
            ok = false;
        }
        const double rhs = std::max(C_tilde * (1.0 - lambda) / (1.0 - C_tilde), 0.0);
        if (!(std::min(alpha0, lambda * alphaD) > rhs)) {
            w.reasons.emplace_back("theorem alpha lower-bound condition fails");
            ok = false;
        }
        if (ok) {
            w.thm_beta_min = std::max((1.0 - lambda) / (1.0 - C_tilde), 0.0);
            w.thm_beta_max = 1.0;
            w.thm_empty = !(w.thm_beta_min < w.thm_beta_max);
        }
    } else {
        w.reasons.emplace_back("R(X) = 1 not asserted; theorem window not evaluated");
    }
    return w;
}

MTFit mt_fit(const EnergyContext& ctx, const std::vector<Vec>& family) {
    if (family.empty()) throw ConfigError("mt_fit: empty family");
    MTFit fit;
    fit.samples = static_cast<int>(family.size());

    std::vector<std::pair<double, double>> jf, jm;
    for (const Vec& phi : family) {
        const auto ay = ctx.aubin_yau(phi);
        const auto [ft, fh] = ctx.ding(phi);
        jf.emplace_back(ay.J_tilde, ft);
        jm.emplace_back(ay.J_tilde, ctx.k_energy(phi));
    }

    auto hull_fit = [](std::vector<std::pair<double, double>> pts, double& C1, double& C2) {
        std::sort(pts.begin(), pts.end());
        if (pts.size() == 1) {
            C1 = 0.0;
            C2 = -pts[0].second;
            return;
        }
        std::vector<std::pair<double, double>> hull;
        for (const auto& p : pts) {
            while (hull.size() >= 2) {
                const auto& a = hull[hull.size() - 2];
                const auto& b = hull[hull.size() - 1];
                if ((b.second - a.second) * (p.first - a.first) >=
                    (p.second - a.second) * (b.first - a.first))
                    hull.pop_back();
                else
                    break;
            }
            hull.push_back(p);
        }
        const auto& a = hull[hull.size() - 2];
        const auto& b = hull[hull.size() - 1];
        C1 = (b.second - a.second) / std::max(b.first - a.first, 1e-12);
        C2 = -(a.second - C1 * a.first);
    };
    hull_fit(jf, fit.C1, fit.C2);
    hull_fit(jm, fit.C1_mu, fit.C2_mu);

    for (const auto& [J, F] : jf)
        if (F < fit.C1 * J - fit.C2 - 1e-9) ++fit.violations;
    return fit;
}

ConvergenceDiagnostics convergence_diagnostics(const ConicalSolution& sol, double beta) {
    ConvergenceDiagnostics d;
    if (sol.trace.empty()) throw NumericalError("diagnostics need a nonempty conical trace");
    const Grid& g = *sol.base.grid;

    for (const auto& st : sol.trace) d.sup_X_max = std::max(d.sup_X_max, st.sup_X);
    d.sup_X_bounded = std::isfinite(d.sup_X_max);

    for (const auto& st : sol.trace) d.diameters.push_back(st.diameter);
    for (std::size_t k = 1; k < d.diameters.size(); ++k)
        d.diameter_gaps.push_back(std::abs(d.diameters[k] - d.diameters[k - 1]));
    for (std::size_t k = 2; k + 1 < d.diameter_gaps.size(); ++k)
        if (d.diameter_gaps[k + 1] > d.diameter_gaps[k] * 1.2 + 1e-10)
            d.diameters_cauchy = false;

    const RadialPotential limit = applied(sol.base, sol.phi);
    for (const auto& st : sol.trace) {
        const RadialPotential u = applied(sol.base, st.phi);
        double gap = 0.0;
        for (std::size_t i = 0; i < g.n(); ++i)
            if (std::abs(g.s[i]) <= 0.5 * g.s_max)
                gap = std::max(gap, std::abs(u.d2u[i] - limit.d2u[i]));
        d.density_gaps.push_back(gap);
    }
    for (std::size_t k = 2; k + 2 < d.density_gaps.size(); ++k)
        if (d.density_gaps[k + 1] > d.density_gaps[k] * 1.2 + 1e-12)
            d.density_gaps_trending = false;

    d.diam_sqrt_beta = d.diameters.back() * std::sqrt(beta);
    return d;
}

}  // namespace soliton
