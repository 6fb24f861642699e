#include "solitonlab/oracle.hpp"

#include <array>
#include <cmath>

namespace soliton {

namespace {

// φ₁(x) = expm1(x)/x, positive and strictly increasing.
double phi1(double x) {
    if (std::abs(x) < 1e-5) return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
    return std::expm1(x) / x;
}

double phi1_deriv(double x) {
    if (std::abs(x) < 1e-3)
        return 0.5 + x * (1.0 / 3.0 + x * (0.125 + x / 30.0));
    return (x * std::exp(x) - std::expm1(x)) / (x * x);
}

// divided difference (φ₁(a) - φ₁(b)) / (a - b)
double phi1_dd(double a, double b) {
    if (std::abs(a - b) < 1e-4) return phi1_deriv(0.5 * (a + b));
    return (phi1(a) - phi1(b)) / (a - b);
}

// g(c) = -2/(e^{-2c}-1) - 1/c, increasing from 0 to 2 with g(0) = 1.
double slope_ratio(double c) {
    if (std::abs(c) < 1e-4) {
        const double c2 = c * c;
        return 1.0 + c / 3.0 - c * c2 / 45.0 + 2.0 * c2 * c2 * c / 945.0;
    }
    return -2.0 / std::expm1(-2.0 * c) - 1.0 / c;
}

constexpr std::array<double, 8> kGL8x = {-0.9602898564975363, -0.7966664774136267,
                                         -0.5255324099163290, -0.1834346424956498,
                                         0.1834346424956498,  0.5255324099163290,
                                         0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGL8w = {0.1012285362903763, 0.2223810344533745,
                                         0.3137066458778873, 0.3626837833783620,
                                         0.3626837833783620, 0.3137066458778873,
                                         0.2223810344533745, 0.1012285362903763};

double gl8(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int k = 0; k < 8; ++k) acc += kGL8w[k] * f(mid + half * kGL8x[k]);
    return acc * half;
}

// regular part of 1/v after subtracting the endpoint poles
double regular_inverse(const FootballSoliton& sol, double tau) {
    return 1.0 / sol.v(tau) - 1.0 / (sol.alpha0 * tau) - 1.0 / (sol.alpha_inf * (2.0 - tau));
}

// ∫_a^b of the regular part, with geometric refinement toward the endpoints
double regular_integral(const FootballSoliton& sol, double a, double b) {
    if (a == b) return 0.0;
    if (a > b) return -regular_integral(sol, b, a);
    auto f = [&](double t) { return regular_inverse(sol, t); };
    // split [a,b] so panels shrink geometrically toward 0 and 2
    double acc = 0.0;
    auto panel_chain = [&](double from, double to) {
        // assumes [from, to] stays on one side of 1; refine toward the nearer endpoint
        const bool toward_zero = from < 1.0;
        double hi = toward_zero ? to : from;
        double lo = toward_zero ? from : to;
        // walk from the interior toward the endpoint halving the gap
        double edge = toward_zero ? 0.0 : 2.0;
        double cur = toward_zero ? hi : lo;
        double sign = toward_zero ? 1.0 : -1.0;
        double target = toward_zero ? lo : hi;
        while (std::abs(cur - edge) > 1.5 * std::abs(target - edge)) {
            double next = edge + 0.5 * (cur - edge);
            if (std::abs(next - edge) < std::abs(target - edge)) next = target;
            acc += sign * gl8(f, next, cur);
            cur = next;
        }
        if (cur != target) acc += sign * gl8(f, target, cur);
    };
    if (b <= 1.0) {
        panel_chain(a, b);
    } else if (a >= 1.0) {
        panel_chain(a, b);
    } else {
        panel_chain(a, 1.0);
        panel_chain(1.0, b);
    }
    return acc;
}

}  // namespace

double FootballSoliton::v(double tau) const {
    // v = beta·τ(2-τ)·ψ(-cτ,-2c)/φ₁(-2c), positive on (0,2) for every c
    return beta * tau * (2.0 - tau) * phi1_dd(-c * tau, -2.0 * c) / phi1(-2.0 * c);
}

FootballSoliton solve_football(double c, double alpha0) {
    if (!(alpha0 > 0.0 && alpha0 <= 1.0)) throw ConfigError("solve_football: alpha0 must be in (0,1]");
    if (!std::isfinite(c)) throw ConfigError("solve_football: c must be finite");
    FootballSoliton sol;
    sol.c = c;
    sol.alpha0 = alpha0;
    const double g = slope_ratio(c);
    sol.beta = alpha0 / g;
    sol.alpha_inf = 2.0 * sol.beta - alpha0;
    if (c != 0.0) {
        sol.B = 2.0 * sol.beta / (c * std::expm1(-2.0 * c));
        sol.A = -sol.B;
    }
    if (!(sol.alpha_inf > 0.0)) throw ConfigError("solve_football: nonadmissible parameters");
    return sol;
}

TeardropResult soliton_coefficient(double nu) {
    if (!(nu > 0.0 && nu < 1.0)) throw ConfigError("soliton_coefficient: nu must be in (0,1)");
    const double target = 2.0 * (1.0 - nu) / (2.0 - nu);  // g(c) at the teardrop closure
    double lo = -10.0, hi = 10.0;
    // g is increasing with range (0,2); extend the bracket for extreme angles
    while (slope_ratio(lo) > target && lo > -1e6) lo *= 2.0;
    while (slope_ratio(hi) < target && hi < 1e6) hi *= 2.0;
    if (!(slope_ratio(lo) < target && slope_ratio(hi) > target))
        throw NumericalError("soliton_coefficient: no bracketable root");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (slope_ratio(mid) < target ? lo : hi) = mid;
    }
    TeardropResult out;
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.c = 0.5 * (lo + hi);
    out.soliton = solve_football(out.c, 1.0 - nu);
    return out;
}

double oracle_s_of_tau(const FootballSoliton& sol, double tau) {
    if (!(tau > 0.0 && tau < 2.0)) throw ConfigError("s_of_tau: tau outside (0,2)");
    return std::log(tau) / sol.alpha0 - std::log(2.0 - tau) / sol.alpha_inf +
           regular_integral(sol, 1.0, tau);
}

namespace {

struct RadialMarch {
    Vec tau, increment;  // u' and u - u0 at the nodes
};

RadialMarch march_profile(const FootballSoliton& sol, const Grid& g) {
    // τ(0): root of s(τ) = 0
    double lo = 1e-12, hi = 2.0 - 1e-12;
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        (oracle_s_of_tau(sol, mid) < 0.0 ? lo : hi) = mid;
    }
    const double tau0 = 0.5 * (lo + hi);

    const std::size_t n = g.n();
    RadialMarch out;
    out.tau.resize(n);
    out.increment.resize(n);
    auto clampt = [](double t) { return std::min(std::max(t, 1e-300), 2.0 - 1e-16); };
    auto fs_du = [](double s) { return 2.0 / (1.0 + std::exp(-s)); };
    // march d/ds [τ, v] = [v(τ), τ - u0'(s)]: v = u - u0 stays O(1), so nodal
    // doubles keep full relative accuracy for later differencing
    auto march = [&](double s_from, double s_to, double& t, double& v) {
        const double len = s_to - s_from;
        const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(len) / 0.004)));
        const double h = len / steps;
        double s = s_from;
        for (int k = 0; k < steps; ++k) {
            const double k1t = sol.v(clampt(t)), k1v = t - fs_du(s);
            const double t2 = clampt(t + 0.5 * h * k1t);
            const double k2t = sol.v(t2), k2v = t2 - fs_du(s + 0.5 * h);
            const double t3 = clampt(t + 0.5 * h * k2t);
            const double k3t = sol.v(t3), k3v = t3 - fs_du(s + 0.5 * h);
            const double t4 = clampt(t + h * k3t);
            const double k4t = sol.v(t4), k4v = t4 - fs_du(s + h);
            t = clampt(t + h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t));
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            s += h;
        }
    };

    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(g.s[i]) < std::abs(g.s[i0])) i0 = i;
    double t = tau0, v = 0.0;
    march(0.0, g.s[i0], t, v);
    out.tau[i0] = t;
    out.increment[i0] = v;
    double tl = t, vl = v;
    for (std::size_t i = i0; i-- > 0;) {
        march(g.s[i + 1], g.s[i], tl, vl);
        out.tau[i] = tl;
        out.increment[i] = vl;
    }
    double tr = t, vr = v;
    for (std::size_t i = i0 + 1; i < n; ++i) {
        march(g.s[i - 1], g.s[i], tr, vr);
        out.tau[i] = tr;
        out.increment[i] = vr;
    }
    return out;
}

}  // namespace

RadialPotential to_radial(const FootballSoliton& sol, const GridPtr& grid) {
    const Grid& g = *grid;
    const std::size_t n = g.n();
    const RadialMarch m = march_profile(sol, g);
    RadialPotential p;
    p.grid = grid;
    p.u.resize(n);
    p.du = m.tau;
    p.d2u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = g.s[i];
        const double u0 = 2.0 * (std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s))));
        p.u[i] = u0 + m.increment[i];
        p.d2u[i] = sol.v(std::min(std::max(m.tau[i], 1e-300), 2.0 - 1e-16));
    }
    p.validate();
    return p;
}

Vec to_radial_increment(const FootballSoliton& sol, const GridPtr& grid) {
    return march_profile(sol, *grid).increment;
}

double reference_quadrature(const std::function<double(double tau, double s)>& f,
                            const FootballSoliton& sol, int panels) {
    if (panels < 8) throw ConfigError("reference_quadrature: too few panels");
    // geometric panels toward both endpoints, uniform in the middle
    std::vector<double> cuts;
    const int geo = std::max(8, panels / 4);
    const int mid = std::max(8, panels / 2);
    double edge = 0.25;
    std::vector<double> left_cuts{0.25};
    for (int k = 0; k < geo; ++k) {
        edge *= 0.5;
        left_cuts.push_back(edge);
    }
    for (auto it = left_cuts.rbegin(); it != left_cuts.rend(); ++it) cuts.push_back(*it);
    for (int k = 1; k < mid; ++k) cuts.push_back(0.25 + 1.5 * k / mid);
    double redge = 2.0 - 0.25;
    std::vector<double> right_cuts;
    for (int k = 0; k < geo; ++k) {
        right_cuts.push_back(redge);
        redge = 2.0 - 0.5 * (2.0 - redge);
    }
    right_cuts.push_back(redge);
    for (double x : right_cuts) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());

    // march s along the cut mesh so f sees a consistent s(τ)
    double acc = 0.0;
    double s_at = oracle_s_of_tau(sol, cuts.front());
    double tau_at = cuts.front();
    // leading tail [0, cuts0]: v ≈ alpha0·τ, ds = dτ/v, f smooth → f(0⁺)·mass
    acc += f(0.0, -1e30) * cuts.front();
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1];
        auto ff = [&](double tt) {
            const double ds = std::log(tt / tau_at) / sol.alpha0 -
                              std::log((2.0 - tt) / (2.0 - tau_at)) / sol.alpha_inf +
                              regular_integral(sol, tau_at, tt);
            return f(tt, s_at + ds);
        };
        acc += gl8(ff, a, b);
        s_at += std::log(b / tau_at) / sol.alpha0 - std::log((2.0 - b) / (2.0 - tau_at)) / sol.alpha_inf +
                regular_integral(sol, tau_at, b);
        tau_at = b;
    }
    acc += f(2.0, 1e30) * (2.0 - cuts.back());
    return 2.0 * kPi * acc;
}

}  // namespace soliton
