#include "solitonlab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace soliton {

namespace {

// Fornberg weights for derivatives 0..m at x0 on nodes a; c is (a.size() x (m+1)) row-major.
void fornberg_weights(double x0, std::span<const double> a, int m, double* c) {
    const int n = static_cast<int>(a.size());
    const int cols = m + 1;
    std::fill(c, c + static_cast<std::size_t>(n) * cols, 0.0);
    double c1 = 1.0;
    double c4 = a[0] - x0;
    c[0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = a[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = a[i] - a[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i * cols + k] = c1 * (k * c[(i - 1) * cols + k - 1] - c5 * c[(i - 1) * cols + k]) / c2;
                c[i * cols + 0] = -c1 * c5 * c[(i - 1) * cols + 0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j * cols + k] = (c4 * c[j * cols + k] - k * c[j * cols + k - 1]) / c3;
            c[j * cols + 0] = c4 * c[j * cols + 0] / c3;
        }
        c1 = c2;
    }
}

}  // namespace

DiffOps::DiffOps(const Vec& nodes) : n_(static_cast<int>(nodes.size())) {
    if (n_ < 8) throw ConfigError("DiffOps needs at least 8 nodes");
    first_.resize(n_);
    len_.resize(n_);
    offset_.resize(n_);
    std::size_t total = 0;
    max_reach_ = 0;
    for (int i = 0; i < n_; ++i) {
        int len = 5;
        int first = i - 2;
        if (i < 2 || i > n_ - 3) {
            len = 6;  // one-sided rows keep 4th order for d2
            first = (i < 2) ? 0 : n_ - 6;
        }
        first_[i] = first;
        len_[i] = len;
        offset_[i] = total;
        total += len;
        max_reach_ = std::max({max_reach_, i - first, first + len - 1 - i});
    }
    w1_.resize(total);
    w2_.resize(total);
    std::vector<double> c;
    for (int i = 0; i < n_; ++i) {
        const int len = len_[i];
        c.resize(static_cast<std::size_t>(len) * 3);
        fornberg_weights(nodes[i], std::span<const double>(nodes.data() + first_[i], len), 2, c.data());
        for (int k = 0; k < len; ++k) {
            w1_[offset_[i] + k] = c[k * 3 + 1];
            w2_[offset_[i] + k] = c[k * 3 + 2];
        }
    }
}

namespace {

// extended-precision accumulation: stencil cancellation must stay far below
// the exponentially small metric densities at the domain edges; the pivot is
// subtracted inside the loop so no intermediate rounding is introduced
inline Vec apply_rows(int n, const std::vector<int>& first, const std::vector<int>& len,
                      const std::vector<std::size_t>& offset, const Vec& w, const Vec& f,
                      double pivot) {
    Vec out(static_cast<std::size_t>(n));
    const long double p = pivot;
    for (int i = 0; i < n; ++i) {
        long double acc = 0.0L;
        const double* wv = w.data() + offset[i];
        const double* fv = f.data() + first[i];
        for (int k = 0; k < len[i]; ++k)
            acc += static_cast<long double>(wv[k]) * (static_cast<long double>(fv[k]) - p);
        out[i] = static_cast<double>(acc);
    }
    return out;
}

}  // namespace

Vec DiffOps::d1(const Vec& f) const { return apply_rows(n_, first_, len_, offset_, w1_, f, 0.0); }

Vec DiffOps::d2(const Vec& f) const { return apply_rows(n_, first_, len_, offset_, w2_, f, 0.0); }

Vec DiffOps::d1_about(const Vec& f, double pivot) const {
    return apply_rows(n_, first_, len_, offset_, w1_, f, pivot);
}

Vec DiffOps::d2_about(const Vec& f, double pivot) const {
    return apply_rows(n_, first_, len_, offset_, w2_, f, pivot);
}

DiffOps::Row DiffOps::row(int i, int order) const {
    const Vec& w = (order == 1) ? w1_ : w2_;
    return Row{first_[i], std::span<const double>(w.data() + offset_[i], static_cast<std::size_t>(len_[i]))};
}

double DiffOps::deriv_at(const Vec& f, int i, int order) const {
    const Row r = row(i, order);
    long double acc = 0.0L;
    for (std::size_t k = 0; k < r.w.size(); ++k)
        acc += static_cast<long double>(r.w[k]) * f[r.first + k];
    return static_cast<double>(acc);
}

GridPtr build_grid(std::size_t n_points, double s_max, double stretch) {
    if (n_points < 64) throw ConfigError("grid needs at least 64 nodes");
    if (s_max < 8.0) throw ConfigError("s_max below 8 corrupts boundary asymptotics");
    if (stretch < 0.0) throw ConfigError("stretch must be nonnegative");
    auto g = std::make_shared<Grid>();
    g->s_max = s_max;
    g->s.resize(n_points);
    const std::size_t n = n_points;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        double m = xi;
        if (stretch > 0.0) m = std::tanh(stretch * xi) / std::tanh(stretch);
        g->s[i] = s_max * m;
    }
    // enforce exact symmetry against rounding
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double v = 0.5 * (g->s[n - 1 - i] - g->s[i]);
        g->s[i] = -v;
        g->s[n - 1 - i] = v;
    }
    if (n % 2 == 1) g->s[n / 2] = 0.0;

    g->w.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = g->s[i + 1] - g->s[i];
        if (h <= 0.0) throw ConfigError("grid nodes not strictly increasing");
        g->w[i] += 0.5 * h;
        g->w[i + 1] += 0.5 * h;
    }
    fill_chart(*g);
    const double h0 = g->s[1] - g->s[0];
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (std::abs((g->s[i + 1] - g->s[i]) - h0) > 1e-12 * h0) {
            g->uniform = false;
            break;
        }
    g->ops = std::make_shared<DiffOps>(g->s);
    return g;
}

void fill_chart(Grid& g) {
    const std::size_t n = g.n();
    g.chart.resize(n);
    g.chart_d1.resize(n);
    g.chart_d2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long double m = tanhl(0.5L * static_cast<long double>(g.s[i]));
        g.chart[i] = m;
        const long double mp = 0.5L * (1.0L - m * m);
        g.chart_d1[i] = static_cast<double>(mp);
        g.chart_d2[i] = static_cast<double>(-m * mp);
    }
}

double quad(const Grid& g, const Vec& f) {
    if (f.size() != g.n()) throw NumericalError("quad: size mismatch");
    long double acc = 0.0L;
    for (std::size_t i = 0; i < f.size(); ++i) acc += static_cast<long double>(g.w[i]) * f[i];
    return static_cast<double>(acc);
}

Vec cumulative_integral(const Grid& g, const Vec& f, double left_value) {
    const std::size_t n = g.n();
    if (f.size() != n) throw NumericalError("cumulative_integral: size mismatch");
    Vec out(n);
    out[0] = left_value;
    std::vector<double> c(4 * 3);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // integrate the cubic through 4 nodes bracketing [s_i, s_{i+1}]
        const std::size_t j0 = (i == 0) ? 0 : std::min(i - 1, n - 4);
        const double a = g.s[i], b = g.s[i + 1];
        // exact integrals of Lagrange basis via 2-point Gauss on the cubic? Use
        // 2-node Gauss-Legendre: exact for cubics.
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        const double x1 = mid - half / std::sqrt(3.0), x2 = mid + half / std::sqrt(3.0);
        double val = 0.0;
        for (double x : {x1, x2}) {
            // Lagrange interpolation of f at x from nodes j0..j0+3
            double p = 0.0;
            for (int k = 0; k < 4; ++k) {
                double lk = 1.0;
                for (int l = 0; l < 4; ++l) {
                    if (l == k) continue;
                    lk *= (x - g.s[j0 + l]) / (g.s[j0 + k] - g.s[j0 + l]);
                }
                p += lk * f[j0 + k];
            }
            val += half * p;
        }
        out[i + 1] = out[i] + val;
    }
    return out;
}

}  // namespace soliton
