#pragma once

#include <memory>
#include <span>

#include "solitonlab/banded.hpp"
#include "solitonlab/common.hpp"

namespace soliton {

// Finite-difference differentiation rows on arbitrarily spaced nodes.
// Interior rows use 5-point centered stencils (4th order on uniform grids),
// the outermost two rows on each side use 6-point one-sided stencils.
class DiffOps {
  public:
    explicit DiffOps(const Vec& nodes);

    Vec d1(const Vec& f) const;
    Vec d2(const Vec& f) const;
    // derivative of f - pivot with the subtraction done in extended precision
    Vec d1_about(const Vec& f, double pivot) const;
    Vec d2_about(const Vec& f, double pivot) const;

    // Stencil of row i for derivative `order` (1 or 2): column offsets and weights.
    struct Row {
        int first;                 // first column index
        std::span<const double> w; // stencil weights
    };
    Row row(int i, int order) const;

    double deriv_at(const Vec& f, int i, int order) const;

    int half_bandwidth() const { return max_reach_; }
    int size() const { return n_; }

  private:
    int n_;
    int max_reach_;
    std::vector<int> first_;
    std::vector<int> len_;
    Vec w1_, w2_;  // packed stencil weights
    std::vector<std::size_t> offset_;
};

struct Grid {
    Vec s;        // strictly increasing nodes, symmetric about 0
    Vec w;        // quadrature weights for ∫ ds (trapezoid on the node set)
    double s_max = 0.0;
    bool uniform = true;
    std::shared_ptr<const DiffOps> ops;
    // chart function m = tanh(s/2) and its derivatives, kept in extended
    // precision for the plateau-model subtraction in d1/d2_centered
    std::vector<long double> chart;
    Vec chart_d1, chart_d2;

    std::size_t n() const { return s.size(); }
    double spacing() const { return s[1] - s[0]; }
};

void fill_chart(Grid& g);

using GridPtr = std::shared_ptr<const Grid>;

// Symmetric grid on [-s_max, s_max]; stretch > 0 concentrates nodes near 0
// through a tanh map. Requires n_points >= 64 and s_max >= 8.
GridPtr build_grid(std::size_t n_points, double s_max, double stretch = 0.0);

// ∫ f ds over the grid.
double quad(const Grid& g, const Vec& f);

// Cumulative ∫_{s_0}^{s_i} f ds with F(s_0) = f_left_tail, 4th-order piecewise
// cubic on the node polylines.
Vec cumulative_integral(const Grid& g, const Vec& f, double left_value = 0.0);

}  // namespace soliton
