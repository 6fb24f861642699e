#pragma once

#include <cstddef>
#include <utility>

#include "solitonlab/common.hpp"

namespace soliton {

// General banded matrix in LAPACK band storage (column-major, ldab = 2*kl+ku+1),
// solved with dgbsv (LU with partial pivoting).
class BandedMatrix {
  public:
    BandedMatrix(int n, int kl, int ku);

    int n() const { return n_; }
    int kl() const { return kl_; }
    int ku() const { return ku_; }

    double& at(int i, int j);
    void add(int i, int j, double v) { at(i, j) += v; }
    void zero_row(int i);

    Vec multiply(const Vec& x) const;

    // Solves A x = rhs with row equilibration and iterative refinement.
    Vec solve(const Vec& rhs) const;

  private:
    int n_, kl_, ku_, ldab_;
    Vec ab_;
};

// Smallest `count` eigenpairs of the symmetric tridiagonal matrix with
// diagonal d and off-diagonal e (size n-1).
struct TridiagPairs {
    Vec values;                // ascending
    std::vector<Vec> vectors;  // matching eigenvectors
};
TridiagPairs smallest_eigenpairs(const Vec& d, const Vec& e, int count);

}  // namespace soliton
