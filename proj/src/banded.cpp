#include "solitonlab/banded.hpp"

#include <lapacke.h>

#include <algorithm>

namespace soliton {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(static_cast<std::size_t>(ldab_) * n, 0.0) {}

double& BandedMatrix::at(int i, int j) {
    if (i < 0 || i >= n_ || j < 0 || j >= n_ || i - j > kl_ || j - i > ku_)
        throw NumericalError("banded access outside band");
    return ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)];
}

void BandedMatrix::zero_row(int i) {
    const int jlo = std::max(0, i - kl_);
    const int jhi = std::min(n_ - 1, i + ku_);
    for (int j = jlo; j <= jhi; ++j) at(i, j) = 0.0;
}

Vec BandedMatrix::multiply(const Vec& x) const {
    Vec y(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        const int ilo = std::max(0, j - ku_), ihi = std::min(n_ - 1, j + kl_);
        for (int i = ilo; i <= ihi; ++i)
            y[i] += ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] * x[j];
    }
    return y;
}

Vec BandedMatrix::solve(const Vec& rhs) const {
    if (static_cast<int>(rhs.size()) != n_) throw NumericalError("banded solve: size mismatch");
    // equilibrate rows: the 1/u'' scaling of edge rows otherwise drives the
    // condition number past what one LU pass can deliver
    Vec scale(n_, 1.0);
    for (int i = 0; i < n_; ++i) {
        double mx = 0.0;
        const int jlo = std::max(0, i - kl_), jhi = std::min(n_ - 1, i + ku_);
        for (int j = jlo; j <= jhi; ++j)
            mx = std::max(mx, std::abs(ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]));
        if (mx > 0.0) scale[i] = 1.0 / mx;
    }
    Vec ab(static_cast<std::size_t>(ldab_) * n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        const int ilo = std::max(0, j - ku_), ihi = std::min(n_ - 1, j + kl_);
        for (int i = ilo; i <= ihi; ++i) {
            const std::size_t at = static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j);
            ab[at] = ab_[at] * scale[i];
        }
    }
    Vec x(rhs);
    for (int i = 0; i < n_; ++i) x[i] *= scale[i];
    std::vector<lapack_int> ipiv(n_);
    // keep the factorization for the refinement pass
    lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, ab.data(), ldab_, ipiv.data());
    if (info != 0)
        throw NumericalError("banded solve failed (singular pivot at " + std::to_string(info) + ")");
    auto back_solve = [&](Vec& b) {
        lapack_int ok = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab.data(), ldab_,
                                       ipiv.data(), b.data(), n_);
        if (ok != 0) throw NumericalError("banded back-substitution failed");
    };
    back_solve(x);
    // two rounds of iterative refinement with a long-double residual
    for (int round = 0; round < 2; ++round) {
        std::vector<long double> res(n_, 0.0L);
        for (int j = 0; j < n_; ++j) {
            const int ilo = std::max(0, j - ku_), ihi = std::min(n_ - 1, j + kl_);
            for (int i = ilo; i <= ihi; ++i)
                res[i] += static_cast<long double>(
                              ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]) *
                          x[j];
        }
        Vec corr(n_);
        long double worst = 0.0L;
        for (int i = 0; i < n_; ++i) {
            const long double r = static_cast<long double>(rhs[i]) - res[i];
            corr[i] = static_cast<double>(r * scale[i]);
            worst = std::max(worst, std::abs(r) * static_cast<long double>(scale[i]));
        }
        if (worst < 1e-30L) break;
        back_solve(corr);
        for (int i = 0; i < n_; ++i) x[i] += corr[i];
    }
    return x;
}

TridiagPairs smallest_eigenpairs(const Vec& d, const Vec& e, int count) {
    const lapack_int n = static_cast<lapack_int>(d.size());
    if (count < 1 || count > n) throw NumericalError("eigenpair count out of range");
    Vec dc = d, ec = e;
    ec.resize(n > 0 ? n - 1 : 0);
    Vec w(n), z(static_cast<std::size_t>(n) * count);
    std::vector<lapack_int> isuppz(2 * std::max<lapack_int>(1, count));
    lapack_int m = 0;
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, dc.data(), ec.data(), 0.0, 0.0, 1,
                                     count, 0.0, &m, w.data(), z.data(), n, isuppz.data());
    if (info != 0 || m < count) throw NumericalError("tridiagonal eigensolve failed");
    TridiagPairs out;
    out.values.assign(w.begin(), w.begin() + count);
    out.vectors.resize(count);
    for (int k = 0; k < count; ++k)
        out.vectors[k].assign(z.begin() + static_cast<std::size_t>(k) * n,
                              z.begin() + static_cast<std::size_t>(k + 1) * n);
    return out;
}

}  // namespace soliton
