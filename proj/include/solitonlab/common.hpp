#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace soliton {

using Vec = std::vector<double>;

inline constexpr double kPi = std::numbers::pi;
// Total area of the class 2*pi*c1 on the sphere model.
inline constexpr double kVolume = 4.0 * std::numbers::pi;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PositivityError : NumericalError {
    using NumericalError::NumericalError;
};
struct CohomologyError : NumericalError {
    using NumericalError::NumericalError;
};

inline double sup_norm(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_of(const Vec& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    return m;
}

inline double min_of(const Vec& v) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : v) m = std::min(m, x);
    return m;
}

inline double oscillation(const Vec& v) { return max_of(v) - min_of(v); }

inline bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline Vec operator+(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Vec operator-(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Vec operator*(double t, Vec a) {
    for (double& x : a) x *= t;
    return a;
}

inline Vec& operator+=(Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline void shift(Vec& a, double t) {
    for (double& x : a) x += t;
}

}  // namespace soliton
