#pragma once
// Lemniscatic Jacobi theta functions theta3/theta4 (nome q = e^{-pi}) and the
// structure constants alpha_n: the scaled cosine-Fourier coefficients of
// 1/sqrt(theta4).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "thetaframe/core.hpp"

#if defined(__SIZEOF_FLOAT128__) && __has_include(<quadmath.h>)
#include <quadmath.h>
#define THETAFRAME_HAVE_FLOAT128 1
#endif

namespace thetaframe {

struct ThetaConfig {
    double nome = kNome;    // q = e^{-pi}; only the lemniscatic case is supported
    int series_order = 8;   // retained series terms; term n contributes q^{n^2}

    void validate() const {
        if (std::abs(nome - kNome) > 1e-12)
            throw std::invalid_argument("ThetaConfig: nome must equal e^{-pi}");
        if (series_order < 4)
            throw std::invalid_argument("ThetaConfig: series_order must be >= 4");
    }
};

// theta3(x) = 1 + 2 sum_{n>=1} q^{n^2} cos(2nx); pi-periodic, strictly positive.
inline double theta3(double x, const ThetaConfig& cfg = {}) {
    cfg.validate();
    double acc = 1.0;
    for (int n = 1; n <= cfg.series_order; ++n)
        acc += 2.0 * std::pow(cfg.nome, static_cast<double>(n) * n) * std::cos(2.0 * n * x);
    return acc;
}

// theta4(x) = theta3(x + pi/2); no real zeros.
inline double theta4(double x, const ThetaConfig& cfg = {}) {
    return theta3(x + kPi / 2.0, cfg);
}

// Structure constants alpha_1..alpha_K with the quadrature resolution that
// produced them.  alpha_n = e^{pi n} c_n / (2 c_0), where c_n are the
// cosine-Fourier coefficients of 1/sqrt(theta4) on [0, pi].
struct AlphaTable {
    std::vector<double> values;  // values[0] is alpha_1
    int quad_points = 0;

    int count() const { return static_cast<int>(values.size()); }
    double alpha(int n) const {  // 1-based, matching the subscript
        if (n < 1 || n > count()) throw std::out_of_range("AlphaTable: index out of range");
        return values[static_cast<std::size_t>(n) - 1];
    }
};

namespace detail {

// Quadrature precision for compute_alpha.  The target coefficients decay like
// e^{-pi n}, so the e^{pi n} rescaling amplifies arithmetic noise by up to
// e^{16 pi} ~ 7e21 at the default table size; double precision would return
// garbage past n ~ 10.  __float128 keeps the noise floor near 1e-11.
#if defined(THETAFRAME_HAVE_FLOAT128)
using quad_real = __float128;
// acosq instead of the M_PIq macro: the latter needs GNU numeric-literal
// extensions that strict -std=c++20 builds reject
inline quad_real qr_pi() { return acosq(__float128(-1)); }
inline quad_real qr_cos(quad_real x) { return cosq(x); }
inline quad_real qr_exp(quad_real x) { return expq(x); }
inline quad_real qr_sqrt(quad_real x) { return sqrtq(x); }
#else
using quad_real = long double;
inline quad_real qr_pi() { return 3.141592653589793238462643383279502884L; }
inline quad_real qr_cos(quad_real x) { return std::cos(x); }
inline quad_real qr_exp(quad_real x) { return std::exp(x); }
inline quad_real qr_sqrt(quad_real x) { return std::sqrt(x); }
#endif

inline quad_real theta4_hi(quad_real x, int order) {
    // theta4(x) = 1 + 2 sum (-1)^n q^{n^2} cos(2nx)
    quad_real acc = 1;
    for (int n = 1; n <= order; ++n) {
        const quad_real term = qr_exp(-qr_pi() * n * n) * qr_cos(2 * n * x);
        acc += (n % 2 == 0) ? 2 * term : -2 * term;
    }
    return acc;
}

}  // namespace detail

// Trapezoidal cosine-Fourier analysis of 1/sqrt(theta4) over one period
// [0, pi] with quad_points intervals.  The integrand is analytic and
// pi-periodic, so the rule converges spectrally; doubling quad_points is the
// audit for convergence.
inline AlphaTable compute_alpha(int count, int quad_points, const ThetaConfig& cfg = {}) {
    cfg.validate();
    if (count < 1) throw std::invalid_argument("compute_alpha: count must be >= 1");
    if (quad_points < 64 * count)
        throw std::invalid_argument("compute_alpha: quad_points must be >= 64*count");

    using detail::quad_real;
    const quad_real pi_hi = detail::qr_pi();
    const int Q = quad_points;
    const quad_real h = pi_hi / Q;

    // g(z) = 1/sqrt(theta4(z)) at the nodes, with a positivity guard.
    std::vector<quad_real> g(static_cast<std::size_t>(Q) + 1);
    for (int j = 0; j <= Q; ++j) {
        const quad_real t4 = detail::theta4_hi(h * j, cfg.series_order);
        if (!(t4 > 0))
            throw std::domain_error("compute_alpha: theta4 non-positive at a quadrature node");
        g[static_cast<std::size_t>(j)] = 1 / detail::qr_sqrt(t4);
    }
    const auto trapezoid = [&](auto&& f) {
        quad_real acc = (f(0) + f(Q)) / 2;
        for (int j = 1; j < Q; ++j) acc += f(j);
        return h * acc;
    };

    const quad_real c0 = trapezoid([&](int j) { return g[static_cast<std::size_t>(j)]; }) / pi_hi;
    AlphaTable table;
    table.quad_points = quad_points;
    table.values.reserve(static_cast<std::size_t>(count));
    for (int n = 1; n <= count; ++n) {
        const quad_real cn =
            2 / pi_hi * trapezoid([&](int j) {
                return g[static_cast<std::size_t>(j)] * detail::qr_cos(quad_real(2) * n * h * j);
            });
        table.values.push_back(static_cast<double>(detail::qr_exp(pi_hi * n) * cn / (2 * c0)));
    }
    return table;
}

}  // namespace thetaframe
