#pragma once
// The normalized base waveform a(t) in its two equivalent series forms, the
// lattice atoms a_{m,n}(t) = e^{i n b (t + m a/2)} a(t + m a), and the power
// attenuation curve.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "thetaframe/core.hpp"
#include "thetaframe/theta.hpp"

namespace thetaframe {

// Time step a and frequency step b of the double-density lattice.
struct LatticeConstants {
    double a_step = kSqrtPi;
    double b_step = kSqrtPi;

    void validate() const {
        // a*b = pi is what turns the commutator phase into exactly -1.
        if (std::abs(a_step * b_step - kPi) > 1e-12)
            throw std::invalid_argument("LatticeConstants: a_step*b_step must equal pi");
    }
};

// Gaussian-bump form: a central Gaussian plus alternating side bumps at
// t = +-2n sqrt(pi), all over sqrt(theta3(t sqrt(pi))).  Every summand is
// bounded by 1, so this is the numerically stable evaluator.
inline double atom_raw(double t, const AlphaTable& alpha, int n_terms,
                       const ThetaConfig& cfg = {}) {
    if (n_terms < 0 || n_terms > alpha.count())
        throw std::invalid_argument("atom_raw: n_terms exceeds the alpha table");
    double num = std::exp(-t * t / 2.0);
    for (int n = 1; n <= n_terms; ++n) {
        const double c = 2.0 * n * kSqrtPi;
        const double bump = alpha.alpha(n) * std::exp(-kPi * n) *
                            (std::exp(-(t - c) * (t - c) / 2.0) + std::exp(-(t + c) * (t + c) / 2.0));
        num += (n % 2 == 0) ? bump : -bump;
    }
    return num / std::sqrt(theta3(t * kSqrtPi, cfg));
}

// cosh form of the same function.  Needs magnitudes around e^{t^2/2}, so past
// |t| = 12 it delegates to the bump form instead of overflowing.
inline double atom_raw_cosh(double t, const AlphaTable& alpha, int n_terms,
                            const ThetaConfig& cfg = {}) {
    if (std::abs(t) > 12.0) return atom_raw(t, alpha, n_terms, cfg);
    if (n_terms < 0 || n_terms > alpha.count())
        throw std::invalid_argument("atom_raw_cosh: n_terms exceeds the alpha table");
    double acc = 1.0;
    for (int n = 1; n <= n_terms; ++n) {
        const double term = alpha.alpha(n) * std::exp(-kPi * n - 2.0 * kPi * n * n) *
                            std::cosh(2.0 * n * t * kSqrtPi);
        acc += (n % 2 == 0) ? 2.0 * term : -2.0 * term;
    }
    return acc / (std::exp(t * t / 2.0) * std::sqrt(theta3(t * kSqrtPi, cfg)));
}

// The base waveform with its L2 normalization fixed by quadrature.
struct Waveform {
    AlphaTable alpha;
    int n_terms = 8;
    double norm_const = 1.0;
    ThetaConfig theta;

    double value(double t) const { return atom_raw(t, alpha, n_terms, theta) / norm_const; }
};

// Grid wide enough for build_waveform's normalization integral: the last bump
// sits at 2*n_terms*sqrt(pi) and dies off within a few more lattice steps.
inline QuadratureSpec default_build_grid(int n_terms = 8) {
    QuadratureSpec q;
    q.dt = kSqrtPi / 64.0;
    q.t_max = 2.0 * (n_terms + 4) * kSqrtPi;
    q.t_min = -q.t_max;
    return q;
}

// Measures the squared norm of atom_raw by trapezoid quadrature and stores the
// normalizing divisor.
inline Waveform build_waveform(const AlphaTable& alpha, int n_terms, const QuadratureSpec& quad,
                               const ThetaConfig& cfg = {}) {
    quad.validate();
    const double need = 2.0 * (n_terms + 4) * kSqrtPi;
    if (quad.t_min > -need || quad.t_max < need)
        throw grid_error("build_waveform: quadrature domain must cover |t| <= 2(n_terms+4)sqrt(pi)");
    const std::size_t last = quad.n_samples() - 1;
    double acc = 0.0;
    for (std::size_t k = 0; k <= last; ++k) {
        const double v = atom_raw(quad.time(k), alpha, n_terms, cfg);
        acc += ((k == 0 || k == last) ? 0.5 : 1.0) * v * v;
    }
    const double norm2 = quad.dt * acc;
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw std::domain_error("build_waveform: measured norm is not finite and positive");
    return Waveform{alpha, n_terms, std::sqrt(norm2), cfg};
}

// Full default construction: 16 structure constants, 8 bump terms.
inline Waveform make_default_waveform(int n_terms = 8, int alpha_count = 16,
                                      int quad_points = 1024) {
    return build_waveform(compute_alpha(alpha_count, quad_points), n_terms,
                          default_build_grid(n_terms));
}

// Lattice atom with the symmetric phase convention e^{i n b (t + m a/2)}.
inline std::complex<double> atom_mn(double t, int m, int n, const Waveform& w,
                                    const LatticeConstants& lat = {}) {
    const double phase = n * lat.b_step * (t + m * lat.a_step / 2.0);
    return std::polar(w.value(t + m * lat.a_step), phase);
}

// Power attenuation 20 log10 |a(t)/a(0)| in dB; exact zeros map to -infinity
// so plots can traverse the sign changes between bumps.
inline double attenuation_db(double t, const Waveform& w) {
    const double at = std::abs(w.value(t));
    if (at == 0.0) return -std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(at / std::abs(w.value(0.0)));
}

}  // namespace thetaframe
