#pragma once
// Shared constants, the sampled-signal carrier, uniform-grid descriptions, and
// the error taxonomy used across the library.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetaframe {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kPi = 3.141592653589793238462643383279502884;
// Lattice step a = b = sqrt(pi); a*b = pi is the anticommutation condition.
inline const double kSqrtPi = std::sqrt(kPi);
// Lemniscatic nome q = e^{-pi}.
inline const double kNome = std::exp(-kPi);

// The requested grid cannot hold the computation (atom tails not covered,
// shift not an integer number of samples, ...).
struct grid_error : std::runtime_error {
    explicit grid_error(const std::string& what) : std::runtime_error(what) {}
};

// Displacement estimation found no correlation peak: input is not atom-like.
struct flat_correlation_error : std::runtime_error {
    explicit flat_correlation_error(const std::string& what) : std::runtime_error(what) {}
};

// A signal-spec string or an input file failed to parse.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Uniform time grid [t_min, t_max] with step dt.  dt must divide sqrt(pi) as
// sqrt(pi)/K for integer K >= 32 so that lattice translations are exact
// integer sample shifts.
struct QuadratureSpec {
    double t_min = 0.0;
    double t_max = 0.0;
    double dt = 1.0;

    std::size_t n_samples() const {
        return static_cast<std::size_t>(std::llround((t_max - t_min) / dt)) + 1;
    }
    double time(std::size_t k) const { return t_min + static_cast<double>(k) * dt; }

    void validate() const {
        if (!(dt > 0.0) || !(t_max > t_min))
            throw grid_error("QuadratureSpec: need dt > 0 and t_max > t_min");
        const double k = kSqrtPi / dt;
        const long long ki = std::llround(k);
        if (ki < 32 || std::abs(k - static_cast<double>(ki)) > 1e-9 * k)
            throw grid_error("QuadratureSpec: dt must equal sqrt(pi)/K for integer K >= 32");
    }
};

// Symmetric grid covering |t| <= (M+10)*sqrt(pi) at dt = sqrt(pi)/64: lattice
// shifts are exact 64-sample moves, modulations stay far below Nyquist, and
// the +10 margin buries the waveform tail beyond |m| = M atoms.
inline QuadratureSpec default_grid(int M = 8) {
    QuadratureSpec q;
    q.dt = kSqrtPi / 64.0;
    q.t_max = static_cast<double>(M + 10) * kSqrtPi;
    q.t_min = -q.t_max;
    return q;
}

// Complex samples on a uniform grid starting at t0.
struct SampledSignal {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<std::complex<double>> samples;

    std::size_t size() const { return samples.size(); }
    double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
    QuadratureSpec grid() const {
        return {t0, t0 + dt * static_cast<double>(samples.size() - 1), dt};
    }
};

// Signal energy dt * sum |f_k|^2.
inline double energy(const SampledSignal& s) {
    double acc = 0.0;
    for (const auto& v : s.samples) acc += std::norm(v);
    return s.dt * acc;
}

// Trapezoid inner product dt * sum w_k f_k conj(g_k); signals must share grids.
inline std::complex<double> inner_product(const SampledSignal& f, const SampledSignal& g) {
    if (f.size() != g.size() || std::abs(f.dt - g.dt) > 1e-12 * f.dt ||
        std::abs(f.t0 - g.t0) > 1e-9)
        throw grid_error("inner_product: signals live on different grids");
    std::complex<double> acc = 0.0;
    const std::size_t last = f.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        const double w = (k == 0 || k == last) ? 0.5 : 1.0;
        acc += w * f.samples[k] * std::conj(g.samples[k]);
    }
    return f.dt * acc;
}

// L2 distance sqrt(dt * sum |f_k - g_k|^2).
inline double l2_distance(const SampledSignal& f, const SampledSignal& g) {
    if (f.size() != g.size()) throw grid_error("l2_distance: size mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) acc += std::norm(f.samples[k] - g.samples[k]);
    return std::sqrt(f.dt * acc);
}

}  // namespace thetaframe
