#pragma once
// Analysis and synthesis on the double-density lattice: coefficient grids
// f_{m,n} = <f, a_{m,n}>, truncated reconstruction with the tight-frame factor
// 1/2, the displacement function C_{m,n}(xi, eta), and its inverse problem
// (recovering a displacement from a coefficient grid).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "thetaframe/core.hpp"
#include "thetaframe/signals.hpp"
#include "thetaframe/waveform.hpp"

namespace thetaframe {

// Complex amplitudes over the rectangle |m| <= M, |n| <= N, stored row-major
// with m outer and n inner.
struct CoeffGrid {
    int M = 0;
    int N = 0;
    LatticeConstants lattice;
    std::vector<std::complex<double>> values;

    std::size_t index(int m, int n) const {
        if (std::abs(m) > M || std::abs(n) > N)
            throw std::out_of_range("CoeffGrid: site outside rectangle");
        return static_cast<std::size_t>(m + M) * (2 * N + 1) + static_cast<std::size_t>(n + N);
    }
    std::complex<double>& at(int m, int n) { return values[index(m, n)]; }
    const std::complex<double>& at(int m, int n) const { return values[index(m, n)]; }

    static CoeffGrid zeros(int M, int N, const LatticeConstants& lat = {}) {
        CoeffGrid g;
        g.M = M;
        g.N = N;
        g.lattice = lat;
        g.values.assign(static_cast<std::size_t>(2 * M + 1) * (2 * N + 1), 0.0);
        return g;
    }
};

// Coefficient energy: every site is counted effectively twice by the four
// overlapping sublattices, hence the factor 1/2.
inline double energy(const CoeffGrid& g) {
    double acc = 0.0;
    for (const auto& v : g.values) acc += std::norm(v);
    return 0.5 * acc;
}

namespace detail {

// i^e for any integer e, exact.
inline std::complex<double> ipow(long long e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// Window rows a(t_k + m a), m = -M..M, as one (2M+1) x L block.  When the
// lattice step is an exact integer number of grid steps the rows are slices of
// a single extended evaluation; otherwise each row is evaluated directly.
inline std::vector<double> build_windows(const QuadratureSpec& quad, int M, const Waveform& w,
                                         const LatticeConstants& lat) {
    const std::size_t L = quad.n_samples();
    std::vector<double> win(static_cast<std::size_t>(2 * M + 1) * L);
    const long long K = std::llround(lat.a_step / quad.dt);
    const bool aligned = std::abs(static_cast<double>(K) * quad.dt - lat.a_step) <= 1e-12 * lat.a_step;
    if (aligned) {
        const long long pad = K * M;
        std::vector<double> ext(L + 2 * static_cast<std::size_t>(pad));
        for (long long j = 0; j < static_cast<long long>(ext.size()); ++j)
            ext[static_cast<std::size_t>(j)] = w.value(quad.t_min + static_cast<double>(j - pad) * quad.dt);
        for (int m = -M; m <= M; ++m) {
            double* row = &win[static_cast<std::size_t>(m + M) * L];
            const double* src = &ext[static_cast<std::size_t>(pad + m * K)];
            std::copy(src, src + L, row);
        }
    } else {
        for (int m = -M; m <= M; ++m) {
            double* row = &win[static_cast<std::size_t>(m + M) * L];
            for (std::size_t k = 0; k < L; ++k) row[k] = w.value(quad.time(k) + m * lat.a_step);
        }
    }
    return win;
}

// Modulation rows e^{i n b t_k} for n = 0..N.
inline std::vector<std::complex<double>> build_mods(const QuadratureSpec& quad, int N,
                                                    const LatticeConstants& lat) {
    const std::size_t L = quad.n_samples();
    std::vector<std::complex<double>> mods(static_cast<std::size_t>(N + 1) * L);
    for (int n = 0; n <= N; ++n)
        for (std::size_t k = 0; k < L; ++k)
            mods[static_cast<std::size_t>(n) * L + k] = std::polar(1.0, n * lat.b_step * quad.time(k));
    return mods;
}

}  // namespace detail

// Precomputed analysis machinery for one (grid, M, N, waveform) combination.
// Construction verifies the grid covers the |m| = M atom tails; repeated
// analyses (the displacement search in particular) then share the window and
// modulation tables.
class LatticeAnalyzer {
  public:
    LatticeAnalyzer(const QuadratureSpec& quad, int M, int N, const Waveform& w,
                    const LatticeConstants& lat = {})
        : quad_(quad), M_(M), N_(N), w_(w), lat_(lat) {
        quad_.validate();
        lat_.validate();
        if (M < 0 || N < 0) throw std::invalid_argument("LatticeAnalyzer: M, N must be >= 0");
        // The outermost atoms are centered at +-M a; their tails must be
        // buried (in energy, |a|^2 < 1e-12) before the grid ends.
        const double margin =
            std::min(-M * lat_.a_step - quad_.t_min, quad_.t_max - M * lat_.a_step);
        if (margin <= 0.0 || w.value(margin) * w.value(margin) >= 1e-12)
            throw grid_error("analyze: atom tail at |m| = M not covered to 1e-12 by the grid");
        L_ = quad_.n_samples();
        windows_ = detail::build_windows(quad_, M_, w_, lat_);
        mods_ = detail::build_mods(quad_, N_, lat_);
        weights_.assign(L_, 1.0);
        weights_.front() = weights_.back() = 0.5;
    }

    const QuadratureSpec& grid() const { return quad_; }

    CoeffGrid analyze_samples(const std::vector<std::complex<double>>& f) const {
        if (f.size() != L_) throw grid_error("analyze: sample count does not match the grid");
        CoeffGrid out = CoeffGrid::zeros(M_, N_, lat_);
        std::vector<std::complex<double>> base(L_);
        for (int m = -M_; m <= M_; ++m) {
            const double* win = &windows_[static_cast<std::size_t>(m + M_) * L_];
            for (std::size_t k = 0; k < L_; ++k) base[k] = weights_[k] * f[k] * win[k];
            for (int n = -N_; n <= N_; ++n) {
                const std::complex<double>* row = &mods_[static_cast<std::size_t>(std::abs(n)) * L_];
                std::complex<double> acc = 0.0;
                if (n >= 0)
                    for (std::size_t k = 0; k < L_; ++k) acc += base[k] * std::conj(row[k]);
                else
                    for (std::size_t k = 0; k < L_; ++k) acc += base[k] * row[k];
                // conj of the atom's lattice phase e^{i n m a b / 2} = i^{n m}
                out.at(m, n) = quad_.dt * detail::ipow(-static_cast<long long>(m) * n) * acc;
            }
        }
        return out;
    }

    CoeffGrid analyze(const SampledSignal& f) const {
        if (std::abs(f.t0 - quad_.t_min) > 1e-9 || std::abs(f.dt - quad_.dt) > 1e-12 * quad_.dt)
            throw grid_error("analyze: signal grid does not match the analyzer grid");
        return analyze_samples(f.samples);
    }

    // The displaced standard signal e^{i eta (t + xi/2)} a(t + xi), evaluated
    // analytically so xi may take any real value (the sampled-signal displace
    // operator would insist on grid alignment).
    SampledSignal displaced_atom(double xi, double eta) const {
        SampledSignal s;
        s.t0 = quad_.t_min;
        s.dt = quad_.dt;
        s.samples.resize(L_);
        for (std::size_t k = 0; k < L_; ++k) {
            const double t = quad_.time(k);
            s.samples[k] = std::polar(w_.value(t + xi), eta * (t + xi / 2.0));
        }
        return s;
    }

    CoeffGrid displaced_coeffs(double xi, double eta) const {
        return analyze_samples(displaced_atom(xi, eta).samples);
    }

  private:
    QuadratureSpec quad_;
    int M_, N_;
    Waveform w_;
    LatticeConstants lat_;
    std::size_t L_ = 0;
    std::vector<double> windows_;
    std::vector<std::complex<double>> mods_;
    std::vector<double> weights_;
};

// Coefficients f_{m,n} = dt sum_k f(t_k) conj(a_{m,n}(t_k)) over the rectangle.
inline CoeffGrid analyze(const SampledSignal& f, int M, int N, const Waveform& w,
                         const LatticeConstants& lat = {}) {
    return LatticeAnalyzer(f.grid(), M, N, w, lat).analyze_samples(f.samples);
}

// Truncated reconstruction f~(t) = 1/2 sum_{m,n} f_{m,n} a_{m,n}(t) on the
// requested grid.
inline SampledSignal synthesize(const CoeffGrid& g, const QuadratureSpec& quad, const Waveform& w) {
    quad.validate();
    const std::size_t L = quad.n_samples();
    const std::vector<double> win = detail::build_windows(quad, g.M, w, g.lattice);
    const std::vector<std::complex<double>> mods = detail::build_mods(quad, g.N, g.lattice);
    std::vector<std::complex<double>> acc(L, 0.0);
    for (int m = -g.M; m <= g.M; ++m) {
        const double* wrow = &win[static_cast<std::size_t>(m + g.M) * L];
        for (int n = -g.N; n <= g.N; ++n) {
            const std::complex<double> c =
                g.at(m, n) * detail::ipow(static_cast<long long>(m) * n);
            if (c == std::complex<double>(0.0)) continue;
            const std::complex<double>* row = &mods[static_cast<std::size_t>(std::abs(n)) * L];
            if (n >= 0)
                for (std::size_t k = 0; k < L; ++k) acc[k] += c * wrow[k] * row[k];
            else
                for (std::size_t k = 0; k < L; ++k) acc[k] += c * wrow[k] * std::conj(row[k]);
        }
    }
    SampledSignal out;
    out.t0 = quad.t_min;
    out.dt = quad.dt;
    out.samples.resize(L);
    for (std::size_t k = 0; k < L; ++k) out.samples[k] = 0.5 * acc[k];
    return out;
}

// L2 distance between f and its truncated expansion.
inline double reconstruction_error(const SampledSignal& f, int M, int N, const Waveform& w,
                                   const LatticeConstants& lat = {}) {
    const SampledSignal rec = synthesize(analyze(f, M, N, w, lat), f.grid(), w);
    return l2_distance(f, rec);
}

// The displacement function C_{m,n}(xi, eta): coefficients of the displaced
// standard signal.  xi is snapped to the analysis grid (the snapped value is
// reported through xi_used) so the sampled-signal displace operator stays
// exact; eta needs no snapping.
inline CoeffGrid ambiguity(double xi, double eta, int M, int N, const Waveform& w,
                           const QuadratureSpec& quad, double* xi_used = nullptr) {
    quad.validate();
    const double xi_snap = quad.dt * static_cast<double>(std::llround(xi / quad.dt));
    if (xi_used) *xi_used = xi_snap;
    SignalSpec spec;
    spec.kind = SignalSpec::Kind::atom;
    const SampledSignal atom = sample(spec, quad, w);
    return analyze(displace(atom, xi_snap, eta), M, N, w);
}

inline CoeffGrid ambiguity(double xi, double eta, int M, int N, const Waveform& w,
                           double* xi_used = nullptr) {
    return ambiguity(xi, eta, M, N, w, default_grid(M), xi_used);
}

struct DisplacementEstimate {
    double xi = 0.0;
    double eta = 0.0;
    double score = 0.0;  // normalized correlation at the optimum; 1 = exact atom
};

namespace detail {

// Golden-section maximization of a unimodal function on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, double tol) {
    constexpr double r = 0.6180339887498949;  // (sqrt(5)-1)/2
    double c = hi - r * (hi - lo);
    double d = lo + r * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
        }
    }
    return (lo + hi) / 2.0;
}

}  // namespace detail

// Recovers the (xi, eta) whose displaced standard signal best matches the
// analyzed grid: coarse scan at sqrt(pi)/8 around the coefficient energy
// centroid, then alternating golden-section refinement per axis down to the
// requested resolution.  Throws flat_correlation_error when even the best
// coarse score stays below 0.5 (the input is not a displaced atom).
inline DisplacementEstimate estimate_displacement(const CoeffGrid& g, const Waveform& w,
                                                  double resolution = 1e-3) {
    if (!(resolution > 0.0))
        throw std::invalid_argument("estimate_displacement: resolution must be positive");
    const double eg = energy(g);
    if (!(eg > 0.0))
        throw flat_correlation_error("estimate_displacement: input grid has zero energy");

    const LatticeAnalyzer az(default_grid(std::max(g.M, g.N) + 4), g.M, g.N, w, g.lattice);
    const auto score_at = [&](double xi, double eta) {
        const CoeffGrid c = az.displaced_coeffs(xi, eta);
        std::complex<double> ip = 0.0;
        for (std::size_t i = 0; i < g.values.size(); ++i)
            ip += g.values[i] * std::conj(c.values[i]);
        return std::abs(0.5 * ip) / std::sqrt(eg * energy(c));
    };

    // energy centroid of the grid seeds the scan
    double mbar = 0.0, nbar = 0.0;
    for (int m = -g.M; m <= g.M; ++m)
        for (int n = -g.N; n <= g.N; ++n) {
            const double p = std::norm(g.at(m, n));
            mbar += p * m;
            nbar += p * n;
        }
    const double tot = 2.0 * eg;  // plain sum of |values|^2
    double xi = g.lattice.a_step * mbar / tot;
    double eta = g.lattice.b_step * nbar / tot;

    double step = kSqrtPi / 8.0;
    double best = -1.0, bx = xi, by = eta;
    for (int i = -9; i <= 9; ++i)
        for (int j = -9; j <= 9; ++j) {
            const double s = score_at(xi + i * step, eta + j * step);
            if (s > best) {
                best = s;
                bx = xi + i * step;
                by = eta + j * step;
            }
        }
    if (best < 0.5)
        throw flat_correlation_error(
            "estimate_displacement: flat correlation (best score " + std::to_string(best) +
            "); input is not a displaced standard signal");

    const double tol = resolution / 4.0;
    for (int sweep = 0; sweep < 4; ++sweep) {
        bx = detail::golden_max([&](double x) { return score_at(x, by); }, bx - step, bx + step, tol);
        by = detail::golden_max([&](double y) { return score_at(bx, y); }, by - step, by + step, tol);
        step = std::max(8.0 * tol, step / 8.0);
    }
    return {bx, by, score_at(bx, by)};
}

}  // namespace thetaframe
