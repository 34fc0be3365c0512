#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "thetaframe/frame.hpp"

using namespace thetaframe;
using Catch::Approx;

namespace {
const Waveform& std_waveform() {
    static const Waveform w = make_default_waveform();
    return w;
}

SampledSignal sample_spec(const std::string& text, const QuadratureSpec& q) {
    return sample(SignalSpec::parse(text), q, std_waveform());
}
}  // namespace

TEST_CASE("coefficient grid storage") {
    CoeffGrid g = CoeffGrid::zeros(2, 3);
    REQUIRE(g.values.size() == 5 * 7);
    g.at(-2, 3) = {1.0, -1.0};
    g.at(0, 0) = 2.0;
    REQUIRE(g.at(-2, 3) == std::complex<double>(1.0, -1.0));
    REQUIRE(g.values[0] == std::complex<double>(0.0, 0.0));
    REQUIRE_THROWS_AS(g.at(3, 0), std::out_of_range);
    REQUIRE_THROWS_AS(g.at(0, -4), std::out_of_range);
    // energy halves the plain sum
    REQUIRE(energy(g) == Approx(0.5 * (2.0 + 4.0)).margin(1e-15));
}

TEST_CASE("atom coefficients match the reference values") {
    const Waveform& w = std_waveform();
    const QuadratureSpec q = default_grid(4);
    const CoeffGrid g = analyze(sample_spec("atom", q), 4, 4, w);
    REQUIRE(std::abs(g.at(0, 0) - std::complex<double>(1.0, 0.0)) < 1e-9);
    REQUIRE(std::abs(g.at(1, 0) - std::complex<double>(0.44109006581822047, 0.0)) < 1e-9);
    REQUIRE(std::abs(g.at(0, 1) - std::complex<double>(0.44109006581822047, 0.0)) < 1e-9);
    REQUIRE(std::abs(g.at(1, 1) - std::complex<double>(0.22800910878265704, 0.0)) < 1e-9);
    REQUIRE(std::abs(g.at(2, 1) - std::complex<double>(0.038051401289691276, 0.0)) < 1e-9);
    // time reversal symmetry of the real even waveform
    for (int m = -4; m <= 4; ++m)
        for (int n = -4; n <= 4; ++n)
            REQUIRE(std::abs(g.at(m, n)) == Approx(std::abs(g.at(-m, -n))).margin(1e-12));
}

TEST_CASE("gaussian and monocycle coefficients match the reference values") {
    const Waveform& w = std_waveform();
    const QuadratureSpec q = default_grid(4);
    const CoeffGrid g = analyze(sample_spec("gaussian", q), 4, 4, w);
    REQUIRE(std::abs(g.at(0, 0) - std::complex<double>(0.9990648622057028, 0.0)) < 1e-9);
    REQUIRE(std::abs(g.at(1, 0) - std::complex<double>(0.4481406530988039, 0.0)) < 1e-9);
    REQUIRE(std::abs(g.at(1, 1) - std::complex<double>(0.21760772478196158, 0.0)) < 1e-9);
    REQUIRE(std::abs(g.at(2, 0) - std::complex<double>(0.021611981623095695, 0.0)) < 1e-9);

    const CoeffGrid h = analyze(sample_spec("monocycle", q), 4, 4, w);
    REQUIRE(std::abs(h.at(0, 0)) < 1e-12);
    REQUIRE(std::abs(h.at(0, 1) - std::complex<double>(0.0, -0.5864735180387952)) < 1e-9);
    REQUIRE(std::abs(h.at(0, 2) - std::complex<double>(0.0, -0.10834640841451443)) < 1e-9);
    REQUIRE(std::abs(h.at(1, 0) - std::complex<double>(-0.5864735180387953, 0.0)) < 1e-9);
}

TEST_CASE("analyze validates grids") {
    const Waveform& w = std_waveform();
    const QuadratureSpec q = default_grid(2);
    const SampledSignal atom = sample_spec("atom", q);
    // rectangle wider than the covered tails
    REQUIRE_THROWS_AS(analyze(atom, 12, 0, w), grid_error);
    REQUIRE_THROWS_AS(analyze(atom, 11, 0, w), grid_error);
    REQUIRE_NOTHROW(analyze(atom, 2, 2, w));
    // signal grid must match the analyzer grid
    const LatticeAnalyzer az(default_grid(3), 2, 2, w);
    REQUIRE_THROWS_AS(az.analyze(atom), grid_error);
    REQUIRE_THROWS_AS(LatticeAnalyzer(q, -1, 2, w), std::invalid_argument);
}

TEST_CASE("coefficient energy converges to the signal energy") {
    const Waveform& w = std_waveform();
    static const double expected[] = {0.999289607, 0.999945202, 0.999999328, 0.999999999};
    const int sizes[] = {2, 3, 4, 6};
    for (int i = 0; i < 4; ++i) {
        const QuadratureSpec q = default_grid(sizes[i]);
        const CoeffGrid g = analyze(sample_spec("hermite:2", q), sizes[i], sizes[i], w);
        REQUIRE(energy(g) == Approx(expected[i]).margin(5e-7));
    }
}

TEST_CASE("reconstruction error decays with the rectangle") {
    const Waveform& w = std_waveform();
    const QuadratureSpec q = default_grid(8);
    const SampledSignal u0 = sample_spec("gaussian", q);
    double prev = 1.0;
    double err3 = 0.0, err6 = 0.0;
    for (int M = 2; M <= 8; ++M) {
        const double err = reconstruction_error(u0, M, M, w);
        REQUIRE(err < prev);
        prev = err;
        if (M == 2) REQUIRE(err == Approx(1.148e-2).epsilon(0.05));
        if (M == 3) err3 = err;
        if (M == 6) err6 = err;
        if (M == 8) REQUIRE(err < 1e-6);
    }
    REQUIRE(err3 / err6 > 10.0);
}

TEST_CASE("reconstruction of the atom itself") {
    const Waveform& w = std_waveform();
    const QuadratureSpec q = default_grid(8);
    const SampledSignal atom = sample_spec("atom", q);
    // M = N = 0 keeps only f_00 = 1: the expansion returns a/2, so the
    // distance is exactly half the unit norm
    REQUIRE(reconstruction_error(atom, 0, 0, w) == Approx(0.5).margin(1e-6));
    REQUIRE(reconstruction_error(atom, 6, 6, w) < 1e-4);
}

TEST_CASE("synthesize can target a different grid") {
    const Waveform& w = std_waveform();
    const QuadratureSpec q8 = default_grid(8);
    const CoeffGrid g = analyze(sample_spec("gaussian", q8), 6, 6, w);
    const QuadratureSpec q10 = default_grid(10);
    const SampledSignal rec = synthesize(g, q10, w);
    REQUIRE(rec.size() == q10.n_samples());
    REQUIRE(energy(rec) == Approx(1.0).margin(1e-4));
}

TEST_CASE("anticommutation of the two lattice shifts") {
    const QuadratureSpec q = default_grid(2);
    std::mt19937 rng(7u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SampledSignal f;
    f.t0 = q.t_min;
    f.dt = q.dt;
    f.samples.resize(q.n_samples());
    for (auto& v : f.samples) v = {gauss(rng), gauss(rng)};
    const SampledSignal ab = translate(modulate(f, kSqrtPi), kSqrtPi);
    const SampledSignal ba = modulate(translate(f, kSqrtPi), kSqrtPi);
    double dev = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
        dev = std::max(dev, std::abs(ab.samples[k] + ba.samples[k]));
    REQUIRE(dev < 1e-12);
}

TEST_CASE("fourier covariance rotates the grid a quarter turn") {
    const Waveform& w = std_waveform();
    const QuadratureSpec q = default_grid(3);
    const SampledSignal f = sample_spec("hermite:2", q);
    const CoeffGrid a = analyze(fourier_transform(f, q), 3, 3, w);
    const CoeffGrid b = analyze(f, 3, 3, w);
    double dev = 0.0;
    for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n) dev = std::max(dev, std::abs(a.at(m, n) - b.at(n, -m)));
    REQUIRE(dev < 1e-8);
}

TEST_CASE("ambiguity snaps xi to the analysis grid") {
    const Waveform& w = std_waveform();
    const QuadratureSpec q = default_grid(2);
    double xi_used = -1.0;
    const double xi_req = 2.3 * q.dt;  // off-grid request
    const CoeffGrid g = ambiguity(xi_req, 0.4, 2, 2, w, q, &xi_used);
    REQUIRE(xi_used == Approx(2.0 * q.dt).margin(1e-15));
    // coefficients agree with directly analyzing the displaced atom
    const SampledSignal d = displace(sample_spec("atom", q), xi_used, 0.4);
    const CoeffGrid direct = analyze(d, 2, 2, w);
    for (std::size_t i = 0; i < g.values.size(); ++i)
        REQUIRE(std::abs(g.values[i] - direct.values[i]) < 1e-14);
    // zero displacement reproduces the atom's own coefficients
    const CoeffGrid a0 = ambiguity(0.0, 0.0, 2, 2, w);
    REQUIRE(std::abs(a0.at(0, 0) - std::complex<double>(1.0, 0.0)) < 1e-9);
}

TEST_CASE("displacement round trip within the requested resolution") {
    const Waveform& w = std_waveform();
    const double xi = 0.25 * kSqrtPi, eta = 0.5 * kSqrtPi;
    const CoeffGrid g = ambiguity(xi, eta, 4, 4, w);
    const DisplacementEstimate est = estimate_displacement(g, w, 1e-3);
    REQUIRE(std::abs(est.xi - xi) < 1e-3);
    REQUIRE(std::abs(est.eta - eta) < 1e-3);
    REQUIRE(est.score > 1.0 - 1e-6);
}

TEST_CASE("displacement estimation rejects non-atoms") {
    const Waveform& w = std_waveform();
    const QuadratureSpec q = default_grid(4);
    const CoeffGrid g = analyze(sample_spec("hermite:4", q), 4, 4, w);
    REQUIRE_THROWS_AS(estimate_displacement(g, w), flat_correlation_error);
    REQUIRE_THROWS_AS(estimate_displacement(CoeffGrid::zeros(2, 2), w), flat_correlation_error);
    REQUIRE_THROWS_AS(estimate_displacement(g, w, -1.0), std::invalid_argument);
}
