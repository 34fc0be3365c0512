#pragma once
// Signal generators (Hermite family, Gaussian monocycle, displaced atom), the
// elementary lattice operators (translate / modulate / displace), the unitary
// Fourier transform, and the signal CSV format.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "thetaframe/core.hpp"
#include "thetaframe/waveform.hpp"

namespace thetaframe {

// Physicists' Hermite polynomial H_l(t) by the three-term recurrence.
inline double hermite_poly(int l, double t) {
    if (l < 0 || l > 60) throw std::invalid_argument("hermite_poly: order must be in [0, 60]");
    if (l == 0) return 1.0;
    double prev = 1.0, cur = 2.0 * t;
    for (int k = 1; k < l; ++k) {
        const double next = 2.0 * t * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// Normalized Hermite function u_l(t) = (l! 2^l sqrt(pi))^{-1/2} e^{-t^2/2} H_l(t).
// The prefactor is folded into the recurrence (u_{k+1} = sqrt(2/(k+1)) t u_k -
// sqrt(k/(k+1)) u_{k-1}) so no factorial is ever formed.
inline double hermite_fn(int l, double t) {
    if (l < 0 || l > 60) throw std::invalid_argument("hermite_fn: order must be in [0, 60]");
    const double u0 = std::pow(kPi, -0.25) * std::exp(-t * t / 2.0);
    if (l == 0) return u0;
    double prev = u0, cur = std::sqrt(2.0) * t * u0;
    for (int k = 1; k < l; ++k) {
        const double next =
            std::sqrt(2.0 / (k + 1)) * t * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Signal catalog and its mini-language:
//   atom | gaussian | monocycle | hermite:L | displaced:XI,ETA
//   | diff:SPEC_A,SPEC_B | file:PATH
// ---------------------------------------------------------------------------
struct SignalSpec {
    enum class Kind { atom, gaussian, monocycle, hermite, displaced, file, diff };

    Kind kind = Kind::atom;
    int hermite_order = 0;
    double xi = 0.0, eta = 0.0;
    std::string path;
    std::shared_ptr<const SignalSpec> lhs, rhs;  // diff operands

    static SignalSpec parse(const std::string& text);
    std::string to_string() const;
};

inline SignalSpec SignalSpec::parse(const std::string& text) {
    const auto starts = [&](const char* p) {
        return text.rfind(p, 0) == 0;
    };
    SignalSpec s;
    if (text == "atom") return s;
    if (text == "gaussian") {
        s.kind = Kind::gaussian;
        return s;
    }
    if (text == "monocycle") {
        s.kind = Kind::monocycle;
        return s;
    }
    if (starts("hermite:")) {
        s.kind = Kind::hermite;
        std::size_t used = 0;
        const std::string body = text.substr(8);
        try {
            s.hermite_order = std::stoi(body, &used);
        } catch (const std::exception&) {
            throw parse_error("signal spec: bad hermite order in '" + text + "'");
        }
        if (used != body.size() || s.hermite_order < 0)
            throw parse_error("signal spec: bad hermite order in '" + text + "'");
        return s;
    }
    if (starts("displaced:")) {
        s.kind = Kind::displaced;
        const std::string body = text.substr(10);
        const auto comma = body.find(',');
        std::size_t u1 = 0, u2 = 0;
        if (comma == std::string::npos) throw parse_error("signal spec: displaced needs XI,ETA");
        try {
            s.xi = std::stod(body.substr(0, comma), &u1);
            s.eta = std::stod(body.substr(comma + 1), &u2);
        } catch (const std::exception&) {
            throw parse_error("signal spec: bad displaced parameters in '" + text + "'");
        }
        if (u1 != comma || u2 != body.size() - comma - 1)
            throw parse_error("signal spec: bad displaced parameters in '" + text + "'");
        return s;
    }
    if (starts("file:")) {
        s.kind = Kind::file;
        s.path = text.substr(5);
        if (s.path.empty()) throw parse_error("signal spec: file path is empty");
        return s;
    }
    if (starts("diff:")) {
        // Operands may themselves contain commas (displaced, nested diff), so
        // try every split point until both halves parse.
        const std::string body = text.substr(5);
        for (std::size_t i = body.find(','); i != std::string::npos; i = body.find(',', i + 1)) {
            try {
                s.lhs = std::make_shared<SignalSpec>(parse(body.substr(0, i)));
                s.rhs = std::make_shared<SignalSpec>(parse(body.substr(i + 1)));
                s.kind = Kind::diff;
                return s;
            } catch (const parse_error&) {
                continue;
            }
        }
        throw parse_error("signal spec: cannot split diff operands in '" + text + "'");
    }
    throw parse_error("signal spec: unknown kind '" + text + "'");
}

inline std::string SignalSpec::to_string() const {
    char buf[64];
    switch (kind) {
        case Kind::atom: return "atom";
        case Kind::gaussian: return "gaussian";
        case Kind::monocycle: return "monocycle";
        case Kind::hermite: return "hermite:" + std::to_string(hermite_order);
        case Kind::displaced:
            std::snprintf(buf, sizeof buf, "displaced:%.17g,%.17g", xi, eta);
            return buf;
        case Kind::file: return "file:" + path;
        case Kind::diff: return "diff:" + lhs->to_string() + "," + rhs->to_string();
    }
    return {};
}

// ---------------------------------------------------------------------------
// Signal CSV: optional leading '# ...' metadata lines, a 't,re,im' header (the
// im column may be omitted), then strictly uniformly spaced rows.
// ---------------------------------------------------------------------------
inline SampledSignal read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open signal file '" + path + "'");
    std::string line;
    // skip metadata
    while (std::getline(in, line) && (line.empty() || line[0] == '#')) {}
    if (line != "t,re,im" && line != "t,re")
        throw parse_error(path + ": expected header 't,re,im' (or 't,re')");
    std::vector<double> ts;
    SampledSignal s;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        double t = 0, re = 0, im = 0;
        const int got = std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im);
        if (got < 2) throw parse_error(path + ": malformed row at line " + std::to_string(lineno));
        ts.push_back(t);
        s.samples.emplace_back(re, im);
    }
    if (ts.size() < 2) throw parse_error(path + ": need at least 2 samples");
    s.t0 = ts.front();
    s.dt = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
    for (std::size_t k = 1; k < ts.size(); ++k) {
        const double step = ts[k] - ts[k - 1];
        if (std::abs(step - s.dt) > 1e-9 * std::abs(s.dt))
            throw parse_error(path + ": non-uniform t spacing at line " + std::to_string(k + 2));
    }
    return s;
}

inline void write_signal_csv(std::ostream& out, const SampledSignal& s,
                             const std::vector<std::string>& comments = {}) {
    char buf[96];
    for (const auto& c : comments) out << "# " << c << "\n";
    out << "t,re,im\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", s.time(k), s.samples[k].real(),
                      s.samples[k].imag());
        out << buf << "\n";
    }
}

inline void write_signal_csv(const std::string& path, const SampledSignal& s,
                             const std::vector<std::string>& comments = {}) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write signal file '" + path + "'");
    write_signal_csv(out, s, comments);
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

// Evaluates the spec on the grid.  All analytic kinds are unit-energy
// functions; `diff` normalizes its operands, subtracts, and renormalizes the
// difference; `file` returns the stored grid unchanged (quad does not apply).
inline SampledSignal sample(const SignalSpec& spec, const QuadratureSpec& quad,
                            const Waveform& w) {
    using Kind = SignalSpec::Kind;
    if (spec.kind == Kind::file) return read_signal_csv(spec.path);
    if (spec.kind == Kind::diff) {
        SampledSignal a = sample(*spec.lhs, quad, w);
        SampledSignal b = sample(*spec.rhs, quad, w);
        if (a.size() != b.size())
            throw grid_error("diff: operands live on different grids");
        const double ea = std::sqrt(energy(a)), eb = std::sqrt(energy(b));
        if (!(ea > 0.0) || !(eb > 0.0)) throw std::domain_error("diff: operand has zero energy");
        for (std::size_t k = 0; k < a.size(); ++k)
            a.samples[k] = a.samples[k] / ea - b.samples[k] / eb;
        const double ed = std::sqrt(energy(a));
        if (ed < 1e-12) throw std::domain_error("diff: operands are identical");
        for (auto& v : a.samples) v /= ed;
        return a;
    }
    quad.validate();
    SampledSignal s;
    s.t0 = quad.t_min;
    s.dt = quad.dt;
    const std::size_t n = quad.n_samples();
    s.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = quad.time(k);
        switch (spec.kind) {
            case Kind::atom: s.samples[k] = w.value(t); break;
            case Kind::gaussian: s.samples[k] = hermite_fn(0, t); break;
            case Kind::monocycle: s.samples[k] = hermite_fn(1, t); break;
            case Kind::hermite: s.samples[k] = hermite_fn(spec.hermite_order, t); break;
            case Kind::displaced:
                // Analytic displacement: xi is not restricted to the grid here.
                s.samples[k] = std::polar(w.value(t + spec.xi), spec.eta * (t + spec.xi / 2.0));
                break;
            default: break;  // file/diff handled above
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Elementary operators
// ---------------------------------------------------------------------------

// f(t) -> f(t + shift) as an exact index shift; the shift must be an integer
// number of samples.  Samples rolling off the grid are dropped, entering ones
// are zero.
inline SampledSignal translate(const SampledSignal& s, double shift) {
    const double ratio = shift / s.dt;
    const long long k = std::llround(ratio);
    if (std::abs(ratio - static_cast<double>(k)) > 1e-9 * std::max(1.0, std::abs(ratio)))
        throw grid_error("translate: shift is not an integer multiple of dt");
    SampledSignal out;
    out.t0 = s.t0;
    out.dt = s.dt;
    out.samples.assign(s.size(), 0.0);
    const long long n = static_cast<long long>(s.size());
    for (long long j = 0; j < n; ++j) {
        const long long src = j + k;
        if (src >= 0 && src < n) out.samples[static_cast<std::size_t>(j)] = s.samples[static_cast<std::size_t>(src)];
    }
    return out;
}

// f(t) -> e^{i freq t} f(t).
inline SampledSignal modulate(const SampledSignal& s, double freq) {
    SampledSignal out = s;
    for (std::size_t k = 0; k < out.size(); ++k)
        out.samples[k] *= std::polar(1.0, freq * out.time(k));
    return out;
}

// f(t) -> e^{i eta (t + xi/2)} f(t + xi): translation then modulation with the
// symmetric half-shift phase.  Same grid-alignment contract as translate.
inline SampledSignal displace(const SampledSignal& s, double xi, double eta) {
    SampledSignal out = translate(s, xi);
    for (std::size_t k = 0; k < out.size(); ++k)
        out.samples[k] *= std::polar(1.0, eta * (out.time(k) + xi / 2.0));
    return out;
}

// Unitary Fourier transform g(w) = (2 pi)^{-1/2} dt sum_k f(t_k) e^{-i w t_k}
// with trapezoid edge weights, evaluated on out_grid.  Sets *edge_warning when
// the input has not decayed below 1e-12 at its grid edges (the truncated
// integral is then suspect).
inline SampledSignal fourier_transform(const SampledSignal& s, const QuadratureSpec& out_grid,
                                       bool* edge_warning = nullptr) {
    out_grid.validate();
    if (edge_warning)
        *edge_warning =
            std::abs(s.samples.front()) > 1e-12 || std::abs(s.samples.back()) > 1e-12;
    const std::size_t last = s.size() - 1;
    SampledSignal out;
    out.t0 = out_grid.t_min;
    out.dt = out_grid.dt;
    out.samples.resize(out_grid.n_samples());
    const double scale = s.dt / std::sqrt(2.0 * kPi);
    for (std::size_t j = 0; j < out.samples.size(); ++j) {
        const double w = out_grid.time(j);
        const std::complex<double> step = std::polar(1.0, -w * s.dt);
        std::complex<double> rot = std::polar(1.0, -w * s.t0);
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k <= last; ++k) {
            // re-anchor the phase recurrence so rounding cannot accumulate
            if (k % 64 == 0) rot = std::polar(1.0, -w * s.time(k));
            const double wt = (k == 0 || k == last) ? 0.5 : 1.0;
            acc += wt * s.samples[k] * rot;
            rot *= step;
        }
        out.samples[j] = scale * acc;
    }
    return out;
}

}  // namespace thetaframe
