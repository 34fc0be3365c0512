// Command-line front end: alpha / waveform / analyze / synthesize / plot /
// ambiguity / verify.  Exit codes: 0 success, 1 usage or input errors,
// 2 numerical failures (uncovered grids, flat correlation, failed checks).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thetaframe/thetaframe.hpp"

namespace tf = thetaframe;

namespace {

// Everything the subcommands can configure, gathered in one record so the
// defaults are visible in one place.
struct CliConfig {
    // shared
    int M = 8, N = 8;
    int n_terms = 8;
    int alpha_count = 16;
    int quad_points = 0;  // 0 = derived from alpha_count
    double t_min = 0.0, t_max = 0.0, dt = 0.0;  // 0 = derived defaults
    std::string signal = "atom";
    std::string coeffs_path, out_path;
    bool json_output = false;
    bool attenuation = false;
    bool estimate = false;
    double xi = 0.0, eta = 0.0;
    double resolution = 1e-3;
    std::vector<std::string> overlays;
    // render style
    tf::RenderStyle style;
    bool no_axes = false;
    // verify
    bool list_checks = false;
    tf::VerifyOptions tols;
};

std::string join_command(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        const std::string a = argv[i];
        s += (a.find(' ') == std::string::npos) ? a : "'" + a + "'";
    }
    // keep the string safe inside an SVG/XML comment
    for (std::size_t p = s.find("--"); p != std::string::npos; p = s.find("--", p + 1))
        s[p + 1] = '~';
    return s;
}

// The un-mangled command line for CSV/JSON metadata.
std::string plain_command(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

tf::QuadratureSpec choose_grid(const CliConfig& c, int default_m) {
    if (c.dt > 0.0 || c.t_min != 0.0 || c.t_max != 0.0) {
        tf::QuadratureSpec q;
        q.dt = (c.dt > 0.0) ? c.dt : tf::kSqrtPi / 64.0;
        q.t_min = c.t_min;
        q.t_max = c.t_max;
        q.validate();
        return q;
    }
    return tf::default_grid(default_m);
}

nlohmann::json grid_meta(const tf::QuadratureSpec& q) {
    return {{"t_min", q.t_min}, {"t_max", q.t_max}, {"dt", q.dt}};
}

void write_text(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) throw tf::parse_error("cannot write output file '" + path + "'");
    out << body;
}

int cmd_alpha(const CliConfig& c, const std::string& command) {
    const int q = (c.quad_points > 0) ? c.quad_points : std::max(1024, 64 * c.alpha_count);
    const tf::AlphaTable table = tf::compute_alpha(c.alpha_count, q);
    if (c.json_output) {
        nlohmann::json j;
        j["count"] = table.count();
        j["quad_points"] = table.quad_points;
        j["values"] = table.values;
        j["metadata"] = {{"command", command}};
        write_text(c.out_path, j.dump(1) + "\n");
    } else {
        std::string body = "# " + command + "\n";
        char buf[64];
        for (int n = 1; n <= table.count(); ++n) {
            std::snprintf(buf, sizeof buf, "alpha[%2d] = %.16g\n", n, table.alpha(n));
            body += buf;
        }
        write_text(c.out_path, body);
    }
    return 0;
}

int cmd_waveform(const CliConfig& c, const std::string& command) {
    const tf::Waveform w =
        tf::build_waveform(tf::compute_alpha(c.alpha_count, std::max(1024, 64 * c.alpha_count)),
                           c.n_terms, tf::default_build_grid(c.n_terms));
    tf::QuadratureSpec q;
    if (c.dt > 0.0 || c.t_min != 0.0 || c.t_max != 0.0) {
        q.dt = (c.dt > 0.0) ? c.dt : tf::kSqrtPi / 64.0;
        q.t_min = c.t_min;
        q.t_max = c.t_max;
        q.validate();
    } else {
        q = tf::default_grid(8);
    }
    tf::SampledSignal s;
    s.t0 = q.t_min;
    s.dt = q.dt;
    s.samples.resize(q.n_samples());
    for (std::size_t k = 0; k < s.size(); ++k)
        s.samples[k] = c.attenuation ? tf::attenuation_db(q.time(k), w) : w.value(q.time(k));
    std::ostringstream out;
    tf::write_signal_csv(out, s,
                         {command, std::string("content: ") +
                                       (c.attenuation ? "attenuation_db" : "waveform"),
                          "n_terms: " + std::to_string(c.n_terms)});
    write_text(c.out_path, out.str());
    return 0;
}

int cmd_analyze(const CliConfig& c, const std::string& command) {
    const tf::Waveform w = tf::make_default_waveform(c.n_terms, c.alpha_count);
    const tf::SignalSpec spec = tf::SignalSpec::parse(c.signal);
    const tf::QuadratureSpec q = choose_grid(c, std::max(c.M, c.N));
    const tf::SampledSignal f = tf::sample(spec, q, w);
    const tf::CoeffGrid g = tf::analyze(f, c.M, c.N, w);
    const double e_sig = tf::energy(f), e_coef = tf::energy(g);
    std::printf("signal energy        %.12f\n", e_sig);
    std::printf("coefficient energy   %.12f\n", e_coef);
    std::printf("truncation deficit   %.3e\n", e_sig - e_coef);
    if (!c.out_path.empty()) {
        nlohmann::json meta = {{"command", command},
                               {"signal", spec.to_string()},
                               {"grid", grid_meta(f.grid())},
                               {"n_terms", c.n_terms}};
        tf::write_coeff_json(c.out_path, g, meta);
        std::printf("wrote %s\n", c.out_path.c_str());
    }
    return 0;
}

int cmd_synthesize(const CliConfig& c, const std::string& command) {
    const tf::Waveform w = tf::make_default_waveform(c.n_terms, c.alpha_count);
    const tf::CoeffGrid g = tf::read_coeff_json(c.coeffs_path);
    const tf::QuadratureSpec q = choose_grid(c, std::max({g.M, g.N, 8}));
    const tf::SampledSignal rec = tf::synthesize(g, q, w);
    std::printf("reconstruction energy %.12f\n", tf::energy(rec));
    std::ostringstream out;
    tf::write_signal_csv(out, rec, {command, "content: synthesis from " + c.coeffs_path});
    write_text(c.out_path, out.str());
    return 0;
}

int cmd_plot(const CliConfig& c, const std::string& command, const std::string& svg_command) {
    tf::RenderStyle style = c.style;
    style.show_axes = !c.no_axes;
    if (!c.coeffs_path.empty()) {
        const tf::CoeffGrid g = tf::read_coeff_json(c.coeffs_path);
        write_text(c.out_path, tf::render_grid(g, style, svg_command));
        return 0;
    }
    if (!c.attenuation) throw tf::parse_error("plot: need either --coeffs or --attenuation");
    // attenuation curve over [0, t_max] (default 8 sqrt(pi))
    const tf::Waveform w = tf::make_default_waveform(c.n_terms, c.alpha_count);
    const double t_max = (c.t_max > 0.0) ? c.t_max : 8.0 * tf::kSqrtPi;
    const double dt = (c.dt > 0.0) ? c.dt : tf::kSqrtPi / 64.0;
    std::vector<std::pair<double, double>> pts;
    for (double t = 0.0; t <= t_max + dt / 2; t += dt) pts.emplace_back(t, tf::attenuation_db(t, w));
    std::vector<tf::CurveOverlay> ovs;
    for (const auto& name : c.overlays) {
        tf::CurveOverlay ov;
        if (name == "gaussian") {
            ov.label = "gaussian";
            for (const auto& [t, unused] : pts)
                ov.points.emplace_back(t, -10.0 * t * t / std::log(10.0));
        } else if (name == "approx3" || name == "approx5") {
            const int k = (name == "approx3") ? 3 : 5;
            ov.label = std::to_string(k) + " terms";
            const tf::Waveform wk = tf::build_waveform(w.alpha, k, tf::default_build_grid(8));
            for (const auto& [t, unused] : pts) ov.points.emplace_back(t, tf::attenuation_db(t, wk));
        } else {
            throw tf::parse_error("plot: unknown overlay '" + name +
                                  "' (expected gaussian, approx3, approx5)");
        }
        ovs.push_back(std::move(ov));
    }
    (void)command;
    write_text(c.out_path, tf::render_curve(pts, style, ovs, svg_command));
    return 0;
}

int cmd_ambiguity(const CliConfig& c, const std::string& command) {
    const tf::Waveform w = tf::make_default_waveform(c.n_terms, c.alpha_count);
    if (c.estimate) {
        const tf::CoeffGrid g = tf::read_coeff_json(c.coeffs_path);
        const tf::DisplacementEstimate est = tf::estimate_displacement(g, w, c.resolution);
        std::printf("xi    %.10f\n", est.xi);
        std::printf("eta   %.10f\n", est.eta);
        std::printf("score %.12f\n", est.score);
        return 0;
    }
    double xi_used = 0.0;
    const tf::CoeffGrid g = tf::ambiguity(c.xi, c.eta, c.M, c.N, w, &xi_used);
    std::printf("xi requested %.10f\n", c.xi);
    std::printf("xi used      %.10f (snapped to the grid)\n", xi_used);
    std::printf("eta          %.10f\n", c.eta);
    std::printf("coefficient energy %.12f\n", tf::energy(g));
    if (!c.out_path.empty()) {
        nlohmann::json meta = {{"command", command},
                               {"xi", xi_used},
                               {"eta", c.eta}};
        tf::write_coeff_json(c.out_path, g, meta);
        std::printf("wrote %s\n", c.out_path.c_str());
    }
    return 0;
}

int cmd_verify(const CliConfig& c) {
    if (c.list_checks) {
        for (const auto* name : tf::acceptance_names()) std::printf("%s\n", name);
        return 0;
    }
    const std::vector<tf::CheckResult> results = tf::run_acceptance(c.tols);
    int passed = 0;
    for (const auto& r : results) {
        if (r.pass) ++passed;
        std::printf("%s  %-28s  measured %.3e  tol %.3e  -- %s\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.measured, r.tolerance, r.detail.c_str());
    }
    std::printf("%d/%d checks passed\n", passed, static_cast<int>(results.size()));
    return passed == static_cast<int>(results.size()) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig c;
    const std::string command = plain_command(argc, argv);
    const std::string svg_command = join_command(argc, argv);

    CLI::App app{"time-frequency expansions on the double-density lattice"};
    app.set_version_flag("--version", tf::kVersion);
    app.require_subcommand(1);

    const auto add_grid_flags = [&](CLI::App* sub) {
        sub->add_option("--t-min", c.t_min, "grid start");
        sub->add_option("--t-max", c.t_max, "grid end");
        sub->add_option("--dt", c.dt, "grid step (must divide sqrt(pi) as sqrt(pi)/K, K >= 32)");
    };

    CLI::App* alpha = app.add_subcommand("alpha", "compute the structure constants alpha_n");
    alpha->add_option("--count", c.alpha_count, "number of constants")->capture_default_str();
    alpha->add_option("--quad-points", c.quad_points, "quadrature intervals (default 64*count, min 1024)");
    alpha->add_flag("--json", c.json_output, "emit JSON instead of text");
    alpha->add_option("-o,--output", c.out_path, "output file (default stdout)");

    CLI::App* waveform = app.add_subcommand("waveform", "sample the base waveform to CSV");
    waveform->add_option("--n-terms", c.n_terms, "bump series terms")->capture_default_str();
    waveform->add_flag("--attenuation", c.attenuation, "write attenuation_db(t) instead of a(t)");
    add_grid_flags(waveform);
    waveform->add_option("-o,--output", c.out_path, "output CSV (default stdout)");

    CLI::App* analyze = app.add_subcommand("analyze", "expand a signal into lattice coefficients");
    analyze->add_option("--signal", c.signal,
                        "atom | gaussian | monocycle | hermite:L | displaced:XI,ETA | "
                        "file:PATH | diff:A,B")
        ->capture_default_str();
    analyze->add_option("-M", c.M, "time index range |m| <= M")->capture_default_str();
    analyze->add_option("-N", c.N, "frequency index range |n| <= N")->capture_default_str();
    add_grid_flags(analyze);
    analyze->add_option("-o,--output", c.out_path, "coefficient JSON output");

    CLI::App* synth = app.add_subcommand("synthesize", "reconstruct a signal from coefficients");
    synth->add_option("--coeffs", c.coeffs_path, "coefficient JSON input")->required();
    add_grid_flags(synth);
    synth->add_option("-o,--output", c.out_path, "output CSV (default stdout)");

    CLI::App* plot = app.add_subcommand("plot", "render coefficients or the attenuation curve");
    CLI::Option* plot_coeffs = plot->add_option("--coeffs", c.coeffs_path, "coefficient JSON input");
    CLI::Option* plot_att =
        plot->add_flag("--attenuation", c.attenuation, "plot the attenuation curve");
    plot_coeffs->excludes(plot_att);
    plot->add_option("--overlay", c.overlays, "attenuation overlays: gaussian, approx3, approx5")
        ->delimiter(',');
    plot->add_option("--t-max", c.t_max, "attenuation range end (default 8 sqrt(pi))");
    plot->add_option("--dt", c.dt, "attenuation sampling step");
    plot->add_option("--magnify", c.style.magnify, "marker radius multiplier")->capture_default_str();
    plot->add_option("--cell-px", c.style.cell_px, "cell size in pixels")->capture_default_str();
    plot->add_option("--radius-scale", c.style.radius_scale, "marker radius per unit amplitude, in cells")
        ->capture_default_str();
    plot->add_flag("--no-axes", c.no_axes, "suppress the coordinate axes");
    plot->add_option("-o,--output", c.out_path, "output SVG (default stdout)");

    CLI::App* amb = app.add_subcommand("ambiguity", "displaced-atom coefficients / displacement estimation");
    amb->add_option("--xi", c.xi, "time displacement");
    amb->add_option("--eta", c.eta, "frequency displacement");
    amb->add_option("-M", c.M, "time index range")->capture_default_str();
    amb->add_option("-N", c.N, "frequency index range")->capture_default_str();
    amb->add_flag("--estimate", c.estimate, "estimate (xi, eta) from --coeffs instead");
    amb->add_option("--coeffs", c.coeffs_path, "coefficient JSON input for --estimate");
    amb->add_option("--resolution", c.resolution, "estimation resolution")->capture_default_str();
    amb->add_option("-o,--output", c.out_path, "coefficient JSON output");

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_flag("--list", c.list_checks, "list check names and exit");
    verify->add_option("--tol-alpha", c.tols.tol_alpha)->capture_default_str();
    verify->add_option("--tol-norm", c.tols.tol_norm)->capture_default_str();
    verify->add_option("--tol-form", c.tols.tol_form)->capture_default_str();
    verify->add_option("--tol-fourier", c.tols.tol_fourier)->capture_default_str();
    verify->add_option("--tol-gram", c.tols.tol_gram)->capture_default_str();
    verify->add_option("--tol-energy", c.tols.tol_energy)->capture_default_str();
    verify->add_option("--tol-recon", c.tols.tol_recon)->capture_default_str();
    verify->add_option("--tol-anticommute", c.tols.tol_anticommute)->capture_default_str();
    verify->add_option("--tol-covariance", c.tols.tol_covariance)->capture_default_str();
    verify->add_option("--tol-superconv", c.tols.tol_superconv)->capture_default_str();
    verify->add_option("--tol-displacement", c.tols.tol_displacement)->capture_default_str();
    verify->add_option("--tol-score", c.tols.tol_score)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(alpha)) return cmd_alpha(c, command);
        if (app.got_subcommand(waveform)) return cmd_waveform(c, command);
        if (app.got_subcommand(analyze)) return cmd_analyze(c, command);
        if (app.got_subcommand(synth)) return cmd_synthesize(c, command);
        if (app.got_subcommand(plot)) return cmd_plot(c, command, svg_command);
        if (app.got_subcommand(amb)) {
            if (c.estimate && c.coeffs_path.empty())
                throw tf::parse_error("ambiguity: --estimate requires --coeffs");
            return cmd_ambiguity(c, command);
        }
        if (app.got_subcommand(verify)) return cmd_verify(c);
    } catch (const tf::parse_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const tf::grid_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 2;
    } catch (const tf::flat_correlation_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 2;
    }
    return 0;
}
