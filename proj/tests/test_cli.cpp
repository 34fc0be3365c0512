// End-to-end tests that shell out to the CLI binary (path injected by the
// build as TF_CLI_PATH).  Covers the exit-code contract: 0 success, 1 usage
// or input errors, 2 numerical failures.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "thetaframe/io.hpp"
#include "thetaframe/signals.hpp"

using namespace thetaframe;
using Catch::Approx;

namespace {

struct CmdResult {
    int status = -1;
    std::string output;  // stdout + stderr
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(TF_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    const int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

// first number following the key on its line
double value_after(const std::string& out, const std::string& key) {
    const std::size_t p = out.find(key);
    REQUIRE(p != std::string::npos);
    const std::size_t eol = out.find('\n', p + key.size());
    return std::stod(out.substr(p + key.size(), eol - p - key.size()));
}

}  // namespace

TEST_CASE("version and usage errors") {
    REQUIRE(run_cli("--version").status == 0);
    REQUIRE(run_cli("--version").output.find("0.1.0") != std::string::npos);
    REQUIRE(run_cli("").status == 1);           // missing subcommand
    REQUIRE(run_cli("frobnicate").status == 1);  // unknown subcommand
    REQUIRE(run_cli("--help").status == 0);
}

TEST_CASE("alpha text and json output") {
    const CmdResult r = run_cli("alpha --count 6");
    REQUIRE(r.status == 0);
    REQUIRE(r.output.find("alpha[ 1] = 0.501052") != std::string::npos);
    REQUIRE(r.output.find("alpha[ 6] = 0.225906") != std::string::npos);

    const CmdResult j = run_cli("alpha --count 4 --json -o tf_cli_alpha.json");
    REQUIRE(j.status == 0);
    std::ifstream in("tf_cli_alpha.json");
    nlohmann::json doc;
    in >> doc;
    REQUIRE(doc.at("count") == 4);
    REQUIRE(doc.at("values")[0].get<double>() == Approx(0.5010520735984253).margin(1e-9));
    REQUIRE(doc.at("metadata").at("command").get<std::string>().find("alpha") !=
            std::string::npos);
    std::remove("tf_cli_alpha.json");

    REQUIRE(run_cli("alpha --count 0").status == 1);
    REQUIRE(run_cli("alpha --count 16 --quad-points 100").status == 1);
}

TEST_CASE("waveform csv output") {
    REQUIRE(run_cli("waveform -o tf_cli_wave.csv").status == 0);
    const SampledSignal s = read_signal_csv("tf_cli_wave.csv");
    const std::size_t mid = s.size() / 2;
    REQUIRE(s.time(mid) == Approx(0.0).margin(1e-12));
    REQUIRE(s.samples[mid].real() == Approx(0.7215823491).margin(1e-9));
    std::remove("tf_cli_wave.csv");

    REQUIRE(run_cli("waveform --attenuation -o tf_cli_att.csv").status == 0);
    const SampledSignal a = read_signal_csv("tf_cli_att.csv");
    REQUIRE(a.samples[a.size() / 2].real() == Approx(0.0).margin(1e-12));
    REQUIRE(a.samples[a.size() / 2 + 128].real() < -20.0);  // 2 lattice steps out
    std::remove("tf_cli_att.csv");
}

TEST_CASE("analyze reports energy and writes coefficients") {
    const CmdResult r = run_cli("analyze --signal atom -M 8 -N 8 -o tf_cli_atom.json");
    REQUIRE(r.status == 0);
    REQUIRE(value_after(r.output, "signal energy") == Approx(1.0).margin(1e-6));
    REQUIRE(value_after(r.output, "coefficient energy") == Approx(1.0).margin(1e-6));
    const CoeffGrid g = read_coeff_json("tf_cli_atom.json");
    REQUIRE(g.M == 8);
    REQUIRE(std::abs(g.at(0, 0) - std::complex<double>(1.0, 0.0)) < 1e-8);

    REQUIRE(run_cli("analyze --signal hermite:abc").status == 1);
    REQUIRE(run_cli("analyze --signal displaced:1").status == 1);
    // grid too small for the rectangle: numerical error
    REQUIRE(run_cli("analyze --signal atom --t-min -5 --t-max 5 -M 8 -N 8").status == 2);
}

TEST_CASE("synthesize round trip") {
    const CmdResult r = run_cli("synthesize --coeffs tf_cli_atom.json -o tf_cli_rec.csv");
    REQUIRE(r.status == 0);
    REQUIRE(value_after(r.output, "reconstruction energy") == Approx(1.0).margin(1e-3));
    const SampledSignal rec = read_signal_csv("tf_cli_rec.csv");
    const std::size_t mid = rec.size() / 2;
    REQUIRE(rec.samples[mid].real() == Approx(0.7215823491).margin(1e-5));
    std::remove("tf_cli_rec.csv");

    REQUIRE(run_cli("synthesize --coeffs no_such.json").status == 1);
    {
        std::ofstream bad("tf_cli_bad.json");
        bad << "{ nope";
    }
    REQUIRE(run_cli("synthesize --coeffs tf_cli_bad.json").status == 1);
    std::remove("tf_cli_bad.json");
}

TEST_CASE("truncated coefficient files are rejected with the row count") {
    std::ifstream in("tf_cli_atom.json");
    nlohmann::json doc;
    in >> doc;
    doc["coefficients"].erase(doc["coefficients"].size() - 1);
    {
        std::ofstream out("tf_cli_trunc.json");
        out << doc.dump(1);
    }
    const CmdResult r = run_cli("synthesize --coeffs tf_cli_trunc.json");
    REQUIRE(r.status == 1);
    REQUIRE(r.output.find("rows, expected") != std::string::npos);
    std::remove("tf_cli_trunc.json");
}

TEST_CASE("plot renders deterministically") {
    const CmdResult p1 = run_cli("plot --coeffs tf_cli_atom.json");
    const CmdResult p2 = run_cli("plot --coeffs tf_cli_atom.json");
    REQUIRE(p1.status == 0);
    REQUIRE(p1.output == p2.output);
    REQUIRE(p1.output.find("<svg") != std::string::npos);

    const CmdResult m = run_cli("plot --coeffs tf_cli_atom.json --magnify 30 --no-axes");
    REQUIRE(m.status == 0);
    REQUIRE(m.output != p1.output);

    REQUIRE(run_cli("plot --attenuation --overlay gaussian,approx3,approx5 -o tf_cli_att.svg")
                .status == 0);
    std::ifstream svg("tf_cli_att.svg");
    std::string body((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
    REQUIRE(body.find("<svg") != std::string::npos);
    REQUIRE(body.find("gaussian") != std::string::npos);
    std::remove("tf_cli_att.svg");

    REQUIRE(run_cli("plot").status == 1);                                // no mode
    REQUIRE(run_cli("plot --coeffs tf_cli_atom.json --attenuation").status == 1);  // both
    REQUIRE(run_cli("plot --attenuation --overlay sinc").status == 1);
}

TEST_CASE("ambiguity forward and inverse") {
    const CmdResult f = run_cli("ambiguity --xi 0.3 --eta 0.5 -M 4 -N 4 -o tf_cli_amb.json");
    REQUIRE(f.status == 0);
    const double xi_used = value_after(f.output, "xi used");
    // snapped to the nearest multiple of sqrt(pi)/64
    const double dt = kSqrtPi / 64.0;
    REQUIRE(xi_used == Approx(dt * std::llround(0.3 / dt)).margin(1e-12));

    const CmdResult e = run_cli("ambiguity --estimate --coeffs tf_cli_amb.json");
    REQUIRE(e.status == 0);
    REQUIRE(value_after(e.output, "xi ") == Approx(xi_used).margin(1e-3));
    REQUIRE(value_after(e.output, "eta") == Approx(0.5).margin(1e-3));
    REQUIRE(value_after(e.output, "score") > 1.0 - 1e-6);
    std::remove("tf_cli_amb.json");

    REQUIRE(run_cli("ambiguity --estimate").status == 1);  // missing --coeffs
}

TEST_CASE("ambiguity estimation rejects a non-atom") {
    REQUIRE(run_cli("analyze --signal hermite:4 -M 4 -N 4 -o tf_cli_h4.json").status == 0);
    const CmdResult r = run_cli("ambiguity --estimate --coeffs tf_cli_h4.json");
    REQUIRE(r.status == 2);
    REQUIRE(r.output.find("flat correlation") != std::string::npos);
    std::remove("tf_cli_h4.json");
    std::remove("tf_cli_atom.json");
}

TEST_CASE("verify lists and runs the acceptance checks") {
    const CmdResult l = run_cli("verify --list");
    REQUIRE(l.status == 0);
    REQUIRE(l.output.find("alpha_constants") != std::string::npos);
    REQUIRE(l.output.find("render_determinism") != std::string::npos);

    const CmdResult v = run_cli("verify");
    REQUIRE(v.status == 0);
    REQUIRE(v.output.find("12/12 checks passed") != std::string::npos);

    // an unattainable tolerance must flip the exit code to 2
    const CmdResult bad = run_cli("verify --tol-energy 1e-18");
    REQUIRE(bad.status == 2);
    REQUIRE(bad.output.find("FAIL") != std::string::npos);
}
