#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "thetaframe/verify.hpp"

using namespace thetaframe;

namespace {
std::size_t count_substr(const std::string& hay, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1))
        ++count;
    return count;
}
}  // namespace

TEST_CASE("fixed six-digit formatting") {
    using detail::fmt6;
    REQUIRE(fmt6(0.0) == "0");
    REQUIRE(fmt6(-0.0) == "0");
    REQUIRE(fmt6(40.0) == "40");
    REQUIRE(fmt6(1.5) == "1.5");
    REQUIRE(fmt6(-2.25) == "-2.25");
    REQUIRE(fmt6(0.000123456789) == "0.000123457");
    REQUIRE(fmt6(123456.789) == "123457");
    REQUIRE(fmt6(1234567.0) == "1234567");  // integers never lose digits
}

TEST_CASE("parity grayscale mapping") {
    REQUIRE(detail::parity_index(0, 0) == 0);
    REQUIRE(detail::parity_index(0, 1) == 1);
    REQUIRE(detail::parity_index(1, 0) == 2);
    REQUIRE(detail::parity_index(-1, -1) == 3);
    REQUIRE(detail::parity_index(-2, 1) == 1);
    REQUIRE(detail::gray_hex(0.95) == "#F2F2F2");
    REQUIRE(detail::gray_hex(0.65) == "#A6A6A6");
}

TEST_CASE("grid render is byte deterministic and structurally complete") {
    CoeffGrid g = CoeffGrid::zeros(2, 1);
    g.at(0, 0) = 0.5;
    g.at(1, -1) = {0.0, 0.25};
    const RenderStyle st{};
    const std::string svg = render_grid(g, st);
    REQUIRE(svg == render_grid(g, st));
    REQUIRE(svg.rfind("<?xml version=\"1.0\" encoding=\"UTF-8\"?>", 0) == 0);
    // 5 x 3 cells of 40 px
    REQUIRE(svg.find("width=\"200\" height=\"120\"") != std::string::npos);
    REQUIRE(count_substr(svg, "<rect") == 15);
    REQUIRE(count_substr(svg, "<line") == 2);  // axes
    REQUIRE(count_substr(svg, "<g transform=") == 2);
    // every marker carries one black and one white half-disk
    REQUIRE(count_substr(svg, "fill=\"#000000\"") == 2);
    REQUIRE(count_substr(svg, "fill=\"#FFFFFF\"") == 2);
    REQUIRE(svg.find("#F2F2F2") != std::string::npos);
    REQUIRE(svg.find("#A6A6A6") != std::string::npos);

    RenderStyle no_axes = st;
    no_axes.show_axes = false;
    REQUIRE(count_substr(render_grid(g, no_axes), "<line") == 0);
}

TEST_CASE("marker geometry encodes magnitude and phase") {
    CoeffGrid g = CoeffGrid::zeros(0, 0);
    g.at(0, 0) = 0.5;  // phase 0
    const RenderStyle st{};
    std::string svg = render_grid(g, st);
    // radius = radius_scale * magnify * |f| * cell = 0.5*1*0.5*40
    REQUIRE(svg.find("rotate(0)") != std::string::npos);
    REQUIRE(count_substr(svg, "scale(10)") == 2);
    // black half-disk sweeps through the visual bottom at zero phase
    REQUIRE(svg.find("M 1 0 A 1 1 0 0 1 -1 0 Z") != std::string::npos);

    g.at(0, 0) = {0.0, 0.5};  // phase pi/2 rotates counterclockwise
    REQUIRE(render_grid(g, st).find("rotate(-90)") != std::string::npos);
    g.at(0, 0) = std::polar(0.5, kPi / 4.0);
    REQUIRE(render_grid(g, st).find("rotate(-45)") != std::string::npos);
}

TEST_CASE("visibility floor scales with magnification") {
    CoeffGrid g = CoeffGrid::zeros(0, 0);
    g.at(0, 0) = 5e-5;  // below the 1e-4 floor at magnify 1
    RenderStyle st{};
    REQUIRE(count_substr(render_grid(g, st), "<g transform=") == 0);
    st.magnify = 10.0;  // floor drops to 1e-5
    REQUIRE(count_substr(render_grid(g, st), "<g transform=") == 1);
}

TEST_CASE("oversized markers clip to the cell with a warning") {
    CoeffGrid g = CoeffGrid::zeros(0, 0);
    g.at(0, 0) = 10.0;
    const RenderStyle st{};
    const std::string svg = render_grid(g, st);
    REQUIRE(svg.find("warning: 1 marker(s) clipped") != std::string::npos);
    REQUIRE(count_substr(svg, "scale(40)") == 2);  // capped at cell_px
    g.at(0, 0) = 0.5;
    REQUIRE(render_grid(g, st).find("warning") == std::string::npos);
}

TEST_CASE("metadata comment carries the style and extra text") {
    CoeffGrid g = CoeffGrid::zeros(1, 1);
    g.at(0, 0) = 1.0;
    const std::string svg = render_grid(g, RenderStyle{}, "source=unit-test");
    REQUIRE(svg.find("<!-- thetaframe ") != std::string::npos);
    REQUIRE(svg.find("M=1 N=1") != std::string::npos);
    REQUIRE(svg.find("cell_px=40") != std::string::npos);
    REQUIRE(svg.find("source=unit-test") != std::string::npos);
}

TEST_CASE("portraits reproduce the stored golden files byte for byte") {
    const Waveform w = make_default_waveform();
    const QuadratureSpec grid = default_grid(8);
    const auto read_file = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        REQUIRE(in.good());
        return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    };
    const std::string dir = TF_GOLDEN_DIR;

    SignalSpec atom_spec;
    const std::string atom_svg = render_grid(analyze(sample(atom_spec, grid, w), 4, 4, w), {});
    REQUIRE(atom_svg == read_file(dir + "/atom_m4.svg"));
    REQUIRE(fnv1a64(atom_svg) == kGoldenAtomHash);

    SignalSpec mono_spec;
    mono_spec.kind = SignalSpec::Kind::monocycle;
    const std::string mono_svg = render_grid(analyze(sample(mono_spec, grid, w), 5, 5, w), {});
    REQUIRE(mono_svg == read_file(dir + "/monocycle_m5.svg"));
    REQUIRE(fnv1a64(mono_svg) == kGoldenMonocycleHash);
}

TEST_CASE("curve render with gaps, overlays, and legend") {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> pts = {
        {0.0, 0.0}, {1.0, 1.0}, {2.0, -inf}, {3.0, 1.0}, {4.0, 0.0}};
    CurveOverlay ov;
    ov.label = "ref";
    ov.points = {{0.0, 0.5}, {4.0, 0.5}};
    const RenderStyle st{};
    const std::string svg = render_curve(pts, st, {ov});
    REQUIRE(svg == render_curve(pts, st, {ov}));
    // the infinity splits the main curve into two polylines; overlay adds one
    REQUIRE(count_substr(svg, "<polyline") == 3);
    REQUIRE(svg.find("stroke-dasharray=\"6,3\"") != std::string::npos);
    REQUIRE(svg.find(">ref</text>") != std::string::npos);

    REQUIRE_THROWS_AS(render_curve({{0.0, 1.0}}, st), std::invalid_argument);
    std::vector<std::pair<double, double>> all_bad = {{0.0, inf}, {1.0, -inf}};
    REQUIRE_THROWS_AS(render_curve(all_bad, st), std::invalid_argument);
}
