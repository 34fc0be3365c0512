#pragma once
// Coefficient JSON interchange: the file format that connects analyze,
// synthesize, and plot.  Object with "M", "N", "lattice_step", and
// "coefficients" (full rectangle, row-major, m outer / n inner), plus a free
// "metadata" object that callers fill with their command line and config.

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "thetaframe/core.hpp"
#include "thetaframe/frame.hpp"

namespace thetaframe {

inline nlohmann::json coeff_to_json(const CoeffGrid& g,
                                    const nlohmann::json& metadata = nullptr) {
    nlohmann::json j;
    j["M"] = g.M;
    j["N"] = g.N;
    j["lattice_step"] = g.lattice.a_step;
    nlohmann::json rows = nlohmann::json::array();
    for (int m = -g.M; m <= g.M; ++m)
        for (int n = -g.N; n <= g.N; ++n) {
            const auto& v = g.at(m, n);
            rows.push_back({{"m", m}, {"n", n}, {"re", v.real()}, {"im", v.imag()}});
        }
    j["coefficients"] = std::move(rows);
    if (!metadata.is_null()) j["metadata"] = metadata;
    return j;
}

inline void write_coeff_json(const std::string& path, const CoeffGrid& g,
                             const nlohmann::json& metadata = nullptr) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write coefficient file '" + path + "'");
    out << coeff_to_json(g, metadata).dump(1) << "\n";
}

inline CoeffGrid coeff_from_json(const nlohmann::json& j, const std::string& origin = "json") {
    if (!j.is_object() || !j.contains("M") || !j.contains("N") || !j.contains("coefficients"))
        throw parse_error(origin + ": expected object with M, N, coefficients");
    const int M = j.at("M").get<int>();
    const int N = j.at("N").get<int>();
    if (M < 0 || N < 0) throw parse_error(origin + ": M and N must be non-negative");
    if (j.contains("lattice_step")) {
        const double step = j.at("lattice_step").get<double>();
        if (std::abs(step - kSqrtPi) > 1e-12)
            throw parse_error(origin + ": lattice_step must be sqrt(pi); only the critical double-density lattice is supported");
    }
    CoeffGrid g = CoeffGrid::zeros(M, N);
    const auto& rows = j.at("coefficients");
    const std::size_t expect = static_cast<std::size_t>(2 * M + 1) * (2 * N + 1);
    if (!rows.is_array() || rows.size() != expect)
        throw parse_error(origin + ": coefficient file has " + std::to_string(rows.size()) +
                          " rows, expected " + std::to_string(expect) + " for M=" +
                          std::to_string(M) + ", N=" + std::to_string(N));
    std::vector<char> seen(expect, 0);
    for (const auto& row : rows) {
        const int m = row.at("m").get<int>();
        const int n = row.at("n").get<int>();
        if (std::abs(m) > M || std::abs(n) > N)
            throw parse_error(origin + ": coefficient site (" + std::to_string(m) + "," +
                              std::to_string(n) + ") lies outside the rectangle");
        const std::size_t idx = g.index(m, n);
        if (seen[idx]) throw parse_error(origin + ": duplicate coefficient site");
        seen[idx] = 1;
        const double re = row.at("re").get<double>();
        const double im = row.at("im").get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw parse_error(origin + ": non-finite coefficient value");
        g.values[idx] = {re, im};
    }
    return g;
}

inline CoeffGrid read_coeff_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open coefficient file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    try {
        return coeff_from_json(j, path);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
}

}  // namespace thetaframe
