#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "pampa/global_flux.hpp"
#include "pampa/time_integration.hpp"

namespace pampa::bench {

/// Shortest representation that reads back to the same double.
inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (r.ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf.data(), r.ptr);
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return out;
}

inline const char* field_name(std::size_t k) {
    static constexpr const char* names[] = {"h", "hu", "hv"};
    return names[k];
}

/// Node table: x, conserved fields, B, h + B and the global flux G.
template <ShallowWaterModel M>
void write_nodes_csv(const std::filesystem::path& path, const M& model, const Grid& grid,
                     const SolutionState<M::kVars>& s, Quadrature quad) {
    constexpr std::size_t N = M::kVars;
    const auto G = assemble_global_flux(model, grid, s, quad);
    auto out = open_output(path);
    out << "x";
    for (std::size_t k = 0; k < N; ++k) out << ',' << field_name(k);
    out << ",B,surface";
    for (std::size_t k = 0; k < N; ++k) out << ",G" << k + 1;
    out << '\n';
    for (std::size_t j = 0; j <= grid.n_cells; ++j) {
        out << format_double(grid.node(j));
        for (std::size_t k = 0; k < N; ++k) out << ',' << format_double(s.points[j][k]);
        out << ',' << format_double(s.bathy_points[j]) << ',' << format_double(s.points[j][0] + s.bathy_points[j]);
        for (std::size_t k = 0; k < N; ++k) out << ',' << format_double(G.G_nodes[j][k]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

/// Cell table: centre, averages, Bbar and hbar + Bbar.
template <std::size_t N>
void write_cells_csv(const std::filesystem::path& path, const Grid& grid, const SolutionState<N>& s) {
    auto out = open_output(path);
    out << "x";
    for (std::size_t k = 0; k < N; ++k) out << ',' << field_name(k);
    out << ",B,surface\n";
    for (std::size_t c = 0; c < grid.n_cells; ++c) {
        out << format_double(grid.center(c));
        for (std::size_t k = 0; k < N; ++k) out << ',' << format_double(s.averages[c][k]);
        out << ',' << format_double(s.bathy_averages[c]) << ','
            << format_double(s.averages[c][0] + s.bathy_averages[c]) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<Diagnostics>& series) {
    auto out = open_output(path);
    out << "time,step,min_h,mass,g_spread\n";
    for (const auto& d : series)
        out << format_double(d.time) << ',' << d.step << ',' << format_double(d.min_h) << ',' << format_double(d.mass)
            << ',' << format_double(d.g_spread) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

struct Curve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Static line plot; colours cycle through a fixed palette.
inline void write_svg(const std::filesystem::path& path, const std::string& title, const std::vector<Curve>& curves) {
    constexpr double W = 720, H = 440, L = 70, R = 160, T = 40, B = 50;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& c : curves) {
        for (double v : c.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
        for (double v : c.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
    }
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) y0 -= 0.5, y1 += 0.5;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    auto out = open_output(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
        << title << "</text>\n";
    out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
        out << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(xv)
            << "</text>\n";
        out << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(yv)
            << "</text>\n";
    }
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& c = curves[i];
        const char* colour = palette[i % 6];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.4\" points=\"";
        for (std::size_t k = 0; k < c.x.size(); ++k) out << px(c.x[k]) << ',' << py(c.y[k]) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 * (i + 1) << "\" fill=\"" << colour
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << c.label << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace pampa::bench
