// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

// Figure-data emission from a stored results file. The CSVs are the
// canonical output; the optional SVGs are self-contained line charts for
// quick inspection, with no plotting dependency.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "gmqaoa/harness.hpp"
#include "gmqaoa/io.hpp"

namespace gmqaoa {

// ---------------------------------------------------------------------------
// Minimal SVG line charts
// ---------------------------------------------------------------------------

struct Series {
    std::string name;
    std::vector<double> x, y;
};

namespace detail {

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                                  const std::string& ylabel, const std::vector<Series>& series) {
    constexpr double W = 640, H = 440, ML = 70, MR = 140, MT = 40, MB = 50;
    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#17becf"};
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (double v : s.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
        for (double v : s.y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto X = [&](double v) { return ML + (v - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto Y = [&](double v) { return H - MB - (v - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(W) + "\" height=\"" +
           fmt2(H) + "\" viewBox=\"0 0 " + fmt2(W) + " " + fmt2(H) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt2(W / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
           title + "</text>\n";
    // Axes with 5 ticks each.
    out += "<line x1=\"" + fmt2(ML) + "\" y1=\"" + fmt2(H - MB) + "\" x2=\"" + fmt2(W - MR) +
           "\" y2=\"" + fmt2(H - MB) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fmt2(ML) + "\" y1=\"" + fmt2(MT) + "\" x2=\"" + fmt2(ML) + "\" y2=\"" +
           fmt2(H - MB) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 4.0;
        const double fy = ymin + (ymax - ymin) * t / 4.0;
        out += "<text x=\"" + fmt2(X(fx)) + "\" y=\"" + fmt2(H - MB + 18) +
               "\" text-anchor=\"middle\" font-size=\"10\">" + fmt2(fx) + "</text>\n";
        out += "<text x=\"" + fmt2(ML - 8) + "\" y=\"" + fmt2(Y(fy) + 3) +
               "\" text-anchor=\"end\" font-size=\"10\">" + fmt2(fy) + "</text>\n";
    }
    out += "<text x=\"" + fmt2((ML + W - MR) / 2) + "\" y=\"" + fmt2(H - 12) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + xlabel + "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt2((MT + H - MB) / 2) +
           "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
           fmt2((MT + H - MB) / 2) + ")\">" + ylabel + "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % 7];
        std::string pts;
        for (std::size_t i = 0; i < series[s].x.size(); ++i)
            pts += fmt2(X(series[s].x[i])) + "," + fmt2(Y(series[s].y[i])) + " ";
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        const double ly = MT + 16.0 * static_cast<double>(s);
        out += "<line x1=\"" + fmt2(W - MR + 10) + "\" y1=\"" + fmt2(ly) + "\" x2=\"" +
               fmt2(W - MR + 30) + "\" y2=\"" + fmt2(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + fmt2(W - MR + 36) + "\" y=\"" + fmt2(ly + 3) +
               "\" font-size=\"11\">" + series[s].name + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

inline void require_method(const json& results, const std::string& fig, const std::string& m) {
    for (const auto& entry : results.at("config").at("methods"))
        if (entry.get<std::string>() == m) return;
    throw std::runtime_error(fig + " requires method " + m + ", which the sweep did not run");
}

inline std::string cell_tag(const json& cell) {
    return cell.at("problem").get<std::string>() + "_D" + std::to_string(cell.at("d").get<int>()) +
           "_n" + std::to_string(cell.at("n").get<int>());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Figures
// ---------------------------------------------------------------------------

/// Success probability versus depth, one row per (method, n, D, depth).
inline void write_fig_curves(const json& results, const std::string& fig,
                             const std::filesystem::path& out_dir, bool svg) {
    const auto& cells = results.at("cells");
    if (cells.empty()) throw std::runtime_error(fig + ": results contain no cells");
    if (fig == "fig5") {
        if (results.at("config").at("methods").size() < 2)
            throw std::runtime_error("fig5 compares methods; the sweep ran fewer than two");
    }
    CsvWriter csv("problem,D,n,method,depth,p_mean,p_std");
    for (const auto& cell : cells) {
        for (const auto& [name, mc] : cell.at("methods").items()) {
            const auto mean = mc.at("mean").get<std::vector<double>>();
            const auto std_ = mc.at("std").get<std::vector<double>>();
            for (std::size_t k = 0; k < mean.size(); ++k) {
                csv.row({cell.at("problem").get<std::string>(),
                         std::to_string(cell.at("d").get<int>()),
                         std::to_string(cell.at("n").get<int>()), name, std::to_string(k + 1),
                         format_double(mean[k]), format_double(std_[k])});
            }
        }
    }
    write_file(out_dir / (fig + ".csv"), csv.str());

    if (svg) {
        for (const auto& cell : cells) {
            std::vector<Series> series;
            for (const auto& [name, mc] : cell.at("methods").items()) {
                Series s;
                s.name = name;
                s.y = mc.at("mean").get<std::vector<double>>();
                for (std::size_t k = 0; k < s.y.size(); ++k) s.x.push_back(double(k + 1));
                series.push_back(std::move(s));
            }
            write_file(out_dir / (fig + "_" + detail::cell_tag(cell) + ".svg"),
                       detail::svg_line_chart("P(E_min) vs depth, " + detail::cell_tag(cell),
                                              "depth", "P(E_min)", series));
        }
    }
}

/// Critical crossover depth (and P at it) versus n for one method.
inline void write_fig_critical(const json& results, const std::string& fig,
                               const std::string& method, const std::filesystem::path& out_dir,
                               bool svg) {
    detail::require_method(results, fig, "XM");
    detail::require_method(results, fig, method);
    CsvWriter csv("problem,D,method,n,mean_depth,std_depth,mean_p,std_p,present,absent");
    const std::string problem = results.at("config").at("problem").get<std::string>();
    std::vector<Series> depth_series;
    for (const auto& table : results.at("critical_tables")) {
        if (table.at("method").get<std::string>() != method) continue;
        Series s;
        s.name = "D=" + std::to_string(table.at("d").get<int>());
        for (const auto& row : table.at("rows")) {
            csv.row({problem, std::to_string(table.at("d").get<int>()), method,
                     std::to_string(row.at("n").get<int>()),
                     format_double(row.at("mean_depth").get<double>()),
                     format_double(row.at("std_depth").get<double>()),
                     format_double(row.at("mean_p").get<double>()),
                     format_double(row.at("std_p").get<double>()),
                     std::to_string(row.at("present").get<int>()),
                     std::to_string(row.at("absent").get<int>())});
            if (row.at("present").get<int>() > 0) {
                s.x.push_back(row.at("n").get<int>());
                s.y.push_back(row.at("mean_depth").get<double>());
            }
        }
        depth_series.push_back(std::move(s));
    }
    write_file(out_dir / (fig + ".csv"), csv.str());
    if (svg) {
        write_file(out_dir / (fig + ".svg"),
                   detail::svg_line_chart("critical depth vs n (" + method + ")", "n",
                                          "critical depth", depth_series));
    }
}

/// Mean pre-optimized angles versus layer index.
inline void write_fig_angles(const json& results, const std::filesystem::path& out_dir, bool svg) {
    detail::require_method(results, "fig4", "GMa");
    CsvWriter csv("problem,D,n,layer,beta_mean,beta_std,gamma_mean,gamma_std");
    std::vector<Series> beta_series;
    for (const auto& cell : results.at("cells")) {
        if (!cell.contains("gma_angles")) continue;
        const auto& a = cell.at("gma_angles");
        const auto bm = a.at("beta_mean").get<std::vector<double>>();
        const auto bs = a.at("beta_std").get<std::vector<double>>();
        const auto gm = a.at("gamma_mean").get<std::vector<double>>();
        const auto gs = a.at("gamma_std").get<std::vector<double>>();
        for (std::size_t k = 0; k < bm.size(); ++k) {
            csv.row({cell.at("problem").get<std::string>(),
                     std::to_string(cell.at("d").get<int>()),
                     std::to_string(cell.at("n").get<int>()), std::to_string(k + 1),
                     format_double(bm[k]), format_double(bs[k]), format_double(gm[k]),
                     format_double(gs[k])});
        }
        Series s;
        s.name = detail::cell_tag(cell);
        s.y = bm;
        for (std::size_t k = 0; k < bm.size(); ++k) s.x.push_back(double(k + 1));
        beta_series.push_back(std::move(s));
    }
    if (beta_series.empty()) throw std::runtime_error("fig4: no pre-optimized angles in results");
    write_file(out_dir / "fig4.csv", csv.str());
    if (svg) {
        write_file(out_dir / "fig4.svg", detail::svg_line_chart("mean beta_k vs layer", "layer",
                                                                "beta_k", beta_series));
    }
}

/// Dispatch by figure id: fig2 (P vs depth), fig3 (GM crossover vs n),
/// fig4 (angles vs layer), fig5 (method comparison), fig6 (GMa crossover).
inline void write_report(const json& results, const std::string& figure,
                         const std::filesystem::path& out_dir, bool svg = false) {
    std::filesystem::create_directories(out_dir);
    if (figure == "fig2" || figure == "fig5") {
        write_fig_curves(results, figure, out_dir, svg);
    } else if (figure == "fig3") {
        write_fig_critical(results, "fig3", "GM", out_dir, svg);
    } else if (figure == "fig6") {
        write_fig_critical(results, "fig6", "GMa", out_dir, svg);
    } else if (figure == "fig4") {
        write_fig_angles(results, out_dir, svg);
    } else {
        throw std::invalid_argument("unknown figure id: " + figure);
    }
}

}  // namespace gmqaoa
