// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gmqaoa/harness.hpp"
#include "gmqaoa/report.hpp"

using namespace gmqaoa;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.problem = Problem::Sk;
    cfg.n_list = {5};
    cfg.d_list = {2};
    cfg.instances = 4;
    cfg.max_depth = 4;
    cfg.methods = {Method::XM, Method::GM, Method::GMa, Method::GMc};
    cfg.seed = 321;
    OptBudget quick{8, 16, 40, 2};
    cfg.budgets[Method::XM] = quick;
    cfg.budgets[Method::GM] = quick;
    cfg.budgets[Method::GMa] = quick;
    cfg.threads = 2;
    return cfg;
}

}  // namespace

TEST_CASE("xm_plateau is the running maximum") {
    CHECK(xm_plateau({0.1, 0.2, 0.3}) == 0.3);
    CHECK(xm_plateau({0.4, 0.4, 0.4}) == 0.4);
    CHECK(xm_plateau({0.1, 0.4, 0.38, 0.39}) == 0.4);
    CHECK_THROWS_AS(xm_plateau({}), std::invalid_argument);
}

TEST_CASE("critical_depth uses a strict threshold") {
    CHECK(critical_depth({0.1, 0.2, 0.5}, 0.3) == 3);
    CHECK_FALSE(critical_depth({0.1, 0.2, 0.25}, 0.3).has_value());
    CHECK(critical_depth({0.31, 0.1}, 0.3) == 1);
    CHECK_FALSE(critical_depth({0.3}, 0.3).has_value());  // equality does not count
}

TEST_CASE("censored critical-depth aggregation") {
    SUBCASE("all equal") {
        const auto cs = compute_critical_stats({7, 7, 7}, {0.2, 0.2, 0.2});
        CHECK(cs.mean_depth == 7.0);
        CHECK(cs.std_depth == 0.0);
        CHECK(cs.absent == 0);
        CHECK(cs.present == 3);
    }
    SUBCASE("absent excluded and counted") {
        const auto cs =
            compute_critical_stats({5, std::nullopt, 9}, {0.1, std::nullopt, 0.3});
        CHECK(cs.mean_depth == 7.0);
        CHECK(cs.absent == 1);
        CHECK(cs.present == 2);
        CHECK(cs.mean_p == doctest::Approx(0.2));
    }
}

TEST_CASE("run_cell composition matches a direct simulator run for GMc") {
    ExperimentConfig cfg;
    cfg.problem = Problem::Sk;
    cfg.n_list = {4};
    cfg.d_list = {2};
    cfg.instances = 1;
    cfg.max_depth = 1;
    cfg.methods = {Method::GMc};
    cfg.seed = 11;
    const auto cell = run_cell(cfg, 4, 2);
    REQUIRE(cell.curves.methods.count(Method::GMc) == 1);
    const double p = cell.curves.methods.at(Method::GMc).per_instance[0][0];

    const auto inst = generate_sk(4, 2, mix_seed(11, 0));
    const auto sp = enumerate_spectrum(inst);
    const double e_est = emin_estimate_quantile(std::sqrt(sigma_squared(inst)), 4);
    const auto sv = run_circuit(sp, constant_angles(e_est, 1), Mixer::GM);
    CHECK(p == doctest::Approx(success_probability(sv, sp)).epsilon(1e-15));
}

TEST_CASE("run_cell end to end") {
    const auto cfg = tiny_config();
    const auto cell = run_cell(cfg, 5, 2);

    SUBCASE("curve shapes and ranges") {
        for (const auto& [m, mc] : cell.curves.methods) {
            (void)m;
            CHECK(mc.per_instance.size() == 4);
            CHECK(mc.mean.size() == 4);
            for (const auto& row : mc.per_instance) {
                REQUIRE(row.size() == 4);
                for (double p : row) {
                    CHECK(p >= 0.0);
                    CHECK(p <= 1.0 + 1e-12);
                }
            }
        }
    }

    SUBCASE("layer-wise curves are monotone per instance") {
        for (Method m : {Method::XM, Method::GM}) {
            for (const auto& row : cell.curves.methods.at(m).per_instance)
                for (std::size_t k = 0; k + 1 < row.size(); ++k)
                    CHECK(row[k + 1] >= row[k] - 1e-12);
        }
    }

    SUBCASE("aggregates recompute from the per-instance matrices") {
        const auto& gm = cell.curves.methods.at(Method::GM);
        for (std::size_t k = 0; k < gm.mean.size(); ++k) {
            double s = 0.0;
            for (const auto& row : gm.per_instance) s += row[k];
            CHECK(gm.mean[k] == doctest::Approx(s / 4.0).epsilon(1e-14));
        }
    }

    SUBCASE("plateau and critical stats are present") {
        CHECK(cell.xm_plateau_levels.size() == 4);
        REQUIRE(cell.critical.count(Method::GM) == 1);
        REQUIRE(cell.critical.count(Method::GMa) == 1);
        const auto& cs = cell.critical.at(Method::GM);
        CHECK(cs.depths.size() == 4);
        CHECK(cs.present + cs.absent == 4);
    }

    SUBCASE("GMa angle statistics recorded") {
        REQUIRE(cell.gma_angles.has_value());
        CHECK(cell.gma_angles->beta_mean.size() == 4);
    }

    SUBCASE("deterministic across repeat and thread counts") {
        auto cfg1 = cfg;
        cfg1.threads = 1;
        const auto a = run_cell(cfg1, 5, 2);
        const auto b = run_cell(cfg, 5, 2);
        CHECK(cell_to_json(a).dump() == cell_to_json(b).dump());
    }
}

TEST_CASE("run_cell rejects cells outside the grid") {
    const auto cfg = tiny_config();
    CHECK_THROWS_AS(run_cell(cfg, 6, 2), std::invalid_argument);
    CHECK_THROWS_AS(run_cell(cfg, 5, 3), std::invalid_argument);
}

TEST_CASE("run_sweep serialization round trip and failure context") {
    auto cfg = tiny_config();
    cfg.instances = 2;
    cfg.max_depth = 3;
    const auto res = run_sweep(cfg, "rawtext");
    CHECK(res.cells.size() == 1);
    CHECK(res.tables.size() == 2);  // GM and GMa vs the XM plateau

    const json j = sweep_to_json(res);
    CHECK(j.at("config_raw") == "rawtext");
    CHECK(j.at("cells").size() == 1);
    CHECK(j.at("critical_tables").size() == 2);

    const std::string flat = flat_csv(res);
    std::istringstream lines(flat);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "problem,D,n,instance,method,depth,p_success");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 4 * 2 * 3);  // methods * instances * depths

    const std::string curves = curves_csv(res);
    CHECK(curves.substr(0, curves.find('\n')) == "problem,D,n,method,depth,p_mean,p_std");

    // A GMc cell on a zero-variance instance aborts with the cell named.
    ExperimentConfig degenerate;
    degenerate.problem = Problem::MaxCutHypergraph;
    degenerate.n_list = {2};
    degenerate.d_list = {2};
    degenerate.instances = 4;  // some seed in 0..3 yields the empty instance
    degenerate.max_depth = 1;
    degenerate.methods = {Method::GMc};
    degenerate.seed = 1;
    bool failed = false;
    try {
        run_sweep(degenerate);
    } catch (const degenerate_estimate_error& e) {
        failed = true;
        CHECK(std::string(e.what()).find("cell (maxcut, n=2, D=2)") != std::string::npos);
    }
    CHECK(failed);
}

TEST_CASE("report emission") {
    auto cfg = tiny_config();
    cfg.instances = 2;
    cfg.max_depth = 3;
    const auto res = run_sweep(cfg, "{}");
    const json results = sweep_to_json(res);
    const auto dir = std::filesystem::temp_directory_path() / "gmqaoa_report_test";
    std::filesystem::remove_all(dir);

    for (const std::string fig : {"fig2", "fig3", "fig4", "fig5", "fig6"})
        CHECK_NOTHROW(write_report(results, fig, dir, true));
    CHECK(std::filesystem::exists(dir / "fig2.csv"));
    CHECK(std::filesystem::exists(dir / "fig3.csv"));
    CHECK(std::filesystem::exists(dir / "fig4.csv"));
    CHECK(std::filesystem::exists(dir / "fig3.svg"));

    // fig2 row count: methods * depths per cell, plus header.
    std::istringstream lines(read_file(dir / "fig2.csv"));
    std::string line;
    int rows = -1;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 4 * 3);

    // Reports on sweeps lacking XM name the missing method.
    auto no_xm = cfg;
    no_xm.methods = {Method::GM};
    const json r2 = sweep_to_json(run_sweep(no_xm, "{}"));
    bool named = false;
    try {
        write_report(r2, "fig3", dir);
    } catch (const std::runtime_error& e) {
        named = std::string(e.what()).find("XM") != std::string::npos;
    }
    CHECK(named);

    // Determinism of report output.
    const std::string first = read_file(dir / "fig2.csv");
    write_report(results, "fig2", dir);
    CHECK(read_file(dir / "fig2.csv") == first);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep results are byte-identical across reruns") {
    auto cfg = tiny_config();
    cfg.instances = 2;
    cfg.max_depth = 2;
    const auto a = sweep_to_json(run_sweep(cfg, "cfg")).dump(2);
    const auto b = sweep_to_json(run_sweep(cfg, "cfg")).dump(2);
    CHECK(a == b);
}
