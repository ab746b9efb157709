// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: instance generation, single runs, analytic angle
// pre-computation, ensemble sweeps, and figure-data emission.
//
// Exit codes: 0 success, 1 usage, 2 I/O or parse, 3 capacity/degeneracy.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "gmqaoa/harness.hpp"
#include "gmqaoa/io.hpp"
#include "gmqaoa/report.hpp"

namespace fs = std::filesystem;
using namespace gmqaoa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitCompute = 3;

/// File-content problems exit with the parse code even when the library
/// reports them as invalid arguments.
HuboInstance load_instance_checked(const fs::path& path) {
    try {
        return load_instance(path);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("invalid instance file " + path.string() + ": " + e.what());
    }
}

ExperimentConfig parse_config_checked(const std::string& raw, const fs::path& path) {
    try {
        return config_from_json(json::parse(raw));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("invalid config file " + path.string() + ": " + e.what());
    }
}

struct BudgetFlags {
    OptBudget budget;

    void attach(CLI::App* cmd) {
        cmd->add_option("--grid-beta", budget.grid_beta, "beta grid points over [0, pi)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--grid-gamma", budget.grid_gamma, "gamma grid points")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--refine-evals", budget.refine_evals,
                        "local refinement evaluations per start");
        cmd->add_option("--multistart", budget.multistart, "grid points refined locally");
    }
};

int cmd_gen(const std::string& problem, int n, int d, int count, std::uint64_t seed,
            const fs::path& out, double maxcut_sign) {
    fs::create_directories(out);
    for (int i = 0; i < count; ++i) {
        const std::uint64_t inst_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
        const HuboInstance inst = problem == "sk"
                                      ? generate_sk(n, d, inst_seed)
                                      : generate_maxcut_hypergraph(n, d, inst_seed, maxcut_sign);
        const fs::path path = out / ("instance_" + std::to_string(i) + ".json");
        save_instance(inst, path);
        std::cout << path.string() << " n=" << inst.n << " D=" << inst.order
                  << " terms=" << inst.terms.size() << " label=" << inst.label << "\n";
    }
    return kExitOk;
}

int cmd_run(const fs::path& instance_path, const std::string& method, int depth,
            const OptBudget& budget, DampingMode mode, const fs::path& dump_state) {
    const HuboInstance inst = load_instance_checked(instance_path);
    const Spectrum sp = enumerate_spectrum(inst);
    const double sigma2 = sigma_squared(inst);

    json out{{"instance", instance_path.string()},
             {"label", inst.label},
             {"n", inst.n},
             {"method", method},
             {"e_min", sp.e_min},
             {"sigma2", sigma2}};
    if (sigma2 > 0.0 && inst.n >= 2)
        out["e_min_est"] = emin_estimate_quantile(std::sqrt(sigma2), inst.n);
    else
        out["e_min_est"] = nullptr;

    auto prefix_curve = [&](const ParamSchedule& sched) {
        std::vector<double> p;
        StateVector sv = init_uniform(sp.n);
        for (int k = 0; k < depth; ++k) {
            apply_cost(sv, sp, sched.gammas[k]);
            apply_grover_mixer(sv, sched.betas[k]);
            p.push_back(success_probability(sv, sp));
        }
        return p;
    };

    Mixer mixer = Mixer::GM;
    ParamSchedule schedule;
    if (method == "xm" || method == "gm") {
        mixer = method == "xm" ? Mixer::XM : Mixer::GM;
        const LayerwiseTrace trace = optimize_layerwise(sp, mixer, depth, budget);
        schedule = trace.schedule;
        out["mixer"] = to_string(mixer);
        out["betas"] = trace.schedule.betas;
        out["gammas"] = trace.schedule.gammas;
        out["p_success"] = trace.p_success;
        out["evals"] = trace.evals;
    } else if (method == "gma") {
        if (!(sigma2 > 0.0))
            throw degenerate_estimate_error("analytic pre-optimization needs sigma^2 > 0");
        const AnalyticPreopt pre = preoptimize_gm_angles(inst.n, sigma2, depth, budget, mode);
        schedule = pre.schedule;
        out["mixer"] = "GM";
        out["source"] = "analytic";
        out["mode"] = to_string(mode);
        out["betas"] = pre.schedule.betas;
        out["gammas"] = pre.schedule.gammas;
        out["objective"] = pre.objective;
        out["p_success"] = prefix_curve(pre.schedule);
    } else {  // gmc
        if (!(sigma2 > 0.0))
            throw degenerate_estimate_error("constant-angle schedule needs sigma^2 > 0");
        const double e_est = emin_estimate_quantile(std::sqrt(sigma2), inst.n);
        schedule = constant_angles(e_est, depth);
        out["mixer"] = "GM";
        out["betas"] = schedule.betas;
        out["gammas"] = schedule.gammas;
        out["p_success"] = prefix_curve(schedule);
    }
    if (!dump_state.empty())
        write_file(dump_state, amplitudes_csv(run_circuit(sp, schedule, mixer)));
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_angles(int n, double sigma2, const std::string& instance_path, int depth,
               const OptBudget& budget, DampingMode mode) {
    if (!instance_path.empty()) {
        const HuboInstance inst = load_instance_checked(instance_path);
        sigma2 = sigma_squared(inst);
        n = inst.n;
    }
    const AnalyticPreopt pre = preoptimize_gm_angles(n, sigma2, depth, budget, mode);
    json out = preopt_to_json(pre);
    out["n"] = n;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_sweep(const fs::path& config_path, const fs::path& out, int threads) {
    const std::string raw = read_file(config_path);
    ExperimentConfig cfg = parse_config_checked(raw, config_path);
    if (threads > 0) cfg.threads = threads;
    const SweepResult res = run_sweep(cfg, raw);
    fs::create_directories(out);
    write_file(out / "results.json", sweep_to_json(res).dump(2) + "\n");
    write_file(out / "flat.csv", flat_csv(res));
    write_file(out / "curves.csv", curves_csv(res));
    std::cerr << "sweep complete: " << res.cells.size() << " cells -> " << out.string() << "\n";
    return kExitOk;
}

int cmd_report(const fs::path& results_dir, const std::string& figure, const fs::path& out,
               bool svg) {
    const json results = json::parse(read_file(results_dir / "results.json"));
    write_report(results, figure, out, svg);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grover-mixer and transverse-field QAOA benchmark harness for HUBO problems"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate random problem instances");
    std::string gen_problem;
    int gen_n = 6, gen_d = 2, gen_count = 1;
    std::uint64_t gen_seed = 1;
    std::string gen_out = ".";
    double gen_sign = 1.0;
    gen->add_option("problem", gen_problem, "ensemble: sk or maxcut")
        ->required()
        ->check(CLI::IsMember({"sk", "maxcut"}));
    gen->add_option("--n", gen_n, "spin count")->required()->check(CLI::PositiveNumber);
    gen->add_option("--d", gen_d, "maximum interaction order")->required();
    gen->add_option("--count", gen_count, "instances to generate")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "ensemble seed");
    gen->add_option("--out", gen_out, "output directory");
    gen->add_option("--maxcut-sign", gen_sign, "hyperedge coefficient sign (+1 or -1)")
        ->check(CLI::IsMember({1.0, -1.0}));

    // run
    auto* run = app.add_subcommand("run", "optimize/evaluate one instance");
    std::string run_instance, run_method, run_mode = "sumsq", run_dump;
    int run_depth = 0;
    BudgetFlags run_budget;
    run->add_option("--instance", run_instance, "instance JSON file")->required();
    run->add_option("--dump-state", run_dump, "write final-state amplitudes to this CSV file");
    run->add_option("--method", run_method, "xm, gm, gma, or gmc")
        ->required()
        ->check(CLI::IsMember({"xm", "gm", "gma", "gmc"}));
    run->add_option("--depth", run_depth, "circuit depth")->required()->check(CLI::PositiveNumber);
    run->add_option("--mode", run_mode, "analytic damping: sumsq or exact-cf")
        ->check(CLI::IsMember({"sumsq", "exact-cf"}));
    run_budget.attach(run);

    // angles
    auto* angles = app.add_subcommand("angles", "classically pre-optimize a GM schedule");
    int angles_n = 0, angles_depth = 0;
    double angles_sigma2 = 0.0;
    std::string angles_instance, angles_mode = "sumsq";
    BudgetFlags angles_budget;
    auto* opt_sigma = angles->add_option("--sigma2", angles_sigma2, "spectral variance");
    auto* opt_inst = angles->add_option("--instance", angles_instance,
                                        "instance JSON file (sigma^2 computed from it)");
    opt_sigma->excludes(opt_inst);
    opt_inst->excludes(opt_sigma);
    angles->add_option("--n", angles_n, "spin count (required with --sigma2)");
    angles->add_option("--depth", angles_depth, "schedule depth")
        ->required()
        ->check(CLI::PositiveNumber);
    angles->add_option("--mode", angles_mode, "damping: sumsq or exact-cf")
        ->check(CLI::IsMember({"sumsq", "exact-cf"}));
    angles_budget.attach(angles);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a full ensemble experiment");
    std::string sweep_config, sweep_out;
    int sweep_threads = 0;
    sweep->add_option("--config", sweep_config, "experiment config JSON")->required();
    sweep->add_option("--out", sweep_out, "output directory")->required();
    sweep->add_option("--threads", sweep_threads, "worker threads (overrides config)");

    // report
    auto* report = app.add_subcommand("report", "emit per-figure plot data from a sweep");
    std::string report_results, report_figure, report_out;
    bool report_svg = false;
    report->add_option("--results", report_results, "sweep output directory")->required();
    report->add_option("--figure", report_figure, "fig2 | fig3 | fig4 | fig5 | fig6")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6"}));
    report->add_option("--out", report_out, "output directory (default: results dir)");
    report->add_flag("--svg", report_svg, "also emit self-contained SVG charts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_problem, gen_n, gen_d, gen_count, gen_seed, gen_out,
                                          gen_sign);
        if (run->parsed())
            return cmd_run(run_instance, run_method, run_depth, run_budget.budget,
                           damping_mode_from_string(run_mode), run_dump);
        if (angles->parsed()) {
            if (angles_instance.empty() && !(angles_sigma2 > 0.0)) {
                std::cerr << "angles: provide either --sigma2 (with --n) or --instance\n";
                return kExitUsage;
            }
            if (angles_instance.empty() && angles_n < 2) {
                std::cerr << "angles: --n (>= 2) is required with --sigma2\n";
                return kExitUsage;
            }
            return cmd_angles(angles_n, angles_sigma2, angles_instance, angles_depth,
                              angles_budget.budget, damping_mode_from_string(angles_mode));
        }
        if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out, sweep_threads);
        if (report->parsed())
            return cmd_report(report_results, report_figure,
                              report_out.empty() ? report_results : report_out, report_svg);
    } catch (const capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    } catch (const degenerate_estimate_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
