// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

// Ensemble experiment runner: success-probability curves per method and
// depth over random problem instances, transverse-field plateau levels,
// per-instance crossover depths and their censored aggregates. Instances
// run in parallel with static scheduling, so results (and serialized
// bytes) do not depend on the thread count.

#pragma once

#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gmqaoa/analytic.hpp"
#include "gmqaoa/evt.hpp"
#include "gmqaoa/io.hpp"
#include "gmqaoa/statevector.hpp"
#include "gmqaoa/variational.hpp"

namespace gmqaoa {

enum class Problem { Sk, MaxCutHypergraph };
enum class Method { XM, GM, GMa, GMc };

inline std::string to_string(Problem p) { return p == Problem::Sk ? "sk" : "maxcut"; }

inline Problem problem_from_string(const std::string& s) {
    if (s == "sk") return Problem::Sk;
    if (s == "maxcut") return Problem::MaxCutHypergraph;
    throw std::invalid_argument("unknown problem: " + s);
}

inline std::string to_string(Method m) {
    switch (m) {
        case Method::XM: return "XM";
        case Method::GM: return "GM";
        case Method::GMa: return "GMa";
        default: return "GMc";
    }
}

inline Method method_from_string(const std::string& s) {
    if (s == "XM") return Method::XM;
    if (s == "GM") return Method::GM;
    if (s == "GMa") return Method::GMa;
    if (s == "GMc") return Method::GMc;
    throw std::invalid_argument("unknown method: " + s);
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    Problem problem = Problem::Sk;
    std::vector<int> n_list;
    std::vector<int> d_list;
    int instances = 100;
    int max_depth = 64;
    std::vector<Method> methods{Method::XM, Method::GM};
    std::uint64_t seed = 1;
    std::map<Method, OptBudget> budgets;  // per-method overrides
    DampingMode analytic_mode = DampingMode::SumSq;
    double maxcut_sign = 1.0;
    int threads = 0;  // 0 = hardware concurrency

    bool has_method(Method m) const {
        for (Method x : methods)
            if (x == m) return true;
        return false;
    }

    OptBudget budget_for(Method m) const {
        auto it = budgets.find(m);
        return it == budgets.end() ? OptBudget{} : it->second;
    }

    void validate() const {
        if (n_list.empty() || d_list.empty())
            throw std::invalid_argument("config: n_list and d_list must be non-empty");
        for (int n : n_list)
            if (n < 2) throw std::invalid_argument("config: n entries must be >= 2");
        for (int d : d_list)
            if (d < 2) throw std::invalid_argument("config: d entries must be >= 2");
        if (instances < 1) throw std::invalid_argument("config: instances must be >= 1");
        if (max_depth < 1) throw std::invalid_argument("config: max_depth must be >= 1");
        if (methods.empty()) throw std::invalid_argument("config: methods must be non-empty");
    }
};

inline json config_to_json(const ExperimentConfig& c) {
    json methods = json::array();
    for (Method m : c.methods) methods.push_back(to_string(m));
    json budgets = json::object();
    for (const auto& [m, b] : c.budgets) budgets[to_string(m)] = budget_to_json(b);
    return json{{"problem", to_string(c.problem)},
                {"n_list", c.n_list},
                {"d_list", c.d_list},
                {"instances", c.instances},
                {"max_depth", c.max_depth},
                {"methods", methods},
                {"seed", c.seed},
                {"budgets", budgets},
                {"analytic_mode", to_string(c.analytic_mode)},
                {"maxcut_sign", c.maxcut_sign},
                {"threads", c.threads}};
}

inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.problem = problem_from_string(j.at("problem").get<std::string>());
    c.n_list = j.at("n_list").get<std::vector<int>>();
    c.d_list = j.at("d_list").get<std::vector<int>>();
    c.instances = j.value("instances", c.instances);
    c.max_depth = j.value("max_depth", c.max_depth);
    if (j.contains("methods")) {
        c.methods.clear();
        for (const auto& m : j.at("methods")) c.methods.push_back(method_from_string(m));
    }
    c.seed = j.value("seed", c.seed);
    if (j.contains("budgets"))
        for (const auto& [key, val] : j.at("budgets").items())
            c.budgets[method_from_string(key)] = budget_from_json(val);
    c.analytic_mode = damping_mode_from_string(j.value("analytic_mode", std::string{"sumsq"}));
    c.maxcut_sign = j.value("maxcut_sign", c.maxcut_sign);
    c.threads = j.value("threads", c.threads);
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct MethodCurve {
    std::vector<std::vector<double>> per_instance;  // [instance][depth]
    std::vector<double> mean, stddev;               // [depth]
};

/// Per-method curves of one (problem, n, D) cell.
struct CurveSet {
    std::map<Method, MethodCurve> methods;
};

struct AngleStats {
    std::vector<double> beta_mean, beta_std, gamma_mean, gamma_std;  // [layer]
};

struct CriticalStats {
    std::vector<std::optional<int>> depths;        // per instance, 1-based
    std::vector<std::optional<double>> p_at_depth; // aligned with depths
    double mean_depth = 0.0, std_depth = 0.0;
    double mean_p = 0.0, std_p = 0.0;
    int present = 0, absent = 0;
};

struct CellResult {
    Problem problem = Problem::Sk;
    int n = 0, d = 0;
    CurveSet curves;
    std::optional<AngleStats> gma_angles;     // when GMa enabled
    std::vector<double> xm_plateau_levels;    // per instance, when XM enabled
    std::map<Method, CriticalStats> critical; // GM/GMa vs the XM plateau
};

namespace detail {

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double sample_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline int resolve_threads(int requested, int work_items) {
    int t = requested;
    if (t <= 0) {
        if (const char* env = std::getenv("GMQAOA_THREADS")) t = std::atoi(env);
    }
    if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
    if (t <= 0) t = 1;
    return std::min(t, std::max(1, work_items));
}

/// Static block partition; any worker exception aborts the whole map.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::min(std::max(1, threads), std::max(1, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::mutex mu;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += threads) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Plateau and crossover
// ---------------------------------------------------------------------------

/// Saturation level of a transverse-field curve: its maximum over all
/// computed depths (conservative: makes crossing it harder).
inline double xm_plateau(const std::vector<double>& curve) {
    if (curve.empty()) throw std::invalid_argument("xm_plateau: empty curve");
    double m = curve.front();
    for (double p : curve) m = std::max(m, p);
    return m;
}

/// Smallest 1-based depth with curve[k] strictly above the plateau level;
/// absent if never exceeded within the computed range.
inline std::optional<int> critical_depth(const std::vector<double>& gm_curve,
                                         double xm_plateau_level) {
    for (std::size_t k = 0; k < gm_curve.size(); ++k)
        if (gm_curve[k] > xm_plateau_level) return static_cast<int>(k) + 1;
    return std::nullopt;
}

/// Censored aggregation: absent crossovers are excluded from the means and
/// counted separately.
inline CriticalStats compute_critical_stats(const std::vector<std::optional<int>>& depths,
                                            const std::vector<std::optional<double>>& p_at_depth) {
    CriticalStats cs;
    cs.depths = depths;
    cs.p_at_depth = p_at_depth;
    std::vector<double> dd, pp;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (depths[i].has_value()) {
            dd.push_back(static_cast<double>(*depths[i]));
            pp.push_back(p_at_depth[i].value());
        } else {
            ++cs.absent;
        }
    }
    cs.present = static_cast<int>(dd.size());
    cs.mean_depth = detail::mean_of(dd);
    cs.std_depth = detail::sample_std(dd, cs.mean_depth);
    cs.mean_p = detail::mean_of(pp);
    cs.std_p = detail::sample_std(pp, cs.mean_p);
    return cs;
}

struct CriticalRow {
    int n = 0;
    double mean_depth = 0.0, std_depth = 0.0;
    double mean_p = 0.0, std_p = 0.0;
    int present = 0, absent = 0;
};

/// One row per cell (ordered as given), recomputed from the raw
/// per-instance depths so stored aggregates stay auditable.
inline std::vector<CriticalRow> aggregate_critical(const std::vector<const CellResult*>& cells,
                                                   Method method) {
    std::vector<CriticalRow> rows;
    for (const CellResult* cell : cells) {
        const auto it = cell->critical.find(method);
        if (it == cell->critical.end())
            throw std::invalid_argument("aggregate_critical: cell lacks method " +
                                        to_string(method));
        const CriticalStats cs = compute_critical_stats(it->second.depths, it->second.p_at_depth);
        rows.push_back(CriticalRow{cell->n, cs.mean_depth, cs.std_depth, cs.mean_p, cs.std_p,
                                   cs.present, cs.absent});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Cell execution
// ---------------------------------------------------------------------------

namespace detail {

struct InstanceOutcome {
    std::map<Method, std::vector<double>> curves;
    std::vector<double> gma_betas, gma_gammas;
};

inline std::vector<double> prefix_success_curve(const Spectrum& sp, const ParamSchedule& sched,
                                                int max_depth) {
    std::vector<double> p(max_depth, 0.0);
    StateVector sv = init_uniform(sp.n);
    for (int k = 0; k < max_depth; ++k) {
        apply_cost(sv, sp, sched.gammas[k]);
        apply_grover_mixer(sv, sched.betas[k]);
        p[k] = success_probability(sv, sp);
    }
    return p;
}

inline InstanceOutcome run_instance(const ExperimentConfig& cfg, int n, int d,
                                    std::uint64_t instance_index) {
    const std::uint64_t seed = mix_seed(cfg.seed, instance_index);
    const HuboInstance inst = cfg.problem == Problem::Sk
                                  ? generate_sk(n, d, seed)
                                  : generate_maxcut_hypergraph(n, d, seed, cfg.maxcut_sign);
    const Spectrum sp = enumerate_spectrum(inst);
    const double sigma2 = sigma_squared(inst);

    InstanceOutcome out;
    for (Method m : cfg.methods) {
        switch (m) {
            case Method::XM:
            case Method::GM: {
                const Mixer mixer = m == Method::XM ? Mixer::XM : Mixer::GM;
                out.curves[m] =
                    optimize_layerwise(sp, mixer, cfg.max_depth, cfg.budget_for(m)).p_success;
                break;
            }
            case Method::GMa: {
                const AnalyticPreopt pre = preoptimize_gm_angles(
                    n, sigma2, cfg.max_depth, cfg.budget_for(m), cfg.analytic_mode);
                out.curves[m] = prefix_success_curve(sp, pre.schedule, cfg.max_depth);
                out.gma_betas = pre.schedule.betas;
                out.gma_gammas = pre.schedule.gammas;
                break;
            }
            case Method::GMc: {
                if (!(sigma2 > 0.0))
                    throw degenerate_estimate_error(
                        "constant-angle schedule needs sigma^2 > 0 (instance " + inst.label + ")");
                const double e_est = emin_estimate_quantile(std::sqrt(sigma2), n);
                if (e_est == 0.0)
                    throw degenerate_estimate_error(
                        "constant-angle schedule: zero minimum-energy estimate");
                out.curves[m] =
                    prefix_success_curve(sp, constant_angles(e_est, cfg.max_depth), cfg.max_depth);
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

/// Run every instance of one (n, d) cell and aggregate. Any instance
/// failure aborts the whole cell.
inline CellResult run_cell(const ExperimentConfig& cfg, int n, int d) {
    cfg.validate();
    const bool n_ok = std::find(cfg.n_list.begin(), cfg.n_list.end(), n) != cfg.n_list.end();
    const bool d_ok = std::find(cfg.d_list.begin(), cfg.d_list.end(), d) != cfg.d_list.end();
    if (!n_ok || !d_ok) throw std::invalid_argument("run_cell: (n, d) not in the config grid");
    if (d > n) throw std::invalid_argument("run_cell: d exceeds n");

    std::vector<detail::InstanceOutcome> outcomes(cfg.instances);
    detail::parallel_for(cfg.instances, detail::resolve_threads(cfg.threads, cfg.instances),
                         [&](int i) {
                             outcomes[i] =
                                 detail::run_instance(cfg, n, d, static_cast<std::uint64_t>(i));
                         });

    CellResult cell;
    cell.problem = cfg.problem;
    cell.n = n;
    cell.d = d;

    for (Method m : cfg.methods) {
        MethodCurve mc;
        mc.per_instance.reserve(cfg.instances);
        for (const auto& o : outcomes) mc.per_instance.push_back(o.curves.at(m));
        mc.mean.resize(cfg.max_depth);
        mc.stddev.resize(cfg.max_depth);
        std::vector<double> column(cfg.instances);
        for (int k = 0; k < cfg.max_depth; ++k) {
            for (int i = 0; i < cfg.instances; ++i) column[i] = mc.per_instance[i][k];
            mc.mean[k] = detail::mean_of(column);
            mc.stddev[k] = detail::sample_std(column, mc.mean[k]);
        }
        cell.curves.methods[m] = std::move(mc);
    }

    if (cfg.has_method(Method::GMa)) {
        AngleStats st;
        st.beta_mean.resize(cfg.max_depth);
        st.beta_std.resize(cfg.max_depth);
        st.gamma_mean.resize(cfg.max_depth);
        st.gamma_std.resize(cfg.max_depth);
        std::vector<double> col(cfg.instances);
        for (int k = 0; k < cfg.max_depth; ++k) {
            for (int i = 0; i < cfg.instances; ++i) col[i] = outcomes[i].gma_betas[k];
            st.beta_mean[k] = detail::mean_of(col);
            st.beta_std[k] = detail::sample_std(col, st.beta_mean[k]);
            for (int i = 0; i < cfg.instances; ++i) col[i] = outcomes[i].gma_gammas[k];
            st.gamma_mean[k] = detail::mean_of(col);
            st.gamma_std[k] = detail::sample_std(col, st.gamma_mean[k]);
        }
        cell.gma_angles = std::move(st);
    }

    if (cfg.has_method(Method::XM)) {
        const auto& xm = cell.curves.methods.at(Method::XM);
        for (int i = 0; i < cfg.instances; ++i)
            cell.xm_plateau_levels.push_back(xm_plateau(xm.per_instance[i]));

        for (Method m : {Method::GM, Method::GMa}) {
            if (!cfg.has_method(m)) continue;
            const auto& curves = cell.curves.methods.at(m);
            std::vector<std::optional<int>> depths(cfg.instances);
            std::vector<std::optional<double>> ps(cfg.instances);
            for (int i = 0; i < cfg.instances; ++i) {
                depths[i] = critical_depth(curves.per_instance[i], cell.xm_plateau_levels[i]);
                if (depths[i].has_value()) ps[i] = curves.per_instance[i][*depths[i] - 1];
            }
            cell.critical[m] = compute_critical_stats(depths, ps);
        }
    }
    return cell;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct CriticalTable {
    Method method = Method::GM;
    int d = 0;
    std::vector<CriticalRow> rows;  // one per n, in n_list order
};

struct SweepResult {
    ExperimentConfig config;
    std::string config_raw;  // exact input bytes, echoed for provenance
    std::vector<CellResult> cells;  // d-major, n-minor order
    std::vector<CriticalTable> tables;
};

namespace detail {

/// Re-throw a cell failure with the cell named, preserving the type so the
/// CLI exit-code mapping still applies.
inline CellResult run_cell_named(const ExperimentConfig& cfg, int n, int d) {
    const std::string ctx = "cell (" + to_string(cfg.problem) + ", n=" + std::to_string(n) +
                            ", D=" + std::to_string(d) + "): ";
    try {
        return run_cell(cfg, n, d);
    } catch (const capacity_error& e) {
        throw capacity_error(ctx + e.what());
    } catch (const degenerate_estimate_error& e) {
        throw degenerate_estimate_error(ctx + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(ctx + e.what());
    } catch (const std::domain_error& e) {
        throw std::domain_error(ctx + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(ctx + e.what());
    }
}

}  // namespace detail

inline SweepResult run_sweep(const ExperimentConfig& cfg, std::string config_raw = {}) {
    cfg.validate();
    SweepResult res;
    res.config = cfg;
    res.config_raw = std::move(config_raw);
    for (int d : cfg.d_list)
        for (int n : cfg.n_list) res.cells.push_back(detail::run_cell_named(cfg, n, d));

    if (cfg.has_method(Method::XM)) {
        for (Method m : {Method::GM, Method::GMa}) {
            if (!cfg.has_method(m)) continue;
            for (int d : cfg.d_list) {
                std::vector<const CellResult*> slice;
                for (const auto& cell : res.cells)
                    if (cell.d == d) slice.push_back(&cell);
                res.tables.push_back(CriticalTable{m, d, aggregate_critical(slice, m)});
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace detail {

inline json optional_int_array(const std::vector<std::optional<int>>& v) {
    json arr = json::array();
    for (const auto& x : v) {
        if (x.has_value())
            arr.push_back(*x);
        else
            arr.push_back(nullptr);
    }
    return arr;
}

inline json optional_double_array(const std::vector<std::optional<double>>& v) {
    json arr = json::array();
    for (const auto& x : v) {
        if (x.has_value())
            arr.push_back(*x);
        else
            arr.push_back(nullptr);
    }
    return arr;
}

}  // namespace detail

inline json cell_to_json(const CellResult& cell) {
    json methods = json::object();
    for (const auto& [m, mc] : cell.curves.methods) {
        methods[to_string(m)] = json{
            {"mean", mc.mean}, {"std", mc.stddev}, {"per_instance", mc.per_instance}};
    }
    json j{{"problem", to_string(cell.problem)}, {"n", cell.n}, {"d", cell.d},
           {"methods", methods}};
    if (cell.gma_angles.has_value()) {
        j["gma_angles"] = json{{"beta_mean", cell.gma_angles->beta_mean},
                               {"beta_std", cell.gma_angles->beta_std},
                               {"gamma_mean", cell.gma_angles->gamma_mean},
                               {"gamma_std", cell.gma_angles->gamma_std}};
    }
    if (!cell.xm_plateau_levels.empty()) j["xm_plateau"] = cell.xm_plateau_levels;
    if (!cell.critical.empty()) {
        json crit = json::object();
        for (const auto& [m, cs] : cell.critical) {
            crit[to_string(m)] = json{{"depth", detail::optional_int_array(cs.depths)},
                                      {"p_at_depth", detail::optional_double_array(cs.p_at_depth)},
                                      {"mean_depth", cs.mean_depth},
                                      {"std_depth", cs.std_depth},
                                      {"mean_p", cs.mean_p},
                                      {"std_p", cs.std_p},
                                      {"present", cs.present},
                                      {"absent", cs.absent}};
        }
        j["critical"] = crit;
    }
    return j;
}

inline json sweep_to_json(const SweepResult& res) {
    json cells = json::array();
    for (const auto& c : res.cells) cells.push_back(cell_to_json(c));
    json tables = json::array();
    for (const auto& t : res.tables) {
        json rows = json::array();
        for (const auto& r : t.rows) {
            rows.push_back(json{{"n", r.n},
                                {"mean_depth", r.mean_depth},
                                {"std_depth", r.std_depth},
                                {"mean_p", r.mean_p},
                                {"std_p", r.std_p},
                                {"present", r.present},
                                {"absent", r.absent}});
        }
        tables.push_back(json{{"method", to_string(t.method)}, {"d", t.d}, {"rows", rows}});
    }
    return json{{"format", "gmqaoa-results-v1"},
                {"config", config_to_json(res.config)},
                {"config_raw", res.config_raw},
                {"cells", cells},
                {"critical_tables", tables}};
}

/// One row per (cell, instance, method, depth).
inline std::string flat_csv(const SweepResult& res) {
    CsvWriter csv("problem,D,n,instance,method,depth,p_success");
    for (const auto& cell : res.cells) {
        for (const auto& [m, mc] : cell.curves.methods) {
            for (std::size_t i = 0; i < mc.per_instance.size(); ++i) {
                for (std::size_t k = 0; k < mc.per_instance[i].size(); ++k) {
                    csv.row({to_string(cell.problem), std::to_string(cell.d),
                             std::to_string(cell.n), std::to_string(i), to_string(m),
                             std::to_string(k + 1), format_double(mc.per_instance[i][k])});
                }
            }
        }
    }
    return csv.str();
}

/// Mean/std curve per (cell, method, depth).
inline std::string curves_csv(const SweepResult& res) {
    CsvWriter csv("problem,D,n,method,depth,p_mean,p_std");
    for (const auto& cell : res.cells) {
        for (const auto& [m, mc] : cell.curves.methods) {
            for (std::size_t k = 0; k < mc.mean.size(); ++k) {
                csv.row({to_string(cell.problem), std::to_string(cell.d), std::to_string(cell.n),
                         to_string(m), std::to_string(k + 1), format_double(mc.mean[k]),
                         format_double(mc.stddev[k])});
            }
        }
    }
    return csv.str();
}

}  // namespace gmqaoa
