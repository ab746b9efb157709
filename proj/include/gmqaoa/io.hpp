// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

// JSON / CSV serialization. All emitted files are deterministic: object keys
// are sorted, doubles use shortest round-trip formatting, and nothing
// timestamped is ever written.

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmqaoa/analytic.hpp"
#include "gmqaoa/hubo.hpp"
#include "gmqaoa/optimize.hpp"
#include "gmqaoa/schedule.hpp"
#include "gmqaoa/statevector.hpp"
#include "gmqaoa/variational.hpp"

namespace gmqaoa {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

inline json instance_to_json(const HuboInstance& inst) {
    json terms = json::array();
    for (const auto& t : inst.terms) terms.push_back({{"sites", t.sites}, {"coeff", t.coeff}});
    return json{{"n", inst.n}, {"order", inst.order}, {"label", inst.label}, {"terms", terms}};
}

inline HuboInstance instance_from_json(const json& j) {
    HuboInstance inst;
    inst.n = j.at("n").get<int>();
    inst.order = j.at("order").get<int>();
    inst.label = j.value("label", std::string{});
    for (const auto& t : j.at("terms")) {
        inst.terms.push_back(
            HuboTerm{t.at("sites").get<std::vector<int>>(), t.at("coeff").get<double>()});
    }
    inst.validate();
    return inst;
}

inline void save_instance(const HuboInstance& inst, const std::filesystem::path& path) {
    write_file(path, instance_to_json(inst).dump(2) + "\n");
}

inline HuboInstance load_instance(const std::filesystem::path& path) {
    return instance_from_json(json::parse(read_file(path)));
}

// ---------------------------------------------------------------------------
// Schedules and traces
// ---------------------------------------------------------------------------

inline std::string to_string(Mixer m) { return m == Mixer::GM ? "GM" : "XM"; }

inline Mixer mixer_from_string(const std::string& s) {
    if (s == "GM") return Mixer::GM;
    if (s == "XM") return Mixer::XM;
    throw std::invalid_argument("unknown mixer: " + s);
}

inline json trace_to_json(const LayerwiseTrace& t) {
    return json{{"mixer", to_string(t.mixer)},
                {"betas", t.schedule.betas},
                {"gammas", t.schedule.gammas},
                {"p_success", t.p_success},
                {"evals", t.evals}};
}

inline LayerwiseTrace trace_from_json(const json& j) {
    LayerwiseTrace t;
    t.mixer = mixer_from_string(j.at("mixer").get<std::string>());
    t.schedule = ParamSchedule(j.at("betas").get<std::vector<double>>(),
                               j.at("gammas").get<std::vector<double>>());
    t.p_success = j.at("p_success").get<std::vector<double>>();
    t.evals = j.at("evals").get<std::vector<long>>();
    return t;
}

/// Analytically pre-optimized schedules share the schedule layout and add
/// provenance fields.
inline json preopt_to_json(const AnalyticPreopt& pre) {
    return json{{"mixer", "GM"},
                {"source", "analytic"},
                {"mode", to_string(pre.mode)},
                {"e_min_est", pre.e_min_est},
                {"sigma2", pre.sigma2},
                {"betas", pre.schedule.betas},
                {"gammas", pre.schedule.gammas},
                {"objective", pre.objective}};
}

// ---------------------------------------------------------------------------
// Optimization budgets
// ---------------------------------------------------------------------------

inline json budget_to_json(const OptBudget& b) {
    return json{{"grid_beta", b.grid_beta},
                {"grid_gamma", b.grid_gamma},
                {"refine_evals", b.refine_evals},
                {"multistart", b.multistart}};
}

inline OptBudget budget_from_json(const json& j) {
    OptBudget b;
    b.grid_beta = j.value("grid_beta", b.grid_beta);
    b.grid_gamma = j.value("grid_gamma", b.grid_gamma);
    b.refine_evals = j.value("refine_evals", b.refine_evals);
    b.multistart = j.value("multistart", b.multistart);
    return b;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Minimal CSV writer with a fixed header; values are preformatted strings.
class CsvWriter {
  public:
    explicit CsvWriter(std::string header) { out_ << header << "\n"; }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
    }

    std::string str() const { return out_.str(); }

  private:
    std::ostringstream out_;
};

/// Debug dump of a statevector: one row per basis state.
inline std::string amplitudes_csv(const StateVector& sv) {
    CsvWriter csv("z,re,im,prob");
    for (std::uint64_t z = 0; z < sv.size(); ++z) {
        csv.row({std::to_string(z), format_double(sv.amps[z].real()),
                 format_double(sv.amps[z].imag()), format_double(std::norm(sv.amps[z]))});
    }
    return csv.str();
}

}  // namespace gmqaoa
