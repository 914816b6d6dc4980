// bench.hpp - end-to-end pipeline driver and sweep harness.
//
// A cell is one (method, k, l, theta, epsilon, lambda) combination; the
// sweep runs the Cartesian product, averages runtime over repetitions and
// writes plot-ready CSV/JSON. Runtime is measured around the allocator
// call only.
#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slotmatch/baselines.hpp"
#include "slotmatch/csv.hpp"
#include "slotmatch/graph.hpp"
#include "slotmatch/inventory.hpp"
#include "slotmatch/ombm.hpp"
#include "slotmatch/selection.hpp"
#include "slotmatch/synthetic.hpp"

namespace slotmatch {

enum class Method { OMBM, BM, MDA, TSRT, RA };

inline std::string method_name(Method m) {
    switch (m) {
        case Method::OMBM: return "ombm";
        case Method::BM: return "bm";
        case Method::MDA: return "mda";
        case Method::TSRT: return "tsrt";
        case Method::RA: return "ra";
    }
    return "?";
}

inline Method method_from_name(const std::string& s) {
    if (s == "ombm") return Method::OMBM;
    if (s == "bm") return Method::BM;
    if (s == "mda") return Method::MDA;
    if (s == "tsrt") return Method::TSRT;
    if (s == "ra") return Method::RA;
    throw ValidationError("unknown method: " + s);
}

struct ExperimentConfig {
    // Either CSV paths or a synthetic spec.
    std::string trajectories_path, billboards_path, affinities_path;
    std::optional<SyntheticConfig> synthetic;
    Horizon horizon{0, 40, 10};

    std::vector<int> k_sweep{10};
    std::vector<int> l_sweep{3};
    std::vector<double> theta_sweep{-1.0};
    std::vector<double> epsilon_sweep{0.01};
    std::vector<double> lambda_sweep{100.0};
    std::vector<Method> methods{Method::OMBM, Method::BM, Method::MDA, Method::TSRT, Method::RA};
    int repetitions = 1;
    std::uint64_t seed = 0;
    std::optional<int> bound_override;  // uniform per-tag quota; default ceil(k/l)
};

struct ReportRow {
    std::string method;
    int k = 0, l = 0;
    double theta = 0.0, epsilon = 0.0, lambda = 0.0;
    int matched_slots = 0, matched_tags = 0;
    double influence = 0.0;
    double runtime_ms = 0.0;
    int repetitions = 1;

    auto sort_key() const { return std::tie(method, k, l, theta, epsilon, lambda); }
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::vector<std::string> errors;  // per-cell failures, run continues
    std::map<std::string, std::string> environment;
};

namespace detail {

struct Dataset {
    std::vector<TrajectoryRecord> trajectories;
    std::vector<BillboardRecord> billboards;
    std::vector<TagAffinity> affinities;
};

inline Dataset load_dataset(const ExperimentConfig& cfg) {
    Dataset ds;
    if (cfg.synthetic) {
        auto s = generate_synthetic(*cfg.synthetic);
        ds.trajectories = std::move(s.trajectories);
        ds.billboards = std::move(s.billboards);
        ds.affinities = std::move(s.affinities);
    } else {
        ds.trajectories = load_trajectories(cfg.trajectories_path);
        ds.billboards = load_billboards(cfg.billboards_path);
        ds.affinities = load_affinities(cfg.affinities_path);
    }
    return ds;
}

inline Horizon effective_horizon(const ExperimentConfig& cfg) {
    return cfg.synthetic ? cfg.synthetic->horizon : cfg.horizon;
}

}  // namespace detail

struct PipelineArtifacts {
    SelectionResult selection;
    WeightedBipartiteGraph graph;         // pre-prune
    WeightedBipartiteGraph pruned;
    std::map<std::string, Allocation> allocations;  // by method name
};

struct CellParams {
    int k = 10, l = 3;
    double theta = -1.0, epsilon = 0.01, lambda = 100.0;
};

inline std::vector<int> cell_bounds(const WeightedBipartiteGraph& g,
                                    const std::optional<int>& override_value) {
    if (!override_value) return default_bounds(g);
    if (*override_value < 1) throw ValidationError("bound override must be >= 1");
    return std::vector<int>(g.tags.size(), *override_value);
}

// select -> build graph -> prune -> allocate with every requested method.
// Returns rows (one per method) and the artifacts of this cell.
inline std::vector<ReportRow> run_pipeline(const detail::Dataset& ds, const Horizon& horizon,
                                           const CellParams& p,
                                           const std::vector<Method>& methods,
                                           std::uint64_t seed, int repetitions,
                                           const std::optional<int>& bound_override,
                                           PipelineArtifacts* artifacts = nullptr) {
    const auto slots = expand_slots(ds.billboards, horizon);
    const auto inventory = build_exposure(slots, ds.billboards, ds.trajectories, horizon, p.lambda);
    InfluenceEngine engine(inventory, ds.affinities);
    SelectionResult sel = stochastic_greedy_select(engine, SelectionConfig{p.k, p.l, p.epsilon, seed});
    WeightedBipartiteGraph graph = build_graph(sel, engine);
    WeightedBipartiteGraph pruned = prune(graph, PruneConfig{p.theta});
    const std::vector<int> bounds = cell_bounds(pruned, bound_override);

    std::vector<ReportRow> rows;
    for (Method m : methods) {
        Allocation alloc;
        double total_ms = 0.0;
        for (int rep = 0; rep < std::max(1, repetitions); ++rep) {
            const auto start = std::chrono::steady_clock::now();
            switch (m) {
                case Method::OMBM: alloc = ombm_allocate(pruned, bounds); break;
                case Method::BM: alloc = allocate_bm(pruned); break;
                case Method::MDA: alloc = allocate_mda(pruned); break;
                case Method::TSRT: alloc = allocate_tsrt(pruned, pruned.slot_influence, seed); break;
                case Method::RA: alloc = allocate_random(pruned, seed); break;
            }
            total_ms += std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start).count();
        }
        ReportRow row;
        row.method = method_name(m);
        row.k = p.k;
        row.l = p.l;
        row.theta = p.theta;
        row.epsilon = p.epsilon;
        row.lambda = p.lambda;
        row.matched_slots = alloc.matched_slots();
        row.matched_tags = alloc.matched_tags();
        row.influence = allocation_influence(pruned, alloc, engine);
        row.runtime_ms = total_ms / std::max(1, repetitions);
        row.repetitions = std::max(1, repetitions);
        rows.push_back(row);
        if (artifacts) artifacts->allocations[row.method] = alloc;
    }
    if (artifacts) {
        artifacts->selection = std::move(sel);
        artifacts->graph = std::move(graph);
        artifacts->pruned = std::move(pruned);
    }
    return rows;
}

inline ExperimentReport sweep(const ExperimentConfig& cfg, PipelineArtifacts* first_cell = nullptr) {
    if (cfg.k_sweep.empty() || cfg.l_sweep.empty() || cfg.theta_sweep.empty() ||
        cfg.epsilon_sweep.empty() || cfg.lambda_sweep.empty() || cfg.methods.empty())
        throw ValidationError("sweep lists must be non-empty");
    if (cfg.repetitions < 1) throw ValidationError("repetitions must be >= 1");

    const auto ds = detail::load_dataset(cfg);
    const Horizon horizon = detail::effective_horizon(cfg);
    ExperimentReport report;
    report.environment["seed"] = std::to_string(cfg.seed);
    report.environment["threads"] = std::to_string(detail::thread_cap());
    report.environment["repetitions"] = std::to_string(cfg.repetitions);

    bool first = true;
    for (double lambda : cfg.lambda_sweep)
        for (double epsilon : cfg.epsilon_sweep)
            for (int k : cfg.k_sweep)
                for (int l : cfg.l_sweep)
                    for (double theta : cfg.theta_sweep) {
                        CellParams p{k, l, theta, epsilon, lambda};
                        try {
                            auto rows = run_pipeline(ds, horizon, p, cfg.methods, cfg.seed,
                                                     cfg.repetitions, cfg.bound_override,
                                                     first ? first_cell : nullptr);
                            report.rows.insert(report.rows.end(), rows.begin(), rows.end());
                            first = false;
                        } catch (const std::exception& e) {
                            report.errors.push_back(
                                "cell k=" + std::to_string(k) + " l=" + std::to_string(l) +
                                " theta=" + std::to_string(theta) + ": " + e.what());
                        }
                    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const ReportRow& a, const ReportRow& b) { return a.sort_key() < b.sort_key(); });
    return report;
}

// --- serialization ------------------------------------------------------

inline nlohmann::json selection_to_json(const SelectionResult& sel) {
    nlohmann::json j;
    j["slots"] = nlohmann::json::array();
    for (const auto& s : sel.slots) j["slots"].push_back(s.str());
    j["tags"] = sel.tags;
    j["trace"] = nlohmann::json::array();
    for (const auto& e : sel.trace)
        j["trace"].push_back({{"step", e.step}, {"item", e.item}, {"gain", e.gain}});
    return j;
}

inline std::string report_csv_header() {
    return "method,k,l,theta,epsilon,lambda,matched_slots,matched_tags,influence,runtime_ms,repetitions";
}

inline std::string report_row_csv(const ReportRow& r, bool with_runtime = true) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%g,%g,%g,%d,%d,%.9f,%s,%d", r.method.c_str(), r.k,
                  r.l, r.theta, r.epsilon, r.lambda, r.matched_slots, r.matched_tags, r.influence,
                  with_runtime ? std::to_string(r.runtime_ms).c_str() : "-", r.repetitions);
    return buf;
}

inline void write_report_csv(const ExperimentReport& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << report_csv_header() << "\n";
    for (const auto& r : rep.rows) out << report_row_csv(r) << "\n";
}

inline nlohmann::json report_to_json(const ExperimentReport& rep) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rep.rows)
        j["rows"].push_back({{"method", r.method},
                             {"k", r.k},
                             {"l", r.l},
                             {"theta", r.theta},
                             {"epsilon", r.epsilon},
                             {"lambda", r.lambda},
                             {"matched_slots", r.matched_slots},
                             {"matched_tags", r.matched_tags},
                             {"influence", r.influence},
                             {"runtime_ms", r.runtime_ms},
                             {"repetitions", r.repetitions}});
    j["errors"] = rep.errors;
    j["environment"] = rep.environment;
    return j;
}

// out/<run-id>/{selection.json, graph.json, allocation-<method>.json,
//               report.csv, report.json}
inline void write_run_outputs(const ExperimentReport& rep, const PipelineArtifacts& art,
                              const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream out(out_dir + "/selection.json");
        out << selection_to_json(art.selection).dump(2) << "\n";
    }
    save_graph(art.pruned, out_dir + "/graph.json");
    for (const auto& [name, alloc] : art.allocations)
        save_allocation(art.pruned, alloc, out_dir + "/allocation-" + name + ".json");
    write_report_csv(rep, out_dir + "/report.csv");
    {
        std::ofstream out(out_dir + "/report.json");
        out << report_to_json(rep).dump(2) << "\n";
    }
}

}  // namespace slotmatch
