// slotmatch CLI: gen | select | graph | allocate | baseline | bench | verify
//
// Exit codes: 0 success, 2 validation/configuration error, 3 runtime error.
// SLOTMATCH_THREADS caps parallelism.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slotmatch/slotmatch.hpp"

namespace {

using namespace slotmatch;

struct DatasetArgs {
    std::string trajectories, billboards, affinities;
    std::int64_t t1 = 0, t2 = 40, delta = 10;
    double lambda = 100.0;
};

void add_dataset_flags(CLI::App* app, DatasetArgs& a) {
    app->add_option("--trajectories", a.trajectories, "trajectories.csv path")->required();
    app->add_option("--billboards", a.billboards, "billboards.csv path")->required();
    app->add_option("--affinities", a.affinities, "affinities.csv path")->required();
    app->add_option("--t1", a.t1, "horizon start (seconds)");
    app->add_option("--t2", a.t2, "horizon end (seconds)");
    app->add_option("--delta", a.delta, "slot duration (seconds)");
    app->add_option("--lambda", a.lambda, "exposure radius in meters");
}

struct LoadedDataset {
    SlotInventory inventory;
    std::vector<TagAffinity> affinities;
};

LoadedDataset load(const DatasetArgs& a) {
    auto trajectories = load_trajectories(a.trajectories);
    auto billboards = load_billboards(a.billboards);
    auto affinities = load_affinities(a.affinities);
    Horizon horizon{a.t1, a.t2, a.delta};
    auto slots = expand_slots(billboards, horizon);
    LoadedDataset ds{build_exposure(slots, billboards, trajectories, horizon, a.lambda),
                     std::move(affinities)};
    return ds;
}

std::vector<int> parse_bounds(const WeightedBipartiteGraph& g, const std::string& spec) {
    if (spec == "auto") return default_bounds(g);
    const int b = std::stoi(spec);
    if (b < 1) throw ValidationError("--bound-default must be >= 1 or 'auto'");
    return std::vector<int>(g.tags.size(), b);
}

template <typename T>
std::vector<T> parse_list(const std::string& s) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if constexpr (std::is_same_v<T, int>)
            out.push_back(std::stoi(item));
        else
            out.push_back(std::stod(item));
    }
    if (out.empty()) throw ValidationError("empty list: " + s);
    return out;
}

ExperimentConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    ExperimentConfig cfg;
    const auto get = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    if (auto v = get("trajectories")) cfg.trajectories_path = *v;
    if (auto v = get("billboards")) cfg.billboards_path = *v;
    if (auto v = get("affinities")) cfg.affinities_path = *v;
    if (auto v = get("synthetic_users")) {
        SyntheticConfig s;
        s.n_users = std::stoi(*v);
        if (auto w = get("synthetic_billboards")) s.n_billboards = std::stoi(*w);
        if (auto w = get("synthetic_tags")) s.n_tags = std::stoi(*w);
        if (auto w = get("synthetic_seed")) s.seed = std::stoull(*w);
        if (auto w = get("t1")) s.horizon.t1 = std::stoll(*w);
        if (auto w = get("t2")) s.horizon.t2 = std::stoll(*w);
        if (auto w = get("delta")) s.horizon.delta = std::stoll(*w);
        cfg.synthetic = s;
    }
    if (auto v = get("t1")) cfg.horizon.t1 = std::stoll(*v);
    if (auto v = get("t2")) cfg.horizon.t2 = std::stoll(*v);
    if (auto v = get("delta")) cfg.horizon.delta = std::stoll(*v);
    if (auto v = get("k")) cfg.k_sweep = parse_list<int>(*v);
    if (auto v = get("l")) cfg.l_sweep = parse_list<int>(*v);
    if (auto v = get("theta")) cfg.theta_sweep = parse_list<double>(*v);
    if (auto v = get("epsilon")) cfg.epsilon_sweep = parse_list<double>(*v);
    if (auto v = get("lambda")) cfg.lambda_sweep = parse_list<double>(*v);
    if (auto v = get("repetitions")) cfg.repetitions = std::stoi(*v);
    if (auto v = get("seed")) cfg.seed = std::stoull(*v);
    if (auto v = get("bound")) cfg.bound_override = std::stoi(*v);
    if (auto v = get("methods")) {
        cfg.methods.clear();
        std::stringstream ss(*v);
        std::string m;
        while (std::getline(ss, m, ','))
            if (!m.empty()) cfg.methods.push_back(method_from_name(m));
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"billboard tag-to-slot allocation toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    SyntheticConfig gen_cfg;
    std::string gen_out = "data";
    gen->add_option("--seed", gen_cfg.seed, "rng seed");
    gen->add_option("--users", gen_cfg.n_users, "number of users");
    gen->add_option("--billboards", gen_cfg.n_billboards, "number of billboards");
    gen->add_option("--tags", gen_cfg.n_tags, "number of tags");
    gen->add_option("--records-per-user", gen_cfg.records_per_user, "trajectory rows per user");
    gen->add_option("--t1", gen_cfg.horizon.t1, "horizon start");
    gen->add_option("--t2", gen_cfg.horizon.t2, "horizon end");
    gen->add_option("--delta", gen_cfg.horizon.delta, "slot duration");
    gen->add_option("--out-dir", gen_out, "output directory");

    // select
    auto* sel = app.add_subcommand("select", "stochastic-greedy slot and tag selection");
    DatasetArgs sel_ds;
    add_dataset_flags(sel, sel_ds);
    SelectionConfig sel_cfg;
    std::string sel_out = "selection.json";
    sel->add_option("--k", sel_cfg.k, "slot budget")->required();
    sel->add_option("--l", sel_cfg.l, "tag budget")->required();
    sel->add_option("--epsilon", sel_cfg.epsilon, "stochastic-greedy sample control");
    sel->add_option("--seed", sel_cfg.seed, "rng seed");
    sel->add_option("--out", sel_out, "selection.json output path");

    // graph
    auto* gr = app.add_subcommand("graph", "build the weighted bipartite graph");
    DatasetArgs gr_ds;
    add_dataset_flags(gr, gr_ds);
    std::string gr_sel = "selection.json", gr_out = "graph.json";
    gr->add_option("--selection", gr_sel, "selection.json path");
    gr->add_option("--out", gr_out, "graph.json output path");

    // allocate
    auto* al = app.add_subcommand("allocate", "theta-prune and run the OMBM matcher");
    std::string al_graph = "graph.json", al_out = "allocation.json", al_bound = "auto";
    double al_theta = -1.0;
    al->add_option("--graph", al_graph, "graph.json path");
    al->add_option("--theta", al_theta, "pruning threshold (z-score)");
    al->add_option("--bound-default", al_bound, "per-tag quota, integer or 'auto'");
    al->add_option("--out", al_out, "allocation.json output path");

    // baseline
    auto* bl = app.add_subcommand("baseline", "run a baseline allocator");
    std::string bl_graph = "graph.json", bl_method, bl_out = "allocation.json";
    double bl_theta = -1.0;
    std::uint64_t bl_seed = 0;
    bl->add_option("--graph", bl_graph, "graph.json path");
    bl->add_option("--method", bl_method, "bm|mda|tsrt|ra")->required();
    bl->add_option("--theta", bl_theta, "pruning threshold (z-score)");
    bl->add_option("--seed", bl_seed, "rng seed (tsrt, ra)");
    bl->add_option("--out", bl_out, "allocation.json output path");

    // bench
    auto* be = app.add_subcommand("bench", "run the experiment sweep");
    std::string be_config, be_out;
    std::uint64_t be_seed_flag = 0;
    be->add_option("--config", be_config, "flat key=value config file");
    be->add_option("--out-dir", be_out, "run output directory (default out/run-<seed>)");
    be->add_option("--seed", be_seed_flag, "override config seed");

    // verify
    auto* ve = app.add_subcommand("verify", "lemma and approximation checks vs. the oracle");
    std::string ve_graph = "graph.json", ve_bound = "auto", ve_out;
    double ve_theta = -1.0;
    ve->add_option("--graph", ve_graph, "graph.json path (small instance)");
    ve->add_option("--theta", ve_theta, "pruning threshold (z-score)");
    ve->add_option("--bound-default", ve_bound, "per-tag quota, integer or 'auto'");
    ve->add_option("--out", ve_out, "write the report to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            auto ds = generate_synthetic(gen_cfg);
            std::filesystem::create_directories(gen_out);
            write_trajectories(gen_out + "/trajectories.csv", ds.trajectories);
            write_billboards(gen_out + "/billboards.csv", ds.billboards);
            write_affinities(gen_out + "/affinities.csv", ds.affinities);
            std::cout << "wrote " << ds.trajectories.size() << " trajectory rows, "
                      << ds.billboards.size() << " billboards, " << ds.affinities.size()
                      << " affinity rows to " << gen_out << "\n";
        } else if (*sel) {
            auto ds = load(sel_ds);
            InfluenceEngine engine(ds.inventory, ds.affinities);
            auto result = stochastic_greedy_select(engine, sel_cfg);
            std::ofstream out(sel_out);
            if (!out) throw IoError("cannot write " + sel_out);
            out << selection_to_json(result).dump(2) << "\n";
            std::cout << "selected " << result.slots.size() << " slots, " << result.tags.size()
                      << " tags -> " << sel_out << "\n";
        } else if (*gr) {
            auto ds = load(gr_ds);
            InfluenceEngine engine(ds.inventory, ds.affinities);
            std::ifstream in(gr_sel);
            if (!in) throw IoError("cannot open " + gr_sel);
            nlohmann::json j;
            in >> j;
            std::vector<SlotId> slots;
            for (const auto& s : j.at("slots")) slots.push_back(SlotId::parse(s.get<std::string>()));
            std::vector<std::string> tags = j.at("tags").get<std::vector<std::string>>();
            auto graph = build_graph(tags, slots, engine);
            save_graph(graph, gr_out);
            std::cout << "graph with " << graph.edges.size() << " edges (mu=" << graph.stats.mu
                      << ", sigma=" << graph.stats.sigma << ") -> " << gr_out << "\n";
        } else if (*al) {
            auto graph = load_graph(al_graph);
            auto pruned = prune(graph, PruneConfig{al_theta});
            auto alloc = ombm_allocate(pruned, parse_bounds(pruned, al_bound));
            save_allocation(pruned, alloc, al_out);
            std::cout << "ombm: " << alloc.matched_slots() << " slots matched, "
                      << alloc.matched_tags() << " tags used -> " << al_out << "\n";
        } else if (*bl) {
            auto graph = load_graph(bl_graph);
            auto pruned = prune(graph, PruneConfig{bl_theta});
            Allocation alloc;
            switch (method_from_name(bl_method)) {
                case Method::BM: alloc = allocate_bm(pruned); break;
                case Method::MDA: alloc = allocate_mda(pruned); break;
                case Method::TSRT:
                    if (pruned.slot_influence.empty())
                        throw ValidationError("tsrt needs slot_influence in graph.json");
                    alloc = allocate_tsrt(pruned, pruned.slot_influence, bl_seed);
                    break;
                case Method::RA: alloc = allocate_random(pruned, bl_seed); break;
                case Method::OMBM: throw ValidationError("use the allocate subcommand for ombm");
            }
            save_allocation(pruned, alloc, bl_out);
            std::cout << bl_method << ": " << alloc.matched_slots() << " slots matched -> "
                      << bl_out << "\n";
        } else if (*be) {
            ExperimentConfig cfg =
                be_config.empty() ? ExperimentConfig{} : config_from_file(be_config);
            if (be->count("--seed")) cfg.seed = be_seed_flag;
            if (!cfg.synthetic && cfg.trajectories_path.empty()) {
                SyntheticConfig s;
                s.seed = cfg.seed;
                cfg.synthetic = s;  // default desk-scale synthetic run
            }
            const std::string out_dir =
                be_out.empty() ? "out/run-" + std::to_string(cfg.seed) : be_out;
            PipelineArtifacts art;
            auto report = sweep(cfg, &art);
            write_run_outputs(report, art, out_dir);
            std::cout << report.rows.size() << " report rows -> " << out_dir << "\n";
            for (const auto& e : report.errors) std::cerr << "cell failed: " << e << "\n";
        } else if (*ve) {
            auto graph = load_graph(ve_graph);
            auto pruned = prune(graph, PruneConfig{ve_theta});
            auto bounds = parse_bounds(pruned, ve_bound);
            auto alloc = ombm_allocate(pruned, bounds);
            auto lemmas = verify_lemmas(alloc, pruned);
            double opt = 0.0;
            oracle_optimal(pruned, bounds, &opt);
            auto approx = approximation_report(alloc, allocation_weight(pruned, alloc), opt);
            nlohmann::json j;
            j["slot_uniqueness"] = lemmas.slot_uniqueness;
            j["bounds_respected"] = lemmas.bounds_respected;
            j["bounds_exact_applicable"] = lemmas.bounds_exact_applicable;
            j["bounds_exact"] = lemmas.bounds_exact;
            j["dominating_edges"] = nlohmann::json::array();
            for (const auto& d : lemmas.dominating)
                j["dominating_edges"].push_back(
                    {{"tag", d.tag}, {"slot", d.slot}, {"in_some_optimal", d.in_some_optimal}});
            j["ratio"] = approx.ratio;
            j["ratio_bound"] = approx.bound;
            j["within_bound"] = approx.within_bound;
            if (ve_out.empty()) {
                std::cout << j.dump(2) << "\n";
            } else {
                std::ofstream out(ve_out);
                if (!out) throw IoError("cannot write " + ve_out);
                out << j.dump(2) << "\n";
            }
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
