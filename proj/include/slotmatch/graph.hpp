// graph.hpp - tag x slot weighted bipartite graph with theta-score pruning.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "slotmatch/core.hpp"
#include "slotmatch/influence.hpp"
#include "slotmatch/selection.hpp"

namespace slotmatch {

struct GraphEdge {
    int tag = 0;
    int slot = 0;
    double weight = 0.0;

    auto operator<=>(const GraphEdge&) const = default;
};

struct GraphStats {
    double mu = 0.0;
    double sigma = 0.0;                 // population std dev over all edges
    std::optional<double> theta;        // set on pruned graphs, from the pre-prune stats
};

struct WeightedBipartiteGraph {
    std::vector<std::string> tags;      // U side
    std::vector<SlotId> slots;          // V side
    std::vector<GraphEdge> edges;       // sorted by (tag, slot), unique
    GraphStats stats;
    std::vector<double> slot_influence; // unconditioned singleton influence; may be empty

    bool has_edge(int t, int s) const {
        return std::binary_search(edges.begin(), edges.end(), GraphEdge{t, s, 0.0},
                                  [](const GraphEdge& a, const GraphEdge& b) {
                                      return std::pair(a.tag, a.slot) < std::pair(b.tag, b.slot);
                                  });
    }
};

namespace detail {

inline GraphStats compute_stats(const std::vector<GraphEdge>& edges) {
    GraphStats st;
    if (edges.empty()) return st;
    for (const auto& e : edges) st.mu += e.weight;
    st.mu /= edges.size();
    double acc = 0.0;
    for (const auto& e : edges) acc += (e.weight - st.mu) * (e.weight - st.mu);
    const double var = acc / edges.size();
    // variance at rounding-noise level means the weights are all equal
    st.sigma = var < 1e-24 * std::max(1.0, st.mu * st.mu) ? 0.0 : std::sqrt(var);
    return st;
}

inline unsigned thread_cap() {
    if (const char* env = std::getenv("SLOTMATCH_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, n); each index writes only its own outputs, so
// the split cannot change results.
template <typename Fn>
inline void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned threads = std::min<std::size_t>(thread_cap(), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

// Complete bipartite graph over the selected tags and slots; the weight of
// (t, s) is the tag-conditioned influence of the singleton allocation.
// Both sides are sorted ascending for deterministic indexing.
inline WeightedBipartiteGraph build_graph(const std::vector<std::string>& tags,
                                          const std::vector<SlotId>& slots,
                                          const InfluenceEngine& engine) {
    if (tags.empty() || slots.empty())
        throw ValidationError("build_graph: selection must be non-empty");
    WeightedBipartiteGraph g;
    g.tags = tags;
    std::sort(g.tags.begin(), g.tags.end());
    g.tags.erase(std::unique(g.tags.begin(), g.tags.end()), g.tags.end());
    g.slots = slots;
    std::sort(g.slots.begin(), g.slots.end());
    g.slots.erase(std::unique(g.slots.begin(), g.slots.end()), g.slots.end());

    std::vector<int> tag_idx(g.tags.size());
    std::vector<int> slot_idx(g.slots.size());
    for (std::size_t t = 0; t < g.tags.size(); ++t) tag_idx[t] = engine.tag_index(g.tags[t]);
    for (std::size_t s = 0; s < g.slots.size(); ++s) slot_idx[s] = engine.slot_index(g.slots[s]);

    g.edges.resize(g.tags.size() * g.slots.size());
    detail::parallel_for(g.edges.size(), [&](std::size_t i) {
        const int t = static_cast<int>(i / g.slots.size());
        const int s = static_cast<int>(i % g.slots.size());
        const int one_tag[1] = {tag_idx[t]};
        const int one_slot[1] = {slot_idx[s]};
        g.edges[i] = GraphEdge{t, s, engine.conditional_influence_idx(one_slot, one_tag)};
    });
    g.slot_influence.resize(g.slots.size());
    detail::parallel_for(g.slots.size(), [&](std::size_t s) {
        const int one_slot[1] = {slot_idx[s]};
        g.slot_influence[s] = engine.slot_influence_idx(one_slot);
    });
    g.stats = detail::compute_stats(g.edges);
    return g;
}

inline WeightedBipartiteGraph build_graph(const SelectionResult& selection,
                                          const InfluenceEngine& engine) {
    return build_graph(selection.tags, selection.slots, engine);
}

// Graph from an explicit weight matrix (rows = tags, cols = slots).
// NaN entries mean "no edge".
inline WeightedBipartiteGraph graph_from_weights(const std::vector<std::string>& tags,
                                                 const std::vector<SlotId>& slots,
                                                 const std::vector<std::vector<double>>& weights) {
    WeightedBipartiteGraph g;
    g.tags = tags;
    g.slots = slots;
    for (std::size_t t = 0; t < tags.size(); ++t) {
        if (weights[t].size() != slots.size())
            throw ValidationError("graph_from_weights: ragged weight matrix");
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (!std::isnan(weights[t][s]))
                g.edges.push_back(GraphEdge{static_cast<int>(t), static_cast<int>(s), weights[t][s]});
    }
    g.stats = detail::compute_stats(g.edges);
    return g;
}

struct PruneConfig {
    double theta = -1.0;
};

// Keeps exactly the edges with weight >= mu + theta * sigma, where mu and
// sigma come from the input graph. When sigma is 0 all weights equal mu and
// nothing is pruned, for any theta. Vertices stay put even if isolated.
inline WeightedBipartiteGraph prune(const WeightedBipartiteGraph& graph, const PruneConfig& cfg) {
    if (!std::isfinite(cfg.theta)) throw ValidationError("prune: theta must be finite");
    WeightedBipartiteGraph out;
    out.tags = graph.tags;
    out.slots = graph.slots;
    out.slot_influence = graph.slot_influence;
    out.stats = graph.stats;
    out.stats.theta = cfg.theta;
    // sigma of 0 means a uniform weight distribution; every edge sits at the
    // mean, so nothing is ever below mu + theta*sigma (the computed mu can
    // drift off the common weight by rounding, hence the explicit case)
    const double threshold = graph.stats.sigma == 0.0
                                 ? -std::numeric_limits<double>::infinity()
                                 : graph.stats.mu + cfg.theta * graph.stats.sigma;
    for (const auto& e : graph.edges)
        if (e.weight >= threshold) out.edges.push_back(e);
    return out;
}

// --- serialization ------------------------------------------------------

// Weights are printed with 9 decimal digits.
inline std::string graph_to_json(const WeightedBipartiteGraph& g) {
    const auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.9f", v);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "{\n  \"tags\": [";
    for (std::size_t i = 0; i < g.tags.size(); ++i)
        out << (i ? ", " : "") << nlohmann::json(g.tags[i]).dump();
    out << "],\n  \"slots\": [";
    for (std::size_t i = 0; i < g.slots.size(); ++i)
        out << (i ? ", " : "") << nlohmann::json(g.slots[i].str()).dump();
    out << "],\n  \"edges\": [";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        out << (i ? ",\n    " : "\n    ") << "{\"t\": " << g.edges[i].tag
            << ", \"s\": " << g.edges[i].slot << ", \"w\": " << num(g.edges[i].weight) << "}";
    }
    out << (g.edges.empty() ? "" : "\n  ") << "],\n  \"stats\": {\"mu\": " << num(g.stats.mu)
        << ", \"sigma\": " << num(g.stats.sigma);
    if (g.stats.theta) out << ", \"theta\": " << num(*g.stats.theta);
    out << "}";
    if (!g.slot_influence.empty()) {
        out << ",\n  \"slot_influence\": [";
        for (std::size_t i = 0; i < g.slot_influence.size(); ++i)
            out << (i ? ", " : "") << num(g.slot_influence[i]);
        out << "]";
    }
    out << "\n}\n";
    return out.str();
}

inline WeightedBipartiteGraph graph_from_json(const nlohmann::json& j) {
    WeightedBipartiteGraph g;
    for (const auto& t : j.at("tags")) g.tags.push_back(t.get<std::string>());
    for (const auto& s : j.at("slots")) g.slots.push_back(SlotId::parse(s.get<std::string>()));
    for (const auto& e : j.at("edges"))
        g.edges.push_back(GraphEdge{e.at("t").get<int>(), e.at("s").get<int>(),
                                    e.at("w").get<double>()});
    g.stats.mu = j.at("stats").at("mu").get<double>();
    g.stats.sigma = j.at("stats").at("sigma").get<double>();
    if (j.at("stats").contains("theta")) g.stats.theta = j.at("stats").at("theta").get<double>();
    if (j.contains("slot_influence"))
        for (const auto& v : j.at("slot_influence")) g.slot_influence.push_back(v.get<double>());
    return g;
}

inline void save_graph(const WeightedBipartiteGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << graph_to_json(g);
}

inline WeightedBipartiteGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return graph_from_json(j);
}

}  // namespace slotmatch
