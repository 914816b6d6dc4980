// baselines.hpp - the four reference allocators and the exhaustive oracle.
// Baselines carry no per-tag quota: one tag may take any number of slots.
#pragma once

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "slotmatch/ombm.hpp"

namespace slotmatch {

namespace detail {

inline Allocation unbounded_allocation(const WeightedBipartiteGraph& g) {
    Allocation a;
    a.assignment.assign(g.slots.size(), kUnassigned);
    a.counts.assign(g.tags.size(), 0);
    a.bounds.assign(g.tags.size(), std::max<int>(1, static_cast<int>(g.slots.size())));
    return a;
}

}  // namespace detail

// BM: every slot independently takes its maximum-weight incident tag.
inline Allocation allocate_bm(const WeightedBipartiteGraph& g) {
    detail::Adjacency adj(g);
    Allocation a = detail::unbounded_allocation(g);
    for (int s = 0; s < static_cast<int>(g.slots.size()); ++s) {
        auto t = detail::lc_of_slot(adj, s, [](int) { return true; });
        if (t) {
            a.assignment[s] = *t;
            ++a.counts[*t];
        }
    }
    return a;
}

// MDA: every slot takes its incident tag of greatest degree in the pruned
// graph, ties to the lower tag index.
inline Allocation allocate_mda(const WeightedBipartiteGraph& g) {
    std::vector<int> degree(g.tags.size(), 0);
    for (const auto& e : g.edges) ++degree[e.tag];
    detail::Adjacency adj(g);
    Allocation a = detail::unbounded_allocation(g);
    for (int s = 0; s < static_cast<int>(g.slots.size()); ++s) {
        int best = -1;
        for (const auto& [t, w] : adj.of_slot[s])
            if (best == -1 || degree[t] > degree[best] || (degree[t] == degree[best] && t < best))
                best = t;
        if (best != -1) {
            a.assignment[s] = best;
            ++a.counts[best];
        }
    }
    return a;
}

// TSRT: slots in descending individual influence, each gets a
// uniformly random incident tag.
inline Allocation allocate_tsrt(const WeightedBipartiteGraph& g,
                                const std::vector<double>& slot_influences, std::uint64_t seed) {
    if (slot_influences.size() != g.slots.size())
        throw ValidationError("allocate_tsrt: slot_influences size mismatch");
    std::vector<int> order(g.slots.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return slot_influences[a] > slot_influences[b];
    });
    detail::Adjacency adj(g);
    std::mt19937_64 rng(seed);
    Allocation a = detail::unbounded_allocation(g);
    for (int s : order) {
        const auto& inc = adj.of_slot[s];
        if (inc.empty()) continue;
        std::size_t pick = 0;
        if (inc.size() > 1)
            pick = std::uniform_int_distribution<std::size_t>(0, inc.size() - 1)(rng);
        a.assignment[s] = inc[pick].first;
        ++a.counts[inc[pick].first];
    }
    return a;
}

// RA: like TSRT without the sort.
inline Allocation allocate_random(const WeightedBipartiteGraph& g, std::uint64_t seed) {
    detail::Adjacency adj(g);
    std::mt19937_64 rng(seed);
    Allocation a = detail::unbounded_allocation(g);
    for (int s = 0; s < static_cast<int>(g.slots.size()); ++s) {
        const auto& inc = adj.of_slot[s];
        if (inc.empty()) continue;
        std::size_t pick = 0;
        if (inc.size() > 1)
            pick = std::uniform_int_distribution<std::size_t>(0, inc.size() - 1)(rng);
        a.assignment[s] = inc[pick].first;
        ++a.counts[inc[pick].first];
    }
    return a;
}

inline constexpr int kOracleMaxSlots = 10;
inline constexpr int kOracleMaxTags = 4;

namespace detail {

// Exhaustive search over bound-feasible assignments (unassigned allowed),
// maximizing total edge weight; ties resolved toward the lexicographically
// smallest assignment array. A slot may be pinned to one tag via `forced`.
inline Allocation oracle_search(const WeightedBipartiteGraph& g, const std::vector<int>& bounds,
                                int forced_slot, int forced_tag, double* best_value_out) {
    const int ns = static_cast<int>(g.slots.size());
    const int nt = static_cast<int>(g.tags.size());
    Adjacency adj(g);
    std::vector<std::vector<double>> w(nt, std::vector<double>(ns,
                                       std::numeric_limits<double>::quiet_NaN()));
    for (const auto& e : g.edges) w[e.tag][e.slot] = e.weight;

    std::vector<int> cur(ns, kUnassigned), best_assign;
    std::vector<int> counts(nt, 0);
    double best = -1.0;
    auto rec = [&](auto&& self, int s, double total) -> void {
        if (s == ns) {
            if (total > best + 1e-12 ||
                (total > best - 1e-12 && (best_assign.empty() || cur < best_assign))) {
                best = total;
                best_assign = cur;
            }
            return;
        }
        if (forced_slot == s) {
            if (counts[forced_tag] < bounds[forced_tag] && !std::isnan(w[forced_tag][s])) {
                cur[s] = forced_tag;
                ++counts[forced_tag];
                self(self, s + 1, total + w[forced_tag][s]);
                --counts[forced_tag];
                cur[s] = kUnassigned;
            }
            return;
        }
        self(self, s + 1, total);  // leave unassigned
        for (int t = 0; t < nt; ++t) {
            if (std::isnan(w[t][s]) || counts[t] >= bounds[t]) continue;
            cur[s] = t;
            ++counts[t];
            self(self, s + 1, total + w[t][s]);
            --counts[t];
            cur[s] = kUnassigned;
        }
    };
    rec(rec, 0, 0.0);

    Allocation a;
    a.assignment = best_assign.empty() ? cur : best_assign;
    a.counts.assign(nt, 0);
    a.bounds = bounds;
    for (int t : a.assignment)
        if (t != kUnassigned) ++a.counts[t];
    if (best_value_out) *best_value_out = std::max(best, 0.0);
    return a;
}

}  // namespace detail

inline Allocation oracle_optimal(const WeightedBipartiteGraph& g, const std::vector<int>& bounds,
                                 double* value_out = nullptr) {
    if (static_cast<int>(g.slots.size()) > kOracleMaxSlots ||
        static_cast<int>(g.tags.size()) > kOracleMaxTags)
        throw ValidationError("oracle_optimal: instance exceeds enumeration guard");
    if (bounds.size() != g.tags.size())
        throw ValidationError("oracle_optimal: bounds size mismatch");
    return detail::oracle_search(g, bounds, -1, -1, value_out);
}

// Best value achievable with slot `forced_slot` pinned to `forced_tag`;
// -1 value when infeasible.
inline double oracle_value_with_edge(const WeightedBipartiteGraph& g, const std::vector<int>& bounds,
                                     int forced_tag, int forced_slot) {
    if (static_cast<int>(g.slots.size()) > kOracleMaxSlots ||
        static_cast<int>(g.tags.size()) > kOracleMaxTags)
        throw ValidationError("oracle_value_with_edge: instance exceeds enumeration guard");
    double value = -1.0;
    Allocation a = detail::oracle_search(g, bounds, forced_slot, forced_tag, &value);
    bool used = a.assignment.size() > static_cast<std::size_t>(forced_slot) &&
                a.assignment[forced_slot] == forced_tag;
    return used ? value : -1.0;
}

}  // namespace slotmatch
