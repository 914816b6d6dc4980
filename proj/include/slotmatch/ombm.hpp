// ombm.hpp - iterative dominating-edge one-to-many matching.
//
// A round freezes the live graph, collects every mutual-best (dominating)
// tag-slot pair, and applies them all. A matched tag leaves the live set
// until the tag pool empties, then every tag still under quota returns.
// The outer loop stops when a full phase assigns nothing.
//
// Tie rules: a slot picks the lowest-index tag, a tag picks the
// highest-index slot. The second rule is what reproduces the reference
// allocation trace; see the tests.
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "slotmatch/graph.hpp"

namespace slotmatch {

inline constexpr int kUnassigned = -1;

struct Allocation {
    std::vector<int> assignment;  // slot position -> tag index or kUnassigned
    std::vector<int> counts;      // tag index -> assigned slots
    std::vector<int> bounds;      // tag index -> quota

    int matched_slots() const {
        int n = 0;
        for (int t : assignment) n += t != kUnassigned;
        return n;
    }
    int matched_tags() const {
        std::set<int> tags;
        for (int t : assignment)
            if (t != kUnassigned) tags.insert(t);
        return static_cast<int>(tags.size());
    }
};

inline Allocation empty_allocation(const WeightedBipartiteGraph& g, std::vector<int> bounds) {
    if (bounds.size() != g.tags.size())
        throw ValidationError("allocation: bounds size must match tag count");
    for (int b : bounds)
        if (b < 1) throw ValidationError("allocation: every bound must be >= 1");
    Allocation a;
    a.assignment.assign(g.slots.size(), kUnassigned);
    a.counts.assign(g.tags.size(), 0);
    a.bounds = std::move(bounds);
    return a;
}

// Balanced default quota ceil(#slots / #tags).
inline std::vector<int> default_bounds(const WeightedBipartiteGraph& g) {
    const int b = static_cast<int>((g.slots.size() + g.tags.size() - 1) / g.tags.size());
    return std::vector<int>(g.tags.size(), std::max(1, b));
}

namespace detail {

struct Adjacency {
    std::vector<std::vector<std::pair<int, double>>> of_tag;   // tag -> (slot, w)
    std::vector<std::vector<std::pair<int, double>>> of_slot;  // slot -> (tag, w)

    explicit Adjacency(const WeightedBipartiteGraph& g) {
        of_tag.resize(g.tags.size());
        of_slot.resize(g.slots.size());
        for (const auto& e : g.edges) {
            of_tag[e.tag].emplace_back(e.slot, e.weight);
            of_slot[e.slot].emplace_back(e.tag, e.weight);
        }
    }
};

// Best live tag for a slot: max weight, ties to the lowest tag index.
template <typename TagLive>
inline std::optional<int> lc_of_slot(const Adjacency& adj, int slot, TagLive&& tag_live) {
    std::optional<int> best;
    double best_w = 0.0;
    for (const auto& [t, w] : adj.of_slot[slot]) {
        if (!tag_live(t)) continue;
        if (!best || w > best_w || (w == best_w && t < *best)) {
            best = t;
            best_w = w;
        }
    }
    return best;
}

// Best live slot for a tag: max weight, ties to the highest slot index.
template <typename SlotLive>
inline std::optional<int> lc_of_tag(const Adjacency& adj, int tag, SlotLive&& slot_live) {
    std::optional<int> best;
    double best_w = 0.0;
    for (const auto& [s, w] : adj.of_tag[tag]) {
        if (!slot_live(s)) continue;
        if (!best || w > best_w || (w == best_w && s > *best)) {
            best = s;
            best_w = w;
        }
    }
    return best;
}

}  // namespace detail

enum class Side { Tag, Slot };

// lc() as a standalone query against the current allocation: live slots are
// unassigned, live tags are under quota. Returns the opposite-side index.
inline std::optional<int> best_counterpart(const WeightedBipartiteGraph& g, Side side, int index,
                                           const Allocation& alloc) {
    detail::Adjacency adj(g);
    const auto slot_live = [&](int s) { return alloc.assignment[s] == kUnassigned; };
    const auto tag_live = [&](int t) { return alloc.counts[t] < alloc.bounds[t]; };
    if (side == Side::Slot) {
        if (index < 0 || index >= static_cast<int>(g.slots.size()))
            throw LookupError("best_counterpart: slot index out of range");
        return detail::lc_of_slot(adj, index, tag_live);
    }
    if (index < 0 || index >= static_cast<int>(g.tags.size()))
        throw LookupError("best_counterpart: tag index out of range");
    return detail::lc_of_tag(adj, index, slot_live);
}

// Mutual-best (tag, slot) pairs among live vertices, ascending.
inline std::vector<std::pair<int, int>> find_dominating_edges(const WeightedBipartiteGraph& g,
                                                              const Allocation& alloc) {
    detail::Adjacency adj(g);
    const auto slot_live = [&](int s) { return alloc.assignment[s] == kUnassigned; };
    const auto tag_live = [&](int t) { return alloc.counts[t] < alloc.bounds[t]; };
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < static_cast<int>(g.slots.size()); ++s) {
        if (!slot_live(s)) continue;
        auto t = detail::lc_of_slot(adj, s, tag_live);
        if (!t) continue;
        auto back = detail::lc_of_tag(adj, *t, slot_live);
        if (back && *back == s) out.emplace_back(*t, s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Allocation ombm_allocate(const WeightedBipartiteGraph& g, const std::vector<int>& bounds) {
    Allocation alloc = empty_allocation(g, bounds);
    if (g.edges.empty()) return alloc;
    detail::Adjacency adj(g);

    while (true) {
        int assigned_in_phase = 0;
        std::vector<char> live(g.tags.size(), 0);
        bool any_live = false;
        for (std::size_t t = 0; t < g.tags.size(); ++t) {
            live[t] = alloc.counts[t] < alloc.bounds[t];
            any_live |= live[t] != 0;
        }
        while (any_live) {
            // one frozen round of dominating edges
            const auto slot_live = [&](int s) { return alloc.assignment[s] == kUnassigned; };
            const auto tag_live = [&](int t) { return live[t] != 0; };
            std::vector<std::pair<int, int>> round;
            for (int s = 0; s < static_cast<int>(g.slots.size()); ++s) {
                if (!slot_live(s)) continue;
                auto t = detail::lc_of_slot(adj, s, tag_live);
                if (!t) continue;
                auto back = detail::lc_of_tag(adj, *t, slot_live);
                if (back && *back == s) round.emplace_back(*t, s);
            }
            if (round.empty()) break;
            std::sort(round.begin(), round.end());
            for (const auto& [t, s] : round) {
                if (!live[t] || alloc.assignment[s] != kUnassigned) continue;
                alloc.assignment[s] = t;
                ++alloc.counts[t];
                live[t] = 0;  // out of the pool until all tags are used up
                ++assigned_in_phase;
            }
            any_live = false;
            for (std::size_t t = 0; t < g.tags.size(); ++t) {
                live[t] = live[t] && alloc.counts[t] < alloc.bounds[t];
                any_live |= live[t] != 0;
            }
        }
        if (assigned_in_phase == 0) break;
    }
    return alloc;
}

// Total edge weight of an allocation (the matrix-level objective).
inline double allocation_weight(const WeightedBipartiteGraph& g, const Allocation& alloc) {
    std::map<std::pair<int, int>, double> w;
    for (const auto& e : g.edges) w[{e.tag, e.slot}] = e.weight;
    double total = 0.0;
    for (int s = 0; s < static_cast<int>(alloc.assignment.size()); ++s) {
        const int t = alloc.assignment[s];
        if (t == kUnassigned) continue;
        auto it = w.find({t, s});
        if (it == w.end()) throw LookupError("allocation uses a non-existent edge");
        total += it->second;
    }
    return total;
}

// Influence of a realized allocation: slots grouped by their assigned tag,
// each group evaluated against that tag alone.
inline double allocation_influence(const WeightedBipartiteGraph& g, const Allocation& alloc,
                                   const InfluenceEngine& engine) {
    double total = 0.0;
    for (std::size_t t = 0; t < g.tags.size(); ++t) {
        std::vector<SlotId> group;
        for (std::size_t s = 0; s < alloc.assignment.size(); ++s)
            if (alloc.assignment[s] == static_cast<int>(t)) group.push_back(g.slots[s]);
        if (!group.empty())
            total += engine.conditional_influence(group, {g.tags[t]});
    }
    return total;
}

// --- serialization ------------------------------------------------------

inline nlohmann::json allocation_to_json(const WeightedBipartiteGraph& g, const Allocation& alloc) {
    nlohmann::json j;
    j["assignment"] = alloc.assignment;
    nlohmann::json counts = nlohmann::json::object();
    nlohmann::json bounds = nlohmann::json::object();
    for (std::size_t t = 0; t < g.tags.size(); ++t) {
        counts[g.tags[t]] = alloc.counts[t];
        bounds[g.tags[t]] = alloc.bounds[t];
    }
    j["counts"] = counts;
    j["bounds"] = bounds;
    return j;
}

inline Allocation allocation_from_json(const WeightedBipartiteGraph& g, const nlohmann::json& j) {
    Allocation a;
    a.assignment = j.at("assignment").get<std::vector<int>>();
    a.counts.assign(g.tags.size(), 0);
    a.bounds.assign(g.tags.size(), 0);
    for (std::size_t t = 0; t < g.tags.size(); ++t) {
        a.counts[t] = j.at("counts").at(g.tags[t]).get<int>();
        a.bounds[t] = j.at("bounds").at(g.tags[t]).get<int>();
    }
    return a;
}

inline void save_allocation(const WeightedBipartiteGraph& g, const Allocation& alloc,
                            const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << allocation_to_json(g, alloc).dump(2) << "\n";
}

}  // namespace slotmatch
