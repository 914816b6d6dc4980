// verify.hpp - lemma checks and the approximation-ratio report against the
// exhaustive oracle. Failures are report entries, not errors.
#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "slotmatch/baselines.hpp"
#include "slotmatch/ombm.hpp"

namespace slotmatch {

struct LemmaReport {
    bool slot_uniqueness = true;   // each slot carries at most one tag
    bool bounds_respected = true;  // counts <= bounds everywhere
    bool bounds_exact_applicable = false;  // complete graph and enough slots
    bool bounds_exact = true;      // counts == bounds where applicable

    struct DominatingCheck {
        int tag = 0;
        int slot = 0;
        bool in_some_optimal = true;
    };
    std::vector<DominatingCheck> dominating;  // first-round edges vs the oracle
    bool dominating_ok = true;

    bool all_ok() const {
        return slot_uniqueness && bounds_respected && dominating_ok &&
               (!bounds_exact_applicable || bounds_exact);
    }
};

// Checks the matcher's structural claims on an allocation, using the
// exhaustive oracle for the dominating-edge claim (guarded sizes only).
inline LemmaReport verify_lemmas(const Allocation& alloc, const WeightedBipartiteGraph& g) {
    LemmaReport rep;
    std::vector<int> counts(g.tags.size(), 0);
    for (std::size_t s = 0; s < alloc.assignment.size(); ++s) {
        const int t = alloc.assignment[s];
        if (t == kUnassigned) continue;
        if (t < 0 || t >= static_cast<int>(g.tags.size())) {
            rep.slot_uniqueness = false;  // malformed entry
            continue;
        }
        ++counts[t];
    }
    for (std::size_t t = 0; t < g.tags.size(); ++t) {
        if (counts[t] != alloc.counts[t]) rep.slot_uniqueness = false;
        if (alloc.counts[t] > alloc.bounds[t]) rep.bounds_respected = false;
    }

    const std::size_t complete = g.tags.size() * g.slots.size();
    const long long bound_sum = std::accumulate(alloc.bounds.begin(), alloc.bounds.end(), 0LL);
    rep.bounds_exact_applicable =
        g.edges.size() == complete && static_cast<long long>(g.slots.size()) >= bound_sum;
    if (rep.bounds_exact_applicable)
        for (std::size_t t = 0; t < g.tags.size(); ++t)
            if (alloc.counts[t] != alloc.bounds[t]) rep.bounds_exact = false;

    // every first-round dominating edge should sit in some optimal
    // bound-feasible assignment; pruning can break this, hence the report
    Allocation fresh = empty_allocation(g, alloc.bounds);
    double opt = 0.0;
    oracle_optimal(g, alloc.bounds, &opt);
    for (const auto& [t, s] : find_dominating_edges(g, fresh)) {
        const double forced = oracle_value_with_edge(g, alloc.bounds, t, s);
        const bool ok = forced >= opt - 1e-9;
        rep.dominating.push_back({t, s, ok});
        rep.dominating_ok &= ok;
    }
    return rep;
}

struct ApproxReport {
    double ratio = 1.0;  // oracle / allocation value; +inf sentinel possible
    std::vector<std::pair<int, int>> per_tag;  // (K_i, delta_i)
    double bound = 1.0;  // 1 + max(K_i - delta_i)
    bool within_bound = true;
};

// `alloc_value` and `oracle_value` must be measured with the same objective
// (edge-weight total for matrix graphs, realized influence otherwise).
inline ApproxReport approximation_report(const Allocation& alloc, double alloc_value,
                                         double oracle_value) {
    ApproxReport rep;
    if (alloc_value <= 0.0)
        rep.ratio = oracle_value <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    else
        rep.ratio = oracle_value / alloc_value;
    int worst = 0;
    for (std::size_t t = 0; t < alloc.counts.size(); ++t) {
        const int k = alloc.counts[t];
        const int delta = alloc.counts[t] == alloc.bounds[t] ? 1 : 0;
        rep.per_tag.emplace_back(k, delta);
        worst = std::max(worst, k - delta);
    }
    rep.bound = 1.0 + worst;
    rep.within_bound = rep.ratio <= rep.bound + 1e-9;
    return rep;
}

}  // namespace slotmatch
