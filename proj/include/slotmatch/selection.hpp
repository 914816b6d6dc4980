// selection.hpp - stochastic greedy pick of k slots and l tags.
//
// Slots are chosen first, maximizing influence conditioned on the full tag
// catalog; tags are chosen second with the selected slots fixed. At each
// step the best item inside a uniformly random sample of the remaining
// candidates is taken; the sample size ceil((n/k) * ln(1/eps)) clamps to
// the remaining set, so tiny eps degenerates to plain greedy.
#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "slotmatch/core.hpp"
#include "slotmatch/influence.hpp"

namespace slotmatch {

struct SelectionConfig {
    int k = 1;
    int l = 1;
    double epsilon = 0.01;
    std::uint64_t seed = 0;
};

struct SelectionTraceEntry {
    int step = 0;
    std::string item;
    double gain = 0.0;
};

struct SelectionResult {
    std::vector<SlotId> slots;
    std::vector<std::string> tags;
    std::vector<SelectionTraceEntry> trace;
};

namespace detail {

inline std::size_t sample_size(std::size_t ground, int budget, double eps) {
    const double s = std::ceil((static_cast<double>(ground) / budget) * std::log(1.0 / eps));
    if (!(s > 0)) return 1;
    return static_cast<std::size_t>(s);
}

// Uniform sample of `count` indices from `pool` (without replacement);
// pool order is restored not guaranteed, callers treat it as scratch.
inline std::vector<int> draw_sample(std::vector<int>& pool, std::size_t count,
                                    std::mt19937_64& rng) {
    if (count >= pool.size()) return pool;
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> d(i, pool.size() - 1);
        std::swap(pool[i], pool[d(rng)]);
    }
    return std::vector<int>(pool.begin(), pool.begin() + count);
}

}  // namespace detail

inline SelectionResult stochastic_greedy_select(const InfluenceEngine& engine,
                                                const SelectionConfig& cfg) {
    const auto& inv = engine.inventory();
    const std::size_t n_slots = inv.slots.size();
    const std::size_t n_tags = engine.tags().size();
    if (n_slots == 0) throw ValidationError("selection: empty slot inventory");
    if (n_tags == 0) throw ValidationError("selection: empty tag catalog");
    if (cfg.k <= 0 || cfg.l <= 0) throw ValidationError("selection: k and l must be positive");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw ValidationError("selection: epsilon must be in (0,1)");

    std::mt19937_64 rng(cfg.seed);
    SelectionResult res;
    int step = 0;

    // Pr(u | full catalog), fixed for the slot stage.
    std::vector<int> all_tags(n_tags);
    for (std::size_t t = 0; t < n_tags; ++t) all_tags[t] = static_cast<int>(t);
    std::vector<double> q(inv.users.size());
    for (std::size_t u = 0; u < q.size(); ++u)
        q[u] = engine.tag_probability_idx(static_cast<int>(u), all_tags);

    const int k = static_cast<int>(std::min<std::size_t>(cfg.k, n_slots));
    const std::size_t slot_sample = detail::sample_size(n_slots, cfg.k, cfg.epsilon);
    std::vector<double> surv(inv.users.size(), 1.0);
    std::vector<char> taken(n_slots, 0);
    std::vector<int> pool;
    std::vector<int> chosen_slots;
    for (int it = 0; it < k; ++it) {
        pool.clear();
        for (std::size_t s = 0; s < n_slots; ++s)
            if (!taken[s]) pool.push_back(static_cast<int>(s));
        auto sample = detail::draw_sample(pool, slot_sample, rng);
        std::sort(sample.begin(), sample.end());  // lowest index wins ties
        int best = -1;
        double best_gain = -1.0;
        for (int s : sample) {
            double gain = 0.0;
            for (const auto& [u, p] : inv.exposure[s]) gain += surv[u] * p * q[u];
            if (gain > best_gain) {
                best_gain = gain;
                best = s;
            }
        }
        taken[best] = 1;
        chosen_slots.push_back(best);
        for (const auto& [u, p] : inv.exposure[best]) surv[u] *= 1.0 - p * q[u];
        res.slots.push_back(inv.slots[best]);
        res.trace.push_back({step++, inv.slots[best].str(), best_gain});
    }

    // Tag stage: per-user exposure probabilities under the chosen slots.
    std::sort(chosen_slots.begin(), chosen_slots.end());
    std::vector<std::vector<double>> p_list(inv.users.size());
    for (int s : chosen_slots)
        for (const auto& [u, p] : inv.exposure[s]) p_list[u].push_back(p);
    std::vector<int> active_users;
    for (std::size_t u = 0; u < p_list.size(); ++u)
        if (!p_list[u].empty()) active_users.push_back(static_cast<int>(u));

    const auto value_with = [&](const std::vector<double>& keep) {
        double total = 0.0;
        for (int u : active_users) {
            const double qu = 1.0 - keep[u];
            double s = 1.0;
            for (double p : p_list[u]) s *= 1.0 - p * qu;
            total += 1.0 - s;
        }
        return total;
    };

    const int l = static_cast<int>(std::min<std::size_t>(cfg.l, n_tags));
    const std::size_t tag_sample = detail::sample_size(n_tags, cfg.l, cfg.epsilon);
    std::vector<double> keep(inv.users.size(), 1.0);  // prod (1 - Pr(u|t)) over chosen tags
    std::vector<char> tag_taken(n_tags, 0);
    double current = 0.0;
    for (int it = 0; it < l; ++it) {
        pool.clear();
        for (std::size_t t = 0; t < n_tags; ++t)
            if (!tag_taken[t]) pool.push_back(static_cast<int>(t));
        auto sample = detail::draw_sample(pool, tag_sample, rng);
        std::sort(sample.begin(), sample.end());
        int best = -1;
        double best_val = -1.0;
        std::vector<double> trial;
        for (int t : sample) {
            trial = keep;
            for (int u : active_users) trial[u] *= 1.0 - engine.affinity(u, t);
            const double v = value_with(trial);
            if (v > best_val) {
                best_val = v;
                best = t;
            }
        }
        tag_taken[best] = 1;
        for (int u : active_users) keep[u] *= 1.0 - engine.affinity(u, best);
        res.tags.push_back(engine.tags()[best]);
        res.trace.push_back({step++, engine.tags()[best], best_val - current});
        current = best_val;
    }
    return res;
}

}  // namespace slotmatch
