// influence.hpp - tag-conditioned influence evaluation.
//
// For a slot set S and tag set T the engine computes
//   sum_u [ 1 - prod_{b in S} (1 - Pr(u,b) * Pr(u|T)) ]
// with Pr(u|T) = 1 - prod_{t in T} (1 - Pr(u|t)). Summation and product
// order are canonical (ascending user / slot index) so results are
// bit-stable regardless of caller-side ordering.
#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "slotmatch/core.hpp"
#include "slotmatch/inventory.hpp"

namespace slotmatch {

struct InfluenceQuery {
    std::vector<SlotId> slots;
    std::vector<std::string> tags;
};

class InfluenceEngine {
public:
    InfluenceEngine(const SlotInventory& inventory, const std::vector<TagAffinity>& affinities)
        : inv_(&inventory) {
        for (std::size_t i = 0; i < inventory.slots.size(); ++i)
            slot_idx_[inventory.slots[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < inventory.users.size(); ++i)
            user_idx_[inventory.users[i]] = static_cast<int>(i);
        for (const auto& a : affinities) tag_idx_.emplace(a.tag_id, 0);
        int next = 0;
        tags_.reserve(tag_idx_.size());
        for (auto& [id, idx] : tag_idx_) {
            idx = next++;
            tags_.push_back(id);
        }
        aff_.assign(inventory.users.size() * tags_.size(), 0.0);
        for (const auto& a : affinities) {
            auto uit = user_idx_.find(a.user_id);
            if (uit == user_idx_.end()) continue;  // user absent from the trajectory DB
            aff_[uit->second * tags_.size() + tag_idx_.at(a.tag_id)] = a.probability;
        }
    }

    const SlotInventory& inventory() const { return *inv_; }
    const std::vector<std::string>& tags() const { return tags_; }
    std::size_t user_count() const { return inv_->users.size(); }

    int slot_index(const SlotId& id) const {
        auto it = slot_idx_.find(id);
        if (it == slot_idx_.end()) throw LookupError("unknown slot " + id.str());
        return it->second;
    }
    int tag_index(const std::string& id) const {
        auto it = tag_idx_.find(id);
        if (it == tag_idx_.end()) throw LookupError("unknown tag " + id);
        return it->second;
    }

    double affinity(int user, int tag) const { return aff_[user * tags_.size() + tag]; }

    // Pr(u | T') = 1 - prod (1 - Pr(u|t)); empty tag set yields 0.
    double tag_probability_idx(int user, std::span<const int> tag_idxs) const {
        double keep = 1.0;
        for (int t : tag_idxs) keep *= 1.0 - affinity(user, t);
        return 1.0 - keep;
    }

    double tag_probability(const std::string& user_id, const std::vector<std::string>& tag_ids) const {
        auto uit = user_idx_.find(user_id);
        if (uit == user_idx_.end()) return 0.0;  // no affinity rows for this user
        return tag_probability_idx(uit->second, canonical_tags(tag_ids));
    }

    // Influence of a slot set, all tags implicit (Pr(u,b) only).
    double slot_influence_idx(std::span<const int> slot_idxs) const {
        return accumulate(slot_idxs, {}, /*conditioned=*/false);
    }

    double slot_influence(const std::vector<SlotId>& slots) const {
        return slot_influence_idx(canonical_slots(slots));
    }

    // Tag-conditioned influence; zero when either set is empty.
    double conditional_influence_idx(std::span<const int> slot_idxs,
                                     std::span<const int> tag_idxs) const {
        if (tag_idxs.empty()) return 0.0;
        return accumulate(slot_idxs, tag_idxs, /*conditioned=*/true);
    }

    double conditional_influence(const std::vector<SlotId>& slots,
                                 const std::vector<std::string>& tag_ids) const {
        return conditional_influence_idx(canonical_slots(slots), canonical_tags(tag_ids));
    }

    using Candidate = std::variant<SlotId, std::string>;

    double marginal_gain(const InfluenceQuery& base, const Candidate& candidate) const {
        InfluenceQuery ext = base;
        if (std::holds_alternative<SlotId>(candidate)) {
            const auto& s = std::get<SlotId>(candidate);
            if (std::find(base.slots.begin(), base.slots.end(), s) != base.slots.end())
                throw ValidationError("candidate slot already in base: " + s.str());
            ext.slots.push_back(s);
        } else {
            const auto& t = std::get<std::string>(candidate);
            if (std::find(base.tags.begin(), base.tags.end(), t) != base.tags.end())
                throw ValidationError("candidate tag already in base: " + t);
            ext.tags.push_back(t);
        }
        return conditional_influence(ext.slots, ext.tags) -
               conditional_influence(base.slots, base.tags);
    }

    std::vector<int> canonical_slots(const std::vector<SlotId>& slots) const {
        std::vector<int> idxs;
        idxs.reserve(slots.size());
        for (const auto& s : slots) idxs.push_back(slot_index(s));
        std::sort(idxs.begin(), idxs.end());
        idxs.erase(std::unique(idxs.begin(), idxs.end()), idxs.end());
        return idxs;
    }

    std::vector<int> canonical_tags(const std::vector<std::string>& tag_ids) const {
        std::vector<int> idxs;
        idxs.reserve(tag_ids.size());
        for (const auto& t : tag_ids) idxs.push_back(tag_index(t));
        std::sort(idxs.begin(), idxs.end());
        idxs.erase(std::unique(idxs.begin(), idxs.end()), idxs.end());
        return idxs;
    }

private:
    double accumulate(std::span<const int> slot_idxs, std::span<const int> tag_idxs,
                      bool conditioned) const {
        std::vector<double> surv(inv_->users.size(), 1.0);
        std::vector<double> q(conditioned ? inv_->users.size() : 0, -1.0);
        std::vector<int> touched;
        for (int s : slot_idxs) {
            if (s < 0 || s >= static_cast<int>(inv_->slots.size()))
                throw LookupError("slot index out of range");
            for (const auto& [u, p] : inv_->exposure[s]) {
                double eff = p;
                if (conditioned) {
                    if (q[u] < 0.0) q[u] = tag_probability_idx(u, tag_idxs);
                    eff = p * q[u];
                }
                if (surv[u] == 1.0) touched.push_back(u);
                surv[u] *= 1.0 - eff;
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        double total = 0.0;
        for (int u : touched) total += 1.0 - surv[u];
        return total;
    }

    const SlotInventory* inv_;
    std::map<SlotId, int> slot_idx_;
    std::map<std::string, int> user_idx_;
    std::map<std::string, int> tag_idx_;
    std::vector<std::string> tags_;
    std::vector<double> aff_;  // users x tags, dense
};

}  // namespace slotmatch
