// inventory.hpp - slot expansion and the user-exposure index.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "slotmatch/core.hpp"
#include "slotmatch/geo.hpp"

namespace slotmatch {

// Expanded slot set plus, per slot, the users it can reach and with what
// base probability. Users are indexed into `users`.
struct SlotInventory {
    std::vector<SlotId> slots;
    std::vector<std::vector<std::pair<int, double>>> exposure;  // slot -> sorted (user_idx, p)
    std::vector<std::string> users;                             // all users of the trajectory DB
    Horizon horizon;
    double radius_m = 0.0;
};

// Every billboard contributes (t2-t1)/delta slots; delta must divide the
// horizon exactly. Result is ordered by (billboard_id, slot_index).
inline std::vector<SlotId> expand_slots(const std::vector<BillboardRecord>& billboards,
                                        const Horizon& horizon) {
    if (horizon.delta <= 0)
        throw ValidationError("slot duration delta must be positive");
    if (horizon.t2 < horizon.t1)
        throw ValidationError("horizon t2 < t1");
    if ((horizon.t2 - horizon.t1) % horizon.delta != 0)
        throw ValidationError("delta does not divide the horizon exactly");
    const std::int64_t per_billboard = horizon.slots_per_billboard();
    std::vector<std::string> ids;
    ids.reserve(billboards.size());
    for (const auto& b : billboards) ids.push_back(b.billboard_id);
    std::sort(ids.begin(), ids.end());
    std::vector<SlotId> out;
    out.reserve(ids.size() * per_billboard);
    for (const auto& id : ids)
        for (std::int64_t i = 0; i < per_billboard; ++i)
            out.push_back(SlotId{id, i});
    return out;
}

// A user is exposed to a slot when some trajectory record of the user lies
// within `radius_m` of the billboard (haversine) and its interval intersects
// the slot window (closed intervals). The base probability is
// panel_size / max panel_size over all billboards.
inline SlotInventory build_exposure(const std::vector<SlotId>& slots,
                                    const std::vector<BillboardRecord>& billboards,
                                    const std::vector<TrajectoryRecord>& trajectories,
                                    const Horizon& horizon, double radius_m) {
    if (radius_m <= 0.0)
        throw ValidationError("exposure radius must be positive");
    double max_panel = 0.0;
    std::map<std::string, const BillboardRecord*> by_id;
    for (const auto& b : billboards) {
        by_id[b.billboard_id] = &b;
        max_panel = std::max(max_panel, b.panel_size);
    }

    SlotInventory inv;
    inv.slots = slots;
    inv.horizon = horizon;
    inv.radius_m = radius_m;
    std::map<std::string, int> user_idx;
    for (const auto& t : trajectories)
        if (user_idx.emplace(t.user_id, 0).second) {}
    int next = 0;
    for (auto& [id, idx] : user_idx) idx = next++;
    inv.users.resize(user_idx.size());
    for (const auto& [id, idx] : user_idx) inv.users[idx] = id;

    // Per billboard: which users pass within range, and when.
    struct Visit { int user; std::int64_t t0, t1; };
    std::map<std::string, std::vector<Visit>> visits;
    for (const auto& t : trajectories) {
        const int u = user_idx.at(t.user_id);
        for (const auto& b : billboards) {
            if (haversine_m(t.lat, t.lon, b.lat, b.lon) <= radius_m)
                visits[b.billboard_id].push_back({u, t.t_start, t.t_end});
        }
    }

    inv.exposure.resize(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const auto& sid = slots[i];
        auto bit = by_id.find(sid.billboard_id);
        if (bit == by_id.end())
            throw LookupError("slot references unknown billboard " + sid.billboard_id);
        auto vit = visits.find(sid.billboard_id);
        if (vit == visits.end()) continue;
        const double p = bit->second->panel_size / max_panel;
        const std::int64_t s0 = horizon.t1 + sid.slot_index * horizon.delta;
        const std::int64_t s1 = s0 + horizon.delta;
        std::vector<std::pair<int, double>>& exp = inv.exposure[i];
        for (const auto& v : vit->second)
            if (v.t0 <= s1 && v.t1 >= s0) exp.emplace_back(v.user, p);
        std::sort(exp.begin(), exp.end());
        exp.erase(std::unique(exp.begin(), exp.end()), exp.end());
    }
    return inv;
}

}  // namespace slotmatch
