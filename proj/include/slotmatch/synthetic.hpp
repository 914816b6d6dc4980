// synthetic.hpp - seeded desk-scale dataset generator.
#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "slotmatch/core.hpp"

namespace slotmatch {

struct CityExtent {
    double lat_min = 40.70;
    double lat_max = 40.75;
    double lon_min = -74.02;
    double lon_max = -73.97;
};

struct SyntheticConfig {
    std::uint64_t seed = 0;
    int n_users = 100;
    int n_billboards = 10;
    int n_tags = 5;
    int records_per_user = 3;
    Horizon horizon{0, 40, 10};
    CityExtent extent{};
};

struct SyntheticDataset {
    std::vector<TrajectoryRecord> trajectories;
    std::vector<BillboardRecord> billboards;
    std::vector<TagAffinity> affinities;
};

// Reproducible from the seed; every user gets at least one tag affinity.
inline SyntheticDataset generate_synthetic(const SyntheticConfig& cfg) {
    if (cfg.n_users <= 0 || cfg.n_billboards <= 0 || cfg.n_tags <= 0 ||
        cfg.records_per_user <= 0)
        throw ValidationError("synthetic generator counts must be positive");
    if (cfg.horizon.delta <= 0 || (cfg.horizon.t2 - cfg.horizon.t1) % cfg.horizon.delta != 0)
        throw ValidationError("synthetic horizon must be divisible by delta");

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> lat(cfg.extent.lat_min, cfg.extent.lat_max);
    std::uniform_real_distribution<double> lon(cfg.extent.lon_min, cfg.extent.lon_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SyntheticDataset ds;
    const auto digits = [](int n) {
        int d = 1;
        while (n >= 10) { n /= 10; ++d; }
        return d;
    };
    const auto pad = [&](const char* prefix, int i, int total) {
        std::string s = std::to_string(i);
        return std::string(prefix) + std::string(digits(total - 1) - (int)s.size(), '0') + s;
    };

    for (int b = 0; b < cfg.n_billboards; ++b) {
        ds.billboards.push_back(BillboardRecord{
            pad("b", b, cfg.n_billboards), lat(rng), lon(rng),
            100.0 + 900.0 * unit(rng), 1.0 + 49.0 * unit(rng)});
    }

    // skewed tag popularity: a few tags persuade much larger audiences,
    // both in reach and in strength
    std::vector<double> popularity(cfg.n_tags);
    for (auto& p : popularity) {
        const double x = unit(rng);
        p = 0.1 + 0.9 * x * x;
    }
    std::discrete_distribution<int> by_popularity(popularity.begin(), popularity.end());

    const std::int64_t span = cfg.horizon.t2 - cfg.horizon.t1;
    std::uniform_int_distribution<std::int64_t> tick(0, span);
    for (int u = 0; u < cfg.n_users; ++u) {
        const std::string uid = pad("u", u, cfg.n_users);
        for (int r = 0; r < cfg.records_per_user; ++r) {
            std::int64_t a = cfg.horizon.t1 + tick(rng);
            std::int64_t b = cfg.horizon.t1 + tick(rng);
            if (a > b) std::swap(a, b);
            ds.trajectories.push_back(TrajectoryRecord{uid, lat(rng), lon(rng), a, b});
        }
        // sparse profile biased toward popular tags, at least one tag each
        std::vector<char> has(cfg.n_tags, 0);
        for (int t = 0; t < cfg.n_tags; ++t)
            has[t] = unit(rng) < 0.1 + 0.3 * popularity[t];
        if (std::find(has.begin(), has.end(), 1) == has.end()) has[by_popularity(rng)] = 1;
        for (int t = 0; t < cfg.n_tags; ++t) {
            if (!has[t]) continue;
            const double a = popularity[t] * (0.25 + 0.75 * unit(rng));
            ds.affinities.push_back(TagAffinity{uid, pad("t", t, cfg.n_tags), a});
        }
    }
    return ds;
}

}  // namespace slotmatch
