// core.hpp - domain records, slot identifiers and error types.
#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace slotmatch {

// Bad input data or configuration (CLI maps this to exit code 2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unknown ids, size guards, contract misuse (CLI maps this to exit code 3).
class LookupError : public std::runtime_error {
public:
    explicit LookupError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TrajectoryRecord {
    std::string user_id;
    double lat = 0.0;
    double lon = 0.0;
    std::int64_t t_start = 0;
    std::int64_t t_end = 0;

    bool operator==(const TrajectoryRecord&) const = default;
};

struct BillboardRecord {
    std::string billboard_id;
    double lat = 0.0;
    double lon = 0.0;
    double cost = 0.0;
    double panel_size = 1.0;

    bool operator==(const BillboardRecord&) const = default;
};

struct TagAffinity {
    std::string user_id;
    std::string tag_id;
    double probability = 0.0;

    bool operator==(const TagAffinity&) const = default;
};

// Planning horizon [t1, t2] cut into slots of duration delta.
struct Horizon {
    std::int64_t t1 = 0;
    std::int64_t t2 = 0;
    std::int64_t delta = 1;

    std::int64_t slots_per_billboard() const { return (t2 - t1) / delta; }
};

struct SlotId {
    std::string billboard_id;
    std::int64_t slot_index = 0;

    auto operator<=>(const SlotId&) const = default;

    std::string str() const {
        return billboard_id + "#" + std::to_string(slot_index);
    }

    static SlotId parse(const std::string& s) {
        auto pos = s.rfind('#');
        if (pos == std::string::npos)
            throw ValidationError("malformed slot id: " + s);
        return SlotId{s.substr(0, pos), std::stoll(s.substr(pos + 1))};
    }
};

inline void validate_trajectory(const TrajectoryRecord& r, std::size_t row) {
    if (r.t_start > r.t_end)
        throw ValidationError("row " + std::to_string(row) +
                              ": t_start > t_end for user " + r.user_id);
    if (r.lat < -90.0 || r.lat > 90.0)
        throw ValidationError("row " + std::to_string(row) + ": latitude out of range");
    if (r.lon < -180.0 || r.lon > 180.0)
        throw ValidationError("row " + std::to_string(row) + ": longitude out of range");
}

inline void validate_billboard(const BillboardRecord& r, std::size_t row) {
    if (r.cost < 0.0)
        throw ValidationError("row " + std::to_string(row) + ": negative cost");
    if (r.panel_size <= 0.0)
        throw ValidationError("row " + std::to_string(row) + ": panel_size must be > 0");
}

inline void validate_affinity(const TagAffinity& r, std::size_t row) {
    if (r.probability < 0.0 || r.probability > 1.0)
        throw ValidationError("row " + std::to_string(row) + ": probability outside [0,1]");
}

}  // namespace slotmatch
