#include <catch_amalgamated.hpp>

#include "slotmatch/inventory.hpp"

using namespace slotmatch;

namespace {

// ~0.0005 deg of latitude is ~55.6 m; 0.002 deg is ~222 m.
const std::vector<BillboardRecord> kBillboards{
    {"b0", 0.0, 0.0, 100.0, 10.0},
    {"b1", 1.0, 1.0, 100.0, 40.0},
};

}  // namespace

TEST_CASE("expand_slots orders by billboard then index") {
    Horizon h{0, 40, 10};
    auto slots = expand_slots(kBillboards, h);
    REQUIRE(slots.size() == 8);
    CHECK(slots.front() == SlotId{"b0", 0});
    CHECK(slots[3] == SlotId{"b0", 3});
    CHECK(slots[4] == SlotId{"b1", 0});
    CHECK(slots.back() == SlotId{"b1", 3});

    auto reversed = kBillboards;
    std::swap(reversed[0], reversed[1]);
    CHECK(expand_slots(reversed, h) == slots);
}

TEST_CASE("expand_slots horizon validation") {
    CHECK_THROWS_AS(expand_slots(kBillboards, Horizon{0, 40, 0}), ValidationError);
    CHECK_THROWS_AS(expand_slots(kBillboards, Horizon{40, 0, 10}), ValidationError);
    CHECK_THROWS_AS(expand_slots(kBillboards, Horizon{0, 45, 10}), ValidationError);
    CHECK(expand_slots(kBillboards, Horizon{0, 0, 10}).empty());
}

TEST_CASE("exposure respects the radius") {
    Horizon h{0, 10, 10};
    std::vector<TrajectoryRecord> tr{
        {"near", 0.0005, 0.0, 0, 10},
        {"far", 0.002, 0.0, 0, 10},
    };
    auto slots = expand_slots(kBillboards, h);
    auto inv = build_exposure(slots, kBillboards, tr, h, 100.0);
    REQUIRE(inv.users == std::vector<std::string>{"far", "near"});
    // slot 0 is b0#0; only "near" (index 1) is inside 100 m
    REQUIRE(inv.exposure[0].size() == 1);
    CHECK(inv.exposure[0][0].first == 1);
    CHECK(inv.exposure[1].empty());  // b1 is ~157 km away from both
}

TEST_CASE("exposure probability is panel_size over max panel_size") {
    Horizon h{0, 10, 10};
    std::vector<TrajectoryRecord> tr{{"u", 0.0, 0.0, 0, 10}, {"u", 1.0, 1.0, 0, 10}};
    auto slots = expand_slots(kBillboards, h);
    auto inv = build_exposure(slots, kBillboards, tr, h, 100.0);
    REQUIRE(inv.exposure[0].size() == 1);
    CHECK_THAT(inv.exposure[0][0].second, Catch::Matchers::WithinAbs(10.0 / 40.0, 1e-12));
    REQUIRE(inv.exposure[1].size() == 1);
    CHECK(inv.exposure[1][0].second == 1.0);
}

TEST_CASE("time windows are closed intervals") {
    Horizon h{0, 30, 10};
    std::vector<TrajectoryRecord> tr{
        {"u0", 0.0, 0.0, 0, 10},    // overlaps slots 0 and (at the boundary) 1
        {"u1", 0.0, 0.0, 20, 20},   // instantaneous, touches slots 1 and 2
        {"u2", 0.0, 0.0, 25, 28},   // inside slot 2 only
    };
    std::vector<BillboardRecord> bb{kBillboards[0]};
    auto slots = expand_slots(bb, h);
    auto inv = build_exposure(slots, bb, tr, h, 100.0);
    auto users_of = [&](int slot) {
        std::vector<int> out;
        for (const auto& [u, p] : inv.exposure[slot]) out.push_back(u);
        return out;
    };
    CHECK(users_of(0) == std::vector<int>{0});
    CHECK(users_of(1) == std::vector<int>{0, 1});
    CHECK(users_of(2) == std::vector<int>{1, 2});
}

TEST_CASE("duplicate visits collapse to one exposure entry") {
    Horizon h{0, 10, 10};
    std::vector<TrajectoryRecord> tr{{"u", 0.0, 0.0, 0, 3}, {"u", 0.0001, 0.0, 5, 9}};
    std::vector<BillboardRecord> bb{kBillboards[0]};
    auto inv = build_exposure(expand_slots(bb, h), bb, tr, h, 100.0);
    CHECK(inv.exposure[0].size() == 1);
}

TEST_CASE("exposure radius must be positive") {
    Horizon h{0, 10, 10};
    CHECK_THROWS_AS(build_exposure(expand_slots(kBillboards, h), kBillboards, {}, h, 0.0),
                    ValidationError);
}
