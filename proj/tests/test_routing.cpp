#include <gtest/gtest.h>

#include <set>

#include "slaprp/oracle.hpp"
#include "support.hpp"

using namespace slaprp;

namespace {

Layout grid(int aisles, int bays, int D = 1, int d = 1) {
    Layout lay;
    lay.aisles = aisles;
    lay.bays = bays;
    lay.D = D;
    lay.d = d;
    return lay;
}

}  // namespace

TEST(Stops, MakeStopsCountsAndSorts) {
    StopSet s = make_stops({4, 1, 4, 2});
    EXPECT_EQ(s, (StopSet{{1, 1}, {2, 1}, {4, 2}}));
    EXPECT_EQ(stops_key(s), stops_key(make_stops({2, 4, 1, 4})));
}

TEST(Policy, NamesRoundTrip) {
    for (Policy p : all_policies()) EXPECT_EQ(policy_from_string(to_string(p)), p);
    EXPECT_THROW(policy_from_string("zigzag"), Error);
}

TEST(Policy, TwoBlockSupportsReturnOnly) {
    Layout lay = grid(2, 2);
    lay.kind = LayoutKind::two_block_mid_depot;
    EXPECT_TRUE(policy_supported(Policy::return_policy, lay));
    EXPECT_FALSE(policy_supported(Policy::sshape, lay));
    EXPECT_FALSE(policy_supported(Policy::largest_gap, lay));
}

TEST(Return, HandExamples) {
    Layout lay = grid(3, 4, 2, 1);
    // Aisle 1 down to bay 3 and back.
    EXPECT_EQ(route_length(Policy::return_policy, make_stops({location_id(lay, 1, 3)}), lay), 6);
    // Aisles 1 and 3: 2*3 + 2*2 vertical, 2*4 horizontal.
    StopSet s = make_stops({location_id(lay, 1, 3), location_id(lay, 3, 2)});
    EXPECT_EQ(route_length(Policy::return_policy, s, lay), 6 + 4 + 8);
}

TEST(Optimal, SingleAisleIsOutAndBack) {
    Layout lay = grid(1, 5, 1, 2);
    StopSet s = make_stops({location_id(lay, 1, 2), location_id(lay, 1, 4)});
    EXPECT_EQ(route_length(Policy::optimal, s, lay), 16);
}

TEST(Routing, EmptyStopSetIsRejected) {
    Layout lay = grid(2, 3);
    for (Policy p : all_policies()) EXPECT_THROW(route_length(p, {}, lay), Error);
}

TEST(Routing, EvaluatorsMatchTracedWalk) {
    Rng rng(101);
    for (Policy p : all_policies())
        for (int t = 0; t < 400; ++t) {
            bool two = p == Policy::return_policy && t % 3 == 0;
            Layout lay = test::random_layout(rng, two);
            StopSet s = test::random_stops(rng, lay, p == Policy::optimal ? 6 : 8);
            ASSERT_EQ(route_length(p, s, lay), oracle::tour_cost(s, p, lay)) << to_string(p) << " " << stops_key(s);
        }
}

TEST(Routing, Dominance) {
    Rng rng(102);
    for (int t = 0; t < 500; ++t) {
        Layout lay = test::random_layout(rng, false);
        StopSet s = test::random_stops(rng, lay, 7);
        long long opt = route_length(Policy::optimal, s, lay);
        for (Policy p : all_policies()) EXPECT_LE(opt, route_length(p, s, lay));
        EXPECT_LE(route_length(Policy::largest_gap, s, lay), route_length(Policy::midpoint, s, lay));
    }
}

TEST(Routing, StopMultiplicityDoesNotChangeCost) {
    Rng rng(103);
    for (int t = 0; t < 200; ++t) {
        Layout lay = test::random_layout(rng, false, 3, 6);
        StopSet s = test::random_stops(rng, lay, 5);
        StopSet once = s;
        for (auto& [l, k] : once) k = 1;
        for (Policy p : all_policies()) EXPECT_EQ(route_length(p, s, lay), route_length(p, once, lay));
    }
}

TEST(Routing, DecompositionSumsToTotal) {
    Rng rng(104);
    for (Policy p : all_policies())
        for (int t = 0; t < 100; ++t) {
            Layout lay = test::random_layout(rng, false, 4, 6);
            RouteCost rc = route_cost(p, test::random_stops(rng, lay, 6), lay);
            long long sum = rc.horizontal;
            for (auto [a, v] : rc.vertical) sum += v;
            EXPECT_EQ(sum, rc.total) << to_string(p);
        }
}

TEST(Routing, SequenceVisitsEachLocationOnce) {
    Rng rng(105);
    for (Policy p : all_policies())
        for (int t = 0; t < 100; ++t) {
            Layout lay = test::random_layout(rng, p == Policy::return_policy && t % 2, 4, 6);
            StopSet s = test::random_stops(rng, lay, 6);
            std::vector<int> seq = route_sequence(p, s, lay);
            std::set<int> want, got(seq.begin(), seq.end());
            for (auto [l, k] : s) want.insert(l);
            EXPECT_EQ(got, want);
            EXPECT_EQ(seq.size(), want.size());
        }
}

TEST(Routing, OptimalSequenceRealizesCost) {
    Rng rng(106);
    for (int t = 0; t < 100; ++t) {
        Layout lay = test::random_layout(rng, false, 4, 6);
        StopSet s = test::random_stops(rng, lay, 6);
        std::vector<int> seq = route_sequence(Policy::optimal, s, lay);
        long long len = 0;
        int prev = kDepot;
        for (int l : seq) {
            len += oracle::grid_distance(lay, prev, l);
            prev = l;
        }
        len += oracle::grid_distance(lay, prev, kDepot);
        EXPECT_EQ(len, route_length(Policy::optimal, s, lay));
    }
}

TEST(Routing, EvaluatePlanSumsOrders) {
    Rng rng(107);
    Instance inst = test::tiny_instance(rng, Policy::sshape);
    Assignment a = inst.fixed_location();
    std::vector<int> load(inst.layout.num_locations(), 0);
    for (int l : a)
        if (l >= 0) ++load[l];
    for (int s = 0, l = 0; s < inst.num_skus; ++s) {
        if (a[s] >= 0) continue;
        while (load[l] >= inst.layout.capacity_of(l)) ++l;
        a[s] = l;
        ++load[l];
    }
    PlanCost pc = evaluate_plan(inst, a, Policy::sshape);
    long long sum = 0;
    for (int o = 0; o < inst.num_orders(); ++o) {
        EXPECT_EQ(pc.per_order[o], route_length(Policy::sshape, order_stops(inst, a, o), inst.layout));
        sum += pc.per_order[o];
    }
    EXPECT_EQ(pc.total, sum);
}

TEST(Routing, CacheAgreesWithEvaluator) {
    Layout lay = grid(3, 5);
    RouteCostCache cache(lay, Policy::largest_gap);
    Rng rng(108);
    for (int t = 0; t < 200; ++t) {
        StopSet s = test::random_stops(rng, lay, 4);
        EXPECT_EQ(cache(s), route_length(Policy::largest_gap, s, lay));
    }
    EXPECT_LE(cache.size(), 200u);
}
