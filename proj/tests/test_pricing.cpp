#include <gtest/gtest.h>

#include <cmath>

#include "slaprp/oracle.hpp"
#include "slaprp/pricing.hpp"
#include "support.hpp"

using namespace slaprp;

namespace {

Instance single_order(Rng& rng, Policy p) {
    test::TinyShape shape;
    shape.max_locations = 8;
    shape.capacity = static_cast<int>(rng.between(1, 2));
    shape.max_skus = 8;
    shape.max_orders = 1;
    shape.max_order_size = 5;
    Instance inst = test::tiny_instance(rng, p, shape);
    return inst;
}

void randomize_duals(Rng& rng, PricingProblem& pp) {
    int L = static_cast<int>(pp.pi.size());
    pp.mu = rng.uniform() * 60;
    for (int l = 0; l < L; ++l) {
        pp.pi[l] = rng.below(2) ? rng.uniform() * 5 : 0.0;
        pp.sigma[l] = rng.below(2) ? rng.uniform() * 5 : 0.0;
    }
    int nc = rng.between(0, 3);
    for (int c = 0; c < nc; ++c) {
        CutGroup g;
        g.in_set.assign(L, 0);
        for (int l = 0; l < L; ++l) g.in_set[l] = rng.below(3) == 0;
        g.lambda = rng.uniform() * 4;
        pp.cuts.push_back(g);
    }
}

}  // namespace

TEST(Pricing, ZeroDualsGiveCheapestRoute) {
    Rng rng(201);
    for (Policy p : all_policies())
        for (int t = 0; t < 20; ++t) {
            Instance inst = single_order(rng, p);
            PricingProblem pp = make_pricing_problem(inst, p, 0);
            PricingResult r = price(pp);
            oracle::TourResult o = oracle::enumerate_tours(pp);
            ASSERT_EQ(r.feasible, o.feasible);
            if (o.feasible) EXPECT_NEAR(r.min_reduced_cost, static_cast<double>(o.cost), 1e-9);
        }
}

TEST(Pricing, MatchesTourEnumeration) {
    Rng rng(202);
    for (Policy p : all_policies())
        for (int t = 0; t < 60; ++t) {
            Instance inst = single_order(rng, p);
            PricingProblem pp = make_pricing_problem(inst, p, 0);
            randomize_duals(rng, pp);
            PricingResult r = price(pp);
            oracle::TourResult o = oracle::enumerate_tours(pp);
            ASSERT_EQ(r.feasible, o.feasible) << to_string(p);
            if (o.feasible) ASSERT_NEAR(r.min_reduced_cost, o.min_reduced_cost, 1e-9) << to_string(p);
        }
}

TEST(Pricing, ReturnedRoutesAreConsistent) {
    Rng rng(203);
    for (Policy p : all_policies())
        for (int t = 0; t < 30; ++t) {
            Instance inst = single_order(rng, p);
            PricingProblem pp = make_pricing_problem(inst, p, 0);
            randomize_duals(rng, pp);
            PricingOptions opt;
            PricingResult r = price(pp, opt);
            ASSERT_LE(static_cast<int>(r.routes.size()), opt.max_columns);
            for (std::size_t i = 0; i < r.routes.size(); ++i) {
                const PricedRoute& pr = r.routes[i];
                int n = 0;
                for (auto [l, k] : pr.stops) n += k;
                EXPECT_EQ(n, pp.length);
                EXPECT_EQ(pr.cost, route_length(p, pr.stops, inst.layout));
                EXPECT_NEAR(pr.reduced_cost, route_reduced_cost(pp, pr.stops, pr.cost), 1e-9);
                EXPECT_LT(pr.reduced_cost, opt.threshold);
                if (i > 0) EXPECT_LE(r.routes[i - 1].reduced_cost, pr.reduced_cost + 1e-12);
            }
            if (!r.routes.empty()) EXPECT_NEAR(r.routes[0].reduced_cost, r.min_reduced_cost, 1e-9);
        }
}

TEST(Pricing, DominanceDoesNotChangeOptimum) {
    Rng rng(204);
    for (Policy p : all_policies())
        for (int t = 0; t < 30; ++t) {
            Instance inst = single_order(rng, p);
            PricingProblem pp = make_pricing_problem(inst, p, 0);
            randomize_duals(rng, pp);
            PricingOptions on, off;
            off.dominance = false;
            off.first_stop_restriction = false;
            PricingResult a = price(pp, on), b = price(pp, off);
            ASSERT_EQ(a.feasible, b.feasible);
            if (a.feasible) EXPECT_NEAR(a.min_reduced_cost, b.min_reduced_cost, 1e-9);
            EXPECT_LE(a.stats.labels, b.stats.labels);
        }
}

TEST(Pricing, MandatoryStopsAreServed) {
    Layout lay;
    lay.aisles = 2;
    lay.bays = 3;
    lay.capacity = 1;
    Instance inst;
    inst.layout = lay;
    inst.num_skus = 3;
    inst.orders = {{0, 1, 2}};
    inst.fixed = {{0, location_id(lay, 2, 3)}};
    PricingProblem pp = make_pricing_problem(inst, Policy::return_policy, 0);
    ASSERT_EQ(pp.mandatory[location_id(lay, 2, 3)], 1);
    PricingResult r = price(pp, PricingOptions{.max_columns = 1000, .threshold = 1e9});
    ASSERT_TRUE(r.feasible);
    for (const auto& pr : r.routes) {
        bool hit = false;
        for (auto [l, k] : pr.stops) hit |= l == location_id(lay, 2, 3);
        EXPECT_TRUE(hit);
        // The fixed SKU takes the only slot there, so no second stop.
        for (auto [l, k] : pr.stops) EXPECT_LE(k, pp.max_stops[l]);
    }
}

TEST(Labeler, ExtendRejectsFullLocation) {
    Layout lay;
    lay.aisles = 1;
    lay.bays = 2;
    lay.capacity = 1;
    Instance inst;
    inst.layout = lay;
    inst.num_skus = 2;
    inst.orders = {{0, 1}};
    PricingProblem pp = make_pricing_problem(inst, Policy::optimal, 0);
    Labeler lab(pp);
    Label s = lab.start();
    auto l1 = lab.extend(s, 0);
    ASSERT_TRUE(l1.has_value());
    Reject why = Reject::none;
    EXPECT_FALSE(lab.extend(*l1, 0, &why).has_value());
    EXPECT_NE(why, Reject::none);
    auto l2 = lab.extend(*l1, 1);
    ASSERT_TRUE(l2.has_value());
    auto closed = lab.close(*l2);
    ASSERT_TRUE(closed.has_value());
    EXPECT_EQ(closed->second, route_length(Policy::optimal, make_stops({0, 1}), lay));
    EXPECT_FALSE(lab.close(*l1).has_value());
}

TEST(Labeler, DominanceIsReflexiveOnEqualLabels) {
    Rng rng(205);
    Instance inst = single_order(rng, Policy::optimal);
    PricingProblem pp = make_pricing_problem(inst, Policy::optimal, 0);
    Labeler lab(pp);
    Label s = lab.start();
    for (int l = 0; l < inst.layout.num_locations(); ++l)
        if (auto e = lab.extend(s, l)) {
            EXPECT_TRUE(lab.dominates(*e, *e));
            Label worse = *e;
            worse.rc += 1.0;
            EXPECT_TRUE(lab.dominates(*e, worse));
            EXPECT_FALSE(lab.dominates(worse, *e));
        }
}
