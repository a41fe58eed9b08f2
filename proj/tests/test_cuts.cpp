#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "slaprp/cuts.hpp"
#include "slaprp/oracle.hpp"
#include "support.hpp"

using namespace slaprp;

namespace {

std::vector<RouteSupport> support_of(const Rmp& rmp, int order) {
    std::vector<RouteSupport> out;
    int L = rmp.instance().layout.num_locations();
    for (int i = 0; i < rmp.num_columns(); ++i) {
        const Column& c = rmp.column(i);
        if (c.order != order || rmp.rho(i) <= 1e-9) continue;
        RouteSupport r{rmp.rho(i), {}};
        for (int l = 0; l < L; ++l)
            if (c.is_super || c.visits(l)) r.locations.push_back(l);
        out.push_back(r);
    }
    return out;
}

}  // namespace

TEST(Separation, HandExample) {
    // xi = (.5, .5, 0); one route with rho .4 stops at location 0 only.
    std::vector<double> xi{0.5, 0.5, 0.0};
    std::vector<RouteSupport> routes{{0.4, {0}}, {0.6, {0, 1}}};
    SeparationResult r = separate_sl(xi, routes);
    // {0,1}: 1.0 - 1.0 = 0; {1,2}: .5 - .6; best is 0 so nothing is violated.
    EXPECT_FALSE(r.found);
    EXPECT_NEAR(r.value, 0.0, 1e-12);

    routes = {{0.5, {0}}, {0.5, {2}}};
    r = separate_sl(xi, routes);
    // {0,1}: 1.0 - 0.5 = 0.5.
    EXPECT_TRUE(r.found);
    EXPECT_NEAR(r.value, 0.5, 1e-12);
    EXPECT_EQ(r.locations, (std::vector<int>{0, 1}));
}

TEST(Separation, MatchesSubsetEnumeration) {
    Rng rng(401);
    for (int t = 0; t < 300; ++t) {
        int L = rng.between(2, 12);
        std::vector<double> xi(L);
        for (auto& x : xi) x = rng.below(3) ? rng.uniform() : 0.0;
        std::vector<RouteSupport> rs;
        int R = rng.between(0, 6);
        for (int r = 0; r < R; ++r) {
            RouteSupport s{rng.uniform() * 0.5, {}};
            for (int l = 0; l < L; ++l)
                if (rng.below(3) == 0) s.locations.push_back(l);
            rs.push_back(s);
        }
        SeparationResult a = separate_sl(xi, rs);
        oracle::SubsetResult b = oracle::enumerate_sl_subsets(xi, rs);
        ASSERT_NEAR(a.value, b.max_violation, 1e-9);
        ASSERT_FALSE(a.exhausted);
        EXPECT_EQ(a.found, a.value > SeparationOptions{}.min_violation);
        if (!a.found) {
            EXPECT_TRUE(a.locations.empty());
            continue;
        }
        // The returned set realizes the value.
        double v = 0;
        for (int l : a.locations) v += xi[l];
        for (const auto& r : rs) {
            bool hit = false;
            for (int l : r.locations) hit |= std::count(a.locations.begin(), a.locations.end(), l) > 0;
            if (hit) v -= r.rho;
        }
        EXPECT_NEAR(v, a.value, 1e-9);
        EXPECT_GE(a.locations.size(), 2u);
    }
}

TEST(Separation, OrderOfExplorationDoesNotMatter) {
    Rng rng(402);
    for (int t = 0; t < 100; ++t) {
        int L = rng.between(2, 10);
        std::vector<double> xi(L);
        for (auto& x : xi) x = rng.uniform();
        std::vector<RouteSupport> rs{{rng.uniform(), {0}}, {rng.uniform(), {L - 1}}};
        SeparationOptions a, b;
        b.decreasing_order = false;
        EXPECT_NEAR(separate_sl(xi, rs, a).value, separate_sl(xi, rs, b).value, 1e-9);
    }
}

TEST(Separation, RmpMatchesEnumeration) {
    Rng rng(403);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        Policy p = all_policies()[t % 5];
        test::TinyShape shape;
        shape.max_locations = 12;
        shape.max_skus = 7;
        shape.max_orders = 4;
        shape.max_order_size = 4;
        Instance inst = test::tiny_instance(rng, p, shape);
        Rmp rmp = test::root_rmp(inst, make_node_context(inst, {}));
        ASSERT_TRUE(test::converge(rmp, p));
        int L = inst.layout.num_locations();
        for (int o = 0; o < inst.num_orders(); ++o)
            for (int s : inst.orders[o]) {
                if (rmp.context().placed[s] >= 0) continue;
                std::vector<double> xi(L);
                for (int l = 0; l < L; ++l) xi[l] = rmp.xi(s, l);
                SeparationResult a = separate(rmp, o, s);
                oracle::SubsetResult b = oracle::enumerate_sl_subsets(xi, support_of(rmp, o));
                if (std::isinf(b.max_violation))
                    ASSERT_EQ(a.value, b.max_violation);
                else
                    ASSERT_NEAR(a.value, b.max_violation, 1e-9);
                if (a.found) {
                    SLCut cut{o, s, a.locations, a.value};
                    EXPECT_NEAR(cut_violation(rmp, cut), a.value, 1e-9);
                }
                ++checked;
            }
    }
    EXPECT_GT(checked, 40);
}

TEST(CutPool, DeduplicatesAndCaps) {
    CutPool pool(2);
    bool ins = false;
    int a = pool.add(SLCut{0, 1, {0, 2}, 0.1}, &ins);
    EXPECT_TRUE(ins);
    int b = pool.add(SLCut{0, 1, {0, 2}, 0.3}, &ins);
    EXPECT_FALSE(ins);
    EXPECT_EQ(a, b);
    pool.add(SLCut{0, 2, {0, 2}, 0.1});
    EXPECT_EQ(pool.size(), 2);
    EXPECT_EQ(pool.max_active_per_order(), 2);
    EXPECT_TRUE(CutPool::should_separate(3));
    EXPECT_FALSE(CutPool::should_separate(4));
}

TEST(CutPool, AddedCutsRaiseTheBoundAndBind) {
    Rng rng(404);
    int raised = 0;
    for (int t = 0; t < 60; ++t) {
        Policy p = Policy::optimal;
        test::TinyShape shape;
        shape.max_locations = 8;
        shape.max_skus = 8;
        shape.capacity = 1 + t % 2;
        shape.max_orders = 5;
        shape.max_order_size = 4;
        Instance inst = test::tiny_instance(rng, p, shape);
        Rmp rmp = test::root_rmp(inst, make_node_context(inst, {}));
        ASSERT_TRUE(test::converge(rmp, p));
        double before = rmp.objective();
        CutPool pool;
        int added = 0;
        for (int o = 0; o < inst.num_orders(); ++o)
            for (int s : inst.orders[o]) {
                SeparationResult r = separate(rmp, o, s);
                if (!r.found) continue;
                SLCut cut{o, s, r.locations, r.value};
                rmp.add_cut(cut, pool.add(cut));
                ++added;
            }
        if (added == 0) continue;
        ASSERT_TRUE(test::converge(rmp, p));
        EXPECT_GE(rmp.objective(), before - 1e-6);
        if (rmp.objective() > before + 1e-6) ++raised;
        for (std::size_t i = 0; i < rmp.active_cuts().size(); ++i)
            EXPECT_LE(cut_violation(rmp, rmp.active_cuts()[i]), 1e-6);
        EXPECT_TRUE(pool.pool_check(rmp).empty());
    }
    EXPECT_GT(raised, 0);
}
