#include <gtest/gtest.h>

#include <cmath>

#include "slaprp/master.hpp"
#include "slaprp/oracle.hpp"
#include "slaprp/pricing.hpp"
#include "support.hpp"

using namespace slaprp;

TEST(Column, CountsAndKey) {
    Column c{0, 10, {{1, 2}, {3, 1}}, false};
    EXPECT_EQ(c.count(1), 2);
    EXPECT_EQ(c.count(2), 0);
    EXPECT_EQ(c.total_stops(), 3);
    Column d = c;
    d.cost = 99;
    EXPECT_EQ(column_key(c), column_key(d));
    d.order = 1;
    EXPECT_NE(column_key(c), column_key(d));
}

TEST(ColumnPool, Deduplicates) {
    ColumnPool pool;
    bool ins = false;
    int a = pool.add(Column{0, 5, {{0, 1}}, false}, &ins);
    EXPECT_TRUE(ins);
    int b = pool.add(Column{0, 5, {{0, 1}}, false}, &ins);
    EXPECT_FALSE(ins);
    EXPECT_EQ(a, b);
    pool.add(Column{1, 5, {{0, 1}}, false});
    EXPECT_EQ(pool.size(), 2);
    EXPECT_EQ(pool.of_order(1).size(), 1u);
}

TEST(SuperColumn, FillsEveryLocation) {
    Rng rng(301);
    Instance inst = test::tiny_instance(rng, Policy::optimal);
    Column c = make_super_column(inst, 0, 1000);
    EXPECT_TRUE(c.is_super);
    EXPECT_EQ(c.cost, 1000);
    for (int l = 0; l < inst.layout.num_locations(); ++l) EXPECT_EQ(c.count(l), inst.layout.capacity_of(l));
}

TEST(NodeContext, FixedAndForcedArePlaced) {
    Layout lay;
    lay.aisles = 2;
    lay.bays = 2;
    lay.capacity = 1;
    Instance inst;
    inst.layout = lay;
    inst.num_skus = 3;
    inst.orders = {{0, 1}, {1, 2}};
    inst.fixed = {{0, 3}};
    BranchState bs;
    bs.forced = {{1, 2}};
    bs.forbidden = {{2, 0}};
    NodeContext ctx = make_node_context(inst, bs);
    EXPECT_TRUE(ctx.consistent);
    EXPECT_EQ(ctx.placed[0], 3);
    EXPECT_EQ(ctx.placed[1], 2);
    EXPECT_EQ(ctx.placed[2], -1);
    EXPECT_EQ(ctx.free_skus, (std::vector<int>{2}));
    EXPECT_FALSE(ctx.is_allowed(2, 0));
    EXPECT_TRUE(ctx.is_allowed(2, 1));
    EXPECT_EQ(ctx.mandatory[0][3], 1);
    EXPECT_EQ(ctx.mandatory[1][2], 1);
    EXPECT_EQ(ctx.occupancy[3], 1);
    EXPECT_EQ(ctx.max_stops[1][3], 0);

    // Column for order 1 must stop at 2 and make two stops.
    EXPECT_TRUE(column_compatible(Column{1, 0, {{1, 1}, {2, 1}}, false}, inst, ctx));
    EXPECT_FALSE(column_compatible(Column{1, 0, {{0, 1}, {1, 1}}, false}, inst, ctx));
    EXPECT_FALSE(column_compatible(Column{1, 0, {{2, 1}}, false}, inst, ctx));
    EXPECT_FALSE(column_compatible(Column{1, 0, {{2, 1}, {3, 1}}, false}, inst, ctx));
}

TEST(NodeContext, ConflictingDecisionsAreInconsistent) {
    Layout lay;
    lay.aisles = 1;
    lay.bays = 2;
    lay.capacity = 1;
    Instance inst;
    inst.layout = lay;
    inst.num_skus = 2;
    inst.orders = {{0, 1}};
    BranchState bs;
    bs.forced = {{0, 0}, {1, 0}};
    EXPECT_FALSE(make_node_context(inst, bs).consistent);
}

TEST(Rmp, SuperColumnsAloneAreFeasible) {
    Rng rng(302);
    Instance inst = test::tiny_instance(rng, Policy::optimal);
    NodeContext ctx = make_node_context(inst, {});
    Rmp rmp(inst, ctx);
    for (int o = 0; o < inst.num_orders(); ++o) rmp.add_column(make_super_column(inst, o, 1000));
    ASSERT_EQ(rmp.solve(), LpStatus::optimal);
    EXPECT_NEAR(rmp.objective(), 1000.0 * inst.num_orders(), 1e-6);
}

TEST(Rmp, ConvergedSolutionInvariants) {
    Rng rng(303);
    for (int t = 0; t < 25; ++t) {
        Policy p = all_policies()[t % 5];
        Instance inst = test::tiny_instance(rng, p);
        NodeContext ctx = make_node_context(inst, {});
        Rmp rmp(inst, ctx);
        for (int o = 0; o < inst.num_orders(); ++o) rmp.add_column(make_super_column(inst, o, 10000));
        ASSERT_TRUE(test::converge(rmp, p));
        int L = inst.layout.num_locations();
        std::vector<double> rho_sum(inst.num_orders(), 0.0);
        for (int i = 0; i < rmp.num_columns(); ++i) rho_sum[rmp.column(i).order] += rmp.rho(i);
        for (double r : rho_sum) EXPECT_NEAR(r, 1.0, 1e-6);
        for (int s = 0; s < inst.num_skus; ++s) {
            double sum = 0;
            for (int l = 0; l < L; ++l) {
                EXPECT_GE(rmp.xi(s, l), -1e-9);
                sum += rmp.xi(s, l);
            }
            EXPECT_NEAR(sum, 1.0, 1e-6);
        }
        // Explicit reduced costs agree with pricing after convergence.
        for (int i = 0; i < rmp.num_columns(); ++i) {
            const Column& c = rmp.column(i);
            if (c.is_super) continue;
            double rc = reduced_cost(c, rmp.duals(), rmp.active_cuts());
            EXPECT_GE(rc, -1e-6);
            EXPECT_NEAR(rc, route_reduced_cost(rmp.pricing_problem(c.order, p), c.stops, c.cost), 1e-6);
            if (rmp.rho(i) > 1e-6) EXPECT_NEAR(rc, 0.0, 1e-6);
        }
        // The root DW bound never exceeds the optimum.
        EXPECT_LE(rmp.objective(), oracle::enumerate_slaprp(inst, p).objective + 1e-6);
    }
}

TEST(Rmp, WithoutSl1HasNoSl1Rows) {
    Rng rng(304);
    Instance inst = test::tiny_instance(rng, Policy::optimal);
    NodeContext ctx = make_node_context(inst, {});
    Rmp with(inst, ctx), without(inst, ctx, nullptr, false);
    EXPECT_EQ(without.row_counts().sl1, 0);
    EXPECT_GE(with.row_counts().sl1, 0);
    EXPECT_EQ(with.row_counts().capacity, inst.layout.num_locations());
}

// Every vertex of {sum_l xi_sl = 1, sum_s xi_sl <= K_l, 0 <= xi} is integral.
TEST(AssignmentPolytope, LpOptimaAreIntegral) {
    Rng rng(305);
    for (int t = 0; t < 30; ++t) {
        int L = rng.between(2, 8), S = rng.between(1, L * 2);
        std::vector<int> K(L);
        int cap = 0;
        for (int& k : K) cap += k = rng.between(1, 3);
        S = std::min(S, cap);
        auto lp = make_lp_solver();
        std::vector<int> row_l(L);
        for (int l = 0; l < L; ++l) row_l[l] = lp->add_row(-kInf, K[l], {});
        std::vector<int> row_s(S);
        for (int s = 0; s < S; ++s) row_s[s] = lp->add_row(1, 1, {});
        std::vector<int> col;
        for (int s = 0; s < S; ++s)
            for (int l = 0; l < L; ++l)
                col.push_back(lp->add_col(rng.uniform() * 20 - 10, 0, kInf, {{row_l[l], 1.0}, {row_s[s], 1.0}}));
        ASSERT_EQ(lp->solve(), LpStatus::optimal);
        for (int c : col) {
            double v = lp->col_value(c);
            EXPECT_NEAR(v, std::round(v), 1e-9);
        }
    }
}

TEST(LpAdapter, TimeLimitZeroStops) {
    auto lp = make_lp_solver();
    Rng rng(306);
    std::vector<int> rows;
    for (int i = 0; i < 60; ++i) rows.push_back(lp->add_row(1, kInf, {}));
    for (int r : rows) lp->add_col(100.0, 0, kInf, {{r, 1.0}});
    for (int j = 0; j < 200; ++j) {
        SparseVec e;
        for (int r : rows)
            if (rng.below(4) == 0) e.push_back({r, 1.0 + rng.uniform()});
        lp->add_col(1.0 + rng.uniform(), 0, kInf, e);
    }
    lp->set_time_limit(0.0);
    LpStatus st = lp->solve();
    EXPECT_TRUE(st == LpStatus::time_limit || st == LpStatus::optimal);
    lp->set_time_limit(kInf);
    EXPECT_NE(lp->solve(), LpStatus::time_limit);
}
