#include <gtest/gtest.h>

#include <set>

#include "slaprp/io.hpp"
#include "slaprp/oracle.hpp"
#include "support.hpp"

using namespace slaprp;

TEST(Layout, LocationNumberingIsAisleMajor) {
    Layout lay;
    lay.aisles = 3;
    lay.bays = 4;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 4; ++b) {
            int l = location_id(lay, a, b);
            EXPECT_EQ(aisle_of(lay, l), a);
            EXPECT_EQ(bay_of(lay, l), b);
        }
    EXPECT_EQ(location_id(lay, 2, 1), 4);
}

TEST(Layout, TwoBlockHasTwiceTheBaysPerAisle) {
    Layout lay;
    lay.kind = LayoutKind::two_block_mid_depot;
    lay.aisles = 2;
    lay.bays = 3;
    EXPECT_EQ(lay.locations_per_aisle(), 6);
    EXPECT_EQ(lay.num_locations(), 12);
    EXPECT_EQ(cross_aisles(lay).size(), 3u);
    EXPECT_EQ(depot_y(lay), cross_aisles(lay)[1]);
}

TEST(Layout, ValidRejectsNonPositiveDimensions) {
    Layout lay;
    lay.bays = 0;
    std::string why;
    EXPECT_FALSE(lay.valid(&why));
    EXPECT_FALSE(why.empty());
}

// Hand-computed: D=3, d=2, 2 aisles x 3 bays, depot at aisle 1 front.
TEST(Distance, SmallHandExample) {
    Layout lay;
    lay.aisles = 2;
    lay.bays = 3;
    lay.D = 3;
    lay.d = 2;
    EXPECT_EQ(base_distance(lay, kDepot, location_id(lay, 1, 1)), 2);
    EXPECT_EQ(base_distance(lay, kDepot, location_id(lay, 2, 3)), 3 + 6);
    // Different aisles: over the front (2+2) or the back (6+6) cross aisle, plus D.
    EXPECT_EQ(base_distance(lay, location_id(lay, 1, 1), location_id(lay, 2, 1)), 3 + 4);
    EXPECT_EQ(base_distance(lay, location_id(lay, 1, 3), location_id(lay, 2, 3)), 3 + 4);
}

TEST(Distance, MatchesGridDijkstra) {
    Rng rng(41);
    for (int t = 0; t < 2000; ++t) {
        Layout lay = test::random_layout(rng, t % 2 == 1, 6, 12);
        int l1 = static_cast<int>(rng.below(lay.num_locations() + 1)) - 1;
        int l2 = static_cast<int>(rng.below(lay.num_locations()));
        long long want = oracle::grid_distance(lay, l1, l2);
        if (lay.kind == LayoutKind::two_block_mid_depot)
            ASSERT_EQ(two_block_distance(lay, l1, l2), want);
        else
            ASSERT_EQ(base_distance(lay, l1, l2), want);
    }
}

TEST(Distance, SymmetricAndTriangle) {
    Rng rng(43);
    for (int t = 0; t < 500; ++t) {
        Layout lay = test::random_layout(rng, false, 4, 6);
        int L = lay.num_locations();
        int a = static_cast<int>(rng.below(L)), b = static_cast<int>(rng.below(L)), c = static_cast<int>(rng.below(L));
        EXPECT_EQ(base_distance(lay, a, b), base_distance(lay, b, a));
        EXPECT_LE(base_distance(lay, a, c), base_distance(lay, a, b) + base_distance(lay, b, c));
        EXPECT_EQ(base_distance(lay, a, a), 0);
    }
}

TEST(Graph, NodeCountsAndDepotArcs) {
    Layout lay;
    lay.aisles = 2;
    lay.bays = 2;
    lay.capacity = 2;
    WarehouseGraph g = build_graph(lay);
    EXPECT_EQ(g.num_storage_nodes(), 8);
    for (int v = 1; v < g.num_nodes(); ++v) {
        EXPECT_TRUE(g.has_arc(0, v) == (g.node_visit[v] == 1)) << v;
        EXPECT_TRUE(g.has_arc(v, 0));
    }
    // Visits of a location are chained in order.
    int l = 1;
    EXPECT_TRUE(g.has_arc(g.node(l, 1), g.node(l, 2)));
    EXPECT_FALSE(g.has_arc(g.node(l, 2), g.node(l, 1)));
}

TEST(Generators, SilvaShape) {
    Instance inst = generate_silva_instance(3, 5, 10, 5, 7);
    EXPECT_EQ(inst.num_skus, 30);
    EXPECT_EQ(inst.num_orders(), 10);
    for (const auto& o : inst.orders) EXPECT_EQ(o.size(), 5u);
    EXPECT_TRUE(validate_instance(inst).empty());
    EXPECT_THROW(generate_silva_instance(2, 5, 1, 3, 1), Error);
}

TEST(Generators, GuoFixesAllButAlphaShare) {
    GuoOptions g;
    Instance inst = generate_guo_instance(0.3, 20, 3, g);
    EXPECT_EQ(inst.layout.kind, LayoutKind::two_block_mid_depot);
    EXPECT_EQ(inst.num_skus - static_cast<int>(inst.fixed.size()), 24);
    EXPECT_TRUE(validate_instance(inst).empty());
    EXPECT_THROW(generate_guo_instance(0.5, 5, 1), Error);
}

TEST(Generators, Deterministic) {
    Instance a = generate_guo_instance(0.2, 30, 99), b = generate_guo_instance(0.2, 30, 99);
    EXPECT_EQ(instance_to_json(a), instance_to_json(b));
    EXPECT_EQ(instance_hash(a), instance_hash(b));
    Instance c = generate_guo_instance(0.2, 30, 100);
    EXPECT_NE(instance_hash(a), instance_hash(c));
}

TEST(Validate, ReportsEachProblem) {
    Instance inst;
    inst.layout.aisles = 1;
    inst.layout.bays = 2;
    inst.layout.capacity = 1;
    inst.num_skus = 2;
    inst.orders = {{0, 0}, {}, {5}};
    inst.fixed = {{0, 0}, {1, 0}};
    std::set<std::string> codes;
    for (const auto& v : validate_instance(inst)) codes.insert(v.code);
    EXPECT_TRUE(codes.count("duplicate sku"));
    EXPECT_TRUE(codes.count("empty order"));
    EXPECT_TRUE(codes.count("unknown sku"));
    EXPECT_TRUE(codes.count("capacity exceeded"));
    inst.num_skus = 3;
    codes.clear();
    for (const auto& v : validate_instance(inst)) codes.insert(v.code);
    EXPECT_TRUE(codes.count("too many skus"));
}

TEST(Instance, DemandAndOrdersOfSku) {
    Instance inst;
    inst.layout.bays = 3;
    inst.num_skus = 3;
    inst.orders = {{0, 2}, {2}, {1, 2}};
    EXPECT_EQ(inst.demand(), (std::vector<int>{1, 1, 3}));
    EXPECT_EQ(inst.orders_of_sku()[2], (std::vector<int>{0, 1, 2}));
}

TEST(Io, JsonRoundTrip) {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        Instance inst = test::tiny_instance(rng, Policy::return_policy);
        std::string text = instance_to_json(inst);
        Instance back = instance_from_json(text);
        EXPECT_EQ(instance_to_json(back), text);
        EXPECT_EQ(back.orders, inst.orders);
        EXPECT_EQ(back.fixed, inst.fixed);
        EXPECT_EQ(back.layout.kind, inst.layout.kind);
    }
}

TEST(Io, MalformedJsonThrows) {
    EXPECT_THROW(instance_from_json("{"), Error);
    EXPECT_THROW(instance_from_json(R"({"name":"x"})"), Error);
}
