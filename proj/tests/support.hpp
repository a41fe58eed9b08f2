#pragma once

#include <algorithm>

#include "slaprp/master.hpp"
#include "slaprp/model.hpp"
#include "slaprp/pricing.hpp"
#include "slaprp/rng.hpp"
#include "slaprp/routing.hpp"

namespace slaprp::test {

// Random instance small enough for the brute-force oracles.
struct TinyShape {
    int max_locations = 6;
    int capacity = 1;
    int max_skus = 5;
    int max_orders = 3;
    int max_order_size = 3;
    bool allow_fixed = true;
};

inline Instance tiny_instance(Rng& rng, Policy p, const TinyShape& shape = {}) {
    RandomInstanceOptions ro;
    Layout& lay = ro.layout;
    if (p == Policy::return_policy && rng.below(3) == 0) {
        lay.kind = LayoutKind::two_block_mid_depot;
        lay.aisles = rng.between(1, std::max(1, shape.max_locations / 2));
        lay.bays = rng.between(1, std::max(1, shape.max_locations / (2 * lay.aisles)));
    } else {
        lay.aisles = rng.between(1, std::min(3, shape.max_locations));
        lay.bays = rng.between(1, std::max(1, shape.max_locations / lay.aisles));
    }
    lay.capacity = shape.capacity;
    lay.D = rng.between(1, 3);
    lay.d = rng.between(1, 2);
    ro.num_skus = std::min(lay.total_capacity(), rng.between(2, shape.max_skus));
    ro.num_orders = rng.between(1, shape.max_orders);
    ro.min_order_size = 1;
    ro.max_order_size = std::min(shape.max_order_size, ro.num_skus);
    ro.num_fixed = shape.allow_fixed ? static_cast<int>(rng.below(2)) : 0;
    ro.seed = rng.next();
    return generate_random_instance(ro);
}

inline Layout random_layout(Rng& rng, bool two_block, int max_aisles = 5, int max_bays = 10) {
    Layout lay;
    lay.kind = two_block ? LayoutKind::two_block_mid_depot : LayoutKind::single_block;
    lay.aisles = rng.between(1, max_aisles);
    lay.bays = rng.between(1, max_bays);
    lay.D = rng.between(1, 4);
    lay.d = rng.between(1, 3);
    return lay;
}

inline StopSet random_stops(Rng& rng, const Layout& lay, int max_stops) {
    std::vector<int> locs;
    int n = rng.between(1, max_stops);
    for (int i = 0; i < n; ++i) locs.push_back(static_cast<int>(rng.below(lay.num_locations())));
    return make_stops(locs);
}

// Plain column generation at one node (no cuts); false if an LP fails or it does not settle.
inline bool converge(Rmp& rmp, Policy p, int max_iter = 200) {
    const Instance& inst = rmp.instance();
    for (int it = 0; it < max_iter; ++it) {
        if (rmp.solve() != LpStatus::optimal) return false;
        bool added = false;
        for (int o = 0; o < inst.num_orders(); ++o)
            for (const auto& pr : price(rmp.pricing_problem(o, p)).routes)
                added |= rmp.add_column(Column{o, pr.cost, pr.stops, false}) >= 0;
        if (!added) return true;
    }
    return false;
}

inline Rmp root_rmp(const Instance& inst, const NodeContext& ctx, long long big = 10000) {
    Rmp rmp(inst, ctx);
    for (int o = 0; o < inst.num_orders(); ++o) rmp.add_column(make_super_column(inst, o, big));
    return rmp;
}

}  // namespace slaprp::test
