#include "slaprp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "slaprp/rng.hpp"

namespace slaprp {

const char* to_string(LayoutKind k) {
    return k == LayoutKind::single_block ? "single_block" : "two_block_mid_depot";
}

LayoutKind layout_kind_from_string(const std::string& s) {
    if (s == "single_block") return LayoutKind::single_block;
    if (s == "two_block_mid_depot" || s == "two_block") return LayoutKind::two_block_mid_depot;
    throw Error("unknown layout kind '" + s + "'");
}

int Layout::total_capacity() const {
    int t = 0;
    for (int l = 0; l < num_locations(); ++l) t += capacity_of(l);
    return t;
}

bool Layout::valid(std::string* why) const {
    auto fail = [&](const char* m) {
        if (why) *why = m;
        return false;
    };
    if (aisles < 1) return fail("aisles must be >= 1");
    if (bays < 1) return fail("bays must be >= 1");
    if (D < 1) return fail("D must be >= 1");
    if (d < 1) return fail("d must be >= 1");
    if (capacity_override.empty()) {
        if (capacity < 1) return fail("capacity must be >= 1");
    } else {
        if (static_cast<int>(capacity_override.size()) != num_locations())
            return fail("capacity override list has wrong length");
        for (int k : capacity_override)
            if (k < 1) return fail("capacity must be >= 1");
    }
    return true;
}

int location_id(const Layout& lay, int aisle, int bay) {
    return (aisle - 1) * lay.locations_per_aisle() + (bay - 1);
}

int aisle_of(const Layout& lay, int l) { return l / lay.locations_per_aisle() + 1; }
int bay_of(const Layout& lay, int l) { return l % lay.locations_per_aisle() + 1; }

long long y_of(const Layout& lay, int l) {
    if (l == kDepot) return depot_y(lay);
    long long k = bay_of(lay, l);
    if (lay.kind == LayoutKind::two_block_mid_depot && k > lay.bays) return (k + 1) * lay.d;
    return k * lay.d;
}

long long x_of(const Layout& lay, int aisle) { return static_cast<long long>(lay.D) * (aisle - 1); }

std::vector<long long> cross_aisles(const Layout& lay) {
    long long b = lay.bays;
    if (lay.kind == LayoutKind::two_block_mid_depot) return {0, (b + 1) * lay.d, (2 * b + 2) * lay.d};
    return {0, (b + 1) * lay.d};
}

long long depot_y(const Layout& lay) {
    return lay.kind == LayoutKind::two_block_mid_depot ? static_cast<long long>(lay.bays + 1) * lay.d : 0;
}

static void check_location(const Layout& lay, int l) {
    if (l != kDepot && (l < 0 || l >= lay.num_locations()))
        throw Error("unknown location id " + std::to_string(l));
}

long long base_distance(const Layout& lay, int l1, int l2) {
    check_location(lay, l1);
    check_location(lay, l2);
    if (l1 == l2) return 0;
    long long y1 = y_of(lay, l1), y2 = y_of(lay, l2);
    int a1 = l1 == kDepot ? 1 : aisle_of(lay, l1);
    int a2 = l2 == kDepot ? 1 : aisle_of(lay, l2);
    // the depot sits on a cross aisle, so the straight walk from it is always shortest
    if (l1 == kDepot || l2 == kDepot) return x_of(lay, std::max(a1, a2)) + std::llabs(y1 - y2);
    if (a1 == a2) return std::llabs(y1 - y2);
    long long best = -1;
    for (long long c : cross_aisles(lay)) {
        long long v = std::llabs(y1 - c) + std::llabs(y2 - c);
        if (best < 0 || v < best) best = v;
    }
    return std::llabs(x_of(lay, a1) - x_of(lay, a2)) + best;
}

long long two_block_distance(const Layout& lay, int l1, int l2) {
    if (lay.kind != LayoutKind::two_block_mid_depot) throw Error("two_block_distance needs a two-block layout");
    return base_distance(lay, l1, l2);
}

bool WarehouseGraph::has_arc(int from, int to) const {
    for (int a : out[from])
        if (arcs[a].to == to) return true;
    return false;
}

WarehouseGraph build_graph(const Layout& lay) {
    std::string why;
    if (!lay.valid(&why)) throw Error("invalid layout: " + why);
    WarehouseGraph g;
    int nl = lay.num_locations();
    g.node_location.push_back(-1);
    g.node_visit.push_back(0);
    for (int l = 0; l < nl; ++l) {
        Location loc;
        loc.id = l;
        loc.aisle = aisle_of(lay, l);
        loc.bay = bay_of(lay, l);
        loc.capacity = lay.capacity_of(l);
        loc.first_node = static_cast<int>(g.node_location.size());
        for (int i = 1; i <= loc.capacity; ++i) {
            g.node_location.push_back(l);
            g.node_visit.push_back(i);
        }
        g.locations.push_back(loc);
    }
    int n = g.num_nodes();
    g.out.assign(n, {});
    g.in.assign(n, {});
    auto add = [&](int a, int b) {
        g.out[a].push_back(static_cast<int>(g.arcs.size()));
        g.in[b].push_back(static_cast<int>(g.arcs.size()));
        g.arcs.push_back({a, b});
    };
    for (int l = 0; l < nl; ++l) add(0, g.node(l, 1));
    for (int l = 0; l < nl; ++l) {
        for (int i = 1; i <= g.locations[l].capacity; ++i) {
            int v = g.node(l, i);
            add(v, 0);
            for (int l2 = 0; l2 < nl; ++l2)
                if (l2 != l) add(v, g.node(l2, 1));
            if (i < g.locations[l].capacity) add(v, v + 1);
        }
    }
    return g;
}

std::vector<int> Instance::demand() const {
    std::vector<int> dem(num_skus, 0);
    for (const auto& o : orders)
        for (int s : o)
            if (s >= 0 && s < num_skus) ++dem[s];
    return dem;
}

std::vector<std::vector<int>> Instance::orders_of_sku() const {
    std::vector<std::vector<int>> r(num_skus);
    for (int o = 0; o < num_orders(); ++o)
        for (int s : orders[o])
            if (s >= 0 && s < num_skus) r[s].push_back(o);
    return r;
}

std::vector<int> Instance::fixed_location() const {
    std::vector<int> r(num_skus, -1);
    for (auto [s, l] : fixed)
        if (s >= 0 && s < num_skus) r[s] = l;
    return r;
}

std::vector<Violation> validate_instance(const Instance& inst) {
    std::vector<Violation> v;
    std::string why;
    if (!inst.layout.valid(&why)) {
        v.push_back({"invalid layout", why});
        return v;
    }
    int nl = inst.layout.num_locations();
    if (inst.num_skus < 0) v.push_back({"invalid sku count", "negative number of SKUs"});
    if (inst.num_skus > inst.layout.total_capacity())
        v.push_back({"too many skus", std::to_string(inst.num_skus) + " SKUs exceed total capacity " +
                                          std::to_string(inst.layout.total_capacity())});
    for (int o = 0; o < inst.num_orders(); ++o) {
        const auto& ord = inst.orders[o];
        if (ord.empty()) v.push_back({"empty order", "order " + std::to_string(o) + " has no SKU"});
        std::set<int> seen;
        for (int s : ord) {
            if (s < 0 || s >= inst.num_skus)
                v.push_back({"unknown sku", "order " + std::to_string(o) + " references SKU " + std::to_string(s)});
            else if (!seen.insert(s).second)
                v.push_back({"duplicate sku", "order " + std::to_string(o) + " lists SKU " + std::to_string(s) + " twice"});
        }
    }
    std::vector<int> load(nl, 0);
    std::vector<int> fixed_count(std::max(inst.num_skus, 0), 0);
    for (auto [s, l] : inst.fixed) {
        bool ok = true;
        if (s < 0 || s >= inst.num_skus) {
            v.push_back({"unknown sku", "fixed assignment references SKU " + std::to_string(s)});
            ok = false;
        }
        if (l < 0 || l >= nl) {
            v.push_back({"unknown location", "fixed assignment references location " + std::to_string(l)});
            ok = false;
        }
        if (!ok) continue;
        if (++fixed_count[s] == 2) v.push_back({"sku fixed twice", "SKU " + std::to_string(s) + " is fixed more than once"});
        ++load[l];
    }
    for (int l = 0; l < nl; ++l)
        if (load[l] > inst.layout.capacity_of(l))
            v.push_back({"capacity exceeded", "location " + std::to_string(l) + " holds " + std::to_string(load[l]) +
                                                  " fixed SKUs but has capacity " +
                                                  std::to_string(inst.layout.capacity_of(l))});
    return v;
}

static std::vector<int> sample_distinct(Rng& rng, int n, int k) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

Instance generate_silva_instance(int aisles, int bays, int n_orders, int order_size, std::uint64_t seed) {
    auto in = [](int x, std::initializer_list<int> g) { return std::find(g.begin(), g.end(), x) != g.end(); };
    if (!in(aisles, {1, 3, 5}) || !in(bays, {5, 10}) || !in(n_orders, {1, 5, 10}) || !in(order_size, {3, 5}))
        throw Error("invalid grid parameter for the uniform benchmark family");
    Instance inst;
    inst.layout.kind = LayoutKind::single_block;
    inst.layout.aisles = aisles;
    inst.layout.bays = bays;
    inst.layout.capacity = 2;
    inst.num_skus = 2 * aisles * bays;
    inst.seed = seed;
    Rng rng(seed);
    for (int o = 0; o < n_orders; ++o) inst.orders.push_back(sample_distinct(rng, inst.num_skus, order_size));
    inst.name = "silva_" + std::to_string(aisles) + "x" + std::to_string(bays) + "_o" + std::to_string(n_orders) +
                "_s" + std::to_string(order_size) + "_seed" + std::to_string(seed);
    return inst;
}

Instance generate_guo_instance(double alpha, int n_orders, std::uint64_t seed, const GuoOptions& opt) {
    bool ok = false;
    for (double a : {0.2, 0.3, 0.4})
        if (std::fabs(alpha - a) < 1e-9) ok = true;
    if (!ok) throw Error("invalid alpha (expected 0.2, 0.3 or 0.4)");
    if (n_orders < 1) throw Error("number of orders must be positive");
    Instance inst;
    inst.layout.kind = LayoutKind::two_block_mid_depot;
    inst.layout.aisles = opt.aisles;
    inst.layout.bays = opt.bays_per_block;
    inst.layout.capacity = opt.capacity;
    std::string why;
    if (!inst.layout.valid(&why)) throw Error("invalid layout: " + why);
    if (opt.total_skus > inst.layout.total_capacity()) throw Error("more SKUs than storage nodes");
    inst.num_skus = opt.total_skus;
    inst.seed = seed;
    inst.default_policy = "return";
    Rng rng(seed);
    int n_free = static_cast<int>(std::ceil(alpha * opt.total_skus - 1e-9));
    std::vector<int> free_skus = sample_distinct(rng, inst.num_skus, n_free);
    std::vector<char> is_free(inst.num_skus, 0);
    for (int s : free_skus) is_free[s] = 1;
    std::vector<int> slots;
    for (int l = 0; l < inst.layout.num_locations(); ++l)
        for (int k = 0; k < inst.layout.capacity_of(l); ++k) slots.push_back(l);
    rng.shuffle(slots);
    int next = 0;
    for (int s = 0; s < inst.num_skus; ++s)
        if (!is_free[s]) inst.fixed.emplace_back(s, slots[next++]);
    for (int o = 0; o < n_orders; ++o) {
        int size = opt.min_order_size + static_cast<int>(rng.below(opt.max_order_size - opt.min_order_size + 1));
        size = std::min(size, inst.num_skus);
        inst.orders.push_back(sample_distinct(rng, inst.num_skus, size));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "guo_a%.1f_o%d_seed%llu", alpha, n_orders, static_cast<unsigned long long>(seed));
    inst.name = buf;
    inst.metadata.push_back({"layout_defaults", "aisles=" + std::to_string(opt.aisles) + ",bays_per_block=" +
                                                    std::to_string(opt.bays_per_block) +
                                                    ",capacity=" + std::to_string(opt.capacity) + " (default)"});
    inst.metadata.push_back({"free_skus", std::to_string(n_free)});
    return inst;
}

Instance generate_random_instance(const RandomInstanceOptions& opt) {
    std::string why;
    if (!opt.layout.valid(&why)) throw Error("invalid layout: " + why);
    if (opt.num_skus > opt.layout.total_capacity()) throw Error("more SKUs than storage nodes");
    if (opt.num_fixed > opt.num_skus) throw Error("more fixed SKUs than SKUs");
    Instance inst;
    inst.layout = opt.layout;
    inst.num_skus = opt.num_skus;
    inst.seed = opt.seed;
    Rng rng(opt.seed);
    std::vector<int> slots;
    for (int l = 0; l < inst.layout.num_locations(); ++l)
        for (int k = 0; k < inst.layout.capacity_of(l); ++k) slots.push_back(l);
    rng.shuffle(slots);
    std::vector<int> fixed_skus = sample_distinct(rng, inst.num_skus, opt.num_fixed);
    for (std::size_t i = 0; i < fixed_skus.size(); ++i) inst.fixed.emplace_back(fixed_skus[i], slots[i]);
    int hi = std::min(opt.max_order_size, inst.num_skus);
    int lo = std::min(opt.min_order_size, hi);
    for (int o = 0; o < opt.num_orders; ++o) inst.orders.push_back(sample_distinct(rng, inst.num_skus, rng.between(lo, hi)));
    inst.name = "random_seed" + std::to_string(opt.seed);
    return inst;
}

}  // namespace slaprp
