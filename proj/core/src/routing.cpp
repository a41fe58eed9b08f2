#include "slaprp/routing.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace slaprp {

const char* to_string(Policy p) {
    switch (p) {
        case Policy::optimal: return "optimal";
        case Policy::return_policy: return "return";
        case Policy::sshape: return "sshape";
        case Policy::midpoint: return "midpoint";
        case Policy::largest_gap: return "largestgap";
    }
    return "?";
}

Policy policy_from_string(const std::string& s) {
    if (s == "optimal") return Policy::optimal;
    if (s == "return") return Policy::return_policy;
    if (s == "sshape" || s == "s-shape") return Policy::sshape;
    if (s == "midpoint") return Policy::midpoint;
    if (s == "largestgap" || s == "largest-gap" || s == "largest_gap") return Policy::largest_gap;
    throw Error("unknown policy '" + s + "'");
}

const std::vector<Policy>& all_policies() {
    static const std::vector<Policy> v{Policy::optimal, Policy::return_policy, Policy::sshape, Policy::midpoint,
                                       Policy::largest_gap};
    return v;
}

bool policy_supported(Policy p, const Layout& lay) {
    return lay.kind == LayoutKind::single_block || p == Policy::return_policy;
}

static void require_supported(Policy p, const Layout& lay) {
    if (!policy_supported(p, lay))
        throw Error(std::string("unsupported combination: policy ") + to_string(p) + " on layout " + to_string(lay.kind));
}

StopSet make_stops(const std::vector<int>& locations) {
    std::map<int, int> m;
    for (int l : locations) ++m[l];
    return StopSet(m.begin(), m.end());
}

std::string stops_key(const StopSet& stops) {
    std::string k;
    for (auto [l, c] : stops) {
        k += std::to_string(l);
        k += 'x';
        k += std::to_string(c);
        k += ',';
    }
    return k;
}

namespace {

void check_stops(const StopSet& stops, const Layout& lay) {
    if (stops.empty()) throw Error("empty stop set");
    for (auto [l, c] : stops) {
        if (l < 0 || l >= lay.num_locations()) throw Error("unknown location id " + std::to_string(l));
        if (c < 1) throw Error("stop count must be positive");
    }
}

// bays visited per aisle, ascending; single-block geometry
std::map<int, std::vector<int>> bays_by_aisle(const StopSet& stops, const Layout& lay) {
    std::map<int, std::vector<int>> m;
    for (auto [l, c] : stops) m[aisle_of(lay, l)].push_back(bay_of(lay, l));
    for (auto& [a, v] : m) std::sort(v.begin(), v.end());
    return m;
}

// two-block: depth below/above the middle cross aisle, in bays
int tb_depth(const Layout& lay, int bay) { return bay <= lay.bays ? lay.bays + 1 - bay : bay - lay.bays; }
bool tb_lower(const Layout& lay, int bay) { return bay <= lay.bays; }

int largest_gap_split(const std::vector<int>& b, int bbar, int* gap_out) {
    // returns the number of picks served from the front
    int best = b.front(), split = 0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        if (b[i + 1] - b[i] > best) {
            best = b[i + 1] - b[i];
            split = static_cast<int>(i) + 1;
        }
    if (bbar + 1 - b.back() > best) {
        best = bbar + 1 - b.back();
        split = static_cast<int>(b.size());
    }
    if (gap_out) *gap_out = best;
    return split;
}

RouteCost finish(RouteCost rc) {
    rc.total = rc.horizontal;
    for (auto& [a, v] : rc.vertical) rc.total += v;
    return rc;
}

}  // namespace

RouteCost cost_return(const StopSet& stops, const Layout& lay) {
    check_stops(stops, lay);
    RouteCost rc;
    auto m = bays_by_aisle(stops, lay);
    int v = m.rbegin()->first;
    rc.horizontal = 2LL * lay.D * (v - 1);
    for (auto& [a, bays] : m) {
        long long f;
        if (lay.kind == LayoutKind::two_block_mid_depot) {
            int lo = 0, up = 0;
            for (int b : bays) (tb_lower(lay, b) ? lo : up) = std::max(tb_lower(lay, b) ? lo : up, tb_depth(lay, b));
            f = lo + up;
        } else {
            f = bays.back();
        }
        rc.vertical.push_back({a, 2LL * lay.d * f});
    }
    return finish(rc);
}

RouteCost cost_sshape(const StopSet& stops, const Layout& lay) {
    check_stops(stops, lay);
    require_supported(Policy::sshape, lay);
    RouteCost rc;
    auto m = bays_by_aisle(stops, lay);
    int v = m.rbegin()->first;
    int cnt = static_cast<int>(m.size());
    rc.horizontal = 2LL * lay.D * (v - 1);
    int i = 0;
    for (auto& [a, bays] : m) {
        ++i;
        bool last_odd = (cnt % 2 == 1) && i == cnt;
        rc.vertical.push_back({a, last_odd ? 2LL * lay.d * bays.back() : static_cast<long long>(lay.bays + 1) * lay.d});
    }
    return finish(rc);
}

RouteCost cost_midpoint(const StopSet& stops, const Layout& lay) {
    check_stops(stops, lay);
    require_supported(Policy::midpoint, lay);
    auto m = bays_by_aisle(stops, lay);
    if (m.size() == 1) return cost_return(stops, lay);
    RouteCost rc;
    int u = m.begin()->first, v = m.rbegin()->first;
    int mp = midpoint_bay(lay);
    rc.horizontal = 2LL * lay.D * (v - 1);
    for (auto& [a, bays] : m) {
        if (a == u || a == v) {
            rc.vertical.push_back({a, static_cast<long long>(lay.bays + 1) * lay.d});
            continue;
        }
        int fm = 0, fp = 0;
        for (int b : bays) {
            if (b <= mp)
                fm = std::max(fm, b);
            else
                fp = std::max(fp, lay.bays + 1 - b);
        }
        rc.vertical.push_back({a, 2LL * lay.d * (fm + fp)});
    }
    return finish(rc);
}

RouteCost cost_largestgap(const StopSet& stops, const Layout& lay) {
    check_stops(stops, lay);
    require_supported(Policy::largest_gap, lay);
    auto m = bays_by_aisle(stops, lay);
    if (m.size() == 1) return cost_return(stops, lay);
    RouteCost rc;
    int u = m.begin()->first, v = m.rbegin()->first;
    rc.horizontal = 2LL * lay.D * (v - 1);
    for (auto& [a, bays] : m) {
        if (a == u || a == v) {
            rc.vertical.push_back({a, static_cast<long long>(lay.bays + 1) * lay.d});
            continue;
        }
        int g = 0;
        largest_gap_split(bays, lay.bays, &g);
        rc.vertical.push_back({a, 2LL * lay.d * (lay.bays + 1 - g)});
    }
    return finish(rc);
}

namespace {

// Held-Karp over distinct locations; returns length and visiting order.
long long held_karp(const std::vector<int>& locs, const Layout& lay, std::vector<int>* order) {
    int n = static_cast<int>(locs.size());
    std::vector<long long> dep(n);
    std::vector<std::vector<long long>> dist(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i) {
        dep[i] = base_distance(lay, kDepot, locs[i]);
        for (int j = 0; j < n; ++j) dist[i][j] = base_distance(lay, locs[i], locs[j]);
    }
    const long long INF = std::numeric_limits<long long>::max() / 4;
    int full = 1 << n;
    std::vector<long long> dp(static_cast<std::size_t>(full) * n, INF);
    std::vector<int> par(static_cast<std::size_t>(full) * n, -1);
    for (int i = 0; i < n; ++i) dp[(1u << i) * n + i] = dep[i];
    for (int mask = 1; mask < full; ++mask)
        for (int i = 0; i < n; ++i) {
            long long cur = dp[static_cast<std::size_t>(mask) * n + i];
            if (!(mask >> i & 1) || cur >= INF) continue;
            for (int j = 0; j < n; ++j) {
                if (mask >> j & 1) continue;
                int nm = mask | (1 << j);
                long long c = cur + dist[i][j];
                auto& slot = dp[static_cast<std::size_t>(nm) * n + j];
                if (c < slot) {
                    slot = c;
                    par[static_cast<std::size_t>(nm) * n + j] = i;
                }
            }
        }
    long long best = INF;
    int last = -1;
    for (int i = 0; i < n; ++i) {
        long long c = dp[static_cast<std::size_t>(full - 1) * n + i] + dep[i];
        if (c < best) {
            best = c;
            last = i;
        }
    }
    if (order) {
        order->clear();
        int mask = full - 1, cur = last;
        while (cur >= 0) {
            order->push_back(locs[cur]);
            int p = par[static_cast<std::size_t>(mask) * n + cur];
            mask ^= 1 << cur;
            cur = p;
        }
        std::reverse(order->begin(), order->end());
    }
    return best;
}

}  // namespace

RouteCost cost_optimal(const StopSet& stops, const Layout& lay, int cap) {
    check_stops(stops, lay);
    require_supported(Policy::optimal, lay);
    if (static_cast<int>(stops.size()) > cap)
        throw Error("stop count " + std::to_string(stops.size()) + " above exact routing cap " + std::to_string(cap));
    std::vector<int> locs;
    for (auto [l, c] : stops) locs.push_back(l);
    RouteCost rc;
    rc.vertical.push_back({0, held_karp(locs, lay, nullptr)});
    return finish(rc);
}

RouteCost route_cost(Policy p, const StopSet& stops, const Layout& lay) {
    switch (p) {
        case Policy::optimal: return cost_optimal(stops, lay);
        case Policy::return_policy: return cost_return(stops, lay);
        case Policy::sshape: return cost_sshape(stops, lay);
        case Policy::midpoint: return cost_midpoint(stops, lay);
        case Policy::largest_gap: return cost_largestgap(stops, lay);
    }
    throw Error("unknown policy");
}

long long route_length(Policy p, const StopSet& stops, const Layout& lay) { return route_cost(p, stops, lay).total; }

std::vector<int> route_sequence(Policy p, const StopSet& stops, const Layout& lay) {
    check_stops(stops, lay);
    require_supported(p, lay);
    std::vector<int> seq;
    if (p == Policy::optimal) {
        std::vector<int> locs;
        for (auto [l, c] : stops) locs.push_back(l);
        held_karp(locs, lay, &seq);
        return seq;
    }
    auto m = bays_by_aisle(stops, lay);
    auto loc = [&](int a, int b) { return location_id(lay, a, b); };
    if (p == Policy::return_policy) {
        for (auto& [a, bays] : m) {
            if (lay.kind == LayoutKind::two_block_mid_depot) {
                std::vector<int> lo, up;
                for (int b : bays) (tb_lower(lay, b) ? lo : up).push_back(b);
                for (auto it = lo.rbegin(); it != lo.rend(); ++it) seq.push_back(loc(a, *it));
                for (int b : up) seq.push_back(loc(a, b));
            } else {
                for (int b : bays) seq.push_back(loc(a, b));
            }
        }
        return seq;
    }
    if (p == Policy::sshape) {
        bool up = true;
        for (auto& [a, bays] : m) {
            if (up)
                for (int b : bays) seq.push_back(loc(a, b));
            else
                for (auto it = bays.rbegin(); it != bays.rend(); ++it) seq.push_back(loc(a, *it));
            up = !up;
        }
        return seq;
    }
    if (m.size() == 1) {
        for (int b : m.begin()->second) seq.push_back(loc(m.begin()->first, b));
        return seq;
    }
    int u = m.begin()->first, v = m.rbegin()->first;
    std::map<int, int> split;  // aisle -> number of picks served from the front
    for (auto& [a, bays] : m) {
        if (a == u || a == v) continue;
        if (p == Policy::midpoint) {
            int k = 0;
            for (int b : bays)
                if (b <= midpoint_bay(lay)) ++k;
            split[a] = k;
        } else {
            split[a] = largest_gap_split(bays, lay.bays, nullptr);
        }
    }
    for (int b : m[u]) seq.push_back(loc(u, b));
    for (auto& [a, k] : split) {
        const auto& bays = m[a];
        for (int i = static_cast<int>(bays.size()) - 1; i >= k; --i) seq.push_back(loc(a, bays[i]));
    }
    for (auto it = m[v].rbegin(); it != m[v].rend(); ++it) seq.push_back(loc(v, *it));
    for (auto it = split.rbegin(); it != split.rend(); ++it) {
        const auto& bays = m[it->first];
        for (int i = 0; i < it->second; ++i) seq.push_back(loc(it->first, bays[i]));
    }
    return seq;
}

StopSet order_stops(const Instance& inst, const Assignment& a, int order) {
    std::vector<int> locs;
    for (int s : inst.orders[order]) locs.push_back(a.at(s));
    return make_stops(locs);
}

PlanCost evaluate_plan(const Instance& inst, const Assignment& a, Policy p) {
    if (static_cast<int>(a.size()) != inst.num_skus) throw Error("assignment size does not match SKU count");
    std::vector<int> load(inst.layout.num_locations(), 0);
    for (int s = 0; s < inst.num_skus; ++s) {
        if (a[s] < 0 || a[s] >= inst.layout.num_locations()) throw Error("SKU " + std::to_string(s) + " is unassigned");
        if (++load[a[s]] > inst.layout.capacity_of(a[s]))
            throw Error("capacity exceeded at location " + std::to_string(a[s]));
    }
    for (auto [s, l] : inst.fixed)
        if (a[s] != l) throw Error("fixed assignment violated for SKU " + std::to_string(s));
    PlanCost pc;
    for (int o = 0; o < inst.num_orders(); ++o) {
        pc.per_order.push_back(route_length(p, order_stops(inst, a, o), inst.layout));
        pc.total += pc.per_order.back();
    }
    return pc;
}

long long RouteCostCache::operator()(const StopSet& stops) {
    std::string k = stops_key(stops);
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    long long c = route_length(policy_, stops, lay_);
    memo_.emplace(std::move(k), c);
    return c;
}

}  // namespace slaprp
