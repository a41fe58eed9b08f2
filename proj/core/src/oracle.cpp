#include "slaprp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace slaprp::oracle {

namespace {

// Walking grid: aisle a (1-based), level k measured in bay steps from the front.
struct Grid {
    const Layout& lay;
    bool two_block;
    int top;                   // level of the back cross aisle
    std::vector<int> cross;    // levels carrying a cross aisle
    int depot_level;

    explicit Grid(const Layout& l) : lay(l), two_block(l.kind == LayoutKind::two_block_mid_depot) {
        top = two_block ? 2 * l.bays + 2 : l.bays + 1;
        cross = two_block ? std::vector<int>{0, l.bays + 1, top} : std::vector<int>{0, top};
        depot_level = two_block ? l.bays + 1 : 0;
    }
    int per_aisle() const { return two_block ? 2 * lay.bays : lay.bays; }
    int aisle(int loc) const { return loc / per_aisle() + 1; }
    int level(int loc) const {
        int j = loc % per_aisle() + 1;
        return two_block && j > lay.bays ? j + 1 : j;
    }
    int point(int a, int k) const { return (a - 1) * (top + 1) + k; }
    int num_points() const { return lay.aisles * (top + 1); }
    bool is_cross(int k) const { return std::find(cross.begin(), cross.end(), k) != cross.end(); }

    std::vector<long long> dijkstra(int src) const {
        std::vector<long long> dist(num_points(), -1);
        using Item = std::pair<long long, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        std::vector<long long> best(num_points(), std::numeric_limits<long long>::max());
        best[src] = 0;
        pq.push({0, src});
        while (!pq.empty()) {
            auto [dv, v] = pq.top();
            pq.pop();
            if (dist[v] >= 0) continue;
            dist[v] = dv;
            int a = v / (top + 1) + 1, k = v % (top + 1);
            auto relax = [&](int w, long long c) {
                if (dist[w] < 0 && dv + c < best[w]) {
                    best[w] = dv + c;
                    pq.push({best[w], w});
                }
            };
            if (k > 0) relax(point(a, k - 1), lay.d);
            if (k < top) relax(point(a, k + 1), lay.d);
            if (is_cross(k)) {
                if (a > 1) relax(point(a - 1, k), lay.D);
                if (a < lay.aisles) relax(point(a + 1, k), lay.D);
            }
        }
        return dist;
    }
    int loc_point(int loc) const { return loc == kDepot ? point(1, depot_level) : point(aisle(loc), level(loc)); }
};

// Walk recorder: legs must follow an aisle or a cross aisle.
struct Walk {
    const Grid& g;
    int a, k;
    long long length = 0;
    std::map<int, std::vector<std::pair<int, int>>> covered;  // aisle -> vertical segments

    explicit Walk(const Grid& grid) : g(grid), a(1), k(grid.depot_level) {}

    void along_cross(int a2) {
        if (a2 == a) return;
        if (!g.is_cross(k)) throw Error("oracle walk left the corridors");
        length += static_cast<long long>(std::abs(a2 - a)) * g.lay.D;
        a = a2;
    }
    void in_aisle(int k2) {
        if (k2 == k) return;
        covered[a].push_back({std::min(k, k2), std::max(k, k2)});
        length += static_cast<long long>(std::abs(k2 - k)) * g.lay.d;
        k = k2;
    }
    void check(const std::map<int, std::vector<int>>& picks) const {
        if (a != 1 || k != g.depot_level) throw Error("oracle walk does not end at the depot");
        for (auto& [aa, ks] : picks)
            for (int kk : ks) {
                bool ok = false;
                auto it = covered.find(aa);
                if (it != covered.end())
                    for (auto [lo, hi] : it->second) ok = ok || (lo <= kk && kk <= hi);
                if (!ok) throw Error("oracle walk misses a pick");
            }
    }
};

std::map<int, std::vector<int>> picks_by_aisle(const Grid& g, const StopSet& stops) {
    std::map<int, std::vector<int>> m;
    for (auto [l, c] : stops) m[g.aisle(l)].push_back(g.level(l));
    for (auto& [a, v] : m) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return m;
}

long long walk_return(const Grid& g, const std::map<int, std::vector<int>>& m) {
    Walk w(g);
    for (auto& [a, ks] : m) {
        w.along_cross(a);
        if (g.two_block) {
            int mid = g.lay.bays + 1;
            if (ks.front() < mid) {
                w.in_aisle(ks.front());
                w.in_aisle(mid);
            }
            if (ks.back() > mid) {
                w.in_aisle(ks.back());
                w.in_aisle(mid);
            }
        } else {
            w.in_aisle(ks.back());
            w.in_aisle(0);
        }
    }
    w.along_cross(1);
    w.check(m);
    return w.length;
}

long long walk_sshape(const Grid& g, const std::map<int, std::vector<int>>& m) {
    Walk w(g);
    int n = static_cast<int>(m.size()), i = 0;
    for (auto& [a, ks] : m) {
        ++i;
        w.along_cross(a);
        if (w.k == 0) {
            if (i == n && n % 2 == 1) {
                w.in_aisle(ks.back());
                w.in_aisle(0);
            } else {
                w.in_aisle(g.top);
            }
        } else {
            w.in_aisle(0);
        }
    }
    w.along_cross(1);
    w.check(m);
    return w.length;
}

// split[a] = number of picks of middle aisle a collected from the front.
long long walk_split(const Grid& g, const std::map<int, std::vector<int>>& m, const std::map<int, int>& split) {
    Walk w(g);
    int u = m.begin()->first, v = m.rbegin()->first;
    w.along_cross(u);
    w.in_aisle(g.top);
    for (auto& [a, k] : split) {
        const auto& ks = m.at(a);
        if (k == static_cast<int>(ks.size())) continue;
        w.along_cross(a);
        w.in_aisle(ks[k]);
        w.in_aisle(g.top);
    }
    w.along_cross(v);
    w.in_aisle(0);
    for (auto it = split.rbegin(); it != split.rend(); ++it) {
        const auto& ks = m.at(it->first);
        if (it->second == 0) continue;
        w.along_cross(it->first);
        w.in_aisle(ks[it->second - 1]);
        w.in_aisle(0);
    }
    w.along_cross(1);
    w.check(m);
    return w.length;
}

}  // namespace

long long grid_distance(const Layout& lay, int from, int to) {
    Grid g(lay);
    return g.dijkstra(g.loc_point(from))[g.loc_point(to)];
}

long long trace_policy_path(const StopSet& stops, Policy p, const Layout& lay) {
    if (stops.empty()) throw Error("empty stop set");
    Grid g(lay);
    auto m = picks_by_aisle(g, stops);
    if (g.two_block && p != Policy::return_policy) throw Error("unsupported combination");
    switch (p) {
        case Policy::return_policy: return walk_return(g, m);
        case Policy::sshape: return walk_sshape(g, m);
        case Policy::midpoint:
        case Policy::largest_gap: {
            if (m.size() == 1) return walk_return(g, m);
            int mp = lay.bays / 2;
            std::vector<int> middle;
            for (auto& [a, ks] : m)
                if (a != m.begin()->first && a != m.rbegin()->first) middle.push_back(a);
            std::map<int, int> split;
            if (p == Policy::midpoint) {
                for (int a : middle) {
                    int k = 0;
                    for (int kk : m[a]) k += kk <= mp;
                    split[a] = k;
                }
                return walk_split(g, m, split);
            }
            // try every combination of turn points
            long long best = std::numeric_limits<long long>::max();
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == middle.size()) {
                    best = std::min(best, walk_split(g, m, split));
                    return;
                }
                for (int k = 0; k <= static_cast<int>(m[middle[i]].size()); ++k) {
                    split[middle[i]] = k;
                    rec(i + 1);
                }
            };
            rec(0);
            return best;
        }
        case Policy::optimal: return tour_cost(stops, p, lay);
    }
    throw Error("unknown policy");
}

long long tour_cost(const StopSet& stops, Policy p, const Layout& lay) {
    if (p != Policy::optimal) return trace_policy_path(stops, p, lay);
    if (stops.empty()) throw Error("empty stop set");
    if (lay.kind != LayoutKind::single_block) throw Error("unsupported combination");
    if (stops.size() > 9) throw Error("oracle tour too large");
    Grid g(lay);
    std::vector<int> pts{g.loc_point(kDepot)};
    for (auto [l, c] : stops) pts.push_back(g.loc_point(l));
    int n = static_cast<int>(pts.size());
    std::vector<std::vector<long long>> dist(n);
    for (int i = 0; i < n; ++i) {
        auto all = g.dijkstra(pts[i]);
        for (int j = 0; j < n; ++j) dist[i].push_back(all[pts[j]]);
    }
    std::vector<int> perm;
    for (int i = 1; i < n; ++i) perm.push_back(i);
    long long best = std::numeric_limits<long long>::max();
    do {
        long long c = dist[0][perm.front()] + dist[perm.back()][0];
        for (std::size_t i = 0; i + 1 < perm.size(); ++i) c += dist[perm[i]][perm[i + 1]];
        best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

OracleResult enumerate_slaprp(const Instance& inst, Policy p, long long budget) {
    const Layout& lay = inst.layout;
    int L = lay.num_locations();
    std::vector<int> residual(L);
    for (int l = 0; l < L; ++l) residual[l] = lay.capacity_of(l);
    Assignment a(inst.num_skus, -1);
    for (auto [s, l] : inst.fixed) {
        a[s] = l;
        --residual[l];
    }
    std::vector<int> free_skus;
    for (int s = 0; s < inst.num_skus; ++s)
        if (a[s] < 0) free_skus.push_back(s);

    std::map<std::vector<int>, long long> memo;
    auto order_cost = [&](int o) {
        std::vector<int> locs;
        for (int s : inst.orders[o]) locs.push_back(a[s]);
        std::sort(locs.begin(), locs.end());
        auto it = memo.find(locs);
        if (it != memo.end()) return it->second;
        StopSet st;
        for (int l : locs) {
            if (!st.empty() && st.back().first == l)
                ++st.back().second;
            else
                st.push_back({l, 1});
        }
        long long c = tour_cost(st, p, lay);
        memo.emplace(locs, c);
        return c;
    };

    OracleResult res;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == free_skus.size()) {
            if (++res.evaluations > budget) throw Error("oracle enumeration budget exceeded");
            long long total = 0;
            for (int o = 0; o < inst.num_orders(); ++o) total += order_cost(o);
            if (!res.feasible || total < res.objective) {
                res.feasible = true;
                res.objective = total;
                res.assignment = a;
            }
            return;
        }
        for (int l = 0; l < L; ++l) {
            if (residual[l] == 0) continue;
            --residual[l];
            a[free_skus[i]] = l;
            rec(i + 1);
            a[free_skus[i]] = -1;
            ++residual[l];
        }
    };
    rec(0);
    return res;
}

TourResult enumerate_tours(const PricingProblem& p, int max_length) {
    if (p.length > max_length) throw Error("oracle tour enumeration above size cap");
    const Layout& lay = p.instance->layout;
    int L = lay.num_locations();
    TourResult res;
    std::vector<int> cnt(L, 0);
    std::function<void(int, int)> rec = [&](int l, int left) {
        if (l == L) {
            if (left != 0) return;
            StopSet st;
            for (int i = 0; i < L; ++i)
                if (cnt[i] > 0) st.push_back({i, cnt[i]});
            ++res.enumerated;
            long long c = tour_cost(st, p.policy, lay);
            double rc = static_cast<double>(c) - p.mu;
            for (auto [i, k] : st) rc -= k * p.pi[i] + p.sigma[i];
            for (const auto& g : p.cuts) {
                bool hit = false;
                for (auto [i, k] : st) hit = hit || g.in_set[i];
                if (hit) rc -= g.lambda;
            }
            if (!res.feasible || rc < res.min_reduced_cost) {
                res.feasible = true;
                res.min_reduced_cost = rc;
                res.stops = st;
                res.cost = c;
            }
            return;
        }
        int lo = p.mandatory[l], hi = std::min(p.max_stops[l], left);
        for (int k = lo; k <= hi; ++k) {
            cnt[l] = k;
            rec(l + 1, left - k);
        }
        cnt[l] = 0;
    };
    rec(0, p.length);
    return res;
}

SubsetResult enumerate_sl_subsets(const std::vector<double>& xi, const std::vector<RouteSupport>& routes, int min_size,
                                  int max_locations) {
    int L = static_cast<int>(xi.size());
    if (L > max_locations) throw Error("oracle subset enumeration above size cap");
    std::vector<unsigned> route_mask;
    for (const auto& r : routes) {
        unsigned m = 0;
        for (int l : r.locations) m |= 1u << l;
        route_mask.push_back(m);
    }
    SubsetResult res;
    for (unsigned s = 0; s < (1u << L); ++s) {
        if (__builtin_popcount(s) < min_size) continue;
        ++res.enumerated;
        double v = 0.0;
        for (int l = 0; l < L; ++l)
            if (s >> l & 1) v += xi[l];
        for (std::size_t r = 0; r < routes.size(); ++r)
            if (route_mask[r] & s) v -= routes[r].rho;
        if (v > res.max_violation) {
            res.max_violation = v;
            res.subset.clear();
            for (int l = 0; l < L; ++l)
                if (s >> l & 1) res.subset.push_back(l);
        }
    }
    return res;
}

}  // namespace slaprp::oracle
