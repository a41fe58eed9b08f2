#include "slaprp/pricing.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "slaprp/lp.hpp"

namespace slaprp {

const char* to_string(Reject r) {
    switch (r) {
        case Reject::none: return "none";
        case Reject::length: return "length";
        case Reject::arc: return "arc";
        case Reject::reachability: return "reachability";
        case Reject::mandatory: return "mandatory";
        case Reject::capacity: return "capacity";
        case Reject::policy: return "policy";
    }
    return "?";
}

PricingProblem make_pricing_problem(const Instance& inst, Policy policy, int order) {
    PricingProblem p;
    int L = inst.layout.num_locations();
    p.instance = &inst;
    p.policy = policy;
    p.order = order;
    p.length = static_cast<int>(inst.orders.at(order).size());
    p.pi.assign(L, 0.0);
    p.sigma.assign(L, 0.0);
    p.mandatory.assign(L, 0);
    p.max_stops.resize(L);
    for (int l = 0; l < L; ++l) p.max_stops[l] = inst.layout.capacity_of(l);
    std::vector<char> in_order(inst.num_skus, 0);
    for (int s : inst.orders[order]) in_order[s] = 1;
    for (auto [s, l] : inst.fixed) {
        if (in_order[s])
            ++p.mandatory[l];
        else
            --p.max_stops[l];
    }
    return p;
}

double route_reduced_cost(const PricingProblem& p, const StopSet& stops, long long cost) {
    double rc = static_cast<double>(cost) - p.mu;
    for (auto [l, c] : stops) rc -= c * p.pi[l] + p.sigma[l];
    for (const auto& g : p.cuts) {
        bool hit = false;
        for (auto [l, c] : stops) hit = hit || g.in_set[l];
        if (hit) rc -= g.lambda;
    }
    return rc;
}

namespace {

enum Phase { kFirst = 0, kTop = 1, kLast = 2, kBottom = 3 };

inline bool test_bit(const std::vector<std::uint64_t>& b, int i) { return (b[i >> 6] >> (i & 63)) & 1u; }
inline void set_bit(std::vector<std::uint64_t>& b, int i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
inline void clear_bit(std::vector<std::uint64_t>& b, int i) { b[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

bool subset_of(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

// Locations walked past on the front-preferring shortest path (single block).
std::vector<int> passed_locations(const Layout& lay, int from, int to) {
    std::vector<int> out;
    int a2 = aisle_of(lay, to), b2 = bay_of(lay, to);
    if (from == kDepot) {
        for (int b = 1; b < b2; ++b) out.push_back(location_id(lay, a2, b));
        return out;
    }
    int a1 = aisle_of(lay, from), b1 = bay_of(lay, from);
    if (a1 == a2) {
        for (int b = std::min(b1, b2) + 1; b < std::max(b1, b2); ++b) out.push_back(location_id(lay, a1, b));
        return out;
    }
    bool front = b1 + b2 <= 2 * (lay.bays + 1) - b1 - b2;
    for (int b = 1; b <= lay.bays; ++b) {
        if (front ? b < b1 : b > b1) out.push_back(location_id(lay, a1, b));
        if (front ? b < b2 : b > b2) out.push_back(location_id(lay, a2, b));
    }
    return out;
}

}  // namespace

Labeler::Labeler(const PricingProblem& p, const PricingOptions& opt)
    : p_(p), opt_(opt), lay_(p.instance->layout), L_(lay_.num_locations()) {
    if (!policy_supported(p.policy, lay_))
        throw Error(std::string("unsupported combination: policy ") + to_string(p.policy) + " on layout " +
                    to_string(lay_.kind));
    mand_index_.assign(L_, -1);
    for (int l = 0; l < L_; ++l)
        if (p.mandatory[l] > 0) {
            mand_index_[l] = static_cast<int>(mand_locs_.size());
            mand_locs_.push_back(l);
        }
    for (const auto& g : p.cuts) {
        std::vector<int> locs;
        for (int l = 0; l < L_; ++l)
            if (g.in_set[l]) locs.push_back(l);
        group_locs_.push_back(std::move(locs));
    }
}

Label Labeler::start() const {
    Label s;
    s.rc = -p_.mu;
    for (int l : mand_locs_) s.remaining.push_back(p_.mandatory[l]);
    s.counted.assign((p_.cuts.size() + 63) / 64, 0);
    switch (p_.policy) {
        case Policy::optimal:
            s.open.assign((L_ + 63) / 64, 0);
            for (int l = 0; l < L_; ++l)
                if (p_.max_stops[l] > 0) set_bit(s.open, l);
            break;
        case Policy::return_policy: break;
        case Policy::sshape: s.extras = {0}; break;
        case Policy::midpoint: s.extras = {kFirst, 0}; break;
        case Policy::largest_gap:
            s.extras.assign(3 + 2 * lay_.aisles, 0);
            for (int a = 1; a <= lay_.aisles; ++a) s.extras[3 + 2 * (a - 1)] = lay_.bays + 1;
            break;
    }
    return s;
}

// Walking distance of the move to a new location l2 under the policy, with the
// updated policy state, or the reason the policy never makes this move.
Reject Labeler::transition(const Label& from, int l2, long long* dist, std::vector<int>* ex) const {
    const long long D = lay_.D, d = lay_.d;
    const int B = lay_.bays;
    int a2 = aisle_of(lay_, l2), b2 = bay_of(lay_, l2);
    bool at_depot = from.location < 0;
    int a1 = at_depot ? 0 : aisle_of(lay_, from.location);
    int b1 = at_depot ? 0 : bay_of(lay_, from.location);
    *ex = from.extras;
    auto cross_back = [&] { return d * (B + 1 - b1) + D * (a2 - a1) + d * (B + 1 - b2); };
    auto cross_front = [&] { return d * b1 + D * std::abs(a1 - a2) + d * b2; };

    switch (p_.policy) {
        case Policy::optimal:
            *dist = base_distance(lay_, at_depot ? kDepot : from.location, l2);
            return Reject::none;

        case Policy::return_policy: {
            // order key (aisle, block, depth from the depot's cross aisle)
            bool two = lay_.kind == LayoutKind::two_block_mid_depot;
            auto seg = [&](int b) { return two && b > B ? 1 : 0; };
            auto depth = [&](int b) { return two ? (b <= B ? B + 1 - b : b - B) : b; };
            if (at_depot) {
                *dist = D * (a2 - 1) + d * depth(b2);
                return Reject::none;
            }
            int s1 = seg(b1), s2 = seg(b2), d1 = depth(b1), d2 = depth(b2);
            if (std::tie(a2, s2, d2) <= std::tie(a1, s1, d1)) return Reject::arc;
            *dist = (a1 == a2 && s1 == s2) ? d * (d2 - d1) : d * d1 + D * (a2 - a1) + d * d2;
            return Reject::none;
        }

        case Policy::sshape: {
            if (at_depot) {
                *dist = D * (a2 - 1) + d * b2;
                (*ex)[0] = 0;
                return Reject::none;
            }
            bool back = from.extras[0] != 0;
            if (a2 == a1) {
                if (back ? b2 >= b1 : b2 <= b1) return Reject::arc;
                *dist = d * std::abs(b2 - b1);
                return Reject::none;
            }
            if (a2 < a1) return Reject::arc;
            *dist = back ? cross_front() : cross_back();
            (*ex)[0] = back ? 0 : 1;
            return Reject::none;
        }

        case Policy::midpoint: {
            const int mp = midpoint_bay(lay_);
            if (at_depot) {
                *dist = D * (a2 - 1) + d * b2;
                *ex = {kFirst, a2};
                return Reject::none;
            }
            int phase = from.extras[0], u = from.extras[1];
            auto to_bottom = [&] {
                if (!(a2 < a1 && a2 > u && b2 <= mp)) return Reject::arc;
                *dist = cross_front();
                (*ex)[0] = kBottom;
                return Reject::none;
            };
            switch (phase) {
                case kFirst:
                    if (a2 == a1) {
                        if (b2 <= b1) return Reject::arc;
                        *dist = d * (b2 - b1);
                        return Reject::none;
                    }
                    if (a2 < a1) return Reject::arc;
                    *dist = cross_back();
                    (*ex)[0] = b2 > mp ? kTop : kLast;
                    return Reject::none;
                case kTop:
                    if (a2 == a1) {
                        if (b2 >= b1) return Reject::arc;
                        *dist = d * (b1 - b2);
                        (*ex)[0] = b2 > mp ? kTop : kLast;
                        return Reject::none;
                    }
                    if (a2 > a1) {
                        *dist = cross_back();
                        (*ex)[0] = b2 > mp ? kTop : kLast;
                        return Reject::none;
                    }
                    return to_bottom();
                case kLast:
                    if (a2 == a1) {
                        if (b2 >= b1) return Reject::arc;
                        *dist = d * (b1 - b2);
                        return Reject::none;
                    }
                    return to_bottom();
                case kBottom:
                    if (a2 == a1) {
                        if (b2 <= b1 || b2 > mp) return Reject::arc;
                        *dist = d * (b2 - b1);
                        return Reject::none;
                    }
                    return to_bottom();
            }
            return Reject::arc;
        }

        case Policy::largest_gap: {
            if (at_depot) {
                *dist = D * (a2 - 1) + d * b2;
                (*ex)[0] = kFirst;
                (*ex)[1] = a2;
                return Reject::none;
            }
            auto& e = *ex;
            int phase = e[0], u = e[1];
            auto top = [&](int a) -> int& { return e[3 + 2 * (a - 1)]; };
            auto mlg = [&](int a) -> int& { return e[4 + 2 * (a - 1)]; };
            // the gap left open in aisle a must stay a largest one
            auto gap_ok = [&](int a, int b) { return top(a) - b >= std::max(mlg(a), e[2]); };
            auto enter_top = [&] {
                *dist = cross_back();
                e[0] = kTop;
                top(a2) = b2;
                mlg(a2) = B + 1 - b2;
                return Reject::none;
            };
            auto enter_bottom = [&] {
                if (!(a2 < a1 && a2 > u)) return Reject::arc;
                for (int a = a2 + 1; a <= lay_.aisles; ++a) {
                    top(a) = B + 1;
                    mlg(a) = 0;
                }
                if (b2 >= top(a2)) return Reject::arc;
                e[2] = b2;
                *dist = cross_front();
                e[0] = kBottom;
                return gap_ok(a2, b2) ? Reject::none : Reject::policy;
            };
            switch (phase) {
                case kFirst:
                    if (a2 == a1) {
                        if (b2 <= b1) return Reject::arc;
                        *dist = d * (b2 - b1);
                        return Reject::none;
                    }
                    if (a2 < a1) return Reject::arc;
                    return enter_top();
                case kTop:
                    if (a2 == a1) {
                        if (b2 >= b1) return Reject::arc;
                        *dist = d * (b1 - b2);
                        mlg(a1) = std::max(mlg(a1), b1 - b2);
                        top(a1) = b2;
                        return Reject::none;
                    }
                    if (a2 > a1) {
                        if (top(a1) < mlg(a1)) return Reject::policy;
                        return enter_top();
                    }
                    return enter_bottom();
                case kBottom:
                    if (a2 == a1) {
                        if (b2 <= b1 || b2 >= top(a1)) return Reject::arc;
                        *dist = d * (b2 - b1);
                        e[2] = std::max(e[2], b2 - b1);
                        return gap_ok(a1, b2) ? Reject::none : Reject::policy;
                    }
                    return enter_bottom();
            }
            return Reject::arc;
        }
    }
    return Reject::arc;
}

void Labeler::close_passed(std::vector<std::uint64_t>& open, int from, int to) const {
    for (int l : passed_locations(lay_, from, to)) clear_bit(open, l);
}

std::optional<Label> Labeler::extend(const Label& from, int l2, Reject* why) const {
    auto fail = [&](Reject r) -> std::optional<Label> {
        if (why) *why = r;
        return std::nullopt;
    };
    if (why) *why = Reject::none;
    if (from.q >= p_.length) return fail(Reject::length);
    if (l2 < 0 || l2 >= L_) return fail(Reject::arc);
    int f_sum = 0;
    for (int r : from.remaining) f_sum += r;
    int mi = mand_index_[l2];
    bool due = mi >= 0 && from.remaining[mi] > 0;
    if (!due && from.q + f_sum >= p_.length) return fail(Reject::mandatory);

    Label n;
    if (l2 == from.location) {
        if (from.visit + 1 > p_.max_stops[l2]) return fail(Reject::capacity);
        n.location = l2;
        n.visit = from.visit + 1;
        n.q = from.q + 1;
        n.rc = from.rc - p_.pi[l2];
        n.cost = from.cost;
        n.remaining = from.remaining;
        n.extras = from.extras;
        n.open = from.open;
        n.counted = from.counted;
    } else {
        if (p_.max_stops[l2] < 1) return fail(Reject::capacity);
        if (from.location >= 0) {
            int fi = mand_index_[from.location];
            if (fi >= 0 && from.remaining[fi] > 0) return fail(Reject::mandatory);
        }
        if (p_.policy == Policy::optimal && !test_bit(from.open, l2)) return fail(Reject::reachability);
        long long dist = 0;
        std::vector<int> ex;
        Reject r = transition(from, l2, &dist, &ex);
        if (r != Reject::none) return fail(r);
        n.location = l2;
        n.visit = 1;
        n.q = from.q + 1;
        n.cost = from.cost + dist;
        n.rc = from.rc + static_cast<double>(dist) - p_.pi[l2] - p_.sigma[l2];
        n.remaining = from.remaining;
        n.extras = std::move(ex);
        n.counted = from.counted;
        for (std::size_t g = 0; g < p_.cuts.size(); ++g)
            if (p_.cuts[g].in_set[l2] && !test_bit(n.counted, static_cast<int>(g))) {
                set_bit(n.counted, static_cast<int>(g));
                n.rc -= p_.cuts[g].lambda;
            }
        if (p_.policy == Policy::optimal) {
            n.open = from.open;
            if (opt_.first_stop_restriction) close_passed(n.open, from.location, l2);
            clear_bit(n.open, l2);
            for (std::size_t k = 0; k < mand_locs_.size(); ++k) {
                int m = mand_locs_[k];
                if (m != l2 && n.remaining[k] > 0 && !test_bit(n.open, m)) return fail(Reject::mandatory);
            }
        }
    }
    if (mi >= 0 && n.remaining[mi] > 0) --n.remaining[mi];
    return n;
}

std::optional<std::pair<double, long long>> Labeler::close(const Label& l) const {
    if (l.q != p_.length || l.location < 0) return std::nullopt;
    for (int r : l.remaining)
        if (r > 0) return std::nullopt;
    long long dist;
    if (p_.policy == Policy::optimal) {
        dist = base_distance(lay_, l.location, kDepot);
    } else {
        int a = aisle_of(lay_, l.location), b = bay_of(lay_, l.location);
        int depth = b;
        if (lay_.kind == LayoutKind::two_block_mid_depot) depth = b <= lay_.bays ? lay_.bays + 1 - b : b - lay_.bays;
        dist = static_cast<long long>(lay_.D) * (a - 1) + static_cast<long long>(lay_.d) * depth;
    }
    return std::make_pair(l.rc + static_cast<double>(dist), l.cost + dist);
}

bool Labeler::dominates(const Label& a, const Label& b) const {
    if (a.location != b.location || a.visit != b.visit || a.q != b.q) return false;
    if (a.remaining != b.remaining || a.extras != b.extras) return false;
    if (p_.policy == Policy::optimal && !subset_of(b.open, a.open)) return false;
    double adj = 0.0;
    for (std::size_t g = 0; g < p_.cuts.size(); ++g) {
        int gi = static_cast<int>(g);
        if (!test_bit(a.counted, gi) || test_bit(b.counted, gi)) continue;
        bool reachable = true;
        if (p_.policy == Policy::optimal) {
            reachable = false;
            for (int l : group_locs_[g]) reachable = reachable || test_bit(b.open, l);
        }
        if (reachable) adj += p_.cuts[g].lambda;
    }
    return a.rc <= b.rc - adj;
}

PricingResult price(const PricingProblem& p, const PricingOptions& opt) {
    Labeler lab(p, opt);
    const Layout& lay = p.instance->layout;
    int L = lay.num_locations();
    PricingResult res;
    res.stats.per_level.assign(p.length + 1, 0);

    int mand_total = 0;
    for (int l = 0; l < L; ++l) mand_total += p.mandatory[l];
    if (p.length < 1 || mand_total > p.length) return res;

    std::vector<std::vector<Label>> levels(p.length + 1);
    std::vector<std::vector<char>> alive(p.length + 1);
    levels[0].push_back(lab.start());
    alive[0].push_back(1);
    res.stats.per_level[0] = 1;

    auto bucket_key = [](const Label& l) {
        std::size_t h = static_cast<std::size_t>(l.location) * 1000003u + static_cast<std::size_t>(l.visit);
        for (int r : l.remaining) h = h * 31u + static_cast<std::size_t>(r);
        for (int x : l.extras) h = h * 131u + static_cast<std::size_t>(x + 7);
        return h;
    };

    for (int q = 0; q < p.length; ++q) {
        auto& next = levels[q + 1];
        auto& next_alive = alive[q + 1];
        std::unordered_map<std::size_t, std::vector<int>> buckets;
        for (int i = 0; i < static_cast<int>(levels[q].size()); ++i) {
            if (!alive[q][i]) continue;
            const Label& cur = levels[q][i];
            for (int l2 = 0; l2 < L; ++l2) {
                Reject why;
                auto n = lab.extend(cur, l2, &why);
                if (!n) {
                    if (why != Reject::arc && why != Reject::capacity) ++res.stats.rejected;
                    continue;
                }
                n->parent = i;
                n->parent_level = q;
                ++res.stats.labels;
                if (opt.dominance) {
                    auto& bucket = buckets[bucket_key(*n)];
                    bool dominated = false;
                    for (int j : bucket)
                        if (next_alive[j] && lab.dominates(next[j], *n)) {
                            dominated = true;
                            break;
                        }
                    if (dominated) {
                        ++res.stats.dominated;
                        continue;
                    }
                    for (int j : bucket)
                        if (next_alive[j] && lab.dominates(*n, next[j])) {
                            next_alive[j] = 0;
                            ++res.stats.dominated;
                        }
                    bucket.push_back(static_cast<int>(next.size()));
                }
                next.push_back(std::move(*n));
                next_alive.push_back(1);
            }
        }
        res.stats.per_level[q + 1] =
            static_cast<long long>(std::count(next_alive.begin(), next_alive.end(), static_cast<char>(1)));
    }

    struct Done {
        double rc;
        int idx;
    };
    std::vector<Done> done;
    double best = kInf;
    const auto& last = levels[p.length];
    for (int i = 0; i < static_cast<int>(last.size()); ++i) {
        if (!alive[p.length][i]) continue;
        auto c = lab.close(last[i]);
        if (!c) continue;
        res.feasible = true;
        best = std::min(best, c->first);
        if (c->first < opt.threshold) done.push_back({c->first, i});
    }
    res.min_reduced_cost = res.feasible ? best : kInf;
    std::stable_sort(done.begin(), done.end(), [](const Done& a, const Done& b) { return a.rc < b.rc; });

    std::unordered_set<std::string> seen;
    for (const auto& dn : done) {
        if (static_cast<int>(res.routes.size()) >= opt.max_columns) break;
        std::vector<int> locs;
        int lv = p.length, idx = dn.idx;
        while (lv > 0) {
            const Label& lb = levels[lv][idx];
            locs.push_back(lb.location);
            idx = lb.parent;
            lv = lb.parent_level;
        }
        StopSet st = make_stops(locs);
        if (!seen.insert(stops_key(st)).second) continue;
        PricedRoute r;
        r.stops = std::move(st);
        r.cost = route_length(p.policy, r.stops, lay);
        r.reduced_cost = route_reduced_cost(p, r.stops, r.cost);
        if (r.reduced_cost < opt.threshold) res.routes.push_back(std::move(r));
    }
    return res;
}

WarehouseGraph build_policy_graph(const Instance& inst, int order, Policy policy) {
    const Layout& lay = inst.layout;
    if (!policy_supported(policy, lay))
        throw Error(std::string("unsupported combination: policy ") + to_string(policy) + " on layout " +
                    to_string(lay.kind));
    WarehouseGraph g = build_graph(lay);
    if (policy != Policy::return_policy && policy != Policy::sshape) return g;
    (void)order;
    bool two = lay.kind == LayoutKind::two_block_mid_depot;
    auto key = [&](int l) {
        int a = aisle_of(lay, l), b = bay_of(lay, l);
        int seg = two && b > lay.bays ? 1 : 0;
        int depth = two ? (b <= lay.bays ? lay.bays + 1 - b : b - lay.bays) : b;
        return std::make_tuple(a, seg, depth);
    };
    std::vector<Arc> arcs;
    for (const Arc& a : g.arcs) {
        int l1 = g.node_location[a.from], l2 = g.node_location[a.to];
        bool keep = true;
        if (l1 >= 0 && l2 >= 0 && l1 != l2) {
            if (policy == Policy::return_policy)
                keep = key(l1) < key(l2);
            else
                keep = aisle_of(lay, l1) <= aisle_of(lay, l2);
        }
        if (keep) arcs.push_back(a);
    }
    g.arcs = std::move(arcs);
    for (auto& v : g.out) v.clear();
    for (auto& v : g.in) v.clear();
    for (int i = 0; i < static_cast<int>(g.arcs.size()); ++i) {
        g.out[g.arcs[i].from].push_back(i);
        g.in[g.arcs[i].to].push_back(i);
    }
    return g;
}

}  // namespace slaprp
