#include "slaprp/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include "slaprp/rng.hpp"

namespace slaprp {

const char* to_string(Branching b) { return b == Branching::location ? "location" : "combined"; }

Branching branching_from_string(const std::string& s) {
    if (s == "location") return Branching::location;
    if (s == "combined") return Branching::combined;
    throw Error("unknown branching scheme: " + s);
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "0" || v == "no") return false;
    throw Error("bad boolean: " + v);
}

}  // namespace

SolverConfig parse_config(const std::string& text, SolverConfig c) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw Error("config line " + std::to_string(lineno) + ": expected key = value");
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        try {
            if (k == "policy") c.policy = policy_from_string(v);
            else if (k == "branching") c.branching = branching_from_string(v);
            else if (k == "symmetry") c.symmetry = parse_bool(v);
            else if (k == "time_limit") c.time_limit = std::stod(v);
            else if (k == "seed") c.seed = std::stoull(v);
            else if (k == "node_limit") c.node_limit = std::stoll(v);
            else if (k == "max_columns") c.max_columns_per_order = std::stoi(v);
            else if (k == "rc_tolerance") c.rc_tolerance = std::stod(v);
            else if (k == "sl1") c.use_sl1 = parse_bool(v);
            else if (k == "cuts") c.use_cuts = parse_bool(v);
            else if (k == "max_active_cuts") c.max_active_cuts = std::stoi(v);
            else if (k == "separation_depth") c.separation_depth = std::stoi(v);
            else if (k == "min_violation") c.min_violation = std::stod(v);
            else if (k == "max_cut_rounds") c.max_cut_rounds = std::stoi(v);
            else if (k == "separation_budget") c.separation_budget = std::stoll(v);
            else if (k == "separation_order") c.decreasing_separation_order = v != "increasing";
            else if (k == "aisle_threshold") c.aisle_threshold = std::stod(v);
            else if (k == "round_bound") c.round_bound = parse_bool(v);
            else if (k == "dominance") c.dominance = parse_bool(v);
            else if (k == "first_stop_restriction") c.first_stop_restriction = parse_bool(v);
            else if (k == "lp_solver") c.lp_solver = v;
            else throw Error("unknown key");
        } catch (const std::exception& e) {
            throw Error("config line " + std::to_string(lineno) + " (" + k + "): " + e.what());
        }
    }
    return c;
}

SolverConfig load_config(const std::string& path, SolverConfig base) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), base);
}

long long round_bound(double lp, const Layout& lay) {
    long long step = 2 * std::gcd(static_cast<long long>(lay.D), static_cast<long long>(lay.d));
    if (step <= 0) step = 1;
    double q = std::ceil((lp - 1e-6) / static_cast<double>(step));
    return static_cast<long long>(q) * step;
}

Incumbent make_incumbent(const Instance& inst, const Assignment& a, Policy policy) {
    Incumbent inc;
    PlanCost pc = evaluate_plan(inst, a, policy);
    inc.found = true;
    inc.assignment = a;
    inc.costs = pc.per_order;
    inc.objective = pc.total;
    for (int o = 0; o < inst.num_orders(); ++o) inc.routes.push_back(order_stops(inst, a, o));
    return inc;
}

// ---------------------------------------------------------------- branching

namespace {

struct Cand {
    double score = -1.0;
    int demand = 0;
    int sku = 0;
    int target = 0;
    bool valid = false;
};

bool better(const Cand& a, const Cand& b) {
    if (!b.valid) return true;
    if (a.score > b.score + 1e-9) return true;
    if (a.score < b.score - 1e-9) return false;
    if (a.demand != b.demand) return a.demand > b.demand;
    if (a.sku != b.sku) return a.sku < b.sku;
    return a.target < b.target;
}

}  // namespace

BranchDecision select_branch_location(const Instance& inst, const NodeContext& ctx, const std::vector<double>& xi) {
    int L = ctx.num_locations;
    auto dem = inst.demand();
    Cand best;
    for (int s : ctx.free_skus) {
        for (int l = 0; l < L; ++l) {
            double x = xi[static_cast<std::size_t>(s) * L + l];
            double f = std::min(x, 1.0 - x);
            if (f <= 1e-6) continue;
            Cand c{dem[s] * f, dem[s], s, l, true};
            if (better(c, best)) best = c;
        }
    }
    if (!best.valid) throw Error("select_branch_location: solution is integral");
    return {BranchDecision::location, best.sku, best.target, best.score};
}

BranchDecision select_branch_combined(const Instance& inst, const NodeContext& ctx, const std::vector<double>& xi,
                                      double threshold) {
    const Layout& lay = inst.layout;
    int L = ctx.num_locations;
    auto dem = inst.demand();
    Cand best;
    if (lay.aisles > 1) {
        for (int s : ctx.free_skus) {
            std::vector<double> sum(lay.aisles + 1, 0.0);
            for (int l = 0; l < L; ++l) sum[aisle_of(lay, l)] += xi[static_cast<std::size_t>(s) * L + l];
            for (int a = 1; a <= lay.aisles; ++a) {
                double f = std::min(sum[a], 1.0 - sum[a]);
                if (f <= 1e-6) continue;
                Cand c{dem[s] * f, dem[s], s, a, true};
                if (better(c, best)) best = c;
            }
        }
    }
    if (best.valid && best.score >= threshold) return {BranchDecision::aisle, best.sku, best.target, best.score};
    return select_branch_location(inst, ctx, xi);
}

std::vector<int> symmetric_skus(const Instance& inst, const BranchState& bs, const NodeContext& ctx, int s) {
    auto orders_of = inst.orders_of_sku();
    int L = ctx.num_locations;
    auto restricted = [&](int x) { return std::find(bs.restricted.begin(), bs.restricted.end(), x) != bs.restricted.end(); };
    if (ctx.placed[s] >= 0 || restricted(s)) return {s};
    auto row = [&](int x) {
        return std::vector<char>(ctx.allowed.begin() + static_cast<std::ptrdiff_t>(x) * L,
                                 ctx.allowed.begin() + static_cast<std::ptrdiff_t>(x + 1) * L);
    };
    auto mine = row(s);
    std::vector<int> out;
    for (int t : ctx.free_skus) {
        if (t == s) {
            out.push_back(t);
            continue;
        }
        if (orders_of[t] != orders_of[s] || restricted(t)) continue;
        if (row(t) != mine) continue;
        out.push_back(t);
    }
    return out;
}

std::pair<BranchState, BranchState> make_children(const Instance& inst, const BranchState& bs, const NodeContext& ctx,
                                                  const BranchDecision& dec, bool symmetry) {
    const Layout& lay = inst.layout;
    int L = ctx.num_locations;
    BranchState one = bs, zero = bs;
    one.depth = zero.depth = bs.depth + 1;
    std::vector<int> sym = symmetry ? symmetric_skus(inst, bs, ctx, dec.sku) : std::vector<int>{dec.sku};
    if (dec.kind == BranchDecision::location) {
        one.forced.push_back({dec.sku, dec.target});
        for (int t : sym) zero.forbidden.push_back({t, dec.target});
    } else {
        for (int l = 0; l < L; ++l) {
            if (aisle_of(lay, l) != dec.target) one.forbidden.push_back({dec.sku, l});
            else
                for (int t : sym) zero.forbidden.push_back({t, l});
        }
        one.restricted.push_back(dec.sku);
    }
    return {one, zero};
}

// ---------------------------------------------------------------- heuristics

Incumbent initial_solution(const Instance& inst, Policy policy, std::uint64_t seed) {
    const Layout& lay = inst.layout;
    int L = lay.num_locations(), S = inst.num_skus;
    Rng rng(seed);
    Assignment a = inst.fixed_location();
    std::vector<int> left(L);
    for (int l = 0; l < L; ++l) left[l] = lay.capacity_of(l);
    std::vector<int> free;
    for (int s = 0; s < S; ++s) {
        if (a[s] >= 0) --left[a[s]];
        else free.push_back(s);
    }
    std::vector<int> slots;
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < left[l]; ++k) slots.push_back(l);
    if (slots.size() < free.size()) throw Error("initial_solution: not enough free capacity");
    rng.shuffle(slots);
    for (std::size_t i = 0; i < free.size(); ++i) {
        a[free[i]] = slots[i];
        --left[slots[i]];
    }

    auto orders_of = inst.orders_of_sku();
    RouteCostCache cache(lay, policy);
    std::vector<long long> cost(inst.num_orders());
    for (int o = 0; o < inst.num_orders(); ++o) cost[o] = cache(order_stops(inst, a, o));

    // cost change of the given orders under the (already modified) assignment
    auto delta_for = [&](const std::vector<int>& orders) {
        long long d = 0;
        for (int o : orders) d += cache(order_stops(inst, a, o)) - cost[o];
        return d;
    };
    auto touched = [&](int s1, int s2) {
        std::vector<int> os = orders_of[s1];
        if (s2 >= 0) os.insert(os.end(), orders_of[s2].begin(), orders_of[s2].end());
        std::sort(os.begin(), os.end());
        os.erase(std::unique(os.begin(), os.end()), os.end());
        return os;
    };

    for (;;) {
        long long best = 0;
        int bs1 = -1, bs2 = -1, bl = -1;
        for (std::size_t i = 0; i < free.size(); ++i) {
            int s1 = free[i];
            for (std::size_t j = i + 1; j < free.size(); ++j) {
                int s2 = free[j];
                if (a[s1] == a[s2] || (orders_of[s1].empty() && orders_of[s2].empty())) continue;
                std::swap(a[s1], a[s2]);
                long long d = delta_for(touched(s1, s2));
                std::swap(a[s1], a[s2]);
                if (d < best) best = d, bs1 = s1, bs2 = s2, bl = -1;
            }
            for (int l = 0; l < L && !orders_of[s1].empty(); ++l) {
                if (left[l] <= 0 || l == a[s1]) continue;
                int old = a[s1];
                a[s1] = l;
                long long d = delta_for(orders_of[s1]);
                a[s1] = old;
                if (d < best) best = d, bs1 = s1, bs2 = -1, bl = l;
            }
        }
        if (bs1 < 0) break;
        if (bs2 >= 0) {
            std::swap(a[bs1], a[bs2]);
        } else {
            ++left[a[bs1]];
            a[bs1] = bl;
            --left[bl];
        }
        for (int o : touched(bs1, bs2)) cost[o] = cache(order_stops(inst, a, o));
    }
    return make_incumbent(inst, a, policy);
}

std::optional<Incumbent> primal_heuristic(const Instance& inst, const NodeContext& ctx, const std::vector<double>& xi,
                                          Policy policy) {
    const Layout& lay = inst.layout;
    int L = ctx.num_locations;
    if (!ctx.consistent) return std::nullopt;
    auto dem = inst.demand();
    Assignment a = ctx.placed;
    std::vector<int> left(L);
    for (int l = 0; l < L; ++l) left[l] = lay.capacity_of(l) - ctx.occupancy[l];
    struct Pair {
        double x;
        int s, l;
    };
    std::vector<Pair> pairs;
    for (int s : ctx.free_skus)
        for (int l = 0; l < L; ++l)
            if (ctx.is_allowed(s, l)) pairs.push_back({xi[static_cast<std::size_t>(s) * L + l], s, l});
    std::sort(pairs.begin(), pairs.end(), [&](const Pair& p, const Pair& q) {
        if (p.x != q.x) return p.x > q.x;
        if (dem[p.s] != dem[q.s]) return dem[p.s] > dem[q.s];
        if (p.s != q.s) return p.s < q.s;
        return p.l < q.l;
    });
    for (const auto& p : pairs) {
        if (a[p.s] >= 0 || left[p.l] <= 0) continue;
        a[p.s] = p.l;
        --left[p.l];
    }
    for (int s : ctx.free_skus)
        if (a[s] < 0) return std::nullopt;
    return make_incumbent(inst, a, policy);
}

Incumbent extract_integer_solution(const Rmp& rmp, Policy policy) {
    const Instance& inst = rmp.instance();
    const NodeContext& ctx = rmp.context();
    int L = ctx.num_locations;
    auto dem = inst.demand();
    Assignment a = ctx.placed;
    std::vector<int> left(L);
    for (int l = 0; l < L; ++l) left[l] = inst.layout.capacity_of(l) - ctx.occupancy[l];
    std::vector<int> spare;
    for (int s : ctx.free_skus) {
        if (dem[s] == 0) {
            spare.push_back(s);
            continue;
        }
        for (int l = 0; l < L; ++l) {
            double x = rmp.xi(s, l);
            if (x > 1e-6 && x < 1.0 - 1e-6) throw Error("extract_integer_solution: xi is fractional");
            if (x >= 1.0 - 1e-6) a[s] = l;
        }
        if (a[s] < 0) throw Error("extract_integer_solution: SKU without location");
        --left[a[s]];
    }
    // SKUs outside every order cost nothing; any residual slot will do
    for (int s : spare) {
        int pick = -1;
        double bx = -1.0;
        for (int l = 0; l < L; ++l)
            if (left[l] > 0 && ctx.is_allowed(s, l) && rmp.xi(s, l) > bx) bx = rmp.xi(s, l), pick = l;
        if (pick < 0) throw Error("extract_integer_solution: no slot left for an unused SKU");
        a[s] = pick;
        --left[pick];
    }
    return make_incumbent(inst, a, policy);
}

// ---------------------------------------------------------------- branch and price

namespace {

using Clock = std::chrono::steady_clock;

bool xi_integral(const Instance& inst, const Rmp& rmp, const std::vector<int>& dem) {
    // an order still served by its super column has no real route
    for (int i = 0; i < rmp.num_columns(); ++i)
        if (rmp.column(i).is_super && rmp.rho(i) > 1e-6) return false;
    int L = inst.layout.num_locations();
    for (int s : rmp.context().free_skus) {
        if (dem[s] == 0) continue;
        for (int l = 0; l < L; ++l) {
            double x = rmp.xi(s, l);
            if (!(x <= 1e-6 || x >= 1.0 - 1e-6)) return false;
        }
    }
    return true;
}

class BranchAndPrice {
public:
    BranchAndPrice(const Instance& inst, const SolverConfig& cfg)
        : inst_(inst), cfg_(cfg), dem_(inst.demand()), cut_pool_(cfg.max_active_cuts), start_(Clock::now()) {
        popt_.max_columns = cfg.max_columns_per_order;
        popt_.threshold = -cfg.rc_tolerance;
        popt_.dominance = cfg.dominance;
        popt_.first_stop_restriction = cfg.first_stop_restriction;
        sopt_.min_violation = cfg.min_violation;
        sopt_.decreasing_order = cfg.decreasing_separation_order;
        sopt_.state_budget = cfg.separation_budget;
    }

    enum class Kind { infeasible, pruned, integral, fractional, timeout };

    struct Outcome {
        Kind kind = Kind::infeasible;
        double lp = 0.0;
        double bound = 0.0;
        std::vector<double> xi;
        NodeContext ctx;
    };

    void seed_incumbent(const Incumbent& inc) {
        offer(inc);
        big_ = std::max<long long>(1, 10 * inc.objective);
        for (int o = 0; o < inst_.num_orders(); ++o) pool_.add(make_super_column(inst_, o, big_));
        for (int o = 0; o < inst_.num_orders(); ++o) pool_.add(Column{o, inc.costs[o], inc.routes[o], false});
    }

    // bound_only: no pruning against the incumbent and no early stop on integral solutions
    Outcome process(const BranchState& bs, bool bound_only = false) {
        Outcome out;
        out.ctx = make_node_context(inst_, bs);
        if (!out.ctx.consistent) return out;
        Rmp rmp(inst_, out.ctx, make_lp_solver(cfg_.lp_solver), cfg_.use_sl1);
        in_rmp_.assign(pool_.size(), 0);
        for (int i = 0; i < pool_.size(); ++i)
            if (rmp.add_column(pool_[i], i) >= 0) in_rmp_[i] = 1;

        for (int round = 0;; ++round) {
            Kind k = column_generation(rmp, bound_only);
            if (k != Kind::fractional) {
                out.kind = k;
                out.lp = out.bound = last_lag_;
                return out;
            }
            out.lp = rmp.objective();
            out.bound = cfg_.round_bound ? static_cast<double>(round_bound(out.lp, inst_.layout)) : out.lp;
            if (!bound_only) {
                // integral nodes are extracted even when the bound would prune them, so every one is checked
                if (xi_integral(inst_, rmp, dem_)) {
                    ++stats_.integral_nodes;
                    Incumbent inc = extract_integer_solution(rmp, cfg_.policy);
                    if (std::abs(static_cast<double>(inc.objective) - out.lp) > 1e-6) ++stats_.extraction_failures;
                    offer(inc);
                    out.kind = Kind::integral;
                    return out;
                }
                if (auto h = primal_heuristic(inst_, out.ctx, xi_vector(rmp), cfg_.policy)) offer(*h);
                if (prunable(out.bound)) {
                    out.kind = Kind::pruned;
                    return out;
                }
            }
            if (!cfg_.use_cuts || round >= cfg_.max_cut_rounds || timed_out()) break;
            if (CutPool::should_separate(bs.depth, cfg_.separation_depth)) separate_all(rmp);
            std::vector<int> ids = cut_pool_.pool_check(rmp, cfg_.min_violation);
            if (ids.empty()) break;
            cut_pool_.deactivate_nonbinding(rmp);
            for (int id : ids) rmp.add_cut(cut_pool_.cut(id), id);
        }
        out.kind = Kind::fractional;
        out.xi = xi_vector(rmp);
        return out;
    }

    SolveResult run() {
        SolveResult res;
        struct Node {
            BranchState bs;
            double key;
            long long id;
        };
        auto cmp = [](const Node& a, const Node& b) {
            if (a.key != b.key) return a.key > b.key;
            if (a.bs.depth != b.bs.depth) return a.bs.depth < b.bs.depth;
            return a.id > b.id;
        };
        std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);
        long long next_id = 0;
        open.push({BranchState{}, -kInf, next_id++});
        bool complete = true;
        double interrupted = kInf;
        while (!open.empty()) {
            if (timed_out() || (cfg_.node_limit >= 0 && stats_.nodes >= cfg_.node_limit)) {
                complete = false;
                break;
            }
            Node n = open.top();
            open.pop();
            if (prunable(n.key)) continue;
            ++stats_.nodes;
            Outcome r = process(n.bs);
            if (n.id == 0 && r.kind != Kind::timeout) stats_.root_lp = r.lp;
            if (r.kind == Kind::timeout) {
                complete = false;
                interrupted = std::max(n.key, r.bound);
                break;
            }
            if (r.kind != Kind::fractional) continue;
            BranchDecision dec = cfg_.branching == Branching::combined
                                     ? select_branch_combined(inst_, r.ctx, r.xi, cfg_.aisle_threshold)
                                     : select_branch_location(inst_, r.ctx, r.xi);
            auto [one, zero] = make_children(inst_, n.bs, r.ctx, dec, cfg_.symmetry);
            double key = std::max(n.key, r.bound);
            open.push({one, key, next_id++});
            open.push({zero, key, next_id++});
        }
        double ub = static_cast<double>(best_.objective);
        double lb = ub;
        if (!complete) {
            lb = interrupted;
            while (!open.empty()) {
                if (!prunable(open.top().key)) lb = std::min(lb, open.top().key);
                open.pop();
            }
            if (cfg_.round_bound && std::isfinite(lb)) lb = static_cast<double>(round_bound(lb, inst_.layout));
            lb = std::max(0.0, std::min(lb, ub));
        }
        res.status = complete ? "optimal" : "limit";
        res.incumbent = best_;
        stats_.optimal = complete;
        stats_.lower_bound = lb;
        stats_.upper_bound = best_.objective;
        stats_.gap = ub > 0 ? 100.0 * (ub - lb) / ub : 0.0;
        stats_.time = std::chrono::duration<double>(Clock::now() - start_).count();
        stats_.columns = pool_.size();
        stats_.cuts = cut_pool_.size();
        res.stats = stats_;
        for (int i = 0; i < cut_pool_.size(); ++i) res.cuts.push_back(cut_pool_.cut(i));
        return res;
    }

    SolveStats& stats() { return stats_; }

private:
    bool timed_out() const { return remaining() < 0.0; }
    double remaining() const {
        return cfg_.time_limit - std::chrono::duration<double>(Clock::now() - start_).count();
    }

    bool prunable(double bound) const {
        return best_.found && bound >= static_cast<double>(best_.objective) - 1e-6;
    }

    void offer(const Incumbent& inc) {
        if (!best_.found || inc.objective < best_.objective) best_ = inc;
    }

    std::vector<double> xi_vector(const Rmp& rmp) const {
        int L = inst_.layout.num_locations();
        std::vector<double> xi(static_cast<std::size_t>(inst_.num_skus) * L);
        for (int s = 0; s < inst_.num_skus; ++s)
            for (int l = 0; l < L; ++l) xi[static_cast<std::size_t>(s) * L + l] = rmp.xi(s, l);
        return xi;
    }

    Kind column_generation(Rmp& rmp, bool bound_only) {
        last_lag_ = -kInf;
        for (;;) {
            if (timed_out()) return Kind::timeout;
            rmp.lp().set_time_limit(std::max(0.0, remaining()));
            LpStatus st = rmp.solve();
            ++stats_.cg_iterations;
            if (st == LpStatus::time_limit) return Kind::timeout;
            if (st == LpStatus::infeasible) return Kind::infeasible;
            if (st != LpStatus::optimal) throw Error(std::string("master LP failed: ") + to_string(st));
            int added = 0;
            double lag = rmp.objective();
            for (int o = 0; o < inst_.num_orders(); ++o) {
                PricingResult pr = price(rmp.pricing_problem(o, cfg_.policy), popt_);
                ++stats_.pricing_calls;
                if (pr.feasible) lag += std::min(0.0, pr.min_reduced_cost);
                for (const auto& r : pr.routes) {
                    bool inserted = false;
                    int idx = pool_.add(Column{o, r.cost, r.stops, false}, &inserted);
                    if (idx >= static_cast<int>(in_rmp_.size())) in_rmp_.resize(idx + 1, 0);
                    if (in_rmp_[idx]) continue;
                    if (rmp.add_column(pool_[idx], idx) >= 0) {
                        in_rmp_[idx] = 1;
                        ++added;
                    }
                }
            }
            last_lag_ = std::max(last_lag_, lag);
            if (!bound_only) {
                double lb = cfg_.round_bound ? static_cast<double>(round_bound(lag, inst_.layout)) : lag;
                if (prunable(lb)) return Kind::pruned;
            }
            if (added == 0) return Kind::fractional;
        }
    }

    void separate_all(const Rmp& rmp) {
        for (int o = 0; o < inst_.num_orders(); ++o)
            for (int s : inst_.orders[o]) {
                if (rmp.context().placed[s] >= 0) continue;
                SeparationResult r = separate(rmp, o, s, sopt_);
                if (r.exhausted) ++stats_.separation_exhausted;
                if (!r.found) continue;
                cut_pool_.add(SLCut{o, s, r.locations, r.value});
            }
    }

    const Instance& inst_;
    SolverConfig cfg_;
    std::vector<int> dem_;
    PricingOptions popt_;
    SeparationOptions sopt_;
    ColumnPool pool_;
    CutPool cut_pool_;
    std::vector<char> in_rmp_;
    Incumbent best_;
    long long big_ = 1;
    double last_lag_ = 0.0;
    SolveStats stats_;
    Clock::time_point start_;
};

void check_solvable(const Instance& inst, const SolverConfig& cfg) {
    auto v = validate_instance(inst);
    if (!v.empty()) throw Error("invalid instance: " + v.front().code + ": " + v.front().message);
    if (!policy_supported(cfg.policy, inst.layout))
        throw Error(std::string("unsupported combination: policy ") + to_string(cfg.policy) + " on this layout");
}

}  // namespace

SolveResult solve(const Instance& inst, const SolverConfig& cfg) {
    check_solvable(inst, cfg);
    BranchAndPrice bp(inst, cfg);
    Incumbent start = initial_solution(inst, cfg.policy, cfg.seed);
    bp.seed_incumbent(start);
    bp.stats().initial_upper_bound = start.objective;
    return bp.run();
}

double root_bound(const Instance& inst, const SolverConfig& cfg, RootMode mode) {
    check_solvable(inst, cfg);
    SolverConfig c = cfg;
    c.use_sl1 = mode != RootMode::dw;
    c.use_cuts = mode == RootMode::dw_sl;
    BranchAndPrice bp(inst, c);
    bp.seed_incumbent(initial_solution(inst, c.policy, c.seed));
    auto r = bp.process(BranchState{}, true);
    return r.lp;
}

}  // namespace slaprp
