// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "cli.hpp"
#include "slaprp/compact.hpp"
#include "slaprp/cuts.hpp"
#include "slaprp/oracle.hpp"
#include "slaprp/search.hpp"
#include "support.hpp"

using namespace slaprp;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;
std::map<int, std::string> lines;

void report(int id, bool ok, const std::string& detail, double seconds) {
    char buf[640];
    std::snprintf(buf, sizeof buf, "criterion %2d: %s  %s (%.1fs)", id, ok ? "PASS" : "FAIL", detail.c_str(), seconds);
    lines[id] = buf;
    std::fprintf(stderr, "%s\n", buf);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// --- shared state between criteria 1, 5, 6, 8 and 11 ---------------------------------

struct SmallCase {
    Instance inst;
    Policy policy;
    long long optimum = 0;
    Assignment opt_assignment;
};

std::vector<SmallCase> small_cases() {
    std::vector<SmallCase> out;
    Rng rng(20240601);
    test::TinyShape shape;  // |L| <= 6, K = 1, |S| <= 5, |O| <= 3
    shape.max_order_size = 4;
    for (Policy p : all_policies())
        for (int i = 0; i < 50; ++i) {
            SmallCase c{test::tiny_instance(rng, p, shape), p};
            c.inst.name = fmt("c1_%s_%02d", to_string(p), i);
            out.push_back(std::move(c));
        }
    return out;
}

SolverConfig config_for(Policy p, Branching b, bool sym) {
    SolverConfig c;
    c.policy = p;
    c.branching = b;
    c.symmetry = sym;
    c.seed = 1;
    return c;
}

long long extraction_failures = 0;
long long integral_nodes = 0;

// --- criterion 1, 5 (partly), 6, 8 -----------------------------------------------------

void criteria_1_6_8(std::vector<SmallCase>& cases) {
    auto t0 = Clock::now();
    int mismatches = 0, errors = 0;
    int disagreements = 0;
    int branching_pairs = 0, sym_not_worse = 0;
    long long cuts_checked = 0, cut_violations = 0;
    for (SmallCase& c : cases) {
        oracle::OracleResult o = oracle::enumerate_slaprp(c.inst, c.policy);
        c.optimum = o.objective;
        c.opt_assignment = o.assignment;
        long long nodes[2][2] = {{0, 0}, {0, 0}};
        for (Branching b : {Branching::location, Branching::combined})
            for (bool sym : {false, true}) {
                SolveResult r;
                try {
                    r = solve(c.inst, config_for(c.policy, b, sym));
                } catch (const std::exception& e) {
                    std::printf("  %s: solver error %s\n", c.inst.name.c_str(), e.what());
                    ++errors;
                    continue;
                }
                extraction_failures += r.stats.extraction_failures;
                integral_nodes += r.stats.integral_nodes;
                nodes[b == Branching::combined][sym] = r.stats.nodes;
                bool ok = r.status == "optimal" && r.incumbent.objective == o.objective;
                if (!ok) {
                    ++disagreements;
                    std::printf("  %s %s sym=%d: solver %lld (%s), oracle %lld\n", c.inst.name.c_str(), to_string(b),
                                sym, r.incumbent.objective, r.status.c_str(), o.objective);
                }
                if (b == Branching::combined && sym && !ok) ++mismatches;
                // Each separated cut must hold at the oracle optimum.
                for (const SLCut& cut : r.cuts) {
                    ++cuts_checked;
                    const auto& ord = c.inst.orders[cut.order];
                    bool in_order = std::find(ord.begin(), ord.end(), cut.sku) != ord.end();
                    auto in_set = [&](int l) {
                        return std::binary_search(cut.locations.begin(), cut.locations.end(), l);
                    };
                    double lhs = in_set(o.assignment[cut.sku]) ? 1.0 : 0.0;
                    bool route_hits = false;
                    for (int s : ord) route_hits |= in_set(o.assignment[s]);
                    if (!in_order || lhs - (route_hits ? 1.0 : 0.0) > 1e-9) ++cut_violations;
                }
            }
        for (int b = 0; b < 2; ++b)
            if (nodes[b][0] > 1 || nodes[b][1] > 1) {
                ++branching_pairs;
                if (nodes[b][1] <= nodes[b][0]) ++sym_not_worse;
            }
    }
    double t = since(t0);
    report(1, mismatches == 0 && errors == 0 && t < 600,
           fmt("%zu instances x default config: %d differ from enumeration", cases.size(), mismatches), t);
    report(6, cut_violations == 0 && errors == 0,
           fmt("%lld separated cuts checked at the enumerated optimum, %lld violated", cuts_checked, cut_violations), 0.0);
    double share = branching_pairs ? static_cast<double>(sym_not_worse) / branching_pairs : 1.0;
    report(8, disagreements == 0 && errors == 0 && share >= 0.8,
           fmt("4 configs: %d disagreements; symmetry nodes <= plain on %d/%d branching runs (%.0f%%)", disagreements,
               sym_not_worse, branching_pairs, 100.0 * share),
           0.0);
}

// --- criterion 2 -------------------------------------------------------------------------

void criterion_2() {
    auto t0 = Clock::now();
    Rng rng(777);
    int configs = 0, bad = 0;
    for (Policy p : all_policies())
        for (int t = 0; t < 120; ++t) {
            test::TinyShape shape;
            shape.max_locations = 8;
            shape.capacity = rng.between(1, 2);
            shape.max_skus = 8;
            shape.max_orders = 1;
            shape.max_order_size = 5;
            Instance inst = test::tiny_instance(rng, p, shape);
            PricingProblem pp = make_pricing_problem(inst, p, 0);
            int L = inst.layout.num_locations();
            pp.mu = rng.uniform() * 60;
            for (int l = 0; l < L; ++l) {
                pp.pi[l] = rng.below(2) ? rng.uniform() * 5 : 0.0;
                pp.sigma[l] = rng.below(2) ? rng.uniform() * 5 : 0.0;
            }
            int nc = rng.between(0, 3);
            for (int k = 0; k < nc; ++k) {
                CutGroup g;
                g.in_set.assign(L, 0);
                for (int l = 0; l < L; ++l) g.in_set[l] = rng.below(3) == 0;
                g.lambda = rng.uniform() * 4;
                pp.cuts.push_back(g);
            }
            PricingResult r = price(pp);
            oracle::TourResult o = oracle::enumerate_tours(pp);
            ++configs;
            if (r.feasible != o.feasible || (o.feasible && std::fabs(r.min_reduced_cost - o.min_reduced_cost) > 1e-9)) {
                ++bad;
                std::printf("  pricing %s #%d: labeling %.9f, enumeration %.9f\n", to_string(p), t, r.min_reduced_cost,
                            o.min_reduced_cost);
            }
        }
    double t = since(t0);
    report(2, bad == 0 && t < 300, fmt("%d dual/cut configurations, %d mismatches", configs, bad), t);
}

// --- criterion 3 -------------------------------------------------------------------------

void criterion_3() {
    auto t0 = Clock::now();
    Rng rng(4242);
    int fractional = 0, pairs = 0, bad = 0, attempts = 0;
    while (fractional < 200 && attempts < 5000) {
        ++attempts;
        Policy p = all_policies()[attempts % 5];
        test::TinyShape shape;
        shape.max_locations = 12;
        shape.capacity = rng.between(1, 2);
        shape.max_skus = 8;
        shape.max_orders = 5;
        shape.max_order_size = 4;
        Instance inst = test::tiny_instance(rng, p, shape);
        if (inst.layout.num_locations() > 12) continue;
        Rmp rmp = test::root_rmp(inst, make_node_context(inst, {}));
        if (!test::converge(rmp, p)) continue;
        int L = inst.layout.num_locations();
        bool frac = false;
        for (int s = 0; s < inst.num_skus; ++s)
            for (int l = 0; l < L; ++l) frac |= rmp.xi(s, l) > 1e-6 && rmp.xi(s, l) < 1 - 1e-6;
        if (!frac) continue;
        ++fractional;
        for (int o = 0; o < inst.num_orders(); ++o) {
            std::vector<RouteSupport> routes;
            for (int i = 0; i < rmp.num_columns(); ++i) {
                const Column& c = rmp.column(i);
                if (c.order != o || rmp.rho(i) <= 1e-9) continue;
                RouteSupport r{rmp.rho(i), {}};
                for (int l = 0; l < L; ++l)
                    if (c.is_super || c.visits(l)) r.locations.push_back(l);
                routes.push_back(r);
            }
            for (int s : inst.orders[o]) {
                if (rmp.context().placed[s] >= 0) continue;
                std::vector<double> xi(L);
                for (int l = 0; l < L; ++l) xi[l] = rmp.xi(s, l);
                SeparationResult a = separate(rmp, o, s);
                oracle::SubsetResult b = oracle::enumerate_sl_subsets(xi, routes);
                ++pairs;
                if (a.exhausted || std::fabs(a.value - b.max_violation) > 1e-9) {
                    ++bad;
                    std::printf("  separation: dp %.12f, enumeration %.12f\n", a.value, b.max_violation);
                }
            }
        }
    }
    double t = since(t0);
    report(3, fractional >= 200 && bad == 0 && t < 120,
           fmt("%d fractional master solutions, %d (order, sku) problems, %d mismatches", fractional, pairs, bad), t);
}

// --- criterion 4 -------------------------------------------------------------------------

void criterion_4() {
    auto t0 = Clock::now();
    Rng rng(9090);
    int n = 0, bad = 0;
    while (n < 30) {
        RandomInstanceOptions ro;
        ro.layout.aisles = rng.between(1, 3);
        ro.layout.bays = rng.between(1, 2);
        ro.layout.capacity = 1;
        ro.layout.D = rng.between(1, 3);
        ro.layout.d = rng.between(1, 2);
        ro.num_skus = std::min(ro.layout.num_locations(), rng.between(2, 5));
        ro.num_orders = rng.between(1, 3);
        ro.max_order_size = std::min(3, ro.num_skus);
        ro.seed = rng.next();
        Instance inst = generate_random_instance(ro);
        ++n;
        long long opt = oracle::enumerate_slaprp(inst, Policy::optimal).objective;
        SolverConfig cfg;
        double v[6] = {lp_relaxation_value(emit_compact_mtz(inst)), lp_relaxation_value(emit_compact_mcf(inst)),
                       root_bound(inst, cfg, RootMode::dw), root_bound(inst, cfg, RootMode::dw_sl1),
                       root_bound(inst, cfg, RootMode::dw_sl), static_cast<double>(opt)};
        bool ok = true;
        for (int i = 0; i + 1 < 6; ++i) ok &= v[i] <= v[i + 1] + 1e-6;
        if (!ok) {
            ++bad;
            std::printf("  chain: %.4f %.4f %.4f %.4f %.4f opt %lld\n", v[0], v[1], v[2], v[3], v[4], opt);
        }
    }
    int single = 0, single_bad = 0;
    for (int a : {1, 3})
        for (int b : {5, 10})
            for (int k : {3, 5})
                for (std::uint64_t seed = 1; seed <= 2; ++seed) {
                    Instance inst = generate_silva_instance(a, b, 1, k, seed);
                    SolverConfig cfg;
                    SolveResult r = solve(inst, cfg);
                    double dw = root_bound(inst, cfg, RootMode::dw);
                    ++single;
                    if (r.status != "optimal" || std::fabs(dw - static_cast<double>(r.incumbent.objective)) > 1e-6) {
                        ++single_bad;
                        std::printf("  single order %s: dw %.6f, optimum %lld\n", inst.name.c_str(), dw,
                                    r.incumbent.objective);
                    }
                }
    double t = since(t0);
    report(4, bad == 0 && single_bad == 0 && t < 600,
           fmt("MTZ<=MCF<=DW<=DW+SL1<=DW+SL<=opt on %d instances (%d broken); single-order DW gap closed on %d/%d", n, bad,
               single - single_bad, single),
           t);
}

// --- criterion 5 -------------------------------------------------------------------------

// Converges the root and both children of one location branch without any pruning, and
// extracts wherever xi settles integral.
void criterion_5(const std::vector<SmallCase>& cases) {
    auto t0 = Clock::now();
    long long nodes = 0, integral = 0, failed = 0;
    auto check = [&](const SmallCase& c, const BranchState& bs) -> std::vector<double> {
        NodeContext ctx = make_node_context(c.inst, bs);
        if (!ctx.consistent) return {};
        Rmp rmp = test::root_rmp(c.inst, ctx, 100000);
        if (!test::converge(rmp, c.policy)) {
            ++failed;
            return {};
        }
        ++nodes;
        int L = c.inst.layout.num_locations();
        std::vector<double> xi(static_cast<std::size_t>(c.inst.num_skus) * L);
        bool frac = false;
        for (int s = 0; s < c.inst.num_skus; ++s)
            for (int l = 0; l < L; ++l) {
                xi[s * L + l] = rmp.xi(s, l);
                frac |= xi[s * L + l] > 1e-6 && xi[s * L + l] < 1 - 1e-6;
            }
        if (frac) return xi;
        ++integral;
        Incumbent inc = extract_integer_solution(rmp, c.policy);
        if (!inc.found || std::fabs(static_cast<double>(inc.objective) - rmp.objective()) > 1e-6) {
            ++failed;
            std::printf("  %s: extracted %lld, master %.6f\n", c.inst.name.c_str(), inc.objective, rmp.objective());
        }
        return {};
    };
    for (const SmallCase& c : cases) {
        BranchState root;
        std::vector<double> xi = check(c, root);
        if (xi.empty()) continue;
        NodeContext ctx = make_node_context(c.inst, root);
        BranchDecision d = select_branch_location(c.inst, ctx, xi);
        auto [one, zero] = make_children(c.inst, root, ctx, d, false);
        check(c, one);
        check(c, zero);
    }
    report(5, extraction_failures == 0 && failed == 0 && integral + integral_nodes > 0,
           fmt("search: %lld integral nodes, %lld extraction failures; sweep: %lld of %lld converged nodes integral, "
               "%lld failures",
               integral_nodes, extraction_failures, integral, nodes, failed),
           since(t0));
}

// --- criterion 7 -------------------------------------------------------------------------

void criterion_7() {
    auto t0 = Clock::now();
    Rng rng(31337);
    int objectives = 0, fractional = 0, failed = 0;
    for (int t = 0; t < 10; ++t) {
        int L = rng.between(3, 12);
        std::vector<int> K(L);
        int cap = 0;
        for (int& k : K) cap += k = rng.between(1, 3);
        int S = rng.between(1, cap);
        for (int rep = 0; rep < 10; ++rep) {
            auto lp = make_lp_solver();
            std::vector<int> row_l(L), row_s(S);
            for (int l = 0; l < L; ++l) row_l[l] = lp->add_row(-kInf, K[l], {});
            for (int s = 0; s < S; ++s) row_s[s] = lp->add_row(1, 1, {});
            std::vector<int> cols;
            for (int s = 0; s < S; ++s)
                for (int l = 0; l < L; ++l)
                    cols.push_back(lp->add_col(rng.uniform() * 200 - 100, 0, kInf, {{row_l[l], 1.0}, {row_s[s], 1.0}}));
            ++objectives;
            if (lp->solve() != LpStatus::optimal) {
                ++failed;
                continue;
            }
            for (int c : cols) {
                double x = lp->col_value(c);
                if (std::fabs(x - std::round(x)) > 1e-9) {
                    ++fractional;
                    break;
                }
            }
        }
    }
    report(7, fractional == 0 && failed == 0,
           fmt("%d random objectives over the assignment polytope, %d fractional optima, %d LP failures", objectives,
               fractional, failed),
           since(t0));
}

// --- criterion 9 -------------------------------------------------------------------------

void criterion_9() {
    auto t0 = Clock::now();
    GuoOptions g;
    g.capacity = 1;
    g.total_skus = 40;
    int bad = 0, slow = 0;
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
        Instance inst = generate_guo_instance(0.2, 50, 100 + i, g);
        SolverConfig cfg;
        cfg.policy = Policy::return_policy;
        cfg.time_limit = 60;
        auto t1 = Clock::now();
        SolveResult r = solve(inst, cfg);
        double dt = since(t1);
        worst = std::max(worst, dt);
        extraction_failures += r.stats.extraction_failures;
        integral_nodes += r.stats.integral_nodes;
        oracle::OracleResult o = oracle::enumerate_slaprp(inst, cfg.policy);
        if (r.status != "optimal" || r.incumbent.objective != o.objective) {
            ++bad;
            std::printf("  %s: solver %lld (%s), enumeration %lld\n", inst.name.c_str(), r.incumbent.objective,
                        r.status.c_str(), o.objective);
        }
        if (dt >= 60) ++slow;
    }
    report(9, bad == 0 && slow == 0,
           fmt("10 instances (alpha 0.2, 50 orders): %d differ from 8! enumeration, slowest %.1fs", bad, worst), since(t0));
}

// --- criterion 10 ------------------------------------------------------------------------

void criterion_10() {
    auto t0 = Clock::now();
    Rng rng(1010);
    int bad = 0, dom_bad = 0, checked = 0;
    for (Policy p : all_policies())
        for (int t = 0; t < 1000; ++t) {
            bool two = p == Policy::return_policy && t % 4 == 0;
            Layout lay = test::random_layout(rng, two);
            StopSet s = test::random_stops(rng, lay, p == Policy::optimal ? 6 : 8);
            ++checked;
            if (route_length(p, s, lay) != oracle::tour_cost(s, p, lay)) {
                ++bad;
                std::printf("  %s %s: closed form %lld, trace %lld\n", to_string(p), stops_key(s).c_str(),
                            route_length(p, s, lay), oracle::tour_cost(s, p, lay));
            }
        }
    int dom = 0;
    for (int t = 0; t < 1000; ++t) {
        Layout lay = test::random_layout(rng, false);
        StopSet s = test::random_stops(rng, lay, 6);
        long long opt = route_length(Policy::optimal, s, lay);
        bool ok = route_length(Policy::largest_gap, s, lay) <= route_length(Policy::midpoint, s, lay);
        for (Policy p : all_policies()) ok &= opt <= route_length(p, s, lay);
        ++dom;
        if (!ok) ++dom_bad;
    }
    report(10, bad == 0 && dom_bad == 0,
           fmt("%d stop sets vs traced walk (%d differ); dominance on %d sets (%d broken)", checked, bad, dom, dom_bad),
           since(t0));
}

// --- criterion 11 ------------------------------------------------------------------------

std::string stats_csv(const std::vector<SmallCase>& cases) {
    std::vector<cli::BenchRow> rows;
    for (const SmallCase& c : cases) {
        SolverConfig cfg = config_for(c.policy, Branching::combined, true);
        rows.push_back(cli::bench_row(c.inst.name, c.inst, cfg, solve(c.inst, cfg)));
    }
    auto means = cli::group_means(rows);
    rows.insert(rows.end(), means.begin(), means.end());
    return cli::bench_csv(rows, false);
}

void criterion_11() {
    auto t0 = Clock::now();
    std::string a = stats_csv(small_cases()), b = stats_csv(small_cases());
    report(11, a == b && !a.empty(), fmt("two runs of %zu-byte stats CSV %s", a.size(), a == b ? "identical" : "differ"),
           since(t0));
}

}  // namespace

int main() {
    std::vector<SmallCase> cases = small_cases();
    criteria_1_6_8(cases);
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_7();
    criterion_9();
    criterion_5(cases);
    criterion_10();
    criterion_11();
    for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
    std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "PASSED", failures);
    return failures ? 1 : 0;
}
