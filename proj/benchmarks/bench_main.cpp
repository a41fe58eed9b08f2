#include <benchmark/benchmark.h>

#include "slaprp/compact.hpp"
#include "slaprp/cuts.hpp"
#include "slaprp/pricing.hpp"
#include "slaprp/rng.hpp"
#include "slaprp/search.hpp"

using namespace slaprp;

namespace {

std::vector<StopSet> stop_sets(const Layout& lay, int n, int size) {
    Rng rng(7);
    std::vector<StopSet> out;
    for (int i = 0; i < n; ++i) {
        std::vector<int> locs;
        for (int k = 0; k < size; ++k) locs.push_back(static_cast<int>(rng.below(lay.num_locations())));
        out.push_back(make_stops(locs));
    }
    return out;
}

}  // namespace

static void BM_RouteEvaluator(benchmark::State& st) {
    Policy p = all_policies()[st.range(0)];
    Layout lay;
    lay.aisles = 5;
    lay.bays = 10;
    auto sets = stop_sets(lay, 256, 8);
    std::size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(route_length(p, sets[i++ % sets.size()], lay));
    st.SetLabel(to_string(p));
}
BENCHMARK(BM_RouteEvaluator)->DenseRange(0, 4);

// Labeling pricer on the first order of a uniform instance with random duals.
static void BM_Pricing(benchmark::State& st) {
    Policy p = all_policies()[st.range(0)];
    Instance inst = generate_silva_instance(3, 5, 1, 5, 11);
    PricingProblem pp = make_pricing_problem(inst, p, 0);
    Rng rng(3);
    pp.mu = 80;
    for (auto& v : pp.pi) v = rng.uniform() * 4;
    for (auto& v : pp.sigma) v = rng.uniform() * 4;
    for (auto _ : st) benchmark::DoNotOptimize(price(pp).min_reduced_cost);
    st.SetLabel(to_string(p));
}
BENCHMARK(BM_Pricing)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

static void BM_Separation(benchmark::State& st) {
    int L = static_cast<int>(st.range(0));
    Rng rng(5);
    std::vector<double> xi(L);
    for (auto& x : xi) x = rng.uniform() / L;
    std::vector<RouteSupport> routes;
    for (int r = 0; r < 12; ++r) {
        RouteSupport s{rng.uniform() / 12, {}};
        for (int l = 0; l < L; ++l)
            if (rng.below(4) == 0) s.locations.push_back(l);
        routes.push_back(s);
    }
    for (auto _ : st) benchmark::DoNotOptimize(separate_sl(xi, routes).value);
}
BENCHMARK(BM_Separation)->Arg(10)->Arg(30)->Arg(50)->Unit(benchmark::kMicrosecond);

static void BM_RootBound(benchmark::State& st) {
    Instance inst = generate_silva_instance(3, 5, 5, 3, 2);
    SolverConfig cfg;
    for (auto _ : st) benchmark::DoNotOptimize(root_bound(inst, cfg, RootMode::dw));
}
BENCHMARK(BM_RootBound)->Unit(benchmark::kMillisecond);

static void BM_SolveSmall(benchmark::State& st) {
    Instance inst = generate_silva_instance(1, 5, 5, 3, 4);
    SolverConfig cfg;
    cfg.policy = all_policies()[st.range(0)];
    for (auto _ : st) benchmark::DoNotOptimize(solve(inst, cfg).incumbent.objective);
    st.SetLabel(to_string(cfg.policy));
}
BENCHMARK(BM_SolveSmall)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

static void BM_CompactLpRelaxation(benchmark::State& st) {
    Instance inst = generate_silva_instance(1, 5, 1, 3, 9);
    MipModel m = emit_compact_mtz(inst);
    for (auto _ : st) benchmark::DoNotOptimize(lp_relaxation_value(m));
}
BENCHMARK(BM_CompactLpRelaxation)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
