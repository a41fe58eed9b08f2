#pragma once

// Brute-force references for tests. Nothing here calls the routing evaluators
// or the base distance; geometry is recomputed on an explicit walking grid.

#include <vector>

#include "slaprp/cuts.hpp"
#include "slaprp/lp.hpp"
#include "slaprp/model.hpp"
#include "slaprp/pricing.hpp"
#include "slaprp/routing.hpp"

namespace slaprp::oracle {

// Dijkstra over the aisle/cross-aisle grid; either end may be kDepot.
long long grid_distance(const Layout& lay, int from, int to);

// Step-by-step walk following the policy's textual rules.
long long trace_policy_path(const StopSet& stops, Policy p, const Layout& lay);

// Route length used by the oracles: the traced walk for heuristic policies,
// the best permutation of grid distances for optimal routing.
long long tour_cost(const StopSet& stops, Policy p, const Layout& lay);

struct OracleResult {
    bool feasible = false;
    long long objective = 0;
    Assignment assignment;
    long long evaluations = 0;
};

OracleResult enumerate_slaprp(const Instance& inst, Policy p, long long budget = 3628800);

struct TourResult {
    bool feasible = false;
    double min_reduced_cost = kInf;
    StopSet stops;
    long long cost = 0;
    long long enumerated = 0;
};

// All stop multisets of size |S(o)| allowed by the problem, scored with the oracle cost.
TourResult enumerate_tours(const PricingProblem& p, int max_length = 5);

struct SubsetResult {
    double max_violation = -kInf;
    std::vector<int> subset;
    long long enumerated = 0;
};

SubsetResult enumerate_sl_subsets(const std::vector<double>& xi, const std::vector<RouteSupport>& routes,
                                  int min_size = 2, int max_locations = 16);

}  // namespace slaprp::oracle
