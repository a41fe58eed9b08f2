#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slaprp/cuts.hpp"
#include "slaprp/master.hpp"
#include "slaprp/model.hpp"
#include "slaprp/routing.hpp"

namespace slaprp {

enum class Branching { location, combined };
const char* to_string(Branching b);
Branching branching_from_string(const std::string& s);

struct SolverConfig {
    Policy policy = Policy::optimal;
    Branching branching = Branching::combined;
    bool symmetry = true;
    double time_limit = 7200.0;
    std::uint64_t seed = 1;
    long long node_limit = -1;            // negative: unlimited
    int max_columns_per_order = 30;
    double rc_tolerance = 1e-6;
    bool use_sl1 = true;
    bool use_cuts = true;
    int max_active_cuts = 500;             // per order
    int separation_depth = 3;
    double min_violation = 0.01;
    int max_cut_rounds = 50;               // per node
    long long separation_budget = 2000000;
    bool decreasing_separation_order = true;
    double aisle_threshold = 0.25;
    bool round_bound = true;
    bool dominance = true;
    bool first_stop_restriction = true;
    std::string lp_solver;                 // empty: default adapter
};

// key = value lines; '#' starts a comment. Unknown keys are errors.
SolverConfig parse_config(const std::string& text, SolverConfig base = {});
SolverConfig load_config(const std::string& path, SolverConfig base = {});

struct Incumbent {
    bool found = false;
    Assignment assignment;
    std::vector<StopSet> routes;  // per order
    std::vector<long long> costs;
    long long objective = 0;
};

struct SolveStats {
    bool optimal = false;
    double lower_bound = 0.0;
    long long upper_bound = 0;
    double gap = 0.0;  // percent
    double time = 0.0;
    long long nodes = 0;
    long long cuts = 0;            // SL cuts separated
    long long columns = 0;
    long long pricing_calls = 0;
    long long cg_iterations = 0;
    long long integral_nodes = 0;
    long long extraction_failures = 0;
    long long separation_exhausted = 0;
    double root_lp = 0.0;  // stays 0 when the root LP did not finish
    long long initial_upper_bound = 0;
};

struct SolveResult {
    std::string status;  // optimal | limit | infeasible
    Incumbent incumbent;
    SolveStats stats;
    std::vector<SLCut> cuts;  // every SL cut separated during the run
};

SolveResult solve(const Instance& inst, const SolverConfig& cfg = {});

// Root node bounds used for formulation comparisons.
enum class RootMode { dw, dw_sl1, dw_sl };
double root_bound(const Instance& inst, const SolverConfig& cfg, RootMode mode);

// Smallest multiple of 2 gcd(D, d) not below lp - 1e-6.
long long round_bound(double lp, const Layout& lay);

struct BranchDecision {
    enum Kind { location, aisle } kind = location;
    int sku = 0;
    int target = 0;  // location id or aisle number
    double score = 0.0;
};

// xi is indexed sku * |L| + l. Throws when xi is integral.
BranchDecision select_branch_location(const Instance& inst, const NodeContext& ctx, const std::vector<double>& xi);
BranchDecision select_branch_combined(const Instance& inst, const NodeContext& ctx, const std::vector<double>& xi,
                                      double threshold = 0.25);

// SKUs interchangeable with s at this node (same order set, unplaced, no aisle one-decision).
std::vector<int> symmetric_skus(const Instance& inst, const BranchState& bs, const NodeContext& ctx, int s);

// (one-branch, zero-branch) children.
std::pair<BranchState, BranchState> make_children(const Instance& inst, const BranchState& bs, const NodeContext& ctx,
                                                  const BranchDecision& dec, bool symmetry);

// Random feasible start followed by best-improvement swaps.
Incumbent initial_solution(const Instance& inst, Policy policy, std::uint64_t seed);

// Greedy completion by largest xi; nullopt if it gets stuck.
std::optional<Incumbent> primal_heuristic(const Instance& inst, const NodeContext& ctx, const std::vector<double>& xi,
                                          Policy policy);

Incumbent make_incumbent(const Instance& inst, const Assignment& a, Policy policy);

// Route per order with a^l = sum of xi over the order's SKUs; requires integral xi.
Incumbent extract_integer_solution(const Rmp& rmp, Policy policy);

}  // namespace slaprp
