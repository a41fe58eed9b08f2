#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slaprp/model.hpp"
#include "slaprp/routing.hpp"

namespace slaprp {

// Active SL cuts of one order that share a location set, with their summed duals.
struct CutGroup {
    std::vector<char> in_set;  // per location
    double lambda = 0.0;
};

struct PricingProblem {
    const Instance* instance = nullptr;
    Policy policy = Policy::optimal;
    int order = 0;
    int length = 0;                 // |S(o)|
    double mu = 0.0;
    std::vector<double> pi;         // per location
    std::vector<double> sigma;      // per location, summed over the order's SKUs
    std::vector<CutGroup> cuts;
    std::vector<int> mandatory;     // F0
    std::vector<int> max_stops;     // capacity left after SKUs placed outside the order
};

// Zero duals, mandatory stops from the fixed assignments.
PricingProblem make_pricing_problem(const Instance& inst, Policy policy, int order);

double route_reduced_cost(const PricingProblem& p, const StopSet& stops, long long cost);

struct PricingOptions {
    int max_columns = 30;
    double threshold = -1e-6;
    bool dominance = true;
    bool first_stop_restriction = true;  // optimal policy only
};

struct PricingStats {
    long long labels = 0;
    long long dominated = 0;
    long long rejected = 0;
    std::vector<long long> per_level;  // labels kept per number of stops
};

struct PricedRoute {
    StopSet stops;
    long long cost = 0;         // policy evaluator cost
    double reduced_cost = 0.0;
};

struct PricingResult {
    bool feasible = false;                // some route exists at all
    double min_reduced_cost = 0.0;        // exact minimum over all routes
    std::vector<PricedRoute> routes;      // most negative first, below the threshold
    PricingStats stats;
};

PricingResult price(const PricingProblem& p, const PricingOptions& opt = {});

enum class Reject { none, length, arc, reachability, mandatory, capacity, policy };
const char* to_string(Reject r);

struct Label {
    int location = -1;  // -1 at the depot
    int visit = 0;      // stops made at `location` so far
    int q = 0;
    double rc = 0.0;
    long long cost = 0;
    std::vector<int> remaining;      // mandatory stops still due, per mandatory location
    std::vector<int> extras;         // policy state
    std::vector<std::uint64_t> open;       // optimal policy: locations still usable
    std::vector<std::uint64_t> counted;    // cut groups already entered
    int parent = -1;
    int parent_level = -1;
};

// Label extension and dominance for one pricing problem.
class Labeler {
public:
    Labeler(const PricingProblem& p, const PricingOptions& opt = {});

    Label start() const;
    std::optional<Label> extend(const Label& from, int location, Reject* why = nullptr) const;
    // Reduced cost and walking cost after returning to the depot; nullopt if closing is not allowed.
    std::optional<std::pair<double, long long>> close(const Label& l) const;
    bool dominates(const Label& a, const Label& b) const;

    const PricingProblem& problem() const { return p_; }
    const std::vector<int>& mandatory_locations() const { return mand_locs_; }

private:
    Reject transition(const Label& from, int l2, long long* dist, std::vector<int>* extras) const;
    void close_passed(std::vector<std::uint64_t>& open, int from, int to) const;

    const PricingProblem& p_;
    PricingOptions opt_;
    const Layout& lay_;
    int L_ = 0;
    std::vector<int> mand_locs_;
    std::vector<int> mand_index_;  // location -> position in mand_locs_ or -1
    std::vector<std::vector<int>> group_locs_;
};

// Arc set used by a policy's pricer (node ids as in build_graph).
WarehouseGraph build_policy_graph(const Instance& inst, int order, Policy policy);

}  // namespace slaprp
