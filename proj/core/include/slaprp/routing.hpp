#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slaprp/model.hpp"

namespace slaprp {

enum class Policy { optimal, return_policy, sshape, midpoint, largest_gap };

const char* to_string(Policy p);
Policy policy_from_string(const std::string& s);
const std::vector<Policy>& all_policies();
bool policy_supported(Policy p, const Layout& lay);

// (location, count) pairs sorted by location, every count >= 1.
using StopSet = std::vector<std::pair<int, int>>;

StopSet make_stops(const std::vector<int>& locations);
std::string stops_key(const StopSet& stops);

struct RouteCost {
    long long total = 0;
    long long horizontal = 0;
    std::vector<std::pair<int, long long>> vertical;  // (aisle, distance); aisle 0 for non-decomposable parts
};

inline constexpr int kExactTspCap = 14;

// Midpoint split: bays <= midpoint_bay are served from the front.
inline int midpoint_bay(const Layout& lay) { return lay.bays / 2; }

RouteCost cost_return(const StopSet& stops, const Layout& lay);
RouteCost cost_sshape(const StopSet& stops, const Layout& lay);
RouteCost cost_midpoint(const StopSet& stops, const Layout& lay);
RouteCost cost_largestgap(const StopSet& stops, const Layout& lay);
RouteCost cost_optimal(const StopSet& stops, const Layout& lay, int cap = kExactTspCap);

RouteCost route_cost(Policy p, const StopSet& stops, const Layout& lay);
long long route_length(Policy p, const StopSet& stops, const Layout& lay);

// Order in which the distinct locations are visited by the policy.
std::vector<int> route_sequence(Policy p, const StopSet& stops, const Layout& lay);

StopSet order_stops(const Instance& inst, const Assignment& a, int order);

struct PlanCost {
    long long total = 0;
    std::vector<long long> per_order;
};

PlanCost evaluate_plan(const Instance& inst, const Assignment& a, Policy p);

// Memoized route lengths for one (layout, policy) pair.
class RouteCostCache {
public:
    RouteCostCache(const Layout& lay, Policy p) : lay_(lay), policy_(p) {}
    long long operator()(const StopSet& stops);
    std::size_t size() const { return memo_.size(); }

private:
    Layout lay_;
    Policy policy_;
    std::unordered_map<std::string, long long> memo_;
};

}  // namespace slaprp
