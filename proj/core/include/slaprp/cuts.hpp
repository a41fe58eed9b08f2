#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "slaprp/master.hpp"

namespace slaprp {

// One positive route of the order being separated: its RMP value and the
// locations it stops at.
struct RouteSupport {
    double rho = 0.0;
    std::vector<int> locations;
};

struct SeparationOptions {
    double min_violation = 0.01;
    int min_size = 2;
    bool decreasing_order = true;     // explore locations by decreasing xi
    long long state_budget = 2000000; // memo entries before giving up on one (o, s)
};

struct SeparationResult {
    bool found = false;           // value > min_violation
    bool exhausted = false;       // state budget hit; value is then only a lower bound
    double value = 0.0;           // max over |Lbar| >= min_size of sum xi - sum rho*delta
    std::vector<int> locations;   // an argmax, filled only when found
    long long states = 0;
};

// Exact maximization of sum_{l in Lbar} xi_l - sum_r rho_r [r stops in Lbar].
SeparationResult separate_sl(const std::vector<double>& xi, const std::vector<RouteSupport>& routes,
                             const SeparationOptions& opt = {});

// Positive-rho routes of one order in the current RMP solution.
std::vector<RouteSupport> route_support(const Rmp& rmp, int order, double eps = 1e-9);

// Separation for (order, sku) on the current RMP solution.
SeparationResult separate(const Rmp& rmp, int order, int sku, const SeparationOptions& opt = {});

// Sum of xi over Lbar minus the rho mass of routes stopping in Lbar.
double cut_violation(const Rmp& rmp, const SLCut& cut);

class CutPool {
public:
    explicit CutPool(int max_active_per_order = 500) : cap_(max_active_per_order) {}

    // Returns the id of the stored cut (existing id for a duplicate).
    int add(const SLCut& cut, bool* inserted = nullptr);
    const SLCut& cut(int id) const { return cuts_.at(id); }
    int size() const { return static_cast<int>(cuts_.size()); }
    int max_active_per_order() const { return cap_; }

    // Pooled cuts not active in `rmp` and violated by more than `min_violation`,
    // most violated first, truncated per order to the room left under the cap.
    std::vector<int> pool_check(const Rmp& rmp, double min_violation = 0.01) const;
    // Removes active cuts whose row slack exceeds tol; returns their pool ids.
    std::vector<int> deactivate_nonbinding(Rmp& rmp, double tol = 1e-6) const;
    // Room left for new active cuts of `order` in `rmp`.
    int room(const Rmp& rmp, int order) const;

    static bool should_separate(int depth, int max_depth = 3) { return depth <= max_depth; }

private:
    int cap_;
    std::vector<SLCut> cuts_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace slaprp
