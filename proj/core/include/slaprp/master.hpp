#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "slaprp/lp.hpp"
#include "slaprp/model.hpp"
#include "slaprp/pricing.hpp"
#include "slaprp/routing.hpp"

namespace slaprp {

// A route for one order: stop counts a^l (the visit flags b^l are count > 0).
struct Column {
    int order = 0;
    long long cost = 0;
    StopSet stops;
    bool is_super = false;

    int count(int l) const;
    bool visits(int l) const { return count(l) > 0; }
    int total_stops() const;
};

std::string column_key(const Column& c);

// a^l = K_l everywhere; cost is the caller's BIG value.
Column make_super_column(const Instance& inst, int order, long long big);

// Global column store, deduplicated by (order, stop multiset).
class ColumnPool {
public:
    // Index of the stored column; `inserted` tells whether it was new.
    int add(const Column& c, bool* inserted = nullptr);
    int find(const Column& c) const;
    const Column& operator[](int i) const { return cols_[i]; }
    int size() const { return static_cast<int>(cols_.size()); }
    const std::vector<int>& of_order(int o) const;

private:
    std::vector<Column> cols_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> by_order_;
};

// Branching decisions of one tree node. Aisle decisions are stored as the
// forbidden pairs they imply; `restricted` marks SKUs carrying a one-decision
// on an aisle (they are no longer interchangeable with their symmetric twins).
struct BranchState {
    std::vector<std::pair<int, int>> forced;     // (sku, location)
    std::vector<std::pair<int, int>> forbidden;  // (sku, location)
    std::vector<int> restricted;
    int depth = 0;
};

// Everything the RMP and the pricers need to know about a node.
struct NodeContext {
    int num_locations = 0;
    std::vector<int> placed;             // sku -> location when fixed or forced, else -1
    std::vector<char> allowed;           // sku * L + l, meaningful for unplaced SKUs
    std::vector<int> occupancy;          // placed SKUs per location
    std::vector<std::vector<int>> mandatory;  // order -> per location stops forced by placed SKUs
    std::vector<std::vector<int>> max_stops;  // order -> K_l minus placed SKUs outside the order
    std::vector<int> free_skus;               // unplaced SKUs
    bool consistent = true;                   // false when the decisions cannot be met

    bool is_allowed(int s, int l) const { return allowed[static_cast<std::size_t>(s) * num_locations + l] != 0; }
};

NodeContext make_node_context(const Instance& inst, const BranchState& bs);

// Routes usable at the node: exact stop count, mandatory stops, residual capacity.
bool column_compatible(const Column& c, const Instance& inst, const NodeContext& ctx);

struct SLCut {
    int order = 0;
    int sku = 0;
    std::vector<int> locations;  // sorted, size >= 2
    double violation = 0.0;
};

std::string cut_key(const SLCut& c);

struct DualValues {
    std::vector<double> mu;                       // per order
    std::vector<std::vector<double>> pi;          // order -> location
    std::vector<std::vector<double>> sigma;       // order -> location, summed over the order's SKUs
    std::vector<double> lambda;                   // per active cut, in RMP order
};

// Reduced cost of a column under explicit duals.
double reduced_cost(const Column& c, const DualValues& duals, const std::vector<SLCut>& active_cuts);

struct RmpRowCounts {
    int capacity = 0, assignment = 0, convexity = 0, linking = 0, sl1 = 0, cuts = 0;
};

// The restricted master LP of one node.
class Rmp {
public:
    // with_sl1 = false leaves out the per-SKU visit rows (plain DW master).
    Rmp(const Instance& inst, const NodeContext& ctx, std::unique_ptr<LpSolverAdapter> lp = nullptr,
        bool with_sl1 = true);

    // Adds the column when compatible with the node; returns its RMP index or -1.
    int add_column(const Column& c, int pool_index = -1);
    int add_cut(const SLCut& cut, int pool_id = -1);
    // Drops the given active cuts (by position in active_cuts()).
    void remove_cuts(const std::vector<int>& positions);

    LpStatus solve();

    double objective() const { return objective_; }
    const DualValues& duals() const { return duals_; }
    double xi(int s, int l) const;  // includes placed SKUs as constants
    double rho(int col) const { return rho_.at(col); }

    int num_columns() const { return static_cast<int>(columns_.size()); }
    const Column& column(int i) const { return columns_[i]; }
    int pool_index(int i) const { return pool_index_[i]; }
    const std::vector<SLCut>& active_cuts() const { return cuts_; }
    const std::vector<int>& active_cut_ids() const { return cut_ids_; }
    double cut_slack(int pos) const;
    const RmpRowCounts& row_counts() const { return counts_; }
    int num_rows() const { return lp_->num_rows(); }

    PricingProblem pricing_problem(int order, Policy policy) const;

    const Instance& instance() const { return inst_; }
    const NodeContext& context() const { return ctx_; }
    LpSolverAdapter& lp() { return *lp_; }
    void write_lp(std::ostream& os) const { lp_->write_lp(os); }

private:
    SparseVec column_entries(const Column& c) const;

    const Instance& inst_;
    NodeContext ctx_;
    std::unique_ptr<LpSolverAdapter> lp_;
    int L_ = 0;
    std::vector<int> cap_row_;                    // location -> row
    std::vector<int> assign_row_;                 // sku -> row or -1
    std::vector<int> conv_row_;                   // order -> row
    std::vector<std::vector<int>> link_row_;      // order -> location -> row or -1
    std::vector<std::vector<std::vector<int>>> sl1_rows_;  // order -> location -> rows (one per free SKU)
    int base_rows_ = 0;
    std::vector<std::vector<int>> xi_col_;        // sku -> location -> LP column or -1
    std::vector<Column> columns_;
    std::vector<int> col_lp_;                     // RMP column -> LP column
    std::vector<int> pool_index_;
    std::vector<SLCut> cuts_;
    std::vector<int> cut_ids_;
    std::vector<double> cut_rhs_;
    RmpRowCounts counts_;
    double objective_ = 0.0;
    DualValues duals_;
    std::vector<double> rho_;
    std::vector<double> xi_val_;
};

}  // namespace slaprp
