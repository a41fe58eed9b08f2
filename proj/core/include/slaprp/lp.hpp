#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace slaprp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit, time_limit, numerical_error };

const char* to_string(LpStatus s);

using SparseVec = std::vector<std::pair<int, double>>;

// The single seam for LP backends. Rows are lb <= a.x <= ub; duals follow the
// usual minimization sign convention (>= rows get nonnegative duals).
// Modifications keep the current basis so that the next solve is warm.
class LpSolverAdapter {
public:
    virtual ~LpSolverAdapter() = default;

    virtual int add_col(double cost, double lb, double ub, const SparseVec& entries) = 0;
    virtual int add_row(double lb, double ub, const SparseVec& entries) = 0;
    // Removes the given rows; surviving rows keep their relative order.
    virtual void remove_rows(const std::vector<int>& rows) = 0;
    virtual void set_col_bounds(int col, double lb, double ub) = 0;
    virtual void set_row_bounds(int row, double lb, double ub) = 0;
    virtual void set_objective(int col, double cost) = 0;
    virtual void reset_basis() = 0;
    // Wall-clock budget for each later solve(); infinity removes it.
    virtual void set_time_limit(double seconds) = 0;

    virtual LpStatus solve() = 0;

    virtual int num_rows() const = 0;
    virtual int num_cols() const = 0;
    virtual double objective_value() const = 0;
    virtual double col_value(int col) const = 0;
    virtual double row_activity(int row) const = 0;
    virtual double row_dual(int row) const = 0;
    virtual double reduced_cost(int col) const = 0;
    virtual long long iterations() const = 0;
    virtual std::string name() const = 0;

    // Plain LP-text dump of the current model (debugging aid).
    virtual void write_lp(std::ostream& os) const = 0;
};

// "simplex" (default). The SLAPRP_LP_SOLVER environment variable overrides an empty name.
std::unique_ptr<LpSolverAdapter> make_lp_solver(const std::string& name = "");

struct MipProblem {
    std::vector<double> cost;
    std::vector<double> lb, ub;
    std::vector<char> is_int;
    std::vector<SparseVec> rows;  // entries over columns
    std::vector<double> row_lb, row_ub;
    double obj_offset = 0.0;

    int add_var(double c, double lo, double hi, bool integer) {
        cost.push_back(c);
        lb.push_back(lo);
        ub.push_back(hi);
        is_int.push_back(integer ? 1 : 0);
        return static_cast<int>(cost.size()) - 1;
    }
    int add_row(const SparseVec& e, double lo, double hi) {
        rows.push_back(e);
        row_lb.push_back(lo);
        row_ub.push_back(hi);
        return static_cast<int>(rows.size()) - 1;
    }
};

struct MipOptions {
    long long node_limit = 2000000;
    double time_limit = 600.0;
    double int_tol = 1e-6;
};

struct MipResult {
    LpStatus status = LpStatus::infeasible;  // optimal, infeasible or iteration_limit (node/time limit)
    bool has_solution = false;
    double objective = 0.0;
    std::vector<double> x;
    long long nodes = 0;
};

// Solves the LP relaxation; returns status and fills objective/x.
MipResult solve_lp_relaxation(const MipProblem& p);
// Depth-first branch-and-bound over the integer variables (test-scale models only).
MipResult solve_mip(const MipProblem& p, const MipOptions& opt = {});

}  // namespace slaprp
