#include <algorithm>
#include <chrono>
#include <cmath>
#include <tuple>

#include "slaprp/lp.hpp"

namespace slaprp {

namespace {

std::unique_ptr<LpSolverAdapter> load(const MipProblem& p) {
    auto lp = make_lp_solver();
    int n = static_cast<int>(p.cost.size());
    for (int j = 0; j < n; ++j) lp->add_col(p.cost[j], p.lb[j], p.ub[j], {});
    for (std::size_t i = 0; i < p.rows.size(); ++i) lp->add_row(p.row_lb[i], p.row_ub[i], p.rows[i]);
    return lp;
}

std::vector<double> values(const LpSolverAdapter& lp) {
    std::vector<double> x(lp.num_cols());
    for (int j = 0; j < lp.num_cols(); ++j) x[j] = lp.col_value(j);
    return x;
}

}  // namespace

MipResult solve_lp_relaxation(const MipProblem& p) {
    auto lp = load(p);
    MipResult r;
    r.status = lp->solve();
    if (r.status == LpStatus::optimal) {
        r.has_solution = true;
        r.objective = lp->objective_value() + p.obj_offset;
        r.x = values(*lp);
    }
    return r;
}

MipResult solve_mip(const MipProblem& p, const MipOptions& opt) {
    using Clock = std::chrono::steady_clock;
    auto start = Clock::now();
    auto lp = load(p);
    int n = static_cast<int>(p.cost.size());
    MipResult best;
    best.status = LpStatus::infeasible;
    double incumbent = kInf;
    bool complete = true;

    using Change = std::tuple<int, double, double>;
    std::vector<std::vector<Change>> stack{{}};
    std::vector<Change> applied;
    while (!stack.empty()) {
        if (best.nodes >= opt.node_limit ||
            std::chrono::duration<double>(Clock::now() - start).count() > opt.time_limit) {
            complete = false;
            break;
        }
        std::vector<Change> node = std::move(stack.back());
        stack.pop_back();
        for (auto& [j, l, u] : applied) lp->set_col_bounds(j, p.lb[j], p.ub[j]);
        for (auto& [j, l, u] : node) lp->set_col_bounds(j, l, u);
        applied = node;
        ++best.nodes;

        LpStatus st = lp->solve();
        if (st == LpStatus::infeasible) continue;
        if (st == LpStatus::unbounded && node.empty()) {
            best.status = LpStatus::unbounded;
            return best;
        }
        if (st != LpStatus::optimal) {
            complete = false;
            continue;
        }
        double obj = lp->objective_value() + p.obj_offset;
        if (obj >= incumbent - 1e-9) continue;

        int pick = -1;
        double frac_best = opt.int_tol;
        for (int j = 0; j < n; ++j) {
            if (!p.is_int[j]) continue;
            double v = lp->col_value(j);
            double f = std::fabs(v - std::round(v));
            if (f > frac_best) {
                frac_best = f;
                pick = j;
            }
        }
        if (pick < 0) {
            incumbent = obj;
            best.has_solution = true;
            best.objective = obj;
            best.x = values(*lp);
            for (int j = 0; j < n; ++j)
                if (p.is_int[j]) best.x[j] = std::round(best.x[j]);
            continue;
        }
        double v = lp->col_value(pick);
        double lo = p.lb[pick], hi = p.ub[pick];
        for (auto& [j, l, u] : node)
            if (j == pick) {
                lo = l;
                hi = u;
            }
        auto child = [&](double l, double u) {
            std::vector<Change> c;
            for (auto& ch : node)
                if (std::get<0>(ch) != pick) c.push_back(ch);
            c.emplace_back(pick, l, u);
            return c;
        };
        stack.push_back(child(lo, std::floor(v)));
        stack.push_back(child(std::ceil(v), hi));
    }
    if (best.has_solution)
        best.status = complete ? LpStatus::optimal : LpStatus::iteration_limit;
    else
        best.status = complete ? LpStatus::infeasible : LpStatus::iteration_limit;
    return best;
}

}  // namespace slaprp
