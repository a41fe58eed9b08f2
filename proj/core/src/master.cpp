#include "slaprp/master.hpp"

#include <algorithm>
#include <map>

namespace slaprp {

int Column::count(int l) const {
    auto it = std::lower_bound(stops.begin(), stops.end(), std::make_pair(l, 0));
    return it != stops.end() && it->first == l ? it->second : 0;
}

int Column::total_stops() const {
    int t = 0;
    for (auto [l, c] : stops) t += c;
    return t;
}

std::string column_key(const Column& c) {
    return std::to_string(c.order) + (c.is_super ? "|super" : "|" + stops_key(c.stops));
}

Column make_super_column(const Instance& inst, int order, long long big) {
    Column c;
    c.order = order;
    c.cost = big;
    c.is_super = true;
    for (int l = 0; l < inst.layout.num_locations(); ++l) c.stops.push_back({l, inst.layout.capacity_of(l)});
    return c;
}

int ColumnPool::add(const Column& c, bool* inserted) {
    std::string k = column_key(c);
    auto it = index_.find(k);
    if (it != index_.end()) {
        if (inserted) *inserted = false;
        return it->second;
    }
    int i = size();
    cols_.push_back(c);
    index_.emplace(std::move(k), i);
    if (c.order >= static_cast<int>(by_order_.size())) by_order_.resize(c.order + 1);
    by_order_[c.order].push_back(i);
    if (inserted) *inserted = true;
    return i;
}

int ColumnPool::find(const Column& c) const {
    auto it = index_.find(column_key(c));
    return it == index_.end() ? -1 : it->second;
}

const std::vector<int>& ColumnPool::of_order(int o) const {
    static const std::vector<int> empty;
    return o < static_cast<int>(by_order_.size()) ? by_order_[o] : empty;
}

NodeContext make_node_context(const Instance& inst, const BranchState& bs) {
    const Layout& lay = inst.layout;
    NodeContext ctx;
    int L = lay.num_locations(), S = inst.num_skus;
    ctx.num_locations = L;
    ctx.placed.assign(S, -1);
    ctx.allowed.assign(static_cast<std::size_t>(S) * L, 1);
    ctx.occupancy.assign(L, 0);
    auto place = [&](int s, int l) {
        if (ctx.placed[s] >= 0 && ctx.placed[s] != l) ctx.consistent = false;
        ctx.placed[s] = l;
    };
    for (auto [s, l] : inst.fixed) place(s, l);
    for (auto [s, l] : bs.forced) place(s, l);
    for (auto [s, l] : bs.forbidden) ctx.allowed[static_cast<std::size_t>(s) * L + l] = 0;
    for (int s = 0; s < S; ++s) {
        if (ctx.placed[s] < 0) {
            ctx.free_skus.push_back(s);
            continue;
        }
        if (!ctx.is_allowed(s, ctx.placed[s])) ctx.consistent = false;
        ++ctx.occupancy[ctx.placed[s]];
    }
    for (int l = 0; l < L; ++l)
        if (ctx.occupancy[l] > lay.capacity_of(l)) ctx.consistent = false;
    for (int s : ctx.free_skus) {
        bool any = false;
        for (int l = 0; l < L && !any; ++l) any = ctx.is_allowed(s, l) && ctx.occupancy[l] < lay.capacity_of(l);
        if (!any) ctx.consistent = false;
    }
    int O = inst.num_orders();
    ctx.mandatory.assign(O, std::vector<int>(L, 0));
    ctx.max_stops.assign(O, std::vector<int>(L, 0));
    for (int o = 0; o < O; ++o) {
        for (int s : inst.orders[o])
            if (ctx.placed[s] >= 0) ++ctx.mandatory[o][ctx.placed[s]];
        for (int l = 0; l < L; ++l)
            ctx.max_stops[o][l] = lay.capacity_of(l) - (ctx.occupancy[l] - ctx.mandatory[o][l]);
    }
    return ctx;
}

bool column_compatible(const Column& c, const Instance& inst, const NodeContext& ctx) {
    if (c.is_super) return true;
    if (c.total_stops() != static_cast<int>(inst.orders[c.order].size())) return false;
    const auto& mand = ctx.mandatory[c.order];
    const auto& cap = ctx.max_stops[c.order];
    for (auto [l, k] : c.stops)
        if (k > cap[l]) return false;
    for (int l = 0; l < ctx.num_locations; ++l)
        if (mand[l] > 0 && c.count(l) < mand[l]) return false;
    return true;
}

std::string cut_key(const SLCut& c) {
    std::string k = std::to_string(c.order) + ":" + std::to_string(c.sku) + ":";
    for (int l : c.locations) k += std::to_string(l) + ",";
    return k;
}

namespace {

bool cut_hits(const SLCut& cut, const Column& c) {
    if (c.is_super) return true;
    for (int l : cut.locations)
        if (c.visits(l)) return true;
    return false;
}

}  // namespace

double reduced_cost(const Column& c, const DualValues& duals, const std::vector<SLCut>& active_cuts) {
    if (duals.lambda.size() != active_cuts.size()) throw Error("reduced_cost: cut set does not match the duals");
    double rc = static_cast<double>(c.cost) - duals.mu[c.order];
    for (auto [l, k] : c.stops) rc -= k * duals.pi[c.order][l] + duals.sigma[c.order][l];
    for (std::size_t i = 0; i < active_cuts.size(); ++i)
        if (active_cuts[i].order == c.order && cut_hits(active_cuts[i], c)) rc -= duals.lambda[i];
    return rc;
}

Rmp::Rmp(const Instance& inst, const NodeContext& ctx, std::unique_ptr<LpSolverAdapter> lp, bool with_sl1)
    : inst_(inst), ctx_(ctx), lp_(lp ? std::move(lp) : make_lp_solver()), L_(inst.layout.num_locations()) {
    const Layout& lay = inst.layout;
    int O = inst.num_orders(), S = inst.num_skus;
    auto orders_of = inst.orders_of_sku();

    cap_row_.resize(L_);
    for (int l = 0; l < L_; ++l) {
        cap_row_[l] = lp_->add_row(-kInf, lay.capacity_of(l) - ctx_.occupancy[l], {});
        ++counts_.capacity;
    }
    assign_row_.assign(S, -1);
    for (int s : ctx_.free_skus) {
        assign_row_[s] = lp_->add_row(1.0, 1.0, {});
        ++counts_.assignment;
    }
    conv_row_.resize(O);
    for (int o = 0; o < O; ++o) {
        conv_row_[o] = lp_->add_row(1.0, 1.0, {});
        ++counts_.convexity;
    }
    auto usable = [&](int s, int l) {
        return ctx_.placed[s] < 0 && ctx_.is_allowed(s, l) && ctx_.occupancy[l] < lay.capacity_of(l);
    };
    link_row_.assign(O, std::vector<int>(L_, -1));
    sl1_rows_.assign(O, std::vector<std::vector<int>>(L_));
    std::map<std::tuple<int, int, int>, int> sl1;  // (o, s, l) -> row
    for (int o = 0; o < O; ++o)
        for (int l = 0; l < L_; ++l) {
            bool any = false;
            for (int s : inst.orders[o]) any = any || usable(s, l);
            if (!any) continue;
            link_row_[o][l] = lp_->add_row(ctx_.mandatory[o][l], kInf, {});
            ++counts_.linking;
        }
    for (int o = 0; o < O && with_sl1; ++o)
        for (int s : inst.orders[o])
            for (int l = 0; l < L_; ++l) {
                if (!usable(s, l)) continue;
                int r = lp_->add_row(0.0, kInf, {});
                sl1[{o, s, l}] = r;
                sl1_rows_[o][l].push_back(r);
                ++counts_.sl1;
            }
    base_rows_ = lp_->num_rows();

    xi_col_.assign(S, std::vector<int>(L_, -1));
    for (int s : ctx_.free_skus)
        for (int l = 0; l < L_; ++l) {
            if (!usable(s, l)) continue;
            SparseVec e{{cap_row_[l], 1.0}, {assign_row_[s], 1.0}};
            for (int o : orders_of[s]) {
                e.push_back({link_row_[o][l], -1.0});
                if (with_sl1) e.push_back({sl1.at({o, s, l}), -1.0});
            }
            xi_col_[s][l] = lp_->add_col(0.0, 0.0, 1.0, e);
        }
}

SparseVec Rmp::column_entries(const Column& c) const {
    SparseVec e{{conv_row_[c.order], 1.0}};
    for (auto [l, k] : c.stops) {
        if (link_row_[c.order][l] >= 0) e.push_back({link_row_[c.order][l], static_cast<double>(k)});
        for (int r : sl1_rows_[c.order][l]) e.push_back({r, 1.0});
    }
    for (std::size_t i = 0; i < cuts_.size(); ++i)
        if (cuts_[i].order == c.order && cut_hits(cuts_[i], c)) e.push_back({base_rows_ + static_cast<int>(i), 1.0});
    return e;
}

int Rmp::add_column(const Column& c, int pool_index) {
    if (!column_compatible(c, inst_, ctx_)) return -1;
    int j = lp_->add_col(static_cast<double>(c.cost), 0.0, kInf, column_entries(c));
    columns_.push_back(c);
    col_lp_.push_back(j);
    pool_index_.push_back(pool_index);
    return static_cast<int>(columns_.size()) - 1;
}

int Rmp::add_cut(const SLCut& cut, int pool_id) {
    if (ctx_.placed[cut.sku] >= 0) return -1;
    SparseVec e;
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].order == cut.order && cut_hits(cut, columns_[i])) e.push_back({col_lp_[i], 1.0});
    for (int l : cut.locations)
        if (xi_col_[cut.sku][l] >= 0) e.push_back({xi_col_[cut.sku][l], -1.0});
    lp_->add_row(0.0, kInf, e);
    cuts_.push_back(cut);
    cut_ids_.push_back(pool_id);
    cut_rhs_.push_back(0.0);
    ++counts_.cuts;
    return static_cast<int>(cuts_.size()) - 1;
}

void Rmp::remove_cuts(const std::vector<int>& positions) {
    if (positions.empty()) return;
    std::vector<char> drop(cuts_.size(), 0);
    std::vector<int> rows;
    for (int p : positions) {
        drop.at(p) = 1;
        rows.push_back(base_rows_ + p);
    }
    lp_->remove_rows(rows);
    std::vector<SLCut> nc;
    std::vector<int> ni;
    std::vector<double> nr;
    for (std::size_t i = 0; i < cuts_.size(); ++i)
        if (!drop[i]) {
            nc.push_back(cuts_[i]);
            ni.push_back(cut_ids_[i]);
            nr.push_back(cut_rhs_[i]);
        }
    cuts_.swap(nc);
    cut_ids_.swap(ni);
    cut_rhs_.swap(nr);
    counts_.cuts = static_cast<int>(cuts_.size());
}

LpStatus Rmp::solve() {
    LpStatus st = lp_->solve();
    if (st == LpStatus::numerical_error || st == LpStatus::iteration_limit) {
        lp_->reset_basis();
        st = lp_->solve();
    }
    if (st != LpStatus::optimal) return st;
    objective_ = lp_->objective_value();
    int O = inst_.num_orders();
    duals_.mu.assign(O, 0.0);
    duals_.pi.assign(O, std::vector<double>(L_, 0.0));
    duals_.sigma.assign(O, std::vector<double>(L_, 0.0));
    for (int o = 0; o < O; ++o) {
        duals_.mu[o] = lp_->row_dual(conv_row_[o]);
        for (int l = 0; l < L_; ++l) {
            if (link_row_[o][l] >= 0) duals_.pi[o][l] = lp_->row_dual(link_row_[o][l]);
            for (int r : sl1_rows_[o][l]) duals_.sigma[o][l] += lp_->row_dual(r);
        }
    }
    duals_.lambda.resize(cuts_.size());
    for (std::size_t i = 0; i < cuts_.size(); ++i) duals_.lambda[i] = lp_->row_dual(base_rows_ + static_cast<int>(i));
    rho_.resize(columns_.size());
    for (std::size_t i = 0; i < columns_.size(); ++i) rho_[i] = lp_->col_value(col_lp_[i]);
    xi_val_.assign(static_cast<std::size_t>(inst_.num_skus) * L_, 0.0);
    for (int s = 0; s < inst_.num_skus; ++s) {
        if (ctx_.placed[s] >= 0) {
            xi_val_[static_cast<std::size_t>(s) * L_ + ctx_.placed[s]] = 1.0;
            continue;
        }
        for (int l = 0; l < L_; ++l)
            if (xi_col_[s][l] >= 0) xi_val_[static_cast<std::size_t>(s) * L_ + l] = lp_->col_value(xi_col_[s][l]);
    }
    return st;
}

double Rmp::xi(int s, int l) const {
    if (xi_val_.empty()) return 0.0;
    return xi_val_[static_cast<std::size_t>(s) * L_ + l];
}

double Rmp::cut_slack(int pos) const { return lp_->row_activity(base_rows_ + pos) - cut_rhs_.at(pos); }

PricingProblem Rmp::pricing_problem(int order, Policy policy) const {
    PricingProblem p;
    p.instance = &inst_;
    p.policy = policy;
    p.order = order;
    p.length = static_cast<int>(inst_.orders[order].size());
    p.mandatory = ctx_.mandatory[order];
    p.max_stops = ctx_.max_stops[order];
    if (duals_.mu.empty()) {
        p.pi.assign(L_, 0.0);
        p.sigma.assign(L_, 0.0);
        return p;
    }
    p.mu = duals_.mu[order];
    p.pi = duals_.pi[order];
    p.sigma = duals_.sigma[order];
    std::map<std::vector<int>, double> groups;
    for (std::size_t i = 0; i < cuts_.size(); ++i)
        if (cuts_[i].order == order && i < duals_.lambda.size()) groups[cuts_[i].locations] += duals_.lambda[i];
    for (auto& [locs, lam] : groups) {
        CutGroup g;
        g.in_set.assign(L_, 0);
        for (int l : locs) g.in_set[l] = 1;
        g.lambda = lam;
        p.cuts.push_back(std::move(g));
    }
    return p;
}

}  // namespace slaprp
