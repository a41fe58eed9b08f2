// Bounded primal simplex.
//
// Every row i gets a logical variable y_i = a_i.x carrying the row bounds, so the
// system is A x - y = 0 and all bounds live on variables. Of the basis only the
// square block (basic structurals x rows whose logical is nonbasic) is inverted
// explicitly; basic logicals are recovered row by row. Phase 1 minimizes the sum
// of bound violations of the basic variables starting from whatever basis is
// current, which lets column and row additions reuse the previous basis.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include "slaprp/lp.hpp"
#include "slaprp/model.hpp"

namespace slaprp {

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
        case LpStatus::iteration_limit: return "iteration_limit";
        case LpStatus::time_limit: return "time_limit";
        case LpStatus::numerical_error: return "numerical_error";
    }
    return "?";
}

namespace {

enum VStat : unsigned char { kBasic, kLower, kUpper, kZero };

constexpr double kFeasTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kPivTol = 1e-9;
constexpr int kRefactorEvery = 100;

class DenseSimplex final : public LpSolverAdapter {
public:
    int add_col(double cost, double lb, double ub, const SparseVec& entries) override {
        int j = num_cols();
        cols_.push_back({});
        for (auto [r, v] : entries) {
            if (r < 0 || r >= num_rows()) throw Error("add_col: row index out of range");
            if (v == 0.0) continue;
            cols_.back().push_back({r, v});
            rows_[r].push_back({j, v});
        }
        c_.push_back(cost);
        lb_.push_back(lb);
        ub_.push_back(ub);
        x_.push_back(0.0);
        st_.push_back(kLower);
        spos_.push_back(-1);
        place_at_bound(st_[j], x_[j], lb, ub, kLower);
        return j;
    }

    int add_row(double lb, double ub, const SparseVec& entries) override {
        int i = num_rows();
        rows_.push_back({});
        for (auto [j, v] : entries) {
            if (j < 0 || j >= num_cols()) throw Error("add_row: column index out of range");
            if (v == 0.0) continue;
            cols_[j].push_back({i, v});
            rows_[i].push_back({j, v});
        }
        rlo_.push_back(lb);
        rup_.push_back(ub);
        xl_.push_back(0.0);
        rst_.push_back(kBasic);  // a basic logical leaves the inverted block unchanged
        rpos_.push_back(-1);
        return i;
    }

    void remove_rows(const std::vector<int>& rows) override {
        if (rows.empty()) return;
        int m = num_rows();
        std::vector<int> remap(m, 0);
        for (int r : rows) {
            if (r < 0 || r >= m) throw Error("remove_rows: row index out of range");
            remap[r] = -1;
            if (rpos_[r] >= 0) need_refactor_ = true;
        }
        int k = 0;
        for (int i = 0; i < m; ++i)
            if (remap[i] >= 0) remap[i] = k++;
        for (auto& col : cols_) {
            SparseVec nc;
            for (auto [r, v] : col)
                if (remap[r] >= 0) nc.push_back({remap[r], v});
            col.swap(nc);
        }
        std::vector<SparseVec> nrows;
        std::vector<double> nlo, nup, nxl;
        std::vector<VStat> nst;
        std::vector<int> npos;
        for (int i = 0; i < m; ++i)
            if (remap[i] >= 0) {
                nrows.push_back(std::move(rows_[i]));
                nlo.push_back(rlo_[i]);
                nup.push_back(rup_[i]);
                nxl.push_back(xl_[i]);
                nst.push_back(rst_[i]);
                npos.push_back(rpos_[i]);
            }
        rows_.swap(nrows);
        rlo_.swap(nlo);
        rup_.swap(nup);
        xl_.swap(nxl);
        rst_.swap(nst);
        rpos_.swap(npos);
        if (!need_refactor_)
            for (int& i : ridx_) i = remap[i];
    }

    void set_col_bounds(int j, double lb, double ub) override {
        lb_.at(j) = lb;
        ub_[j] = ub;
        if (st_[j] != kBasic) place_at_bound(st_[j], x_[j], lb, ub, st_[j]);
    }

    void set_row_bounds(int i, double lb, double ub) override {
        rlo_.at(i) = lb;
        rup_[i] = ub;
        if (rst_[i] != kBasic) place_at_bound(rst_[i], xl_[i], lb, ub, rst_[i]);
    }

    void set_objective(int j, double cost) override { c_.at(j) = cost; }

    void reset_basis() override {
        for (int j = 0; j < num_cols(); ++j) {
            st_[j] = kLower;
            place_at_bound(st_[j], x_[j], lb_[j], ub_[j], kLower);
        }
        for (int i = 0; i < num_rows(); ++i) rst_[i] = kBasic;
        need_refactor_ = true;
    }

    void set_time_limit(double seconds) override { time_limit_ = seconds; }

    LpStatus solve() override;

    int num_rows() const override { return static_cast<int>(rlo_.size()); }
    int num_cols() const override { return static_cast<int>(c_.size()); }
    double objective_value() const override { return obj_; }
    double col_value(int j) const override { return x_.at(j); }
    double row_activity(int i) const override { return xl_.at(i); }
    double row_dual(int i) const override { return y_.empty() ? 0.0 : y_.at(i); }
    double reduced_cost(int j) const override {
        double d = c_.at(j);
        if (!y_.empty())
            for (auto [r, v] : cols_[j]) d -= y_[r] * v;
        return d;
    }
    long long iterations() const override { return iters_; }
    std::string name() const override { return "simplex"; }
    void write_lp(std::ostream& os) const override;

private:
    static void place_at_bound(VStat& st, double& x, double lb, double ub, VStat pref) {
        if (pref == kUpper && std::isfinite(ub)) {
            st = kUpper;
            x = ub;
        } else if (std::isfinite(lb)) {
            st = kLower;
            x = lb;
        } else if (std::isfinite(ub)) {
            st = kUpper;
            x = ub;
        } else {
            st = kZero;
            x = 0.0;
        }
    }

    static VStat nearest(double x, double lb, double ub) {
        if (std::isfinite(ub) && (!std::isfinite(lb) || std::fabs(x - ub) < std::fabs(x - lb))) return kUpper;
        return kLower;
    }

    double lo(int code) const { return code >= 0 ? lb_[code] : rlo_[-code - 1]; }
    double up(int code) const { return code >= 0 ? ub_[code] : rup_[-code - 1]; }
    double& val(int code) { return code >= 0 ? x_[code] : xl_[-code - 1]; }
    VStat& stat(int code) { return code >= 0 ? st_[code] : rst_[-code - 1]; }
    int k() const { return static_cast<int>(sidx_.size()); }

    // alpha = B^-1 a_code, split into the structural block and the basic logicals
    void ftran(int code, Eigen::VectorXd& aS, Eigen::VectorXd& aL) const {
        int kk = k(), m = num_rows();
        aS.setZero(kk);
        if (code >= 0) {
            for (auto [i, v] : cols_[code])
                if (rpos_[i] >= 0) aS.noalias() += v * M_.col(rpos_[i]);
        } else {
            aS = -M_.col(rpos_[-code - 1]);
        }
        aL.setZero(m);
        for (int t = 0; t < kk; ++t) {
            if (aS(t) == 0.0) continue;
            for (auto [i, v] : cols_[sidx_[t]])
                if (rpos_[i] < 0) aL(i) += v * aS(t);
        }
        if (code >= 0)
            for (auto [i, v] : cols_[code])
                if (rpos_[i] < 0) aL(i) -= v;
    }

    // w = A[row, S] M
    Eigen::RowVectorXd row_times_inverse(int row) const {
        Eigen::RowVectorXd w = Eigen::RowVectorXd::Zero(k());
        for (auto [j, v] : rows_[row])
            if (spos_[j] >= 0) w.noalias() += v * M_.row(spos_[j]);
        return w;
    }

    void pivot(int enter, int leave_code, const Eigen::VectorXd& aS, const Eigen::VectorXd& aL);
    bool try_invert(const std::vector<int>& S, const std::vector<int>& R);
    void rebuild_basis(std::vector<int>& S, std::vector<int>& R);
    void refactor();
    void compute_basic_values();

    std::vector<SparseVec> cols_;  // column -> (row, value)
    std::vector<SparseVec> rows_;  // row -> (column, value)
    std::vector<double> c_, lb_, ub_, x_;
    std::vector<VStat> st_;
    std::vector<int> spos_;  // column -> position in sidx_ or -1
    std::vector<double> rlo_, rup_, xl_;
    std::vector<VStat> rst_;
    std::vector<int> rpos_;  // row -> position in ridx_ or -1 (logical basic)
    std::vector<int> sidx_, ridx_;
    Eigen::MatrixXd M_;  // inverse of A[ridx_, sidx_]; rows follow sidx_, columns ridx_
    bool need_refactor_ = false;
    int since_refactor_ = 0;
    std::vector<double> y_;
    double obj_ = 0.0;
    long long iters_ = 0;
    double time_limit_ = kInf;
};

bool DenseSimplex::try_invert(const std::vector<int>& S, const std::vector<int>& R) {
    int kk = static_cast<int>(S.size());
    if (static_cast<int>(R.size()) != kk) return false;
    std::vector<int> posR(num_rows(), -1);
    for (int u = 0; u < kk; ++u) posR[R[u]] = u;
    Eigen::MatrixXd inv;
    if (kk > 0) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(kk, kk);
        for (int t = 0; t < kk; ++t)
            for (auto [i, v] : cols_[S[t]])
                if (posR[i] >= 0) a(posR[i], t) = v;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
        if (!(lu.rcond() > 1e-11)) return false;
        inv = lu.inverse();
        // the condition estimate can miss a near-singular block
        if (!inv.allFinite()) return false;
        double err = (a * inv - Eigen::MatrixXd::Identity(kk, kk)).cwiseAbs().maxCoeff();
        if (!(err < 1e-6)) return false;
    }
    M_.swap(inv);
    sidx_ = S;
    ridx_ = R;
    std::fill(spos_.begin(), spos_.end(), -1);
    std::fill(rpos_.begin(), rpos_.end(), -1);
    for (int t = 0; t < kk; ++t) spos_[S[t]] = t;
    for (int u = 0; u < kk; ++u) rpos_[R[u]] = u;
    return true;
}

// Gaussian elimination over the basic structural columns, preferring pivot rows whose
// logical is already nonbasic. Dependent columns leave the basis.
void DenseSimplex::rebuild_basis(std::vector<int>& S, std::vector<int>& R) {
    int m = num_rows(), kk = static_cast<int>(S.size());
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, kk);
    for (int t = 0; t < kk; ++t)
        for (auto [i, v] : cols_[S[t]]) w(i, t) = v;
    std::vector<char> used(m, 0);
    std::vector<int> keep, rows;
    for (int c = 0; c < kk; ++c) {
        double amax = 0.0;
        for (int i = 0; i < m; ++i)
            if (!used[i]) amax = std::max(amax, std::fabs(w(i, c)));
        if (amax < 1e-9) {
            place_at_bound(st_[S[c]], x_[S[c]], lb_[S[c]], ub_[S[c]], nearest(x_[S[c]], lb_[S[c]], ub_[S[c]]));
            continue;
        }
        int r = -1;
        double best = 0.0;
        for (int pass = 0; pass < 2 && r < 0; ++pass)
            for (int i = 0; i < m; ++i) {
                if (used[i] || (pass == 0 && rst_[i] == kBasic)) continue;
                double a = std::fabs(w(i, c));
                if (a >= 0.01 * amax && a > best) {
                    best = a;
                    r = i;
                }
            }
        used[r] = 1;
        keep.push_back(S[c]);
        rows.push_back(r);
        int rest = kk - c - 1;
        if (rest == 0) continue;
        for (int i = 0; i < m; ++i) {
            if (used[i] || w(i, c) == 0.0) continue;
            double f = w(i, c) / w(r, c);
            w.row(i).tail(rest) -= f * w.row(r).tail(rest);
        }
    }
    for (int i = 0; i < m; ++i) {
        if (used[i]) {
            if (rst_[i] == kBasic) place_at_bound(rst_[i], xl_[i], rlo_[i], rup_[i], nearest(xl_[i], rlo_[i], rup_[i]));
        } else {
            rst_[i] = kBasic;
        }
    }
    S = keep;
    R = rows;
}

void DenseSimplex::refactor() {
    std::vector<int> S, R;
    for (int j = 0; j < num_cols(); ++j)
        if (st_[j] == kBasic) S.push_back(j);
    for (int i = 0; i < num_rows(); ++i)
        if (rst_[i] != kBasic) R.push_back(i);
    if (!try_invert(S, R)) {
        rebuild_basis(S, R);
        if (!try_invert(S, R)) {
            // numerically hopeless: fall back to the all-logical basis
            for (int j : S) place_at_bound(st_[j], x_[j], lb_[j], ub_[j], nearest(x_[j], lb_[j], ub_[j]));
            for (int i = 0; i < num_rows(); ++i) rst_[i] = kBasic;
            try_invert({}, {});
        }
    }
    need_refactor_ = false;
    since_refactor_ = 0;
}

void DenseSimplex::compute_basic_values() {
    int m = num_rows(), kk = k();
    std::vector<double> r(m, 0.0);
    for (int j = 0; j < num_cols(); ++j)
        if (st_[j] != kBasic && x_[j] != 0.0)
            for (auto [i, v] : cols_[j]) r[i] += v * x_[j];
    for (int i = 0; i < m; ++i)
        if (rst_[i] != kBasic) r[i] -= xl_[i];
    Eigen::VectorXd rhs(kk);
    for (int u = 0; u < kk; ++u) rhs(u) = -r[ridx_[u]];
    Eigen::VectorXd xs = M_ * rhs;
    for (int t = 0; t < kk; ++t) x_[sidx_[t]] = xs(t);
    for (int i = 0; i < m; ++i) {
        if (rst_[i] != kBasic) continue;
        double v = r[i];
        for (auto [j, a] : rows_[i])
            if (spos_[j] >= 0) v += a * x_[j];
        xl_[i] = v;
    }
}

void DenseSimplex::pivot(int enter, int leave_code, const Eigen::VectorXd& aS, const Eigen::VectorXd& aL) {
    int kk = k();
    if (leave_code >= 0 && enter >= 0) {
        int t = spos_[leave_code];
        double piv = aS(t);
        Eigen::VectorXd a = aS;
        a(t) = 0.0;
        M_.row(t) /= piv;
        M_.noalias() -= a * M_.row(t);
        sidx_[t] = enter;
        spos_[enter] = t;
        spos_[leave_code] = -1;
    } else if (leave_code >= 0) {
        int t = spos_[leave_code], iq = -enter - 1, u = rpos_[iq];
        double mtu = M_(t, u);
        Eigen::VectorXd col = M_.col(u);
        Eigen::RowVectorXd row = M_.row(t);
        M_.noalias() -= col * row / mtu;
        int last = kk - 1;
        if (t != last) {
            M_.row(t) = M_.row(last);
            sidx_[t] = sidx_[last];
            spos_[sidx_[t]] = t;
        }
        if (u != last) {
            M_.col(u) = M_.col(last);
            ridx_[u] = ridx_[last];
            rpos_[ridx_[u]] = u;
        }
        M_.conservativeResize(last, last);
        sidx_.pop_back();
        ridx_.pop_back();
        spos_[leave_code] = -1;
        rpos_[iq] = -1;
    } else if (enter >= 0) {
        int ip = -leave_code - 1;
        double s = -aL(ip);
        Eigen::RowVectorXd w = row_times_inverse(ip);
        Eigen::MatrixXd nm(kk + 1, kk + 1);
        nm.topLeftCorner(kk, kk) = M_ + aS * w / s;
        nm.topRightCorner(kk, 1) = -aS / s;
        nm.bottomLeftCorner(1, kk) = -w / s;
        nm(kk, kk) = 1.0 / s;
        M_.swap(nm);
        sidx_.push_back(enter);
        spos_[enter] = kk;
        ridx_.push_back(ip);
        rpos_[ip] = kk;
    } else {
        int ip = -leave_code - 1, iq = -enter - 1, u = rpos_[iq];
        Eigen::RowVectorXd w = row_times_inverse(ip);
        double den = w(u);
        w(u) -= 1.0;
        Eigen::VectorXd col = M_.col(u);
        M_.noalias() -= col * w / den;
        ridx_[u] = ip;
        rpos_[ip] = u;
        rpos_[iq] = -1;
    }
}

LpStatus DenseSimplex::solve() {
    int m = num_rows();
    y_.clear();
    if (need_refactor_) refactor();
    compute_basic_values();
    Eigen::VectorXd aS, aL, v;
    std::vector<double> y(m);
    std::vector<std::pair<int, double>> basic;  // (code, alpha)
    long long limit = 200000 + 50LL * (m + num_cols());
    long long local = 0;
    bool bland = false;
    int stall = 0;
    double last_obj = kInf;
    int last_phase = 0;
    LpStatus result = LpStatus::iteration_limit;
    auto t0 = std::chrono::steady_clock::now();
    auto infeas_cost = [&](int code) {
        double x = val(code);
        return x < lo(code) - kFeasTol ? -1.0 : (x > up(code) + kFeasTol ? 1.0 : 0.0);
    };
    while (local < limit) {
        if (std::isfinite(time_limit_) && local % 16 == 0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > time_limit_) {
            result = LpStatus::time_limit;
            break;
        }
        if (since_refactor_ >= kRefactorEvery) {
            refactor();
            compute_basic_values();
        }
        int kk = k();
        double infeas = 0.0;
        for (int t = 0; t < kk; ++t) {
            int j = sidx_[t];
            infeas += std::max(0.0, lb_[j] - x_[j] - kFeasTol) > 0 ? lb_[j] - x_[j] : 0.0;
            infeas += std::max(0.0, x_[j] - ub_[j] - kFeasTol) > 0 ? x_[j] - ub_[j] : 0.0;
        }
        for (int i = 0; i < m; ++i) {
            if (rst_[i] != kBasic) continue;
            infeas += std::max(0.0, rlo_[i] - xl_[i] - kFeasTol) > 0 ? rlo_[i] - xl_[i] : 0.0;
            infeas += std::max(0.0, xl_[i] - rup_[i] - kFeasTol) > 0 ? xl_[i] - rup_[i] : 0.0;
        }
        int phase = infeas > 0.0 ? 1 : 2;

        // duals: y_i = -cost for basic logicals, y_R = M^T (c_S - A[BL,S]^T y_BL)
        for (int i = 0; i < m; ++i) y[i] = (rst_[i] == kBasic && phase == 1) ? -infeas_cost(-(i + 1)) : 0.0;
        v.resize(kk);
        for (int t = 0; t < kk; ++t) {
            int j = sidx_[t];
            double s = phase == 1 ? infeas_cost(j) : c_[j];
            for (auto [i, a] : cols_[j])
                if (rpos_[i] < 0) s -= a * y[i];
            v(t) = s;
        }
        if (kk > 0) {
            Eigen::VectorXd yr = M_.transpose() * v;
            for (int u = 0; u < kk; ++u) y[ridx_[u]] = yr(u);
        }

        double objnow = 0.0;
        if (phase == 1) {
            objnow = infeas;
        } else {
            for (int j = 0; j < num_cols(); ++j) objnow += c_[j] * x_[j];
        }
        if (phase != last_phase) {
            stall = 0;
            bland = false;
            last_obj = kInf;
            last_phase = phase;
        }
        if (objnow < last_obj - 1e-9 * std::max(1.0, std::fabs(objnow))) {
            stall = 0;
            bland = false;
            last_obj = objnow;
        } else if (++stall > 50) {
            bland = true;
        }

        // pricing
        int enter = 0;
        bool found = false;
        double best = 0.0, dq = 0.0;
        auto consider = [&](int code, double d) {
            VStat s = stat(code);
            if (s == kBasic) return false;
            if (lo(code) == up(code)) return false;
            bool ok = (s == kLower && d < -kOptTol) || (s == kUpper && d > kOptTol) ||
                      (s == kZero && std::fabs(d) > kOptTol);
            if (!ok) return false;
            if (bland) {
                if (!found) {
                    found = true;
                    enter = code;
                    dq = d;
                }
                return true;
            }
            if (std::fabs(d) > best) {
                best = std::fabs(d);
                enter = code;
                dq = d;
                found = true;
            }
            return false;
        };
        bool stop = false;
        for (int j = 0; j < num_cols() && !stop; ++j) {
            if (st_[j] == kBasic) continue;
            double d = phase == 2 ? c_[j] : 0.0;
            for (auto [r, a] : cols_[j]) d -= y[r] * a;
            stop = consider(j, d);
        }
        for (int i = 0; i < m && !stop; ++i) {
            if (rst_[i] == kBasic) continue;
            stop = consider(-(i + 1), y[i]);
        }
        if (!found) {
            if (phase == 1) {
                result = LpStatus::infeasible;
            } else {
                result = LpStatus::optimal;
                y_ = y;
                obj_ = objnow;
            }
            break;
        }

        ftran(enter, aS, aL);
        basic.clear();
        for (int t = 0; t < kk; ++t) basic.push_back({sidx_[t], aS(t)});
        for (int i = 0; i < m; ++i)
            if (rst_[i] == kBasic) basic.push_back({-(i + 1), aL(i)});
        double dir = dq < 0.0 ? 1.0 : -1.0;

        // ratio test (Harris two-pass, or textbook min-ratio under Bland)
        double tflip = kInf;
        if (std::isfinite(lo(enter)) && std::isfinite(up(enter))) tflip = up(enter) - lo(enter);
        auto limit_of = [&](int p, double tol, bool* to_upper) -> double {
            auto [code, a] = basic[p];
            if (std::fabs(a) <= kPivTol) return kInf;
            double delta = -dir * a;
            double x = val(code), l = lo(code), u = up(code);
            bool below = x < l - kFeasTol, above = x > u + kFeasTol;
            if (phase == 1 && below) {
                if (delta > 0) {
                    *to_upper = false;
                    return (l - x + tol) / delta;
                }
                return kInf;
            }
            if (phase == 1 && above) {
                if (delta < 0) {
                    *to_upper = true;
                    return (x - u + tol) / -delta;
                }
                return kInf;
            }
            if (delta < 0 && std::isfinite(l)) {
                *to_upper = false;
                return std::max(0.0, x - l + tol) / -delta;
            }
            if (delta > 0 && std::isfinite(u)) {
                *to_upper = true;
                return std::max(0.0, u - x + tol) / delta;
            }
            return kInf;
        };
        int nb = static_cast<int>(basic.size());
        int leave = -1;
        bool leave_upper = false;
        double tleave = kInf;
        if (bland) {
            int best_key = 0;
            for (int p = 0; p < nb; ++p) {
                bool tu = false;
                double t = limit_of(p, 0.0, &tu);
                if (t == kInf) continue;
                int code = basic[p].first;
                int key = code >= 0 ? code : num_cols() + (-code - 1);
                if (t < tleave - 1e-12 || (t <= tleave + 1e-12 && key < best_key)) {
                    tleave = t;
                    leave = p;
                    leave_upper = tu;
                    best_key = key;
                }
            }
        } else {
            double tmax = kInf;
            for (int p = 0; p < nb; ++p) {
                bool tu = false;
                tmax = std::min(tmax, limit_of(p, kFeasTol, &tu));
            }
            if (tmax < kInf) {
                double bestabs = -1.0;
                for (int p = 0; p < nb; ++p) {
                    bool tu = false;
                    double t = limit_of(p, 0.0, &tu);
                    if (t <= tmax && std::fabs(basic[p].second) > bestabs) {
                        bestabs = std::fabs(basic[p].second);
                        leave = p;
                        leave_upper = tu;
                        tleave = t;
                    }
                }
            }
        }
        ++iters_;
        ++local;
        if (leave < 0 && tflip == kInf) {
            result = phase == 2 ? LpStatus::unbounded : LpStatus::numerical_error;
            break;
        }
        double t = tflip <= tleave ? tflip : std::max(0.0, tleave);
        for (auto [code, a] : basic) val(code) -= dir * t * a;
        if (tflip <= tleave) {
            VStat& s = stat(enter);
            if (s == kLower) {
                s = kUpper;
                val(enter) = up(enter);
            } else {
                s = kLower;
                val(enter) = lo(enter);
            }
            continue;
        }
        double enter_val = val(enter) + dir * t;
        int lcode = basic[leave].first;
        pivot(enter, lcode, aS, aL);
        stat(lcode) = leave_upper ? kUpper : kLower;
        val(lcode) = leave_upper ? up(lcode) : lo(lcode);
        stat(enter) = kBasic;
        val(enter) = enter_val;
        ++since_refactor_;
    }
    if (result == LpStatus::optimal) {
        // clean up drift in the reported primal values
        compute_basic_values();
        double o = 0.0;
        for (int j = 0; j < num_cols(); ++j) o += c_[j] * x_[j];
        obj_ = o;
        if (!std::isfinite(o)) {
            y_.clear();
            need_refactor_ = true;
            result = LpStatus::numerical_error;
        }
    }
    return result;
}

void DenseSimplex::write_lp(std::ostream& os) const {
    auto num = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.12g", v);
        return std::string(b);
    };
    os << "Minimize\n obj:";
    for (int j = 0; j < num_cols(); ++j)
        if (c_[j] != 0.0) os << (c_[j] < 0 ? " - " : " + ") << num(std::fabs(c_[j])) << " c" << j;
    os << "\nSubject To\n";
    std::vector<SparseVec> rows(num_rows());
    for (int j = 0; j < num_cols(); ++j)
        for (auto [r, v] : cols_[j]) rows[r].push_back({j, v});
    for (int i = 0; i < num_rows(); ++i) {
        auto terms = [&]() {
            std::string s;
            for (auto [j, v] : rows[i]) s += (v < 0 ? " - " : " + ") + num(std::fabs(v)) + " c" + std::to_string(j);
            return s.empty() ? std::string(" 0 c0") : s;
        };
        bool hl = std::isfinite(rlo_[i]), hu = std::isfinite(rup_[i]);
        if (hl && hu && rlo_[i] == rup_[i]) {
            os << " r" << i << ":" << terms() << " = " << num(rlo_[i]) << "\n";
            continue;
        }
        if (hl) os << " r" << i << "_lo:" << terms() << " >= " << num(rlo_[i]) << "\n";
        if (hu) os << " r" << i << "_up:" << terms() << " <= " << num(rup_[i]) << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < num_cols(); ++j) {
        std::string l = std::isfinite(lb_[j]) ? num(lb_[j]) : "-inf";
        std::string u = std::isfinite(ub_[j]) ? num(ub_[j]) : "+inf";
        os << " " << l << " <= c" << j << " <= " << u << "\n";
    }
    os << "End\n";
}

}  // namespace

std::unique_ptr<LpSolverAdapter> make_lp_solver(const std::string& name) {
    std::string n = name;
    if (n.empty()) {
        const char* env = std::getenv("SLAPRP_LP_SOLVER");
        n = env ? env : "simplex";
    }
    if (n == "simplex") return std::make_unique<DenseSimplex>();
    throw Error("unknown LP solver '" + n + "'");
}

}  // namespace slaprp

