#include "slaprp/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace slaprp {

namespace {

// Route subsets as 128-bit masks.
struct Mask {
    std::uint64_t lo = 0, hi = 0;
    bool empty() const { return lo == 0 && hi == 0; }
    Mask operator&(const Mask& o) const { return {lo & o.lo, hi & o.hi}; }
    Mask without(const Mask& o) const { return {lo & ~o.lo, hi & ~o.hi}; }
    void set(int i) { (i < 64 ? lo : hi) |= std::uint64_t{1} << (i & 63); }
    bool test(int i) const { return ((i < 64 ? lo : hi) >> (i & 63)) & 1u; }
};

struct KeyHash {
    std::size_t operator()(const std::tuple<int, std::uint64_t, std::uint64_t>& k) const {
        auto [i, a, b] = k;
        std::size_t h = std::hash<std::uint64_t>()(a) ^ (std::hash<std::uint64_t>()(b) * 0x9e3779b97f4a7c15ULL);
        return h ^ (static_cast<std::size_t>(i) * 0x85ebca6bULL);
    }
};

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class SeparationDp {
public:
    SeparationDp(const std::vector<double>& xi, const std::vector<RouteSupport>& routes, const SeparationOptions& opt)
        : xi_(xi), opt_(opt) {
        int L = static_cast<int>(xi.size());
        order_.resize(L);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            return opt.decreasing_order ? xi[a] > xi[b] : xi[a] < xi[b];
        });
        visit_.assign(L, Mask{});
        for (const auto& r : routes) {
            if (r.rho <= 0.0) continue;
            int idx = static_cast<int>(rho_.size());
            rho_.push_back(r.rho);
            for (int l : r.locations) visit_[l].set(idx);
        }
        for (int i = 0; i < static_cast<int>(rho_.size()); ++i) full_.set(i);
        suffix_.assign(L + 1, 0.0);
        for (int i = L - 1; i >= 0; --i) suffix_[i] = suffix_[i + 1] + std::max(0.0, xi[order_[i]]);
    }

    bool too_many_routes() const { return rho_.size() > 128; }

    double run() { return value(0, full_, 0); }

    std::vector<int> argmax() {
        std::vector<int> out;
        int i = 0, cnt = 0, n = static_cast<int>(order_.size());
        Mask m = full_;
        while (i < n) {
            int l = order_[i];
            if (m.empty()) {
                // everything left is free: take the positive ones, pad to the minimum size
                std::vector<int> zero;
                for (int k = i; k < n; ++k) (xi_[order_[k]] > 0.0 ? out : zero).push_back(order_[k]);
                for (std::size_t k = 0; static_cast<int>(out.size()) < opt_.min_size && k < zero.size(); ++k)
                    out.push_back(zero[k]);
                break;
            }
            Mask hit = visit_[l] & m;
            double skip = value(i + 1, m, cnt);
            double take = xi_[l] - mass(hit) + value(i + 1, m.without(hit), std::min(cnt + 1, opt_.min_size));
            if (take > skip + 1e-12) {
                out.push_back(l);
                m = m.without(hit);
                cnt = std::min(cnt + 1, opt_.min_size);
            }
            ++i;
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    long long states() const { return static_cast<long long>(memo_.size()); }
    bool exhausted() const { return exhausted_; }

private:
    double mass(const Mask& m) const {
        double s = 0.0;
        for (std::size_t r = 0; r < rho_.size(); ++r)
            if (m.test(static_cast<int>(r))) s += rho_[r];
        return s;
    }

    // best extra value from locations order_[i..] given unhit routes m and size so far
    double value(int i, Mask m, int cnt) {
        int n = static_cast<int>(order_.size());
        if (i == n) return cnt >= opt_.min_size ? 0.0 : kNegInf;
        if (m.empty()) return cnt + (n - i) >= opt_.min_size ? suffix_[i] : kNegInf;
        auto key = std::make_tuple(i * 4 + cnt, m.lo, m.hi);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        if (static_cast<long long>(memo_.size()) >= opt_.state_budget) {
            exhausted_ = true;
            return kNegInf;
        }
        int l = order_[i];
        Mask hit = visit_[l] & m;
        int c2 = std::min(cnt + 1, opt_.min_size);
        double best;
        if (hit.empty() && xi_[l] >= 0.0) {
            // no unhit route stops here: taking it never hurts
            best = xi_[l] + value(i + 1, m, c2);
        } else {
            best = std::max(value(i + 1, m, cnt), xi_[l] - mass(hit) + value(i + 1, m.without(hit), c2));
        }
        memo_.emplace(key, best);
        return best;
    }

    const std::vector<double>& xi_;
    SeparationOptions opt_;
    std::vector<int> order_;
    std::vector<Mask> visit_;
    std::vector<double> rho_;
    std::vector<double> suffix_;
    Mask full_;
    std::unordered_map<std::tuple<int, std::uint64_t, std::uint64_t>, double, KeyHash> memo_;
    bool exhausted_ = false;
};

}  // namespace

SeparationResult separate_sl(const std::vector<double>& xi, const std::vector<RouteSupport>& routes,
                             const SeparationOptions& opt) {
    SeparationResult res;
    if (static_cast<int>(xi.size()) < opt.min_size) {
        res.value = kNegInf;
        return res;
    }
    SeparationDp dp(xi, routes, opt);
    if (dp.too_many_routes()) {
        res.exhausted = true;
        res.value = kNegInf;
        return res;
    }
    res.value = dp.run();
    res.exhausted = dp.exhausted();
    res.states = dp.states();
    if (!res.exhausted && res.value > opt.min_violation) {
        res.found = true;
        res.locations = dp.argmax();
    }
    return res;
}

std::vector<RouteSupport> route_support(const Rmp& rmp, int order, double eps) {
    std::vector<RouteSupport> out;
    int L = rmp.instance().layout.num_locations();
    for (int i = 0; i < rmp.num_columns(); ++i) {
        const Column& c = rmp.column(i);
        if (c.order != order || rmp.rho(i) <= eps) continue;
        RouteSupport r;
        r.rho = rmp.rho(i);
        if (c.is_super) {
            r.locations.resize(L);
            std::iota(r.locations.begin(), r.locations.end(), 0);
        } else {
            for (auto [l, k] : c.stops) r.locations.push_back(l);
        }
        out.push_back(std::move(r));
    }
    return out;
}

SeparationResult separate(const Rmp& rmp, int order, int sku, const SeparationOptions& opt) {
    if (rmp.context().placed[sku] >= 0) return {};
    int L = rmp.instance().layout.num_locations();
    std::vector<double> xi(L);
    for (int l = 0; l < L; ++l) xi[l] = rmp.xi(sku, l);
    return separate_sl(xi, route_support(rmp, order), opt);
}

double cut_violation(const Rmp& rmp, const SLCut& cut) {
    double v = 0.0;
    for (int l : cut.locations) v += rmp.xi(cut.sku, l);
    for (int i = 0; i < rmp.num_columns(); ++i) {
        const Column& c = rmp.column(i);
        if (c.order != cut.order) continue;
        bool hit = c.is_super;
        for (int l : cut.locations) hit = hit || c.visits(l);
        if (hit) v -= rmp.rho(i);
    }
    return v;
}

int CutPool::add(const SLCut& cut, bool* inserted) {
    std::string k = cut_key(cut);
    auto it = index_.find(k);
    if (it != index_.end()) {
        if (inserted) *inserted = false;
        return it->second;
    }
    int id = size();
    cuts_.push_back(cut);
    index_.emplace(std::move(k), id);
    if (inserted) *inserted = true;
    return id;
}

int CutPool::room(const Rmp& rmp, int order) const {
    int active = 0;
    for (const auto& c : rmp.active_cuts()) active += c.order == order;
    return std::max(0, cap_ - active);
}

std::vector<int> CutPool::pool_check(const Rmp& rmp, double min_violation) const {
    std::vector<char> active(cuts_.size(), 0);
    for (int id : rmp.active_cut_ids())
        if (id >= 0 && id < size()) active[id] = 1;
    struct Cand {
        double v;
        int id;
    };
    std::vector<Cand> cand;
    for (int id = 0; id < size(); ++id) {
        if (active[id] || rmp.context().placed[cuts_[id].sku] >= 0) continue;
        double v = cut_violation(rmp, cuts_[id]);
        if (v > min_violation) cand.push_back({v, id});
    }
    std::sort(cand.begin(), cand.end(), [&](const Cand& a, const Cand& b) {
        if (a.v != b.v) return a.v > b.v;
        if (cuts_[a.id].locations.size() != cuts_[b.id].locations.size())
            return cuts_[a.id].locations.size() < cuts_[b.id].locations.size();
        return a.id < b.id;
    });
    std::vector<int> left(rmp.instance().num_orders());
    for (int o = 0; o < static_cast<int>(left.size()); ++o) left[o] = room(rmp, o);
    std::vector<int> out;
    for (const auto& c : cand) {
        int o = cuts_[c.id].order;
        if (left[o] <= 0) continue;
        --left[o];
        out.push_back(c.id);
    }
    return out;
}

std::vector<int> CutPool::deactivate_nonbinding(Rmp& rmp, double tol) const {
    std::vector<int> pos, ids;
    for (int i = 0; i < static_cast<int>(rmp.active_cuts().size()); ++i)
        if (rmp.cut_slack(i) > tol) {
            pos.push_back(i);
            ids.push_back(rmp.active_cut_ids()[i]);
        }
    rmp.remove_cuts(pos);
    return ids;
}

}  // namespace slaprp
