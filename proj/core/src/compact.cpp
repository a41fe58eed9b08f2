#include "slaprp/compact.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace slaprp {

const char* to_string(VarKind k) {
    switch (k) {
        case VarKind::binary: return "binary";
        case VarKind::integer: return "integer";
        case VarKind::continuous: return "continuous";
    }
    return "?";
}

namespace {

SparseVec merged(SparseVec t) {
    std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto [j, c] : t) {
        if (!out.empty() && out.back().first == j)
            out.back().second += c;
        else
            out.push_back({j, c});
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0.0; });
    return out;
}

std::string var_name(const std::string& symbol, const std::vector<int>& idx) {
    std::string n = symbol;
    for (int i : idx) n += "_" + std::to_string(i);
    return n;
}

}  // namespace

int MipModel::add_var(const std::string& symbol, std::vector<int> idx, VarKind kind, double lb, double ub) {
    MipVar v;
    v.name = var_name(symbol, idx);
    v.kind = kind;
    v.lb = kind == VarKind::binary ? 0.0 : lb;
    v.ub = kind == VarKind::binary ? 1.0 : ub;
    v.symbol = symbol;
    v.indices = std::move(idx);
    vars.push_back(std::move(v));
    return static_cast<int>(vars.size()) - 1;
}

int MipModel::add_row(const std::string& n, SparseVec terms, double lb, double ub) {
    rows.push_back({n, merged(std::move(terms)), lb, ub});
    return static_cast<int>(rows.size()) - 1;
}

void MipModel::add_indicator(const std::string& n, int guard, int value, SparseVec terms, double lb, double ub) {
    indicators.push_back({n, guard, value, {n, merged(std::move(terms)), lb, ub}});
}

int MipModel::find(const std::string& var_name) const {
    for (int j = 0; j < static_cast<int>(vars.size()); ++j)
        if (vars[j].name == var_name) return j;
    return -1;
}

void MipModel::check() const {
    int n = static_cast<int>(vars.size());
    auto refs = [&](const SparseVec& t, const std::string& where) {
        for (auto [j, c] : t)
            if (j < 0 || j >= n) throw Error("model " + name + ": " + where + " references undeclared variable");
    };
    for (const auto& v : vars)
        if (v.kind == VarKind::binary && (v.lb != 0.0 || v.ub != 1.0))
            throw Error("model " + name + ": binary " + v.name + " without [0,1] bounds");
    for (const auto& r : rows) refs(r.terms, "row " + r.name);
    for (const auto& ind : indicators) {
        refs(ind.row.terms, "indicator " + ind.name);
        if (ind.guard < 0 || ind.guard >= n || vars[ind.guard].kind != VarKind::binary)
            throw Error("model " + name + ": indicator " + ind.name + " needs a binary guard");
    }
    refs(objective, "objective");
}

// ---------------------------------------------------------------------------
// Formulation (C) and its multi-commodity flow variant.

namespace {

long long walk(const Layout& lay, int l1, int l2) {
    return lay.kind == LayoutKind::two_block_mid_depot ? two_block_distance(lay, l1, l2) : base_distance(lay, l1, l2);
}

struct RoutingPart {
    std::vector<int> xi;                   // s * L + l
    std::vector<std::vector<int>> x;       // per order, per graph arc
};

RoutingPart emit_common(const Instance& inst, const WarehouseGraph& g, MipModel& m) {
    const Layout& lay = inst.layout;
    int L = lay.num_locations(), S = inst.num_skus;
    RoutingPart p;
    p.xi.resize(static_cast<std::size_t>(S) * L);
    for (int s = 0; s < S; ++s)
        for (int l = 0; l < L; ++l) p.xi[s * L + l] = m.add_var("xi", {l, s}, VarKind::binary, 0, 1);
    for (int l = 0; l < L; ++l) {
        SparseVec t;
        for (int s = 0; s < S; ++s) t.push_back({p.xi[s * L + l], 1.0});
        m.add_row("cap_" + std::to_string(l), t, -kInf, lay.capacity_of(l));
    }
    for (int s = 0; s < S; ++s) {
        SparseVec t;
        for (int l = 0; l < L; ++l) t.push_back({p.xi[s * L + l], 1.0});
        m.add_row("assign_" + std::to_string(s), t, 1, 1);
    }
    for (auto [s, l] : inst.fixed)
        m.add_row("fixed_" + std::to_string(s) + "_" + std::to_string(l), {{p.xi[s * L + l], 1.0}}, 1, 1);

    int n = g.num_nodes();
    for (int o = 0; o < inst.num_orders(); ++o) {
        auto os = std::to_string(o);
        int len = static_cast<int>(inst.orders[o].size());
        std::vector<int> xo;
        for (const Arc& a : g.arcs) {
            int j = m.add_var("x", {o, a.from, a.to}, VarKind::binary, 0, 1);
            xo.push_back(j);
            int la = g.node_location[a.from], lb = g.node_location[a.to];
            long long dist = la == lb ? 0 : walk(lay, la, lb);  // depot is location -1 == kDepot
            if (dist != 0) m.add_cost(j, static_cast<double>(dist));
        }
        SparseVec out0, in0;
        for (int e : g.out[0]) out0.push_back({xo[e], 1.0});
        for (int e : g.in[0]) in0.push_back({xo[e], 1.0});
        m.add_row("depot_in_" + os, in0, 1, 1);
        m.add_row("depot_out_" + os, out0, 1, 1);
        for (int i = 1; i < n; ++i) {
            SparseVec t;
            for (int e : g.out[i]) t.push_back({xo[e], 1.0});
            for (int e : g.in[i]) t.push_back({xo[e], -1.0});
            m.add_row("flow_" + os + "_" + std::to_string(i), t, 0, 0);
        }
        SparseVec stops;
        for (int i = 1; i < n; ++i)
            for (int e : g.in[i]) stops.push_back({xo[e], 1.0});
        m.add_row("visits_" + os, stops, len, len);
        for (int l = 0; l < L; ++l) {
            SparseVec t;
            for (int k = 1; k <= g.locations[l].capacity; ++k)
                for (int e : g.in[g.node(l, k)]) t.push_back({xo[e], 1.0});
            for (int s : inst.orders[o]) t.push_back({p.xi[s * L + l], -1.0});
            m.add_row("link_" + os + "_" + std::to_string(l), t, 0, kInf);
        }
        p.x.push_back(std::move(xo));
    }
    return p;
}

}  // namespace

MipModel emit_compact_mtz(const Instance& inst) {
    MipModel m;
    m.name = inst.name.empty() ? "mtz" : inst.name + "_mtz";
    WarehouseGraph g = build_graph(inst.layout);
    RoutingPart p = emit_common(inst, g, m);
    int n = g.num_nodes();
    for (int o = 0; o < inst.num_orders(); ++o) {
        int len = static_cast<int>(inst.orders[o].size());
        std::vector<int> u(n, -1);
        for (int i = 1; i < n; ++i) u[i] = m.add_var("u", {o, i}, VarKind::continuous, 0, std::max(0, len - 1));
        std::map<std::pair<int, int>, int> arc;
        for (int e = 0; e < static_cast<int>(g.arcs.size()); ++e) arc[{g.arcs[e].from, g.arcs[e].to}] = p.x[o][e];
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j) {
                if (i == j) continue;
                // u_j - u_i - |S(o)| x_ij >= 1 - |S(o)|; x_ij is zero when (i, j) is not an arc
                SparseVec t{{u[j], 1.0}, {u[i], -1.0}};
                auto it = arc.find({i, j});
                if (it != arc.end()) t.push_back({it->second, -static_cast<double>(len)});
                m.add_row("mtz_" + std::to_string(o) + "_" + std::to_string(i) + "_" + std::to_string(j), t, 1.0 - len,
                          kInf);
            }
    }
    return m;
}

MipModel emit_compact_mcf(const Instance& inst) {
    MipModel m;
    m.name = inst.name.empty() ? "mcf" : inst.name + "_mcf";
    WarehouseGraph g = build_graph(inst.layout);
    RoutingPart p = emit_common(inst, g, m);
    int L = inst.layout.num_locations();
    for (int o = 0; o < inst.num_orders(); ++o) {
        for (int s : inst.orders[o]) {
            auto tag = std::to_string(o) + "_" + std::to_string(s);
            std::vector<int> gv;
            for (int e = 0; e < static_cast<int>(g.arcs.size()); ++e) {
                const Arc& a = g.arcs[e];
                int j = m.add_var("g", {o, s, a.from, a.to}, VarKind::continuous, 0, 1);
                gv.push_back(j);
                m.add_row("gx_" + tag + "_" + std::to_string(a.from) + "_" + std::to_string(a.to),
                          {{j, 1.0}, {p.x[o][e], -1.0}}, -kInf, 0);
            }
            for (int l = 0; l < L; ++l) {
                SparseVec t;
                for (int k = 1; k <= g.locations[l].capacity; ++k) {
                    int v = g.node(l, k);
                    for (int e : g.in[v]) t.push_back({gv[e], 1.0});
                    for (int e : g.out[v]) t.push_back({gv[e], -1.0});
                }
                t.push_back({p.xi[s * L + l], -1.0});
                m.add_row("commodity_" + tag + "_" + std::to_string(l), t, 0, 0);
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Policy formulations for a single-block layout. Aisles and bays are 1-based.

namespace {

class PolicyEmitter {
public:
    PolicyEmitter(const Instance& inst, MipModel& m) : inst_(inst), lay_(inst.layout), m_(m) {
        A = lay_.aisles;
        B = lay_.bays;
        O = inst.num_orders();
        int S = inst.num_skus;
        xi_.assign(static_cast<std::size_t>(S) * (A + 1) * (B + 1), -1);
        for (int s = 0; s < S; ++s)
            for (int a = 1; a <= A; ++a)
                for (int b = 1; b <= B; ++b) xi_[idx(s, a, b)] = m_.add_var("xi", {a, b, s}, VarKind::binary, 0, 1);
        for (int a = 1; a <= A; ++a)
            for (int b = 1; b <= B; ++b) {
                SparseVec t;
                for (int s = 0; s < S; ++s) t.push_back({xi(s, a, b), 1.0});
                m_.add_row(nm("cap", {a, b}), t, -kInf, lay_.capacity_of(location_id(lay_, a, b)));
            }
        for (int s = 0; s < S; ++s) {
            SparseVec t;
            for (int a = 1; a <= A; ++a)
                for (int b = 1; b <= B; ++b) t.push_back({xi(s, a, b), 1.0});
            m_.add_row(nm("assign", {s}), t, 1, 1);
        }
        for (auto [s, l] : inst.fixed)
            m_.add_row(nm("fixed", {s, l}), {{xi(s, aisle_of(lay_, l), bay_of(lay_, l)), 1.0}}, 1, 1);
    }

    int xi(int s, int a, int b) const { return xi_[idx(s, a, b)]; }

    static std::string nm(const std::string& base, std::initializer_list<int> idx) {
        return var_name(base, std::vector<int>(idx));
    }

    // per-order (o, a) arrays
    std::vector<std::vector<int>> per_oa(const std::string& sym, VarKind k, double lb, double ub) {
        std::vector<std::vector<int>> v(O, std::vector<int>(A + 1, -1));
        for (int o = 0; o < O; ++o)
            for (int a = 1; a <= A; ++a) v[o][a] = m_.add_var(sym, {o, a}, k, lb, ub);
        return v;
    }
    std::vector<int> per_o(const std::string& sym, VarKind k, double lb, double ub) {
        std::vector<int> v(O);
        for (int o = 0; o < O; ++o) v[o] = m_.add_var(sym, {o}, k, lb, ub);
        return v;
    }

    // f >= sum_b w(b) xi for every SKU of the order, restricted to bays in [b0, b1]
    template <class W>
    void farthest(const std::string& tag, const std::vector<std::vector<int>>& f, int b0, int b1, W weight) {
        for (int o = 0; o < O; ++o)
            for (int a = 1; a <= A; ++a)
                for (int s : inst_.orders[o]) {
                    SparseVec t{{f[o][a], 1.0}};
                    for (int b = b0; b <= b1; ++b) t.push_back({xi(s, a, b), -static_cast<double>(weight(b))});
                    m_.add_row(nm(tag, {o, a, s}), t, 0, kInf);
                }
    }

    // rows (01)-(04) and the variables f, z
    void base_rows() {
        f = per_oa("f", VarKind::continuous, 0, B);
        z = per_oa("z", VarKind::binary, 0, 1);
        farthest("far", f, 1, B, [](int b) { return b; });
        for (int o = 0; o < O; ++o)
            for (int a = 1; a <= A; ++a) m_.add_row(nm("visit", {o, a}), {{f[o][a], 1.0}, {z[o][a], -double(B)}}, -kInf, 0);
    }

    // v_o = farthest aisle with z -> v_o >= a, v_o = sum a v_oa, sum v_oa = 1
    void last_aisle(bool with_binary) {
        vo = per_o("v", VarKind::continuous, 1, A);
        for (int o = 0; o < O; ++o)
            for (int a = 1; a <= A; ++a) m_.add_indicator(nm("last", {o, a}), z[o][a], 1, {{vo[o], 1.0}}, a, kInf);
        if (!with_binary) return;
        voa = per_oa("v", VarKind::binary, 0, 1);
        for (int o = 0; o < O; ++o) {
            SparseVec t{{vo[o], 1.0}}, one;
            for (int a = 1; a <= A; ++a) {
                t.push_back({voa[o][a], -double(a)});
                one.push_back({voa[o][a], 1.0});
            }
            m_.add_row(nm("lastpos", {o}), t, 0, 0);
            m_.add_row(nm("lastone", {o}), one, 1, 1);
        }
    }

    // first aisle u_o, u_oa, alpha, the in-between flag w and the multi-aisle flag s (midpoint and largest gap)
    void first_aisle_block(bool guarded_s) {
        // u_o equals sum a u_oa, so it is kept in [1, A] rather than typed binary
        uo = per_o("u", VarKind::continuous, 1, A);
        uoa = per_oa("u", VarKind::binary, 0, 1);
        alpha = per_oa("alpha", VarKind::binary, 0, 1);
        w = per_oa("w", VarKind::binary, 0, 1);
        so = per_o("s", VarKind::binary, 0, 1);
        for (int o = 0; o < O; ++o) {
            for (int a = 1; a <= A; ++a) {
                m_.add_indicator(nm("first", {o, a}), z[o][a], 1, {{uo[o], 1.0}}, -kInf, a);
                SparseVec t{{alpha[o][a], 1.0}};
                for (int c = 1; c < a; ++c) t.push_back({z[o][c], -1.0});
                m_.add_row(nm("alpha", {o, a}), t, -kInf, 0);
                m_.add_indicator(nm("nofirst", {o, a}), alpha[o][a], 0, {{uo[o], 1.0}}, a, kInf);
            }
            SparseVec t{{uo[o], 1.0}}, one;
            for (int a = 1; a <= A; ++a) {
                t.push_back({uoa[o][a], -double(a)});
                one.push_back({uoa[o][a], 1.0});
            }
            m_.add_row(nm("firstpos", {o}), t, 0, 0);
            m_.add_row(nm("firstone", {o}), one, 1, 1);
            for (int a = 1; a <= A; ++a) {
                SparseVec before, after;
                for (int c = 1; c < a; ++c) before.push_back({uoa[o][c], 1.0});
                for (int c = a + 1; c <= A; ++c) after.push_back({voa[o][c], 1.0});
                SparseVec t1 = before, t2 = after, t3 = before;
                t1.push_back({w[o][a], -1.0});
                t2.push_back({w[o][a], -1.0});
                t3.insert(t3.end(), after.begin(), after.end());
                t3.push_back({w[o][a], -1.0});
                m_.add_row(nm("wbefore", {o, a}), t1, 0, kInf);
                m_.add_row(nm("wafter", {o, a}), t2, 0, kInf);
                m_.add_row(nm("wboth", {o, a}), t3, -kInf, 1);
            }
            m_.add_row(nm("multi", {o}), {{so[o], 1.0}, {vo[o], -1.0}, {uo[o], 1.0}}, -kInf, 0);
            for (int a = 1; a <= A; ++a) {
                SparseVec t{{so[o], 1.0}, {uoa[o][a], 1.0}};
                if (guarded_s)
                    m_.add_indicator(nm("single", {o, a}), voa[o][a], 1, t, 1, kInf);
                else
                    m_.add_row(nm("single", {o, a}), t, 1, kInf);
            }
        }
    }

    // y = f v_oa (1 - s): return walk in the only visited aisle
    void single_aisle_return(const std::string& sym) {
        auto y = per_oa(sym, VarKind::continuous, 0, kInf);
        for (int o = 0; o < O; ++o)
            for (int a = 1; a <= A; ++a) {
                int yv = y[o][a];
                m_.add_row(nm(sym + "_s", {o, a}), {{yv, 1.0}, {so[o], double(B)}}, -kInf, B);
                m_.add_row(nm(sym + "_f", {o, a}), {{yv, 1.0}, {f[o][a], -1.0}}, -kInf, 0);
                m_.add_row(nm(sym + "_v", {o, a}), {{yv, 1.0}, {voa[o][a], -double(B)}}, -kInf, 0);
                // y >= f - B (2 - (1 - s) - v_oa)
                m_.add_row(nm(sym + "_lo", {o, a}),
                           {{yv, 1.0}, {f[o][a], -1.0}, {so[o], double(B)}, {voa[o][a], -double(B)}}, -double(B),
                           kInf);
                m_.add_cost(yv, 2.0 * lay_.d);
            }
    }

    void horizontal() {
        for (int o = 0; o < O; ++o) {
            m_.add_cost(vo[o], 2.0 * lay_.D);
            m_.obj_offset -= 2.0 * lay_.D;
        }
    }

    const Instance& inst_;
    const Layout& lay_;
    MipModel& m_;
    int A = 0, B = 0, O = 0;
    std::vector<std::vector<int>> f, z, voa, uoa, alpha, w;
    std::vector<int> vo, uo, so;

private:
    std::size_t idx(int s, int a, int b) const { return (static_cast<std::size_t>(s) * (A + 1) + a) * (B + 1) + b; }
    std::vector<int> xi_;
};

void emit_return(PolicyEmitter& e, MipModel& m) {
    e.base_rows();
    e.last_aisle(false);
    e.horizontal();
    for (int o = 0; o < e.O; ++o)
        for (int a = 1; a <= e.A; ++a) m.add_cost(e.f[o][a], 2.0 * e.lay_.d);
}

void emit_sshape(PolicyEmitter& e, MipModel& m) {
    int A = e.A, B = e.B, O = e.O;
    double D = e.lay_.D, d = e.lay_.d;
    e.base_rows();
    e.voa = e.per_oa("v", VarKind::binary, 0, 1);
    e.so = e.per_o("s", VarKind::binary, 0, 1);
    auto k = e.per_o("k", VarKind::integer, 0, A / 2);
    auto al = e.per_oa("alpha", VarKind::continuous, 0, kInf);
    for (int o = 0; o < O; ++o) {
        for (int a = 1; a <= A; ++a) {
            m.add_indicator(PolicyEmitter::nm("unvisited", {o, a}), e.z[o][a], 0, {{e.voa[o][a], 1.0}}, -kInf, 0);
            if (a > 1) {
                SparseVec t;
                for (int c = 1; c < a; ++c) t.push_back({e.voa[o][c], 1.0});
                m.add_indicator(PolicyEmitter::nm("notlast", {o, a}), e.z[o][a], 1, t, -kInf, 0);
            }
        }
        SparseVec one, parity{{k[o], -2.0}, {e.so[o], -1.0}};
        for (int a = 1; a <= A; ++a) {
            one.push_back({e.voa[o][a], 1.0});
            parity.push_back({e.z[o][a], 1.0});
        }
        m.add_row(PolicyEmitter::nm("lastone", {o}), one, 1, 1);
        m.add_row(PolicyEmitter::nm("parity", {o}), parity, 0, 0);
        for (int a = 1; a <= A; ++a) {
            int x = al[o][a];
            m.add_row(PolicyEmitter::nm("alpha_s", {o, a}), {{x, 1.0}, {e.so[o], -double(B)}}, -kInf, 0);
            m.add_row(PolicyEmitter::nm("alpha_f", {o, a}), {{x, 1.0}, {e.f[o][a], -1.0}}, -kInf, 0);
            m.add_row(PolicyEmitter::nm("alpha_v", {o, a}), {{x, 1.0}, {e.voa[o][a], -double(B)}}, -kInf, 0);
            m.add_row(PolicyEmitter::nm("alpha_lo", {o, a}),
                      {{x, 1.0}, {e.f[o][a], -1.0}, {e.so[o], -double(B)}, {e.voa[o][a], -double(B)}}, -2.0 * B, kInf);
            m.add_cost(e.voa[o][a], 2.0 * D * (a - 1));
            m.add_cost(e.z[o][a], d * (B + 1));
            m.add_cost(x, 2.0 * d);
        }
        // literal form keeps the uncorrected gap term
        m.add_cost(e.so[o], -2.0 * d * (B + 1));
    }
}

void emit_midpoint(PolicyEmitter& e, MipModel& m) {
    int A = e.A, B = e.B, O = e.O;
    int mp = midpoint_bay(e.lay_);
    double d = e.lay_.d;
    e.base_rows();
    e.last_aisle(true);
    e.first_aisle_block(true);
    auto fm = e.per_oa("fminus", VarKind::continuous, 0, mp);
    auto fp = e.per_oa("fplus", VarKind::continuous, 0, B - mp);
    e.farthest("below", fm, 1, mp, [](int b) { return b; });
    e.farthest("above", fp, mp + 1, B, [B](int b) { return B + 1 - b; });
    auto beta = e.per_oa("beta", VarKind::continuous, 0, kInf);
    double M = B + 1;
    for (int o = 0; o < O; ++o) {
        for (int a = 1; a <= A; ++a) {
            int x = beta[o][a];
            m.add_row(PolicyEmitter::nm("beta_s", {o, a}), {{x, 1.0}, {e.so[o], -M}}, -kInf, 0);
            m.add_row(PolicyEmitter::nm("beta_f", {o, a}), {{x, 1.0}, {fm[o][a], -1.0}, {fp[o][a], -1.0}}, -kInf, 0);
            m.add_row(PolicyEmitter::nm("beta_w", {o, a}), {{x, 1.0}, {e.w[o][a], -M}}, -kInf, 0);
            m.add_row(PolicyEmitter::nm("beta_lo", {o, a}),
                      {{x, 1.0}, {fm[o][a], -1.0}, {fp[o][a], -1.0}, {e.so[o], -M}, {e.w[o][a], -M}}, -2.0 * M, kInf);
            m.add_cost(x, 2.0 * d);
        }
        m.add_cost(e.so[o], 2.0 * d * M);
    }
    e.single_aisle_return("gamma");
    e.horizontal();
}

void emit_largest_gap(PolicyEmitter& e, MipModel& m, bool literal) {
    int A = e.A, B = e.B, O = e.O;
    double d = e.lay_.d, M = B + 1;
    e.base_rows();
    e.last_aisle(true);
    e.first_aisle_block(!literal);
    using PE = PolicyEmitter;
    for (int o = 0; o < O; ++o) {
        const auto& skus = e.inst_.orders[o];
        for (int a = 1; a <= A; ++a) {
            std::vector<int> g(B + 1), h(B + 1), beta(B + 1, -1);
            for (int b = 0; b <= B; ++b) g[b] = m.add_var("g", {o, a, b}, VarKind::continuous, 0, B + 1 - b);
            for (int b = 0; b <= B; ++b) h[b] = m.add_var("h", {o, a, b}, VarKind::binary, 0, 1);
            for (int b = 1; b <= B; ++b) beta[b] = m.add_var("beta", {o, a, b}, VarKind::binary, 0, 1);
            int G = m.add_var("G", {o, a}, VarKind::continuous, 0, M);
            m.add_indicator(PE::nm("gapempty", {o, a}), e.z[o][a], 0, {{g[0], 1.0}}, M, M);
            for (int s : skus)
                for (int b = 1; b <= B; ++b)
                    m.add_indicator(PE::nm("gapfront", {o, a, s, b}), e.xi(s, a, b), 1, {{g[0], 1.0}}, -kInf, b);
            for (int b = 1; b <= B; ++b) {
                SparseVec t{{beta[b], 1.0}};
                for (int s : skus) t.push_back({e.xi(s, a, b), -1.0});
                m.add_row(PE::nm("pick", {o, a, b}), t, -kInf, 0);
                m.add_indicator(PE::nm("nogap", {o, a, b}), beta[b], 0, {{g[b], 1.0}}, 0, 0);
                for (int b2 = b + 1; b2 <= B; ++b2)
                    for (int s : skus)
                        m.add_indicator(PE::nm("gapnext", {o, a, b, b2, s}), e.xi(s, a, b2), 1, {{g[b], 1.0}}, -kInf,
                                        b2 - b);
                m.add_row(PE::nm("gapback", {o, a, b}), {{g[b], 1.0}}, -kInf, B + 1 - b);
            }
            SparseVec one;
            for (int b = 0; b <= B; ++b) {
                m.add_row(PE::nm("gapmax", {o, a, b}), {{G, 1.0}, {g[b], -1.0}}, 0, kInf);
                m.add_row(PE::nm("gapsel", {o, a, b}), {{G, 1.0}, {g[b], -1.0}, {h[b], M}}, -kInf, M);
                one.push_back({h[b], 1.0});
            }
            m.add_row(PE::nm("gapone", {o, a}), one, 1, 1);

            int x = m.add_var("gamma", {o, a}, VarKind::continuous, 0, kInf);
            if (literal)
                m.add_row(PE::nm("gamma_s", {o, a}), {{x, 1.0}, {e.so[o], double(B)}}, -kInf, B);
            else
                m.add_row(PE::nm("gamma_s", {o, a}), {{x, 1.0}, {e.so[o], -M}}, -kInf, 0);
            m.add_row(PE::nm("gamma_g", {o, a}), {{x, 1.0}, {G, 1.0}}, -kInf, M);
            m.add_row(PE::nm("gamma_w", {o, a}), {{x, 1.0}, {e.w[o][a], -M}}, -kInf, 0);
            m.add_row(PE::nm("gamma_lo", {o, a}), {{x, 1.0}, {G, 1.0}, {e.so[o], -M}, {e.w[o][a], -M}}, -M, kInf);
            m.add_cost(x, 2.0 * d);
        }
        m.add_cost(e.so[o], 2.0 * d * M);
    }
    e.single_aisle_return("delta");
    e.horizontal();
}

}  // namespace

MipModel emit_policy_mip(const Instance& inst, Policy policy, const PolicyMipOptions& opt) {
    if (inst.layout.kind != LayoutKind::single_block)
        throw Error("unsupported layout: policy formulations need a single-block layout");
    MipModel m;
    m.name = (inst.name.empty() ? std::string("slaprp") : inst.name) + "_" + to_string(policy);
    PolicyEmitter e(inst, m);
    switch (policy) {
        case Policy::return_policy: emit_return(e, m); break;
        case Policy::sshape: emit_sshape(e, m); break;
        case Policy::midpoint: emit_midpoint(e, m); break;
        case Policy::largest_gap: emit_largest_gap(e, m, opt.literal); break;
        default: throw Error(std::string("unsupported combination: no policy formulation for ") + to_string(policy));
    }
    return m;
}

// ---------------------------------------------------------------------------

MipModel rewrite_big_m(const MipModel& in) {
    MipModel m = in;
    m.indicators.clear();
    for (const auto& ind : in.indicators) {
        double lo = 0.0, hi = 0.0;
        for (auto [j, c] : ind.row.terms) {
            const MipVar& v = in.vars[j];
            lo += c > 0 ? c * v.lb : c * v.ub;
            hi += c > 0 ? c * v.ub : c * v.lb;
        }
        bool both = std::isfinite(ind.row.lb) && std::isfinite(ind.row.ub);
        auto emit = [&](bool ge) {
            double rhs = ge ? ind.row.lb : ind.row.ub;
            double M = ge ? rhs - lo : hi - rhs;
            if (!std::isfinite(M))
                throw Error("indicator " + ind.name + ": cannot derive big-M from unbounded variables");
            if (M <= 1e-12) return;  // the row holds for every value within the bounds
            // slack t is 1 when the guard is off: t = 1 - y (value 1) or t = y (value 0)
            SparseVec t = ind.row.terms;
            double sign = ge ? 1.0 : -1.0;
            double coef = ind.value == 1 ? -sign * M : sign * M;
            double shift = ind.value == 1 ? sign * M : 0.0;
            t.push_back({ind.guard, coef});
            std::string n = both ? ind.name + (ge ? "_ge" : "_le") : ind.name;
            if (ge)
                m.add_row(n, t, rhs - shift, kInf);
            else
                m.add_row(n, t, -kInf, rhs - shift);
        };
        if (std::isfinite(ind.row.lb)) emit(true);
        if (std::isfinite(ind.row.ub)) emit(false);
    }
    return m;
}

MipProblem to_mip_problem(const MipModel& model) {
    MipModel m = model.indicators.empty() ? model : rewrite_big_m(model);
    MipProblem p;
    for (const auto& v : m.vars) p.add_var(0.0, v.lb, v.ub, v.kind != VarKind::continuous);
    for (auto [j, c] : m.objective) p.cost[j] += c;
    for (const auto& r : m.rows) p.add_row(r.terms, r.lb, r.ub);
    p.obj_offset = m.obj_offset;
    return p;
}

double lp_relaxation_value(const MipModel& model, const std::string& solver) {
    MipProblem p = to_mip_problem(model);
    auto lp = make_lp_solver(solver);
    for (std::size_t j = 0; j < p.cost.size(); ++j) lp->add_col(p.cost[j], p.lb[j], p.ub[j], {});
    for (std::size_t i = 0; i < p.rows.size(); ++i) lp->add_row(p.row_lb[i], p.row_ub[i], p.rows[i]);
    LpStatus st = lp->solve();
    if (st != LpStatus::optimal) throw Error("LP relaxation of " + model.name + ": " + to_string(st));
    return lp->objective_value() + p.obj_offset;
}

MipResult solve_model(const MipModel& m, const MipOptions& opt) { return solve_mip(to_mip_problem(m), opt); }

// ---------------------------------------------------------------------------
// Writers

ModelFormat model_format_from_string(const std::string& s) {
    if (s == "lp") return ModelFormat::lp;
    if (s == "mps") return ModelFormat::mps;
    throw Error("unknown model format: " + s);
}

namespace {

std::string num(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_terms(std::ostream& os, const MipModel& m, const SparseVec& t) {
    int k = 0;
    for (auto [j, c] : t) {
        if (k > 0 && k % 8 == 0) os << "\n  ";
        os << (c < 0 ? " - " : " + ") << num(std::fabs(c)) << ' ' << m.vars[j].name;
        ++k;
    }
}

void write_lp_text(const MipModel& m, std::ostream& os) {
    os << "\\ " << m.name << "\nMinimize\n obj:";
    SparseVec obj = merged(m.objective);
    write_terms(os, m, obj);
    if (obj.empty())
        os << ' ' << num(m.obj_offset);
    else if (m.obj_offset != 0.0)
        os << (m.obj_offset < 0 ? " - " : " + ") << num(std::fabs(m.obj_offset));
    os << "\nSubject To\n";
    auto row = [&](const std::string& n, const SparseVec& t, double lb, double ub) {
        if (t.empty()) return;
        auto line = [&](const std::string& name, const char* sense, double rhs) {
            os << ' ' << name << ':';
            write_terms(os, m, t);
            os << ' ' << sense << ' ' << num(rhs) << '\n';
        };
        if (lb == ub)
            line(n, "=", lb);
        else if (std::isfinite(lb) && std::isfinite(ub)) {
            line(n + "_lo", ">=", lb);
            line(n + "_hi", "<=", ub);
        } else if (std::isfinite(lb))
            line(n, ">=", lb);
        else if (std::isfinite(ub))
            line(n, "<=", ub);
    };
    for (const auto& r : m.rows) row(r.name, r.terms, r.lb, r.ub);
    for (const auto& ind : m.indicators) {
        const auto& r = ind.row;
        auto line = [&](const std::string& name, const char* sense, double rhs) {
            os << ' ' << name << ": " << m.vars[ind.guard].name << " = " << ind.value << " ->";
            write_terms(os, m, r.terms);
            os << ' ' << sense << ' ' << num(rhs) << '\n';
        };
        if (r.lb == r.ub)
            line(ind.name, "=", r.lb);
        else {
            bool both = std::isfinite(r.lb) && std::isfinite(r.ub);
            if (std::isfinite(r.lb)) line(both ? ind.name + "_ge" : ind.name, ">=", r.lb);
            if (std::isfinite(r.ub)) line(both ? ind.name + "_le" : ind.name, "<=", r.ub);
        }
    }
    os << "Bounds\n";
    for (const auto& v : m.vars) {
        if (v.kind == VarKind::binary) continue;
        if (v.lb == 0.0 && v.ub == kInf) continue;
        if (v.lb == -kInf && v.ub == kInf)
            os << ' ' << v.name << " free\n";
        else if (v.lb == v.ub)
            os << ' ' << v.name << " = " << num(v.lb) << '\n';
        else
            os << ' ' << num(v.lb) << " <= " << v.name << " <= " << num(v.ub) << '\n';
    }
    auto section = [&](const char* title, VarKind k) {
        bool any = false;
        for (const auto& v : m.vars)
            if (v.kind == k) {
                if (!any) os << title << '\n';
                any = true;
                os << ' ' << v.name << '\n';
            }
    };
    section("General", VarKind::integer);
    section("Binary", VarKind::binary);
    os << "End\n";
}

void write_mps_text(const MipModel& model, std::ostream& os) {
    MipModel m = model.indicators.empty() ? model : rewrite_big_m(model);
    os << "NAME " << m.name << "\nROWS\n N obj\n";
    std::vector<int> kept;
    for (int i = 0; i < static_cast<int>(m.rows.size()); ++i) {
        const auto& r = m.rows[i];
        bool lo = std::isfinite(r.lb), hi = std::isfinite(r.ub);
        if (!lo && !hi) continue;
        kept.push_back(i);
        os << ' ' << (r.lb == r.ub ? 'E' : lo ? 'G' : 'L') << ' ' << r.name << '\n';
    }
    // column-major entries
    std::vector<std::vector<std::pair<int, double>>> col(m.vars.size());
    for (auto [j, c] : merged(m.objective)) col[j].push_back({-1, c});
    for (int i : kept)
        for (auto [j, c] : m.rows[i].terms) col[j].push_back({i, c});
    os << "COLUMNS\n";
    bool in_int = false;
    for (std::size_t j = 0; j < m.vars.size(); ++j) {
        bool is_int = m.vars[j].kind != VarKind::continuous;
        if (is_int != in_int) {
            os << " MARKER 'MARKER' " << (is_int ? "'INTORG'" : "'INTEND'") << '\n';
            in_int = is_int;
        }
        if (col[j].empty()) os << ' ' << m.vars[j].name << " obj 0\n";
        for (auto [i, c] : col[j]) os << ' ' << m.vars[j].name << ' ' << (i < 0 ? "obj" : m.rows[i].name) << ' ' << num(c) << '\n';
    }
    if (in_int) os << " MARKER 'MARKER' 'INTEND'\n";
    os << "RHS\n";
    if (m.obj_offset != 0.0) os << " RHS obj " << num(-m.obj_offset) << '\n';
    for (int i : kept) {
        const auto& r = m.rows[i];
        double rhs = std::isfinite(r.lb) ? r.lb : r.ub;
        if (rhs != 0.0) os << " RHS " << r.name << ' ' << num(rhs) << '\n';
    }
    bool ranges = false;
    for (int i : kept) {
        const auto& r = m.rows[i];
        if (std::isfinite(r.lb) && std::isfinite(r.ub) && r.lb != r.ub) {
            if (!ranges) os << "RANGES\n";
            ranges = true;
            os << " RNG " << r.name << ' ' << num(r.ub - r.lb) << '\n';
        }
    }
    os << "BOUNDS\n";
    for (const auto& v : m.vars) {
        if (v.kind == VarKind::binary) {
            os << " BV BND " << v.name << '\n';
            continue;
        }
        if (v.lb == v.ub) {
            os << " FX BND " << v.name << ' ' << num(v.lb) << '\n';
            continue;
        }
        if (v.lb == -kInf && v.ub == kInf) {
            os << " FR BND " << v.name << '\n';
            continue;
        }
        if (v.lb == -kInf)
            os << " MI BND " << v.name << '\n';
        else if (v.lb != 0.0)
            os << " LO BND " << v.name << ' ' << num(v.lb) << '\n';
        if (v.ub != kInf)
            os << " UP BND " << v.name << ' ' << num(v.ub) << '\n';
        else if (v.kind == VarKind::integer)
            os << " PL BND " << v.name << '\n';
    }
    os << "ENDATA\n";
}

double parse_num(const std::string& s) {
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw Error("MPS: bad number '" + s + "'");
    return v;
}

}  // namespace

void write_model(const MipModel& m, std::ostream& os, ModelFormat fmt, bool big_m) {
    m.check();
    if (fmt == ModelFormat::mps)
        write_mps_text(m, os);
    else if (big_m && !m.indicators.empty())
        write_lp_text(rewrite_big_m(m), os);
    else
        write_lp_text(m, os);
}

void write_model(const MipModel& m, const std::string& path, ModelFormat fmt, bool big_m) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path + " for writing");
    write_model(m, os, fmt, big_m);
    if (!os) throw Error("write failed: " + path);
}

MipModel read_mps(std::istream& is) {
    MipModel m;
    std::unordered_map<std::string, int> row_of, var_of;
    std::vector<char> row_type;
    std::string section, line;
    bool in_int = false;
    auto var = [&](const std::string& n) {
        auto it = var_of.find(n);
        if (it != var_of.end()) return it->second;
        MipVar v;
        v.name = n;
        v.kind = in_int ? VarKind::integer : VarKind::continuous;
        m.vars.push_back(v);
        return var_of[n] = static_cast<int>(m.vars.size()) - 1;
    };
    auto row = [&](const std::string& n) {
        auto it = row_of.find(n);
        if (it == row_of.end()) throw Error("MPS: unknown row " + n);
        return it->second;
    };
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '*') continue;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (line[0] != ' ') {
            section = tok[0];
            if (section == "NAME") m.name = tok.size() > 1 ? tok[1] : "";
            if (section == "ENDATA") break;
            continue;
        }
        if (section == "ROWS") {
            if (tok.at(0) == "N") {
                row_of[tok.at(1)] = -1;
                continue;
            }
            char t = tok.at(0)[0];
            row_of[tok.at(1)] = static_cast<int>(m.rows.size());
            row_type.push_back(t);
            m.rows.push_back({tok[1], {}, t == 'L' ? -kInf : 0.0, t == 'G' ? kInf : 0.0});
        } else if (section == "COLUMNS") {
            if (tok.size() >= 3 && (tok[1] == "'MARKER'" || tok[1] == "MARKER")) {
                in_int = tok[2] == "'INTORG'" || tok[2] == "INTORG";
                continue;
            }
            int j = var(tok.at(0));
            for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
                int r = row(tok[k]);
                double c = parse_num(tok[k + 1]);
                if (r < 0) {
                    if (c != 0.0) m.objective.push_back({j, c});
                } else {
                    m.rows[r].terms.push_back({j, c});
                }
            }
        } else if (section == "RHS") {
            for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
                int r = row(tok[k]);
                double v = parse_num(tok[k + 1]);
                if (r < 0) {
                    m.obj_offset = -v;
                    continue;
                }
                auto& rw = m.rows[r];
                if (row_type[r] == 'E') rw.lb = rw.ub = v;
                else if (row_type[r] == 'G') rw.lb = v;
                else rw.ub = v;
            }
        } else if (section == "RANGES") {
            for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
                int r = row(tok[k]);
                double v = std::fabs(parse_num(tok[k + 1]));
                auto& rw = m.rows[r];
                if (row_type[r] == 'G') rw.ub = rw.lb + v;
                else if (row_type[r] == 'L') rw.lb = rw.ub - v;
            }
        } else if (section == "BOUNDS") {
            const std::string& t = tok.at(0);
            MipVar& v = m.vars.at(var_of.at(tok.at(2)));
            double x = tok.size() > 3 ? parse_num(tok[3]) : 0.0;
            if (t == "BV") {
                v.kind = VarKind::binary;
                v.lb = 0;
                v.ub = 1;
            } else if (t == "LO") v.lb = x;
            else if (t == "UP") v.ub = x;
            else if (t == "FX") v.lb = v.ub = x;
            else if (t == "FR") v.lb = -kInf, v.ub = kInf;
            else if (t == "MI") v.lb = -kInf;
            else if (t == "PL") v.ub = kInf;
            else throw Error("MPS: unsupported bound type " + t);
        } else {
            throw Error("MPS: unexpected line in section " + section);
        }
    }
    for (auto& r : m.rows) r.terms = merged(std::move(r.terms));
    return m;
}

std::string model_manifest(const MipModel& m) {
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& v : m.vars) {
        nlohmann::json j{{"name", v.name}, {"symbol", v.symbol}, {"indices", v.indices}, {"kind", to_string(v.kind)}};
        j["lb"] = std::isfinite(v.lb) ? nlohmann::json(v.lb) : nlohmann::json(num(v.lb));
        j["ub"] = std::isfinite(v.ub) ? nlohmann::json(v.ub) : nlohmann::json(num(v.ub));
        vars.push_back(std::move(j));
    }
    nlohmann::json out{{"name", m.name},
                       {"variables", vars},
                       {"rows", m.rows.size()},
                       {"indicators", m.indicators.size()},
                       {"objective_offset", m.obj_offset}};
    return out.dump(2);
}

}  // namespace slaprp
