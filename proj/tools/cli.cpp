#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "slaprp/compact.hpp"
#include "slaprp/io.hpp"

namespace slaprp::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kBenchHeader = "# slaprp bench csv v1";
constexpr const char* kBoundHeader = "# slaprp bound report v1";

std::string fmt_num(double v) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == std::floor(v) && std::fabs(v) < 1e15) return std::to_string(static_cast<long long>(v));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

double parse_num(const std::string& s) {
    if (s == "NA" || s.empty()) return std::nan("");
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    return std::stod(s);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, ',');)
        if (!t.empty()) out.push_back(t);
    return out;
}

std::vector<std::string> collect_instances(const std::vector<std::string>& paths) {
    std::vector<std::string> out;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<std::string> dir;
            for (const auto& e : fs::directory_iterator(p))
                if (e.is_regular_file() && e.path().extension() == ".json") dir.push_back(e.path().string());
            std::sort(dir.begin(), dir.end());
            out.insert(out.end(), dir.begin(), dir.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

}  // namespace

// ---------------------------------------------------------------------------

std::string solution_json(const Instance& inst, Policy policy, const SolveResult& res) {
    const Incumbent& inc = res.incumbent;
    json j;
    j["instance"] = inst.name;
    j["instance_hash"] = instance_hash(inst);
    j["policy"] = to_string(policy);
    j["status"] = res.status;
    j["objective"] = inc.objective;
    json assign = json::array();
    for (int s = 0; s < static_cast<int>(inc.assignment.size()); ++s) assign.push_back({s, inc.assignment[s]});
    j["assignment"] = assign;
    json routes = json::array();
    for (int o = 0; o < static_cast<int>(inc.routes.size()); ++o) {
        std::vector<int> seq = inc.routes[o].empty() ? std::vector<int>{}
                                                      : route_sequence(policy, inc.routes[o], inst.layout);
        routes.push_back({{"order", o}, {"stops", seq}, {"cost", inc.costs[o]}});
    }
    j["routes"] = routes;
    return j.dump(2) + "\n";
}

std::string stats_json(const SolveResult& res) {
    const SolveStats& s = res.stats;
    json j{{"status", res.status},
           {"optimal", s.optimal},
           {"objective", res.incumbent.objective},
           {"lower_bound", s.lower_bound},
           {"upper_bound", s.upper_bound},
           {"gap", s.gap},
           {"time", s.time},
           {"nodes", s.nodes},
           {"cuts", s.cuts},
           {"columns", s.columns},
           {"pricing_calls", s.pricing_calls},
           {"cg_iterations", s.cg_iterations},
           {"integral_nodes", s.integral_nodes},
           {"extraction_failures", s.extraction_failures},
           {"separation_exhausted", s.separation_exhausted},
           {"root_lp", s.root_lp},
           {"initial_upper_bound", s.initial_upper_bound}};
    return j.dump(2) + "\n";
}

Validation validate_solution(const Instance& inst, const std::string& text) {
    Validation v;
    auto fail = [&](std::string msg) {
        v.ok = false;
        v.diagnostics.push_back(std::move(msg));
    };
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(std::string("unreadable solution: ") + e.what());
        return v;
    }
    try {
        if (j.contains("instance_hash") && j["instance_hash"].get<std::string>() != instance_hash(inst))
            fail("instance hash mismatch");
        Policy policy = policy_from_string(j.at("policy").get<std::string>());
        int S = inst.num_skus, L = inst.layout.num_locations();
        Assignment a(S, -1);
        for (const auto& e : j.at("assignment")) {
            int s = e.at(0).get<int>(), l = e.at(1).get<int>();
            if (s < 0 || s >= S) {
                fail("unknown sku " + std::to_string(s));
                continue;
            }
            if (l < 0 || l >= L) {
                fail("sku " + std::to_string(s) + " stored at unknown location " + std::to_string(l));
                continue;
            }
            if (a[s] >= 0) fail("sku " + std::to_string(s) + " assigned twice");
            a[s] = l;
        }
        for (int s = 0; s < S; ++s)
            if (a[s] < 0) fail("sku " + std::to_string(s) + " not assigned");
        if (!v.ok) return v;
        std::vector<int> load(L, 0);
        for (int s = 0; s < S; ++s) ++load[a[s]];
        for (int l = 0; l < L; ++l)
            if (load[l] > inst.layout.capacity_of(l))
                fail("capacity exceeded at location " + std::to_string(l) + ": " + std::to_string(load[l]) + " > " +
                     std::to_string(inst.layout.capacity_of(l)));
        for (auto [s, l] : inst.fixed)
            if (a[s] != l)
                fail("fixed assignment violated: sku " + std::to_string(s) + " at " + std::to_string(a[s]) +
                     ", expected " + std::to_string(l));
        PlanCost pc = evaluate_plan(inst, a, policy);
        std::map<int, long long> stated;
        for (const auto& r : j.at("routes")) {
            int o = r.at("order").get<int>();
            if (o < 0 || o >= inst.num_orders()) {
                fail("route for unknown order " + std::to_string(o));
                continue;
            }
            stated[o] = r.at("cost").get<long long>();
            std::set<int> visited;
            for (int l : r.at("stops").get<std::vector<int>>()) visited.insert(l);
            std::set<int> need;
            for (auto [l, k] : order_stops(inst, a, o)) need.insert(l);
            if (visited != need) fail("order " + std::to_string(o) + ": route stops do not match the assignment");
        }
        long long total = 0;
        for (int o = 0; o < inst.num_orders(); ++o) {
            total += pc.per_order[o];
            auto it = stated.find(o);
            if (it == stated.end())
                fail("order " + std::to_string(o) + ": missing route");
            else if (it->second != pc.per_order[o])
                fail("order " + std::to_string(o) + ": cost " + std::to_string(it->second) + ", recomputed " +
                     std::to_string(pc.per_order[o]));
        }
        long long claimed = j.at("objective").get<long long>();
        if (claimed != total)
            fail("total mismatch: solution says " + std::to_string(claimed) + ", recomputed " + std::to_string(total));
    } catch (const std::exception& e) {
        fail(std::string("malformed solution: ") + e.what());
    }
    return v;
}

// ---------------------------------------------------------------------------

BenchRow bench_row(const std::string& instance, const Instance& inst, const SolverConfig& cfg, const SolveResult& res) {
    BenchRow r;
    r.instance = instance;
    r.hash = instance_hash(inst);
    r.policy = to_string(cfg.policy);
    r.branching = to_string(cfg.branching);
    r.symmetry = cfg.symmetry ? "on" : "off";
    r.status = res.status;
    r.opt = res.stats.optimal ? 1.0 : 0.0;
    r.lb = res.stats.lower_bound;
    r.ub = static_cast<double>(res.stats.upper_bound);
    r.gap = res.stats.gap;
    r.time = res.stats.time;
    r.nodes = static_cast<double>(res.stats.nodes);
    r.cuts = static_cast<double>(res.stats.cuts);
    r.columns = res.stats.columns;
    r.extraction_failures = res.stats.extraction_failures;
    return r;
}

std::vector<BenchRow> group_means(const std::vector<BenchRow>& rows) {
    std::vector<BenchRow> out;
    std::vector<int> count;
    for (const auto& r : rows) {
        if (r.kind != "instance" || r.status == "error") continue;
        auto it = std::find_if(out.begin(), out.end(), [&](const BenchRow& g) {
            return g.policy == r.policy && g.branching == r.branching && g.symmetry == r.symmetry;
        });
        if (it == out.end()) {
            BenchRow g;
            g.kind = "mean";
            g.policy = r.policy;
            g.branching = r.branching;
            g.symmetry = r.symmetry;
            g.status = "mean";
            out.push_back(g);
            count.push_back(0);
            it = out.end() - 1;
        }
        auto i = it - out.begin();
        ++count[i];
        it->opt += r.opt;
        it->lb += r.lb;
        it->ub += r.ub;
        it->gap += r.gap;
        it->time += r.time;
        it->nodes += r.nodes;
        it->cuts += r.cuts;
        it->columns += r.columns;
        it->extraction_failures += r.extraction_failures;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        double n = count[i];
        auto& g = out[i];
        g.instance = std::to_string(count[i]) + " instances";
        g.opt /= n;
        g.lb /= n;
        g.ub /= n;
        g.gap /= n;
        g.time /= n;
        g.nodes /= n;
        g.cuts /= n;
    }
    return out;
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool timing) {
    std::ostringstream os;
    os << kBenchHeader << (timing ? "" : " (no timing)") << '\n';
    os << "kind,instance,hash,policy,branching,symmetry,status,opt,lb,ub,gap,nodes,cuts,columns,extraction_failures";
    if (timing) os << ",time_s";
    os << ",error\n";
    for (const auto& r : rows) {
        os << r.kind << ',' << csv_field(r.instance) << ',' << r.hash << ',' << r.policy << ',' << r.branching << ','
           << r.symmetry << ',' << r.status << ',' << fmt_num(r.opt) << ',' << fmt_num(r.lb) << ',' << fmt_num(r.ub)
           << ',' << fmt_num(r.gap) << ',' << fmt_num(r.nodes) << ',' << fmt_num(r.cuts) << ',' << r.columns << ','
           << r.extraction_failures;
        if (timing) os << ',' << fmt_num(r.time);
        os << ',' << csv_field(r.error) << '\n';
    }
    return os.str();
}

std::vector<BenchRow> parse_bench_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::string> head;
    std::vector<BenchRow> out;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto f = split_csv_line(line);
        if (head.empty()) {
            head = f;
            continue;
        }
        if (f.size() != head.size()) throw Error("bench csv: wrong field count");
        std::map<std::string, std::string> m;
        for (std::size_t i = 0; i < f.size(); ++i) m[head[i]] = f[i];
        BenchRow r;
        r.kind = m["kind"];
        r.instance = m["instance"];
        r.hash = m["hash"];
        r.policy = m["policy"];
        r.branching = m["branching"];
        r.symmetry = m["symmetry"];
        r.status = m["status"];
        r.opt = parse_num(m["opt"]);
        r.lb = parse_num(m["lb"]);
        r.ub = parse_num(m["ub"]);
        r.gap = parse_num(m["gap"]);
        r.nodes = parse_num(m["nodes"]);
        r.cuts = parse_num(m["cuts"]);
        r.columns = std::stoll(m["columns"]);
        r.extraction_failures = std::stoll(m["extraction_failures"]);
        if (m.count("time_s")) r.time = parse_num(m["time_s"]);
        r.error = m["error"];
        out.push_back(r);
    }
    return out;
}

std::string bench_markdown(const std::vector<BenchRow>& rows, bool timing) {
    std::ostringstream os;
    os << "| instance | policy | branching | symmetry | status | opt | lb | ub | gap % | nodes | cuts |"
       << (timing ? " time s |" : "") << "\n";
    os << "|---|---|---|---|---|---:|---:|---:|---:|---:|---:|" << (timing ? "---:|" : "") << "\n";
    for (const auto& r : rows) {
        std::string name = r.kind == "mean" ? "**mean** (" + r.instance + ")" : r.instance;
        os << "| " << name << " | " << r.policy << " | " << r.branching << " | " << r.symmetry << " | "
           << (r.status == "error" ? "error: " + r.error : r.status) << " | " << fmt_num(r.opt) << " | "
           << fmt_num(r.lb) << " | " << fmt_num(r.ub) << " | " << fmt_num(r.gap) << " | " << fmt_num(r.nodes)
           << " | " << fmt_num(r.cuts) << " |";
        if (timing) os << ' ' << fmt_num(r.time) << " |";
        os << '\n';
    }
    return os.str();
}

BoundRow bound_row(const std::string& instance, const Instance& inst, const SolverConfig& cfg, int compact_max_rows) {
    BoundRow b;
    b.instance = instance;
    SolveResult res = solve(inst, cfg);
    b.optimum = res.incumbent.objective;
    b.proved = res.stats.optimal;
    auto compact = [&](MipModel m) {
        if (static_cast<int>(m.rows.size()) > compact_max_rows) return std::nan("");
        return lp_relaxation_value(m, cfg.lp_solver);
    };
    b.lp_mtz = b.lp_mcf = std::nan("");
    if (cfg.policy == Policy::optimal) {
        b.lp_mtz = compact(emit_compact_mtz(inst));
        b.lp_mcf = compact(emit_compact_mcf(inst));
    }
    b.dw = root_bound(inst, cfg, RootMode::dw);
    b.dw_sl1 = root_bound(inst, cfg, RootMode::dw_sl1);
    b.dw_sl = root_bound(inst, cfg, RootMode::dw_sl);
    return b;
}

std::string bound_csv(const std::vector<BoundRow>& rows) {
    std::ostringstream os;
    os << kBoundHeader << "\ninstance,optimum,proved,lp,lp_mcf,dw,dw_sl1,dw_sl\n";
    for (const auto& r : rows)
        os << csv_field(r.instance) << ',' << r.optimum << ',' << (r.proved ? 1 : 0) << ',' << fmt_num(r.lp_mtz) << ','
           << fmt_num(r.lp_mcf) << ',' << fmt_num(r.dw) << ',' << fmt_num(r.dw_sl1) << ',' << fmt_num(r.dw_sl)
           << '\n';
    return os.str();
}

std::string bound_markdown(const std::vector<BoundRow>& rows) {
    std::ostringstream os;
    os << "| instance | optimum | LP | LP - MCF | DW | DW + SL1 | DW + SL |\n|---|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& r : rows)
        os << "| " << r.instance << " | " << r.optimum << (r.proved ? "" : "*") << " | " << fmt_num(r.lp_mtz) << " | "
           << fmt_num(r.lp_mcf) << " | " << fmt_num(r.dw) << " | " << fmt_num(r.dw_sl1) << " | " << fmt_num(r.dw_sl)
           << " |\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct SolveFlags {
    std::string config;
    std::string policy;
    std::string branching;
    bool no_symmetry = false;
    bool no_cuts = false;
    bool no_sl1 = false;
    double time_limit = -1;
    long long node_limit = -2;
    long long seed = -1;
    std::string lp_solver;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "key = value solver settings");
        app->add_option("--policy", policy, "optimal, return, sshape, midpoint or largestgap");
        app->add_option("--branching", branching, "location or combined");
        app->add_flag("--no-symmetry", no_symmetry, "disable symmetric branching");
        app->add_flag("--no-cuts", no_cuts, "disable SL cut separation");
        app->add_flag("--no-sl1", no_sl1, "leave the per-SKU visit rows out of the master");
        app->add_option("--time-limit", time_limit, "seconds");
        app->add_option("--node-limit", node_limit, "maximum processed nodes");
        app->add_option("--seed", seed, "seed of the initial heuristic");
        app->add_option("--lp-solver", lp_solver, "LP backend name");
    }

    SolverConfig build(const Instance& inst) const {
        SolverConfig c;
        if (!inst.default_policy.empty()) c.policy = policy_from_string(inst.default_policy);
        if (!config.empty()) c = load_config(config, c);
        if (!policy.empty()) c.policy = policy_from_string(policy);
        if (!branching.empty()) c.branching = branching_from_string(branching);
        if (no_symmetry) c.symmetry = false;
        if (no_cuts) c.use_cuts = false;
        if (no_sl1) c.use_sl1 = false;
        if (time_limit >= 0) c.time_limit = time_limit;
        if (node_limit >= -1) c.node_limit = node_limit;
        if (seed >= 0) c.seed = static_cast<std::uint64_t>(seed);
        if (!lp_solver.empty()) c.lp_solver = lp_solver;
        return c;
    }
};

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_file(path, text);
}

int emit_instance(const Instance& inst, const std::string& out_path, std::ostream& out) {
    std::string text = instance_to_json(inst);
    int free_skus = inst.num_skus - static_cast<int>(inst.fixed.size());
    json man{{"name", inst.name},
             {"hash", instance_hash(inst)},
             {"skus", inst.num_skus},
             {"free_skus", free_skus},
             {"orders", inst.num_orders()},
             {"locations", inst.layout.num_locations()}};
    if (out_path.empty() || out_path == "-") {
        out << text;
        return kOk;
    }
    save_instance(inst, out_path);
    man["file"] = out_path;
    out << man.dump() << '\n';
    return kOk;
}

void print_table(std::ostream& out, const std::string& name, const SolverConfig& cfg, const SolveResult& r) {
    const SolveStats& s = r.stats;
    auto line = [&](const char* k, const std::string& v) { out << std::left << std::setw(22) << k << v << '\n'; };
    line("instance", name);
    line("policy", to_string(cfg.policy));
    line("branching", std::string(to_string(cfg.branching)) + (cfg.symmetry ? " + symmetry" : ""));
    line("status", r.status);
    line("objective", r.incumbent.found ? std::to_string(r.incumbent.objective) : "none");
    line("lower bound", fmt_num(s.lower_bound));
    line("gap %", fmt_num(s.gap));
    line("nodes", std::to_string(s.nodes));
    line("cuts", std::to_string(s.cuts));
    line("columns", std::to_string(s.columns));
    line("root lp", fmt_num(s.root_lp));
    line("time s", fmt_num(std::round(s.time * 1000.0) / 1000.0));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact storage location assignment with picker routing"};
    app.name("slaprp");
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Create benchmark instances");
    gen->require_subcommand(1);
    std::string gen_out;
    std::uint64_t gen_seed = 1;
    int count = 1;
    auto common_gen = [&](CLI::App* c) {
        c->add_option("--seed", gen_seed, "first seed");
        c->add_option("--count", count, "instances with consecutive seeds (needs --out as a directory)");
        c->add_option("--out", gen_out, "output file, or directory with --count");
    };
    int aisles = 3, bays = 5, orders = 10, order_size = 5;
    auto* silva = gen->add_subcommand("silva", "Uniform single-block family");
    silva->add_option("--aisles", aisles);
    silva->add_option("--bays", bays);
    silva->add_option("--orders", orders);
    silva->add_option("--order-size", order_size);
    common_gen(silva);
    double alpha = 0.2;
    int guo_orders = 50;
    GuoOptions guo_opt;
    auto* guo = gen->add_subcommand("guo", "Two-block replenishment family");
    guo->add_option("--alpha", alpha, "share of free SKUs: 0.2, 0.3 or 0.4");
    guo->add_option("--orders", guo_orders);
    guo->add_option("--aisles", guo_opt.aisles);
    guo->add_option("--bays", guo_opt.bays_per_block, "bays per block");
    guo->add_option("--capacity", guo_opt.capacity);
    guo->add_option("--skus", guo_opt.total_skus);
    common_gen(guo);
    RandomInstanceOptions rnd;
    std::string rnd_kind = "single_block";
    auto* random = gen->add_subcommand("random", "Small free-form instances");
    random->add_option("--aisles", rnd.layout.aisles);
    random->add_option("--bays", rnd.layout.bays);
    random->add_option("--capacity", rnd.layout.capacity);
    random->add_option("--D", rnd.layout.D, "aisle spacing");
    random->add_option("--d", rnd.layout.d, "bay spacing");
    random->add_option("--layout", rnd_kind, "single_block or two_block_mid_depot");
    random->add_option("--skus", rnd.num_skus);
    random->add_option("--orders", rnd.num_orders);
    random->add_option("--min-order-size", rnd.min_order_size);
    random->add_option("--max-order-size", rnd.max_order_size);
    random->add_option("--fixed", rnd.num_fixed);
    common_gen(random);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance to optimality");
    std::string instance_path, solution_out, stats_out;
    bool as_json = false;
    SolveFlags flags;
    solve_cmd->add_option("instance", instance_path, "instance JSON")->required();
    flags.attach(solve_cmd);
    solve_cmd->add_option("--output", solution_out, "solution JSON file");
    solve_cmd->add_option("--stats", stats_out, "stats JSON file");
    solve_cmd->add_flag("--json", as_json, "print stats JSON instead of the table");

    // bench
    auto* bench = app.add_subcommand("bench", "Run a grid of solves and report");
    std::vector<std::string> bench_paths;
    std::string policies = "", branchings = "combined", symmetries = "on", csv_out, md_out;
    bool no_timing = false, bound_report = false;
    int compact_max_rows = 4000;
    SolveFlags bench_flags;
    bench->add_option("instances", bench_paths, "instance files or directories")->required();
    bench->add_option("--policies", policies, "comma separated; default: the instance hint or optimal");
    bench->add_option("--branchings", branchings, "comma separated: location, combined");
    bench->add_option("--symmetry", symmetries, "comma separated: on, off");
    bench->add_option("--csv", csv_out, "CSV report");
    bench->add_option("--markdown", md_out, "markdown report (stdout when omitted)");
    bench->add_flag("--no-timing", no_timing, "leave timings out so reruns are byte-identical");
    bench->add_flag("--bound-report", bound_report, "root bounds of each formulation instead of full solves");
    bench->add_option("--compact-max-rows", compact_max_rows, "skip compact LPs larger than this");
    bench_flags.attach(bench);

    // export
    auto* exp = app.add_subcommand("export", "Write a compact MILP");
    std::string exp_instance, formulation = "mtz", format = "lp", exp_out;
    bool big_m = false, literal = false;
    exp->add_option("instance", exp_instance)->required();
    exp->add_option("--formulation", formulation, "mtz, mcf, return, sshape, midpoint or largestgap");
    exp->add_option("--format", format, "lp or mps");
    exp->add_flag("--big-m", big_m, "replace indicator constraints with big-M rows");
    exp->add_flag("--literal", literal, "largest gap: emit the uncorrected gap rows");
    exp->add_option("--out", exp_out, "model file; the manifest goes next to it")->required();

    // validate
    auto* val = app.add_subcommand("validate", "Check a solution file against its instance");
    std::string val_instance, val_solution;
    val->add_option("instance", val_instance)->required();
    val->add_option("solution", val_solution)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            auto make = [&](std::uint64_t seed) -> Instance {
                if (*silva) return generate_silva_instance(aisles, bays, orders, order_size, seed);
                if (*guo) return generate_guo_instance(alpha, guo_orders, seed, guo_opt);
                RandomInstanceOptions o = rnd;
                o.layout.kind = layout_kind_from_string(rnd_kind);
                o.seed = seed;
                return generate_random_instance(o);
            };
            if (count <= 1) return emit_instance(make(gen_seed), gen_out, out);
            if (gen_out.empty()) throw CLI::ValidationError("--count needs --out DIR");
            fs::create_directories(gen_out);
            for (int i = 0; i < count; ++i) {
                Instance inst = make(gen_seed + i);
                emit_instance(inst, (fs::path(gen_out) / (inst.name + ".json")).string(), out);
            }
            return kOk;
        }

        if (*solve_cmd) {
            Instance inst = load_instance(instance_path);
            SolverConfig cfg = flags.build(inst);
            SolveResult res = solve(inst, cfg);
            if (!solution_out.empty() && res.incumbent.found)
                write_file(solution_out, solution_json(inst, cfg.policy, res));
            if (!stats_out.empty()) write_file(stats_out, stats_json(res));
            if (as_json)
                out << stats_json(res);
            else
                print_table(out, inst.name.empty() ? stem(instance_path) : inst.name, cfg, res);
            if (!res.incumbent.found) return kNoIncumbent;
            return res.stats.optimal ? kOk : kLimit;
        }

        if (*bench) {
            auto files = collect_instances(bench_paths);
            if (files.empty()) throw CLI::ValidationError("no instances found");
            std::vector<std::string> pols = split_list(policies), brs = split_list(branchings),
                                     syms = split_list(symmetries);
            if (bound_report) {
                std::vector<BoundRow> rows;
                for (const auto& f : files) {
                    Instance inst = load_instance(f);
                    SolverConfig cfg = bench_flags.build(inst);
                    if (!pols.empty()) cfg.policy = policy_from_string(pols.front());
                    rows.push_back(bound_row(stem(f), inst, cfg, compact_max_rows));
                }
                if (!csv_out.empty()) write_file(csv_out, bound_csv(rows));
                write_or_print(md_out, bound_markdown(rows), out);
                return kOk;
            }
            std::vector<BenchRow> rows;
            for (const auto& f : files) {
                Instance inst;
                std::string load_error;
                try {
                    inst = load_instance(f);
                } catch (const std::exception& e) {
                    load_error = e.what();
                }
                std::vector<std::string> ps = pols;
                if (ps.empty()) ps.push_back(inst.default_policy.empty() ? "optimal" : inst.default_policy);
                for (const auto& p : ps)
                    for (const auto& b : brs)
                        for (const auto& s : syms) {
                            BenchRow row;
                            row.instance = stem(f);
                            row.policy = p;
                            row.branching = b;
                            row.symmetry = s;
                            try {
                                if (!load_error.empty()) throw Error(load_error);
                                SolverConfig cfg = bench_flags.build(inst);
                                cfg.policy = policy_from_string(p);
                                cfg.branching = branching_from_string(b);
                                if (s != "on" && s != "off") throw Error("symmetry must be on or off");
                                cfg.symmetry = s == "on";
                                row = bench_row(stem(f), inst, cfg, solve(inst, cfg));
                            } catch (const std::exception& e) {
                                row.status = "error";
                                row.error = e.what();
                            }
                            rows.push_back(row);
                        }
            }
            auto means = group_means(rows);
            rows.insert(rows.end(), means.begin(), means.end());
            if (!csv_out.empty()) write_file(csv_out, bench_csv(rows, !no_timing));
            write_or_print(md_out, bench_markdown(rows, !no_timing), out);
            return kOk;
        }

        if (*exp) {
            Instance inst = load_instance(exp_instance);
            MipModel m;
            if (formulation == "mtz")
                m = emit_compact_mtz(inst);
            else if (formulation == "mcf")
                m = emit_compact_mcf(inst);
            else {
                Policy p = policy_from_string(formulation);
                if (p == Policy::optimal) throw CLI::ValidationError("use mtz or mcf for optimal routing");
                PolicyMipOptions po;
                po.literal = literal;
                m = emit_policy_mip(inst, p, po);
            }
            ModelFormat fmt = model_format_from_string(format);
            write_model(m, exp_out, fmt, big_m);
            if (big_m || fmt == ModelFormat::mps) m = rewrite_big_m(m);
            write_file(exp_out + ".manifest.json", model_manifest(m) + "\n");
            out << json{{"model", exp_out},
                        {"manifest", exp_out + ".manifest.json"},
                        {"variables", m.vars.size()},
                        {"rows", m.rows.size()},
                        {"indicators", m.indicators.size()}}
                       .dump()
                << '\n';
            return kOk;
        }

        if (*val) {
            Instance inst = load_instance(val_instance);
            Validation v = validate_solution(inst, read_file(val_solution));
            if (v.ok) {
                out << "ok\n";
                return kOk;
            }
            for (const auto& d : v.diagnostics) out << d << '\n';
            return kFailure;
        }
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace slaprp::cli
