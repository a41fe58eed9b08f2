#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slaprp/model.hpp"
#include "slaprp/routing.hpp"
#include "slaprp/search.hpp"

namespace slaprp::cli {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kLimit = 3, kNoIncumbent = 4 };

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string solution_json(const Instance& inst, Policy policy, const SolveResult& res);
std::string stats_json(const SolveResult& res);

struct Validation {
    bool ok = true;
    std::vector<std::string> diagnostics;
};

Validation validate_solution(const Instance& inst, const std::string& solution_text);

// One solve inside a bench grid.
struct BenchRow {
    std::string kind = "instance";  // instance | mean
    std::string instance;
    std::string hash;
    std::string policy;
    std::string branching;
    std::string symmetry;
    std::string status;  // optimal | limit | error
    double opt = 0.0;    // 1 when proved optimal; the group fraction on mean rows
    double lb = 0.0;
    double ub = 0.0;
    double gap = 0.0;
    double time = 0.0;
    double nodes = 0.0;
    double cuts = 0.0;
    long long columns = 0;
    long long extraction_failures = 0;
    std::string error;
};

BenchRow bench_row(const std::string& instance, const Instance& inst, const SolverConfig& cfg, const SolveResult& res);
// Means per (policy, branching, symmetry), in order of first appearance.
std::vector<BenchRow> group_means(const std::vector<BenchRow>& rows);

// Versioned header comment; timing omitted when `timing` is false so the file is reproducible.
std::string bench_csv(const std::vector<BenchRow>& rows, bool timing);
std::vector<BenchRow> parse_bench_csv(const std::string& text);
std::string bench_markdown(const std::vector<BenchRow>& rows, bool timing);

struct BoundRow {
    std::string instance;
    long long optimum = 0;
    bool proved = false;
    double lp_mtz = 0.0, lp_mcf = 0.0;  // NaN when skipped
    double dw = 0.0, dw_sl1 = 0.0, dw_sl = 0.0;
};

BoundRow bound_row(const std::string& instance, const Instance& inst, const SolverConfig& cfg, int compact_max_rows);
std::string bound_csv(const std::vector<BoundRow>& rows);
std::string bound_markdown(const std::vector<BoundRow>& rows);

}  // namespace slaprp::cli
