#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slaprp/lp.hpp"
#include "slaprp/model.hpp"
#include "slaprp/routing.hpp"

namespace slaprp {

enum class VarKind { binary, integer, continuous };
const char* to_string(VarKind k);

struct MipVar {
    std::string name;
    VarKind kind = VarKind::continuous;
    double lb = 0.0;
    double ub = kInf;
    std::string symbol;        // formulation symbol, e.g. "xi"
    std::vector<int> indices;  // 1-based where the formulation is 1-based
};

// lb <= terms <= ub
struct MipRow {
    std::string name;
    SparseVec terms;
    double lb = -kInf;
    double ub = kInf;
};

// guard == value  ->  row
struct MipIndicator {
    std::string name;
    int guard = 0;
    int value = 1;
    MipRow row;
};

struct MipModel {
    std::string name;
    std::vector<MipVar> vars;
    std::vector<MipRow> rows;
    std::vector<MipIndicator> indicators;
    SparseVec objective;
    double obj_offset = 0.0;

    int add_var(const std::string& symbol, std::vector<int> idx, VarKind kind, double lb, double ub);
    int add_row(const std::string& name, SparseVec terms, double lb, double ub);
    void add_indicator(const std::string& name, int guard, int value, SparseVec terms, double lb, double ub);
    void add_cost(int var, double c) { objective.push_back({var, c}); }

    int find(const std::string& var_name) const;  // -1 if absent
    // Throws if a row or indicator references an undeclared variable or a binary has wrong bounds.
    void check() const;
};

MipModel emit_compact_mtz(const Instance& inst);
MipModel emit_compact_mcf(const Instance& inst);

struct PolicyMipOptions {
    // Largest gap only: emit the gap rows exactly as originally written instead of the corrected form.
    bool literal = false;
};

// Single-block layouts; return, sshape, midpoint or largest_gap.
MipModel emit_policy_mip(const Instance& inst, Policy policy, const PolicyMipOptions& opt = {});

// Indicators become big-M rows, with M taken from the variable bounds of each row.
MipModel rewrite_big_m(const MipModel& m);

MipProblem to_mip_problem(const MipModel& m);  // rewrites indicators first

enum class ModelFormat { lp, mps };
ModelFormat model_format_from_string(const std::string& s);

// LP text keeps indicators unless big_m is set; MPS always uses big-M rows.
void write_model(const MipModel& m, std::ostream& os, ModelFormat fmt, bool big_m = false);
void write_model(const MipModel& m, const std::string& path, ModelFormat fmt, bool big_m = false);
// Free-format MPS as produced by write_model.
MipModel read_mps(std::istream& is);

// {"name", "variables": [{name, symbol, indices, kind, lb, ub}], "rows", "indicators"}
std::string model_manifest(const MipModel& m);

double lp_relaxation_value(const MipModel& m, const std::string& solver = "");
MipResult solve_model(const MipModel& m, const MipOptions& opt = {});

}  // namespace slaprp
