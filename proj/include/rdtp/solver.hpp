#pragma once

#include "rdtp/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace rdtp {

// --- MPS persistence -------------------------------------------------------

/// Canonical names keyed by the 8-character codes used in the MPS file.
struct NameMap {
    std::vector<std::string> columns;  // code C%07d -> canonical variable name
    std::vector<std::string> rows;     // code R%07d -> canonical constraint name

    static std::string column_code(int i);
    static std::string row_code(int i);
    /// Canonical name for a code, or the code itself when unknown.
    std::string restore(const std::string& code) const;
    bool is_column_code(const std::string& code) const;
};

NameMap make_name_map(const ModelArtifact& model);
/// `kind,code,name` table (kind is `column` or `row`).
std::string varmap_csv(const NameMap& map);
NameMap parse_varmap_csv(const std::string& text);

/// Fixed-layout MPS with coded names. Byte-stable for a given model.
std::string mps_text(const ModelArtifact& model);
/// Writes `path` and its name map sidecar (`varmap.csv` next to it).
void write_mps(const ModelArtifact& model, const std::string& path, const std::string& varmap_path = {});
/// Parses MPS written by `mps_text` (or any model in the same subset).
/// Names stay coded unless a map is supplied.
ModelArtifact parse_mps(const std::string& text, const NameMap* names = nullptr);

// --- Solver invocation -----------------------------------------------------

enum class SolutionFormat { Generic, Cbc };

/// How to run one external solver. Command tokens may contain the
/// placeholders {bin} {mps} {solution} {gap} {timeout}.
struct SolverProfile {
    std::string name;
    std::string binary;
    std::vector<std::string> command;
    SolutionFormat format = SolutionFormat::Generic;
};

/// Environment variable that replaces the binary of any profile.
inline constexpr const char* kSolverBinaryEnv = "RDTP_SOLVER_BIN";

/// Built-in profiles: `highs` (default) and `cbc`.
SolverProfile builtin_profile(const std::string& name);
std::vector<std::string> builtin_profile_names();
/// Profile from a JSON object {name, binary, command[], format}.
SolverProfile parse_profile_json(const std::string& text);

struct RawSolution {
    std::string solution_path;
    std::string log_path;
    int exit_code = 0;
    bool timed_out = false;
    double wall_seconds = 0.0;
    SolutionFormat format = SolutionFormat::Generic;
};

/// Runs the solver as a subprocess. The solver is told the time limit; the
/// process is killed if it overruns it by `grace_seconds`.
RawSolution invoke_solver(const std::string& mps_path, const SolverProfile& profile, double gap, double timeout_seconds,
                          const std::string& solution_path, const std::string& log_path, double grace_seconds = 5.0);

// --- Solutions ---------------------------------------------------------------

enum class SolveStatus { Optimal, FeasibleGap, Infeasible, Error };
const char* to_string(SolveStatus s);
SolveStatus parse_status(const std::string& s);

struct SolutionRecord {
    SolveStatus status = SolveStatus::Error;
    double objective = 0.0;
    std::map<std::string, double> values;  // canonical variable name -> value
    int missing = 0;                       // declared variables absent from the file
    std::string log_path;
    double wall_seconds = 0.0;
    std::string message;

    bool has_solution() const { return status == SolveStatus::Optimal || status == SolveStatus::FeasibleGap; }
    double value(const std::string& name) const;
};

inline constexpr double kIntegralityTolerance = 1e-6;

/// Restores canonical names, fills missing columns with 0 and snaps
/// binaries within tolerance. `model` supplies the declared columns and
/// their kinds; it may be null when only the map is known.
SolutionRecord parse_solution(const std::string& text, SolutionFormat format, const NameMap& names,
                              const ModelArtifact* model = nullptr);
SolutionRecord parse_solution(const RawSolution& raw, const NameMap& names, const ModelArtifact* model = nullptr);

/// Values ordered like the model's variables (absent names read as 0).
std::vector<double> values_for(const ModelArtifact& model, const SolutionRecord& sol);

struct FeasibilityReport {
    double max_violation = 0.0;
    std::string worst;  // constraint or variable name
    int violations = 0;  // count above tolerance
    bool ok() const { return violations == 0; }
};

/// Independent re-check of rows, bounds and integrality at `x`.
FeasibilityReport check_feasibility(const ModelArtifact& model, const std::vector<double>& x, double tol = 1e-6);

/// `name,value` rows in model order, plus a JSON header file via solution_json.
std::string solution_csv(const ModelArtifact& model, const SolutionRecord& sol);
std::string solution_json(const SolutionRecord& sol);
SolutionRecord parse_solution_files(const std::string& csv_text, const std::string& json_text);

/// write_mps + invoke_solver + parse_solution in one go, inside `workdir`.
SolutionRecord solve_model(const ModelArtifact& model, const SolverProfile& profile, const std::string& workdir,
                           const std::string& stem, double gap = 1e-4, double timeout_seconds = 3600.0);

}  // namespace rdtp
