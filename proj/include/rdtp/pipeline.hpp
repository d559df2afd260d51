#pragma once

#include "rdtp/breakpoints.hpp"
#include "rdtp/common.hpp"
#include "rdtp/data.hpp"
#include "rdtp/instance.hpp"
#include "rdtp/solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rdtp {

/// Pipeline settings read from one JSON file. Relative paths resolve
/// against the directory of that file.
struct PipelineConfig {
    std::string hourly_csv;
    std::string instance_json;
    CsvSchema schema;
    std::string workdir = "work";
    /// Leading days of the ingested year used as a cyclic study horizon.
    int horizon_days = kYearDays;
    int n_rd = 21;
    int r_avg = 10;
    int r_min = 4;
    AllocationMode mode = AllocationMode::Adaptive;
    std::string profile = "highs";
    double gap = 1e-4;
    double timeout = 3600.0;
    PlanningConfig planning;
    bool operation_scale_given = false;

    void validate() const;
    /// Canonical JSON text used for hashing.
    std::string canonical() const;
};

PipelineConfig parse_pipeline_config(const std::string& text, const std::string& base_dir = ".");
PipelineConfig load_pipeline_config(const std::string& path);

enum class Stage { Ingest, SelectDays, SelectPoints, BuildModel, Solve, Evaluate };
const char* to_string(Stage s);
Stage parse_stage(const std::string& s);
const std::vector<Stage>& all_stages();

/// Raised when a stage runs before the stages it reads from.
class DependencyError : public Error {
public:
    using Error::Error;
};

/// Runs stages against a working directory. Each stage reads only files
/// written by earlier stages, writes atomically, and is skipped when its
/// inputs and outputs match the hashes recorded in manifest.json.
class Pipeline {
public:
    Pipeline(PipelineConfig config, std::ostream& log);

    /// True when the stage ran, false when it was up to date.
    bool run(Stage stage);
    void run_all();

    const std::string& workdir() const { return workdir_; }
    std::string path(const std::string& file) const;

    static std::vector<std::string> inputs(Stage stage, const PipelineConfig& cfg);
    static std::vector<std::string> outputs(Stage stage, const PipelineConfig& cfg);
    /// Files whose contents depend on timing (solver logs, wall clocks).
    static std::vector<std::string> volatile_outputs();

private:
    void ingest();
    void select_days();
    void select_points();
    void build_model();
    void solve();
    void evaluate();

    bool reduced_is_reference() const;
    std::string stage_key(Stage stage) const;

    PipelineConfig cfg_;
    std::ostream& log_;
    std::string workdir_;
};

/// Stand-alone solve of an MPS file. Canonical names come from the
/// `<stem>.varmap.csv` or `varmap.csv` sidecar when present. Writes
/// `<stem>.solution.csv` and `<stem>.solution.json` next to the model.
SolutionRecord solve_mps_file(const std::string& mps_path, const SolverProfile& profile, double gap,
                              double timeout_seconds, std::ostream& log);

/// Resolves a built-in profile name or a JSON profile file.
SolverProfile resolve_profile(const std::string& name_or_path);

}  // namespace rdtp
