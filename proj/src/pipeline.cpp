#include "rdtp/pipeline.hpp"

#include "rdtp/common.hpp"
#include "rdtp/coplan.hpp"
#include "rdtp/days.hpp"
#include "rdtp/evaluate.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>

namespace fs = std::filesystem;

namespace rdtp {

namespace {

using json = nlohmann::ordered_json;

constexpr int kStageVersion = 1;

std::string resolve(const std::string& base, const std::string& p) {
    if (p.empty()) return p;
    const fs::path path(p);
    return path.is_absolute() ? p : (fs::path(base) / path).lexically_normal().string();
}

WindUnit parse_wind_unit(const std::string& s) {
    if (s == "cf" || s == "capacity_factor") return WindUnit::CapacityFactor;
    if (s == "mw") return WindUnit::Megawatt;
    throw DataError("config: wind_unit must be cf or mw, got '" + s + "'");
}

std::string file_hash(const std::string& path) { return hex64(fnv1a(read_file(path))); }

}  // namespace

// --- Config ----------------------------------------------------------------------

void PipelineConfig::validate() const {
    if (hourly_csv.empty()) throw DataError("config: data.hourly_csv is required");
    if (instance_json.empty()) throw DataError("config: data.instance is required");
    if (!fs::exists(hourly_csv)) throw DataError("config: hourly data file not found: " + hourly_csv);
    if (!fs::exists(instance_json)) throw DataError("config: instance file not found: " + instance_json);
    if (schema.wind_unit == WindUnit::Megawatt && !fs::exists(schema.capacity_table))
        throw DataError("config: wind in MW needs an existing capacity_table");
    if (horizon_days < 1 || horizon_days > kYearDays) throw DataError("config: horizon_days must lie in [1, 365]");
    if (n_rd < 1) throw DataError("config: n_rd must be positive");
    if (!(r_min >= 2 && r_min <= r_avg && r_avg <= kPointsPerDay))
        throw DataError("config: need 2 <= r_min <= r_avg <= 25");
    if (!(gap >= 0.0) || !(timeout > 0.0)) throw DataError("config: gap must be >= 0 and timeout > 0");
    planning.validate();
}

std::string PipelineConfig::canonical() const {
    json j;
    j["hourly_csv"] = fs::path(hourly_csv).filename().string();
    j["instance"] = fs::path(instance_json).filename().string();
    j["wind_unit"] = schema.wind_unit == WindUnit::Megawatt ? "mw" : "cf";
    j["columns"] = {schema.timestamp_column, schema.area_column, schema.load_column, schema.wind_column};
    j["areas"] = schema.areas;
    j["horizon_days"] = horizon_days;
    j["n_rd"] = n_rd;
    j["r_avg"] = r_avg;
    j["r_min"] = r_min;
    j["mode"] = to_string(mode);
    j["profile"] = profile;
    j["gap"] = gap;
    j["timeout"] = timeout;
    const auto& p = planning;
    j["planning"] = {{"voll", p.voll}, {"tangents", p.tangents}, {"reserve_time", p.reserve_time},
                     {"reserve_load", p.reserve_load}, {"reserve_wind", p.reserve_wind}, {"shed_cap", p.shed_cap},
                     {"wind_portfolio", p.wind_portfolio}, {"theta_bound", p.theta_bound},
                     {"operation_scale", operation_scale_given ? p.operation_scale : 0.0},
                     {"formulation", to_string(p.formulation)}, {"variant", to_string(p.variant)}};
    return j.dump();
}

PipelineConfig parse_pipeline_config(const std::string& text, const std::string& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("config: ") + e.what());
    }
    PipelineConfig c;
    try {
        const auto& data = j.at("data");
        c.hourly_csv = resolve(base_dir, data.at("hourly_csv").get<std::string>());
        c.instance_json = resolve(base_dir, data.at("instance").get<std::string>());
        c.schema.wind_unit = parse_wind_unit(data.value("wind_unit", std::string("cf")));
        c.schema.capacity_table = resolve(base_dir, data.value("capacity_table", std::string()));
        c.schema.timestamp_column = data.value("timestamp_column", c.schema.timestamp_column);
        c.schema.area_column = data.value("area_column", c.schema.area_column);
        c.schema.load_column = data.value("load_column", c.schema.load_column);
        c.schema.wind_column =
            data.value("wind_column", c.schema.wind_unit == WindUnit::Megawatt ? std::string("wind_mw") : c.schema.wind_column);
        c.schema.areas = data.value("areas", std::vector<std::string>{});
        c.workdir = resolve(base_dir, j.value("workdir", c.workdir));
        c.horizon_days = j.value("horizon_days", c.horizon_days);
        c.n_rd = j.value("n_rd", c.n_rd);
        c.r_avg = j.value("r_avg", c.r_avg);
        c.r_min = j.value("r_min", c.r_min);
        c.mode = parse_allocation_mode(j.value("mode", std::string("adaptive")));
        c.planning.variant = parse_variant(j.value("variant", std::string("RDTP")));
        c.planning.formulation = parse_formulation(j.value("formulation", std::string("PWL")));
        if (j.contains("solver")) {
            const auto& s = j.at("solver");
            c.profile = s.value("profile", c.profile);
            c.gap = s.value("gap", c.gap);
            c.timeout = s.value("timeout", c.timeout);
        }
        if (j.contains("planning")) {
            const auto& p = j.at("planning");
            auto& pc = c.planning;
            pc.voll = p.value("voll", pc.voll);
            pc.tangents = p.value("tangents", pc.tangents);
            pc.reserve_time = p.value("reserve_time", pc.reserve_time);
            pc.reserve_load = p.value("reserve_load", pc.reserve_load);
            pc.reserve_wind = p.value("reserve_wind", pc.reserve_wind);
            pc.shed_cap = p.value("shed_cap", pc.shed_cap);
            pc.wind_portfolio = p.value("wind_portfolio", pc.wind_portfolio);
            pc.theta_bound = p.value("theta_bound", pc.theta_bound);
            if (p.contains("operation_scale")) {
                pc.operation_scale = p.at("operation_scale").get<double>();
                c.operation_scale_given = true;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("config: ") + e.what());
    }
    if (!c.operation_scale_given) c.planning.operation_scale = static_cast<double>(kYearDays) / c.horizon_days;
    return c;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    const std::string base = fs::path(path).parent_path().string();
    return parse_pipeline_config(read_file(path), base.empty() ? "." : base);
}

// --- Stages ------------------------------------------------------------------------

const char* to_string(Stage s) {
    switch (s) {
        case Stage::Ingest: return "ingest";
        case Stage::SelectDays: return "select-days";
        case Stage::SelectPoints: return "select-points";
        case Stage::BuildModel: return "build-model";
        case Stage::Solve: return "solve";
        case Stage::Evaluate: return "evaluate";
    }
    return "?";
}

const std::vector<Stage>& all_stages() {
    static const std::vector<Stage> s{Stage::Ingest,     Stage::SelectDays, Stage::SelectPoints,
                                      Stage::BuildModel, Stage::Solve,      Stage::Evaluate};
    return s;
}

Stage parse_stage(const std::string& s) {
    for (Stage st : all_stages())
        if (s == to_string(st)) return st;
    throw ArgumentError("unknown stage '" + s + "'");
}

namespace {

bool is_reference(const PipelineConfig& c) { return c.planning.variant == Variant::REF; }

Stage producer_of(const std::string& file) {
    if (file == "factors.csv") return Stage::Ingest;
    if (file == "rds.csv" || file == "slds.csv") return Stage::SelectDays;
    if (file.rfind("rtp", 0) == 0) return Stage::SelectPoints;
    if (file.find(".solution.") != std::string::npos || file == "timings.json") return Stage::Solve;
    return Stage::BuildModel;
}

bool is_volatile(const std::string& f) {
    for (const auto& v : Pipeline::volatile_outputs())
        if (v == f) return true;
    return false;
}

std::vector<std::string> model_stems(const PipelineConfig& c) {
    if (is_reference(c)) return {"ref"};
    return {"ref", "model"};
}

std::string case_label(const PipelineConfig& c) {
    std::string label = to_string(c.planning.variant);
    if (c.planning.variant == Variant::RDTP) label += c.mode == AllocationMode::Adaptive ? "-ad" : "-eq";
    if (c.planning.formulation == Formulation::PWC) label += "-PWC";
    return label;
}

}  // namespace

std::vector<std::string> Pipeline::inputs(Stage stage, const PipelineConfig& c) {
    switch (stage) {
        case Stage::Ingest: return {};
        case Stage::SelectDays: return {"factors.csv"};
        case Stage::SelectPoints: return {"rds.csv", "slds.csv"};
        case Stage::BuildModel: return {"factors.csv", "rds.csv", "slds.csv", "rtps.csv", "rtp_errors.csv"};
        case Stage::Solve: {
            std::vector<std::string> out;
            for (const auto& s : model_stems(c)) {
                out.push_back(s + ".mps");
                out.push_back(s + ".varmap.csv");
            }
            return out;
        }
        case Stage::Evaluate: {
            std::vector<std::string> out{"factors.csv", "rds.csv", "slds.csv", "timings.json"};
            for (const auto& s : model_stems(c)) {
                out.push_back(s + ".solution.csv");
                out.push_back(s + ".solution.json");
            }
            return out;
        }
    }
    return {};
}

std::vector<std::string> Pipeline::outputs(Stage stage, const PipelineConfig& c) {
    switch (stage) {
        case Stage::Ingest: return {"factors.csv"};
        case Stage::SelectDays: return {"rds.csv", "slds.csv"};
        case Stage::SelectPoints: return {"rtps.csv", "rtp_errors.csv", "rtp_trace.csv"};
        case Stage::BuildModel: {
            std::vector<std::string> out;
            for (const auto& s : model_stems(c)) {
                out.push_back(s + ".mps");
                out.push_back(s + ".varmap.csv");
                out.push_back(s + ".json");
            }
            return out;
        }
        case Stage::Solve: {
            std::vector<std::string> out;
            for (const auto& s : model_stems(c)) {
                out.push_back(s + ".solution.csv");
                out.push_back(s + ".solution.json");
            }
            out.push_back("timings.json");
            return out;
        }
        case Stage::Evaluate:
            return {"fixed.mps", "fixed.varmap.csv", "fixed.solution.csv", "fixed.solution.json", "report.csv",
                    "reconstruction.csv"};
    }
    return {};
}

std::vector<std::string> Pipeline::volatile_outputs() { return {"timings.json", "report.csv"}; }

Pipeline::Pipeline(PipelineConfig config, std::ostream& log) : cfg_(std::move(config)), log_(log) {
    cfg_.validate();
    workdir_ = cfg_.workdir;
    fs::create_directories(workdir_);
}

std::string Pipeline::path(const std::string& file) const { return (fs::path(workdir_) / file).string(); }

bool Pipeline::reduced_is_reference() const { return is_reference(cfg_); }

std::string Pipeline::stage_key(Stage stage) const {
    // Only the settings a stage reads enter its key; upstream settings
    // reach it through the hashes of its input files.
    const json all = json::parse(cfg_.canonical());
    json own = json::object();
    auto keep = [&](std::initializer_list<const char*> keys) {
        for (const char* k : keys) own[k] = all.at(k);
    };
    switch (stage) {
        case Stage::Ingest: keep({"hourly_csv", "wind_unit", "columns", "areas", "horizon_days"}); break;
        case Stage::SelectDays: keep({"instance", "n_rd"}); break;
        case Stage::SelectPoints: keep({"r_avg", "r_min", "mode"}); break;
        case Stage::BuildModel: keep({"instance", "planning"}); break;
        case Stage::Solve: keep({"profile", "gap", "timeout"}); break;
        case Stage::Evaluate: keep({"instance", "planning", "mode", "profile", "gap", "timeout"}); break;
    }
    std::string text = own.dump();
    text += "|stage=" + std::string(to_string(stage)) + "|version=" + std::to_string(kStageVersion);
    if (stage == Stage::Ingest) {
        text += "|hourly=" + file_hash(cfg_.hourly_csv);
        if (cfg_.schema.wind_unit == WindUnit::Megawatt) text += "|capacity=" + file_hash(cfg_.schema.capacity_table);
    }
    if (stage == Stage::SelectDays || stage == Stage::BuildModel || stage == Stage::Evaluate)
        text += "|instance=" + file_hash(cfg_.instance_json);
    for (const auto& f : inputs(stage, cfg_))
        text += "|" + f + "=" + (is_volatile(f) ? std::string("present") : file_hash(path(f)));
    return hex64(fnv1a(text));
}

bool Pipeline::run(Stage stage) {
    for (const auto& f : inputs(stage, cfg_))
        if (!fs::exists(path(f)))
            throw DependencyError(std::string(to_string(stage)) + ": missing " + f + " (run " +
                                  to_string(producer_of(f)) + " first)");

    const std::string manifest_path = path("manifest.json");
    json manifest;
    if (fs::exists(manifest_path)) {
        try {
            manifest = json::parse(read_file(manifest_path));
        } catch (const json::exception&) {
            manifest = json::object();
        }
    }
    const std::string key = stage_key(stage);
    const std::string name = to_string(stage);
    if (manifest.contains("stages") && manifest["stages"].contains(name)) {
        const auto& rec = manifest["stages"][name];
        bool fresh = rec.value("key", std::string()) == key;
        for (const auto& f : outputs(stage, cfg_)) {
            if (!fresh) break;
            if (!fs::exists(path(f))) {
                fresh = false;
            } else if (!is_volatile(f)) {
                fresh = rec.contains("outputs") && rec["outputs"].contains(f) &&
                        rec["outputs"][f].get<std::string>() == file_hash(path(f));
            }
        }
        if (fresh) {
            log_ << name << ": up to date\n";
            return false;
        }
    }

    switch (stage) {
        case Stage::Ingest: ingest(); break;
        case Stage::SelectDays: select_days(); break;
        case Stage::SelectPoints: select_points(); break;
        case Stage::BuildModel: build_model(); break;
        case Stage::Solve: solve(); break;
        case Stage::Evaluate: evaluate(); break;
    }

    json rec;
    rec["version"] = kStageVersion;
    rec["key"] = key;
    json outs = json::object();
    for (const auto& f : outputs(stage, cfg_)) outs[f] = is_volatile(f) ? std::string("volatile") : file_hash(path(f));
    rec["outputs"] = outs;
    manifest["config_hash"] = hex64(fnv1a(cfg_.canonical()));
    if (!manifest.contains("stages")) manifest["stages"] = json::object();
    manifest["stages"][name] = rec;
    // Keep stage records in pipeline order so the manifest is byte-stable.
    json ordered = json::object();
    for (Stage st : all_stages())
        if (manifest["stages"].contains(to_string(st))) ordered[to_string(st)] = manifest["stages"][to_string(st)];
    json out;
    out["config_hash"] = manifest["config_hash"];
    out["stages"] = ordered;
    write_file_atomic(manifest_path, out.dump(2) + "\n");
    return true;
}

void Pipeline::run_all() {
    for (Stage s : all_stages()) run(s);
}

void Pipeline::ingest() {
    HourlyDataset ds = load_hourly_csv(cfg_.hourly_csv, cfg_.schema);
    if (cfg_.horizon_days < ds.year_length_days) {
        ds.values = ds.values.leftCols(static_cast<Eigen::Index>(cfg_.horizon_days) * kHoursPerDay).eval();
        ds.year_length_days = cfg_.horizon_days;
    }
    write_file_atomic(path("factors.csv"), factors_csv(ds));
    log_ << "ingest: " << ds.areas.size() << " areas, " << ds.year_length_days << " days\n";
}

void Pipeline::select_days() {
    const HourlyDataset ds = parse_factors_csv(read_file(path("factors.csv")));
    const PlanningInstance inst = load_instance_json(cfg_.instance_json);
    const auto days = slice_days(ds);
    const auto extreme = find_extreme_days(ds, inst);
    RepresentativeDaySet rdset = cluster_days(days, cfg_.n_rd, extreme);
    rdset.areas = ds.areas;
    rdset.features = ds.features;
    const SLDSequence slds = map_slds(rdset);
    write_file_atomic(path("rds.csv"), rds_csv(rdset));
    write_file_atomic(path("slds.csv"), slds_csv(slds));
    log_ << "select-days: " << rdset.size() << " RDs (" << extreme.size() << " extreme), " << slds.blocks.size()
         << " SLDs\n";
}

void Pipeline::select_points() {
    const SLDSequence slds = parse_slds_csv(read_file(path("slds.csv")));
    const RepresentativeDaySet rdset = parse_rds_csv(read_file(path("rds.csv")), slds);
    const AllocationResult alloc = allocate_rtps(rdset, cfg_.r_avg, cfg_.r_min, cfg_.mode);
    write_file_atomic(path("rtps.csv"), rtps_csv(alloc.selections));
    write_file_atomic(path("rtp_errors.csv"), rtp_errors_csv(alloc.selections));
    std::string trace = "iteration,max_objective\n";
    for (std::size_t i = 0; i < alloc.max_error_trace.size(); ++i)
        trace += std::to_string(i) + ',' + format_number(alloc.max_error_trace[i]) + '\n';
    write_file_atomic(path("rtp_trace.csv"), trace);
    log_ << "select-points: " << to_string(cfg_.mode) << ", ATAE " << format_number(atae(alloc.selections)) << "\n";
}

void Pipeline::build_model() {
    const HourlyDataset ds = parse_factors_csv(read_file(path("factors.csv")));
    const PlanningInstance inst = load_instance_json(cfg_.instance_json);
    const SLDSequence slds = parse_slds_csv(read_file(path("slds.csv")));
    const RepresentativeDaySet rdset = parse_rds_csv(read_file(path("rds.csv")), slds);
    const auto selections = parse_rtp_files(read_file(path("rtps.csv")), read_file(path("rtp_errors.csv")));

    auto emit = [&](const ModelArtifact& m, const std::string& stem) {
        write_mps(m, path(stem + ".mps"), path(stem + ".varmap.csv"));
        write_file_atomic(path(stem + ".json"), m.summary_json());
        log_ << "build-model: " << stem << " " << m.metadata.at("variant") << "/" << m.metadata.at("formulation") << ", "
             << m.n_variables() << " columns (" << m.n_binaries() << " binary), " << m.n_constraints() << " rows\n";
    };
    PlanningConfig ref_cfg = cfg_.planning;
    ref_cfg.variant = Variant::REF;
    ModelInputs ref_in;
    ref_in.data = &ds;
    emit(rdtp::build_model(inst, ref_cfg, ref_in), "ref");
    if (!reduced_is_reference()) {
        ModelInputs in;
        in.rdset = &rdset;
        in.slds = &slds;
        in.selections = &selections;
        emit(rdtp::build_model(inst, cfg_.planning, in), "model");
    }
}

namespace {

struct StemSolve {
    SolutionRecord solution;
    FeasibilityReport feasibility;
};

StemSolve solve_stem(const ModelArtifact& model, const NameMap& names, const std::string& mps_path,
                     const std::string& out_base, const std::string& log_base, const SolverProfile& profile, double gap,
                     double timeout) {
    const RawSolution raw = invoke_solver(mps_path, profile, gap, timeout, log_base + ".raw", log_base + ".log");
    StemSolve out;
    out.solution = parse_solution(raw, names, &model);
    if (out.solution.has_solution()) out.feasibility = check_feasibility(model, values_for(model, out.solution));
    json j = json::parse(solution_json(out.solution));
    j["max_violation"] = out.feasibility.max_violation;
    j["worst"] = out.feasibility.worst;
    write_file_atomic(out_base + ".solution.csv", solution_csv(model, out.solution));
    write_file_atomic(out_base + ".solution.json", j.dump(2) + "\n");
    return out;
}

}  // namespace

void Pipeline::solve() {
    const SolverProfile profile = resolve_profile(cfg_.profile);
    fs::create_directories(path("logs"));
    json timings = json::object();
    for (const auto& stem : model_stems(cfg_)) {
        const NameMap names = parse_varmap_csv(read_file(path(stem + ".varmap.csv")));
        const ModelArtifact model = parse_mps(read_file(path(stem + ".mps")), &names);
        const StemSolve s = solve_stem(model, names, path(stem + ".mps"), path(stem), path("logs/" + stem), profile,
                                       cfg_.gap, cfg_.timeout);
        timings[stem] = s.solution.wall_seconds;
        log_ << "solve: " << stem << " " << to_string(s.solution.status) << ", objective "
             << format_number(s.solution.objective) << ", max violation " << format_number(s.feasibility.max_violation)
             << "\n";
        if (!s.solution.has_solution())
            throw SolverError("solve: " + stem + " ended with status " + to_string(s.solution.status) + " (" +
                              s.solution.message + "); see " + path("logs/" + stem + ".log"));
        if (!s.feasibility.ok())
            log_ << "solve: warning: " << stem << " violates " << s.feasibility.violations << " rows (worst "
                 << s.feasibility.worst << ")\n";
    }
    write_file_atomic(path("timings.json"), timings.dump(2) + "\n");
}

void Pipeline::evaluate() {
    const HourlyDataset ds = parse_factors_csv(read_file(path("factors.csv")));
    const PlanningInstance inst = load_instance_json(cfg_.instance_json);
    const SLDSequence slds = parse_slds_csv(read_file(path("slds.csv")));
    const RepresentativeDaySet rdset = parse_rds_csv(read_file(path("rds.csv")), slds);
    const SolverProfile profile = resolve_profile(cfg_.profile);
    const json timings = json::parse(read_file(path("timings.json")));

    auto load_solution = [&](const std::string& stem) {
        return parse_solution_files(read_file(path(stem + ".solution.csv")), read_file(path(stem + ".solution.json")));
    };
    const SolutionRecord ref = load_solution("ref");
    const std::string reduced_stem = reduced_is_reference() ? "ref" : "model";
    const SolutionRecord reduced = load_solution(reduced_stem);

    PlanningConfig ref_cfg = cfg_.planning;
    ref_cfg.variant = Variant::REF;
    ModelInputs in;
    in.data = &ds;
    ModelArtifact fixed = rdtp::build_model(inst, ref_cfg, in);
    fix_investments(fixed, inst, reduced);
    fixed.metadata["fixed_investments"] = "1";
    write_mps(fixed, path("fixed.mps"), path("fixed.varmap.csv"));
    fs::create_directories(path("logs"));
    const StemSolve fs_ = solve_stem(fixed, make_name_map(fixed), path("fixed.mps"), path("fixed"), path("logs/fixed"),
                                     profile, cfg_.gap, cfg_.timeout);
    if (fs_.solution.status == SolveStatus::Infeasible)
        throw ModelError("evaluate: fixed investments are infeasible in the reference model");
    if (!fs_.solution.has_solution()) throw SolverError("evaluate: reference re-solve failed: " + fs_.solution.message);

    const PlanCosts fstar = plan_costs(inst, ref);
    const PlanCosts fhat = plan_costs(inst, fs_.solution);
    auto err = [&](double a, double b, const char* what) {
        if (b > 0.0) return cost_error(a, b);
        log_ << "evaluate: warning: reference " << what << " cost is not positive; error undefined\n";
        return std::numeric_limits<double>::quiet_NaN();
    };
    ErrorReport r;
    r.case_label = case_label(cfg_);
    r.operation_error = err(fhat.operation, fstar.operation, "operation");
    r.investment_error = err(fhat.investment, fstar.investment, "investment");
    r.total_error = err(fhat.total(), fstar.total(), "total");
    r.cpu_s = timings.value(reduced_stem, 0.0);
    write_file_atomic(path("report.csv"), report_csv({r}));

    const Eigen::MatrixXd rebuilt = reconstruction_series(rdset, &slds);
    write_file_atomic(path("reconstruction.csv"), reconstruction_csv(ds, rebuilt, inst));
    log_ << "evaluate: " << r.case_label << " errors (%): operation " << format_number(r.operation_error)
         << ", investment " << format_number(r.investment_error) << ", total " << format_number(r.total_error) << "\n";
}

// --- Stand-alone solve ----------------------------------------------------------------

SolverProfile resolve_profile(const std::string& name_or_path) {
    for (const auto& n : builtin_profile_names())
        if (n == name_or_path) return builtin_profile(n);
    if (fs::exists(name_or_path)) return parse_profile_json(read_file(name_or_path));
    throw ArgumentError("unknown solver profile '" + name_or_path + "'");
}

SolutionRecord solve_mps_file(const std::string& mps_path, const SolverProfile& profile, double gap,
                              double timeout_seconds, std::ostream& log) {
    if (!fs::exists(mps_path)) throw ArgumentError("model file not found: " + mps_path);
    const fs::path p(mps_path);
    const fs::path base = p.parent_path() / p.stem();
    NameMap names;
    for (const fs::path& cand : {fs::path(base.string() + ".varmap.csv"), p.parent_path() / "varmap.csv"})
        if (fs::exists(cand)) {
            names = parse_varmap_csv(read_file(cand.string()));
            break;
        }
    const ModelArtifact model = parse_mps(read_file(mps_path), names.columns.empty() ? nullptr : &names);
    if (names.columns.empty()) names = make_name_map(model);
    const StemSolve s =
        solve_stem(model, names, mps_path, base.string(), base.string(), profile, gap, timeout_seconds);
    log << to_string(s.solution.status) << " objective " << format_number(s.solution.objective) << " max_violation "
        << format_number(s.feasibility.max_violation) << " wall_s " << format_number(s.solution.wall_seconds) << "\n";
    return s.solution;
}

}  // namespace rdtp
