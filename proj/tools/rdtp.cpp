// rdtp: representative days and time points for co-planning studies.
#include "rdtp/build_config.hpp"
#include "rdtp/common.hpp"
#include "rdtp/pipeline.hpp"
#include "rdtp/synthetic.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

struct Globals {
    std::string config = "rdtp.json";
    std::string workdir;
    std::uint64_t seed = 1;
};

rdtp::PipelineConfig load(const Globals& g) {
    rdtp::PipelineConfig c = rdtp::load_pipeline_config(g.config);
    if (!g.workdir.empty()) c.workdir = g.workdir;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Representative day and time point reduction for transmission, storage and wind co-planning"};
    app.set_version_flag("--version", RDTP_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config, "Pipeline config (JSON)");
    app.add_option("--workdir", g.workdir, "Working directory; overrides the config");
    app.add_option("--seed", g.seed, "Seed for synthetic data (clustering itself is deterministic)");

    std::optional<int> r_avg, r_min;
    std::optional<std::string> mode;
    std::string mps, profile = "highs";
    double gap = 1e-4, timeout = 3600.0;
    std::string stage = "all";
    rdtp::SyntheticOptions synth;
    std::string synth_out = "hourly.csv";

    auto* ingest = app.add_subcommand("ingest", "Load hourly data and write factors.csv");
    auto* days = app.add_subcommand("select-days", "Cluster days into RDs and map SLDs");
    auto* points = app.add_subcommand("select-points", "Select time points per RD");
    points->add_option("--r-avg", r_avg, "Average points per RD")->check(CLI::Range(2, 25));
    points->add_option("--r-min", r_min, "Minimum points per RD")->check(CLI::Range(2, 25));
    points->add_option("--mode", mode, "Allocation mode")->check(CLI::IsMember({"equal", "adaptive"}));
    auto* build = app.add_subcommand("build-model", "Write the reduced and reference MILPs");
    auto* solve = app.add_subcommand("solve", "Solve the built models, or one MPS file with --mps");
    solve->add_option("--mps", mps, "Solve this MPS file instead of the pipeline models");
    solve->add_option("--profile", profile, "Solver profile name or JSON file");
    solve->add_option("--gap", gap, "Relative MIP gap")->check(CLI::NonNegativeNumber);
    solve->add_option("--timeout", timeout, "Time limit in seconds")->check(CLI::PositiveNumber);
    auto* evaluate = app.add_subcommand("evaluate", "Re-solve the reference with fixed investments and report errors");
    auto* run = app.add_subcommand("run", "Run one stage or all stages");
    run->add_option("stage", stage, "Stage name or 'all'");
    auto* gen = app.add_subcommand("synth", "Write a synthetic hourly CSV");
    gen->add_option("--out", synth_out, "Output CSV");
    gen->add_option("--days", synth.days, "Days to generate")->check(CLI::Range(1, 365));
    gen->add_option("--peaks", synth.injected_peaks, "Injected peak days per area");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            synth.seed = g.seed;
            rdtp::write_file_atomic(synth_out, rdtp::synthetic_csv(synth));
            std::cout << "wrote " << synth_out << "\n";
            return 0;
        }
        if (solve->parsed() && !mps.empty()) {
            const auto sol = rdtp::solve_mps_file(mps, rdtp::resolve_profile(profile), gap, timeout, std::cout);
            return sol.has_solution() ? 0 : 1;
        }
        rdtp::PipelineConfig cfg = load(g);
        if (r_avg) cfg.r_avg = *r_avg;
        if (r_min) cfg.r_min = *r_min;
        if (mode) cfg.mode = rdtp::parse_allocation_mode(*mode);
        if (solve->parsed()) {
            if (solve->count("--profile")) cfg.profile = profile;
            if (solve->count("--gap")) cfg.gap = gap;
            if (solve->count("--timeout")) cfg.timeout = timeout;
        }
        rdtp::Pipeline pipeline(cfg, std::cout);
        if (ingest->parsed()) pipeline.run(rdtp::Stage::Ingest);
        if (days->parsed()) pipeline.run(rdtp::Stage::SelectDays);
        if (points->parsed()) pipeline.run(rdtp::Stage::SelectPoints);
        if (build->parsed()) pipeline.run(rdtp::Stage::BuildModel);
        if (solve->parsed()) pipeline.run(rdtp::Stage::Solve);
        if (evaluate->parsed()) pipeline.run(rdtp::Stage::Evaluate);
        if (run->parsed()) {
            if (stage == "all") {
                pipeline.run_all();
            } else {
                pipeline.run(rdtp::parse_stage(stage));
            }
        }
    } catch (const rdtp::DependencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rdtp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
