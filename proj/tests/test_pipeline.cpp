#include "support.hpp"

#include "rdtp/common.hpp"
#include "rdtp/evaluate.hpp"
#include "rdtp/pipeline.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

using namespace rdtp;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
};

Run cli(const std::string& args, const std::string& dir) {
    const std::string log = dir + "/.cli_out";
    const std::string cmd = std::string(RDTP_CLI_PATH) + " " + args + " > " + log + " 2>&1";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = fs::exists(log) ? read_file(log) : "";
    return r;
}

std::string toy_config() { return testing::toy_dir() + "/config.json"; }

}  // namespace

TEST_CASE("cli runs the bundled toy end to end") {
    const auto dir = testing::scratch_dir("cli_toy");
    const std::string work = dir + "/work";
    const Run first = cli("--config " + toy_config() + " --workdir " + work + " run all", dir);
    INFO(first.out);
    REQUIRE(first.code == 0);
    for (const char* f : {"factors.csv", "rds.csv", "slds.csv", "rtps.csv", "rtp_errors.csv", "ref.mps", "model.mps",
                          "ref.solution.csv", "model.solution.csv", "fixed.solution.csv", "report.csv",
                          "reconstruction.csv", "manifest.json"})
        CHECK_MESSAGE(fs::exists(work + "/" + f), f);
    const auto rows = parse_report_csv(read_file(work + "/report.csv"));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].case_label == "RDTP-ad");
    CHECK(rows[0].total_error >= -1e-2);

    const auto stamp = fs::last_write_time(work + "/report.csv");
    const Run again = cli("--config " + toy_config() + " --workdir " + work + " run all", dir);
    CHECK(again.code == 0);
    for (const char* s : {"ingest", "select-days", "select-points", "build-model", "solve", "evaluate"})
        CHECK(again.out.find(std::string(s) + ": up to date") != std::string::npos);
    CHECK(fs::last_write_time(work + "/report.csv") == stamp);

    const Run one = cli("--config " + toy_config() + " --workdir " + work + " select-days", dir);
    CHECK(one.code == 0);
    CHECK(one.out.find("select-days: up to date") != std::string::npos);
}

TEST_CASE("cli reports a missing stage dependency") {
    const auto dir = testing::scratch_dir("cli_dep");
    const Run r = cli("--config " + toy_config() + " --workdir " + dir + "/w select-points", dir);
    CHECK(r.code == 3);
    CHECK(r.out.find("select-points: missing rds.csv (run select-days first)") != std::string::npos);
}

TEST_CASE("cli rejects bad configs and flags") {
    const auto dir = testing::scratch_dir("cli_bad");
    std::string cfg = read_file(toy_config());
    cfg.replace(cfg.find("\"adaptive\""), 10, "\"greedy\"");
    const std::string p = dir + "/bad.json";
    write_file_atomic(p, cfg);
    CHECK(cli("--config " + p + " --workdir " + dir + "/w ingest", dir).code == 2);
    CHECK(cli("--config " + dir + "/absent.json ingest", dir).code == 2);
    CHECK(cli("--config " + toy_config() + " frobnicate", dir).code != 0);
}

TEST_CASE("cli solve on a standalone mps") {
    const auto dir = testing::scratch_dir("cli_solve");
    ModelArtifact m;
    const int x = m.add_continuous("x[1]", 0.0, 4.0);
    m.add_objective(x, -1.0);
    write_mps(m, dir + "/one.mps", dir + "/one.varmap.csv");
    const Run r = cli("solve --mps " + dir + "/one.mps --profile cbc --gap 1e-4 --timeout 30", dir);
    INFO(r.out);
    CHECK(r.code == 0);
    const auto sol = parse_solution_files(read_file(dir + "/one.solution.csv"), read_file(dir + "/one.solution.json"));
    CHECK(sol.value("x[1]") == doctest::Approx(4.0));
}

TEST_CASE("changing a point setting reruns only the later stages") {
    const auto dir = testing::scratch_dir("pipe_partial");
    PipelineConfig cfg = load_pipeline_config(toy_config());
    cfg.workdir = dir;
    cfg.planning.variant = Variant::RD;
    std::ostringstream log;
    Pipeline(cfg, log).run_all();
    CHECK(parse_report_csv(read_file(dir + "/report.csv"))[0].case_label == "RD");

    cfg.planning.variant = Variant::RDTP;
    cfg.mode = AllocationMode::Equal;
    std::ostringstream log2;
    Pipeline p(cfg, log2);
    CHECK(!p.run(Stage::Ingest));
    CHECK(!p.run(Stage::SelectDays));
    CHECK(p.run(Stage::SelectPoints));
    CHECK(p.run(Stage::BuildModel));
    CHECK(!p.run(Stage::BuildModel));
}

TEST_CASE("pipeline config parsing") {
    const std::string text = R"({
        "data": {"hourly_csv": "h.csv", "instance": "i.json"},
        "horizon_days": 14, "n_rd": 5, "r_avg": 6, "mode": "equal", "variant": "RD",
        "formulation": "PWC", "solver": {"profile": "cbc", "gap": 0.001}
    })";
    const PipelineConfig c = parse_pipeline_config(text, "/base");
    CHECK(c.hourly_csv == "/base/h.csv");
    CHECK(c.horizon_days == 14);
    CHECK(c.mode == AllocationMode::Equal);
    CHECK(c.planning.variant == Variant::RD);
    CHECK(c.planning.formulation == Formulation::PWC);
    CHECK(c.planning.operation_scale == doctest::Approx(365.0 / 14));
    CHECK(c.profile == "cbc");
    CHECK_THROWS_AS(parse_pipeline_config(R"({"data": {"hourly_csv": "h.csv"}})", "/"), DataError);
    PipelineConfig toy = load_pipeline_config(toy_config());
    toy.validate();
    toy.n_rd = 0;
    CHECK_THROWS_AS(toy.validate(), DataError);
    CHECK(parse_stage("select-points") == Stage::SelectPoints);
    CHECK_THROWS_AS(parse_stage("plot"), Error);
}
