#include "support.hpp"

#include "rdtp/common.hpp"
#include "rdtp/coplan.hpp"
#include "rdtp/solver.hpp"
#include "rdtp/synthetic.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace rdtp;

namespace {

ModelArtifact tiny() {
    ModelArtifact m;
    const int x = m.add_continuous("x", 0.0, 10.0);
    m.add_objective(x, 1.0);
    m.add_constraint("c", "demo", {{x, 1.0}}, Sense::GE, 2.0);
    return m;
}

ModelArtifact small_milp() {
    ModelArtifact m;
    const int a = m.add_binary("pick[a]");
    const int b = m.add_binary("pick[b]");
    const int z = m.add_continuous("z", -kInf, kInf);
    m.add_objective(a, -3.0);
    m.add_objective(b, -2.0);
    m.add_objective(z, 1.0);
    m.add_constraint("cap", "demo", {{a, 2.0}, {b, 2.0}}, Sense::LE, 3.0);
    m.add_constraint("floor", "demo", {{z, 1.0}}, Sense::GE, -1.5);
    return m;
}

}  // namespace

TEST_CASE("mps golden file") {
    CHECK(mps_text(tiny()) == read_file(std::string(RDTP_TEST_DATA) + "/tiny.mps"));
    CHECK(mps_text(tiny()) == mps_text(tiny()));
}

TEST_CASE("mps free column and round trip") {
    const ModelArtifact m = small_milp();
    const std::string text = mps_text(m);
    CHECK(text.find(" FR BND       C0000002") != std::string::npos);
    CHECK(text.find(" BV BND       C0000000") != std::string::npos);

    const NameMap names = make_name_map(m);
    const ModelArtifact back = parse_mps(text, &names);
    CHECK(back.n_variables() == m.n_variables());
    CHECK(back.n_binaries() == 2);
    CHECK(back.matrix().isApprox(m.matrix()));
    CHECK(back.objective() == m.objective());
    for (int j = 0; j < m.n_variables(); ++j) {
        CHECK(back.variables()[j].name == m.variables()[j].name);
        CHECK(back.variables()[j].lb == m.variables()[j].lb);
        CHECK(back.variables()[j].ub == m.variables()[j].ub);
    }
    CHECK(parse_varmap_csv(varmap_csv(names)).columns == names.columns);
}

TEST_CASE("toy model mps is byte stable") {
    const PlanningInstance inst = testing::toy_instance();
    PlanningConfig cfg;
    const HourlyDataset ds = testing::flat_dataset(2, 0.8, 0.3);
    const ModelArtifact a = build_model(inst, cfg, {&ds});
    const ModelArtifact b = build_model(inst, cfg, {&ds});
    CHECK(mps_text(a) == mps_text(b));
    const NameMap names = make_name_map(a);
    CHECK(parse_mps(mps_text(a), &names).matrix().isApprox(a.matrix()));
}

TEST_CASE("parse generic solutions") {
    const ModelArtifact m = small_milp();
    const NameMap names = make_name_map(m);
    SUBCASE("two lines") {
        const auto rec = parse_solution("x 1\ny 2.5\n", SolutionFormat::Generic, NameMap{});
        CHECK(rec.values.size() == 2);
        CHECK(rec.value("y") == 2.5);
    }
    SUBCASE("codes restored and binaries snapped") {
        const auto rec = parse_solution("# status optimal\nC0000000 0.9999995\nC0000002 -1.5\n", SolutionFormat::Generic,
                                        names, &m);
        CHECK(rec.value("pick[a]") == 1.0);
        CHECK(rec.value("z") == -1.5);
        CHECK(rec.value("pick[b]") == 0.0);
        CHECK(rec.missing == 1);
        CHECK(rec.objective == doctest::Approx(-4.5));
    }
    SUBCASE("fractional binary") {
        CHECK_THROWS_AS(parse_solution("C0000000 0.5\n", SolutionFormat::Generic, names, &m), SolverError);
    }
    SUBCASE("malformed") {
        CHECK_THROWS_AS(parse_solution("C0000000 1 2\n", SolutionFormat::Generic, names, &m), SolverError);
    }
}

TEST_CASE("parse cbc solutions") {
    const ModelArtifact m = small_milp();
    const NameMap names = make_name_map(m);
    const std::string text =
        "Optimal - objective value -4.50000000\n"
        "      0 C0000000                   1                      -3\n"
        "      2 C0000002                -1.5                       1\n";
    const auto rec = parse_solution(text, SolutionFormat::Cbc, names, &m);
    CHECK(rec.status == SolveStatus::Optimal);
    CHECK(rec.objective == -4.5);
    CHECK(rec.value("pick[a]") == 1.0);
    CHECK(parse_solution("Infeasible - objective value 0\n", SolutionFormat::Cbc, names, &m).status ==
          SolveStatus::Infeasible);
}

TEST_CASE("external solvers") {
    for (const std::string profile : {"highs", "cbc"}) {
        CAPTURE(profile);
        const auto dir = testing::scratch_dir("solve_" + profile);
        const SolverProfile p = builtin_profile(profile);

        const ModelArtifact m = small_milp();
        const auto rec = solve_model(m, p, dir, "milp", 1e-6, 60);
        REQUIRE(rec.status == SolveStatus::Optimal);
        CHECK(rec.objective == doctest::Approx(-4.5));
        CHECK(rec.value("pick[a]") == 1.0);
        CHECK(rec.value("pick[b]") == 0.0);
        CHECK(check_feasibility(m, values_for(m, rec)).ok());
        CHECK(m.evaluate_objective(values_for(m, rec)) == doctest::Approx(rec.objective).epsilon(1e-6));

        ModelArtifact bad = tiny();
        bad.add_constraint("d", "demo", {{0, 1.0}}, Sense::LE, 1.0);
        CHECK(solve_model(bad, p, dir, "bad", 1e-4, 60).status == SolveStatus::Infeasible);
    }
}

TEST_CASE("time limit is honoured") {
    const auto dir = testing::scratch_dir("timeout");
    const PlanningInstance inst = testing::toy_instance();
    PlanningConfig cfg;
    cfg.operation_scale = 365.0 / 60;
    SyntheticOptions opt;
    opt.days = 60;
    const HourlyDataset ds = synthetic_dataset(opt);
    const ModelArtifact m = build_model(inst, cfg, {&ds});
    const auto rec = solve_model(m, builtin_profile("highs"), dir, "big", 0.0, 1.0);
    CHECK((rec.status == SolveStatus::FeasibleGap || rec.status == SolveStatus::Error));
    CHECK(rec.wall_seconds < 1.0 + 5.0 + 1.0);
}

TEST_CASE("missing binary and env override") {
    const auto dir = testing::scratch_dir("nobin");
    write_mps(tiny(), dir + "/t.mps");
    SolverProfile p = builtin_profile("cbc");
    p.binary = "/nonexistent/cbc";
    CHECK_THROWS_WITH_AS(invoke_solver(dir + "/t.mps", p, 1e-4, 10, dir + "/t.sol", dir + "/t.log"),
                         "solver binary not found: /nonexistent/cbc", SolverError);
    ::setenv(kSolverBinaryEnv, RDTP_CBC_BINARY, 1);
    const auto raw = invoke_solver(dir + "/t.mps", p, 1e-4, 10, dir + "/t.sol", dir + "/t.log");
    ::unsetenv(kSolverBinaryEnv);
    CHECK(raw.exit_code == 0);
    CHECK(parse_solution(raw, make_name_map(tiny()), nullptr).value("x") == doctest::Approx(2.0));
}

TEST_CASE("profile json") {
    const auto p = parse_profile_json(
        R"({"name": "mine", "binary": "/bin/true", "command": ["{bin}", "{mps}"], "format": "generic"})");
    CHECK(p.name == "mine");
    CHECK(p.command.size() == 2);
    CHECK(p.format == SolutionFormat::Generic);
    CHECK_THROWS_AS(builtin_profile("cplex"), SolverError);
}

TEST_CASE("feasibility re-check") {
    const ModelArtifact m = small_milp();
    CHECK(check_feasibility(m, {1, 0, -1.5}).ok());
    const auto rep = check_feasibility(m, {1, 1, -1.5});
    CHECK(!rep.ok());
    CHECK(rep.worst == "cap");
    CHECK(rep.max_violation == doctest::Approx(1.0));
}
