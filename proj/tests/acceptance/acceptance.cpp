// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "oracles.hpp"
#include "support.hpp"

#include "rdtp/breakpoints.hpp"
#include "rdtp/common.hpp"
#include "rdtp/coplan.hpp"
#include "rdtp/days.hpp"
#include "rdtp/evaluate.hpp"
#include "rdtp/pipeline.hpp"
#include "rdtp/solver.hpp"
#include "rdtp/synthetic.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace rdtp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Every solution obtained below is re-checked here for criterion 9.
struct Checked {
    std::string what;
    double max_violation;
};
std::vector<Checked> g_checked;

void recheck(const std::string& what, const ModelArtifact& m, const SolutionRecord& s) {
    if (!s.has_solution()) return;
    g_checked.push_back({what, check_feasibility(m, values_for(m, s)).max_violation});
}

const SolverProfile& highs() {
    static const SolverProfile p = builtin_profile("highs");
    return p;
}

// --- 1, 2, 3: time-point selection ----------------------------------------------

Outcome dp_vs_milp() {
    const auto t0 = Clock::now();
    const auto dir = testing::scratch_dir("acc_milp");
    const SolverProfile cbc = builtin_profile("cbc");
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> npts(3, 12), nser(1, 3);
    int solves = 0, bad = 0;
    double worst = 0.0;
    for (int day = 0; day < 25; ++day) {
        DayMatrix d;
        d.day_index = day;
        d.points = testing::random_day(rng, nser(rng), npts(rng));
        for (int r = 2; r <= d.n_points(); ++r) {
            const std::string stem = "d" + std::to_string(day) + "r" + std::to_string(r);
            const auto milp = emit_rtp_milp(d, r, 10.0, dir + "/" + stem + ".mps");
            std::ostringstream log;
            const SolutionRecord s = solve_mps_file(dir + "/" + stem + ".mps", cbc, 1e-9, 60, log);
            recheck("rtp " + stem, milp.model, s);
            ++solves;
            const double dp = optimal_breakpoints(d.points, r).objective;
            const double diff = s.has_solution() ? std::abs(s.objective - dp) : INFINITY;
            worst = std::max(worst, diff);
            if (!(diff <= 1e-6)) ++bad;
        }
    }
    const double secs = since(t0);
    return {bad == 0 && secs < 120.0, std::to_string(solves) + " MILP solves on 25 days, max |MILP - DP| " +
                                          fmt("%.2e", worst) + ", " + fmt("%.1f", secs) + " s (limit 120 s)"};
}

Outcome dp_vs_brute_force() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> npts(3, 10), nser(1, 3);
    int cases = 0, obj_bad = 0, sel_bad = 0;
    for (int inst = 0; inst < 100; ++inst) {
        Eigen::MatrixXd y = testing::random_day(rng, nser(rng), npts(rng));
        if (inst % 4 == 3) y = y.array().round();  // integer data forces ties
        for (int r = 2; r <= y.cols(); ++r) {
            const auto ex = testing::exhaustive_breakpoints(y, r);
            const auto dp = optimal_breakpoints(y, r);
            ++cases;
            if (std::abs(dp.objective - ex.objective) > 1e-9) ++obj_bad;
            if (dp.points != ex.points) ++sel_bad;
        }
    }
    const double secs = since(t0);
    return {obj_bad == 0 && sel_bad == 0 && secs < 60.0,
            std::to_string(cases) + " (instance, count) pairs, objective mismatches " + std::to_string(obj_bad) +
                ", selection mismatches " + std::to_string(sel_bad) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome greedy_minimax() {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> ndays(2, 12), nser(1, 4), ravg(4, 16);
    int worse = 0, rising = 0;
    double ad_sum = 0, eq_sum = 0;
    for (int set = 0; set < 50; ++set) {
        std::vector<DayMatrix> days;
        const int n = ndays(rng), s = nser(rng);
        for (int d = 0; d < n; ++d) days.push_back({d, testing::random_day(rng, s, 25)});
        const int r_avg = ravg(rng);
        const auto ad = allocate_rtps(days, r_avg, std::min(4, r_avg), AllocationMode::Adaptive);
        const auto eq = allocate_rtps(days, r_avg, std::min(4, r_avg), AllocationMode::Equal);
        double mad = 0, meq = 0;
        for (const auto& x : ad.selections) mad = std::max(mad, x.objective);
        for (const auto& x : eq.selections) meq = std::max(meq, x.objective);
        if (mad > meq + 1e-12) ++worse;
        for (std::size_t i = 1; i < ad.max_error_trace.size(); ++i)
            if (ad.max_error_trace[i] > ad.max_error_trace[i - 1] + 1e-12) ++rising;
        ad_sum += atae(ad.selections);
        eq_sum += atae(eq.selections);
    }
    return {worse == 0 && rising == 0, "50 RD sets: adaptive max > equal max in " + std::to_string(worse) +
                                           ", rising trace steps " + std::to_string(rising) + "; mean ATAE adaptive " +
                                           fmt("%.4f", ad_sum / 50) + " vs equal " + fmt("%.4f", eq_sum / 50)};
}

// --- 4: cost envelope ----------------------------------------------------------------

Outcome envelope() {
    const auto v = envelope_cost(2.0, 0.0, tangent_points(10.0, 5), 0.0, 10.0, 1.0);
    const double err100 = std::abs(v.total() - 100.0 / 3.0);

    // The same value as an LP optimum over the emitted tangent rows.
    ModelArtifact m;
    ThermalGenerator g{"g", 0, 2.0, 0.0, 10.0, 100.0};
    const int p0 = m.add_continuous("P0", 0, 0), p1 = m.add_continuous("P1", 10, 10);
    build_gen_cost_block(m, g, "[g.d0.t0]", p0, p1, 1.0, 5, 1.0);
    const auto dir = testing::scratch_dir("acc_env");
    const SolutionRecord s = solve_model(m, builtin_profile("cbc"), dir, "env", 0.0, 30);
    recheck("envelope lp", m, s);
    const double lp_err = s.has_solution() ? std::abs(s.objective - 100.0 / 3.0) : INFINITY;

    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int above = 0;
    for (int i = 0; i < 1000; ++i) {
        const double a = 0.2 * u(rng), b = 60 * u(rng), pmax = 20 + 400 * u(rng), dt = 0.5 + 5 * u(rng);
        const int K = 2 + static_cast<int>(rng() % 8);
        const double x0 = pmax * u(rng), x1 = pmax * u(rng);
        const double env = envelope_cost(a, b, tangent_points(pmax, K), x0, x1, dt).total();
        const double exact = exact_interval_cost(a, b, x0, x1, dt);
        if (env > exact + 1e-9 * (1 + std::abs(exact))) ++above;
    }

    // Largest gap over a fixed 41 x 41 grid, for K = 2..9.
    std::vector<double> gaps;
    for (int K = 2; K <= 9; ++K) {
        double gmax = 0;
        for (int i = 0; i <= 40; ++i)
            for (int j = 0; j <= 40; ++j) {
                const double x0 = 10.0 * i / 40, x1 = 10.0 * j / 40;
                gmax = std::max(gmax, exact_interval_cost(2.0, 1.0, x0, x1, 1.0) -
                                          envelope_cost(2.0, 1.0, tangent_points(10.0, K), x0, x1, 1.0).total());
            }
        gaps.push_back(gmax);
    }
    bool monotone = true;
    for (std::size_t k = 1; k < gaps.size(); ++k) monotone = monotone && gaps[k] <= gaps[k - 1] + 1e-12;
    std::string gl;
    for (double x : gaps) gl += (gl.empty() ? "" : " ") + fmt("%.3f", x);
    return {err100 <= 1e-9 && lp_err <= 1e-6 && above == 0 && monotone,
            "ramp 0->10: closed form off by " + fmt("%.1e", err100) + ", LP off by " + fmt("%.1e", lp_err) +
                "; 1000 samples above exact: " + std::to_string(above) + "; grid max gap K=2..9: " + gl};
}

// --- shared toy study -----------------------------------------------------------------

PlanningInstance storage_toy() {
    PlanningInstance inst = testing::toy_instance();
    // Cheap storage so the storage rows carry real energy.
    for (auto& s : inst.storage) {
        s.cost_energy = 5.0;
        s.cost_power = 20.0;
    }
    return inst;
}

HourlyDataset toy_days(int days, std::uint64_t seed, int peaks = 0) {
    SyntheticOptions opt;
    opt.days = days;
    opt.seed = seed;
    opt.injected_peaks = peaks;
    return synthetic_dataset(opt);
}

PlanningConfig scaled(int days, Variant v) {
    PlanningConfig c;
    c.operation_scale = 365.0 / days;
    c.variant = v;
    return c;
}

std::vector<SparseDaySelection> full_selections(const RepresentativeDaySet& rd) {
    std::vector<SparseDaySelection> out;
    for (int d = 0; d < rd.size(); ++d) {
        SparseDaySelection s;
        s.rd_index = d;
        for (int t = 0; t < kPointsPerDay; ++t) s.points.push_back(t);
        s.requested = kPointsPerDay;
        out.push_back(finalize_selection(s));
    }
    return out;
}

double val(const SolutionRecord& s, const std::string& n) { return s.values.at(n); }

// --- 5: storage chronology ----------------------------------------------------------

Outcome storage_closure() {
    const auto dir = testing::scratch_dir("acc_storage");
    const PlanningInstance inst = storage_toy();
    const int H = 7;
    const HourlyDataset ds = toy_days(H, 5);
    auto rd = cluster_days(slice_days(ds), 2, {});
    rd.areas = ds.areas;
    const SLDSequence slds = map_slds(rd);

    const ModelArtifact rdm = build_model(inst, scaled(H, Variant::RD), {nullptr, &rd, &slds});
    const SolutionRecord rs = solve_model(rdm, highs(), dir, "rd", 1e-4, 300);
    recheck("storage RD", rdm, rs);
    if (!rs.has_solution()) return {false, "RD model not solved: " + rs.message};

    // LE recursion with E^tot rebuilt from the charge and discharge profile.
    double rec_err = 0.0, used = 0.0;
    for (const auto& st : inst.storage) {
        used = std::max(used, val(rs, "Ecap[" + st.name + "]"));
        std::vector<double> etot(static_cast<std::size_t>(rd.size()), 0.0);
        for (int d = 0; d < rd.size(); ++d)
            for (int t = 0; t < 24; ++t) {
                auto at = [&](const char* v, int k) {
                    return val(rs, std::string(v) + "[" + st.name + ".d" + std::to_string(d) + ".t" + std::to_string(k) + "]");
                };
                etot[static_cast<std::size_t>(d)] += 0.5 * st.eta_charge * (at("PC", t) + at("PC", t + 1)) -
                                                     0.5 / st.eta_discharge * (at("PD", t) + at("PD", t + 1));
            }
        const std::size_t SD = slds.blocks.size();
        for (std::size_t sd = 0; sd < SD; ++sd) {
            const double le = val(rs, "LE[" + st.name + ".sd" + std::to_string(sd) + "]");
            const double next = val(rs, "LE[" + st.name + ".sd" + std::to_string((sd + 1) % SD) + "]");
            const auto& b = slds.blocks[sd];
            rec_err = std::max(rec_err, std::abs(next - le - b.repetitions * etot[static_cast<std::size_t>(b.rd)]));
        }
    }

    const ModelArtifact ref = build_model(inst, scaled(H, Variant::REF), {&ds});
    const SolutionRecord fs_ = solve_model(ref, highs(), dir, "ref", 1e-4, 300);
    recheck("storage REF", ref, fs_);
    if (!fs_.has_solution()) return {false, "REF model not solved: " + fs_.message};
    double bal_err = 0.0, throughput = 0.0;
    for (const auto& st : inst.storage) {
        double net = 0.0;
        for (int d = 0; d < H; ++d)
            for (int t = 0; t < 24; ++t) {
                auto at = [&](const char* v, int k) {
                    return val(fs_, std::string(v) + "[" + st.name + ".d" + std::to_string(d) + ".t" + std::to_string(k) + "]");
                };
                const double c = 0.5 * (at("PC", t) + at("PC", t + 1)), x = 0.5 * (at("PD", t) + at("PD", t + 1));
                net += st.eta_charge * c - x / st.eta_discharge;
                throughput += st.eta_charge * c;
            }
        bal_err = std::max(bal_err, std::abs(net));
    }
    return {rec_err <= 1e-6 && bal_err <= 1e-6 && used > 0 && throughput > 0,
            "RD (2 RDs, " + std::to_string(slds.blocks.size()) + " SLDs, max Ecap " + fmt("%.1f", used) +
                " MWh): LE recursion residual " + fmt("%.1e", rec_err) + "; REF yearly charge-discharge balance " +
                fmt("%.1e", bal_err) + " MWh over " + fmt("%.0f", throughput) + " MWh stored"};
}

// --- 6: RDTP with every point equals RD --------------------------------------------------

Outcome variant_consistency() {
    const auto dir = testing::scratch_dir("acc_variant");
    const PlanningInstance inst = testing::toy_instance();
    const int H = 7;
    const HourlyDataset ds = toy_days(H, 7);
    auto rd = cluster_days(slice_days(ds), 4, find_extreme_days(ds, inst));
    rd.areas = ds.areas;
    const SLDSequence slds = map_slds(rd);
    const auto sel = full_selections(rd);
    const ModelArtifact a = build_model(inst, scaled(H, Variant::RD), {nullptr, &rd, &slds});
    const ModelArtifact b = build_model(inst, scaled(H, Variant::RDTP), {nullptr, &rd, &slds, &sel});
    const SolutionRecord sa = solve_model(a, highs(), dir, "rd", 1e-5, 300);
    const SolutionRecord sb = solve_model(b, highs(), dir, "rdtp", 1e-5, 300);
    recheck("RD", a, sa);
    recheck("RDTP r=25", b, sb);
    if (!sa.has_solution() || !sb.has_solution()) return {false, "a model was not solved"};
    const double rel = std::abs(sa.objective - sb.objective) / std::abs(sa.objective);
    const bool same_text = mps_text(a) == mps_text(b);
    return {rel <= 1e-4, "RD " + fmt("%.2f", sa.objective) + " vs RDTP(r=25) " + fmt("%.2f", sb.objective) +
                             ", relative gap " + fmt("%.1e", rel) + " (limit 1e-4); MPS text identical: " +
                             (same_text ? "yes" : "no")};
}

// --- 7: error metric on the toy and on peaky synthetic years --------------------------

std::string toy_config() { return testing::toy_dir() + "/config.json"; }

ErrorReport pipeline_case(Variant v, AllocationMode mode, const std::string& workdir) {
    PipelineConfig cfg = load_pipeline_config(toy_config());
    cfg.workdir = workdir;
    cfg.planning.variant = v;
    cfg.mode = mode;
    std::ostringstream log;
    Pipeline(cfg, log).run_all();
    return parse_report_csv(read_file(workdir + "/report.csv")).at(0);
}

double fixed_total_error(const PlanningInstance& inst, const PlanningConfig& ref_cfg, const HourlyDataset& ds,
                         const PlanCosts& ref_cost, const ModelArtifact& reduced, const std::string& dir,
                         const std::string& stem) {
    const SolutionRecord s = solve_model(reduced, highs(), dir, stem, 1e-4, 600);
    recheck(stem, reduced, s);
    if (!s.has_solution()) throw SolverError(stem + " not solved");
    const auto fixed = fix_and_resolve(inst, ref_cfg, ds, s, highs(), dir, stem + "_fixed", 1e-4, 600);
    recheck(stem + " fixed", fixed.model, fixed.solution);
    return compare_costs(stem, plan_costs(inst, fixed.solution), ref_cost, 0).total_error;
}

Outcome error_metric() {
    const auto dir = testing::scratch_dir("acc_errors");
    const double gap_pct = 1e-4 * 100;
    const ErrorReport ref = pipeline_case(Variant::REF, AllocationMode::Adaptive, dir + "/ref");
    const ErrorReport rdr = pipeline_case(Variant::RD, AllocationMode::Adaptive, dir + "/rd");
    const ErrorReport ad = pipeline_case(Variant::RDTP, AllocationMode::Adaptive, dir + "/ad");
    const ErrorReport eq = pipeline_case(Variant::RDTP, AllocationMode::Equal, dir + "/eq");
    const bool ref_zero = std::abs(ref.total_error) <= gap_pct && std::abs(ref.investment_error) <= gap_pct &&
                          std::abs(ref.operation_error) <= gap_pct;
    bool reduced_ok = true;
    std::string toy;
    for (const auto* r : {&rdr, &ad, &eq}) {
        reduced_ok = reduced_ok && r->total_error >= -gap_pct;
        toy += " " + r->case_label + " " + fmt("%.3f", r->total_error) + "%";
    }

    // Extreme-day preservation on ten synthetic two-week sets with injected peaks.
    const PlanningInstance inst = testing::toy_instance();
    const int H = 14;
    int wins = 0;
    std::string pairs;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const HourlyDataset ds = toy_days(H, 1000 + seed, 1);
        const PlanningConfig rc = scaled(H, Variant::REF);
        const ModelArtifact refm = build_model(inst, rc, {&ds});
        const std::string sd = dir + "/s" + std::to_string(seed);
        const SolutionRecord rs = solve_model(refm, highs(), sd, "ref", 1e-4, 600);
        recheck("seed ref", refm, rs);
        if (!rs.has_solution()) return {false, "reference of seed " + std::to_string(seed) + " not solved"};
        const PlanCosts rcost = plan_costs(inst, rs);
        const auto days = slice_days(ds);
        const auto extreme = find_extreme_days(ds, inst);
        double err[2];
        for (int keep = 0; keep < 2; ++keep) {
            auto rd = cluster_days(days, 4, keep ? extreme : std::set<int>{});
            rd.areas = ds.areas;
            const SLDSequence slds = map_slds(rd);
            const ModelArtifact m = build_model(inst, scaled(H, Variant::RD), {nullptr, &rd, &slds});
            err[keep] = fixed_total_error(inst, rc, ds, rcost, m, sd, keep ? "rd_ext" : "rd_plain");
        }
        if (err[1] <= err[0] + gap_pct) ++wins;
        pairs += " " + fmt("%.2f", err[1]) + "/" + fmt("%.2f", err[0]);
    }
    return {ref_zero && reduced_ok && wins == 10,
            "toy: REF errors (" + fmt("%.1e", ref.operation_error) + ", " + fmt("%.1e", ref.investment_error) + ", " +
                fmt("%.1e", ref.total_error) + ") %, totals" + toy + "; extreme-preserving <= plain in " +
                std::to_string(wins) + "/10 (total % with/without:" + pairs + ")"};
}

// --- 8 ----------------------------------------------------------------------------------

Outcome arithmetic() {
    const double e = cost_error(2807.53e6, 2797.8e6);
    return {std::abs(e - 0.348) <= 0.001, "cost_error(2807.53e6, 2797.8e6) = " + fmt("%.5f", e) + " %"};
}

// --- 10: determinism ---------------------------------------------------------------------

std::string mask_cpu(const std::string& report) {
    std::istringstream in(report);
    std::string out, line;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
}

Outcome determinism() {
    const auto dir = testing::scratch_dir("acc_det");
    PipelineConfig cfg = load_pipeline_config(toy_config());
    std::vector<std::string> work{dir + "/a", dir + "/b"};
    for (const auto& w : work) {
        cfg.workdir = w;
        std::ostringstream log;
        Pipeline(cfg, log).run_all();
    }
    int files = 0;
    std::vector<std::string> differ;
    for (const auto& e : fs::recursive_directory_iterator(work[0])) {
        if (!e.is_regular_file()) continue;
        const std::string rel = fs::relative(e.path(), work[0]).string();
        if (rel.rfind("logs/", 0) == 0 || rel == "timings.json") continue;
        ++files;
        const std::string other = work[1] + "/" + rel;
        if (!fs::exists(other)) {
            differ.push_back(rel);
            continue;
        }
        std::string x = read_file(e.path().string()), y = read_file(other);
        if (rel == "report.csv") {
            x = mask_cpu(x);
            y = mask_cpu(y);
        }
        if (x != y) differ.push_back(rel);
    }

    // Stand-alone re-check of the pipeline's stored solutions for criterion 9.
    for (const char* stem : {"ref", "model", "fixed"}) {
        const std::string b = work[0] + "/" + stem;
        if (!fs::exists(b + ".mps")) continue;
        const NameMap names = parse_varmap_csv(read_file(b + ".varmap.csv"));
        const ModelArtifact m = parse_mps(read_file(b + ".mps"), &names);
        recheck(std::string("pipeline ") + stem,
                m, parse_solution_files(read_file(b + ".solution.csv"), read_file(b + ".solution.json")));
    }

    std::string d;
    for (const auto& f : differ) d += " " + f;
    return {files > 0 && differ.empty(), std::to_string(files) +
                                             " artifacts compared (logs/ and timings.json skipped, report.csv cpu_s "
                                             "masked), differing:" + (d.empty() ? " none" : d)};
}

Outcome feasibility() {
    double worst = 0.0;
    std::string who;
    int bad = 0;
    for (const auto& c : g_checked) {
        if (c.max_violation > worst) {
            worst = c.max_violation;
            who = c.what;
        }
        if (c.max_violation > 1e-6) ++bad;
    }
    return {!g_checked.empty() && bad == 0, std::to_string(g_checked.size()) + " solutions re-checked, " +
                                                std::to_string(bad) + " above 1e-6, worst " + fmt("%.1e", worst) +
                                                (who.empty() ? "" : " (" + who + ")")};
}

}  // namespace

// Usage: rdtp_acceptance [--known-red N]... [N]...
// Bare numbers restrict the run. A known-red criterion still prints FAIL but does not fail the exit
// status; if it passes, the exit status is nonzero so the marker gets removed.
int main(int argc, char** argv) {
    std::set<int> only, known_red;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--known-red" && i + 1 < argc)
            known_red.insert(std::atoi(argv[++i]));
        else
            only.insert(std::atoi(argv[i]));
    }
    const std::vector<std::pair<int, std::function<Outcome()>>> order{
        {1, dp_vs_milp},  {2, dp_vs_brute_force}, {3, greedy_minimax}, {4, envelope},    {5, storage_closure},
        {6, variant_consistency}, {7, error_metric}, {8, arithmetic},  {10, determinism}, {9, feasibility}};
    std::map<int, std::string> lines;
    bool all = true;
    for (const auto& [id, fn] : order) {
        if (!only.empty() && !only.count(id) && id != 9) continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && (known_red.count(id) ? !o.pass : o.pass);
        lines[id] = "criterion " + std::to_string(id) + ": " + (o.pass ? "PASS" : "FAIL") +
                    (known_red.count(id) ? " (known red)" : "") + "  " + o.detail + "  [" +
                    fmt("%.1f", since(t0)) + " s]";
    }
    std::ofstream report("acceptance_report.txt");
    for (const auto& [id, l] : lines) {
        std::cout << l << "\n";
        report << l << "\n";
    }
    return all ? 0 : 1;
}
