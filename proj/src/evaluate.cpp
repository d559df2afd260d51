#include "rdtp/evaluate.hpp"

#include "rdtp/common.hpp"
#include "rdtp/coplan.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

namespace rdtp {

double cost_error(double fhat, double fstar) {
    if (!(fstar > 0.0)) throw ArgumentError("reference cost must be positive, got " + format_number(fstar));
    return 100.0 * (fhat - fstar) / fstar;
}

double atae(const std::vector<SparseDaySelection>& selections) {
    if (selections.empty()) throw ArgumentError("atae of an empty selection list");
    double s = 0.0;
    for (const auto& sel : selections) s += sel.objective;
    return s / static_cast<double>(selections.size());
}

PlanCosts plan_costs(const PlanningInstance& instance, const SolutionRecord& sol) {
    if (!sol.has_solution()) throw SolverError(std::string("no solution to cost (status ") + to_string(sol.status) + ")");
    PlanCosts c;
    c.investment = investment_cost(instance, sol.values);
    c.operation = sol.objective - c.investment;
    return c;
}

ErrorReport compare_costs(const std::string& label, const PlanCosts& fhat, const PlanCosts& fstar, double cpu_s) {
    ErrorReport r;
    r.case_label = label;
    r.operation_error = cost_error(fhat.operation, fstar.operation);
    r.investment_error = cost_error(fhat.investment, fstar.investment);
    r.total_error = cost_error(fhat.total(), fstar.total());
    r.cpu_s = cpu_s;
    return r;
}

std::string report_csv(const std::vector<ErrorReport>& rows) {
    std::string out = "case,operation_error,investment_error,total_error,cpu_s\n";
    for (const auto& r : rows)
        out += r.case_label + ',' + format_number(r.operation_error) + ',' + format_number(r.investment_error) + ',' +
               format_number(r.total_error) + ',' + format_number(r.cpu_s) + '\n';
    return out;
}

std::vector<ErrorReport> parse_report_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "case,operation_error,investment_error,total_error,cpu_s")
        throw DataError("report.csv: unexpected header");
    std::vector<ErrorReport> out;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto c = split(line, ',');
        if (c.size() != 5) throw DataError("report.csv: malformed row");
        out.push_back({c[0], parse_number(c[1]), parse_number(c[2]), parse_number(c[3]), parse_number(c[4])});
    }
    return out;
}

void fix_investments(ModelArtifact& model, const PlanningInstance& instance, const SolutionRecord& reduced) {
    for (const auto& name : investment_variable_names(instance)) {
        auto it = reduced.values.find(name);
        if (it == reduced.values.end()) throw ArgumentError("reduced solution lacks investment variable " + name);
        const int j = model.index(name);
        const auto& v = model.variables()[static_cast<std::size_t>(j)];
        double x = std::clamp(it->second, v.lb, v.ub);
        if (v.kind == VarKind::Binary) x = std::round(x);
        model.fix(j, x);
    }
}

FixedResolve fix_and_resolve(const PlanningInstance& instance, PlanningConfig config, const HourlyDataset& ds,
                             const SolutionRecord& reduced, const SolverProfile& profile, const std::string& workdir,
                             const std::string& stem, double gap, double timeout_seconds) {
    config.variant = Variant::REF;
    ModelInputs in;
    in.data = &ds;
    FixedResolve out;
    out.model = build_model(instance, config, in);
    fix_investments(out.model, instance, reduced);
    out.model.metadata["fixed_investments"] = "1";
    out.solution = solve_model(out.model, profile, workdir, stem, gap, timeout_seconds);
    if (out.solution.status == SolveStatus::Infeasible)
        throw ModelError("fixed investments are infeasible in the reference model");
    if (!out.solution.has_solution())
        throw SolverError("reference re-solve failed: " + out.solution.message);
    return out;
}

Eigen::MatrixXd reconstruction_series(const RepresentativeDaySet& rdset, const SLDSequence* slds) {
    const std::vector<int> labels = slds ? slds->decode() : rdset.membership;
    if (rdset.rds.empty()) throw ArgumentError("empty RD set");
    const auto rows = rdset.rds.front().points.rows();
    Eigen::MatrixXd out(rows, static_cast<Eigen::Index>(labels.size()) * kHoursPerDay);
    for (std::size_t d = 0; d < labels.size(); ++d) {
        const int rd = labels[d];
        if (rd < 0 || rd >= rdset.size()) throw ArgumentError("day mapped to unknown RD " + std::to_string(rd));
        out.middleCols(static_cast<Eigen::Index>(d) * kHoursPerDay, kHoursPerDay) =
            rdset.rds[static_cast<std::size_t>(rd)].points.leftCols(kHoursPerDay);
    }
    return out;
}

double reconstruction_rmse(const HourlyDataset& ds, const Eigen::MatrixXd& rebuilt) {
    if (rebuilt.rows() != ds.values.rows() || rebuilt.cols() != ds.values.cols())
        throw ArgumentError("reconstruction shape differs from the dataset");
    return std::sqrt((ds.values - rebuilt).squaredNorm() / static_cast<double>(rebuilt.size()));
}

std::string reconstruction_csv(const HourlyDataset& ds, const Eigen::MatrixXd& rebuilt, const PlanningInstance& instance) {
    if (rebuilt.rows() != ds.values.rows() || rebuilt.cols() != ds.values.cols())
        throw ArgumentError("reconstruction shape differs from the dataset");
    HourlyDataset alt = ds;
    alt.values = rebuilt;
    const Eigen::MatrixXd orig = net_load_matrix(ds, instance);
    const Eigen::MatrixXd rec = net_load_matrix(alt, instance);
    std::string out = "area,hour,original,reconstructed\n";
    for (Eigen::Index a = 0; a < orig.rows(); ++a)
        for (Eigen::Index h = 0; h < orig.cols(); ++h)
            out += ds.areas[static_cast<std::size_t>(a)] + ',' + std::to_string(h) + ',' + format_number(orig(a, h)) +
                   ',' + format_number(rec(a, h)) + '\n';
    return out;
}

}  // namespace rdtp
