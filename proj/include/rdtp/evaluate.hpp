#pragma once

#include "rdtp/breakpoints.hpp"
#include "rdtp/data.hpp"
#include "rdtp/days.hpp"
#include "rdtp/instance.hpp"
#include "rdtp/solver.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace rdtp {

/// 100 * (fhat - fstar) / fstar.
double cost_error(double fhat, double fstar);

/// Mean per-day objective of the selections.
double atae(const std::vector<SparseDaySelection>& selections);

struct PlanCosts {
    double investment = 0.0;  // CI
    double operation = 0.0;   // TCO
    double total() const { return investment + operation; }
};

/// CI recomputed from the investment values; TCO is the rest of the objective.
PlanCosts plan_costs(const PlanningInstance& instance, const SolutionRecord& sol);

struct ErrorReport {
    std::string case_label;
    double operation_error = 0.0;  // %
    double investment_error = 0.0;
    double total_error = 0.0;
    double cpu_s = 0.0;
};

/// Each error uses its own cost type as denominator; signs are kept.
ErrorReport compare_costs(const std::string& label, const PlanCosts& fhat, const PlanCosts& fstar, double cpu_s);

std::string report_csv(const std::vector<ErrorReport>& rows);
std::vector<ErrorReport> parse_report_csv(const std::string& text);

/// Reference model with Y, Ecap, Ccap and W fixed to the reduced solution's
/// values, re-optimized over every day and hour.
struct FixedResolve {
    ModelArtifact model;
    SolutionRecord solution;
};
FixedResolve fix_and_resolve(const PlanningInstance& instance, PlanningConfig config, const HourlyDataset& ds,
                             const SolutionRecord& reduced, const SolverProfile& profile, const std::string& workdir,
                             const std::string& stem, double gap = 1e-4, double timeout_seconds = 3600.0);

/// Fixes the investment columns of `model` to the values of `reduced`.
void fix_investments(ModelArtifact& model, const PlanningInstance& instance, const SolutionRecord& reduced);

/// Calendar series rebuilt from RD factors (rows like HourlyDataset::values).
/// Days follow the decoded SLDs when given, otherwise the membership map.
Eigen::MatrixXd reconstruction_series(const RepresentativeDaySet& rdset, const SLDSequence* slds = nullptr);

/// Root-mean-square difference between the original and rebuilt factors.
double reconstruction_rmse(const HourlyDataset& ds, const Eigen::MatrixXd& rebuilt);

/// `area,hour,original,reconstructed` with net load in MW.
std::string reconstruction_csv(const HourlyDataset& ds, const Eigen::MatrixXd& rebuilt, const PlanningInstance& instance);

}  // namespace rdtp
