#pragma once

#include <Eigen/SparseCore>

#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace rdtp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };
enum class Sense { LE, GE, EQ };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lb = 0.0;
    double ub = kInf;
};

struct Term {
    int var = 0;
    double coef = 0.0;
};

struct Constraint {
    std::string name;
    std::string family;
    std::vector<Term> terms;
    Sense sense = Sense::LE;
    double rhs = 0.0;
};

/// Solver-agnostic MILP: minimize c'x subject to linear rows and bounds.
class ModelArtifact {
public:
    int add_variable(std::string name, VarKind kind, double lb, double ub);
    int add_continuous(std::string name, double lb = 0.0, double ub = kInf) {
        return add_variable(std::move(name), VarKind::Continuous, lb, ub);
    }
    int add_binary(std::string name) { return add_variable(std::move(name), VarKind::Binary, 0.0, 1.0); }

    /// Adds to the objective coefficient of `var`.
    void add_objective(int var, double coef);
    /// Duplicate variables in `terms` are merged; zero coefficients dropped.
    int add_constraint(std::string name, std::string family, std::vector<Term> terms, Sense sense, double rhs);

    int find(const std::string& name) const;  // -1 when absent
    int index(const std::string& name) const; // throws when absent
    void set_bounds(int var, double lb, double ub);
    void fix(int var, double value) { set_bounds(var, value, value); }

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return rows_; }
    const std::vector<double>& objective() const { return obj_; }
    int n_variables() const { return static_cast<int>(vars_.size()); }
    int n_constraints() const { return static_cast<int>(rows_.size()); }
    int n_binaries() const;

    std::map<std::string, int> family_counts() const;
    /// Variable counts keyed by the name prefix before '['.
    std::map<std::string, int> variable_counts() const;

    Eigen::SparseMatrix<double> matrix() const;
    double evaluate_objective(const std::vector<double>& x) const;

    /// Declared-variable references, bound order, finite coefficients.
    void validate() const;

    std::map<std::string, std::string> metadata;

    /// Counts per constraint family and variable group plus metadata.
    std::string summary_json() const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
    std::vector<double> obj_;
    std::unordered_map<std::string, int> by_name_;
};

/// Residual of one constraint at `x`: positive means violated by that amount.
double violation(const Constraint& row, const std::vector<double>& x);

}  // namespace rdtp
