#include "rdtp/model.hpp"

#include "rdtp/common.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace rdtp {

int ModelArtifact::add_variable(std::string name, VarKind kind, double lb, double ub) {
    if (lb > ub) throw ModelError("variable " + name + ": lower bound above upper bound");
    const int idx = static_cast<int>(vars_.size());
    if (!by_name_.emplace(name, idx).second) throw ModelError("duplicate variable " + name);
    vars_.push_back({std::move(name), kind, lb, ub});
    obj_.push_back(0.0);
    return idx;
}

void ModelArtifact::add_objective(int var, double coef) { obj_.at(static_cast<std::size_t>(var)) += coef; }

int ModelArtifact::add_constraint(std::string name, std::string family, std::vector<Term> terms, Sense sense,
                                  double rhs) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (const auto& t : terms) {
        if (t.var < 0 || t.var >= n_variables()) throw ModelError("constraint " + name + " references an undeclared variable");
        if (!merged.empty() && merged.back().var == t.var)
            merged.back().coef += t.coef;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
    rows_.push_back({std::move(name), std::move(family), std::move(merged), sense, rhs});
    return static_cast<int>(rows_.size()) - 1;
}

int ModelArtifact::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

int ModelArtifact::index(const std::string& name) const {
    const int i = find(name);
    if (i < 0) throw ModelError("unknown variable " + name);
    return i;
}

void ModelArtifact::set_bounds(int var, double lb, double ub) {
    if (lb > ub) throw ModelError("variable " + vars_.at(static_cast<std::size_t>(var)).name + ": lower bound above upper bound");
    auto& v = vars_.at(static_cast<std::size_t>(var));
    v.lb = lb;
    v.ub = ub;
}

int ModelArtifact::n_binaries() const {
    return static_cast<int>(std::count_if(vars_.begin(), vars_.end(), [](const Variable& v) { return v.kind == VarKind::Binary; }));
}

std::map<std::string, int> ModelArtifact::family_counts() const {
    std::map<std::string, int> out;
    for (const auto& r : rows_) ++out[r.family];
    return out;
}

std::map<std::string, int> ModelArtifact::variable_counts() const {
    std::map<std::string, int> out;
    for (const auto& v : vars_) ++out[v.name.substr(0, v.name.find('['))];
    return out;
}

Eigen::SparseMatrix<double> ModelArtifact::matrix() const {
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& t : rows_[r].terms) trip.emplace_back(static_cast<int>(r), t.var, t.coef);
    Eigen::SparseMatrix<double> A(n_constraints(), n_variables());
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

double ModelArtifact::evaluate_objective(const std::vector<double>& x) const {
    if (x.size() != vars_.size()) throw ModelError("value vector size differs from the variable count");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += obj_[i] * x[i];
    return sum;
}

void ModelArtifact::validate() const {
    for (const auto& v : vars_) {
        if (v.lb > v.ub || std::isnan(v.lb) || std::isnan(v.ub)) throw ModelError("variable " + v.name + ": invalid bounds");
        if (v.kind == VarKind::Binary && (v.lb < 0.0 || v.ub > 1.0)) throw ModelError("binary " + v.name + ": bounds outside [0,1]");
    }
    for (double c : obj_)
        if (!std::isfinite(c)) throw ModelError("non-finite objective coefficient");
    for (const auto& r : rows_) {
        if (!std::isfinite(r.rhs)) throw ModelError("constraint " + r.name + ": non-finite right-hand side");
        for (const auto& t : r.terms) {
            if (t.var < 0 || t.var >= n_variables()) throw ModelError("constraint " + r.name + ": undeclared variable");
            if (!std::isfinite(t.coef)) throw ModelError("constraint " + r.name + ": non-finite coefficient");
        }
    }
}

std::string ModelArtifact::summary_json() const {
    nlohmann::ordered_json j;
    j["variables"] = n_variables();
    j["binaries"] = n_binaries();
    j["constraints"] = n_constraints();
    std::size_t nnz = 0;
    for (const auto& r : rows_) nnz += r.terms.size();
    j["nonzeros"] = nnz;
    j["constraint_families"] = family_counts();
    j["variable_groups"] = variable_counts();
    j["metadata"] = metadata;
    return j.dump(2) + "\n";
}

double violation(const Constraint& row, const std::vector<double>& x) {
    double lhs = 0.0;
    for (const auto& t : row.terms) lhs += t.coef * x[static_cast<std::size_t>(t.var)];
    switch (row.sense) {
        case Sense::LE: return lhs - row.rhs;
        case Sense::GE: return row.rhs - lhs;
        case Sense::EQ: return std::abs(lhs - row.rhs);
    }
    return 0.0;
}

}  // namespace rdtp
