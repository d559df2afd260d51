#pragma once

#include "rdtp/breakpoints.hpp"
#include "rdtp/data.hpp"
#include "rdtp/days.hpp"
#include "rdtp/instance.hpp"
#include "rdtp/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <string>
#include <vector>

namespace rdtp {

// --- Scalar kernels ----------------------------------------------------------

/// Tangent levels pi_k = (k-1)/(K-1) * pg_max, k = 1..K.
template <typename S>
std::vector<S> tangent_points(S pg_max, int K) {
    std::vector<S> out;
    out.reserve(static_cast<std::size_t>(std::max(K, 0)));
    for (int k = 0; k < K; ++k) out.push_back(K == 1 ? S(0) : S(k) / S(K - 1) * pg_max);
    return out;
}

/// Trapezoid energy of a linear power ramp over `delta` hours.
template <typename S>
S interval_energy(S p0, S p1, S delta) {
    return S(0.5) * delta * (p0 + p1);
}

template <typename S>
S quadratic_cost(S a, S b, S p) {
    return S(0.5) * a * p * p + b * p;
}

/// Exact cost of the quadratic curve integrated along a linear ramp.
template <typename S>
S exact_interval_cost(S a, S b, S p0, S p1, S delta) {
    const S d = p0 - p1;
    return delta * (quadratic_cost(a, b, S(0.5) * (p0 + p1)) + a / S(24) * d * d);
}

template <typename S>
struct EnvelopeValue {
    S first{};   // average-power term
    S second{};  // ramp term
    S total() const { return first + second; }
};

/// Smallest CG1, CG2 satisfying the tangent rows at (p0, p1).
template <typename S>
EnvelopeValue<S> envelope_cost(S a, S b, const std::vector<S>& tangents, S p0, S p1, S delta) {
    EnvelopeValue<S> v;
    bool first = true;
    for (const S& pi : tangents) {
        const S c1 = delta * ((a * pi + b) * S(0.5) * (p0 + p1) - S(0.5) * a * pi * pi);
        const S slope = a * pi / S(12) * (p0 - p1);
        const S c2 = delta * (std::max(slope, -slope) - a * pi * pi / S(24));
        v.first = first ? c1 : std::max(v.first, c1);
        v.second = first ? c2 : std::max(v.second, c2);
        first = false;
    }
    return v;
}

// --- Model building ------------------------------------------------------------

/// Factors of one modeled day at its time points, rows indexed by instance area.
struct DayProfile {
    std::string tag;                // name component, e.g. "d3"
    double weight = 1.0;            // omega_d
    std::vector<double> durations;  // hours between consecutive points
    Eigen::MatrixXd load;           // areas x points
    Eigen::MatrixXd wind;           // areas x points

    int n_points() const { return static_cast<int>(load.cols()); }
};

/// One full-resolution profile per calendar day.
std::vector<DayProfile> reference_profiles(const HourlyDataset& ds, const PlanningInstance& instance);
/// One profile per RD, restricted to the selected points when given.
std::vector<DayProfile> representative_profiles(const RepresentativeDaySet& rdset,
                                                const std::vector<SparseDaySelection>* selections,
                                                const PlanningInstance& instance);

struct InvestmentVars {
    std::vector<int> y, ecap, ccap, w;
};

/// Absolute keeps 0 <= E <= Ecap; Relative tracks E against the start of the day.
enum class StorageMode { Absolute, Relative };

/// Column indices of one day. Power matrices are entity x point (PWL) or
/// entity x interval (PWC); E is always entity x point.
struct DayVars {
    Eigen::MatrixXi pg, pr, ps, pw, px, pc, pd, u, e, th, pn, fe, fn;
    std::vector<int> etot, elow, ehigh;
};

/// Investment columns, their cost in the objective, and rows 6a and 6c.
InvestmentVars build_investment(ModelArtifact& m, const PlanningInstance& instance, const PlanningConfig& config);

/// CG1 and CG2 with their tangent rows for one PWL interval; both enter the
/// objective with coefficient `weight`.
std::pair<int, int> build_gen_cost_block(ModelArtifact& m, const ThermalGenerator& g, const std::string& key,
                                         int pg_t, int pg_t1, double delta, int K, double weight);
/// Single CG with tangents of the instantaneous cost, for one PWC interval.
int build_gen_cost_block_pwc(ModelArtifact& m, const ThermalGenerator& g, const std::string& key, int pg,
                             double delta, int K, double weight);

DayVars build_operations_day(ModelArtifact& m, const PlanningInstance& instance, const PlanningConfig& config,
                             const DayProfile& day, const InvestmentVars& inv, StorageMode storage);

struct ModelInputs {
    const HourlyDataset* data = nullptr;  // REF
    const RepresentativeDaySet* rdset = nullptr;
    const SLDSequence* slds = nullptr;
    const std::vector<SparseDaySelection>* selections = nullptr;  // RDTP
};

ModelArtifact build_model(const PlanningInstance& instance, const PlanningConfig& config, const ModelInputs& inputs);

/// CI evaluated at investment values read by canonical name.
double investment_cost(const PlanningInstance& instance, const std::map<std::string, double>& values);
std::vector<std::string> investment_variable_names(const PlanningInstance& instance);

}  // namespace rdtp
