#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace rdtp {

struct Bus {
    std::string name;
    int area = 0;
};

struct Load {
    std::string name;
    int bus = 0;
    double peak_mw = 0.0;  // L_l
};

/// Thermal unit with quadratic instantaneous cost 0.5*a*P^2 + b*P.
struct ThermalGenerator {
    std::string name;
    int bus = 0;
    double a = 0.0;         // $/MW^2h
    double b = 0.0;         // $/MWh
    double pg_max = 0.0;    // MW
    double ramp_max = 0.0;  // MW/h
};

struct WindCandidate {
    std::string name;
    int bus = 0;
    double w_max = 0.0;  // MW
    double cost = 0.0;   // annualized $/MW
};

struct StorageCandidate {
    std::string name;
    int bus = 0;
    double e_max = 0.0;        // MWh
    double c_max = 0.0;        // MW
    double cost_energy = 0.0;  // annualized $/MWh
    double cost_power = 0.0;   // annualized $/MW
    double eta_charge = 1.0;
    double eta_discharge = 1.0;
    double phi = 1.0;          // minimum energy-to-power ratio, h
};

struct ExistingLine {
    std::string name;
    int from = 0;
    int to = 0;
    double susceptance = 0.0;  // MW/rad
    double flow_max = 0.0;     // MW
};

struct CandidateLine {
    std::string name;
    int from = 0;
    int to = 0;
    double susceptance = 0.0;
    double flow_max = 0.0;
    double cost_per_km = 0.0;  // annualized $/km
    double length_km = 0.0;
    double big_m = 0.0;        // 0 means derive from the angle bound
};

/// Network and resource data of a co-planning study. Resource-to-bus and
/// bus-to-area maps are stored as indices; incidence matrices are derived.
struct PlanningInstance {
    std::vector<std::string> areas;
    std::vector<Bus> buses;
    std::vector<Load> loads;
    std::vector<ThermalGenerator> generators;
    std::vector<WindCandidate> wind;
    std::vector<StorageCandidate> storage;
    std::vector<ExistingLine> lines;
    std::vector<CandidateLine> candidate_lines;

    int area_index(const std::string& name) const;
    int bus_index(const std::string& name) const;

    /// Directed bus-line incidence: +1 at the from bus, -1 at the to bus.
    Eigen::MatrixXd existing_incidence() const;
    Eigen::MatrixXd candidate_incidence() const;
    /// M^B as a dense 0/1 matrix (buses x areas).
    Eigen::MatrixXd bus_area_matrix() const;

    /// Sum of peak loads located in the area.
    double area_peak_load(int area) const;
    /// Sum of candidate wind ceilings W^max located in the area.
    double area_wind_ceiling(int area) const;
    double total_peak_load() const;

    void validate() const;
};

PlanningInstance load_instance_json(const std::string& path);
PlanningInstance parse_instance_json(const std::string& text);

enum class Formulation { PWL, PWC };
enum class Variant { REF, RD, RDTP };

const char* to_string(Formulation f);
const char* to_string(Variant v);
Formulation parse_formulation(const std::string& s);
Variant parse_variant(const std::string& s);

struct PlanningConfig {
    double voll = 10000.0;           // $/MWh
    int tangents = 5;                // K
    double reserve_time = 1.0 / 6.0; // tau, h
    double reserve_load = 0.03;
    double reserve_wind = 0.05;
    double shed_cap = 0.5;
    double wind_portfolio = 0.25;
    double theta_bound = 0.6;        // rad
    /// Multiplies every operating cost; 365/H when H < 365 days stand for a year.
    double operation_scale = 1.0;
    Formulation formulation = Formulation::PWL;
    Variant variant = Variant::REF;

    void validate() const;
};

}  // namespace rdtp
