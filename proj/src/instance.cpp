#include "rdtp/instance.hpp"

#include "rdtp/common.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace rdtp {

using nlohmann::json;

int PlanningInstance::area_index(const std::string& name) const {
    auto it = std::find(areas.begin(), areas.end(), name);
    if (it == areas.end()) throw DataError("unknown area '" + name + "'");
    return static_cast<int>(it - areas.begin());
}

int PlanningInstance::bus_index(const std::string& name) const {
    for (std::size_t i = 0; i < buses.size(); ++i)
        if (buses[i].name == name) return static_cast<int>(i);
    throw DataError("unknown bus '" + name + "'");
}

Eigen::MatrixXd PlanningInstance::existing_incidence() const {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(buses.size()),
                                              static_cast<Eigen::Index>(lines.size()));
    for (std::size_t e = 0; e < lines.size(); ++e) {
        A(lines[e].from, static_cast<Eigen::Index>(e)) = 1.0;
        A(lines[e].to, static_cast<Eigen::Index>(e)) = -1.0;
    }
    return A;
}

Eigen::MatrixXd PlanningInstance::candidate_incidence() const {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(buses.size()),
                                              static_cast<Eigen::Index>(candidate_lines.size()));
    for (std::size_t e = 0; e < candidate_lines.size(); ++e) {
        A(candidate_lines[e].from, static_cast<Eigen::Index>(e)) = 1.0;
        A(candidate_lines[e].to, static_cast<Eigen::Index>(e)) = -1.0;
    }
    return A;
}

Eigen::MatrixXd PlanningInstance::bus_area_matrix() const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(buses.size()),
                                              static_cast<Eigen::Index>(areas.size()));
    for (std::size_t b = 0; b < buses.size(); ++b) M(static_cast<Eigen::Index>(b), buses[b].area) = 1.0;
    return M;
}

double PlanningInstance::area_peak_load(int area) const {
    double sum = 0.0;
    for (const auto& l : loads)
        if (buses[l.bus].area == area) sum += l.peak_mw;
    return sum;
}

double PlanningInstance::area_wind_ceiling(int area) const {
    double sum = 0.0;
    for (const auto& w : wind)
        if (buses[w.bus].area == area) sum += w.w_max;
    return sum;
}

double PlanningInstance::total_peak_load() const {
    double sum = 0.0;
    for (const auto& l : loads) sum += l.peak_mw;
    return sum;
}

void PlanningInstance::validate() const {
    if (areas.empty()) throw DataError("instance has no areas");
    if (buses.empty()) throw DataError("instance has no buses");
    const int nb = static_cast<int>(buses.size());
    const int na = static_cast<int>(areas.size());
    auto check_bus = [&](int b, const std::string& who) {
        if (b < 0 || b >= nb) throw DataError(who + ": bus index out of range");
    };
    std::set<std::string> names;
    auto check_name = [&](const std::string& n) {
        if (n.empty()) throw DataError("empty element name");
        if (n.find_first_of(".,[] \t\r\n") != std::string::npos)
            throw DataError("element name '" + n + "' contains one of . , [ ] or whitespace");
        if (!names.insert(n).second) throw DataError("duplicate element name '" + n + "'");
    };
    for (const auto& b : buses) {
        check_name(b.name);
        if (b.area < 0 || b.area >= na) throw DataError("bus " + b.name + ": area out of range");
    }
    for (const auto& l : loads) {
        check_name(l.name);
        check_bus(l.bus, l.name);
        if (l.peak_mw < 0) throw DataError("load " + l.name + ": negative peak");
    }
    for (const auto& g : generators) {
        check_name(g.name);
        check_bus(g.bus, g.name);
        if (g.pg_max < 0 || g.ramp_max < 0 || g.a < 0)
            throw DataError("generator " + g.name + ": negative capacity, ramp or curvature");
    }
    for (const auto& w : wind) {
        check_name(w.name);
        check_bus(w.bus, w.name);
        if (w.w_max < 0) throw DataError("wind " + w.name + ": negative w_max");
    }
    for (const auto& s : storage) {
        check_name(s.name);
        check_bus(s.bus, s.name);
        if (!(s.eta_charge > 0 && s.eta_charge <= 1) || !(s.eta_discharge > 0 && s.eta_discharge <= 1))
            throw DataError("storage " + s.name + ": efficiencies must lie in (0,1]");
        if (!(s.phi > 0)) throw DataError("storage " + s.name + ": phi must be positive");
        if (s.e_max < 0 || s.c_max < 0) throw DataError("storage " + s.name + ": negative capacity");
    }
    for (const auto& e : lines) {
        check_name(e.name);
        check_bus(e.from, e.name);
        check_bus(e.to, e.name);
        if (e.from == e.to) throw DataError("line " + e.name + ": from and to bus coincide");
    }
    for (const auto& e : candidate_lines) {
        check_name(e.name);
        check_bus(e.from, e.name);
        check_bus(e.to, e.name);
        if (e.from == e.to) throw DataError("line " + e.name + ": from and to bus coincide");
        if (e.big_m < 0) throw DataError("line " + e.name + ": negative big_m");
    }
}

namespace {

double num(const json& j, const char* key) {
    if (!j.contains(key)) throw DataError(std::string("missing key '") + key + "'");
    if (!j.at(key).is_number()) throw DataError(std::string("key '") + key + "' is not numeric");
    return j.at(key).get<double>();
}

double num_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? num(j, key) : fallback;
}

std::string str(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw DataError(std::string("missing string key '") + key + "'");
    return j.at(key).get<std::string>();
}

const json& array(const json& j, const char* key) {
    static const json empty = json::array();
    if (!j.contains(key)) return empty;
    if (!j.at(key).is_array()) throw DataError(std::string("key '") + key + "' is not an array");
    return j.at(key);
}

}  // namespace

PlanningInstance parse_instance_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("instance: ") + e.what());
    }
    PlanningInstance inst;
    for (const auto& a : array(j, "areas")) inst.areas.push_back(a.get<std::string>());
    for (const auto& b : array(j, "buses"))
        inst.buses.push_back({str(b, "name"), inst.area_index(str(b, "area"))});
    for (const auto& l : array(j, "loads"))
        inst.loads.push_back({str(l, "name"), inst.bus_index(str(l, "bus")), num(l, "peak_mw")});
    for (const auto& g : array(j, "generators"))
        inst.generators.push_back({str(g, "name"), inst.bus_index(str(g, "bus")), num(g, "a"), num(g, "b"),
                                   num(g, "pg_max"), num(g, "ramp_max")});
    for (const auto& w : array(j, "wind"))
        inst.wind.push_back({str(w, "name"), inst.bus_index(str(w, "bus")), num(w, "w_max"), num(w, "cost")});
    for (const auto& s : array(j, "storage"))
        inst.storage.push_back({str(s, "name"), inst.bus_index(str(s, "bus")), num(s, "e_max"), num(s, "c_max"),
                                num(s, "cost_energy"), num(s, "cost_power"), num(s, "eta_charge"),
                                num(s, "eta_discharge"), num(s, "phi")});
    for (const auto& e : array(j, "lines"))
        inst.lines.push_back({str(e, "name"), inst.bus_index(str(e, "from")), inst.bus_index(str(e, "to")),
                              num(e, "susceptance"), num(e, "flow_max")});
    for (const auto& e : array(j, "candidate_lines"))
        inst.candidate_lines.push_back({str(e, "name"), inst.bus_index(str(e, "from")),
                                        inst.bus_index(str(e, "to")), num(e, "susceptance"), num(e, "flow_max"),
                                        num(e, "cost_per_km"), num(e, "length_km"), num_or(e, "big_m", 0.0)});
    inst.validate();
    return inst;
}

PlanningInstance load_instance_json(const std::string& path) { return parse_instance_json(read_file(path)); }

const char* to_string(Formulation f) { return f == Formulation::PWL ? "PWL" : "PWC"; }

const char* to_string(Variant v) {
    switch (v) {
        case Variant::REF: return "REF";
        case Variant::RD: return "RD";
        case Variant::RDTP: return "RDTP";
    }
    return "?";
}

Formulation parse_formulation(const std::string& s) {
    if (s == "PWL") return Formulation::PWL;
    if (s == "PWC") return Formulation::PWC;
    throw DataError("unknown formulation '" + s + "' (expected PWL|PWC)");
}

Variant parse_variant(const std::string& s) {
    if (s == "REF") return Variant::REF;
    if (s == "RD") return Variant::RD;
    if (s == "RDTP") return Variant::RDTP;
    throw DataError("unknown variant '" + s + "' (expected REF|RD|RDTP)");
}

void PlanningConfig::validate() const {
    if (!(reserve_time > 0 && reserve_time < 1)) throw DataError("config: reserve delivery time must lie in (0,1) h");
    if (tangents < 2) throw DataError("config: tangent count K must be at least 2");
    for (double c : {reserve_load, reserve_wind, shed_cap, wind_portfolio})
        if (c < 0 || c > 1) throw DataError("config: coefficients must lie in [0,1]");
    if (voll < 0) throw DataError("config: negative VOLL");
    if (!(theta_bound > 0)) throw DataError("config: angle bound must be positive");
    if (!(operation_scale > 0)) throw DataError("config: operation scale must be positive");
}

}  // namespace rdtp
