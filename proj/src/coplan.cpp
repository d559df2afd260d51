#include "rdtp/coplan.hpp"

#include "rdtp/common.hpp"

#include <cmath>

namespace rdtp {

namespace {

std::string key_of(const std::string& entity, const std::string& tag, int t) {
    return "[" + entity + "." + tag + ".t" + std::to_string(t) + "]";
}

std::string key_of(const std::string& entity, const std::string& tag) { return "[" + entity + "." + tag + "]"; }

Eigen::MatrixXi grid(std::size_t rows, int cols) {
    return Eigen::MatrixXi::Constant(static_cast<Eigen::Index>(rows), cols, -1);
}

std::vector<int> dataset_area_map(const std::vector<std::string>& have, const PlanningInstance& instance) {
    std::vector<int> map;
    for (const auto& a : instance.areas) {
        auto it = std::find(have.begin(), have.end(), a);
        if (it == have.end()) throw DataError("no factor data for area '" + a + "'");
        map.push_back(static_cast<int>(it - have.begin()));
    }
    return map;
}

int feature_of(const std::vector<std::string>& features, const std::string& name) {
    auto it = std::find(features.begin(), features.end(), name);
    if (it == features.end()) throw DataError("missing feature '" + name + "'");
    return static_cast<int>(it - features.begin());
}

double line_big_m(const CandidateLine& l, const PlanningConfig& c) {
    return l.big_m > 0.0 ? l.big_m : l.susceptance * 2.0 * c.theta_bound;
}

}  // namespace

std::vector<DayProfile> reference_profiles(const HourlyDataset& ds, const PlanningInstance& instance) {
    const auto amap = dataset_area_map(ds.areas, instance);
    const int lf = ds.load_feature(), wf = ds.wind_feature();
    std::vector<DayProfile> out;
    for (const auto& day : slice_days(ds)) {
        DayProfile p;
        p.tag = "d" + std::to_string(day.day_index);
        p.durations.assign(static_cast<std::size_t>(day.n_points() - 1), 1.0);
        p.load.resize(static_cast<Eigen::Index>(amap.size()), day.n_points());
        p.wind.resizeLike(p.load);
        for (std::size_t a = 0; a < amap.size(); ++a) {
            p.load.row(static_cast<Eigen::Index>(a)) = day.points.row(ds.row(amap[a], lf));
            p.wind.row(static_cast<Eigen::Index>(a)) = day.points.row(ds.row(amap[a], wf));
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<DayProfile> representative_profiles(const RepresentativeDaySet& rdset,
                                                const std::vector<SparseDaySelection>* selections,
                                                const PlanningInstance& instance) {
    const auto amap = dataset_area_map(rdset.areas, instance);
    const int lf = feature_of(rdset.features, "load"), wf = feature_of(rdset.features, "wind");
    const auto nf = static_cast<Eigen::Index>(rdset.features.size());
    if (selections && static_cast<int>(selections->size()) != rdset.size())
        throw ArgumentError("point selections cover " + std::to_string(selections->size()) + " RDs, expected " +
                            std::to_string(rdset.size()));
    std::vector<DayProfile> out;
    for (int d = 0; d < rdset.size(); ++d) {
        const auto& rd = rdset.rds[static_cast<std::size_t>(d)];
        std::vector<int> pts;
        if (selections) {
            pts = (*selections)[static_cast<std::size_t>(d)].points;
        } else {
            for (int t = 0; t < rd.n_points(); ++t) pts.push_back(t);
        }
        if (pts.size() < 2 || pts.front() != 0 || pts.back() != rd.n_points() - 1)
            throw ArgumentError("selection of RD " + std::to_string(d) + " must start at 0 and end at the last point");
        DayProfile p;
        p.tag = "d" + std::to_string(d);
        p.weight = rdset.weights[static_cast<std::size_t>(d)];
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) p.durations.push_back(pts[k + 1] - pts[k]);
        p.load.resize(static_cast<Eigen::Index>(amap.size()), static_cast<Eigen::Index>(pts.size()));
        p.wind.resizeLike(p.load);
        for (std::size_t a = 0; a < amap.size(); ++a)
            for (std::size_t k = 0; k < pts.size(); ++k) {
                p.load(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) = rd.points(amap[a] * nf + lf, pts[k]);
                p.wind(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) = rd.points(amap[a] * nf + wf, pts[k]);
            }
        out.push_back(std::move(p));
    }
    return out;
}

InvestmentVars build_investment(ModelArtifact& m, const PlanningInstance& instance, const PlanningConfig& config) {
    InvestmentVars v;
    for (const auto& l : instance.candidate_lines) {
        v.y.push_back(m.add_binary("Y[" + l.name + "]"));
        m.add_objective(v.y.back(), l.cost_per_km * l.length_km);
    }
    for (const auto& s : instance.storage) {
        v.ecap.push_back(m.add_continuous("Ecap[" + s.name + "]", 0.0, s.e_max));
        v.ccap.push_back(m.add_continuous("Ccap[" + s.name + "]", 0.0, s.c_max));
        m.add_objective(v.ecap.back(), s.cost_energy);
        m.add_objective(v.ccap.back(), s.cost_power);
        m.add_constraint("ratio[" + s.name + "]", "storage_ratio", {{v.ccap.back(), s.phi}, {v.ecap.back(), -1.0}},
                         Sense::LE, 0.0);
    }
    double ceiling = 0.0;
    std::vector<Term> portfolio;
    for (const auto& w : instance.wind) {
        v.w.push_back(m.add_continuous("W[" + w.name + "]", 0.0, w.w_max));
        m.add_objective(v.w.back(), w.cost);
        portfolio.push_back({v.w.back(), 1.0});
        ceiling += w.w_max;
    }
    const double required = config.wind_portfolio * instance.total_peak_load();
    if (ceiling < required - 1e-9)
        throw ModelError("wind portfolio infeasible: total wind ceiling " + format_number(ceiling) + " MW is below " +
                         format_number(required) + " MW");
    if (required > 0.0) m.add_constraint("portfolio", "portfolio", portfolio, Sense::GE, required);
    return v;
}

std::pair<int, int> build_gen_cost_block(ModelArtifact& m, const ThermalGenerator& g, const std::string& key,
                                         int pg_t, int pg_t1, double delta, int K, double weight) {
    const int cg1 = m.add_continuous("CG1" + key, -kInf, kInf);
    const int cg2 = m.add_continuous("CG2" + key, -kInf, kInf);
    m.add_objective(cg1, weight);
    m.add_objective(cg2, weight);
    const auto pis = tangent_points(g.pg_max, K);
    for (int k = 0; k < K; ++k) {
        const double pi = pis[static_cast<std::size_t>(k)];
        const std::string kk = "[" + key.substr(1, key.size() - 2) + ".k" + std::to_string(k + 1) + "]";
        const double slope = delta * (g.a * pi + g.b) / 2.0;
        m.add_constraint("cga" + kk, "cost_avg", {{cg1, 1.0}, {pg_t, -slope}, {pg_t1, -slope}}, Sense::GE,
                         -delta * 0.5 * g.a * pi * pi);
        const double r = delta * g.a * pi / 12.0;
        const double rhs = -delta * g.a * pi * pi / 24.0;
        m.add_constraint("cgp" + kk, "cost_ramp", {{cg2, 1.0}, {pg_t, -r}, {pg_t1, r}}, Sense::GE, rhs);
        m.add_constraint("cgm" + kk, "cost_ramp", {{cg2, 1.0}, {pg_t, r}, {pg_t1, -r}}, Sense::GE, rhs);
    }
    return {cg1, cg2};
}

int build_gen_cost_block_pwc(ModelArtifact& m, const ThermalGenerator& g, const std::string& key, int pg,
                             double delta, int K, double weight) {
    const int cg = m.add_continuous("CG" + key, -kInf, kInf);
    m.add_objective(cg, weight);
    const auto pis = tangent_points(g.pg_max, K);
    for (int k = 0; k < K; ++k) {
        const double pi = pis[static_cast<std::size_t>(k)];
        const std::string kk = "[" + key.substr(1, key.size() - 2) + ".k" + std::to_string(k + 1) + "]";
        m.add_constraint("cgc" + kk, "cost_avg", {{cg, 1.0}, {pg, -delta * (g.a * pi + g.b)}}, Sense::GE,
                         -delta * 0.5 * g.a * pi * pi);
    }
    return cg;
}

DayVars build_operations_day(ModelArtifact& m, const PlanningInstance& inst, const PlanningConfig& cfg,
                             const DayProfile& day, const InvestmentVars& inv, StorageMode storage) {
    const int n = day.n_points();
    if (n < 2) throw ModelError("day " + day.tag + " needs at least two time points");
    if (static_cast<int>(day.durations.size()) != n - 1) throw ModelError("day " + day.tag + ": durations do not match points");
    if (day.load.rows() != static_cast<Eigen::Index>(inst.areas.size()) || day.wind.rows() != day.load.rows() ||
        day.wind.cols() != n)
        throw ModelError("day " + day.tag + ": factor data does not cover every area");
    for (double dt : day.durations)
        if (!(dt > 0.0)) throw ModelError("day " + day.tag + ": durations must be positive");

    const bool pwc = cfg.formulation == Formulation::PWC;
    const int np = pwc ? n - 1 : n;  // power sample count
    const auto& tag = day.tag;

    // Factors at the power samples.
    Eigen::MatrixXd fl = day.load, fw = day.wind;
    if (pwc) {
        fl = 0.5 * (day.load.leftCols(n - 1) + day.load.rightCols(n - 1));
        fw = 0.5 * (day.wind.leftCols(n - 1) + day.wind.rightCols(n - 1));
    }
    auto bus_area = [&](int bus) { return inst.buses[static_cast<std::size_t>(bus)].area; };
    auto pl = [&](const Load& l, int t) { return fl(bus_area(l.bus), t) * l.peak_mw; };
    auto fwv = [&](const WindCandidate& w, int t) { return fw(bus_area(w.bus), t); };

    const auto G = inst.generators.size(), L = inst.loads.size(), W = inst.wind.size(), S = inst.storage.size(),
               B = inst.buses.size(), EL = inst.lines.size(), NL = inst.candidate_lines.size();
    DayVars v;
    v.pg = grid(G, np); v.pr = grid(G, np); v.ps = grid(L, np); v.pw = grid(W, np); v.px = grid(W, np);
    v.pc = grid(S, np); v.pd = grid(S, np); v.u = grid(S, np); v.e = grid(S, n);
    v.th = grid(B, np); v.pn = grid(B, np); v.fe = grid(EL, np); v.fn = grid(NL, np);

    for (int t = 0; t < np; ++t) {
        for (std::size_t g = 0; g < G; ++g) {
            const auto& gen = inst.generators[g];
            v.pg(g, t) = m.add_continuous("PG" + key_of(gen.name, tag, t), 0.0, gen.pg_max);
            v.pr(g, t) = m.add_continuous("PR" + key_of(gen.name, tag, t));
        }
        for (std::size_t l = 0; l < L; ++l) {
            const auto& ld = inst.loads[l];
            v.ps(l, t) = m.add_continuous("PS" + key_of(ld.name, tag, t), 0.0, cfg.shed_cap * pl(ld, t));
        }
        for (std::size_t w = 0; w < W; ++w) {
            v.pw(w, t) = m.add_continuous("PW" + key_of(inst.wind[w].name, tag, t));
            v.px(w, t) = m.add_continuous("PX" + key_of(inst.wind[w].name, tag, t));
        }
        for (std::size_t s = 0; s < S; ++s) {
            const auto& st = inst.storage[s];
            v.pc(s, t) = m.add_continuous("PC" + key_of(st.name, tag, t));
            v.pd(s, t) = m.add_continuous("PD" + key_of(st.name, tag, t));
            v.u(s, t) = m.add_binary("U" + key_of(st.name, tag, t));
        }
        for (std::size_t b = 0; b < B; ++b) {
            v.th(b, t) = m.add_continuous("TH" + key_of(inst.buses[b].name, tag, t), -cfg.theta_bound, cfg.theta_bound);
            v.pn(b, t) = m.add_continuous("PN" + key_of(inst.buses[b].name, tag, t), -kInf, kInf);
        }
        for (std::size_t e = 0; e < EL; ++e) {
            const auto& ln = inst.lines[e];
            v.fe(e, t) = m.add_continuous("FE" + key_of(ln.name, tag, t), -ln.flow_max, ln.flow_max);
        }
        for (std::size_t c = 0; c < NL; ++c) {
            const auto& ln = inst.candidate_lines[c];
            v.fn(c, t) = m.add_continuous("FN" + key_of(ln.name, tag, t), -ln.flow_max, ln.flow_max);
        }
    }
    for (std::size_t s = 0; s < S; ++s)
        for (int t = 0; t < n; ++t) {
            const bool fixed_start = storage == StorageMode::Relative && t == 0;
            const double lo = storage == StorageMode::Absolute || fixed_start ? 0.0 : -kInf;
            const double hi = fixed_start ? 0.0 : kInf;
            v.e(s, t) = m.add_continuous("E" + key_of(inst.storage[s].name, tag, t), lo, hi);
        }
    if (storage == StorageMode::Relative)
        for (std::size_t s = 0; s < S; ++s) {
            const auto& nm = inst.storage[s].name;
            v.etot.push_back(m.add_continuous("Etot" + key_of(nm, tag), -kInf, kInf));
            v.elow.push_back(m.add_continuous("Elow" + key_of(nm, tag), -kInf, kInf));
            v.ehigh.push_back(m.add_continuous("Ehigh" + key_of(nm, tag), -kInf, kInf));
        }

    // Rows at each power sample.
    for (int t = 0; t < np; ++t) {
        for (std::size_t b = 0; b < B; ++b) {
            std::vector<Term> bal{{v.pn(b, t), 1.0}};
            double demand = 0.0;
            for (std::size_t g = 0; g < G; ++g)
                if (inst.generators[g].bus == static_cast<int>(b)) bal.push_back({v.pg(g, t), 1.0});
            for (std::size_t w = 0; w < W; ++w)
                if (inst.wind[w].bus == static_cast<int>(b)) bal.push_back({v.pw(w, t), 1.0});
            for (std::size_t s = 0; s < S; ++s)
                if (inst.storage[s].bus == static_cast<int>(b)) {
                    bal.push_back({v.pd(s, t), 1.0});
                    bal.push_back({v.pc(s, t), -1.0});
                }
            for (std::size_t l = 0; l < L; ++l)
                if (inst.loads[l].bus == static_cast<int>(b)) {
                    bal.push_back({v.ps(l, t), 1.0});
                    demand += pl(inst.loads[l], t);
                }
            m.add_constraint("bal" + key_of(inst.buses[b].name, tag, t), "balance", std::move(bal), Sense::EQ, demand);

            std::vector<Term> inj{{v.pn(b, t), 1.0}};
            for (std::size_t e = 0; e < EL; ++e) {
                const auto& ln = inst.lines[e];
                if (ln.from == static_cast<int>(b)) inj.push_back({v.fe(e, t), -1.0});
                if (ln.to == static_cast<int>(b)) inj.push_back({v.fe(e, t), 1.0});
            }
            for (std::size_t c = 0; c < NL; ++c) {
                const auto& ln = inst.candidate_lines[c];
                if (ln.from == static_cast<int>(b)) inj.push_back({v.fn(c, t), -1.0});
                if (ln.to == static_cast<int>(b)) inj.push_back({v.fn(c, t), 1.0});
            }
            m.add_constraint("inj" + key_of(inst.buses[b].name, tag, t), "injection", std::move(inj), Sense::EQ, 0.0);
        }
        for (std::size_t e = 0; e < EL; ++e) {
            const auto& ln = inst.lines[e];
            m.add_constraint("dcf" + key_of(ln.name, tag, t), "dc_flow",
                             {{v.fe(e, t), 1.0}, {v.th(ln.from, t), -ln.susceptance}, {v.th(ln.to, t), ln.susceptance}},
                             Sense::EQ, 0.0);
        }
        for (std::size_t c = 0; c < NL; ++c) {
            const auto& ln = inst.candidate_lines[c];
            const double bm = line_big_m(ln, cfg);
            const int y = inv.y[c];
            const int fn = v.fn(c, t), tf = v.th(ln.from, t), tt = v.th(ln.to, t);
            const double bs = ln.susceptance;
            m.add_constraint("dnu" + key_of(ln.name, tag, t), "dc_flow_candidate",
                             {{fn, 1.0}, {tf, -bs}, {tt, bs}, {y, bm}}, Sense::LE, bm);
            m.add_constraint("dnl" + key_of(ln.name, tag, t), "dc_flow_candidate",
                             {{fn, -1.0}, {tf, bs}, {tt, -bs}, {y, bm}}, Sense::LE, bm);
            m.add_constraint("fnu" + key_of(ln.name, tag, t), "candidate_capacity", {{fn, 1.0}, {y, -ln.flow_max}},
                             Sense::LE, 0.0);
            m.add_constraint("fnl" + key_of(ln.name, tag, t), "candidate_capacity", {{fn, -1.0}, {y, -ln.flow_max}},
                             Sense::LE, 0.0);
        }
        std::vector<Term> reserve;
        double reserve_rhs = 0.0;
        for (std::size_t g = 0; g < G; ++g) {
            const auto& gen = inst.generators[g];
            m.add_constraint("gmin" + key_of(gen.name, tag, t), "dispatch", {{v.pg(g, t), 1.0}, {v.pr(g, t), -1.0}},
                             Sense::GE, 0.0);
            m.add_constraint("gmax" + key_of(gen.name, tag, t), "dispatch", {{v.pg(g, t), 1.0}, {v.pr(g, t), 1.0}},
                             Sense::LE, gen.pg_max);
            reserve.push_back({v.pr(g, t), 1.0});
        }
        for (std::size_t w = 0; w < W; ++w) reserve.push_back({v.pw(w, t), -cfg.reserve_wind});
        for (const auto& ld : inst.loads) reserve_rhs += cfg.reserve_load * pl(ld, t);
        m.add_constraint("res[" + tag + ".t" + std::to_string(t) + "]", "reserve", std::move(reserve), Sense::EQ,
                         reserve_rhs);
        for (std::size_t w = 0; w < W; ++w) {
            const auto& wc = inst.wind[w];
            const double f = fwv(wc, t);
            m.add_constraint("wav" + key_of(wc.name, tag, t), "wind",
                             {{v.pw(w, t), 1.0}, {v.px(w, t), 1.0}, {inv.w[w], -f}}, Sense::EQ, 0.0);
            m.add_constraint("wcu" + key_of(wc.name, tag, t), "wind", {{v.px(w, t), 1.0}, {inv.w[w], -f}}, Sense::LE, 0.0);
        }
        for (std::size_t s = 0; s < S; ++s) {
            const auto& st = inst.storage[s];
            const auto k = key_of(st.name, tag, t);
            m.add_constraint("scc" + k, "storage_power", {{v.pc(s, t), st.eta_charge}, {inv.ccap[s], -1.0}}, Sense::LE, 0.0);
            m.add_constraint("sdc" + k, "storage_power", {{v.pd(s, t), 1.0 / st.eta_discharge}, {inv.ccap[s], -1.0}},
                             Sense::LE, 0.0);
            m.add_constraint("scu" + k, "storage_mode", {{v.pc(s, t), st.eta_charge}, {v.u(s, t), -st.c_max}}, Sense::LE, 0.0);
            m.add_constraint("sdu" + k, "storage_mode", {{v.pd(s, t), 1.0 / st.eta_discharge}, {v.u(s, t), st.c_max}},
                             Sense::LE, st.c_max);
        }
    }

    // Rows on energy points.
    for (std::size_t s = 0; s < S; ++s) {
        const auto& st = inst.storage[s];
        for (int t = 0; t < n; ++t) {
            const auto k = key_of(st.name, tag, t);
            if (storage == StorageMode::Absolute) {
                m.add_constraint("ecap" + k, "storage_level", {{v.e(s, t), 1.0}, {inv.ecap[s], -1.0}}, Sense::LE, 0.0);
            } else {
                m.add_constraint("elo" + k, "storage_envelope", {{v.e(s, t), 1.0}, {v.elow[s], -1.0}}, Sense::GE, 0.0);
                m.add_constraint("ehi" + k, "storage_envelope", {{v.e(s, t), 1.0}, {v.ehigh[s], -1.0}}, Sense::LE, 0.0);
            }
        }
        if (storage == StorageMode::Relative)
            m.add_constraint("etot" + key_of(st.name, tag), "storage_total", {{v.etot[s], 1.0}, {v.e(s, n - 1), -1.0}},
                             Sense::EQ, 0.0);
    }

    // Interval rows.
    const double w = day.weight * cfg.operation_scale;
    const double tau = cfg.reserve_time;
    for (int t = 0; t + 1 < n; ++t) {
        const double dt = day.durations[static_cast<std::size_t>(t)];
        for (std::size_t g = 0; g < G; ++g) {
            const auto& gen = inst.generators[g];
            const auto k = key_of(gen.name, tag, t);
            if (pwc) {
                build_gen_cost_block_pwc(m, gen, k, v.pg(g, t), dt, cfg.tangents, w);
            } else {
                build_gen_cost_block(m, gen, k, v.pg(g, t), v.pg(g, t + 1), dt, cfg.tangents, w);
            }
        }
        for (std::size_t l = 0; l < L; ++l) {
            if (pwc) {
                m.add_objective(v.ps(l, t), w * cfg.voll * dt);
            } else {
                m.add_objective(v.ps(l, t), w * cfg.voll / 2.0 * dt);
                m.add_objective(v.ps(l, t + 1), w * cfg.voll / 2.0 * dt);
            }
        }
        for (std::size_t s = 0; s < S; ++s) {
            const auto& st = inst.storage[s];
            std::vector<Term> dyn{{v.e(s, t + 1), 1.0}, {v.e(s, t), -1.0}};
            if (pwc) {
                dyn.push_back({v.pc(s, t), -dt * st.eta_charge});
                dyn.push_back({v.pd(s, t), dt / st.eta_discharge});
            } else {
                dyn.push_back({v.pc(s, t), -dt * st.eta_charge / 2.0});
                dyn.push_back({v.pc(s, t + 1), -dt * st.eta_charge / 2.0});
                dyn.push_back({v.pd(s, t), dt / st.eta_discharge / 2.0});
                dyn.push_back({v.pd(s, t + 1), dt / st.eta_discharge / 2.0});
            }
            m.add_constraint("sto" + key_of(st.name, tag, t), "storage_dynamics", std::move(dyn), Sense::EQ, 0.0);
        }
    }
    // Ramp rows between consecutive power samples.
    for (int t = 0; t + 1 < np; ++t) {
        const double span = pwc ? 0.5 * (day.durations[static_cast<std::size_t>(t)] +
                                         day.durations[static_cast<std::size_t>(t + 1)])
                                : day.durations[static_cast<std::size_t>(t)];
        for (std::size_t g = 0; g < G; ++g) {
            const auto& gen = inst.generators[g];
            const auto k = key_of(gen.name, tag, t);
            const int a = v.pg(g, t), b = v.pg(g, t + 1);
            for (int side = 0; side < 2; ++side) {
                const int pr = side == 0 ? v.pr(g, t) : v.pr(g, t + 1);
                const std::string nm = side == 0 ? "rs" : "re";
                m.add_constraint(nm + "u" + k, "ramp", {{b, 1.0 / span}, {a, -1.0 / span}, {pr, 1.0 / tau}}, Sense::LE,
                                 gen.ramp_max);
                m.add_constraint(nm + "d" + k, "ramp", {{b, -1.0 / span}, {a, 1.0 / span}, {pr, 1.0 / tau}}, Sense::LE,
                                 gen.ramp_max);
            }
        }
    }
    return v;
}

namespace {

void link_equal(ModelArtifact& m, const std::string& name, int next_first, int prev_last) {
    m.add_constraint(name, "day_link", {{next_first, 1.0}, {prev_last, -1.0}}, Sense::EQ, 0.0);
}

void link_reference_days(ModelArtifact& m, const PlanningInstance& inst, const PlanningConfig& cfg,
                         const std::vector<DayProfile>& days, const std::vector<DayVars>& vars) {
    const std::size_t D = vars.size();
    const bool pwc = cfg.formulation == Formulation::PWC;
    for (std::size_t d = 0; d < D; ++d) {
        const std::size_t p = (d + D - 1) % D;  // previous day, wrapping
        const auto& a = vars[p];
        const auto& b = vars[d];
        const auto& tag = days[d].tag;
        auto link_rows = [&](const char* what, const Eigen::MatrixXi& pa, const Eigen::MatrixXi& pb, const auto& names) {
            for (Eigen::Index i = 0; i < pa.rows(); ++i)
                link_equal(m, std::string("lnk") + what + key_of(names[static_cast<std::size_t>(i)].name, tag),
                           pb(i, 0), pa(i, pa.cols() - 1));
        };
        link_rows("E", a.e, b.e, inst.storage);
        if (pwc) {
            // Ramp across midnight between the last interval of the previous day
            // and the first interval of this one.
            const double span = 0.5 * (days[p].durations.back() + days[d].durations.front());
            for (std::size_t g = 0; g < inst.generators.size(); ++g) {
                const auto& gen = inst.generators[g];
                const auto k = key_of(gen.name, tag);
                const int x = a.pg(g, a.pg.cols() - 1), y = b.pg(g, 0);
                for (int side = 0; side < 2; ++side) {
                    const int pr = side == 0 ? a.pr(g, a.pr.cols() - 1) : b.pr(g, 0);
                    const std::string nm = side == 0 ? "xrs" : "xre";
                    m.add_constraint(nm + "u" + k, "ramp",
                                     {{y, 1.0 / span}, {x, -1.0 / span}, {pr, 1.0 / cfg.reserve_time}}, Sense::LE,
                                     gen.ramp_max);
                    m.add_constraint(nm + "d" + k, "ramp",
                                     {{y, -1.0 / span}, {x, 1.0 / span}, {pr, 1.0 / cfg.reserve_time}}, Sense::LE,
                                     gen.ramp_max);
                }
            }
            continue;
        }
        link_rows("PG", a.pg, b.pg, inst.generators);
        link_rows("PR", a.pr, b.pr, inst.generators);
        link_rows("PS", a.ps, b.ps, inst.loads);
        link_rows("PX", a.px, b.px, inst.wind);
        link_rows("PC", a.pc, b.pc, inst.storage);
        link_rows("PD", a.pd, b.pd, inst.storage);
        link_rows("TH", a.th, b.th, inst.buses);
    }
}

void link_slds(ModelArtifact& m, const PlanningInstance& inst, const SLDSequence& slds, const std::vector<DayVars>& vars,
               const InvestmentVars& inv) {
    const std::size_t SD = slds.blocks.size();
    for (std::size_t s = 0; s < inst.storage.size(); ++s) {
        const auto& nm = inst.storage[s].name;
        std::vector<int> le;
        for (std::size_t sd = 0; sd < SD; ++sd)
            le.push_back(m.add_continuous("LE[" + nm + ".sd" + std::to_string(sd) + "]", -kInf, kInf));
        for (std::size_t sd = 0; sd < SD; ++sd) {
            const auto& blk = slds.blocks[sd];
            const auto& dv = vars[static_cast<std::size_t>(blk.rd)];
            const int etot = dv.etot[s], elow = dv.elow[s], ehigh = dv.ehigh[s];
            const double reps = blk.repetitions;
            const std::string k = "[" + nm + ".sd" + std::to_string(sd) + "]";
            const std::size_t next = (sd + 1) % SD;
            m.add_constraint("lrec" + k, "sld_recursion", {{le[next], 1.0}, {le[sd], -1.0}, {etot, -reps}}, Sense::EQ, 0.0);
            m.add_constraint("llo" + k, "sld_bounds", {{le[sd], 1.0}, {elow, 1.0}}, Sense::GE, 0.0);
            m.add_constraint("llr" + k, "sld_bounds", {{le[sd], 1.0}, {etot, reps - 1.0}, {elow, 1.0}}, Sense::GE, 0.0);
            m.add_constraint("lhi" + k, "sld_bounds", {{inv.ecap[s], 1.0}, {le[sd], -1.0}, {ehigh, -1.0}}, Sense::GE, 0.0);
            m.add_constraint("lhr" + k, "sld_bounds",
                             {{inv.ecap[s], 1.0}, {le[sd], -1.0}, {ehigh, -1.0}, {etot, -(reps - 1.0)}}, Sense::GE, 0.0);
        }
    }
}

}  // namespace

ModelArtifact build_model(const PlanningInstance& instance, const PlanningConfig& config, const ModelInputs& in) {
    instance.validate();
    config.validate();
    ModelArtifact m;
    m.metadata["variant"] = to_string(config.variant);
    m.metadata["formulation"] = to_string(config.formulation);
    m.metadata["voll"] = format_number(config.voll);
    m.metadata["tangents"] = std::to_string(config.tangents);
    m.metadata["reserve_time"] = format_number(config.reserve_time);
    m.metadata["reserve_load"] = format_number(config.reserve_load);
    m.metadata["reserve_wind"] = format_number(config.reserve_wind);
    m.metadata["shed_cap"] = format_number(config.shed_cap);
    m.metadata["wind_portfolio"] = format_number(config.wind_portfolio);
    m.metadata["theta_bound"] = format_number(config.theta_bound);
    m.metadata["operation_scale"] = format_number(config.operation_scale);

    std::vector<DayProfile> days;
    switch (config.variant) {
    case Variant::REF:
        if (!in.data) throw ArgumentError("the REF variant needs the hourly dataset");
        days = reference_profiles(*in.data, instance);
        break;
    case Variant::RD:
    case Variant::RDTP:
        if (!in.rdset || !in.slds) throw ArgumentError(std::string("the ") + to_string(config.variant) +
                                                       " variant needs representative days and SLDs");
        if (config.variant == Variant::RDTP && !in.selections)
            throw ArgumentError("the RDTP variant needs time-point selections");
        for (const auto& b : in.slds->blocks)
            if (b.rd < 0 || b.rd >= in.rdset->size())
                throw ArgumentError("SLD block references RD " + std::to_string(b.rd) + ", absent from the RD set");
        days = representative_profiles(*in.rdset, config.variant == Variant::RDTP ? in.selections : nullptr, instance);
        break;
    }
    m.metadata["days"] = std::to_string(days.size());

    const InvestmentVars inv = build_investment(m, instance, config);
    const StorageMode mode = config.variant == Variant::REF ? StorageMode::Absolute : StorageMode::Relative;
    std::vector<DayVars> vars;
    vars.reserve(days.size());
    for (const auto& d : days) vars.push_back(build_operations_day(m, instance, config, d, inv, mode));
    if (config.variant == Variant::REF) {
        link_reference_days(m, instance, config, days, vars);
    } else {
        m.metadata["slds"] = std::to_string(in.slds->blocks.size());
        link_slds(m, instance, *in.slds, vars, inv);
    }
    m.validate();
    return m;
}

std::vector<std::string> investment_variable_names(const PlanningInstance& instance) {
    std::vector<std::string> out;
    for (const auto& l : instance.candidate_lines) out.push_back("Y[" + l.name + "]");
    for (const auto& s : instance.storage) {
        out.push_back("Ecap[" + s.name + "]");
        out.push_back("Ccap[" + s.name + "]");
    }
    for (const auto& w : instance.wind) out.push_back("W[" + w.name + "]");
    return out;
}

double investment_cost(const PlanningInstance& instance, const std::map<std::string, double>& values) {
    auto get = [&](const std::string& n) {
        auto it = values.find(n);
        if (it == values.end()) throw ArgumentError("solution lacks investment variable " + n);
        return it->second;
    };
    double ci = 0.0;
    for (const auto& l : instance.candidate_lines) ci += l.cost_per_km * l.length_km * get("Y[" + l.name + "]");
    for (const auto& s : instance.storage)
        ci += s.cost_energy * get("Ecap[" + s.name + "]") + s.cost_power * get("Ccap[" + s.name + "]");
    for (const auto& w : instance.wind) ci += w.cost * get("W[" + w.name + "]");
    return ci;
}

}  // namespace rdtp
