#include "rdtp/solver.hpp"

#include "rdtp/common.hpp"
#include "rdtp/build_config.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace rdtp {

namespace fs = std::filesystem;

// --- name map ---------------------------------------------------------------

namespace {

std::string code(char prefix, int i) {
    if (i < 0 || i > 9999999) throw ModelError("model too large for 8-character MPS names");
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%c%07d", prefix, i);
    return buf;
}

int decode(const std::string& c, char prefix) {
    if (c.size() != 8 || c[0] != prefix) return -1;
    int v = 0;
    for (std::size_t k = 1; k < 8; ++k) {
        if (c[k] < '0' || c[k] > '9') return -1;
        v = v * 10 + (c[k] - '0');
    }
    return v;
}

}  // namespace

std::string NameMap::column_code(int i) { return code('C', i); }
std::string NameMap::row_code(int i) { return code('R', i); }

std::string NameMap::restore(const std::string& c) const {
    if (int i = decode(c, 'C'); i >= 0 && i < static_cast<int>(columns.size())) return columns[static_cast<std::size_t>(i)];
    if (int i = decode(c, 'R'); i >= 0 && i < static_cast<int>(rows.size())) return rows[static_cast<std::size_t>(i)];
    return c;
}

bool NameMap::is_column_code(const std::string& c) const {
    const int i = decode(c, 'C');
    return i >= 0 && i < static_cast<int>(columns.size());
}

NameMap make_name_map(const ModelArtifact& model) {
    NameMap m;
    for (const auto& v : model.variables()) m.columns.push_back(v.name);
    for (const auto& r : model.constraints()) m.rows.push_back(r.name);
    return m;
}

std::string varmap_csv(const NameMap& map) {
    std::string out = "kind,code,name\n";
    for (std::size_t i = 0; i < map.columns.size(); ++i)
        out += "column," + NameMap::column_code(static_cast<int>(i)) + ',' + map.columns[i] + '\n';
    for (std::size_t i = 0; i < map.rows.size(); ++i)
        out += "row," + NameMap::row_code(static_cast<int>(i)) + ',' + map.rows[i] + '\n';
    return out;
}

NameMap parse_varmap_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "kind,code,name") throw DataError("varmap.csv: unexpected header");
    NameMap m;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto c = split(line, ',');
        if (c.size() != 3) throw DataError("varmap.csv: row " + std::to_string(row) + ": expected 3 columns");
        auto& target = c[0] == "column" ? m.columns : m.rows;
        const int idx = decode(c[1], c[0] == "column" ? 'C' : 'R');
        if ((c[0] != "column" && c[0] != "row") || idx != static_cast<int>(target.size()))
            throw DataError("varmap.csv: row " + std::to_string(row) + ": codes out of order");
        target.push_back(c[2]);
    }
    return m;
}

// --- MPS ---------------------------------------------------------------------

namespace {

char sense_char(Sense s) {
    switch (s) {
        case Sense::LE: return 'L';
        case Sense::GE: return 'G';
        case Sense::EQ: return 'E';
    }
    return 'E';
}

void field_line(std::string& out, const std::string& a, const std::string& b, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "    %-8s  %-8s  ", a.c_str(), b.c_str());
    out += buf;
    out += format_number(v);
    out += '\n';
}

void bound_line(std::string& out, const char* type, const std::string& col, const double* v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), " %-2s BND       %-8s", type, col.c_str());
    out += buf;
    if (v) {
        out += "  ";
        out += format_number(*v);
    }
    out += '\n';
}

}  // namespace

std::string mps_text(const ModelArtifact& model) {
    model.validate();
    std::string out;
    out += "NAME          RDTP\n";
    out += "ROWS\n";
    out += " N  OBJ\n";
    const auto& rows = model.constraints();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += ' ';
        out += sense_char(rows[r].sense);
        out += "  " + NameMap::row_code(static_cast<int>(r)) + '\n';
    }
    out += "COLUMNS\n";
    const Eigen::SparseMatrix<double> A = model.matrix();
    const auto& vars = model.variables();
    const auto& obj = model.objective();
    bool in_int = false;
    int marker = 0;
    auto marker_line = [&](const char* kind) {
        char buf[80];
        std::snprintf(buf, sizeof(buf), "    M%07d  'MARKER'                 '%s'\n", marker++, kind);
        out += buf;
    };
    for (int j = 0; j < model.n_variables(); ++j) {
        const bool is_int = vars[static_cast<std::size_t>(j)].kind == VarKind::Binary;
        if (is_int != in_int) {
            marker_line(is_int ? "INTORG" : "INTEND");
            in_int = is_int;
        }
        const std::string col = NameMap::column_code(j);
        bool any = false;
        if (obj[static_cast<std::size_t>(j)] != 0.0) {
            field_line(out, col, "OBJ", obj[static_cast<std::size_t>(j)]);
            any = true;
        }
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, j); it; ++it) {
            field_line(out, col, NameMap::row_code(static_cast<int>(it.row())), it.value());
            any = true;
        }
        if (!any) field_line(out, col, "OBJ", 0.0);
    }
    if (in_int) marker_line("INTEND");
    out += "RHS\n";
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].rhs != 0.0) field_line(out, "RHS", NameMap::row_code(static_cast<int>(r)), rows[r].rhs);
    out += "BOUNDS\n";
    for (int j = 0; j < model.n_variables(); ++j) {
        const auto& v = vars[static_cast<std::size_t>(j)];
        const std::string col = NameMap::column_code(j);
        if (v.kind == VarKind::Binary && v.lb == 0.0 && v.ub == 1.0) {
            bound_line(out, "BV", col, nullptr);
            continue;
        }
        if (v.lb == v.ub) {
            bound_line(out, "FX", col, &v.lb);
            continue;
        }
        const bool lb_inf = std::isinf(v.lb), ub_inf = std::isinf(v.ub);
        if (lb_inf && ub_inf) {
            bound_line(out, "FR", col, nullptr);
            continue;
        }
        if (lb_inf)
            bound_line(out, "MI", col, nullptr);
        else if (v.lb != 0.0 || (!ub_inf && v.ub < 0.0))
            bound_line(out, "LO", col, &v.lb);
        if (!ub_inf) bound_line(out, "UP", col, &v.ub);
    }
    out += "ENDATA\n";
    return out;
}

void write_mps(const ModelArtifact& model, const std::string& path, const std::string& varmap_path) {
    write_file_atomic(path, mps_text(model));
    const std::string vm = varmap_path.empty() ? (fs::path(path).parent_path() / "varmap.csv").string() : varmap_path;
    write_file_atomic(vm, varmap_csv(make_name_map(model)));
}

ModelArtifact parse_mps(const std::string& text, const NameMap* names) {
    std::istringstream in(text);
    std::string line, section;
    ModelArtifact m;
    std::map<std::string, int> row_index;
    std::vector<Sense> senses;
    std::vector<std::string> row_names;
    std::vector<std::vector<Term>> row_terms;
    std::vector<double> rhs;
    std::vector<double> objective;
    std::vector<std::string> col_names;
    std::map<std::string, int> col_index;
    std::vector<char> col_int;
    std::vector<double> lb, ub;
    std::vector<char> lb_set;
    bool integer_block = false;
    std::string obj_row;
    auto restore = [&](const std::string& c) { return names ? names->restore(c) : c; };
    auto column = [&](const std::string& c) {
        auto it = col_index.find(c);
        if (it != col_index.end()) return it->second;
        const int idx = static_cast<int>(col_names.size());
        col_index[c] = idx;
        col_names.push_back(c);
        col_int.push_back(integer_block);
        objective.push_back(0.0);
        lb.push_back(0.0);
        ub.push_back(integer_block ? 1.0 : kInf);
        lb_set.push_back(0);
        return idx;
    };
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '*') continue;
        std::istringstream tok(line);
        std::vector<std::string> f;
        for (std::string s; tok >> s;) f.push_back(s);
        if (f.empty()) continue;
        if (line[0] != ' ') {
            section = f[0];
            if (section == "ENDATA") break;
            continue;
        }
        auto bad = [&]() { return DataError("MPS line " + std::to_string(lineno) + ": malformed " + section + " entry"); };
        if (section == "ROWS") {
            if (f.size() != 2) throw bad();
            if (f[0] == "N") {
                if (obj_row.empty()) obj_row = f[1];
                continue;
            }
            Sense s = f[0] == "L" ? Sense::LE : f[0] == "G" ? Sense::GE : f[0] == "E" ? Sense::EQ : throw bad();
            row_index[f[1]] = static_cast<int>(senses.size());
            senses.push_back(s);
            row_names.push_back(f[1]);
            row_terms.emplace_back();
            rhs.push_back(0.0);
        } else if (section == "COLUMNS") {
            if (f.size() == 3 && f[1] == "'MARKER'") {
                integer_block = f[2] == "'INTORG'";
                continue;
            }
            if (f.size() != 3 && f.size() != 5) throw bad();
            const int j = column(f[0]);
            for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
                const double v = parse_number(f[k + 1]);
                if (f[k] == obj_row) {
                    objective[static_cast<std::size_t>(j)] += v;
                } else {
                    auto it = row_index.find(f[k]);
                    if (it == row_index.end()) throw bad();
                    row_terms[static_cast<std::size_t>(it->second)].push_back({j, v});
                }
            }
        } else if (section == "RHS") {
            if (f.size() != 3 && f.size() != 5) throw bad();
            for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
                if (f[k] == obj_row) continue;
                auto it = row_index.find(f[k]);
                if (it == row_index.end()) throw bad();
                rhs[static_cast<std::size_t>(it->second)] = parse_number(f[k + 1]);
            }
        } else if (section == "BOUNDS") {
            if (f.size() < 3) throw bad();
            auto it = col_index.find(f[2]);
            if (it == col_index.end()) throw bad();
            const auto j = static_cast<std::size_t>(it->second);
            const std::string& t = f[0];
            const double v = f.size() > 3 ? parse_number(f[3]) : 0.0;
            if (t == "UP") {
                ub[j] = v;
            } else if (t == "LO") {
                lb[j] = v;
                lb_set[j] = 1;
            } else if (t == "FX") {
                lb[j] = ub[j] = v;
            } else if (t == "FR") {
                lb[j] = -kInf;
                ub[j] = kInf;
            } else if (t == "MI") {
                lb[j] = -kInf;
            } else if (t == "PL") {
                ub[j] = kInf;
            } else if (t == "BV") {
                col_int[j] = 1;
                lb[j] = 0.0;
                ub[j] = 1.0;
            } else {
                throw bad();
            }
        } else if (section == "RANGES") {
            throw DataError("MPS RANGES section is not supported");
        }
    }
    for (std::size_t j = 0; j < col_names.size(); ++j) {
        const int idx = m.add_variable(restore(col_names[j]), col_int[j] ? VarKind::Binary : VarKind::Continuous, lb[j], ub[j]);
        m.add_objective(idx, objective[j]);
    }
    for (std::size_t r = 0; r < senses.size(); ++r)
        m.add_constraint(restore(row_names[r]), "", row_terms[r], senses[r], rhs[r]);
    return m;
}

// --- profiles ------------------------------------------------------------------

SolverProfile builtin_profile(const std::string& name) {
    SolverProfile p;
    p.name = name;
    if (name == "highs") {
        p.binary = RDTP_HIGHS_RUNNER;
        p.command = {"{bin}", "{mps}", "{solution}", "{gap}", "{timeout}"};
        p.format = SolutionFormat::Generic;
    } else if (name == "cbc") {
        p.binary = RDTP_CBC_BINARY;
        p.command = {"{bin}", "{mps}", "-ratio", "{gap}", "-sec", "{timeout}", "-threads", "1",
                     "-printingOptions", "all", "-solve", "-solu", "{solution}"};
        p.format = SolutionFormat::Cbc;
    } else {
        throw SolverError("unknown solver profile '" + name + "'");
    }
    return p;
}

std::vector<std::string> builtin_profile_names() { return {"highs", "cbc"}; }

SolverProfile parse_profile_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("solver profile: ") + e.what());
    }
    SolverProfile p;
    try {
        p.name = j.at("name").get<std::string>();
        p.binary = j.at("binary").get<std::string>();
        p.command = j.at("command").get<std::vector<std::string>>();
        const std::string fmt = j.value("format", "generic");
        if (fmt == "generic")
            p.format = SolutionFormat::Generic;
        else if (fmt == "cbc")
            p.format = SolutionFormat::Cbc;
        else
            throw DataError("solver profile: unknown format '" + fmt + "'");
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("solver profile: ") + e.what());
    }
    if (p.command.empty()) throw DataError("solver profile: empty command");
    return p;
}

// --- invocation ------------------------------------------------------------------

namespace {

std::string resolve_binary(const std::string& bin) {
    if (bin.empty()) throw SolverError("solver binary not configured");
    if (bin.find('/') != std::string::npos) {
        if (::access(bin.c_str(), X_OK) != 0) throw SolverError("solver binary not found: " + bin);
        return bin;
    }
    const char* path = std::getenv("PATH");
    for (const auto& dir : split(path ? path : "", ':')) {
        if (dir.empty()) continue;
        const std::string cand = dir + "/" + bin;
        if (::access(cand.c_str(), X_OK) == 0) return cand;
    }
    throw SolverError("solver binary not found: " + bin);
}

std::string substitute(std::string token, const std::map<std::string, std::string>& vars) {
    for (const auto& [key, value] : vars) {
        const std::string pat = "{" + key + "}";
        for (auto pos = token.find(pat); pos != std::string::npos; pos = token.find(pat, pos + value.size()))
            token.replace(pos, pat.size(), value);
    }
    return token;
}

}  // namespace

RawSolution invoke_solver(const std::string& mps_path, const SolverProfile& profile, double gap, double timeout_seconds,
                          const std::string& solution_path, const std::string& log_path, double grace_seconds) {
    if (!fs::exists(mps_path)) throw SolverError("model file not found: " + mps_path);
    std::string bin = profile.binary;
    if (const char* env = std::getenv(kSolverBinaryEnv); env && *env) bin = env;
    bin = resolve_binary(bin);

    const std::map<std::string, std::string> vars{{"bin", bin},
                                                  {"mps", mps_path},
                                                  {"solution", solution_path},
                                                  {"gap", format_number(gap)},
                                                  {"timeout", format_number(timeout_seconds)}};
    std::vector<std::string> args;
    for (const auto& t : profile.command) args.push_back(substitute(t, vars));
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    argv.push_back(nullptr);

    std::error_code ec;
    fs::remove(solution_path, ec);
    if (fs::path(log_path).has_parent_path()) fs::create_directories(fs::path(log_path).parent_path());

    RawSolution raw;
    raw.solution_path = solution_path;
    raw.log_path = log_path;
    raw.format = profile.format;
    const auto start = std::chrono::steady_clock::now();
    const pid_t pid = ::fork();
    if (pid < 0) throw SolverError("fork failed");
    if (pid == 0) {
        ::setpgid(0, 0);
        const int fd = ::open(log_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        if (fd >= 0) {
            ::dup2(fd, STDOUT_FILENO);
            ::dup2(fd, STDERR_FILENO);
            ::close(fd);
        }
        ::execv(argv[0], argv.data());
        ::_exit(127);
    }
    int status = 0;
    const double limit = timeout_seconds + grace_seconds;
    while (true) {
        const pid_t r = ::waitpid(pid, &status, WNOHANG);
        raw.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r == pid) break;
        if (r < 0) throw SolverError("waitpid failed");
        if (raw.wall_seconds > limit) {
            ::kill(-pid, SIGKILL);
            ::kill(pid, SIGKILL);
            ::waitpid(pid, &status, 0);
            raw.timed_out = true;
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(raw.wall_seconds < 1.0 ? 1 : 10));
    }
    if (raw.timed_out)
        raw.exit_code = -1;
    else if (WIFEXITED(status))
        raw.exit_code = WEXITSTATUS(status);
    else
        raw.exit_code = 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
    return raw;
}

// --- solutions ----------------------------------------------------------------------

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::FeasibleGap: return "feasible-gap";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Error: return "error";
    }
    return "error";
}

SolveStatus parse_status(const std::string& s) {
    if (s == "optimal") return SolveStatus::Optimal;
    if (s == "feasible-gap") return SolveStatus::FeasibleGap;
    if (s == "infeasible") return SolveStatus::Infeasible;
    if (s == "error") return SolveStatus::Error;
    throw DataError("unknown solve status '" + s + "'");
}

double SolutionRecord::value(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) throw SolverError("solution has no value for " + name);
    return it->second;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

SolveStatus cbc_status(const std::string& line, std::string& message) {
    message = line;
    const std::string l = lower(line);
    if (l.rfind("optimal", 0) == 0) return SolveStatus::Optimal;
    if (l.find("infeasible") != std::string::npos && l.find("no integer solution") == std::string::npos)
        return SolveStatus::Infeasible;
    if (l.rfind("stopped", 0) == 0)
        return l.find("no integer solution") != std::string::npos ? SolveStatus::Error : SolveStatus::FeasibleGap;
    return SolveStatus::Error;
}

}  // namespace

SolutionRecord parse_solution(const std::string& text, SolutionFormat format, const NameMap& names,
                              const ModelArtifact* model) {
    SolutionRecord rec;
    std::istringstream in(text);
    std::string line;
    bool status_seen = false, objective_seen = false;
    int lineno = 0;
    if (format == SolutionFormat::Cbc) {
        if (!std::getline(in, line)) throw SolverError("empty CBC solution file");
        ++lineno;
        rec.status = cbc_status(std::string(trim(line)), rec.message);
        status_seen = true;
        const auto pos = line.find("objective value");
        if (pos != std::string::npos) {
            rec.objective = parse_number(line.substr(pos + 15));
            objective_seen = true;
        }
    }
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        std::istringstream tok{std::string(sv)};
        std::vector<std::string> f;
        for (std::string s; tok >> s;) f.push_back(s);
        if (format == SolutionFormat::Generic) {
            if (f[0] == "#") {
                if (f.size() >= 3 && f[1] == "status") {
                    rec.status = parse_status(f[2]);
                    status_seen = true;
                } else if (f.size() >= 3 && f[1] == "objective") {
                    rec.objective = parse_number(f[2]);
                    objective_seen = true;
                } else if (f.size() >= 3 && f[1] == "message") {
                    rec.message = std::string(sv.substr(sv.find("message") + 8));
                }
                continue;
            }
            if (f.size() != 2) throw SolverError("solution line " + std::to_string(lineno) + ": expected 'name value'");
            const std::string name = names.restore(f[0]);
            try {
                rec.values[name] = parse_number(f[1]);
            } catch (const DataError&) {
                throw SolverError("solution line " + std::to_string(lineno) + ": non-numeric value");
            }
        } else {
            if (f[0] == "**") f.erase(f.begin());
            if (f.size() < 3) throw SolverError("CBC solution line " + std::to_string(lineno) + ": malformed");
            if (!names.is_column_code(f[1])) continue;  // row activities
            try {
                rec.values[names.restore(f[1])] = parse_number(f[2]);
            } catch (const DataError&) {
                throw SolverError("CBC solution line " + std::to_string(lineno) + ": non-numeric value");
            }
        }
    }
    if (!status_seen) rec.status = rec.values.empty() ? SolveStatus::Error : SolveStatus::Optimal;

    const std::vector<std::string>* declared = model ? nullptr : &names.columns;
    auto fill = [&](const std::string& name, VarKind kind) {
        auto it = rec.values.find(name);
        if (it == rec.values.end()) {
            if (rec.has_solution()) {
                ++rec.missing;
                rec.values[name] = 0.0;
            }
            return;
        }
        if (kind == VarKind::Binary) {
            const double r = std::round(it->second);
            if (std::abs(it->second - r) > kIntegralityTolerance)
                throw SolverError("binary " + name + " = " + format_number(it->second) + " is not integral");
            it->second = r;
        }
    };
    if (model) {
        for (const auto& v : model->variables()) fill(v.name, v.kind);
    } else {
        for (const auto& n : *declared) fill(n, VarKind::Continuous);
    }
    if (!objective_seen && model && rec.has_solution()) rec.objective = model->evaluate_objective(values_for(*model, rec));
    return rec;
}

SolutionRecord parse_solution(const RawSolution& raw, const NameMap& names, const ModelArtifact* model) {
    SolutionRecord rec;
    if (raw.timed_out) {
        rec.status = SolveStatus::Error;
        rec.message = "solver killed after exceeding the time limit";
    } else if (raw.exit_code != 0 && !fs::exists(raw.solution_path)) {
        rec.status = SolveStatus::Error;
        rec.message = "solver exited with code " + std::to_string(raw.exit_code);
    } else if (!fs::exists(raw.solution_path)) {
        rec.status = SolveStatus::Error;
        rec.message = "solver wrote no solution file";
    } else {
        rec = parse_solution(read_file(raw.solution_path), raw.format, names, model);
        if (raw.exit_code != 0) {
            rec.status = SolveStatus::Error;
            rec.message = "solver exited with code " + std::to_string(raw.exit_code);
        }
    }
    rec.log_path = raw.log_path;
    rec.wall_seconds = raw.wall_seconds;
    return rec;
}

std::vector<double> values_for(const ModelArtifact& model, const SolutionRecord& sol) {
    std::vector<double> x(static_cast<std::size_t>(model.n_variables()), 0.0);
    for (int j = 0; j < model.n_variables(); ++j) {
        auto it = sol.values.find(model.variables()[static_cast<std::size_t>(j)].name);
        if (it != sol.values.end()) x[static_cast<std::size_t>(j)] = it->second;
    }
    return x;
}

FeasibilityReport check_feasibility(const ModelArtifact& model, const std::vector<double>& x, double tol) {
    FeasibilityReport rep;
    auto note = [&](double v, const std::string& who) {
        if (v > rep.max_violation) {
            rep.max_violation = v;
            rep.worst = who;
        }
        if (v > tol) ++rep.violations;
    };
    for (const auto& row : model.constraints()) note(violation(row, x), row.name);
    for (int j = 0; j < model.n_variables(); ++j) {
        const auto& v = model.variables()[static_cast<std::size_t>(j)];
        const double xv = x[static_cast<std::size_t>(j)];
        note(std::max(v.lb - xv, xv - v.ub), v.name);
        if (v.kind == VarKind::Binary) note(std::abs(xv - std::round(xv)), v.name);
    }
    return rep;
}

std::string solution_csv(const ModelArtifact& model, const SolutionRecord& sol) {
    std::string out = "name,value\n";
    for (const auto& v : model.variables()) {
        auto it = sol.values.find(v.name);
        if (it == sol.values.end()) continue;
        out += v.name + ',' + format_number(it->second) + '\n';
    }
    return out;
}

std::string solution_json(const SolutionRecord& sol) {
    nlohmann::ordered_json j;
    j["status"] = to_string(sol.status);
    j["objective"] = sol.objective;
    j["missing"] = sol.missing;
    j["message"] = sol.message;
    return j.dump(2) + "\n";
}

SolutionRecord parse_solution_files(const std::string& csv_text, const std::string& json_text) {
    SolutionRecord rec;
    try {
        const auto j = nlohmann::json::parse(json_text);
        rec.status = parse_status(j.at("status").get<std::string>());
        rec.objective = j.at("objective").get<double>();
        rec.missing = j.value("missing", 0);
        rec.message = j.value("message", "");
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("solution header: ") + e.what());
    }
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "name,value") throw DataError("solution.csv: unexpected header");
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto c = split(line, ',');
        if (c.size() != 2) throw DataError("solution.csv: malformed row");
        rec.values[c[0]] = parse_number(c[1]);
    }
    return rec;
}

SolutionRecord solve_model(const ModelArtifact& model, const SolverProfile& profile, const std::string& workdir,
                           const std::string& stem, double gap, double timeout_seconds) {
    fs::create_directories(workdir);
    const std::string base = (fs::path(workdir) / stem).string();
    const std::string mps = base + ".mps";
    write_mps(model, mps, base + ".varmap.csv");
    const NameMap names = make_name_map(model);
    const RawSolution raw = invoke_solver(mps, profile, gap, timeout_seconds, base + ".sol", base + ".log");
    return parse_solution(raw, names, &model);
}

}  // namespace rdtp
