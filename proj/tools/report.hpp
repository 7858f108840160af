#pragma once

// JSON and CSV forms of sweep configs, sweep reports and verification
// results. Top level is always {schema, config, results, summary}.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dunkl/czverify.hpp"
#include "dunkl/verify.hpp"

namespace dunkl::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "dunkl.report/1";

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

// ---------------------------------------------------------------------------
// Sweep configuration

inline json to_json(const cz::SweepConfig& c) {
    json eps = json::array();
    for (const auto& e : c.classes()) eps.push_back(e.bits);
    const auto& g = c.grid;
    const auto& b = c.boxes;
    return {{"d", c.dim()},
            {"alpha", std::vector<double>(c.alpha.values().begin(), c.alpha.values().end())},
            {"eps", eps},
            {"gammas", c.gammas},
            {"grid",
             {{"lo", g.lo},
              {"hi", g.hi},
              {"count", g.count},
              {"r_min", g.r_min},
              {"band", g.band},
              {"r_max", g.r_max},
              {"near_levels", g.near_levels},
              {"far_levels", g.far_levels}}},
            {"boxes", {{"e_lo", b.e_lo}, {"e_hi", b.e_hi}, {"f_lo", b.f_lo}, {"f_hi", b.f_hi}, {"count", b.count}}},
            {"coord_margin", c.coord_margin},
            {"diag_margin", c.diag_margin},
            {"fd_step", c.fd_step},
            {"zeta_points", c.zeta_points},
            {"zeta_panels", c.zeta_panels},
            {"polish_seeds", c.polish_seeds},
            {"polish_evals", c.polish_evals},
            {"seed", c.seed},
            {"samples", c.samples},
            {"mlem_b_samples", c.mlem_b_samples},
            {"lemhom_samples", c.lemhom_samples},
            {"b", c.b},
            {"c", c.c},
            {"delta", c.delta},
            {"kappa", c.kappa},
            {"lambdas", c.lambdas}};
}

namespace detail {

inline void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw cz::ConfigError("config: " + where + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw cz::ConfigError("config: unknown key '" + k + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw cz::ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
    }
}

}  // namespace detail

/// Defaults for the dimension (from "d" or the length of "alpha"), then every
/// listed key overrides. Unknown keys are errors.
inline cz::SweepConfig sweep_config_from_json(const json& j, std::size_t default_d = 1) {
    detail::require_keys(j,
                         {"d", "alpha", "eps", "gammas", "grid", "boxes", "coord_margin", "diag_margin", "fd_step",
                          "zeta_points", "zeta_panels", "polish_seeds", "polish_evals", "seed", "samples",
                          "mlem_b_samples", "lemhom_samples", "b", "c", "delta", "kappa", "lambdas"},
                         "sweep config");
    std::size_t d = default_d;
    std::vector<double> alpha;
    detail::read(j, "alpha", alpha);
    detail::read(j, "d", d);
    if (!alpha.empty() && j.contains("d") && alpha.size() != d)
        throw cz::ConfigError("config: alpha has " + std::to_string(alpha.size()) + " components but d = " +
                              std::to_string(d));
    if (!alpha.empty()) d = alpha.size();
    if (d < 1) throw cz::ConfigError("config: d must be at least 1");
    cz::SweepConfig c = cz::SweepConfig::defaults(d);
    if (!alpha.empty()) c.alpha = AlphaVec(alpha);
    if (j.contains("eps")) {
        std::vector<std::vector<int>> eps;
        detail::read(j, "eps", eps);
        c.eps.clear();
        for (auto& e : eps) c.eps.emplace_back(std::move(e));
    }
    detail::read(j, "gammas", c.gammas);
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        detail::require_keys(g, {"lo", "hi", "count", "r_min", "band", "r_max", "near_levels", "far_levels"}, "grid");
        detail::read(g, "lo", c.grid.lo);
        detail::read(g, "hi", c.grid.hi);
        detail::read(g, "count", c.grid.count);
        detail::read(g, "r_min", c.grid.r_min);
        detail::read(g, "band", c.grid.band);
        detail::read(g, "r_max", c.grid.r_max);
        detail::read(g, "near_levels", c.grid.near_levels);
        detail::read(g, "far_levels", c.grid.far_levels);
    }
    if (j.contains("boxes")) {
        const json& b = j.at("boxes");
        detail::require_keys(b, {"e_lo", "e_hi", "f_lo", "f_hi", "count"}, "boxes");
        detail::read(b, "e_lo", c.boxes.e_lo);
        detail::read(b, "e_hi", c.boxes.e_hi);
        detail::read(b, "f_lo", c.boxes.f_lo);
        detail::read(b, "f_hi", c.boxes.f_hi);
        detail::read(b, "count", c.boxes.count);
    }
    detail::read(j, "coord_margin", c.coord_margin);
    detail::read(j, "diag_margin", c.diag_margin);
    detail::read(j, "fd_step", c.fd_step);
    detail::read(j, "zeta_points", c.zeta_points);
    detail::read(j, "zeta_panels", c.zeta_panels);
    detail::read(j, "polish_seeds", c.polish_seeds);
    detail::read(j, "polish_evals", c.polish_evals);
    detail::read(j, "seed", c.seed);
    detail::read(j, "samples", c.samples);
    detail::read(j, "mlem_b_samples", c.mlem_b_samples);
    detail::read(j, "lemhom_samples", c.lemhom_samples);
    detail::read(j, "b", c.b);
    detail::read(j, "c", c.c);
    detail::read(j, "delta", c.delta);
    detail::read(j, "kappa", c.kappa);
    detail::read(j, "lambdas", c.lambdas);
    c.validate();
    return c;
}

inline cz::SweepConfig load_sweep_config(const std::string& path, std::size_t default_d = 1) {
    std::ifstream in(path);
    if (!in) throw cz::ConfigError("config: cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw cz::ConfigError("config: " + path + " is not valid JSON: " + e.what());
    }
    return sweep_config_from_json(j, default_d);
}

// ---------------------------------------------------------------------------
// Sweep reports

inline json record_json(const cz::SweepRecord& r) {
    json j{{"group", r.group}, {"x", r.x}, {"y", r.y}, {"dist", r.dist}};
    // Nonfinite values have no JSON literal; they are written as null.
    j["ratio"] = std::isfinite(r.ratio) ? json(r.ratio) : json(nullptr);
    j["log_ratio"] = std::isfinite(r.log_ratio) ? json(r.log_ratio) : json(nullptr);
    j["note"] = r.note;
    return j;
}

inline json to_json(const cz::SweepReport& rep, const cz::SweepConfig& cfg) {
    json results = json::array();
    for (const auto& r : rep.records) results.push_back(record_json(r));
    json groups = json::array();
    for (const auto& g : rep.groups)
        groups.push_back({{"group", g.group},
                          {"count", g.count},
                          {"c_emp", std::isfinite(g.c_emp) ? json(g.c_emp) : json(nullptr)},
                          {"argmax", record_json(rep.records.at(g.argmax))},
                          {"all_finite", g.all_finite}});
    json summary{{"kind", rep.kind},
                 {"records", rep.records.size()},
                 {"all_finite", rep.all_finite},
                 {"c_emp", std::isfinite(rep.c_emp) ? json(rep.c_emp) : json(nullptr)},
                 {"groups", groups},
                 {"warnings", rep.warnings}};
    if (!rep.records.empty()) summary["argmax"] = record_json(rep.records.at(rep.argmax));
    return {{"schema", kSchema}, {"config", to_json(cfg)}, {"results", results}, {"summary", summary}};
}

inline std::string to_csv(const cz::SweepReport& rep, std::size_t d) {
    std::ostringstream os;
    os << "group";
    for (std::size_t j = 0; j < d; ++j) os << ",x" << j + 1;
    for (std::size_t j = 0; j < d; ++j) os << ",y" << j + 1;
    os << ",dist,ratio,log_ratio,note\n";
    for (const auto& r : rep.records) {
        os << csv_field(r.group);
        for (double v : r.x) os << "," << num(v);
        for (double v : r.y) os << "," << num(v);
        os << "," << num(r.dist) << "," << num(r.ratio) << "," << num(r.log_ratio) << "," << csv_field(r.note)
           << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Verification results

inline json check_json(const verify::Check& c) {
    return {{"suite", c.suite},
            {"name", c.name},
            {"measured", std::isfinite(c.measured) ? json(c.measured) : json(nullptr)},
            {"tolerance", c.tolerance},
            {"pass", c.pass},
            {"detail", c.detail}};
}

inline json to_json(const std::vector<verify::SuiteResult>& suites, const json& config) {
    json results = json::array(), per_suite = json::array();
    std::size_t passed = 0, failed = 0;
    for (const auto& s : suites) {
        std::size_t sp = 0, sf = 0;
        for (const auto& c : s.checks) {
            results.push_back(check_json(c));
            (c.pass ? sp : sf)++;
        }
        passed += sp;
        failed += sf;
        per_suite.push_back({{"suite", s.suite}, {"passed", sp}, {"failed", sf}, {"seconds", s.seconds}});
    }
    return {{"schema", kSchema},
            {"config", config},
            {"results", results},
            {"summary", {{"pass", failed == 0}, {"passed", passed}, {"failed", failed}, {"suites", per_suite}}}};
}

inline std::string to_csv(const std::vector<verify::SuiteResult>& suites) {
    std::ostringstream os;
    os << "suite,name,measured,tolerance,pass,detail\n";
    for (const auto& s : suites)
        for (const auto& c : s.checks)
            os << csv_field(c.suite) << "," << csv_field(c.name) << "," << num(c.measured) << ","
               << num(c.tolerance) << "," << (c.pass ? "true" : "false") << "," << csv_field(c.detail) << "\n";
    return os.str();
}

}  // namespace dunkl::cli
