// dunkl: evaluation, verification suites and estimate sweeps.
//
// Exit codes: 0 success, 1 a check failed or a sweep produced a nonfinite
// ratio, 2 invalid arguments or configuration.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"
#include "report.hpp"

#include "dunkl/czverify.hpp"
#include "dunkl/heat.hpp"
#include "dunkl/hermite.hpp"
#include "dunkl/imagpow.hpp"
#include "dunkl/verify.hpp"

namespace {

using namespace dunkl;
using json = nlohmann::ordered_json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr const char* kThreadsEnv = "DUNKL_THREADS";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Output {
    std::string path;    // empty: stdout
    std::string format;  // json, csv or empty for the command's default

    std::string resolve(const std::string& fallback) const { return format.empty() ? fallback : format; }

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream out(path);
        if (!out) throw UsageError("cannot write output file " + path);
        out << text;
    }
};

std::string dump(const json& j) { return j.dump(1) + "\n"; }

AlphaVec alpha_for(std::vector<double> a, std::size_t d) {
    if (a.size() == 1 && d > 1) a.assign(d, a[0]);
    if (a.size() != d)
        throw UsageError("--alpha needs 1 or d = " + std::to_string(d) + " components, got " +
                         std::to_string(a.size()));
    return AlphaVec(std::move(a));
}

// --d if given, else the longest vector argument.
std::size_t infer_dim(std::size_t d, std::initializer_list<std::size_t> sizes) {
    if (d > 0) return d;
    std::size_t m = 1;
    for (std::size_t s : sizes) m = std::max(m, s);
    return m;
}

void require_size(const std::vector<double>& v, std::size_t d, const char* flag) {
    if (v.size() != d)
        throw UsageError(std::string(flag) + " needs d = " + std::to_string(d) + " components, got " +
                         std::to_string(v.size()));
}

ParityVec parity_for(std::vector<int> e, std::size_t d) {
    if (e.size() == 1 && d > 1) e.assign(d, e[0]);
    if (e.size() != d) throw UsageError("--eps needs 1 or d components");
    return ParityVec(std::move(e));
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
    std::size_t d = 0;
    std::vector<double> alpha{-0.5};
    std::vector<int> n{0};
    std::vector<double> points;
    std::vector<double> x, y;
    double t = 1.0;
    std::vector<int> eps;
    double gamma = 1.0;
    std::string route = "both";
    Output out;
};

int eval_hermite(const EvalArgs& a) {
    const std::size_t d = infer_dim(a.d, {a.n.size(), a.alpha.size()});
    const AlphaVec alpha = alpha_for(a.alpha, d);
    std::vector<int> nv = a.n;
    if (nv.size() == 1 && d > 1) nv.assign(d, nv[0]);
    if (nv.size() != d) throw UsageError("--n needs 1 or d components");
    const MultiIndex n(nv);
    if (a.points.empty() || a.points.size() % d != 0)
        throw UsageError("--points needs a nonempty multiple of d = " + std::to_string(d) + " coordinates");
    const std::size_t np = a.points.size() / d;
    std::vector<double> values(np);
    for (std::size_t k = 0; k < np; ++k)
        values[k] = hermite_fn(n, alpha, std::span<const double>(a.points).subspan(k * d, d));
    const double lambda = eigenvalue(n, alpha);
    if (a.out.resolve("csv") == "csv") {
        std::ostringstream os;
        for (std::size_t j = 0; j < d; ++j) os << (j ? "," : "") << "x" << j + 1;
        os << ",value\n";
        for (std::size_t k = 0; k < np; ++k) {
            for (std::size_t j = 0; j < d; ++j) os << (j ? "," : "") << cli::num(a.points[k * d + j]);
            os << "," << cli::num(values[k]) << "\n";
        }
        a.out.write(os.str());
        return 0;
    }
    json results = json::array();
    for (std::size_t k = 0; k < np; ++k)
        results.push_back({{"x", std::vector<double>(a.points.begin() + k * d, a.points.begin() + (k + 1) * d)},
                           {"value", values[k]}});
    a.out.write(dump({{"schema", cli::kSchema},
                      {"config", {{"command", "eval hermite"}, {"d", d}, {"alpha", a.alpha}, {"n", nv}}},
                      {"results", results},
                      {"summary", {{"eigenvalue", lambda}, {"points", np}}}}));
    return 0;
}

int eval_heat(const EvalArgs& a) {
    const std::size_t d = infer_dim(a.d, {a.x.size(), a.alpha.size()});
    const AlphaVec alpha = alpha_for(a.alpha, d);
    require_size(a.x, d, "--x");
    require_size(a.y, d, "--y");
    const HeatTime ht = HeatTime::from_t(a.t);
    double closed, series, zeta = 0.0;
    if (!a.eps.empty()) {
        const ParityVec e = parity_for(a.eps, d);
        closed = component_kernel(alpha, e, ht, a.x, a.y);
        series = component_kernel_series(alpha, e, ht, a.x, a.y);
        zeta = component_kernel_zeta(alpha, e, ht, a.x, a.y);
    } else {
        closed = heat_kernel(alpha, ht, a.x, a.y);
        series = heat_kernel_series(alpha, ht, a.x, a.y);
        for (const auto& e : all_parities(d)) zeta += component_kernel_zeta(alpha, e, ht, a.x, a.y);
    }
    const std::vector<std::pair<std::string, double>> rows{{"closed", closed}, {"series", series}, {"zeta", zeta}};
    if (a.out.resolve("csv") == "csv") {
        std::ostringstream os;
        os << "form,value,rel_diff_closed\n";
        for (const auto& [name, v] : rows)
            os << name << "," << cli::num(v) << "," << cli::num(std::abs(v - closed) / std::abs(closed)) << "\n";
        a.out.write(os.str());
        return 0;
    }
    json results = json::array();
    for (const auto& [name, v] : rows)
        results.push_back({{"form", name}, {"value", v}, {"rel_diff_closed", std::abs(v - closed) / std::abs(closed)}});
    json cfg{{"command", "eval heat"}, {"d", d}, {"alpha", a.alpha}, {"t", a.t}, {"x", a.x}, {"y", a.y}};
    if (!a.eps.empty()) cfg["eps"] = a.eps;
    a.out.write(dump({{"schema", cli::kSchema},
                      {"config", cfg},
                      {"results", results},
                      {"summary",
                       {{"max_rel_diff", std::max(std::abs(series - closed), std::abs(zeta - closed)) /
                                             std::abs(closed)}}}}));
    return 0;
}

int eval_kernel(const EvalArgs& a) {
    const std::size_t d = infer_dim(a.d, {a.x.size(), a.alpha.size()});
    const AlphaVec alpha = alpha_for(a.alpha, d);
    require_size(a.x, d, "--x");
    require_size(a.y, d, "--y");
    const ParityVec e = parity_for(a.eps.empty() ? std::vector<int>{0} : a.eps, d);
    const ImagOrder gamma(a.gamma);
    std::vector<std::pair<std::string, KernelValue>> rows;
    if (a.route == "zeta" || a.route == "both") rows.emplace_back("zeta", kernel_zeta_route(alpha, e, gamma, a.x, a.y));
    if (a.route == "t" || a.route == "both") rows.emplace_back("t", kernel_t_route(alpha, e, gamma, a.x, a.y));
    json summary = json::object();
    if (rows.size() == 2) {
        const Complex diff = rows[0].second.value - rows[1].second.value;
        summary["difference"] = std::abs(diff);
        summary["relative_difference"] = std::abs(diff) / std::abs(rows[0].second.value);
    }
    if (a.out.resolve("json") == "csv") {
        std::ostringstream os;
        os << "route,re,im,abserr\n";
        for (const auto& [name, v] : rows)
            os << name << "," << cli::num(v.value.real()) << "," << cli::num(v.value.imag()) << ","
               << cli::num(v.abserr) << "\n";
        a.out.write(os.str());
        return 0;
    }
    json results = json::array();
    for (const auto& [name, v] : rows)
        results.push_back({{"route", name}, {"re", v.value.real()}, {"im", v.value.imag()}, {"abserr", v.abserr}});
    a.out.write(dump({{"schema", cli::kSchema},
                      {"config",
                       {{"command", "eval kernel"},
                        {"d", d},
                        {"alpha", a.alpha},
                        {"eps", e.bits},
                        {"gamma", a.gamma},
                        {"x", a.x},
                        {"y", a.y},
                        {"route", a.route}}},
                      {"results", results},
                      {"summary", summary}}));
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string suite;
    std::size_t d = 0;
    std::vector<double> alpha, gammas;
    int N = 120;
    bool quick = false;
    std::uint64_t seed = 20240917;
    Output out;
};

int run_verify(const VerifyArgs& a) {
    verify::Options o;
    if (a.d > 0) o.dims = {a.d};
    if (!a.alpha.empty()) {
        const AlphaVec alpha = alpha_for(a.alpha, a.d > 0 ? a.d : a.alpha.size());
        o.alpha.assign(alpha.values().begin(), alpha.values().end());
    }
    o.gammas = a.gammas;
    for (double g : o.gammas) static_cast<void>(ImagOrder(g));
    if (a.N < 0) throw UsageError("--N must be nonnegative");
    o.N = a.N;
    o.quick = a.quick;
    o.seed = a.seed;
    const auto& names = verify::suite_names();
    if (a.suite != "all" && std::find(names.begin(), names.end(), a.suite) == names.end()) {
        std::string list;
        for (const auto& n : names) list += n + ", ";
        throw UsageError("unknown suite '" + a.suite + "' (expected " + list + "or all)");
    }
    std::vector<verify::SuiteResult> results;
    if (a.suite == "all")
        results = verify::run_all(o);
    else
        results.push_back(verify::run_suite(a.suite, o));
    bool ok = true;
    for (const auto& s : results) {
        for (const auto& c : s.checks)
            std::cerr << (c.pass ? "PASS " : "FAIL ") << c.suite << ": " << c.name << "  measured " << c.measured
                      << " tolerance " << c.tolerance << "\n";
        ok = ok && s.pass();
    }
    const json cfg{{"command", "verify"}, {"suite", a.suite}, {"d", a.d},     {"alpha", a.alpha},
                   {"gammas", a.gammas},  {"N", a.N},         {"quick", a.quick}, {"seed", a.seed}};
    a.out.write(a.out.resolve("json") == "csv" ? cli::to_csv(results) : dump(cli::to_json(results, cfg)));
    return ok ? 0 : kExitFail;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    std::string kind;
    std::string config;
    std::size_t d = 1;
    std::optional<std::uint64_t> seed;
    Output out;
};

int run_sweep(const SweepArgs& a) {
    cz::SweepConfig cfg = a.config.empty() ? cz::SweepConfig::defaults(a.d) : cli::load_sweep_config(a.config, a.d);
    if (a.seed) cfg.seed = *a.seed;
    cfg.validate();
    const cz::SweepReport rep = cz::run_sweep(a.kind, cfg);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    if (!rep.all_finite) {
        const auto& r = rep.records.at(rep.argmax);
        std::cerr << "nonfinite ratio in group '" << r.group << "'" << (r.note.empty() ? "" : ": " + r.note) << "\n";
    }
    a.out.write(a.out.resolve("json") == "csv" ? cli::to_csv(rep, cfg.dim()) : dump(cli::to_json(rep, cfg)));
    return rep.all_finite ? 0 : kExitFail;
}

int default_threads() {
    if (const char* env = std::getenv(kThreadsEnv)) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string(kThreadsEnv) + " must be a positive integer");
    }
    return 0;
}

void add_output(CLI::App* cmd, Output& out) {
    cmd->add_option("--out,-o", out.path, "Output file (default: stdout)");
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Hermite functions, Dunkl heat kernels, imaginary powers and their kernel estimates"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: $DUNKL_THREADS or all cores)")
        ->check(CLI::PositiveNumber);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Evaluate a Hermite function, heat kernel or imaginary-power kernel");
    eval->require_subcommand(1);
    auto* eh = eval->add_subcommand("hermite", "h_n^alpha at points");
    auto* et = eval->add_subcommand("heat", "Heat kernel in closed, series and zeta form");
    auto* ek = eval->add_subcommand("kernel", "Kernel of L^{-i gamma} restricted to a parity class");
    for (auto* c : {eh, et, ek}) {
        c->add_option("--d", ev.d, "Dimension (default: inferred)");
        c->add_option("--alpha", ev.alpha, "Multiplicity, one value or d values, each >= -1/2")->delimiter(',');
        add_output(c, ev.out);
    }
    eh->add_option("--n", ev.n, "Multi-index")->delimiter(',');
    eh->add_option("--points", ev.points, "Points, d coordinates each, comma separated")->delimiter(',')->required();
    for (auto* c : {et, ek}) {
        c->add_option("--x", ev.x, "Point x")->delimiter(',')->required();
        c->add_option("--y", ev.y, "Point y")->delimiter(',')->required();
        c->add_option("--eps", ev.eps, "Parity class, 0/1 per coordinate")->delimiter(',');
    }
    et->add_option("--t", ev.t, "Time t > 0");
    ek->add_option("--gamma", ev.gamma, "Imaginary order gamma != 0");
    ek->add_option("--route", ev.route, "zeta, t or both")->check(CLI::IsMember({"zeta", "t", "both"}));

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("suite", va.suite, "Suite name or 'all'")->required();
    ver->add_option("--d", va.d, "Restrict to one dimension");
    ver->add_option("--alpha", va.alpha, "Restrict to one alpha")->delimiter(',');
    ver->add_option("--gamma", va.gammas, "Imaginary orders")->delimiter(',');
    ver->add_option("--N", va.N, "Duality truncation degree");
    ver->add_flag("--quick", va.quick, "Reduced case lists");
    ver->add_option("--seed", va.seed, "Random seed");
    add_output(ver, va.out);

    SweepArgs sa;
    auto* sw = app.add_subcommand("sweep", "Empirical constants of the kernel estimates");
    sw->add_option("kind", sa.kind, "growth, smoothness, mlem, lemhom or der-est")->required();
    sw->add_option("--config", sa.config, "Sweep config JSON");
    sw->add_option("--d", sa.d, "Dimension for the default config");
    sw->add_option("--seed", sa.seed, "Random seed (overrides the config)");
    add_output(sw, sa.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (threads == 0) threads = default_threads();
#ifdef _OPENMP
        if (threads > 0) omp_set_num_threads(threads);
#endif
        if (eh->parsed()) return eval_hermite(ev);
        if (et->parsed()) return eval_heat(ev);
        if (ek->parsed()) return eval_kernel(ev);
        if (ver->parsed()) return run_verify(va);
        if (sw->parsed()) return run_sweep(sa);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
