#pragma once

// Named verification suites. Every check compares a measured quantity with a
// pinned tolerance and passes iff measured <= tolerance, so NaN never passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dunkl/czverify.hpp"
#include "dunkl/heat.hpp"
#include "dunkl/hermite.hpp"
#include "dunkl/imagpow.hpp"
#include "dunkl/measure.hpp"

namespace dunkl::verify {

struct Check {
    std::string suite, name;
    double measured = 0.0, tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

/// A suite asked to run in a dimension it does not cover.
class UnsupportedDimension : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::vector<std::size_t> dims;  // empty: the suite's default dimensions
    std::vector<double> alpha;      // empty: the suite's default alpha cases
    std::vector<double> gammas;     // empty: 0.5, 1, 3
    int N = 120;                    // duality truncation degree
    bool quick = false;
    std::uint64_t seed = 20240917;
};

// Pinned tolerances.
inline constexpr double kOrthoTol = 1e-8;
inline constexpr double kEigenTol = 1e-6;
inline constexpr double kHeatTol = 1e-8;
inline constexpr double kSemigroupTol = 1e-6;
inline constexpr double kUnimodularTol = 1e-15;
inline constexpr double kIsometryTol = 1e-10;
inline constexpr double kDualityTol = 1e-4;
inline constexpr double kRoutesTol = 1e-6;
inline constexpr double kClassicalTol = 1e-10;
inline constexpr double kRefinementTol = 0.2;
inline constexpr double kScalingTol = 2.0;
inline constexpr double kFinite = std::numeric_limits<double>::max();

inline constexpr int kDualityConvergedDegree = 2400;

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"orthonormality", "eigen",  "heat-equiv", "semigroup", "classical",
                                                "isometry",       "duality", "routes",    "der-est",   "growth",
                                                "smoothness",     "mlem",    "lemhom"};
    return names;
}

namespace detail {

inline Check check(const std::string& suite, std::string name, double measured, double tol, std::string detail = {}) {
    return {suite, std::move(name), measured, tol, measured <= tol, std::move(detail)};
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
inline double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

inline std::string fmt(const std::vector<double>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

inline std::string alpha_label(const AlphaVec& a) {
    return "d=" + std::to_string(a.dim()) + " alpha=" + fmt({a.values().begin(), a.values().end()});
}

inline std::string dims_label(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t d : v) s += (s.empty() ? "" : ", ") + std::to_string(d);
    return s;
}

/// Dimensions a suite runs in: the requested ones, which must all be supported.
inline std::vector<std::size_t> dims_for(const std::string& suite, const Options& o,
                                         const std::vector<std::size_t>& defaults,
                                         const std::vector<std::size_t>& supported) {
    std::vector<std::size_t> want = o.dims;
    if (!o.alpha.empty()) want = {o.alpha.size()};
    if (want.empty()) return defaults;
    for (std::size_t d : want)
        if (std::find(supported.begin(), supported.end(), d) == supported.end())
            throw UnsupportedDimension(suite + ": supported dimensions are d in {" + dims_label(supported) + "}");
    return want;
}

/// (-1/2)^d, 0^d and the mixed (1/2, 0, ..., 0), or the requested alpha.
inline std::vector<AlphaVec> alpha_cases(const Options& o, std::size_t d) {
    if (!o.alpha.empty()) return {AlphaVec(o.alpha)};
    std::vector<double> mixed(d, 0.0);
    mixed[0] = 0.5;
    std::vector<AlphaVec> out{AlphaVec::uniform(d, -0.5), AlphaVec::uniform(d, 0.0), AlphaVec(mixed)};
    if (o.quick) out.resize(1);
    return out;
}

inline std::vector<double> gammas(const Options& o) {
    if (!o.gammas.empty()) return o.gammas;
    if (o.quick) return {1.0};
    return {0.5, 1.0, 3.0};
}

// Classical Hermite functions by the normalized three-term recurrence.
inline std::vector<double> classical_hermite(int nmax, double x) {
    std::vector<double> h(nmax + 1);
    h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (nmax >= 1) h[1] = std::sqrt(2.0) * x * h[0];
    for (int n = 1; n < nmax; ++n)
        h[n + 1] = std::sqrt(2.0 / (n + 1)) * x * h[n] - std::sqrt(double(n) / (n + 1)) * h[n - 1];
    return h;
}

// Classical Mehler kernel on R.
inline double mehler(double t, double x, double y) {
    const double s = std::sinh(2 * t), c = std::cosh(2 * t);
    return std::exp(-((x * x + y * y) * c - 2 * x * y) / (2 * s)) / std::sqrt(2 * std::numbers::pi * s);
}

inline double smooth_test_fn(std::span<const double> x) {
    double v = 1.0, r2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        v *= 1.0 + 0.3 * (j + 1) * x[j] - 0.2 * x[j] * x[j];
        r2 += x[j] * x[j];
    }
    return v * std::exp(-0.7 * r2);
}

}  // namespace detail

/// max |<h_n, h_m> - delta_nm| over |n|, |m| <= 12 with the full-space Gauss rule.
inline std::vector<Check> orthonormality(const Options& o) {
    std::vector<Check> out;
    const int deg = o.quick ? 8 : 12;
    for (std::size_t d : detail::dims_for("orthonormality", o, {1, 2, 3}, {1, 2, 3})) {
        for (const auto& a : detail::alpha_cases(o, d)) {
            const auto idx = enumerate_upto(d, deg);
            const QuadRule rule = full_space_rule(weighted_quad_rule(a, deg / 2 + 8));
            const Eigen::MatrixXd g = gram_matrix(a, idx, rule);
            const double err = (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
            out.push_back(detail::check("orthonormality", detail::alpha_label(a) + " |n|<=" + std::to_string(deg), err,
                                        kOrthoTol, std::to_string(idx.size()) + " functions"));
        }
    }
    return out;
}

/// max_n sup_x |(-Delta_alpha + |x|^2) h_n - lambda_n h_n| / sup_x |h_n| over
/// 200 random points off the coordinate hyperplanes.
inline std::vector<Check> eigen(const Options& o) {
    std::vector<Check> out;
    const int deg = o.quick ? 6 : 10;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> ux(0.05, 4.0), us(-1.0, 1.0);
    for (std::size_t d : detail::dims_for("eigen", o, {1, 2}, {1, 2})) {
        for (const auto& a : detail::alpha_cases(o, d)) {
            std::vector<std::vector<double>> pts(200, std::vector<double>(d));
            for (auto& p : pts)
                for (auto& v : p) v = (us(rng) < 0 ? -1 : 1) * ux(rng);
            double worst = 0.0;
            for (const auto& n : enumerate_upto(d, deg)) {
                const HermiteFunction h{n, a};
                const double lam = eigenvalue(n, a);
                double res = 0.0, sup = 0.0;
                for (const auto& p : pts) {
                    res = std::max(res, std::abs(oscillator_apply(a, h, p) - lam * h.value(p)));
                    sup = std::max(sup, std::abs(h.value(p)));
                }
                worst = std::max(worst, res / sup);
            }
            out.push_back(detail::check("eigen", detail::alpha_label(a) + " |n|<=" + std::to_string(deg), worst,
                                        kEigenTol, "200 points"));
        }
    }
    return out;
}

/// Closed form, Laguerre series and zeta form of the heat kernel pairwise, per
/// component and summed, on random (x, y, t) with t in [0.2, 2].
inline std::vector<Check> heat_equiv(const Options& o) {
    std::vector<Check> out;
    const int tuples = o.quick ? 8 : 20;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> ux(0.2, 3.0), ut(0.2, 2.0);
    for (std::size_t d : detail::dims_for("heat-equiv", o, {1, 2}, {1, 2})) {
        for (const auto& a : detail::alpha_cases(o, d)) {
            double worst = 0.0;
            for (int k = 0; k < tuples; ++k) {
                std::vector<double> x(d), y(d);
                for (std::size_t i = 0; i < d; ++i) {
                    x[i] = ux(rng);
                    y[i] = ux(rng);
                }
                const HeatTime h = HeatTime::from_t(ut(rng));
                const double closed = heat_kernel(a, h, x, y);
                worst = std::max(worst, detail::rel(heat_kernel_series(a, h, x, y), closed));
                double zsum = 0.0;
                for (const auto& e : all_parities(d)) {
                    const double c = component_kernel(a, e, h, x, y);
                    const double z = component_kernel_zeta(a, e, h, x, y);
                    const double s = component_kernel_series(a, e, h, x, y);
                    worst = std::max({worst, detail::rel(z, c), detail::rel(s, c), detail::rel(z, s)});
                    zsum += z;
                }
                worst = std::max(worst, detail::rel(zsum, closed));
            }
            out.push_back(detail::check("heat-equiv", detail::alpha_label(a), worst, kHeatTol,
                                        std::to_string(tuples) + " tuples"));
        }
    }
    return out;
}

/// int G_t(x, z) G_s(z, y) dw(z) = G_{t+s}(x, y) in d = 1.
inline std::vector<Check> semigroup(const Options& o) {
    std::vector<Check> out;
    detail::dims_for("semigroup", o, {1}, {1});
    for (const auto& a : detail::alpha_cases(o, 1)) {
        const double al = a[0];
        double worst = 0.0;
        for (auto [t, s] : {std::pair{0.4, 0.7}, std::pair{0.2, 1.5}}) {
            const HeatTime ht = HeatTime::from_t(t), hs = HeatTime::from_t(s), hts = HeatTime::from_t(t + s);
            const double c = 0.5 * (1 / std::tanh(2 * t) + 1 / std::tanh(2 * s));
            const QuadRule rule = full_space_rule(weighted_quad_rule(a, 80, 1.0 / std::sqrt(c)));
            for (auto [x, y] : {std::pair{0.5, 1.2}, std::pair{-1.0, 0.3}, std::pair{2.0, 2.0}}) {
                const double v = rule.integrate(
                    [&](auto z) { return heat_kernel_1d(al, ht, x, z[0]) * heat_kernel_1d(al, hs, z[0], y); });
                worst = std::max(worst, detail::rel(v, heat_kernel_1d(al, hts, x, y)));
            }
        }
        out.push_back(detail::check("semigroup", detail::alpha_label(a), worst, kSemigroupTol));
    }
    return out;
}

/// alpha = (-1/2)^d against the classical Hermite recurrence and Mehler kernel.
inline std::vector<Check> classical(const Options& o) {
    std::vector<Check> out;
    for (std::size_t d : detail::dims_for("classical", o, {1, 2}, {1, 2})) {
        const AlphaVec a = AlphaVec::uniform(d, -0.5);
        double herr = 0.0;
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> ux(-6.0, 6.0), ut(0.05, 4.0);
        for (int k = 0; k < 40; ++k) {
            std::vector<double> x(d);
            for (auto& v : x) v = ux(rng);
            std::vector<std::vector<double>> tab;
            for (double v : x) tab.push_back(detail::classical_hermite(30, v));
            for (const auto& n : enumerate_upto(d, d == 1 ? 30 : 16)) {
                double c = 1.0;
                for (std::size_t j = 0; j < d; ++j) c *= tab[j][n[j]];
                herr = std::max(herr, std::abs(hermite_fn(n, a, x) - c));
            }
        }
        out.push_back(detail::check("classical", "hermite d=" + std::to_string(d), herr, kClassicalTol,
                                    "absolute, 40 random points"));
        double kerr = 0.0;
        for (int k = 0; k < 60; ++k) {
            std::vector<double> x(d), y(d);
            for (std::size_t j = 0; j < d; ++j) {
                x[j] = 0.5 * ux(rng);
                y[j] = 0.5 * ux(rng);
            }
            const double t = ut(rng);
            double m = 1.0;
            for (std::size_t j = 0; j < d; ++j) m *= detail::mehler(t, x[j], y[j]);
            kerr = std::max(kerr, detail::rel(heat_kernel(a, HeatTime::from_t(t), x, y), m));
        }
        out.push_back(detail::check("classical", "mehler d=" + std::to_string(d), kerr, kClassicalTol,
                                    "relative, 60 random (x, y, t)"));
    }
    return out;
}

/// |lambda_n^{-i gamma}| = 1 and ||L^{-i gamma} P_{<=N} f|| = ||P_{<=N} f||.
inline std::vector<Check> isometry(const Options& o) {
    std::vector<Check> out;
    const int N = o.quick ? 10 : 16;
    for (std::size_t d : detail::dims_for("isometry", o, {1, 2}, {1, 2})) {
        for (const auto& a : detail::alpha_cases(o, d)) {
            double unimod = 0.0;
            for (double g : detail::gammas(o))
                for (const auto& n : enumerate_upto(d, d == 1 ? 400 : 60))
                    unimod = std::max(unimod, std::abs(std::abs(specfun::imaginary_power(eigenvalue(n, a), g)) - 1.0));
            out.push_back(detail::check("isometry", "unimodular " + detail::alpha_label(a), unimod, kUnimodularTol));

            const QuadRule rule = full_space_rule(weighted_quad_rule(a, 30));
            const auto f = sample_on(rule, detail::smooth_test_fn);
            GridFunction<double> pf{f.dim, f.points, std::vector<double>(f.size())};
            for (int m = 0; m <= N; ++m) {
                const auto pm = spectral_project(a, f, m, rule);
                for (std::size_t k = 0; k < f.size(); ++k) pf.values[k] += pm.values[k];
            }
            double np = 0.0;
            for (std::size_t k = 0; k < rule.size(); ++k) np += rule.weights[k] * pf.values[k] * pf.values[k];
            double worst = 0.0;
            for (double g : detail::gammas(o)) {
                const auto lf = imagpow_spectral(a, ImagOrder(g), f, N, rule);
                double nl = 0.0;
                for (std::size_t k = 0; k < rule.size(); ++k) nl += rule.weights[k] * std::norm(lf.values[k]);
                worst = std::max(worst, std::abs(std::sqrt(nl) - std::sqrt(np)) / std::sqrt(np));
            }
            out.push_back(detail::check("isometry", "truncated norm " + detail::alpha_label(a) + " N=" +
                                                        std::to_string(N),
                                        worst, kIsometryTol));
        }
    }
    return out;
}

/// Spectral against kernel bilinear form for f on (1, 2), g on (3, 4), d = 1,
/// both parity classes. Each case is repeated at a degree where the truncated
/// spectral sum has converged, which separates truncation from disagreement.
inline std::vector<Check> duality(const Options& o) {
    std::vector<Check> out;
    detail::dims_for("duality", o, {1}, {1});
    std::vector<AlphaVec> alphas;
    if (!o.alpha.empty())
        alphas = {AlphaVec(o.alpha)};
    else if (o.quick)
        alphas = {AlphaVec{0.0}};
    else
        alphas = {AlphaVec{-0.5}, AlphaVec{0.0}, AlphaVec{0.5}};
    const auto gs = detail::gammas(o);
    const bool converge = !o.quick && o.N < kDualityConvergedDegree;
    const Bump f({1.0}, {2.0}), g({3.0}, {4.0});
    for (const auto& a : alphas)
        for (const auto& e : all_parities(1)) {
            const auto kernel = duality_kernel_side(a, e, gs, f, g);
            for (std::size_t q = 0; q < gs.size(); ++q) {
                const std::string tag = detail::alpha_label(a) + " eps=" + std::to_string(e[0]) +
                                        " gamma=" + cz::detail::gamma_label(gs[q]);
                const Complex spec = duality_spectral_side(a, e, ImagOrder(gs[q]), f, g, o.N);
                std::ostringstream det;
                det.precision(10);
                det << "spectral " << spec << " kernel " << kernel[q];
                out.push_back(detail::check("duality", tag + " N=" + std::to_string(o.N),
                                            detail::rel(spec, kernel[q]), kDualityTol, det.str()));
                if (!converge) continue;
                const auto sums =
                    duality_spectral_partial_sums(a, e, ImagOrder(gs[q]), f, g, kDualityConvergedDegree);
                std::ostringstream conv;
                conv.precision(3);
                conv << "relative gap";
                for (int n : {o.N, 600, 1200, kDualityConvergedDegree})
                    conv << (n == o.N ? " " : ", ") << "N=" << n << ": " << detail::rel(sums[n], kernel[q]);
                out.push_back(detail::check("duality", "converged " + tag + " N=" +
                                                           std::to_string(kDualityConvergedDegree),
                                            detail::rel(sums.back(), kernel[q]), kDualityTol, conv.str()));
            }
        }
    return out;
}

/// Subordination t route against the zeta route on 50 random tuples, d <= 2.
inline std::vector<Check> routes(const Options& o) {
    const auto dims = detail::dims_for("routes", o, {1, 2}, {1, 2});
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> pos(0.2, 3.0), gam(0.3, 3.0), sgn(0.0, 1.0);
    const double alphas[] = {-0.5, 0.0, 0.5, 1.25};
    const int trials = o.quick ? 10 : 50;
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t d = dims[trial % dims.size()];
        std::vector<double> a(d), x(d), y(d);
        std::vector<int> e(d);
        double dist = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            a[j] = o.alpha.empty() ? alphas[rng() % 4] : o.alpha[j];
            e[j] = static_cast<int>(rng() % 2);
            x[j] = pos(rng);
            y[j] = pos(rng);
            dist += (x[j] - y[j]) * (x[j] - y[j]);
        }
        if (dist < 0.01) y[0] += 0.5;
        const double g = (sgn(rng) < 0.5 ? -1.0 : 1.0) * gam(rng);
        const AlphaVec alpha(a);
        const ParityVec eps(e);
        const Complex kz = kernel_zeta_route(alpha, eps, ImagOrder(g), x, y).value;
        const Complex kt = kernel_t_route(alpha, eps, ImagOrder(g), x, y).value;
        worst = std::max(worst, detail::rel(kz, kt));
    }
    return {detail::check("routes", std::to_string(trials) + " random tuples d in {" + detail::dims_label(dims) + "}",
                          worst, kRoutesTol)};
}

namespace detail {

inline cz::SweepConfig sweep_config(const Options& o, std::size_t d, const AlphaVec& a) {
    cz::SweepConfig cfg = cz::SweepConfig::defaults(d);
    cfg.alpha = a;
    cfg.seed = o.seed;
    if (!o.gammas.empty()) cfg.gammas = o.gammas;
    if (o.quick) {
        cfg.grid.count = std::max(3, cfg.grid.count / 2);
        cfg.samples = std::min(cfg.samples, 2000);
        cfg.mlem_b_samples = 400;
        cfg.lemhom_samples = std::min(cfg.lemhom_samples, 400);
    }
    return cfg;
}

inline std::string report_detail(const cz::SweepReport& r) {
    std::ostringstream os;
    os.precision(4);
    const auto& rec = r.records.at(r.argmax);
    os << "C_emp " << r.c_emp << " in group '" << rec.group << "' at x=" << fmt(rec.x) << " y=" << fmt(rec.y)
       << " |x-y|=" << rec.dist;
    return os.str();
}

/// Largest ratio between the per-lambda constants of matching groups.
inline double scaling_spread(const cz::SweepReport& r, const std::string& prefix, const std::vector<double>& lambdas) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double l : lambdas) {
        const double c = r.group(prefix + "lambda=" + cz::detail::gamma_label(l)).c_emp;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return hi / lo;
}

// Finiteness, refinement stability and the location of the maximum.
inline void sweep_checks(const std::string& suite, const Options& o, std::vector<Check>& out) {
    for (std::size_t d : dims_for(suite, o, {1, 2}, {1, 2})) {
        for (const auto& a : alpha_cases(o, d)) {
            const cz::SweepConfig cfg = sweep_config(o, d, a);
            cz::SweepConfig fine = cfg;
            fine.grid = cfg.grid.refined();
            const auto coarse = cz::run_sweep(suite, cfg);
            const auto refined = cz::run_sweep(suite, fine);
            const std::string tag = alpha_label(a);
            out.push_back(check(suite, "finite " + tag, refined.c_emp, kFinite, report_detail(refined)));
            out.push_back(check(suite, "refinement " + tag, cz::refinement_change(coarse, refined), kRefinementTol,
                                "coarse C_emp " + std::to_string(coarse.c_emp) + ", refined " +
                                    std::to_string(refined.c_emp)));
            const auto& top = refined.records.at(refined.argmax);
            out.push_back(check(suite, "argmax band " + tag, top.dist, fine.grid.band,
                                "argmax |x-y| against the near-diagonal band " + std::to_string(fine.grid.band)));
        }
    }
}

}  // namespace detail

/// int_0^inf |dG_t/dt| dt over E = [1, 2]^d, F = [3, 4]^d grids: one finite constant.
inline std::vector<Check> der_est(const Options& o) {
    std::vector<Check> out;
    for (std::size_t d : detail::dims_for("der-est", o, {1, 2}, {1, 2}))
        for (const auto& a : detail::alpha_cases(o, d)) {
            const auto rep = cz::der_est_sweep(detail::sweep_config(o, d, a));
            out.push_back(detail::check("der-est", "bounded " + detail::alpha_label(a), rep.c_emp, kFinite,
                                        detail::report_detail(rep)));
        }
    return out;
}

inline std::vector<Check> growth(const Options& o) {
    std::vector<Check> out;
    detail::sweep_checks("growth", o, out);
    return out;
}

inline std::vector<Check> smoothness(const Options& o) {
    std::vector<Check> out;
    detail::sweep_checks("smoothness", o, out);
    return out;
}

/// Part (a) finite in both sign couplings; part (b) finite and within 2x
/// across the scalings (lambda x, lambda y), for b = 0 and b = 1/2.
inline std::vector<Check> mlem(const Options& o) {
    std::vector<Check> out;
    for (std::size_t d : detail::dims_for("mlem", o, {1, 2}, {1, 2}))
        for (const auto& a : detail::alpha_cases(o, d))
            for (double b : {0.0, 0.5}) {
                cz::SweepConfig cfg = detail::sweep_config(o, d, a);
                cfg.b = b;
                const auto rep = cz::mlem_check(cfg);
                const std::string tag = detail::alpha_label(a) + " b=" + cz::detail::gamma_label(b);
                for (const char* g : {"a+", "a-"})
                    out.push_back(detail::check("mlem", std::string("finite (") + g + ") " + tag,
                                                rep.group(g).c_emp, kFinite,
                                                std::to_string(rep.group(g).count) + " samples"));
                out.push_back(detail::check("mlem", "finite (b) " + tag,
                                            rep.group("b lambda=1").c_emp, kFinite));
                out.push_back(detail::check("mlem", "scaling (b) " + tag,
                                            detail::scaling_spread(rep, "b ", cfg.lambdas), kScalingTol,
                                            "max/min C_emp over lambda"));
            }
    return out;
}

/// Both displays with delta = kappa = 0 and with delta = (1, ..., 1), the
/// choice delta = eps of the odd class; finite, within 2x across scalings and
/// stable when the sample count doubles.
inline std::vector<Check> lemhom(const Options& o) {
    std::vector<Check> out;
    for (std::size_t d : detail::dims_for("lemhom", o, {1, 2}, {1, 2}))
        for (const auto& a : detail::alpha_cases(o, d))
            for (double dv : {0.0, 1.0}) {
                cz::SweepConfig cfg = detail::sweep_config(o, d, a);
                cfg.delta.assign(d, dv);
                const auto rep = cz::lemhom_check(cfg);
                cz::SweepConfig more = cfg;
                more.lemhom_samples *= 2;
                const auto rep2 = cz::lemhom_check(more);
                const std::string tag = detail::alpha_label(a) + " delta=" + detail::fmt(cfg.delta);
                out.push_back(detail::check("lemhom", "finite " + tag, rep.c_emp, kFinite, detail::report_detail(rep)));
                for (const char* part : {"first", "second"})
                    out.push_back(detail::check("lemhom", std::string("scaling ") + part + " " + tag,
                                                detail::scaling_spread(rep, std::string(part) + " ", cfg.lambdas),
                                                kScalingTol, "max/min C_emp over lambda"));
                out.push_back(detail::check("lemhom", "refinement " + tag, cz::refinement_change(rep, rep2),
                                            kRefinementTol, "doubled sample count"));
            }
    return out;
}

/// Runs one suite and times it.
inline SuiteResult run_suite(const std::string& name, const Options& o) {
    using Fn = std::vector<Check> (*)(const Options&);
    static const std::vector<std::pair<std::string, Fn>> table{
        {"orthonormality", orthonormality}, {"eigen", eigen},     {"heat-equiv", heat_equiv},
        {"semigroup", semigroup},           {"classical", classical}, {"isometry", isometry},
        {"duality", duality},               {"routes", routes},   {"der-est", der_est},
        {"growth", growth},                 {"smoothness", smoothness}, {"mlem", mlem},
        {"lemhom", lemhom}};
    for (const auto& [n, fn] : table)
        if (n == name) {
            const auto t0 = std::chrono::steady_clock::now();
            SuiteResult r{name, fn(o), 0.0};
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return r;
        }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

/// Every suite that supports the requested dimensions.
inline std::vector<SuiteResult> run_all(const Options& o) {
    std::vector<SuiteResult> out;
    for (const auto& name : suite_names()) {
        try {
            out.push_back(run_suite(name, o));
        } catch (const UnsupportedDimension&) {
            // The suite does not run in the requested dimension.
        }
    }
    return out;
}

}  // namespace dunkl::verify
