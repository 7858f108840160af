#pragma once

// Empirical constants for the standard estimates of K_gamma^{alpha,eps}: the
// growth and smoothness ratios against 1/w^+(B^+(x, |x-y|)), the two bounds
// behind them (m_lem, lemhom) on random samples, and the uniform bound of
// int |dG/dt| dt over separated boxes. Every ratio is formed in log space.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dunkl/heat.hpp"
#include "dunkl/imagpow.hpp"
#include "dunkl/measure.hpp"

namespace dunkl::cz {

/// Invalid sweep configuration (bad ranges, margins touching the diagonal or
/// the coordinate hyperplanes).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Pairs (x, x + r u) inside the box [lo, hi]^d: x on a tensor grid, r on two
/// geometric ladders split at `band` plus the distance where the ray leaves
/// the box, u over the 2^d diagonal directions (+-1, ..., +-1)/sqrt(d).
struct GridSpec {
    double lo = 0.2, hi = 5.0;
    int count = 12;
    double r_min = 1e-3, band = 0.05, r_max = 4.0;
    int near_levels = 5;  // ladder points in [r_min, band]
    int far_levels = 8;   // ladder points in (band, r_max]

    /// Twice the density: every old grid point and radius survives.
    GridSpec refined() const {
        GridSpec g = *this;
        g.count = 2 * count - 1;
        g.near_levels = 2 * near_levels - 1;
        g.far_levels = 2 * far_levels;
        return g;
    }
};

/// Boxes E = [e_lo, e_hi]^d and F = [f_lo, f_hi]^d for the der-est sweep.
struct BoxPair {
    double e_lo = 1.0, e_hi = 2.0, f_lo = 3.0, f_hi = 4.0;
    int count = 10;
};

struct SweepConfig {
    AlphaVec alpha{-0.5};
    std::vector<ParityVec> eps;  // empty means all 2^d classes
    std::vector<double> gammas{0.5, 1.0, 3.0};
    GridSpec grid;
    BoxPair boxes;
    double coord_margin = 0.1;
    double diag_margin = 1e-4;
    double fd_step = 1e-4;  // h = fd_step * min(|x-y|, 1)
    int zeta_points = 8;
    int zeta_panels = 30;
    int polish_seeds = 3;    // grid maxima per group refined by compass search
    int polish_evals = 120;  // evaluation budget per seed
    // Random-sample checks.
    std::uint64_t seed = 20240917;
    int samples = 10000;         // (x, y, s, zeta) draws for m_lem part (a)
    int mlem_b_samples = 2000;   // of those, the ones used for the zeta integrals of part (b)
    int lemhom_samples = 4000;
    double b = 0.0, c = kEnvelopeDecay;
    std::vector<double> delta, kappa;  // empty means zeros
    std::vector<double> lambdas{0.25, 1.0, 4.0};

    std::size_t dim() const { return alpha.dim(); }

    std::vector<ParityVec> classes() const { return eps.empty() ? all_parities(dim()) : eps; }

    /// Defaults sized for desk runs in dimension d.
    static SweepConfig defaults(std::size_t d) {
        SweepConfig c;
        c.alpha = AlphaVec::uniform(d, -0.5);
        if (d >= 2) {
            c.grid.lo = 0.3;
            c.grid.hi = 3.0;
            c.grid.count = 4;
            c.grid.near_levels = 4;
            c.grid.far_levels = 5;
            c.grid.r_max = 2.0;
            c.boxes.count = 4;
            c.samples = 4000;
            c.lemhom_samples = 500;
        }
        return c;
    }

    void validate() const {
        const std::size_t d = dim();
        for (const auto& e : classes())
            if (e.dim() != d) throw ConfigError("sweep: eps dimension does not match alpha");
        if (gammas.empty()) throw ConfigError("sweep: at least one gamma required");
        for (double g : gammas)
            if (!(g != 0.0) || !std::isfinite(g)) throw ConfigError("sweep: gamma must be nonzero and finite");
        if (!(coord_margin > 0.0) || !(diag_margin > 0.0)) throw ConfigError("sweep: margins must be positive");
        const GridSpec& g = grid;
        if (!(g.lo < g.hi) || g.count < 1) throw ConfigError("sweep: grid needs lo < hi and count >= 1");
        if (g.lo < coord_margin)
            throw ConfigError("sweep: grid touches the coordinate hyperplanes (lo < coordinate margin " +
                              std::to_string(coord_margin) + ")");
        if (!(g.r_min >= diag_margin))
            throw ConfigError("sweep: grid touches the diagonal (r_min < diagonal margin " +
                              std::to_string(diag_margin) + ")");
        if (!(g.r_min <= g.band && g.band < g.r_max) || g.near_levels < 1 || g.far_levels < 0)
            throw ConfigError("sweep: separation ladder needs r_min <= band < r_max and positive level counts");
        if (!(boxes.e_lo >= coord_margin && boxes.e_lo < boxes.e_hi && boxes.f_lo < boxes.f_hi &&
              boxes.f_lo >= coord_margin && boxes.count >= 1))
            throw ConfigError("sweep: boxes must be nonempty and respect the coordinate margin");
        if (!(boxes.e_hi < boxes.f_lo || boxes.f_hi < boxes.e_lo))
            throw ConfigError("sweep: boxes E and F must be disjoint");
        if (!(fd_step > 0.0)) throw ConfigError("sweep: fd_step must be positive");
        if (zeta_points < 8 || zeta_panels < 8) throw ConfigError("sweep: zeta rule too coarse");
        if (polish_seeds < 0 || polish_evals < 0) throw ConfigError("sweep: polish settings must be nonnegative");
        if (samples < 1 || mlem_b_samples < 1 || lemhom_samples < 1)
            throw ConfigError("sweep: sample counts must be positive");
        if (!(b >= 0.0)) throw ConfigError("mlem: b must satisfy b >= 0");
        if (!(c > 0.0)) throw ConfigError("mlem: c must satisfy c > 0");
        for (const auto* v : {&delta, &kappa}) {
            if (!v->empty() && v->size() != d) throw ConfigError("lemhom: delta and kappa need d components");
            for (double t : *v)
                if (!(t >= 0.0)) throw ConfigError("lemhom: delta and kappa must be nonnegative");
        }
        for (double l : lambdas)
            if (!(l > 0.0)) throw ConfigError("sweep: scaling factors must be positive");
    }
};

struct SweepRecord {
    std::string group;
    std::vector<double> x, y;
    double log_ratio = 0.0;
    double ratio = 0.0;
    double dist = 0.0;
    std::string note;

    /// A zero ratio (log_ratio = -inf) counts as finite.
    bool finite() const { return std::isfinite(ratio) && !std::isnan(log_ratio) && log_ratio < HUGE_VAL; }
};

struct GroupSummary {
    std::string group;
    std::size_t count = 0;
    double c_emp = 0.0;
    std::size_t argmax = 0;  // index into SweepReport::records
    bool all_finite = true;
};

struct SweepReport {
    std::string kind;
    std::vector<SweepRecord> records;
    std::vector<GroupSummary> groups;
    std::vector<std::string> warnings;
    double c_emp = 0.0;
    std::size_t argmax = 0;
    bool all_finite = true;

    const GroupSummary& group(const std::string& name) const {
        for (const auto& g : groups)
            if (g.group == name) return g;
        throw std::out_of_range("sweep report has no group " + name);
    }

    /// Sequential max-reduction in record order, so ties and the result do not
    /// depend on how the records were produced.
    void summarize() {
        groups.clear();
        c_emp = 0.0;
        argmax = 0;
        all_finite = true;
        for (std::size_t i = 0; i < records.size(); ++i) {
            const SweepRecord& r = records[i];
            auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.group == r.group; });
            if (it == groups.end()) {
                groups.push_back({r.group, 0, 0.0, i, true});
                it = groups.end() - 1;
            }
            ++it->count;
            if (!r.finite()) {
                if (it->all_finite) it->argmax = i;
                it->all_finite = false;
            } else if (it->all_finite && (it->count == 1 || r.ratio > it->c_emp)) {
                it->c_emp = r.ratio;
                it->argmax = i;
            }
        }
        const double inf = std::numeric_limits<double>::infinity();
        for (auto& g : groups) {
            if (!g.all_finite) g.c_emp = inf;
            if (!g.all_finite && all_finite) {
                all_finite = false;
                argmax = g.argmax;
            }
            if (all_finite && g.c_emp > c_emp) {
                c_emp = g.c_emp;
                argmax = g.argmax;
            }
        }
        if (!all_finite) c_emp = inf;
    }
};

namespace detail {

inline double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double t : v) s += t * t;
    return s;
}

inline std::string eps_label(const ParityVec& e) {
    std::string s;
    for (int b : e.bits) s += static_cast<char>('0' + b);
    return s;
}

inline std::string gamma_label(double g) {
    std::string s = std::to_string(g);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return s;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

inline std::vector<double> geomspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return v;
}

// Cartesian power of a 1D node set, row-major.
inline std::vector<std::vector<double>> tensor_points(const std::vector<double>& axis, std::size_t d) {
    std::vector<std::vector<double>> out;
    std::size_t total = 1;
    for (std::size_t j = 0; j < d; ++j) total *= axis.size();
    for (std::size_t m = 0; m < total; ++m) {
        std::vector<double> p(d);
        std::size_t rest = m;
        for (std::size_t j = 0; j < d; ++j) {
            p[j] = axis[rest % axis.size()];
            rest /= axis.size();
        }
        out.push_back(std::move(p));
    }
    return out;
}

struct PointPair {
    std::vector<double> x, y;
    double dist;
};

inline std::vector<PointPair> grid_pairs(const SweepConfig& cfg) {
    const std::size_t d = cfg.dim();
    const GridSpec& g = cfg.grid;
    std::vector<double> radii = geomspace(g.r_min, g.band, g.near_levels);
    if (g.far_levels > 0) {
        const auto far = geomspace(g.band, g.r_max, g.far_levels + 1);
        radii.insert(radii.end(), far.begin() + 1, far.end());
    }
    const double unit = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<PointPair> out;
    for (const auto& x : tensor_points(linspace(g.lo, g.hi, g.count), d)) {
        for (std::size_t m = 0; m < (std::size_t{1} << d); ++m) {
            // Distance at which the ray leaves the box; the supremum along a ray
            // often sits there, so it is always sampled.
            double exit = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < d; ++j)
                exit = std::min(exit, (((m >> j) & 1u) ? x[j] - g.lo : g.hi - x[j]) / unit);
            auto emit = [&](double r) {
                std::vector<double> y(d);
                for (std::size_t j = 0; j < d; ++j) {
                    y[j] = x[j] + (((m >> j) & 1u) ? -r : r) * unit;
                    y[j] = std::clamp(y[j], g.lo, g.hi);
                }
                out.push_back({x, std::move(y), r});
            };
            for (double r : radii)
                if (r < exit * (1.0 - 1e-12)) emit(r);
            if (exit >= g.r_min && exit <= g.r_max) emit(exit);
        }
    }
    return out;
}

inline double log_ball(const AlphaVec& alpha, std::span<const double> x, double r) {
    return std::log(half_ball_measure(alpha, HalfBallSpec({x.begin(), x.end()}, r), 1e-10).value);
}

inline const char* kNoteNonfinite = "nonfinite value";

}  // namespace detail

namespace detail {

// Log ratios at one pair for one eps class, one entry per slot; failures come
// back as NaN with a note.
using SlotEval = std::function<std::vector<double>(std::size_t, std::span<const double>, std::span<const double>,
                                                   std::string&)>;

inline SweepRecord make_record(std::string group, std::vector<double> x, std::vector<double> y, double log_ratio,
                               std::string note) {
    SweepRecord r{std::move(group), std::move(x), std::move(y), log_ratio, std::exp(log_ratio), 0.0, std::move(note)};
    r.dist = std::sqrt(dunkl::detail::dist2(r.x, r.y));
    if (r.note.empty() && !r.finite()) r.note = kNoteNonfinite;
    return r;
}

// Compass search for a larger log ratio from a seed pair, inside [lo, hi]^{2d}
// and off the band |x - y| < r_min.
inline SweepRecord polish_seed(const SweepConfig& cfg, const SlotEval& eval, std::size_t e, std::size_t slot,
                               const SweepRecord& seed) {
    const std::size_t d = cfg.dim();
    const GridSpec& g = cfg.grid;
    std::vector<double> z(seed.x);
    z.insert(z.end(), seed.y.begin(), seed.y.end());
    auto value = [&](const std::vector<double>& w) {
        const std::span<const double> x(w.data(), d), y(w.data() + d, d);
        if (std::sqrt(dunkl::detail::dist2(x, y)) < g.r_min) return -HUGE_VAL;
        std::string note;
        const double v = eval(e, x, y, note)[slot];
        return std::isnan(v) ? -HUGE_VAL : v;
    };
    double best = seed.log_ratio;
    double step = 0.5 * (g.count > 1 ? (g.hi - g.lo) / (g.count - 1) : g.hi - g.lo);
    const double min_step = step / 64.0;
    for (int evals = 0; step >= min_step && evals < cfg.polish_evals;) {
        std::vector<double> best_z;
        for (std::size_t k = 0; k < 2 * d; ++k) {
            for (double dir : {1.0, -1.0}) {
                std::vector<double> w = z;
                w[k] = std::clamp(w[k] + dir * step, g.lo, g.hi);
                if (w[k] == z[k]) continue;
                const double v = value(w);
                ++evals;
                if (v > best) {
                    best = v;
                    best_z = std::move(w);
                }
            }
        }
        if (best_z.empty())
            step *= 0.5;
        else
            z = std::move(best_z);
    }
    return make_record(seed.group, {z.begin(), z.begin() + d}, {z.begin() + d, z.end()}, best, "polish");
}

// Grid records for every (class, pair, slot), then a compass-search polish of
// the best `polish_seeds` records in each group.
inline SweepReport pair_sweep(const std::string& kind, const SweepConfig& cfg, std::size_t slots,
                              const std::function<std::string(std::size_t, std::size_t)>& label,
                              const SlotEval& eval) {
    const auto pairs = grid_pairs(cfg);
    const std::size_t ne = cfg.classes().size(), np = pairs.size();
    SweepReport rep{kind, {}, {}, {}};
    rep.records.resize(ne * np * slots);
    for (std::size_t e = 0; e < ne; ++e) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t p = 0; p < np; ++p) {
            std::string note;
            const auto v = eval(e, pairs[p].x, pairs[p].y, note);
            for (std::size_t s = 0; s < slots; ++s) {
                SweepRecord& r = rep.records[(e * np + p) * slots + s];
                r = make_record(label(e, s), pairs[p].x, pairs[p].y, v[s], note);
                r.dist = pairs[p].dist;
            }
        }
    }
    if (cfg.polish_seeds > 0) {
        struct Task {
            std::size_t e, slot, seed;
        };
        std::vector<Task> tasks;
        for (std::size_t e = 0; e < ne; ++e) {
            for (std::size_t s = 0; s < slots; ++s) {
                std::vector<std::size_t> idx;
                for (std::size_t p = 0; p < np; ++p) {
                    const std::size_t i = (e * np + p) * slots + s;
                    if (rep.records[i].finite()) idx.push_back(i);
                }
                const std::size_t k = std::min<std::size_t>(idx.size(), cfg.polish_seeds);
                std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](std::size_t a, std::size_t b) {
                    return rep.records[a].ratio > rep.records[b].ratio || (rep.records[a].ratio == rep.records[b].ratio && a < b);
                });
                for (std::size_t j = 0; j < k; ++j) tasks.push_back({e, s, idx[j]});
            }
        }
        std::vector<SweepRecord> polished(tasks.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t t = 0; t < tasks.size(); ++t)
            polished[t] = polish_seed(cfg, eval, tasks[t].e, tasks[t].slot, rep.records[tasks[t].seed]);
        rep.records.insert(rep.records.end(), polished.begin(), polished.end());
    }
    rep.summarize();
    return rep;
}

inline std::string class_gamma_label(const ParityVec& e, double g) {
    return "eps=" + eps_label(e) + " gamma=" + gamma_label(g);
}

}  // namespace detail

/// ratio = |K_gamma^{alpha,eps}(x, y)| w^+(B^+(x, |y-x|)), one group per (eps, gamma).
inline SweepReport growth_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const auto classes = cfg.classes();
    const std::size_t ng = cfg.gammas.size();
    const QuadRule zrule = zeta_rule(cfg.zeta_points, cfg.zeta_panels);
    std::vector<ZetaRouteKernel> kernels;
    for (const auto& e : classes) kernels.emplace_back(cfg.alpha, e, cfg.gammas, zrule);
    auto eval = [&](std::size_t e, std::span<const double> x, std::span<const double> y, std::string& note) {
        std::vector<double> out(ng, std::nan(""));
        try {
            const auto k = kernels[e].evaluate(x, y);
            const double lw = detail::log_ball(cfg.alpha, x, std::sqrt(dunkl::detail::dist2(x, y)));
            for (std::size_t q = 0; q < ng; ++q) out[q] = std::log(std::abs(k[q])) + lw;
        } catch (const std::exception& ex) {
            note = ex.what();
        }
        return out;
    };
    return detail::pair_sweep("growth", cfg, ng,
                              [&](std::size_t e, std::size_t q) {
                                  return detail::class_gamma_label(classes[e], cfg.gammas[q]);
                              },
                              eval);
}

/// |grad_{x,y} K| by central differences with step h = fd_step min(|x-y|, 1).
/// Entry q holds |grad K_q|^2, entry ng + q holds |d_{x_1} K_q| + |d_{y_1} K_q|.
inline std::vector<double> fd_gradient(const ZetaRouteKernel& kernel, std::span<const double> x,
                                       std::span<const double> y, double fd_step) {
    const std::size_t d = x.size(), ng = kernel.gammas().size();
    const double h = fd_step * std::min(std::sqrt(dunkl::detail::dist2(x, y)), 1.0);
    std::vector<double> z(x.begin(), x.end());
    z.insert(z.end(), y.begin(), y.end());
    std::vector<double> out(2 * ng, 0.0);
    for (std::size_t j = 0; j < 2 * d; ++j) {
        auto at = [&](double shift) {
            std::vector<double> w = z;
            w[j] += shift;
            return kernel.evaluate(std::span<const double>(w).first(d), std::span<const double>(w).subspan(d));
        };
        const auto kp = at(h), km = at(-h);
        for (std::size_t q = 0; q < ng; ++q) {
            const double a = std::abs((kp[q] - km[q]) / (2.0 * h));
            out[q] += a * a;
            if (j == 0 || j == d) out[ng + q] += a;
        }
    }
    return out;
}

/// ratio = |grad_{x,y} K| |x-y| w^+(B^+(x, |y-x|)) with central differences;
/// a second group per (eps, gamma), tagged "x1", keeps |d_{x_1} K| + |d_{y_1} K|.
inline SweepReport smoothness_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const auto classes = cfg.classes();
    const std::size_t ng = cfg.gammas.size();
    const QuadRule zrule = zeta_rule(cfg.zeta_points, cfg.zeta_panels);
    std::vector<ZetaRouteKernel> kernels;
    for (const auto& e : classes) kernels.emplace_back(cfg.alpha, e, cfg.gammas, zrule);
    auto eval = [&](std::size_t e, std::span<const double> x, std::span<const double> y, std::string& note) {
        std::vector<double> out(2 * ng, std::nan(""));
        try {
            const auto g = fd_gradient(kernels[e], x, y, cfg.fd_step);
            const double r = std::sqrt(dunkl::detail::dist2(x, y));
            const double scale = std::log(r) + detail::log_ball(cfg.alpha, x, r);
            for (std::size_t q = 0; q < ng; ++q) {
                out[q] = 0.5 * std::log(g[q]) + scale;
                out[ng + q] = std::log(g[ng + q]) + scale;
            }
        } catch (const std::exception& ex) {
            note = ex.what();
        }
        return out;
    };
    SweepReport rep = detail::pair_sweep(
        "smoothness", cfg, 2 * ng,
        [&](std::size_t e, std::size_t s) {
            return detail::class_gamma_label(classes[e], cfg.gammas[s % ng]) + (s < ng ? "" : " x1");
        },
        eval);
    if (cfg.fd_step > 0.1) rep.warnings.push_back("finite-difference step exceeds |x-y|/10 for some pairs");
    return rep;
}

namespace detail {

// Coordinates log-uniform in [1e-2, 10]; the second half of the samples puts y
// within 10^{-4..-1} of x.
struct PairSampler {
    std::mt19937_64 rng;
    std::size_t d;

    PairSampler(std::uint64_t seed, std::size_t dim) : rng(seed), d(dim) {}

    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
    double coord() { return std::pow(10.0, -2.0 + 3.0 * unit()); }

    PointPair next(bool near) {
        std::vector<double> x(d), y(d);
        for (auto& v : x) v = coord();
        if (!near) {
            for (auto& v : y) v = coord();
        } else {
            const double r = std::pow(10.0, -4.0 + 3.0 * unit());
            std::vector<double> u(d);
            double n = 0.0;
            for (auto& v : u) {
                v = unit() - 0.5;
                n += v * v;
            }
            n = std::sqrt(n);
            for (std::size_t j = 0; j < d; ++j) y[j] = std::abs(x[j] + r * u[j] / n);
        }
        double dist = 0.0;
        for (std::size_t j = 0; j < d; ++j) dist += (x[j] - y[j]) * (x[j] - y[j]);
        return {std::move(x), std::move(y), std::sqrt(dist)};
    }
};

inline double log_sum_exp(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double t : v) m = std::max(m, t);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double t : v) s += std::exp(t - m);
    return m + std::log(s);
}

}  // namespace detail

/// log of int_0^1 |beta_{d,alpha}(zeta)| zeta^{-b} exp(-c q / zeta) dzeta.
inline double mlem_log_integral(std::size_t d, double alpha_sum, double gamma, double b, double c, double q,
                                const QuadRule& zrule) {
    const BetaFactor beta(d, alpha_sum, gamma);
    std::vector<double> terms;
    terms.reserve(zrule.size());
    for (std::size_t k = 0; k < zrule.size(); ++k) {
        const double z = zrule.nodes[k];
        terms.push_back(std::log(zrule.weights[k]) + beta.polar(z).log_mod - b * std::log(z) - c * q / z);
    }
    return detail::log_sum_exp(terms);
}

/// log of (|x_1 +- y_1 s_1| + |y_1 +- x_1 s_1|) exp(-c q_+-/zeta) / zeta^{+-1/2};
/// -inf when the left side vanishes.
inline double mlem_a_log_ratio(std::span<const double> x, std::span<const double> y, std::span<const double> s,
                               double zeta, int sign, double c, const QPair& q) {
    const double lhs = std::abs(x[0] + sign * y[0] * s[0]) + std::abs(y[0] + sign * x[0] * s[0]);
    if (!(lhs > 0.0)) return -std::numeric_limits<double>::infinity();
    const double qq = sign > 0 ? q.qplus : q.qminus;
    return std::log(lhs) - c * qq / zeta - sign * 0.5 * std::log(zeta);
}

inline double mlem_a_log_ratio(std::span<const double> x, std::span<const double> y, std::span<const double> s,
                               double zeta, int sign, double c) {
    return mlem_a_log_ratio(x, y, s, zeta, sign, c, q_pm(x, y, s));
}

/// Groups "a+" and "a-": the display of part (a) with its signs coupled
/// consistently, ratio = (|x_1 +- y_1 s_1| + |y_1 +- x_1 s_1|) exp(-c q_+-/zeta) / zeta^{+-1/2}.
/// Groups "b lambda=...": ratio = q_+^{d+|alpha|+b} int |beta| zeta^{-b} e^{-c q_+/zeta},
/// sampled at (lambda x, lambda y, s).
inline SweepReport mlem_check(const SweepConfig& cfg) {
    cfg.validate();
    const std::size_t d = cfg.dim();
    const double D = static_cast<double>(d) + cfg.alpha.sum();
    const int n = cfg.samples;
    SweepReport rep{"mlem", {}, {}, {}};
    detail::PairSampler sampler(cfg.seed, d);
    struct Sample {
        detail::PointPair p;
        std::vector<double> s;
        double zeta;
    };
    std::vector<Sample> samples;
    for (int i = 0; i < n; ++i) {
        Sample smp{sampler.next(i >= n / 2), std::vector<double>(d), 0.0};
        for (auto& v : smp.s) v = 2.0 * sampler.unit() - 1.0;
        smp.zeta = std::pow(10.0, -8.0 * sampler.unit());
        samples.push_back(std::move(smp));
    }
    // Part (a): cheap, sequential.
    for (const auto& smp : samples) {
        const auto& x = smp.p.x;
        const auto& y = smp.p.y;
        const QPair q = q_pm(x, y, smp.s);
        const double z = smp.zeta;
        for (int sign : {1, -1}) {
            SweepRecord r{sign > 0 ? "a+" : "a-", x, y, 0.0, 0.0, smp.p.dist, {}};
            r.log_ratio = mlem_a_log_ratio(x, y, smp.s, z, sign, cfg.c, q);
            r.ratio = std::exp(r.log_ratio);
            rep.records.push_back(std::move(r));
        }
    }
    // Part (b): one zeta integral per sample and scaling factor.
    const QuadRule zrule = zeta_rule(cfg.zeta_points, cfg.zeta_panels);
    const double gamma = cfg.gammas.front();
    const std::size_t nb = std::min<std::size_t>(samples.size(), cfg.mlem_b_samples);
    const std::size_t base = rep.records.size();
    rep.records.resize(base + nb * cfg.lambdas.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
            const double lam = cfg.lambdas[l];
            std::vector<double> x = samples[i].p.x, y = samples[i].p.y;
            for (auto& v : x) v *= lam;
            for (auto& v : y) v *= lam;
            const double qp = q_pm(x, y, samples[i].s).qplus;
            SweepRecord& r = rep.records[base + i * cfg.lambdas.size() + l];
            r.group = "b lambda=" + detail::gamma_label(lam);
            r.x = x;
            r.y = y;
            r.dist = lam * samples[i].p.dist;
            r.log_ratio = (D + cfg.b) * std::log(qp) + mlem_log_integral(d, cfg.alpha.sum(), gamma, cfg.b, cfg.c, qp, zrule);
            r.ratio = std::exp(r.log_ratio);
            if (!r.finite()) r.note = detail::kNoteNonfinite;
        }
    }
    rep.summarize();
    return rep;
}

/// log of (x+y)^{2 delta} int Pi_{alpha+delta+kappa}(ds) q_+(x, y, s)^{-p}, by
/// nested rules graded toward s = -1 where q_+ is smallest.
inline double lemhom_log_lhs(const AlphaVec& alpha, std::span<const double> delta, std::span<const double> kappa,
                             std::span<const double> x, std::span<const double> y, double p) {
    const std::size_t d = alpha.dim();
    std::vector<const PiIntegrator*> pi(d);
    double log_pref = 0.0, diff2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        pi[j] = &cached_pi_integrator(alpha[j] + delta[j] + kappa[j]);
        log_pref += 2.0 * delta[j] * std::log(x[j] + y[j]);
        diff2 += (x[j] - y[j]) * (x[j] - y[j]);
    }
    // q_+ = |x-y|^2 + sum_j 2 x_j y_j (1 + s_j).
    auto integrate = [&](auto&& self, std::size_t j, double base) -> double {
        const double bj = 2.0 * x[j] * y[j];
        const quad::Rule1D r = pi[j]->algebraic_rule(base / bj);
        double acc = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            const double q = base + bj * (1.0 + r.nodes[k]);
            acc += r.weights[k] * (j + 1 == d ? std::pow(q, -p) : self(self, j + 1, q));
        }
        return acc;
    };
    return log_pref + std::log(integrate(integrate, 0, diff2));
}

/// Groups "first" and "second": the two displays of lemhom multiplied by
/// w^+(B^+(x, |x-y|)) and by |x-y| w^+(B^+(x, |x-y|)); one pair of groups per
/// scaling factor lambda applied to (x, y).
inline SweepReport lemhom_check(const SweepConfig& cfg) {
    cfg.validate();
    const std::size_t d = cfg.dim();
    const std::vector<double> delta = cfg.delta.empty() ? std::vector<double>(d, 0.0) : cfg.delta;
    const std::vector<double> kappa = cfg.kappa.empty() ? std::vector<double>(d, 0.0) : cfg.kappa;
    double delta_sum = 0.0;
    for (double t : delta) delta_sum += t;
    const double p = static_cast<double>(d) + cfg.alpha.sum() + delta_sum;
    const std::size_t n = static_cast<std::size_t>(cfg.lemhom_samples);
    detail::PairSampler sampler(cfg.seed, d);
    std::vector<detail::PointPair> pairs;
    for (std::size_t i = 0; i < n; ++i) pairs.push_back(sampler.next(i >= n / 2));
    const std::size_t nl = cfg.lambdas.size();
    SweepReport rep{"lemhom", {}, {}, {}};
    rep.records.resize(n * nl * 2);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < nl; ++l) {
            const double lam = cfg.lambdas[l];
            std::vector<double> x = pairs[i].x, y = pairs[i].y;
            for (auto& v : x) v *= lam;
            for (auto& v : y) v *= lam;
            const double r = lam * pairs[i].dist;
            std::string note;
            double lw = std::nan(""), first = std::nan(""), second = std::nan("");
            try {
                lw = detail::log_ball(cfg.alpha, x, r);
                first = lemhom_log_lhs(cfg.alpha, delta, kappa, x, y, p) + lw;
                second = lemhom_log_lhs(cfg.alpha, delta, kappa, x, y, p + 0.5) + std::log(r) + lw;
            } catch (const std::exception& ex) {
                note = ex.what();
            }
            for (int part = 0; part < 2; ++part) {
                SweepRecord& rec = rep.records[(i * nl + l) * 2 + part];
                rec.group = std::string(part == 0 ? "first" : "second") + " lambda=" + detail::gamma_label(lam);
                rec.x = x;
                rec.y = y;
                rec.dist = r;
                rec.log_ratio = part == 0 ? first : second;
                rec.ratio = std::exp(rec.log_ratio);
                rec.note = note.empty() && !rec.finite() ? detail::kNoteNonfinite : note;
            }
        }
    }
    rep.summarize();
    return rep;
}

/// ratio = int_0^inf |dG_t^{alpha,eps}(x, y)/dt| dt over x in E, y in F grids.
inline SweepReport der_est_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::size_t d = cfg.dim();
    const BoxPair& b = cfg.boxes;
    const auto xs = detail::tensor_points(detail::linspace(b.e_lo, b.e_hi, b.count), d);
    const auto ys = detail::tensor_points(detail::linspace(b.f_lo, b.f_hi, b.count), d);
    const auto classes = cfg.classes();
    const QuadRule zrule = zeta_rule(cfg.zeta_points, cfg.zeta_panels);
    SweepReport rep{"der-est", {}, {}, {}};
    const std::size_t nx = xs.size(), ny = ys.size();
    rep.records.resize(classes.size() * nx * ny);
    for (std::size_t e = 0; e < classes.size(); ++e) {
        const ComponentZetaForm form(cfg.alpha, classes[e]);
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < nx; ++i) {
            for (std::size_t j = 0; j < ny; ++j) {
                SweepRecord& r = rep.records[(e * nx + i) * ny + j];
                r.group = "eps=" + detail::eps_label(classes[e]);
                r.x = xs[i];
                r.y = ys[j];
                r.dist = std::sqrt(dunkl::detail::dist2(xs[i], ys[j]));
                try {
                    r.ratio = der_est_integral(form, xs[i], ys[j], zrule);
                } catch (const std::exception& ex) {
                    r.ratio = std::nan("");
                    r.note = ex.what();
                }
                r.log_ratio = std::log(r.ratio);
                if (!r.finite() && r.note.empty()) r.note = detail::kNoteNonfinite;
            }
        }
    }
    rep.summarize();
    return rep;
}

inline SweepReport run_sweep(const std::string& kind, const SweepConfig& cfg) {
    if (kind == "growth") return growth_sweep(cfg);
    if (kind == "smoothness") return smoothness_sweep(cfg);
    if (kind == "mlem") return mlem_check(cfg);
    if (kind == "lemhom") return lemhom_check(cfg);
    if (kind == "der-est") return der_est_sweep(cfg);
    throw ConfigError("unknown sweep kind '" + kind + "' (expected growth, smoothness, mlem, lemhom or der-est)");
}

/// Largest relative change of the per-group constants between two reports of
/// the same kind.
inline double refinement_change(const SweepReport& coarse, const SweepReport& fine) {
    double worst = 0.0;
    for (const auto& g : coarse.groups) {
        const double a = g.c_emp, b = fine.group(g.group).c_emp;
        worst = std::max(worst, std::abs(b - a) / std::abs(a));
    }
    return worst;
}

}  // namespace dunkl::cz
