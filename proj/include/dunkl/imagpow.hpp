#pragma once

// Imaginary powers L^{-i gamma}: spectral application on sampled functions,
// the kernel K_gamma^{alpha,eps} by the time integral of the heat kernel and
// by the zeta/Pi double integral, and the duality check pairing the spectral
// bilinear form with the kernel one for disjointly supported bumps.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "dunkl/heat.hpp"
#include "dunkl/hermite.hpp"
#include "dunkl/measure.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

/// gamma in R \ {0}.
class ImagOrder {
public:
    explicit ImagOrder(double gamma) : gamma_(gamma) {
        if (!(gamma != 0.0) || !std::isfinite(gamma)) throw DomainError("imaginary order gamma must be nonzero and finite");
    }
    double value() const { return gamma_; }
    operator double() const { return gamma_; }

private:
    double gamma_;
};

struct KernelValue {
    Complex value;
    double abserr = 0.0;
};

namespace detail {

inline void require_off_diagonal(std::span<const double> x, std::span<const double> y, const char* what) {
    bool same = x.size() == y.size();
    for (std::size_t i = 0; same && i < x.size(); ++i) same = x[i] == y[i];
    if (same) throw DomainError(std::string(what) + ": kernel is singular on the diagonal x = y");
}

inline double dist2(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return s;
}

// Below this log-magnitude an integrand node cannot affect a double result.
inline constexpr double kLogNegligible = -700.0;

}  // namespace detail

// ---------------------------------------------------------------------------
// Spectral side

/// Coefficients and eigenvalues of a finite Hermite expansion.
struct SpectralExpansion {
    AlphaVec alpha;
    std::vector<MultiIndex> indices;
    std::vector<Complex> coef;

    Complex value(std::span<const double> x) const {
        Complex s{};
        for (std::size_t i = 0; i < indices.size(); ++i) s += coef[i] * hermite_fn(indices[i], alpha, x);
        return s;
    }
    GridFunction<Complex> sample(std::size_t dim, const std::vector<double>& points) const {
        GridFunction<Complex> g{dim, points, std::vector<Complex>(points.size() / dim)};
        const QuadRule shim{dim, points, std::vector<double>(g.values.size(), 1.0), RuleDomain::FullSpaceWeighted};
        const auto basis = basis_matrix(alpha, indices, shim);
        for (std::size_t i = 0; i < indices.size(); ++i)
            for (std::size_t k = 0; k < g.values.size(); ++k) g.values[k] += coef[i] * basis[i][k];
        return g;
    }
    /// sum |coef|^2, the L^2 norm squared of the expansion for an orthonormal system.
    double norm2() const {
        double s = 0.0;
        for (const auto& c : coef) s += std::norm(c);
        return s;
    }
};

/// sum_{|n| <= N} lambda_n^{-i gamma} <f, h_n> h_n for f sampled on a full-space rule.
template <class T>
SpectralExpansion imagpow_expansion(const AlphaVec& alpha, ImagOrder gamma, const GridFunction<T>& f, int N,
                                    const QuadRule& rule) {
    if (rule.domain != RuleDomain::FullSpaceWeighted)
        throw DomainError("imagpow_spectral: rule must integrate against w_alpha on R^d");
    SpectralExpansion e{alpha, enumerate_upto(alpha.dim(), N), {}};
    const auto c = spectral_coefficients(f, basis_matrix(alpha, e.indices, rule), rule);
    e.coef.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        e.coef[i] = specfun::imaginary_power(eigenvalue(e.indices[i], alpha), gamma) * Complex(c[i]);
    return e;
}

template <class T>
GridFunction<Complex> imagpow_spectral(const AlphaVec& alpha, ImagOrder gamma, const GridFunction<T>& f, int N,
                                       const QuadRule& rule) {
    return imagpow_expansion(alpha, gamma, f, N, rule).sample(rule.dim, rule.nodes);
}

/// The eps-class operator on the positive orthant: sum over n in N_eps with
/// |n| <= N of lambda^{-i gamma} <f, 2^{d/2} h_n>_+ 2^{d/2} h_n.
template <class T>
SpectralExpansion imagpow_eps_expansion(const AlphaVec& alpha, const ParityVec& eps, ImagOrder gamma,
                                        const GridFunction<T>& f, int N, const QuadRule& rule) {
    if (rule.domain != RuleDomain::HalfSpaceWeighted)
        throw DomainError("imagpow_eps: rule must integrate against w_alpha^+ on the positive orthant");
    SpectralExpansion e{alpha, enumerate_Neps(eps, N), {}};
    const auto c = spectral_coefficients(f, basis_matrix(alpha, e.indices, rule), rule);
    const double scale = std::ldexp(1.0, static_cast<int>(alpha.dim()));
    e.coef.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        e.coef[i] = scale * specfun::imaginary_power(eigenvalue(e.indices[i], alpha), gamma) * Complex(c[i]);
    return e;
}

template <class T>
GridFunction<Complex> imagpow_eps(const AlphaVec& alpha, const ParityVec& eps, ImagOrder gamma,
                                  const GridFunction<T>& f, int N, const QuadRule& rule) {
    return imagpow_eps_expansion(alpha, eps, gamma, f, N, rule).sample(rule.dim, rule.nodes);
}

// ---------------------------------------------------------------------------
// beta_{d,alpha}(zeta)

/// beta_{d,a}(z) = 2^{1-d-i gamma}/Gamma(i gamma) ((1-z^2)/(2z))^{d+a} (1-z^2)^{-1}
///                 (log((1+z)/(1-z)))^{i gamma - 1},
/// kept as log-modulus and phase so that the zeta integrands can fold it into
/// their Gaussian exponent.
class BetaFactor {
public:
    BetaFactor(std::size_t d, double alpha_sum, double gamma) : d_(d), a_(alpha_sum), gamma_(gamma) {
        if (gamma == 0.0) throw DomainError("beta_factor: gamma must be nonzero");
        const Complex g = specfun::gamma_complex({0.0, gamma});
        log_abs_gamma_ = std::log(std::abs(g));
        arg_gamma_ = std::arg(g);
    }

    struct Polar {
        double log_mod;
        double phase;
    };

    /// Everything except 1/Gamma(i gamma) and the gamma-dependent phase.
    static double log_mod_common(std::size_t d, double alpha_sum, double zeta) {
        const double comp = (1.0 - zeta) * (1.0 + zeta);
        const double L = std::log1p(2.0 * zeta / (1.0 - zeta));
        return (1.0 - static_cast<double>(d)) * std::numbers::ln2 +
               (static_cast<double>(d) + alpha_sum) * std::log(comp / (2.0 * zeta)) - std::log(comp) - std::log(L);
    }

    Polar polar(double zeta) const {
        if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("beta_factor: zeta must lie in (0, 1)");
        const double L = std::log1p(2.0 * zeta / (1.0 - zeta));
        return {log_mod_common(d_, a_, zeta) - log_abs_gamma_,
                -gamma_ * std::numbers::ln2 - arg_gamma_ + gamma_ * std::log(L)};
    }

    Complex operator()(double zeta) const {
        const Polar p = polar(zeta);
        return std::polar(std::exp(p.log_mod), p.phase);
    }

    double log_abs_gamma() const { return log_abs_gamma_; }
    double arg_gamma() const { return arg_gamma_; }

private:
    std::size_t d_;
    double a_, gamma_;
    double log_abs_gamma_ = 0.0, arg_gamma_ = 0.0;
};

inline Complex beta_factor(std::size_t d, double alpha_sum, double gamma, double zeta) {
    return BetaFactor(d, alpha_sum, gamma)(zeta);
}

// ---------------------------------------------------------------------------
// Kernel, zeta route

/// K = int Pi_{alpha+eps}(ds) int_0^1 beta_{d,alpha+eps}(z) (xy)^eps exp(-q_+/(4z) - z q_-/4) dz.
/// The Pi integral factorizes over coordinates (see ComponentZetaForm), and
/// every gamma in the list shares the Pi integrals at each zeta node.
class ZetaRouteKernel {
public:
    ZetaRouteKernel(AlphaVec alpha, ParityVec eps, std::vector<double> gammas, QuadRule zrule = zeta_rule())
        : alpha_(std::move(alpha)), eps_(std::move(eps)), gammas_(std::move(gammas)), zrule_(std::move(zrule)) {
        if (eps_.dim() != alpha_.dim()) throw DomainError("kernel_zeta_route: eps dimension mismatch");
        for (std::size_t i = 0; i < alpha_.dim(); ++i) pi_.push_back(&cached_pi_integrator(alpha_[i] + eps_[i]));
        for (double g : gammas_) inv_gamma_.push_back(1.0 / specfun::gamma_complex({0.0, ImagOrder(g).value()}));
        D_ = static_cast<double>(alpha_.dim()) + alpha_.sum() + eps_.count();
    }

    const std::vector<double>& gammas() const { return gammas_; }

    /// Gamma(i gamma) K for each gamma: the double integral with the 1/Gamma(i gamma)
    /// normalization left out.
    std::vector<Complex> evaluate_unnormalized(std::span<const double> x, std::span<const double> y) const {
        const std::size_t d = alpha_.dim();
        if (x.size() != d || y.size() != d) throw DomainError("kernel_zeta_route: dimension mismatch");
        detail::require_positive(x, "kernel_zeta_route");
        detail::require_positive(y, "kernel_zeta_route");
        detail::require_off_diagonal(x, y, "kernel_zeta_route");
        std::vector<Complex> out(gammas_.size());
        double log_xy = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            if (eps_[i]) log_xy += std::log(x[i] * y[i]);
        for (std::size_t k = 0; k < zrule_.size(); ++k) {
            const double z = zrule_.nodes[k];
            const double z2 = z * z;
            double log_psi = log_xy;
            for (std::size_t i = 0; i < d; ++i) {
                const double dm = x[i] - y[i], dp = x[i] + y[i];
                log_psi -= (dm * dm + z2 * dp * dp) / (4.0 * z);
            }
            const double log_common = BetaFactor::log_mod_common(d, D_ - static_cast<double>(d), z) + log_psi;
            if (log_common < detail::kLogNegligible) continue;
            const double comp = (1.0 - z) * (1.0 + z);
            double pi_product = 1.0;
            for (std::size_t i = 0; i < d; ++i) pi_product *= pi_[i]->exp_moments(x[i] * y[i] * comp / (2.0 * z)).value;
            const double mag = zrule_.weights[k] * std::exp(log_common) * pi_product;
            const double log_L = std::log(std::log1p(2.0 * z / (1.0 - z)));
            for (std::size_t g = 0; g < gammas_.size(); ++g)
                out[g] += std::polar(mag, gammas_[g] * (log_L - std::numbers::ln2));
        }
        return out;
    }

    std::vector<Complex> evaluate(std::span<const double> x, std::span<const double> y) const {
        auto out = evaluate_unnormalized(x, y);
        for (std::size_t g = 0; g < out.size(); ++g) out[g] *= inv_gamma_[g];
        return out;
    }

private:
    AlphaVec alpha_;
    ParityVec eps_;
    std::vector<double> gammas_;
    QuadRule zrule_;
    std::vector<const PiIntegrator*> pi_;
    std::vector<Complex> inv_gamma_;
    double D_ = 0.0;
};

/// Zeta route with an error estimate from a coarser zeta rule (12 points per
/// panel instead of 16).
inline KernelValue kernel_zeta_route(const AlphaVec& alpha, const ParityVec& eps, ImagOrder gamma,
                                     std::span<const double> x, std::span<const double> y) {
    static const QuadRule fine = zeta_rule(16);
    static const QuadRule coarse = zeta_rule(12);
    const Complex v = ZetaRouteKernel(alpha, eps, {gamma}, fine).evaluate(x, y)[0];
    const Complex c = ZetaRouteKernel(alpha, eps, {gamma}, coarse).evaluate(x, y)[0];
    return {v, std::abs(v - c)};
}

// ---------------------------------------------------------------------------
// Kernel, t route

/// Panels for int_0^inf g(t) dt: dyadic [2^{-k-1}, 2^{-k}] down to where the
/// Gaussian factor e^{-|x-y|^2/(4t)} (against the t^{-D-1} growth) leaves the
/// double range, and geometric [2^j, 2^{j+1}] up to where e^{-2Dt} does.
inline std::vector<double> t_route_breaks(double dist2, double D) {
    std::vector<double> lows;
    for (int k = 0; k < 400; ++k) {
        const double hi = std::ldexp(1.0, -k);
        lows.push_back(hi);
        if (dist2 / (4.0 * hi) - (D + 1.0) * k * std::numbers::ln2 > 745.0) break;
    }
    std::vector<double> breaks(lows.rbegin(), lows.rend());
    for (double t = 1.0; 2.0 * D * t < 80.0;) {
        t *= 2.0;
        breaks.push_back(t);
    }
    return breaks;
}

/// K = (1/Gamma(i gamma)) int_0^inf G_t^{alpha,eps}(x, y) t^{i gamma - 1} dt with
/// t^{i gamma - 1} = exp((i gamma - 1) log t); error from 24 vs 16 points per panel.
inline KernelValue kernel_t_route(const AlphaVec& alpha, const ParityVec& eps, ImagOrder gamma,
                                  std::span<const double> x, std::span<const double> y, int per_panel = 24) {
    if (x.size() != alpha.dim() || y.size() != alpha.dim()) throw DomainError("kernel_t_route: dimension mismatch");
    detail::require_positive(x, "kernel_t_route");
    detail::require_positive(y, "kernel_t_route");
    detail::require_off_diagonal(x, y, "kernel_t_route");
    const double D = static_cast<double>(alpha.dim()) + alpha.sum() + eps.count();
    const auto breaks = t_route_breaks(detail::dist2(x, y), D);
    const Complex inv_gamma = 1.0 / specfun::gamma_complex({0.0, gamma});
    auto integrate = [&](int n) {
        const quad::Rule1D r = quad::composite_legendre(breaks, n);
        Complex acc{};
        for (std::size_t k = 0; k < r.size(); ++k) {
            const double t = r.nodes[k];
            const double g = component_kernel(alpha, eps, HeatTime::from_t(t), x, y);
            if (g == 0.0) continue;
            acc += r.weights[k] * g * std::exp(Complex(-1.0, double(gamma)) * std::log(t));
        }
        return acc * inv_gamma;
    };
    const Complex v = integrate(per_panel);
    const Complex c = integrate(std::max(8, 2 * per_panel / 3));
    return {v, std::abs(v - c)};
}

// ---------------------------------------------------------------------------
// Duality

/// Product of one-dimensional bumps exp(-1/(1-u^2)), u mapping (lo_i, hi_i) onto (-1, 1).
struct Bump {
    std::vector<double> lo, hi;
    double amplitude = 1.0;

    Bump(std::vector<double> lo_, std::vector<double> hi_, double amp = 1.0)
        : lo(std::move(lo_)), hi(std::move(hi_)), amplitude(amp) {
        if (lo.size() != hi.size() || lo.empty()) throw DomainError("Bump: bounds must have equal nonzero length");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < hi[i])) throw DomainError("Bump: each interval must satisfy lo < hi");
    }
    std::size_t dim() const { return lo.size(); }
    double operator()(std::span<const double> x) const {
        double v = amplitude;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            const double u = (2.0 * x[i] - lo[i] - hi[i]) / (hi[i] - lo[i]);
            if (!(std::abs(u) < 1.0)) return 0.0;
            v *= std::exp(-1.0 / ((1.0 - u) * (1.0 + u)));
        }
        return v;
    }
};

inline bool supports_disjoint(const Bump& f, const Bump& g) {
    for (std::size_t i = 0; i < f.dim(); ++i)
        if (f.hi[i] <= g.lo[i] || g.hi[i] <= f.lo[i]) return true;
    return false;
}

struct DualityOptions {
    int support_points = 48;  // Gauss points per axis for the kernel double integral
    int coefficient_points = 16;
    QuadRule zrule = zeta_rule();
};

struct DualityResult {
    Complex lhs;
    Complex rhs;
    double rel_gap() const { return std::abs(lhs - rhs) / std::abs(lhs); }
};

namespace detail {

inline void require_bump_pair(const AlphaVec& alpha, const Bump& f, const Bump& g) {
    if (f.dim() != alpha.dim() || g.dim() != alpha.dim()) throw DomainError("duality_check: dimension mismatch");
    for (const Bump* b : {&f, &g})
        for (double v : b->lo)
            if (!(v > 0.0)) throw DomainError("duality_check: supports must lie in the open positive orthant");
    if (!supports_disjoint(f, g)) throw std::invalid_argument("duality_check: supports of f and g must be disjoint");
}

// Tensor Gauss rule on a box against w_alpha^+; `panels` splits each axis.
inline QuadRule box_rule(const AlphaVec& alpha, const Bump& b, int npts, int panels) {
    const std::size_t d = b.dim();
    std::vector<quad::Rule1D> axes(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> br;
        for (int p = 0; p <= panels; ++p) br.push_back(b.lo[i] + (b.hi[i] - b.lo[i]) * p / panels);
        axes[i] = quad::composite_legendre(br, npts);
        for (std::size_t k = 0; k < axes[i].size(); ++k)
            axes[i].weights[k] *= std::pow(axes[i].nodes[k], 2.0 * alpha[i] + 1.0);
    }
    QuadRule r;
    r.dim = d;
    r.domain = RuleDomain::HalfSpaceWeighted;
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.size();
    for (std::size_t m = 0; m < total; ++m) {
        std::size_t rest = m;
        double w = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t k = rest % axes[i].size();
            rest /= axes[i].size();
            r.nodes.push_back(axes[i].nodes[k]);
            w *= axes[i].weights[k];
        }
        r.weights.push_back(w);
    }
    return r;
}

// Oscillation of h_n on a box: wavelength ~ pi / sqrt(2n); two panels per wavelength.
inline int coefficient_panels(const Bump& b, int N) {
    double width = 0.0;
    for (std::size_t i = 0; i < b.dim(); ++i) width = std::max(width, b.hi[i] - b.lo[i]);
    return std::max(4, static_cast<int>(std::ceil(width * std::sqrt(2.0 * N + 2.0) / std::numbers::pi * 2.0)));
}

}  // namespace detail

/// <L^{-i gamma}_{alpha,eps,+} f, g> = sum_{n in N_eps, |n| <= N} lambda_n^{-i gamma} <f, h_n>_+ <h_n, g>_+.
inline Complex duality_spectral_side(const AlphaVec& alpha, const ParityVec& eps, ImagOrder gamma, const Bump& f,
                                     const Bump& g, int N, const DualityOptions& opt = {}) {
    detail::require_bump_pair(alpha, f, g);
    const auto idx = enumerate_Neps(eps, N);
    auto coefficients = [&](const Bump& b) {
        const QuadRule r = detail::box_rule(alpha, b, opt.coefficient_points, detail::coefficient_panels(b, N));
        const auto fb = sample_on(r, [&](auto x) { return b(x); });
        return spectral_coefficients(fb, basis_matrix(alpha, idx, r), r);
    };
    const auto cf = coefficients(f), cg = coefficients(g);
    Complex s{};
    for (std::size_t i = 0; i < idx.size(); ++i)
        s += specfun::imaginary_power(eigenvalue(idx[i], alpha), gamma) * cf[i] * cg[i];
    return s;
}

/// The spectral side for every truncation degree 0..N at once (partial sums by |n|).
inline std::vector<Complex> duality_spectral_partial_sums(const AlphaVec& alpha, const ParityVec& eps,
                                                          ImagOrder gamma, const Bump& f, const Bump& g, int N,
                                                          const DualityOptions& opt = {}) {
    detail::require_bump_pair(alpha, f, g);
    const auto idx = enumerate_Neps(eps, N);
    auto coefficients = [&](const Bump& b) {
        const QuadRule r = detail::box_rule(alpha, b, opt.coefficient_points, detail::coefficient_panels(b, N));
        const auto fb = sample_on(r, [&](auto x) { return b(x); });
        return spectral_coefficients(fb, basis_matrix(alpha, idx, r), r);
    };
    const auto cf = coefficients(f), cg = coefficients(g);
    std::vector<Complex> by_degree(N + 1);
    for (std::size_t i = 0; i < idx.size(); ++i)
        by_degree[idx[i].degree()] += specfun::imaginary_power(eigenvalue(idx[i], alpha), gamma) * cf[i] * cg[i];
    for (int m = 1; m <= N; ++m) by_degree[m] += by_degree[m - 1];
    return by_degree;
}

/// int int K(x, y) f(y) conj(g(x)) dw^+(y) dw^+(x) for each listed gamma.
inline std::vector<Complex> duality_kernel_side(const AlphaVec& alpha, const ParityVec& eps,
                                                const std::vector<double>& gammas, const Bump& f, const Bump& g,
                                                const DualityOptions& opt = {}) {
    detail::require_bump_pair(alpha, f, g);
    const ZetaRouteKernel kernel(alpha, eps, gammas, opt.zrule);
    const QuadRule rx = detail::box_rule(alpha, g, opt.support_points, 1);
    const QuadRule ry = detail::box_rule(alpha, f, opt.support_points, 1);
    const std::size_t nx = rx.size(), ny = ry.size();
    std::vector<std::vector<Complex>> rows(nx);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < nx; ++i) {
        const auto x = rx.node(i);
        std::vector<Complex> acc(gammas.size());
        const double gx = g(x);
        if (gx != 0.0) {
            for (std::size_t j = 0; j < ny; ++j) {
                const auto y = ry.node(j);
                const double fy = f(y);
                if (fy == 0.0) continue;
                const auto k = kernel.evaluate(x, y);
                for (std::size_t q = 0; q < gammas.size(); ++q) acc[q] += ry.weights[j] * fy * k[q];
            }
        }
        for (auto& v : acc) v *= rx.weights[i] * gx;
        rows[i] = std::move(acc);
    }
    std::vector<Complex> out(gammas.size());
    for (const auto& r : rows)
        for (std::size_t q = 0; q < out.size(); ++q) out[q] += r[q];
    return out;
}

inline DualityResult duality_check(const AlphaVec& alpha, const ParityVec& eps, ImagOrder gamma, const Bump& f,
                                   const Bump& g, int N, const DualityOptions& opt = {}) {
    return {duality_spectral_side(alpha, eps, gamma, f, g, N, opt),
            duality_kernel_side(alpha, eps, {gamma}, f, g, opt)[0]};
}

}  // namespace dunkl
