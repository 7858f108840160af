#pragma once

// Heat kernel of the Dunkl harmonic oscillator in three forms: the Bessel
// closed form, the eigenfunction series, and the integral over Pi measures in
// the variable zeta = tanh t. Component kernels G^{alpha,eps} live on the
// positive orthant; their time derivative feeds the der_est integral.

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "dunkl/hermite.hpp"
#include "dunkl/measure.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

/// A time t > 0 together with zeta = tanh t and 1 - zeta^2, each computed
/// from whichever variable was given so that neither end loses digits.
class HeatTime {
public:
    static HeatTime from_t(double t) {
        if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("HeatTime: t must be positive and finite");
        HeatTime h;
        h.t_ = t;
        h.zeta_ = std::tanh(t);
        const double e = std::exp(-2.0 * t);
        h.comp_ = 4.0 * e / ((1.0 + e) * (1.0 + e));
        return h;
    }
    static HeatTime from_zeta(double zeta) {
        if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("HeatTime: zeta must lie in (0, 1)");
        HeatTime h;
        h.zeta_ = zeta;
        h.t_ = 0.5 * std::log1p(2.0 * zeta / (1.0 - zeta));
        h.comp_ = (1.0 - zeta) * (1.0 + zeta);
        return h;
    }

    double t() const { return t_; }
    double zeta() const { return zeta_; }
    /// 1 - zeta^2 = 1/cosh^2 t.
    double one_minus_zeta2() const { return comp_; }
    /// log sinh 2t, with sinh 2t = 2 zeta / (1 - zeta^2).
    double log_sinh2t() const { return std::log(2.0 * zeta_) - std::log(comp_); }

private:
    HeatTime() = default;
    double t_ = 0.0, zeta_ = 0.0, comp_ = 1.0;
};

struct QPair {
    double qplus = 0.0;
    double qminus = 0.0;
};

/// q_pm = |x|^2 + |y|^2 pm 2 sum x_i y_i s_i.
inline QPair q_pm(std::span<const double> x, std::span<const double> y, std::span<const double> s) {
    if (x.size() != y.size() || x.size() != s.size()) throw DomainError("q_pm: dimension mismatch");
    double r2 = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(s[i] >= -1.0 && s[i] <= 1.0)) throw DomainError("q_pm: s must lie in [-1, 1]^d");
        r2 += x[i] * x[i] + y[i] * y[i];
        cross += x[i] * y[i] * s[i];
    }
    return {r2 + 2.0 * cross, r2 - 2.0 * cross};
}

namespace detail {

inline void require_same_dim(const AlphaVec& alpha, std::span<const double> x, std::span<const double> y) {
    if (x.size() != alpha.dim() || y.size() != alpha.dim())
        throw DomainError("heat kernel: dimension mismatch between alpha, x and y");
}

inline void require_positive(std::span<const double> x, const char* what) {
    for (double v : x)
        if (!(v > 0.0)) throw DomainError(std::string(what) + ": points must lie in the open positive orthant");
}

// Gaussian exponent of one coordinate after the Bessel growth e^{|u|} has been
// absorbed: -(x^2+y^2) coth(2t)/2 + |xy|/sinh 2t.
inline double folded_exponent(const HeatTime& ht, double x, double y) {
    const double z = ht.zeta();
    const double g = std::abs(x) - std::abs(y);
    return -(g * g * ht.one_minus_zeta2() / (4.0 * z) + (x * x + y * y) * z / 2.0);
}

}  // namespace detail

/// One-dimensional kernel
///   (1/(2S)) e^{-coth(2t)(x^2+y^2)/2} S^{-a} [B_a(u) + u B_{a+1}(u)],  S = sinh 2t,
/// with B_nu(z) = I_nu(z)/z^nu and u = xy/S. For xy < 0 the bracket equals
/// int (1-s) e^{|u| s} Pi_a(ds), which is integrated directly to avoid the
/// cancellation between the two Bessel terms.
inline double heat_kernel_1d(double alpha, const HeatTime& ht, double x, double y) {
    if (!(alpha >= -0.5)) throw DomainError("heat_kernel_1d: alpha must satisfy alpha >= -1/2");
    const double log_s = ht.log_sinh2t();
    const double u = x * y * ht.one_minus_zeta2() / (2.0 * ht.zeta());
    const double au = std::abs(u);
    double bracket;
    if (u >= 0.0 || au < 1.0) {
        bracket = specfun::bessel_i_scaled_exp(alpha, au) + u * specfun::bessel_i_scaled_exp(alpha + 1.0, au);
    } else {
        bracket = cached_pi_integrator(alpha).exp_moments(au).first;
    }
    const double log_pref = -std::log(2.0) - (1.0 + alpha) * log_s + detail::folded_exponent(ht, x, y);
    return std::exp(log_pref) * bracket;
}

/// G_t^alpha(x, y) on R^d x R^d as the product of one-dimensional kernels.
inline double heat_kernel(const AlphaVec& alpha, const HeatTime& ht, std::span<const double> x,
                          std::span<const double> y) {
    detail::require_same_dim(alpha, x, y);
    double v = 1.0;
    for (std::size_t i = 0; i < alpha.dim(); ++i) v *= heat_kernel_1d(alpha[i], ht, x[i], y[i]);
    return v;
}

/// G_t^{alpha,eps}(x, y) on the positive orthant:
///   prod_i (2S)^{-1} e^{-coth(2t)(x_i^2+y_i^2)/2} (x_i y_i)^{eps_i} S^{-alpha_i-eps_i} B_{alpha_i+eps_i}(u_i).
inline double component_kernel(const AlphaVec& alpha, const ParityVec& eps, const HeatTime& ht,
                               std::span<const double> x, std::span<const double> y) {
    detail::require_same_dim(alpha, x, y);
    if (eps.dim() != alpha.dim()) throw DomainError("component_kernel: eps dimension mismatch");
    detail::require_positive(x, "component_kernel");
    detail::require_positive(y, "component_kernel");
    const double log_s = ht.log_sinh2t();
    double log_v = 0.0, b = 1.0;
    for (std::size_t i = 0; i < alpha.dim(); ++i) {
        const double order = alpha[i] + eps[i];
        const double xy = x[i] * y[i];
        const double u = xy * ht.one_minus_zeta2() / (2.0 * ht.zeta());
        log_v += -std::log(2.0) - (1.0 + order) * log_s + detail::folded_exponent(ht, x[i], y[i]);
        if (eps[i]) log_v += std::log(xy);
        b *= specfun::bessel_i_scaled_exp(order, u);
    }
    return std::exp(log_v) * b;
}

// ---------------------------------------------------------------------------
// Eigenfunction series

struct SeriesValue {
    double value = 0.0;
    int terms = 0;  // highest degree summed
};

// Tail of a geometric series with ratio e^{-2t} beyond degree n, relative to
// the largest term magnitude seen.
inline constexpr double kSeriesTol = 1e-12;
inline constexpr int kSeriesMaxDegree = 1 << 17;

/// sum_n e^{-t(2n + 2a + 2)} h_n^a(x) h_n^a(y) over all n (parity < 0) or over
/// n of the given parity. Truncation doubles the degree until the geometric
/// tail bound falls below tol times the partial sum.
inline SeriesValue heat_series_1d(double a, const HeatTime& ht, double x, double y, int parity = -1,
                                  double tol = kSeriesTol, int max_degree = kSeriesMaxDegree) {
    const double t = ht.t();
    const double r = std::exp(-2.0 * t);
    for (int n = 64;; n *= 2) {
        const auto hx = hermite_1d_table(n, a, x);
        const auto hy = hermite_1d_table(n, a, y);
        double sum = 0.0, mag = 0.0;
        for (int k = 0; k <= n; ++k) {
            if (parity >= 0 && k % 2 != parity) continue;
            const double term = std::exp(-t * (2.0 * k + 2.0 * a + 2.0)) * hx[k] * hy[k];
            sum += term;
            mag = std::max(mag, std::abs(hx[k] * hy[k]));
        }
        const double tail = mag * std::exp(-t * (2.0 * (n + 1) + 2.0 * a + 2.0)) / (1.0 - r);
        if (tail <= tol * std::abs(sum) || (sum == 0.0 && tail <= tol * mag)) return {sum, n};
        if (n >= max_degree) throw std::runtime_error("heat_series_1d: series did not converge");
    }
}

/// The eigenfunction series for G_t^alpha; the d-dimensional sum factorizes
/// over coordinates because lambda_n and h_n do.
inline double heat_kernel_series(const AlphaVec& alpha, const HeatTime& ht, std::span<const double> x,
                                 std::span<const double> y, double tol = kSeriesTol) {
    detail::require_same_dim(alpha, x, y);
    double v = 1.0;
    for (std::size_t i = 0; i < alpha.dim(); ++i) v *= heat_series_1d(alpha[i], ht, x[i], y[i], -1, tol).value;
    return v;
}

/// The series restricted to n in N_eps.
inline double component_kernel_series(const AlphaVec& alpha, const ParityVec& eps, const HeatTime& ht,
                                      std::span<const double> x, std::span<const double> y,
                                      double tol = kSeriesTol) {
    detail::require_same_dim(alpha, x, y);
    if (eps.dim() != alpha.dim()) throw DomainError("component_kernel_series: eps dimension mismatch");
    double v = 1.0;
    for (std::size_t i = 0; i < alpha.dim(); ++i) v *= heat_series_1d(alpha[i], ht, x[i], y[i], eps[i], tol).value;
    return v;
}

/// Truncated series sum_{n <= N} without adaptivity.
inline double heat_series_1d_truncated(double a, const HeatTime& ht, double x, double y, int N, int parity = -1) {
    const auto hx = hermite_1d_table(N, a, x);
    const auto hy = hermite_1d_table(N, a, y);
    double sum = 0.0;
    for (int k = 0; k <= N; ++k)
        if (parity < 0 || k % 2 == parity) sum += std::exp(-ht.t() * (2.0 * k + 2.0 * a + 2.0)) * hx[k] * hy[k];
    return sum;
}

// ---------------------------------------------------------------------------
// Zeta representation

/// G^{alpha,eps} written as
///   2^{-d} ((1-z^2)/(2z))^D (xy)^eps int Pi_{alpha+eps}(ds) exp(-q_+/(4z) - z q_-/4),
/// D = d + |alpha| + |eps|. The exponent splits over coordinates as
///   -[(x_i-y_i)^2 + z^2 (x_i+y_i)^2]/(4z) - A_i (1+s_i),  A_i = x_i y_i (1-z^2)/(2z),
/// so the Pi integral is a product of one-dimensional integrals, each done by
/// quadrature against Pi_{alpha_i+eps_i}.
class ComponentZetaForm {
public:
    ComponentZetaForm(AlphaVec alpha, ParityVec eps) : alpha_(std::move(alpha)), eps_(std::move(eps)) {
        if (eps_.dim() != alpha_.dim()) throw DomainError("ComponentZetaForm: eps dimension mismatch");
        for (std::size_t i = 0; i < alpha_.dim(); ++i) pi_.push_back(&cached_pi_integrator(alpha_[i] + eps_[i]));
        D_ = static_cast<double>(alpha_.dim()) + alpha_.sum() + eps_.count();
    }

    const AlphaVec& alpha() const { return alpha_; }
    const ParityVec& eps() const { return eps_; }
    double homogeneity() const { return D_; }

    struct Terms {
        double log_outer = 0.0;  // log of everything outside the Pi integrals
        double pi_product = 1.0; // prod_i E_i
        double dlog = 0.0;       // d/dzeta of log G
    };

    /// All pieces at a given zeta; `with_derivative` adds d log G / d zeta.
    Terms terms(double zeta, std::span<const double> x, std::span<const double> y, bool with_derivative) const {
        const std::size_t d = alpha_.dim();
        const double comp = (1.0 - zeta) * (1.0 + zeta);
        const double z2 = zeta * zeta;
        Terms r;
        r.log_outer = -static_cast<double>(d) * std::log(2.0) + D_ * std::log(comp / (2.0 * zeta));
        if (with_derivative) r.dlog = -D_ * (1.0 + z2) / (zeta * comp);
        for (std::size_t i = 0; i < d; ++i) {
            const double xy = x[i] * y[i];
            const double dm = x[i] - y[i], dp = x[i] + y[i];
            r.log_outer -= (dm * dm + z2 * dp * dp) / (4.0 * zeta);
            if (eps_[i]) r.log_outer += std::log(xy);
            const double A = xy * comp / (2.0 * zeta);
            const PiMoments m = pi_[i]->exp_moments(A);
            r.pi_product *= m.value;
            if (with_derivative) {
                r.dlog += dm * dm / (4.0 * z2) - dp * dp / 4.0;
                r.dlog += xy * (1.0 + z2) / (2.0 * z2) * (m.first / m.value);
            }
        }
        return r;
    }

    double value(double zeta, std::span<const double> x, std::span<const double> y) const {
        const Terms r = terms(zeta, x, y, false);
        return std::exp(r.log_outer) * r.pi_product;
    }

    /// d/dt G = (1 - zeta^2) d/dzeta G. In unfactored form this is
    ///   -D (1+z^2)/z G + 2^{-d} ((1-z^2)/(2z))^D (1-z^2) (xy)^eps
    ///       int Pi(ds) (q_+/(4z^2) - q_-/4) exp(-q_+/(4z) - z q_-/4).
    double dt(double zeta, std::span<const double> x, std::span<const double> y) const {
        const Terms r = terms(zeta, x, y, true);
        return std::exp(r.log_outer) * r.pi_product * r.dlog * (1.0 - zeta) * (1.0 + zeta);
    }

private:
    AlphaVec alpha_;
    ParityVec eps_;
    std::vector<const PiIntegrator*> pi_;
    double D_ = 0.0;
};

inline double component_kernel_zeta(const AlphaVec& alpha, const ParityVec& eps, const HeatTime& ht,
                                    std::span<const double> x, std::span<const double> y) {
    detail::require_same_dim(alpha, x, y);
    detail::require_positive(x, "component_kernel_zeta");
    detail::require_positive(y, "component_kernel_zeta");
    return ComponentZetaForm(alpha, eps).value(ht.zeta(), x, y);
}

inline double component_kernel_dt(const AlphaVec& alpha, const ParityVec& eps, const HeatTime& ht,
                                  std::span<const double> x, std::span<const double> y) {
    detail::require_same_dim(alpha, x, y);
    detail::require_positive(x, "component_kernel_dt");
    detail::require_positive(y, "component_kernel_dt");
    return ComponentZetaForm(alpha, eps).dt(ht.zeta(), x, y);
}

/// int_0^inf |d/dt G_t^{alpha,eps}(x, y)| dt = int_0^1 |d/dt G| dzeta / (1 - zeta^2).
inline double der_est_integral(const ComponentZetaForm& form, std::span<const double> x, std::span<const double> y,
                               const QuadRule& zrule) {
    double diff2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) diff2 += (x[i] - y[i]) * (x[i] - y[i]);
    if (diff2 == 0.0) throw DomainError("der_est_integral: x and y must differ");
    double acc = 0.0;
    for (std::size_t k = 0; k < zrule.size(); ++k) {
        const double z = zrule.nodes[k];
        // e^{-|x-y|^2/(4 zeta)} bounds every term; skip nodes where it underflows.
        if (diff2 / (4.0 * z) > 745.0) continue;
        acc += zrule.weights[k] * std::abs(form.dt(z, x, y)) / ((1.0 - z) * (1.0 + z));
    }
    return acc;
}

inline double der_est_integral(const AlphaVec& alpha, const ParityVec& eps, std::span<const double> x,
                               std::span<const double> y) {
    detail::require_same_dim(alpha, x, y);
    detail::require_positive(x, "der_est_integral");
    detail::require_positive(y, "der_est_integral");
    static const QuadRule zrule = zeta_rule();
    return der_est_integral(ComponentZetaForm(alpha, eps), x, y, zrule);
}

/// (xy)^eps |x-y|^{-2(D+1)} + (xy)^eps |x+y|^2 |x-y|^{-2(D+2)}, D = d + |alpha| + |eps|.
inline double der_est_bound(const AlphaVec& alpha, const ParityVec& eps, std::span<const double> x,
                            std::span<const double> y) {
    detail::require_same_dim(alpha, x, y);
    double diff2 = 0.0, sum2 = 0.0, xy = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        diff2 += (x[i] - y[i]) * (x[i] - y[i]);
        sum2 += (x[i] + y[i]) * (x[i] + y[i]);
        if (eps[i]) xy *= x[i] * y[i];
    }
    const double D = static_cast<double>(alpha.dim()) + alpha.sum() + eps.count();
    return xy * (std::pow(diff2, -(D + 1.0)) + sum2 * std::pow(diff2, -(D + 2.0)));
}

}  // namespace dunkl
