#pragma once

// Weights, measures and reusable quadrature rules: w_alpha and its restriction
// to the positive orthant, the Pi_a measures on [-1, 1] (atomic at order -1/2),
// weighted ball volumes, and the endpoint-graded rule on (0, 1) used for the
// zeta integrals.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dunkl/quadrature.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

/// Multiplicity parameter alpha in [-1/2, inf)^d.
class AlphaVec {
public:
    AlphaVec() = default;
    AlphaVec(std::initializer_list<double> a) : AlphaVec(std::vector<double>(a)) {}
    explicit AlphaVec(std::vector<double> a) : a_(std::move(a)) {
        if (a_.empty()) throw DomainError("alpha: dimension must be at least 1");
        for (double v : a_)
            if (!(v >= -0.5))
                throw DomainError("alpha: every component must satisfy alpha_j >= -1/2, got " +
                                  std::to_string(v));
        for (double v : a_) sum_ += v;
    }
    static AlphaVec uniform(std::size_t d, double a) { return AlphaVec(std::vector<double>(d, a)); }

    std::size_t dim() const { return a_.size(); }
    double operator[](std::size_t j) const { return a_[j]; }
    /// |alpha|; negative when enough components sit near -1/2.
    double sum() const { return sum_; }
    /// 2|alpha| + 2d, the bottom of the spectrum.
    double eigen_offset() const { return 2.0 * sum_ + 2.0 * static_cast<double>(dim()); }
    std::span<const double> values() const { return a_; }

private:
    std::vector<double> a_;
    double sum_ = 0.0;
};

/// w_alpha(x) = prod_j |x_j|^{2 alpha_j + 1}.
inline double weight(const AlphaVec& alpha, std::span<const double> x) {
    double w = 1.0;
    for (std::size_t j = 0; j < alpha.dim(); ++j) {
        const double e = 2.0 * alpha[j] + 1.0;
        if (e != 0.0) w *= std::pow(std::abs(x[j]), e);
    }
    return w;
}

enum class RuleDomain { HalfSpaceWeighted, FullSpaceWeighted, IntervalJacobi, AtomicPair, UnitIntervalZeta };

/// Quadrature rule in `dim` dimensions; node k occupies nodes[k*dim, (k+1)*dim).
struct QuadRule {
    std::size_t dim = 1;
    std::vector<double> nodes;
    std::vector<double> weights;
    RuleDomain domain = RuleDomain::IntervalJacobi;

    std::size_t size() const { return weights.size(); }
    std::span<const double> node(std::size_t k) const { return {nodes.data() + k * dim, dim}; }

    template <class F>
    auto integrate(F&& f) const {
        decltype(f(node(0)) * 1.0) acc{};
        for (std::size_t k = 0; k < size(); ++k) acc += weights[k] * f(node(k));
        return acc;
    }
};

// ---------------------------------------------------------------------------
// Pi_a measures

/// Normalizing constant of the density (1-s^2)^{a-1/2} / (sqrt(pi) 2^a Gamma(a+1/2)).
inline double pi_density_constant(double a) {
    return std::exp(-0.5 * std::log(std::numbers::pi) - a * std::numbers::ln2 - std::lgamma(a + 0.5));
}

inline constexpr double kAtomicMass = 0.3989422804014327;  // 1/sqrt(2 pi)

inline bool pi_is_atomic(double a) { return a == -0.5; }

/// Gauss-Jacobi rule for Pi_a (exact to degree 2 npts - 1), or the two point
/// masses 1/sqrt(2 pi) at -1 and 1 when a = -1/2.
inline QuadRule pi_measure_rule(double a, int npts) {
    if (!(a >= -0.5)) throw DomainError("pi_measure_rule: order must satisfy a >= -1/2");
    QuadRule r;
    r.dim = 1;
    if (pi_is_atomic(a)) {
        r.domain = RuleDomain::AtomicPair;
        r.nodes = {-1.0, 1.0};
        r.weights = {kAtomicMass, kAtomicMass};
        return r;
    }
    const quad::Rule1D g = quad::gauss_jacobi(npts, a - 0.5, a - 0.5);
    const double c = pi_density_constant(a);
    r.domain = RuleDomain::IntervalJacobi;
    r.nodes = g.nodes;
    r.weights = g.weights;
    for (double& w : r.weights) w *= c;
    return r;
}

/// Moments of Pi_a against e^{-A(1+s)}: value = int e^{-A(1+s)} Pi_a(ds) and
/// first = int (1+s) e^{-A(1+s)} Pi_a(ds).
struct PiMoments {
    double value = 0.0;
    double first = 0.0;
};

/// Integrates against Pi_a with panels graded toward s = -1, where the
/// factors exp(-A(1+s)) and (c + b(1+s))^{-p} concentrate. Works in the
/// variable v = 1 + s in [0, 2]; the endpoint panels carry the Jacobi weights
/// v^{a-1/2} and (2-v)^{a-1/2} exactly.
class PiIntegrator {
public:
    explicit PiIntegrator(double a, int panel_points = 12, int global_points = 32)
        : a_(a), atomic_(pi_is_atomic(a)) {
        if (!(a >= -0.5)) throw DomainError("PiIntegrator: order must satisfy a >= -1/2");
        if (atomic_) return;
        c_ = pi_density_constant(a);
        global_ = quad::gauss_jacobi(global_points, a - 0.5, a - 0.5);
        legendre_ = quad::gauss_legendre(panel_points);
        edge_ = quad::gauss_jacobi(panel_points + 4, 0.0, a - 0.5);  // weight (1+tau)^{a-1/2}
        const quad::LaguerreRule lag = quad::gauss_laguerre(kLaguerrePoints, a - 0.5);
        for (int k = 0; k < kLaguerrePoints; ++k) {
            laguerre_.nodes.push_back(lag.nodes[k]);
            laguerre_.weights.push_back(c_ * std::exp(lag.log_weights[k]));
        }
    }

    double order() const { return a_; }
    bool atomic() const { return atomic_; }

    PiMoments exp_moments(double A) const {
        PiMoments m;
        if (atomic_) {
            const double e2 = std::exp(-2.0 * A);
            m.value = kAtomicMass * (1.0 + e2);
            m.first = kAtomicMass * 2.0 * e2;
            return m;
        }
        auto add = [&](double v, double w) {
            const double f = w * std::exp(-A * v);
            m.value += f;
            m.first += f * v;
        };
        if (A <= 4.0) {
            for (std::size_t k = 0; k < global_.size(); ++k) add(1.0 + global_.nodes[k], c_ * global_.weights[k]);
            return m;
        }
        if (A >= kLaguerreFrom) {
            // v = u/A against u^{a-1/2} e^{-u}; every node has v < 1 and the
            // remaining factor (2-v)^{a-1/2} is analytic on |v| < 2.
            const double scale = std::pow(A, -(a_ + 0.5));
            for (std::size_t k = 0; k < laguerre_.size(); ++k) {
                const double v = laguerre_.nodes[k] / A;
                const double f = scale * laguerre_.weights[k] * std::pow(2.0 - v, a_ - 0.5);
                m.value += f;
                m.first += f * v;
            }
            return m;
        }
        const double h = 4.0 / A;
        const double reach = std::min(2.0, 40.0 / A);
        const bool upper_edge = reach >= 2.0;
        edge_panel_low(h, add);
        const double stop = upper_edge ? 2.0 - h : reach;
        const int n = std::max(0, static_cast<int>(std::ceil((stop - h) / h - 1e-9)));
        const double width = n > 0 ? (stop - h) / n : 0.0;
        for (int p = 0; p < n; ++p) interior_panel(h + p * width, h + (p + 1) * width, add);
        if (upper_edge) edge_panel_high(h, add);
        return m;
    }

    /// Rule graded geometrically toward s = -1 down to width `scale`/16, for
    /// integrands like (c + b(1+s))^{-p} with c/b = scale. Nodes are in s.
    quad::Rule1D algebraic_rule(double scale) const {
        quad::Rule1D r;
        if (atomic_) {
            r.nodes = {-1.0, 1.0};
            r.weights = {kAtomicMass, kAtomicMass};
            return r;
        }
        auto add = [&](double v, double w) {
            r.nodes.push_back(v - 1.0);
            r.weights.push_back(w);
        };
        double lo = std::min(1.0, scale / 16.0);
        edge_panel_low(lo, add);
        while (lo < 1.0) {
            const double hi = std::min(1.0, 2.0 * lo);
            interior_panel(lo, hi, add);
            lo = hi;
        }
        edge_panel_high(1.0, add);
        return r;
    }

private:
    // [0, h] with weight v^{a-1/2}; remaining density factor (2-v)^{a-1/2}.
    template <class Add>
    void edge_panel_low(double h, Add&& add) const {
        const double scale = c_ * std::pow(0.5 * h, a_ + 0.5);
        for (std::size_t k = 0; k < edge_.size(); ++k) {
            const double v = 0.5 * h * (1.0 + edge_.nodes[k]);
            add(v, scale * edge_.weights[k] * std::pow(2.0 - v, a_ - 0.5));
        }
    }
    // [2-h, 2] with weight (2-v)^{a-1/2}.
    template <class Add>
    void edge_panel_high(double h, Add&& add) const {
        const double scale = c_ * std::pow(0.5 * h, a_ + 0.5);
        for (std::size_t k = 0; k < edge_.size(); ++k) {
            const double w = 0.5 * h * (1.0 + edge_.nodes[k]);
            const double v = 2.0 - w;
            add(v, scale * edge_.weights[k] * std::pow(v, a_ - 0.5));
        }
    }
    template <class Add>
    void interior_panel(double lo, double hi, Add&& add) const {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t k = 0; k < legendre_.size(); ++k) {
            const double v = mid + half * legendre_.nodes[k];
            add(v, c_ * half * legendre_.weights[k] * std::pow(v * (2.0 - v), a_ - 0.5));
        }
    }

    static constexpr int kLaguerrePoints = 24;
    static constexpr double kLaguerreFrom = 100.0;

    double a_;
    bool atomic_;
    double c_ = 0.0;
    quad::Rule1D global_, legendre_, edge_, laguerre_;
};

/// Shared integrator per order; construction solves a Jacobi eigenproblem, so
/// repeated kernel evaluations reuse one instance.
inline const PiIntegrator& cached_pi_integrator(double a) {
    static std::mutex mu;
    static std::map<double, std::unique_ptr<PiIntegrator>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[a];
    if (!slot) slot = std::make_unique<PiIntegrator>(a);
    return *slot;
}

// ---------------------------------------------------------------------------
// Rules against w_alpha

/// Tensor rule on R_+^d for g -> int g dw_alpha^+. Per axis, u = (x/scale)^2
/// turns the measure into generalized Laguerre form, so the rule is exact for
/// x^{2k} e^{-(x/scale)^2} x^{2 alpha_j + 1} with k <= 2 npts - 1.
inline QuadRule weighted_quad_rule(const AlphaVec& alpha, int npts, double scale = 1.0) {
    const std::size_t d = alpha.dim();
    std::vector<std::vector<double>> xs(d), ws(d);
    for (std::size_t j = 0; j < d; ++j) {
        const quad::LaguerreRule g = quad::gauss_laguerre(npts, alpha[j]);
        const double pref = 0.5 * std::pow(scale, 2.0 * alpha[j] + 2.0);
        for (int k = 0; k < npts; ++k) {
            xs[j].push_back(scale * std::sqrt(g.nodes[k]));
            ws[j].push_back(pref * std::exp(g.log_weights[k] + g.nodes[k]));
        }
    }
    QuadRule r;
    r.dim = d;
    r.domain = RuleDomain::HalfSpaceWeighted;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        double w = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            r.nodes.push_back(xs[j][idx[j]]);
            w *= ws[j][idx[j]];
        }
        r.weights.push_back(w);
        std::size_t j = 0;
        while (j < d && ++idx[j] == xs[j].size()) idx[j++] = 0;
        if (j == d) break;
    }
    return r;
}

/// Reflects a half-space rule into every orthant: a rule for dw_alpha on R^d.
inline QuadRule full_space_rule(const QuadRule& half) {
    QuadRule r;
    r.dim = half.dim;
    r.domain = RuleDomain::FullSpaceWeighted;
    const std::size_t signs = std::size_t{1} << half.dim;
    for (std::size_t k = 0; k < half.size(); ++k) {
        for (std::size_t m = 0; m < signs; ++m) {
            for (std::size_t j = 0; j < half.dim; ++j) {
                const double v = half.nodes[k * half.dim + j];
                r.nodes.push_back(((m >> j) & 1u) ? -v : v);
            }
            r.weights.push_back(half.weights[k]);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Weighted volume of B^+(x, r) = B(x, r) cap R_+^d

struct HalfBallSpec {
    std::vector<double> center;
    double radius;

    HalfBallSpec(std::vector<double> c, double r) : center(std::move(c)), radius(r) {
        for (double v : center)
            if (!(v > 0.0)) throw DomainError("half ball: center must lie in the open positive orthant");
        if (!(radius > 0.0)) throw DomainError("half ball: radius must be positive");
    }
};

struct MeasureValue {
    double value;
    double relerr;
};

namespace detail {

// int_{max(0, c - rho)}^{c + rho} u^{2a+1} du
inline double interval_measure(double a, double c, double rho) {
    const double p = 2.0 * a + 2.0;
    const double lo = std::max(0.0, c - rho);
    return (std::pow(c + rho, p) - std::pow(lo, p)) / p;
}

inline double ball_measure_rec(const AlphaVec& alpha, std::span<const double> c, std::size_t axis, double r,
                               double tol, double& err) {
    if (axis + 1 == alpha.dim()) return interval_measure(alpha[axis], c[axis], r);
    const double a = alpha[axis];
    const double lo = std::max(0.0, c[axis] - r);
    const double hi = c[axis] + r;
    // Inner slices change form where their ball first touches a coordinate hyperplane.
    std::vector<double> breaks{lo, hi};
    for (std::size_t j = axis + 1; j < alpha.dim(); ++j) {
        if (r > c[j]) {
            const double off = std::sqrt(r * r - c[j] * c[j]);
            for (double b : {c[axis] - off, c[axis] + off})
                if (b > lo && b < hi) breaks.push_back(b);
        }
    }
    if (c[axis] > lo && c[axis] < hi) breaks.push_back(c[axis]);
    std::sort(breaks.begin(), breaks.end());
    boost::math::quadrature::tanh_sinh<double> ts;
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        if (breaks[p + 1] - breaks[p] <= 0.0) continue;
        double e = 0.0;
        auto f = [&](double u) {
            const double rho2 = r * r - (u - c[axis]) * (u - c[axis]);
            if (rho2 <= 0.0) return 0.0;
            double inner_err = 0.0;
            const double inner = ball_measure_rec(alpha, c, axis + 1, std::sqrt(rho2), tol, inner_err);
            return std::pow(u, 2.0 * a + 1.0) * inner;
        };
        // Integrate over [0, width]: Boost's tanh-sinh can place an abscissa
        // exactly on a left endpoint of magnitude >= 1/2.
        const double left = breaks[p];
        total += ts.integrate([&](double t) { return f(left + t); }, 0.0, breaks[p + 1] - left, tol, &e);
        err += e;
    }
    return total;
}

}  // namespace detail

/// w_alpha^+(B^+(x, r)) by nested tanh-sinh quadrature over slices, with the
/// innermost coordinate integrated in closed form.
inline MeasureValue half_ball_measure(const AlphaVec& alpha, const HalfBallSpec& spec, double tol = 1e-10) {
    if (spec.center.size() != alpha.dim()) throw DomainError("half ball: dimension mismatch");
    double err = 0.0;
    const double v = detail::ball_measure_rec(alpha, spec.center, 0, spec.radius, tol, err);
    return {v, v > 0.0 ? err / v : 0.0};
}

// ---------------------------------------------------------------------------
// zeta in (0, 1)

/// Composite Gauss-Legendre on (0, 1) split at 1/2 with `panels` dyadic panels
/// graded toward each endpoint plus one innermost panel at each end.
inline QuadRule zeta_rule(int npts = 16, int panels = 40) {
    if (npts < 8) throw DomainError("zeta_rule: at least 8 points per panel required");
    // Toward 1 the grading stops while 1 - zeta still carries most of its
    // digits at the innermost node.
    const int upper = std::min(panels, 24);
    std::vector<double> breaks;
    for (int j = panels; j >= 0; --j) breaks.push_back(std::ldexp(1.0, -j - 1));
    for (int j = 1; j <= upper; ++j) breaks.push_back(1.0 - std::ldexp(1.0, -j - 1));
    const quad::Rule1D ref = quad::gauss_legendre(npts);
    const quad::Rule1D g = quad::composite_legendre(breaks, npts);
    QuadRule r;
    r.dim = 1;
    r.domain = RuleDomain::UnitIntervalZeta;
    // Innermost panels at either end use zeta = tau^2 (resp. 1 - tau^2) so that
    // inverse square root endpoint behaviour becomes smooth in tau.
    const quad::Rule1D inner = quad::mapped(ref, 0.0, std::sqrt(breaks.front()));
    const quad::Rule1D outer = quad::mapped(ref, 0.0, std::sqrt(1.0 - breaks.back()));
    for (std::size_t k = 0; k < inner.size(); ++k) {
        const double tau = inner.nodes[k];
        r.nodes.push_back(tau * tau);
        r.weights.push_back(2.0 * tau * inner.weights[k]);
    }
    r.nodes.insert(r.nodes.end(), g.nodes.begin(), g.nodes.end());
    r.weights.insert(r.weights.end(), g.weights.begin(), g.weights.end());
    for (std::size_t k = outer.size(); k-- > 0;) {
        const double tau = outer.nodes[k];
        r.nodes.push_back(1.0 - tau * tau);
        r.weights.push_back(2.0 * tau * outer.weights[k]);
    }
    return r;
}

}  // namespace dunkl
