#pragma once

// Generalized Hermite functions for Z_2^d and the Dunkl operators acting on
// them: evaluation with analytic derivatives, T_j and the Dunkl Laplacian,
// eigenvalues, parity classes N_eps, eps-symmetric parts and spectral
// projections.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dunkl/measure.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct MultiIndex {
    std::vector<int> n;

    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> v) : MultiIndex(std::vector<int>(v)) {}
    explicit MultiIndex(std::vector<int> v) : n(std::move(v)) {
        for (int k : n)
            if (k < 0) throw DomainError("multi-index entries must be nonnegative");
    }
    std::size_t dim() const { return n.size(); }
    int operator[](std::size_t j) const { return n[j]; }
    int degree() const { return std::accumulate(n.begin(), n.end(), 0); }
    auto operator<=>(const MultiIndex&) const = default;
};

struct ParityVec {
    std::vector<int> bits;

    ParityVec() = default;
    ParityVec(std::initializer_list<int> v) : ParityVec(std::vector<int>(v)) {}
    explicit ParityVec(std::vector<int> v) : bits(std::move(v)) {
        for (int b : bits)
            if (b != 0 && b != 1) throw DomainError("parity vector entries must be 0 or 1");
    }
    static ParityVec zeros(std::size_t d) { return ParityVec(std::vector<int>(d, 0)); }
    static ParityVec of(const MultiIndex& m) {
        std::vector<int> b(m.dim());
        for (std::size_t j = 0; j < m.dim(); ++j) b[j] = m[j] % 2;
        return ParityVec(std::move(b));
    }
    std::size_t dim() const { return bits.size(); }
    int operator[](std::size_t j) const { return bits[j]; }
    int count() const { return std::accumulate(bits.begin(), bits.end(), 0); }
    bool operator==(const ParityVec&) const = default;
};

/// All 2^d parity vectors, in binary counting order.
inline std::vector<ParityVec> all_parities(std::size_t d) {
    std::vector<ParityVec> out;
    for (std::size_t m = 0; m < (std::size_t{1} << d); ++m) {
        std::vector<int> b(d);
        for (std::size_t j = 0; j < d; ++j) b[j] = static_cast<int>((m >> j) & 1u);
        out.emplace_back(std::move(b));
    }
    return out;
}

/// Samples of a function on a point set; points are stored row-major.
template <class T = double>
struct GridFunction {
    std::size_t dim = 1;
    std::vector<double> points;
    std::vector<T> values;

    std::size_t size() const { return values.size(); }
    std::span<const double> point(std::size_t k) const { return {points.data() + k * dim, dim}; }
};

template <class F>
concept AnalyticFunction = requires(const F& f, std::span<const double> x, std::size_t j) {
    { f.value(x) } -> std::convertible_to<double>;
    { f.partial(x, j) } -> std::convertible_to<double>;
    { f.partial2(x, j) } -> std::convertible_to<double>;
};

// ---------------------------------------------------------------------------
// One-dimensional functions

struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// log |d_{n,a}|; the sign is (-1)^{floor(n/2)}.
inline double hermite_log_normalizer(int n, double a) {
    const int k = n / 2;
    return 0.5 * (std::lgamma(k + 1.0) - std::lgamma(k + a + 1.0 + (n % 2)));
}

/// h_n^a(x) and its first two derivatives, using the even/odd Laguerre forms
/// h = d e^{-x^2/2} g(x) with g = L_k^a(x^2) or x L_k^{a+1}(x^2).
inline Jet hermite_1d_jet(int n, double a, double x) {
    const int k = n / 2;
    const bool odd = n % 2;
    const double order = odd ? a + 1.0 : a;
    const double u = x * x;
    const double l = specfun::laguerre(k, order, u);
    const double l1 = specfun::laguerre_deriv(k, order, u);
    const double l2 = specfun::laguerre_deriv2(k, order, u);
    double g, g1, g2;
    if (!odd) {
        g = l;
        g1 = 2.0 * x * l1;
        g2 = 2.0 * l1 + 4.0 * u * l2;
    } else {
        g = x * l;
        g1 = l + 2.0 * u * l1;
        g2 = 6.0 * x * l1 + 4.0 * x * u * l2;
    }
    const double sign = (k % 2) ? -1.0 : 1.0;
    const double scale = sign * std::exp(hermite_log_normalizer(n, a) - 0.5 * u);
    return {scale * g, scale * (g1 - x * g), scale * (g2 - 2.0 * x * g1 + (u - 1.0) * g)};
}

inline double hermite_1d(int n, double a, double x) {
    const int k = n / 2;
    const bool odd = n % 2;
    const double l = specfun::laguerre(k, odd ? a + 1.0 : a, x * x);
    const double sign = (k % 2) ? -1.0 : 1.0;
    return sign * std::exp(hermite_log_normalizer(n, a) - 0.5 * x * x) * (odd ? x * l : l);
}

/// h_0^a(x), ..., h_nmax^a(x) from two Laguerre tables.
inline std::vector<double> hermite_1d_table(int nmax, double a, double x) {
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
    const double u = x * x;
    const int kmax = nmax / 2;
    const auto even = specfun::laguerre_table(kmax, a, u);
    const auto odd = specfun::laguerre_table(kmax, a + 1.0, u);
    for (int n = 0; n <= nmax; ++n) {
        const int k = n / 2;
        const double sign = (k % 2) ? -1.0 : 1.0;
        const double s = sign * std::exp(hermite_log_normalizer(n, a) - 0.5 * u);
        out[n] = (n % 2) ? s * x * odd[k] : s * even[k];
    }
    return out;
}

// ---------------------------------------------------------------------------
// d-dimensional tensor products

inline void check_dims(const MultiIndex& n, const AlphaVec& alpha, std::span<const double> x) {
    if (n.dim() != alpha.dim() || x.size() != alpha.dim())
        throw DomainError("hermite: dimension mismatch between n, alpha and x");
}

inline double hermite_fn(const MultiIndex& n, const AlphaVec& alpha, std::span<const double> x) {
    check_dims(n, alpha, x);
    double v = 1.0;
    for (std::size_t j = 0; j < alpha.dim(); ++j) v *= hermite_1d(n[j], alpha[j], x[j]);
    return v;
}

/// d/dx_axis of h_n^alpha, valid on the coordinate hyperplanes as well.
inline double hermite_fn_deriv(const MultiIndex& n, const AlphaVec& alpha, std::span<const double> x,
                               std::size_t axis) {
    check_dims(n, alpha, x);
    double v = 1.0;
    for (std::size_t j = 0; j < alpha.dim(); ++j)
        v *= (j == axis) ? hermite_1d_jet(n[j], alpha[j], x[j]).d1 : hermite_1d(n[j], alpha[j], x[j]);
    return v;
}

inline double hermite_fn_deriv2(const MultiIndex& n, const AlphaVec& alpha, std::span<const double> x,
                                std::size_t axis) {
    check_dims(n, alpha, x);
    double v = 1.0;
    for (std::size_t j = 0; j < alpha.dim(); ++j)
        v *= (j == axis) ? hermite_1d_jet(n[j], alpha[j], x[j]).d2 : hermite_1d(n[j], alpha[j], x[j]);
    return v;
}

/// h_n^alpha as an AnalyticFunction.
struct HermiteFunction {
    MultiIndex n;
    AlphaVec alpha;

    double value(std::span<const double> x) const { return hermite_fn(n, alpha, x); }
    double partial(std::span<const double> x, std::size_t j) const { return hermite_fn_deriv(n, alpha, x, j); }
    double partial2(std::span<const double> x, std::size_t j) const {
        return hermite_fn_deriv2(n, alpha, x, j);
    }
};

/// 2|n| + 2|alpha| + 2d.
inline double eigenvalue(const MultiIndex& n, const AlphaVec& alpha) {
    if (n.dim() != alpha.dim()) throw DomainError("eigenvalue: dimension mismatch");
    return 2.0 * n.degree() + alpha.eigen_offset();
}

// ---------------------------------------------------------------------------
// Index sets

/// All n with |n| = m, in lexicographic order.
inline std::vector<MultiIndex> enumerate_degree(std::size_t d, int m) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(d, 0);
    auto rec = [&](auto&& self, std::size_t j, int left) -> void {
        if (j + 1 == d) {
            cur[j] = left;
            out.emplace_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[j] = v;
            self(self, j + 1, left - v);
        }
    };
    if (d == 0) return out;
    rec(rec, 0, m);
    std::sort(out.begin(), out.end());
    return out;
}

/// All n with |n| <= maxdeg, ordered by degree.
inline std::vector<MultiIndex> enumerate_upto(std::size_t d, int maxdeg) {
    std::vector<MultiIndex> out;
    for (int m = 0; m <= maxdeg; ++m) {
        auto shell = enumerate_degree(d, m);
        out.insert(out.end(), shell.begin(), shell.end());
    }
    return out;
}

/// N_eps truncated at total degree maxdeg: n_i = eps_i (mod 2).
inline std::vector<MultiIndex> enumerate_Neps(const ParityVec& eps, int maxdeg) {
    std::vector<MultiIndex> out;
    for (auto& n : enumerate_upto(eps.dim(), maxdeg))
        if (ParityVec::of(n) == eps) out.push_back(n);
    return out;
}

// ---------------------------------------------------------------------------
// Dunkl operators

/// Multivariate polynomial with exact Dunkl-operator action.
class Polynomial {
public:
    explicit Polynomial(std::size_t d) : d_(d) {}
    Polynomial& add(std::vector<int> exponents, double coef) {
        if (exponents.size() != d_) throw DomainError("polynomial: exponent dimension mismatch");
        terms_[exponents] += coef;
        return *this;
    }
    std::size_t dim() const { return d_; }
    const std::map<std::vector<int>, double>& terms() const { return terms_; }

    double value(std::span<const double> x) const {
        double s = 0.0;
        for (const auto& [e, c] : terms_) {
            double t = c;
            for (std::size_t j = 0; j < d_; ++j) t *= std::pow(x[j], e[j]);
            s += t;
        }
        return s;
    }
    Polynomial derivative(std::size_t j) const {
        Polynomial p(d_);
        for (const auto& [e, c] : terms_) {
            if (e[j] == 0) continue;
            auto f = e;
            --f[j];
            p.terms_[f] += c * e[j];
        }
        return p;
    }
    double partial(std::span<const double> x, std::size_t j) const { return derivative(j).value(x); }
    double partial2(std::span<const double> x, std::size_t j) const {
        return derivative(j).derivative(j).value(x);
    }

private:
    std::size_t d_;
    std::map<std::vector<int>, double> terms_;
};

/// T_j^alpha on polynomials: x^k -> (k_j + (2 alpha_j + 1)[k_j odd]) x^{k - e_j}.
inline Polynomial dunkl_apply(const AlphaVec& alpha, const Polynomial& p, std::size_t axis) {
    Polynomial out(p.dim());
    for (const auto& [e, c] : p.terms()) {
        if (e[axis] == 0) continue;
        const double factor = e[axis] + ((e[axis] % 2) ? 2.0 * alpha[axis] + 1.0 : 0.0);
        auto f = e;
        --f[axis];
        out.add(f, c * factor);
    }
    return out;
}

inline std::vector<double> reflect(std::span<const double> x, std::size_t axis) {
    std::vector<double> y(x.begin(), x.end());
    y[axis] = -y[axis];
    return y;
}

/// T_j^alpha f(x). On x_j = 0 the difference quotient is replaced by its
/// limit 2 d_j f, so T_j f = (2 alpha_j + 2) d_j f there.
template <AnalyticFunction F>
double dunkl_value(const AlphaVec& alpha, const F& f, std::span<const double> x, std::size_t axis) {
    const double k = alpha[axis] + 0.5;
    const double df = f.partial(x, axis);
    if (x[axis] == 0.0) return df + 2.0 * k * df;
    const auto y = reflect(x, axis);
    return df + k * (f.value(x) - f.value(y)) / x[axis];
}

template <AnalyticFunction F>
GridFunction<double> dunkl_apply(const AlphaVec& alpha, const F& f, const GridFunction<double>& grid,
                                 std::size_t axis) {
    GridFunction<double> out{grid.dim, grid.points, std::vector<double>(grid.points.size() / grid.dim)};
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = dunkl_value(alpha, f, grid.point(k), axis);
    return out;
}

/// Delta_alpha f(x) from the explicit second-order formula.
template <AnalyticFunction F>
double dunkl_laplacian(const AlphaVec& alpha, const F& f, std::span<const double> x) {
    double s = 0.0;
    const double fx = f.value(x);
    for (std::size_t j = 0; j < alpha.dim(); ++j) {
        if (x[j] == 0.0)
            throw SingularityError("dunkl_laplacian: point lies on the hyperplane x_" + std::to_string(j) + " = 0");
        const auto y = reflect(x, j);
        s += f.partial2(x, j) + (2.0 * alpha[j] + 1.0) / x[j] * f.partial(x, j) -
             (alpha[j] + 0.5) * (fx - f.value(y)) / (x[j] * x[j]);
    }
    return s;
}

/// (-Delta_alpha + |x|^2) f(x).
template <AnalyticFunction F>
double oscillator_apply(const AlphaVec& alpha, const F& f, std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return -dunkl_laplacian(alpha, f, x) + r2 * f.value(x);
}

// ---------------------------------------------------------------------------
// Symmetry classes and projections

/// eta^eps for a sign pattern given by bit mask (bit j set means eta_j = -1).
inline double sign_character(const ParityVec& eps, std::size_t mask) {
    int flips = 0;
    for (std::size_t j = 0; j < eps.dim(); ++j) flips += eps[j] && ((mask >> j) & 1u);
    return (flips % 2) ? -1.0 : 1.0;
}

/// f_eps(x) = 2^{-d} sum_eta eta^eps f(eta x).
template <class F>
double eps_decompose(F&& f, const ParityVec& eps, std::span<const double> x) {
    const std::size_t d = eps.dim();
    std::vector<double> y(x.begin(), x.end());
    double s = 0.0;
    for (std::size_t m = 0; m < (std::size_t{1} << d); ++m) {
        for (std::size_t j = 0; j < d; ++j) y[j] = ((m >> j) & 1u) ? -x[j] : x[j];
        s += sign_character(eps, m) * f(std::span<const double>(y));
    }
    return std::ldexp(s, -static_cast<int>(d));
}

/// Samples f on the nodes of `rule`.
template <class T = double, class F>
GridFunction<T> sample_on(const QuadRule& rule, F&& f) {
    GridFunction<T> g{rule.dim, rule.nodes, std::vector<T>(rule.size())};
    for (std::size_t k = 0; k < rule.size(); ++k) g.values[k] = f(rule.node(k));
    return g;
}

/// Row k holds h_{indices[k]} at every node of the rule, built from 1D tables.
inline std::vector<std::vector<double>> basis_matrix(const AlphaVec& alpha, const std::vector<MultiIndex>& indices,
                                                     const QuadRule& rule) {
    const std::size_t d = alpha.dim();
    int nmax = 0;
    for (const auto& n : indices)
        for (int v : n.n) nmax = std::max(nmax, v);
    std::vector<std::vector<double>> out(indices.size(), std::vector<double>(rule.size()));
    std::vector<std::vector<double>> tab(d);
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const auto x = rule.node(k);
        for (std::size_t j = 0; j < d; ++j) tab[j] = hermite_1d_table(nmax, alpha[j], x[j]);
        for (std::size_t i = 0; i < indices.size(); ++i) {
            double v = 1.0;
            for (std::size_t j = 0; j < d; ++j) v *= tab[j][indices[i][j]];
            out[i][k] = v;
        }
    }
    return out;
}

/// <f, h_n> against the rule for each listed n.
template <class T>
std::vector<T> spectral_coefficients(const GridFunction<T>& f, const std::vector<std::vector<double>>& basis,
                                     const QuadRule& rule) {
    if (f.size() != rule.size()) throw DomainError("spectral coefficients: function must be sampled on the rule");
    std::vector<T> c(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        T acc{};
        for (std::size_t k = 0; k < rule.size(); ++k) acc += rule.weights[k] * basis[i][k] * f.values[k];
        c[i] = acc;
    }
    return c;
}

/// P_m f = sum_{|n| = m} <f, h_n> h_n on the nodes of a full-space rule.
template <class T>
GridFunction<T> spectral_project(const AlphaVec& alpha, const GridFunction<T>& f, int m, const QuadRule& rule) {
    if (rule.domain != RuleDomain::FullSpaceWeighted)
        throw DomainError("spectral_project: rule must integrate against w_alpha on R^d");
    const auto idx = enumerate_degree(alpha.dim(), m);
    const auto basis = basis_matrix(alpha, idx, rule);
    const auto c = spectral_coefficients(f, basis, rule);
    GridFunction<T> out{f.dim, f.points, std::vector<T>(f.size())};
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t k = 0; k < f.size(); ++k) out.values[k] += c[i] * basis[i][k];
    return out;
}

/// Gram matrix <h_n, h_m> against `rule` for the listed indices.
inline Eigen::MatrixXd gram_matrix(const AlphaVec& alpha, const std::vector<MultiIndex>& indices,
                                   const QuadRule& rule) {
    const auto basis = basis_matrix(alpha, indices, rule);
    Eigen::MatrixXd b(indices.size(), rule.size());
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t k = 0; k < rule.size(); ++k) b(i, k) = basis[i][k] * std::sqrt(rule.weights[k]);
    return b * b.transpose();
}

// ---------------------------------------------------------------------------
// Growth envelope

// Decay rate in the exponential regime of the envelope. The source of the
// estimate leaves it unspecified; 1/8 is comfortably below the true Gaussian
// decay of h_n past its turning point.
inline constexpr double kEnvelopeDecay = 0.125;

/// Phi_n^a(x) = x^{-a-1/2} for 0 < x <= 4(n+a+1), and x^{-a-1/2} e^{-c x} beyond.
inline double growth_envelope_1d(int n, double a, double x, double c = kEnvelopeDecay) {
    if (!(x > 0.0)) throw DomainError("growth envelope: x must be positive");
    const double base = std::pow(x, -a - 0.5);
    return x <= 4.0 * (n + a + 1.0) ? base : base * std::exp(-c * x);
}

inline double growth_envelope(const MultiIndex& n, const AlphaVec& alpha, std::span<const double> x,
                              double c = kEnvelopeDecay) {
    check_dims(n, alpha, x);
    double v = 1.0;
    for (std::size_t j = 0; j < alpha.dim(); ++j) v *= growth_envelope_1d(n[j], alpha[j], x[j], c);
    return v;
}

}  // namespace dunkl
