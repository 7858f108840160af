#pragma once

// One-dimensional reference Gauss rules. Legendre nodes come from Newton on the
// Legendre recurrence; Jacobi and generalized Laguerre rules from the
// Golub-Welsch eigenproblem of the Jacobi matrix.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dunkl/specfun.hpp"

namespace dunkl::quad {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    auto integrate(F&& f) const {
        decltype(f(0.0) * 1.0) acc{};
        for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * f(nodes[k]);
        return acc;
    }
};

/// Gauss-Legendre on [-1, 1].
inline Rule1D gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = x; p0 = 1.0; }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) { p1 = x; p0 = 1.0; }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

namespace detail {

inline Rule1D golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, double mu0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw std::runtime_error("golub_welsch: eigensolver failed");
    const auto n = diag.size();
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        r.nodes[k] = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        r.weights[k] = mu0 * v * v;
    }
    return r;
}

}  // namespace detail

/// Gauss-Jacobi on [-1, 1] for the weight (1-x)^a (1+x)^b, a, b > -1.
inline Rule1D gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be positive");
    if (!(a > -1.0 && b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
    const double ab = a + b;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    diag(0) = (b - a) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        double beta;
        if (k == 1)
            beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        sub(k - 1) = std::sqrt(beta);
    }
    const double mu0 = std::exp((ab + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    return detail::golub_welsch(diag, sub, mu0);
}

struct LaguerreRule {
    std::vector<double> nodes;
    std::vector<double> log_weights;  // log of the weight for u^a e^{-u}
};

/// Generalized Gauss-Laguerre nodes for u^a e^{-u} on (0, inf). Weights are
/// returned as logarithms, evaluated from the Laguerre derivative at each
/// Newton-polished node, so the tail weights keep full relative accuracy.
inline LaguerreRule gauss_laguerre(int n, double a) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be positive");
    if (!(a > -1.0)) throw DomainError("gauss_laguerre: exponent must exceed -1");
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + a + 1.0;
    for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(k * (k + a));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    LaguerreRule r;
    r.nodes.resize(n);
    r.log_weights.resize(n);
    const double lg = std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0);
    for (int k = 0; k < n; ++k) {
        double u = es.eigenvalues()(k);
        double dl = 0.0;
        for (int it = 0; it < 4; ++it) {
            const double l = specfun::laguerre(n, a, u);
            dl = specfun::laguerre_deriv(n, a, u);
            const double du = l / dl;
            u -= du;
            if (std::abs(du) < 1e-15 * u) break;
        }
        dl = specfun::laguerre_deriv(n, a, u);
        r.nodes[k] = u;
        r.log_weights[k] = lg - std::log(u) - 2.0 * std::log(std::abs(dl));
    }
    return r;
}

/// Maps a rule on [-1, 1] affinely to [lo, hi].
inline Rule1D mapped(const Rule1D& ref, double lo, double hi) {
    Rule1D r;
    r.nodes.resize(ref.size());
    r.weights.resize(ref.size());
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < ref.size(); ++k) {
        r.nodes[k] = mid + half * ref.nodes[k];
        r.weights[k] = half * ref.weights[k];
    }
    return r;
}

/// Composite Gauss-Legendre over consecutive breakpoints.
inline Rule1D composite_legendre(const std::vector<double>& breaks, int per_panel) {
    const Rule1D ref = gauss_legendre(per_panel);
    Rule1D r;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const Rule1D m = mapped(ref, breaks[p], breaks[p + 1]);
        r.nodes.insert(r.nodes.end(), m.nodes.begin(), m.nodes.end());
        r.weights.insert(r.weights.end(), m.weights.begin(), m.weights.end());
    }
    return r;
}

}  // namespace dunkl::quad
