#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dunkl/heat.hpp"
#include "fixture_data.hpp"

using namespace dunkl;
using dunkl::testing::expected_real;

namespace {

const double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> point(std::initializer_list<double> v) { return v; }

// Classical Mehler kernel on R and its t-derivative.
double mehler(double t, double x, double y) {
    const double s = std::sinh(2 * t), c = std::cosh(2 * t);
    return std::exp(-((x * x + y * y) * c - 2 * x * y) / (2 * s)) / std::sqrt(2 * kPi * s);
}
double mehler_dt(double t, double x, double y) {
    const double s = std::sinh(2 * t), c = std::cosh(2 * t);
    const double n = (x * x + y * y) * c - 2 * x * y;
    return mehler(t, x, y) * (-c / s - (x * x + y * y) + n * c / (s * s));
}

}  // namespace

TEST(HeatTime, RoundTrip) {
    for (double z = 1e-6; z < 1.0 - 1e-6; z = z < 0.5 ? z * 1.7 : 1.0 - (1.0 - z) / 1.7) {
        const HeatTime h = HeatTime::from_zeta(z);
        EXPECT_NEAR(HeatTime::from_t(h.t()).zeta(), z, 1e-14 * std::max(z, 1e-2));
        EXPECT_LT(rel(HeatTime::from_t(h.t()).one_minus_zeta2(), h.one_minus_zeta2()), 1e-9);
    }
    EXPECT_THROW(HeatTime::from_t(0.0), DomainError);
    EXPECT_THROW(HeatTime::from_zeta(1.0), DomainError);
}

TEST(QPair, Examples) {
    const auto x = point({0.7, 1.3});
    const QPair a = q_pm(x, x, point({1.0, 1.0}));
    EXPECT_NEAR(a.qplus, 4 * (0.49 + 1.69), 1e-14);
    EXPECT_EQ(a.qminus, 0.0);
    const auto y = point({2.0, 0.1});
    const QPair b = q_pm(x, y, point({0.0, 0.0}));
    EXPECT_EQ(b.qplus, b.qminus);
    EXPECT_NEAR(b.qplus, 0.49 + 1.69 + 4.0 + 0.01, 1e-14);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ux(0.0, 5.0), us(-1.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const auto p = point({ux(rng), ux(rng)}), q = point({ux(rng), ux(rng)}), s = point({us(rng), us(rng)});
        const QPair r = q_pm(p, q, s);
        const double lo = std::pow(p[0] - q[0], 2) + std::pow(p[1] - q[1], 2);
        const double hi = std::pow(p[0] + q[0], 2) + std::pow(p[1] + q[1], 2);
        for (double v : {r.qplus, r.qminus}) {
            EXPECT_GE(v, lo - 1e-12);
            EXPECT_LE(v, hi + 1e-12);
        }
    }
    EXPECT_THROW(q_pm(x, y, point({1.5, 0.0})), DomainError);
}

TEST(HeatKernel1D, Fixtures) {
    EXPECT_LT(rel(heat_kernel_1d(0.5, HeatTime::from_t(0.3), 1.0, 2.0), expected_real("heat_1d_a05_t03_x1_y2")),
              1e-12);
    EXPECT_LT(rel(heat_kernel_1d(1.25, HeatTime::from_t(0.7), -0.8, 1.3), expected_real("heat_1d_a125_t07_xm08_y13")),
              1e-12);
}

TEST(HeatKernel1D, ClassicalMehler) {
    for (double t : {0.05, 0.3, 1.0, 4.0})
        for (double x : {-3.0, -0.4, 0.0, 0.9, 2.5})
            for (double y : {-2.2, -0.1, 0.0, 0.6, 3.1}) {
                const HeatTime h = HeatTime::from_t(t);
                EXPECT_LT(rel(heat_kernel_1d(-0.5, h, x, y), mehler(t, x, y)), 1e-10) << t << " " << x << " " << y;
            }
}

TEST(HeatKernel1D, OppositeSignsAgainstClosedBessel) {
    // alpha = 1/2: I_{1/2}(z) - I_{3/2}(z) = sqrt(2/(pi z)) (sinh(z)/z - e^{-z})
    const double a = 0.5;
    for (double t : {0.1, 0.5}) {
        const HeatTime h = HeatTime::from_t(t);
        const double s = std::sinh(2 * t);
        for (auto [x, y] : {std::pair{-1.0, 2.0}, std::pair{3.0, -2.5}, std::pair{-0.2, 0.3}}) {
            const double u = std::abs(x * y) / s;
            const double diff = std::sqrt(2 / (kPi * u)) * (std::sinh(u) / u - std::exp(-u));
            const double expected = std::exp(-(x * x + y * y) * std::cosh(2 * t) / (2 * s)) / (2 * s) * diff /
                                    std::pow(std::abs(x * y), a);
            EXPECT_LT(rel(heat_kernel_1d(a, h, x, y), expected), 1e-10) << t << " " << x;
        }
    }
}

TEST(HeatKernel1D, SeriesAtSixtyTerms) {
    const HeatTime h = HeatTime::from_t(0.3);
    EXPECT_LT(rel(heat_series_1d_truncated(0.5, h, 1.0, 2.0, 60), heat_kernel_1d(0.5, h, 1.0, 2.0)), 1e-8);
    const SeriesValue s = heat_series_1d(0.5, h, 1.0, 2.0);
    EXPECT_LT(rel(s.value, heat_kernel_1d(0.5, h, 1.0, 2.0)), 1e-11);
}

TEST(HeatKernel, SymmetryAndPositivity) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(0.01, 6.0), ut(0.05, 5.0), ua(-0.5, 2.0);
    for (int k = 0; k < 300; ++k) {
        const AlphaVec a{ua(rng), ua(rng)};
        const HeatTime h = HeatTime::from_t(ut(rng));
        const auto x = point({ux(rng), ux(rng)}), y = point({ux(rng), ux(rng)});
        const double g = heat_kernel(a, h, x, y);
        EXPECT_GT(g, 0.0);
        EXPECT_EQ(g, heat_kernel(a, h, y, x));
        for (const auto& e : all_parities(2)) {
            const double c = component_kernel(a, e, h, x, y);
            EXPECT_GT(c, 0.0);
            EXPECT_EQ(c, component_kernel(a, e, h, y, x));
        }
    }
}

TEST(HeatKernel, ComponentsSumToKernel) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ux(0.05, 4.0), ut(0.05, 3.0), ua(-0.5, 2.0);
    for (int k = 0; k < 100; ++k) {
        const AlphaVec a{ua(rng), ua(rng)};
        const HeatTime h = HeatTime::from_t(ut(rng));
        const auto x = point({ux(rng), ux(rng)}), y = point({ux(rng), ux(rng)});
        double s = 0.0;
        for (const auto& e : all_parities(2)) s += component_kernel(a, e, h, x, y);
        EXPECT_LT(rel(s, heat_kernel(a, h, x, y)), 1e-12);
    }
}

TEST(HeatKernel, ComponentMatchesRestrictedSeries) {
    for (double al : {-0.5, 0.0, 0.5, 1.7})
        for (int e : {0, 1}) {
            const HeatTime h = HeatTime::from_t(0.4);
            const auto x = point({1.1}), y = point({0.6});
            const double direct = component_kernel(AlphaVec{al}, {e}, h, x, y);
            EXPECT_LT(rel(heat_series_1d_truncated(al, h, 1.1, 0.6, 60, e), direct), 1e-8);
            EXPECT_LT(rel(component_kernel_series(AlphaVec{al}, {e}, h, x, y), direct), 1e-11);
        }
}

TEST(HeatKernel, TripleRepresentationEquivalence) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ux(0.2, 3.0), ut(0.2, 2.0), ua(-0.5, 2.0);
    for (int k = 0; k < 60; ++k) {
        const std::size_t d = 1 + k % 2;
        std::vector<double> al(d), x(d), y(d);
        for (std::size_t i = 0; i < d; ++i) {
            al[i] = (k % 5 == 0) ? -0.5 : ua(rng);
            x[i] = ux(rng);
            y[i] = ux(rng);
        }
        const AlphaVec a(al);
        const HeatTime h = HeatTime::from_t(ut(rng));
        const double closed = heat_kernel(a, h, x, y);
        EXPECT_LT(rel(heat_kernel_series(a, h, x, y), closed), 1e-8);
        double zsum = 0.0;
        for (const auto& e : all_parities(d)) {
            const double c = component_kernel(a, e, h, x, y);
            const double z = component_kernel_zeta(a, e, h, x, y);
            EXPECT_LT(rel(z, c), 1e-8);
            EXPECT_LT(rel(component_kernel_series(a, e, h, x, y), c), 1e-8);
            zsum += z;
        }
        EXPECT_LT(rel(zsum, closed), 1e-8);
    }
}

TEST(HeatKernel, ZetaFormAtomicCase) {
    // alpha = -1/2, eps = 0: Pi is atomic and the form is the even part of Mehler.
    const HeatTime h = HeatTime::from_t(0.6);
    const auto x = point({1.3}), y = point({0.4});
    const double even = 0.5 * (mehler(0.6, 1.3, 0.4) + mehler(0.6, 1.3, -0.4));
    EXPECT_LT(rel(component_kernel_zeta(AlphaVec{-0.5}, {0}, h, x, y), even), 1e-13);
}

TEST(HeatKernel, Semigroup) {
    for (double al : {-0.5, 0.0, 0.8}) {
        const AlphaVec a{al};
        const double t = 0.4, s = 0.7;
        const HeatTime ht = HeatTime::from_t(t), hs = HeatTime::from_t(s), hts = HeatTime::from_t(t + s);
        const double c = 0.5 * (1 / std::tanh(2 * t) + 1 / std::tanh(2 * s));
        const QuadRule rule = full_space_rule(weighted_quad_rule(a, 80, 1.0 / std::sqrt(c)));
        for (auto [x, y] : {std::pair{0.5, 1.2}, std::pair{-1.0, 0.3}, std::pair{2.0, 2.0}}) {
            const double v = rule.integrate([&](auto z) {
                return heat_kernel_1d(al, ht, x, z[0]) * heat_kernel_1d(al, hs, z[0], y);
            });
            EXPECT_LT(rel(v, heat_kernel_1d(al, hts, x, y)), 1e-6) << al << " " << x;
        }
    }
}

TEST(HeatKernel, GroundStateIsEigenfunction) {
    const AlphaVec a{0.3, -0.5};
    const HeatTime h = HeatTime::from_t(0.45);
    const QuadRule rule = full_space_rule(weighted_quad_rule(a, 60, 0.9));
    const HermiteFunction h0{{0, 0}, a};
    const double lam = eigenvalue({0, 0}, a);
    for (const auto& x : {point({0.5, -1.0}), point({1.7, 0.2})}) {
        const double v = rule.integrate([&](auto y) { return heat_kernel(a, h, x, y) * h0.value(y); });
        EXPECT_LT(rel(v, std::exp(-0.45 * lam) * h0.value(x)), 1e-8);
    }
}

TEST(HeatDerivative, FiniteDifferences) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ux(0.2, 3.0), ut(0.05, 3.0), ua(-0.5, 2.0);
    for (int k = 0; k < 100; ++k) {
        const std::size_t d = 1 + k % 2;
        std::vector<double> al(d), x(d), y(d);
        std::vector<int> eb(d);
        for (std::size_t i = 0; i < d; ++i) {
            al[i] = ua(rng);
            x[i] = ux(rng);
            y[i] = ux(rng);
            eb[i] = (k >> i) & 1;
        }
        const AlphaVec a(al);
        const ParityVec e(eb);
        const double t = ut(rng), step = 1e-5 * t;
        const double fd = (component_kernel(a, e, HeatTime::from_t(t + step), x, y) -
                           component_kernel(a, e, HeatTime::from_t(t - step), x, y)) /
                          (2 * step);
        const double an = component_kernel_dt(a, e, HeatTime::from_t(t), x, y);
        // relative to the kernel scale, since dG/dt crosses zero
        const double scale = std::max(std::abs(an), component_kernel(a, e, HeatTime::from_t(t), x, y));
        EXPECT_LT(std::abs(an - fd), 1e-5 * scale) << k;
    }
}

TEST(HeatDerivative, DecaysAtLargeTime) {
    for (double t : {5.0, 7.0, 10.0})
        for (double al : {-0.5, 0.0, 1.0})
            for (int e : {0, 1})
                EXPECT_LT(component_kernel_dt(AlphaVec{al}, {e}, HeatTime::from_t(t), point({1.0}), point({2.0})), 0.0);
}

TEST(HeatDerivative, ClassicalEvenPart) {
    for (double t : {0.1, 0.5, 2.0}) {
        const double expected = 0.5 * (mehler_dt(t, 1.3, 0.4) + mehler_dt(t, 1.3, -0.4));
        const double v = component_kernel_dt(AlphaVec{-0.5}, {0}, HeatTime::from_t(t), point({1.3}), point({0.4}));
        EXPECT_LT(std::abs(v - expected), 1e-8 * std::abs(expected) + 1e-14) << t;
    }
}

TEST(DerEst, BoundedOnDisjointCompacts) {
    for (std::size_t d : {1u, 2u}) {
        const int m = d == 1 ? 10 : 4;
        for (double al : {-0.5, 0.0, 0.5}) {
            const AlphaVec a = AlphaVec::uniform(d, al);
            for (const auto& e : all_parities(d)) {
                const ComponentZetaForm form(a, e);
                const QuadRule zr = zeta_rule();
                double hi = 0.0, ratio = 0.0;
                std::vector<double> x(d), y(d);
                const int total = static_cast<int>(std::pow(m, d));
                for (int ix = 0; ix < total; ++ix)
                    for (int iy = 0; iy < total; ++iy) {
                        for (std::size_t i = 0; i < d; ++i) {
                            x[i] = 1.0 + (static_cast<int>(ix / std::pow(m, i)) % m) / (m - 1.0);
                            y[i] = 3.0 + (static_cast<int>(iy / std::pow(m, i)) % m) / (m - 1.0);
                        }
                        const double v = der_est_integral(form, x, y, zr);
                        ASSERT_TRUE(std::isfinite(v));
                        hi = std::max(hi, v);
                        ratio = std::max(ratio, v / der_est_bound(a, e, x, y));
                    }
                EXPECT_GT(hi, 0.0);
                EXPECT_LT(hi, 10.0);
                EXPECT_LT(ratio, 100.0);
            }
        }
    }
}

TEST(DerEst, GrowsAsGapShrinks) {
    const AlphaVec a{0.5};
    double prev = 0.0;
    for (double gap : {2.0, 1.0, 0.5, 0.25, 0.1, 0.05}) {
        const double v = der_est_integral(a, {0}, point({1.0}), point({1.0 + gap}));
        EXPECT_GT(v, prev);
        prev = v;
    }
    EXPECT_THROW(der_est_integral(a, {0}, point({1.0}), point({1.0})), DomainError);
}
