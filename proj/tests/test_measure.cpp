#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dunkl/measure.hpp"
#include "fixture_data.hpp"

using namespace dunkl;
using dunkl::testing::expected_real;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
const double kPi = std::numbers::pi;
}  // namespace

TEST(AlphaVec, Validation) {
    EXPECT_THROW(AlphaVec({-0.6}), DomainError);
    EXPECT_THROW(AlphaVec(std::vector<double>{}), DomainError);
    const AlphaVec a{-0.5, -0.5, 0.25};
    EXPECT_DOUBLE_EQ(a.sum(), -0.75);
    EXPECT_DOUBLE_EQ(a.eigen_offset(), 4.5);
}

TEST(Weight, Examples) {
    const std::vector<double> x{1.7, -2.2, 0.4};
    EXPECT_EQ(weight(AlphaVec::uniform(3, -0.5), x), 1.0);
    EXPECT_DOUBLE_EQ(weight(AlphaVec{0.5}, std::vector<double>{3.0}), 9.0);
    EXPECT_DOUBLE_EQ(weight(AlphaVec{0.0, 0.5}, std::vector<double>{2.0, 3.0}), 18.0);
}

TEST(Weight, ReflectionInvariant) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0), ua(-0.5, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const AlphaVec a{ua(rng), ua(rng), ua(rng)};
        std::vector<double> x{u(rng), u(rng), u(rng)};
        const double w = weight(a, x);
        for (unsigned m = 0; m < 8; ++m) {
            auto y = x;
            for (int j = 0; j < 3; ++j)
                if (m >> j & 1u) y[j] = -y[j];
            EXPECT_EQ(weight(a, y), w);
        }
    }
}

TEST(PiMeasure, AtomicLimit) {
    const QuadRule r = pi_measure_rule(-0.5, 10);
    EXPECT_EQ(r.domain, RuleDomain::AtomicPair);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r.weights[0] + r.weights[1], 2.0 / std::sqrt(2.0 * kPi), 1e-16);
    EXPECT_EQ(r.nodes[0], -1.0);
    EXPECT_EQ(r.nodes[1], 1.0);
}

TEST(PiMeasure, MassAtHalf) {
    // int (1-s^2)^0 ds / (sqrt(pi) 2^{1/2} Gamma(1)) = 2/(sqrt(pi) sqrt(2)) = sqrt(2)/sqrt(pi)
    const QuadRule r = pi_measure_rule(0.5, 3);
    EXPECT_NEAR(r.integrate([](auto) { return 1.0; }), std::sqrt(2.0) / std::sqrt(kPi), 1e-14);
}

TEST(PiMeasure, OddMomentVanishes) {
    const QuadRule r = pi_measure_rule(0.0, 4);
    EXPECT_NEAR(r.integrate([](auto s) { return s[0]; }), 0.0, 1e-15);
}

TEST(PiMeasure, BetaIntegralNormalization) {
    for (double a : {-0.3, 0.0, 0.5, 1.7, 4.0}) {
        const QuadRule r = pi_measure_rule(a, 12);
        const double mass = r.integrate([](auto) { return 1.0; });
        const double norm = std::sqrt(kPi) * std::pow(2.0, a) * std::tgamma(a + 0.5);
        const double beta = std::tgamma(0.5) * std::tgamma(a + 0.5) / std::tgamma(a + 1.0);
        EXPECT_LT(rel(mass * norm, beta), 1e-10) << a;
    }
}

TEST(PiMeasure, PolynomialExactness) {
    // Pi_1 has density proportional to (1-s^2)^{1/2}; E[s^2] = 1/4 under the normalized semicircle.
    const QuadRule r = pi_measure_rule(1.0, 5);
    const double mass = r.integrate([](auto) { return 1.0; });
    EXPECT_NEAR(r.integrate([](auto s) { return s[0] * s[0]; }) / mass, 0.25, 1e-14);
    EXPECT_NEAR(r.integrate([](auto s) { return std::pow(s[0], 8); }) / mass, 14.0 / 256.0, 1e-13);
}

TEST(PiIntegrator, ExpMomentsMatchBessel) {
    // int e^{-A(1+s)} Pi_a(ds) = e^{-A} I_a(A)/A^a
    for (double a : {-0.5, -0.45, 0.0, 0.5, 1.5, 3.0}) {
        const PiIntegrator pi(a);
        for (double A : {0.0, 0.3, 3.9, 4.1, 12.0, 19.9, 20.1, 39.0, 41.0, 300.0, 1e5, 1e9}) {
            const PiMoments m = pi.exp_moments(A);
            EXPECT_LT(rel(m.value, specfun::bessel_i_scaled_exp(a, A)), 1e-12) << a << " " << A;
            // first moment is -d/dA of the value
            const double h = 1e-5 * std::max(A, 1.0);
            if (A > 2 * h) {
                const double dv = (pi.exp_moments(A - h).value - pi.exp_moments(A + h).value) / (2 * h);
                EXPECT_LT(std::abs(m.first - dv), 1e-7 * std::abs(dv) + 1e-10 * m.value) << a << " " << A;
            }
        }
    }
}

TEST(PiIntegrator, AlgebraicRuleResolvesNearSingularity) {
    // int (c + b(1+s))^{-p} Pi_0(ds) against a direct tanh-sinh evaluation
    const double a = 0.0, c = 1e-8, b = 2.0, p = 1.5;
    const PiIntegrator pi(a);
    const auto rule = pi.algebraic_rule(c / b);
    double approx = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) approx += rule.weights[k] * std::pow(c + b * (1 + rule.nodes[k]), -p);
    boost::math::quadrature::tanh_sinh<double> ts;
    const double dens = pi_density_constant(a);
    auto f = [&](double v) { return dens * std::pow(v * (2 - v), a - 0.5) * std::pow(c + b * v, -p); };
    const double ref = ts.integrate(f, 0.0, 1e-8) + ts.integrate(f, 1e-8, 1e-4) + ts.integrate(f, 1e-4, 2.0);
    EXPECT_LT(rel(approx, ref), 1e-9);
}

TEST(WeightedRule, GaussianIntegrals) {
    auto gauss = [](std::span<const double> x) {
        double r2 = 0;
        for (double v : x) r2 += v * v;
        return std::exp(-r2);
    };
    EXPECT_NEAR(weighted_quad_rule(AlphaVec{-0.5}, 8).integrate(gauss), std::sqrt(kPi) / 2.0, 1e-14);
    EXPECT_NEAR(weighted_quad_rule(AlphaVec{0.0}, 8).integrate(gauss), 0.5, 1e-14);
    EXPECT_NEAR(weighted_quad_rule(AlphaVec{0.0, 0.0}, 8).integrate(gauss), 0.25, 1e-14);
    // different scale, same integral
    EXPECT_NEAR(weighted_quad_rule(AlphaVec{0.0}, 30, 1.7).integrate(gauss), 0.5, 1e-12);
}

TEST(WeightedRule, ExactForPolynomialTimesGaussian) {
    const AlphaVec a{0.7};
    const int n = 6;
    const QuadRule r = weighted_quad_rule(a, n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
        // int_0^inf x^{2k} e^{-x^2} x^{2a+1} dx = Gamma(k + a + 1)/2
        const double v = r.integrate([&](auto x) { return std::pow(x[0], 2 * k) * std::exp(-x[0] * x[0]); });
        EXPECT_LT(rel(v, 0.5 * std::tgamma(k + a[0] + 1.0)), 1e-12) << k;
    }
}

TEST(WeightedRule, FullSpaceReflection) {
    const QuadRule half = weighted_quad_rule(AlphaVec{0.2, -0.5}, 6);
    const QuadRule full = full_space_rule(half);
    EXPECT_EQ(full.size(), 4 * half.size());
    const double m = full.integrate([](auto x) { return std::exp(-x[0] * x[0] - x[1] * x[1]) * (1 + x[0]); });
    EXPECT_LT(rel(m, 4 * half.integrate([](auto x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); })), 1e-14);
}

TEST(HalfBall, OneDimensionalClosedForms) {
    EXPECT_LT(rel(half_ball_measure(AlphaVec{0.5}, HalfBallSpec({5.0}, 1.0)).value, 152.0 / 3.0), 1e-14);
    EXPECT_LT(rel(half_ball_measure(AlphaVec{-0.5}, HalfBallSpec({1.0}, 3.0)).value, 4.0), 1e-14);
}

TEST(HalfBall, TwoDimensionalFixtures) {
    const auto v = half_ball_measure(AlphaVec{0.0, 0.0}, HalfBallSpec({1.0, 1.0}, 0.5));
    EXPECT_LT(rel(v.value, expected_real("half_ball_2d_a00_x11_r05")), 1e-8);
    EXPECT_LT(v.relerr, 1e-6);
    const auto c = half_ball_measure(AlphaVec{0.5, 0.0}, HalfBallSpec({0.4, 1.5}, 0.9));
    EXPECT_LT(rel(c.value, expected_real("half_ball_2d_clip")), 1e-8);
}

TEST(HalfBall, LebesgueBallVolumes) {
    // alpha = -1/2: Lebesgue measure; balls well inside the orthant
    const auto d2 = half_ball_measure(AlphaVec::uniform(2, -0.5), HalfBallSpec({3.0, 3.0}, 1.2));
    EXPECT_LT(rel(d2.value, kPi * 1.44), 1e-9);
    const auto d3 = half_ball_measure(AlphaVec::uniform(3, -0.5), HalfBallSpec({3.0, 3.0, 3.0}, 1.2));
    EXPECT_LT(rel(d3.value, 4.0 / 3.0 * kPi * std::pow(1.2, 3)), 1e-9);
    // centered near the corner: a quarter disc plus the rest
    const auto q = half_ball_measure(AlphaVec::uniform(2, -0.5), HalfBallSpec({1e-9, 1e-9}, 1.0));
    EXPECT_LT(rel(q.value, kPi / 4.0), 1e-6);
}

TEST(HalfBall, MonotoneAndDoubling) {
    const AlphaVec a{0.5};
    double prev = 0.0;
    for (double r = 0.1; r < 6.0; r *= 1.3) {
        const double v = half_ball_measure(a, HalfBallSpec({2.0}, r)).value;
        EXPECT_GT(v, prev);
        const double lo = std::max(0.0, 2.0 - r);
        EXPECT_LT(rel(v, (std::pow(2.0 + r, 3) - std::pow(lo, 3)) / 3.0), 1e-8);
        prev = v;
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(0.01, 5.0), ur(0.01, 5.0);
    for (std::size_t d = 1; d <= 3; ++d) {
        const AlphaVec al = AlphaVec::uniform(d, 0.5);
        double cmax = 0.0;
        for (int i = 0; i < 100 / static_cast<int>(d * d); ++i) {
            std::vector<double> c(d);
            for (auto& v : c) v = ux(rng);
            const double r = ur(rng);
            const double big = half_ball_measure(al, HalfBallSpec(c, 2 * r), 1e-8).value;
            const double small = half_ball_measure(al, HalfBallSpec(c, r), 1e-8).value;
            cmax = std::max(cmax, big / small);
        }
        // doubling constant of w_alpha^+ is at most 2^{d + 2|alpha| + d}
        EXPECT_LE(cmax, std::pow(2.0, 2.0 * d + 2.0 * al.sum())) << d;
    }
}

TEST(ZetaRule, Integrals) {
    const QuadRule r = zeta_rule();
    EXPECT_NEAR(r.integrate([](auto) { return 1.0; }), 1.0, 1e-12);
    EXPECT_NEAR(r.integrate([](auto z) { return 1.0 / std::sqrt(1.0 - z[0]); }), 2.0, 1e-8);
    const double v = r.integrate([](auto z) { return std::exp(-0.25 / z[0]) / std::sqrt(z[0]); });
    EXPECT_LT(rel(v, expected_real("zeta_integral_half")), 1e-12);
    EXPECT_THROW(zeta_rule(7), DomainError);
}
