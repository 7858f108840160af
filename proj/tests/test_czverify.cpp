#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dunkl/czverify.hpp"

using namespace dunkl;
using namespace dunkl::cz;

namespace {

SweepConfig small_1d(double alpha = -0.5) {
    SweepConfig cfg = SweepConfig::defaults(1);
    cfg.alpha = AlphaVec{alpha};
    cfg.eps = {ParityVec{0}};
    cfg.gammas = {1.0};
    return cfg;
}

SweepConfig small_2d() {
    SweepConfig cfg = SweepConfig::defaults(2);
    cfg.alpha = AlphaVec{0.5, 0.0};
    cfg.gammas = {1.0};
    cfg.grid.count = 3;
    cfg.grid.near_levels = 3;
    cfg.grid.far_levels = 3;
    cfg.polish_evals = 40;
    return cfg;
}

double log_growth(const ZetaRouteKernel& k, const AlphaVec& alpha, std::vector<double> x, std::vector<double> y) {
    const double r = std::sqrt(dunkl::detail::dist2(x, y));
    return std::log(std::abs(k.evaluate(x, y)[0])) + cz::detail::log_ball(alpha, x, r);
}

}  // namespace

TEST(SweepConfig, DefaultsAreValid) {
    EXPECT_NO_THROW(SweepConfig::defaults(1).validate());
    EXPECT_NO_THROW(SweepConfig::defaults(2).validate());
}

TEST(SweepConfig, RejectsMarginViolations) {
    SweepConfig cfg = small_1d();
    cfg.grid.r_min = 1e-5;
    EXPECT_THROW(cfg.validate(), ConfigError);
    EXPECT_THROW(growth_sweep(cfg), ConfigError);

    cfg = small_1d();
    cfg.grid.lo = 0.05;
    EXPECT_THROW(cfg.validate(), ConfigError);

    cfg = small_1d();
    cfg.boxes.f_lo = 1.5;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(SweepConfig, RejectsBadParameters) {
    SweepConfig cfg = small_1d();
    cfg.b = -1.0;
    EXPECT_THROW(mlem_check(cfg), ConfigError);
    cfg = small_1d();
    cfg.c = 0.0;
    EXPECT_THROW(mlem_check(cfg), ConfigError);
    cfg = small_1d();
    cfg.delta = {-0.5};
    EXPECT_THROW(lemhom_check(cfg), ConfigError);
    cfg = small_1d();
    cfg.kappa = {0.0, 1.0};
    EXPECT_THROW(lemhom_check(cfg), ConfigError);
    cfg = small_1d();
    cfg.eps = {ParityVec{0, 1}};
    EXPECT_THROW(cfg.validate(), ConfigError);
    EXPECT_THROW(run_sweep("spectral", small_1d()), ConfigError);
}

TEST(SweepConfig, RefinedGridKeepsOldPoints) {
    const GridSpec g;
    const GridSpec f = g.refined();
    EXPECT_EQ(f.count, 2 * g.count - 1);
    const auto a = cz::detail::linspace(g.lo, g.hi, g.count);
    const auto b = cz::detail::linspace(f.lo, f.hi, f.count);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[2 * i], 1e-14);
}

TEST(SweepReport, NonfiniteRecordPoisonsConstant) {
    SweepReport rep;
    rep.records.push_back({"g", {1.0}, {2.0}, std::log(3.0), 3.0, 1.0, {}});
    rep.records.push_back({"g", {1.0}, {2.5}, -HUGE_VAL, 0.0, 1.5, {}});
    rep.records.push_back({"h", {1.0}, {2.0}, std::log(5.0), 5.0, 1.0, {}});
    rep.summarize();
    EXPECT_TRUE(rep.all_finite);
    EXPECT_DOUBLE_EQ(rep.group("g").c_emp, 3.0);
    EXPECT_DOUBLE_EQ(rep.c_emp, 5.0);
    EXPECT_EQ(rep.argmax, 2u);

    rep.records.push_back({"g", {1.0}, {3.0}, std::nan(""), std::nan(""), 2.0, {}});
    rep.summarize();
    EXPECT_FALSE(rep.all_finite);
    EXPECT_TRUE(std::isinf(rep.c_emp));
    EXPECT_EQ(rep.argmax, 3u);
    EXPECT_TRUE(rep.group("h").all_finite);
}

TEST(Growth, FiniteAndRefinementStable1D) {
    const SweepConfig cfg = small_1d();
    const SweepReport a = growth_sweep(cfg);
    EXPECT_TRUE(a.all_finite);
    EXPECT_GT(a.c_emp, 0.0);
    SweepConfig fine = cfg;
    fine.grid = cfg.grid.refined();
    const SweepReport b = growth_sweep(fine);
    EXPECT_TRUE(b.all_finite);
    EXPECT_LT(refinement_change(a, b), 0.2);
}

TEST(Growth, Deterministic) {
    const SweepConfig cfg = small_1d(0.0);
    const SweepReport a = growth_sweep(cfg), b = growth_sweep(cfg);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(a.records[i].log_ratio, b.records[i].log_ratio);
    EXPECT_EQ(a.c_emp, b.c_emp);
    EXPECT_EQ(a.argmax, b.argmax);
}

TEST(Growth, ShrinkingGapStaysBelowTwiceTheConstant) {
    const SweepConfig cfg = small_1d();
    const double c_emp = growth_sweep(cfg).c_emp;
    const ZetaRouteKernel k(cfg.alpha, ParityVec{0}, {1.0}, zeta_rule(cfg.zeta_points, cfg.zeta_panels));
    for (double x : {0.5, 1.0, 2.0, 4.0})
        for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const double ratio = std::exp(log_growth(k, cfg.alpha, {x}, {x + delta}));
            EXPECT_TRUE(std::isfinite(ratio));
            EXPECT_LE(ratio, 2.0 * c_emp) << "x=" << x << " delta=" << delta;
        }
}

TEST(Growth, AllClassesFinite2D) {
    const SweepReport rep = growth_sweep(small_2d());
    EXPECT_TRUE(rep.all_finite);
    EXPECT_EQ(rep.groups.size(), 4u);
}

TEST(Smoothness, FiniteWithDerivativeGroups) {
    SweepConfig cfg = small_1d();
    cfg.gammas = {0.5, 3.0};
    const SweepReport rep = smoothness_sweep(cfg);
    EXPECT_TRUE(rep.all_finite);
    EXPECT_EQ(rep.groups.size(), 4u);
    EXPECT_GT(rep.group("eps=0 gamma=3 x1").c_emp, 0.0);
    EXPECT_TRUE(rep.warnings.empty());
}

TEST(Smoothness, HalvingStepChangesLittle) {
    const AlphaVec alpha{0.0, 0.5};
    const ZetaRouteKernel k(alpha, ParityVec{1, 0}, {1.0, 3.0});
    const std::vector<std::vector<double>> xs{{1.0, 0.7}, {0.4, 2.0}, {1.3, 1.1}};
    const std::vector<std::vector<double>> ys{{1.05, 0.72}, {1.4, 2.5}, {1.3001, 1.1002}};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto g1 = fd_gradient(k, xs[i], ys[i], 1e-4);
        const auto g2 = fd_gradient(k, xs[i], ys[i], 5e-5);
        for (std::size_t q = 0; q < 2; ++q)
            EXPECT_LT(std::abs(std::sqrt(g2[q] / g1[q]) - 1.0), 1e-2) << "pair " << i << " slot " << q;
    }
}

TEST(Smoothness, GradientMatchesSingleCoordinateDifference) {
    const AlphaVec alpha{-0.5};
    const ZetaRouteKernel k(alpha, ParityVec{0}, {1.0});
    const std::vector<double> x{1.0}, y{1.5};
    const auto g = fd_gradient(k, x, y, 1e-4);
    const double h = 1e-5;
    const auto dx = (k.evaluate(std::vector<double>{1.0 + h}, y)[0] - k.evaluate(std::vector<double>{1.0 - h}, y)[0]) /
                    (2.0 * h);
    const auto dy = (k.evaluate(x, std::vector<double>{1.5 + h})[0] - k.evaluate(x, std::vector<double>{1.5 - h})[0]) /
                    (2.0 * h);
    EXPECT_NEAR(std::sqrt(g[0]), std::hypot(std::abs(dx), std::abs(dy)), 1e-6 * std::sqrt(g[0]));
    EXPECT_NEAR(g[1], std::abs(dx) + std::abs(dy), 1e-6 * g[1]);
}

TEST(Mlem, MinusSignVanishesOnTheDiagonal) {
    for (std::vector<double> x : {std::vector<double>{0.7}, std::vector<double>{1.2, 0.4}}) {
        const std::vector<double> s(x.size(), 1.0);
        for (double zeta : {1e-6, 0.3, 1.0}) {
            const double lr = mlem_a_log_ratio(x, x, s, zeta, -1, kEnvelopeDecay);
            EXPECT_TRUE(std::isinf(lr) && lr < 0.0);
        }
        EXPECT_TRUE(std::isfinite(mlem_a_log_ratio(x, x, s, 0.3, 1, kEnvelopeDecay)));
    }
}

TEST(Mlem, PartAFiniteOverTenThousandSamples) {
    SweepConfig cfg = small_1d();
    cfg.c = 0.125;
    const SweepReport rep = mlem_check(cfg);
    EXPECT_EQ(rep.group("a+").count, 10000u);
    EXPECT_EQ(rep.group("a-").count, 10000u);
    EXPECT_TRUE(rep.all_finite);
    EXPECT_TRUE(std::isfinite(rep.group("a+").c_emp));
    EXPECT_TRUE(std::isfinite(rep.group("a-").c_emp));
}

TEST(Mlem, PartBScalingStable) {
    for (double b : {0.0, 0.5}) {
        SweepConfig cfg = SweepConfig::defaults(2);
        cfg.alpha = AlphaVec{0.5, 0.0};
        cfg.b = b;
        cfg.samples = 600;
        cfg.mlem_b_samples = 600;
        const SweepReport rep = mlem_check(cfg);
        EXPECT_TRUE(rep.all_finite);
        const double mid = rep.group("b lambda=1").c_emp;
        for (const char* g : {"b lambda=0.25", "b lambda=4"}) {
            const double r = rep.group(g).c_emp / mid;
            EXPECT_LT(r, 2.0) << g;
            EXPECT_GT(r, 0.5) << g;
        }
    }
}

TEST(Mlem, IntegralMatchesDirectQuadrature) {
    const QuadRule z = zeta_rule(16, 40);
    const double q = 0.8;
    const BetaFactor beta(1, 0.0, 1.0);
    double direct = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k)
        direct += z.weights[k] * std::exp(beta.polar(z.nodes[k]).log_mod - 0.125 * q / z.nodes[k]) /
                  std::sqrt(z.nodes[k]);
    EXPECT_NEAR(std::exp(mlem_log_integral(1, 0.0, 1.0, 0.5, 0.125, q, z)), direct, 1e-12 * direct);
}

TEST(Lemhom, AtomicCaseIsTwoTermSum) {
    const AlphaVec alpha{-0.5};
    const std::vector<double> zero{0.0};
    for (auto [x, y] : {std::pair{1.0, 2.0}, std::pair{0.3, 0.31}, std::pair{5.0, 0.1}}) {
        const double p = 0.5;
        const double qm = (x - y) * (x - y), qp = (x + y) * (x + y);
        // Pi_{-1/2} has two atoms of mass 1/(2 * 2^a Gamma(a + 1)) at s = -1, 1.
        const double atom = 0.5 * std::sqrt(2.0 / std::numbers::pi);
        const double expect = atom * (std::pow(qm, -p) + std::pow(qp, -p));
        const double got = std::exp(lemhom_log_lhs(alpha, zero, zero, std::vector<double>{x}, std::vector<double>{y}, p));
        EXPECT_NEAR(got, expect, 1e-12 * expect);
    }
}

TEST(Lemhom, AtomicSweepFinite) {
    const SweepReport rep = lemhom_check(small_1d());
    EXPECT_TRUE(rep.all_finite);
    EXPECT_EQ(rep.groups.size(), 6u);
}

TEST(Lemhom, DeltaEqualToParityFinite) {
    SweepConfig cfg = SweepConfig::defaults(2);
    cfg.alpha = AlphaVec{0.0, -0.5};
    cfg.delta = {1.0, 0.0};
    cfg.lemhom_samples = 200;
    const SweepReport rep = lemhom_check(cfg);
    EXPECT_TRUE(rep.all_finite);
    for (const char* part : {"first", "second"}) {
        const double mid = rep.group(std::string(part) + " lambda=1").c_emp;
        for (const char* l : {" lambda=0.25", " lambda=4"}) {
            const double r = rep.group(std::string(part) + l).c_emp / mid;
            EXPECT_LT(r, 2.0);
            EXPECT_GT(r, 0.5);
        }
    }
}

TEST(DerEstSweep, UniformlyBounded) {
    SweepConfig cfg = small_1d(0.5);
    cfg.eps.clear();
    const SweepReport rep = der_est_sweep(cfg);
    EXPECT_TRUE(rep.all_finite);
    EXPECT_EQ(rep.records.size(), 200u);
    SweepConfig c2 = small_2d();
    c2.boxes.count = 3;
    const SweepReport rep2 = der_est_sweep(c2);
    EXPECT_TRUE(rep2.all_finite);
    EXPECT_EQ(rep2.groups.size(), 4u);
}

TEST(RunSweep, DispatchesByKind) {
    SweepConfig cfg = small_1d();
    cfg.samples = 200;
    cfg.mlem_b_samples = 100;
    cfg.lemhom_samples = 200;
    EXPECT_EQ(run_sweep("mlem", cfg).kind, "mlem");
    EXPECT_EQ(run_sweep("lemhom", cfg).kind, "lemhom");
    EXPECT_EQ(run_sweep("der-est", cfg).kind, "der-est");
}
