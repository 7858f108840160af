// One pass/fail line per acceptance criterion. Tolerances live in
// dunkl/verify.hpp; runtime budgets are pinned here. Exits 1 if any
// criterion fails.

#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dunkl/verify.hpp"

namespace {

using dunkl::verify::Check;
using dunkl::verify::SuiteResult;

constexpr double kNoBudget = std::numeric_limits<double>::infinity();

struct Criterion {
    std::string title;
    std::vector<std::string> suites;
    double budget_seconds;
    std::function<bool(const Check&)> select = [](const Check&) { return true; };
};

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

// Largest measured / tolerance among finite-tolerance checks, or the first
// failing check if there is one.
const Check* headline(const std::vector<const Check*>& checks) {
    for (const Check* c : checks)
        if (!c->pass) return c;
    const Check* worst = nullptr;
    double ratio = -1.0;
    for (const Check* c : checks) {
        if (c->tolerance == dunkl::verify::kFinite) continue;
        const double r = c->measured / c->tolerance;
        if (r > ratio) {
            ratio = r;
            worst = c;
        }
    }
    return worst ? worst : (checks.empty() ? nullptr : checks.front());
}

}  // namespace

int main() {
    const dunkl::verify::Options opts;
    const std::vector<Criterion> criteria{
        {"Orthonormality, d <= 3, |n| <= 12", {"orthonormality"}, 60},
        {"Eigen-relation, 200 points, |n| <= 10, d <= 2", {"eigen"}, 30},
        {"Heat kernel closed / series / zeta form, d <= 2, t in [0.2, 2]", {"heat-equiv"}, 60},
        {"Semigroup property, d = 1", {"semigroup"}, 30},
        {"Isometry of the imaginary power", {"isometry"}, kNoBudget},
        {"Duality of spectral and kernel forms, N = 120",
         {"duality"},
         300,
         [](const Check& c) { return !starts_with(c.name, "converged"); }},
        {"Kernel route equivalence, 50 tuples, d <= 2", {"routes"}, 120},
        {"Time-derivative integral bounded on separated boxes, d <= 2", {"der-est"}, kNoBudget},
        {"Growth and smoothness sweeps, d <= 2", {"growth", "smoothness"}, 600},
        {"m_lem (a)(b) and lemhom sampled checks", {"mlem", "lemhom"}, kNoBudget},
        {"Classical limit, Hermite functions and Mehler kernel", {"classical"}, kNoBudget},
    };

    std::vector<SuiteResult> results;
    auto suite = [&](const std::string& name) -> const SuiteResult& {
        for (const auto& r : results)
            if (r.suite == name) return r;
        std::fprintf(stderr, "running %s ...\n", name.c_str());
        results.push_back(dunkl::verify::run_suite(name, opts));
        return results.back();
    };

    int failed = 0;
    for (const auto& crit : criteria) {
        std::vector<const Check*> checks;
        double seconds = 0.0;
        for (const auto& name : crit.suites) {
            const SuiteResult& r = suite(name);
            seconds += r.seconds;
            for (const auto& c : r.checks)
                if (crit.select(c)) checks.push_back(&c);
        }
        std::size_t nfail = 0;
        for (const Check* c : checks) nfail += !c->pass;
        const bool in_budget = seconds <= crit.budget_seconds;
        const bool pass = nfail == 0 && !checks.empty() && in_budget;
        failed += !pass;

        std::string budget = crit.budget_seconds == kNoBudget ? "" : " of " + std::to_string(int(crit.budget_seconds)) + " s";
        std::printf("%s  %s: %zu/%zu checks pass; %.1f s%s", pass ? "PASS" : "FAIL", crit.title.c_str(),
                    checks.size() - nfail, checks.size(), seconds, budget.c_str());
        if (const Check* h = headline(checks))
            std::printf("; %s %s [%s]: %.3g (tolerance %.3g)", h->pass ? "worst" : "first failure", h->suite.c_str(),
                        h->name.c_str(), h->measured, h->tolerance);
        if (!in_budget) std::printf("; over the runtime budget");
        std::printf("\n");

        if (crit.suites.front() == "duality") {
            double worst = 0.0;
            std::size_t n = 0, npass = 0;
            for (const auto& c : suite("duality").checks)
                if (starts_with(c.name, "converged")) {
                    worst = std::max(worst, c.measured);
                    ++n;
                    npass += c.pass;
                }
            if (n > 0)
                std::printf("      note: at N = %d, %zu/%zu cases agree within %.0e; largest relative gap %.3g\n",
                            dunkl::verify::kDualityConvergedDegree, npass, n, dunkl::verify::kDualityTol, worst);
        }
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
