#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "biortho/verify.hpp"

using namespace biortho;

namespace {

bool same(const CheckRecord& x, const CheckRecord& y) {
    return x.check_id == y.check_id && x.params == y.params && x.status == y.status && x.witness.inputs == y.witness.inputs &&
           x.witness.residual == y.witness.residual && x.tolerance == y.tolerance && x.note == y.note;
}

}  // namespace

TEST(Residual, MixedScale) {
    EXPECT_DOUBLE_EQ(detail::mixed_residual(1e-3, 2e-3), 1e-3);
    EXPECT_DOUBLE_EQ(detail::mixed_residual(100.0, 101.0), 1.0 / 101.0);
}

TEST(Worst, NaNIsNeverHidden) {
    detail::Worst w;
    w.offer(1e-3, {});
    w.offer(std::nan(""), {{"i", 1.0}});
    w.offer(1.0, {});
    EXPECT_TRUE(std::isnan(w.residual));
    EXPECT_EQ(detail::finish("x", {}, w, 1.0).status, Status::fail);
}

TEST(Checks, BiorthogonalityPasses) {
    const CheckRecord r = biorthogonality_check({2.0, 0.5, -0.3}, 6, 1e-7);
    EXPECT_EQ(r.status, Status::pass) << r.witness.residual;
    EXPECT_EQ(r.check_id, "biortho.vanishing_moments");
}

TEST(Checks, BiorthogonalityDetectsWrongWeight) {
    // against a different weight the low moments do not vanish
    const Params p{2.0, 0.5, -0.3};
    const double i0 = integrate_interval([&](double x) { return eval_biortho(p, 4, x).value; }, {p.a + 0.5, p.b}, 1e-12).value;
    EXPECT_GT(std::abs(i0), 1e-4);
}

TEST(Checks, ReductionPasses) {
    const CheckRecord r = reduction_check(0.7, -0.5, 30, 1e-9);
    EXPECT_EQ(r.status, Status::pass) << r.witness.residual;
}

TEST(Checks, ChuVandermonde) { EXPECT_EQ(identity_chu_vandermonde(5, 7, 1e-10).status, Status::pass); }

TEST(Checks, LemmaSamples) {
    EXPECT_EQ(saddle_and_concavity_check(2.0, pi / 3, 500, 1e-10).status, Status::pass);
    EXPECT_EQ(monotonicity_scan(4.0, pi / 2, 500).status, Status::pass);
    EXPECT_EQ(modulus_consistency_check(4.0, 60, 1e-11).status, Status::pass);
    EXPECT_EQ(t_prime_sign_check(2.0, pi / 3, 400).status, Status::pass);
}

TEST(Checks, StructureSamples) {
    EXPECT_EQ(claim_check(1.5, 500, 1e-9, 1e-9).status, Status::pass);
    EXPECT_EQ(delta_bound_check(2.0, 500, 1e-10).status, Status::pass);
    EXPECT_EQ(h_monotone_check(1.0, 500, 1e-9).status, Status::pass);
    EXPECT_EQ(phi_star_check(4.0, 1e-9).status, Status::pass);
}

TEST(Checks, CounterexampleFoundBelowOne) {
    const CheckRecord r = counterexample_scan(0.5);
    EXPECT_EQ(r.status, Status::pass);
    ASSERT_FALSE(r.witness.inputs.empty());
    EXPECT_EQ(r.witness.inputs.front().first, "phi");
    EXPECT_THROW(counterexample_scan(1.0), ScopeError);
}

TEST(Checks, TooTightToleranceFails) {
    EXPECT_EQ(identity_lambda_derivative(50, 7, 1e-30).status, Status::fail);
}

TEST(Suites, NamesAndUnknown) {
    EXPECT_TRUE(is_suite("lemmas"));
    EXPECT_FALSE(is_suite("everything"));
    EXPECT_THROW(suite_tasks("everything", {}, 7), ParameterError);
}

TEST(Suites, IdsAreDotted) {
    std::set<std::string> ids;
    for (const auto& r : run_suite("identities", {}, 7)) ids.insert(r.check_id);
    for (const auto& id : ids) EXPECT_NE(id.find('.'), std::string::npos) << id;
    EXPECT_EQ(ids.size(), 8U);
}

TEST(Suites, ThreadCountDoesNotChangeResults) {
    Settings st;
    st.grid_monotone = 300;
    st.grid_saddle = 300;
    st.grid_claim = 300;
    st.grid_structure = 300;
    const auto a = run_suite("lemmas", st, 11, 1);
    const auto b = run_suite("lemmas", st, 11, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(same(a[i], b[i])) << a[i].check_id;
}

TEST(Suites, FullDefaultSuitePassesWithinBudget) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto recs = run_suite("all", {}, 7, default_jobs());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& r : recs) EXPECT_NE(r.status, Status::fail) << r.check_id << " residual " << r.witness.residual;
    EXPECT_LT(secs, 300.0);
}

TEST(Parallel, RethrowsFirstFailure) {
    EXPECT_THROW(parallel_for(10, 3,
                              [](std::size_t i) {
                                  if (i == 4) throw NumericalError("boom");
                              }),
                 NumericalError);
    std::vector<int> hit(100, 0);
    parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
    for (const int h : hit) EXPECT_EQ(h, 1);
}
