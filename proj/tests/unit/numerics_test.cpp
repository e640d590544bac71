#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "biortho/numerics.hpp"
#include "oracle_values.hpp"

using namespace biortho;

TEST(CompensatedSum, RecoversCancelledTerms) {
    const std::vector<double> terms = {1e16, 1.0, -1e16, 1.0};
    EXPECT_EQ(compensated_sum(terms), 2.0);
}

TEST(CompensatedSum, EmptyIsZero) { EXPECT_EQ(compensated_sum(std::vector<double>{}), 0.0); }

TEST(Accumulator, KeepsTinyTermsUnderLargeOnes) {
    Accumulator acc;
    acc.add(1.0);
    for (int i = 0; i < 1000; ++i) acc.add(1e-20);
    acc.add(-1.0);
    EXPECT_NEAR(acc.value(), 1e-17, 1e-30);
}

TEST(DoubleDouble, ProductIsExactBeyondDouble) {
    const DoubleDouble x(1.0 + 0x1.0p-30);
    const DoubleDouble sq = x * x;
    EXPECT_EQ(sq.hi, 1.0 + 0x1.0p-29);
    EXPECT_EQ(sq.lo, 0x1.0p-60);
}

TEST(DoubleDouble, DivisionRoundTrips) {
    const DoubleDouble a(3.0);
    const DoubleDouble q = DoubleDouble(1.0) / a;
    const DoubleDouble back = q * a;
    EXPECT_NEAR((back - DoubleDouble(1.0)).to_double(), 0.0, 1e-30);
}

TEST(DoubleDouble, PochhammerAndFactorial) {
    EXPECT_EQ(pochhammer(DoubleDouble(1.0), 5).to_double(), 120.0);
    EXPECT_EQ(factorial_dd(10).to_double(), 3628800.0);
    EXPECT_EQ(pochhammer(DoubleDouble(2.5), 0).to_double(), 1.0);
    EXPECT_DOUBLE_EQ(pochhammer(DoubleDouble(0.5), 3).to_double(), 0.5 * 1.5 * 2.5);
}

TEST(LogGamma, MatchesHighPrecisionValues) {
    EXPECT_NEAR(log_gamma(0.5), oracle::lgamma_half, 1e-14);
    EXPECT_NEAR(log_gamma(7.0 / 3.0), oracle::lgamma_7_3, 1e-14);
    EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
    EXPECT_NEAR(log_gamma(2.0), 0.0, 1e-15);
}

TEST(LogGamma, AgreesWithLibmAcrossRange) {
    for (double x = 0.01; x < 200.0; x *= 1.37) EXPECT_NEAR(log_gamma(x), std::lgamma(x), 2e-13 * std::max(1.0, std::abs(std::lgamma(x)))) << x;
}

TEST(LogGamma, RecurrenceProperty) {
    for (double x = 0.1; x < 50.0; x += 0.77) EXPECT_NEAR(log_gamma(x + 1.0) - log_gamma(x), std::log(x), 1e-12) << x;
}

TEST(LogGamma, RejectsNonPositive) {
    EXPECT_THROW(log_gamma(0.0), DomainError);
    EXPECT_THROW(log_gamma(-1.5), DomainError);
    EXPECT_THROW(log_gamma(std::nan("")), DomainError);
}

TEST(PrincipalLog, BranchCutConventions) {
    EXPECT_DOUBLE_EQ(principal_log({-1.0, 0.0}).imag(), pi);
    EXPECT_DOUBLE_EQ(principal_log({-1.0, -0.0}).imag(), pi);
    EXPECT_DOUBLE_EQ(principal_log({0.0, 1.0}).imag(), pi / 2);
}

TEST(ComplexPow, PrincipalBranch) {
    const Complex r = complex_pow_principal({-4.0, 0.0}, 0.5);
    EXPECT_NEAR(r.real(), 0.0, 1e-15);
    EXPECT_NEAR(r.imag(), 2.0, 1e-15);
    EXPECT_EQ(complex_pow_principal({0.0, 0.0}, 2.0), Complex(0.0, 0.0));
    EXPECT_THROW(complex_pow_principal({0.0, 0.0}, -1.0), DomainError);
}

TEST(FindRoot, BisectsToTolerance) {
    const double r = find_root_bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14);
    EXPECT_NEAR(r, std::sqrt(2.0), 1e-13);
    EXPECT_THROW(find_root_bisect([](double x) { return x * x + 1.0; }, 0.0, 2.0, 1e-12), BracketError);
    EXPECT_THROW(find_root_bisect([](double x) { return x; }, 1.0, 1.0, 1e-12), BracketError);
}

TEST(FiniteDifference, Orders) {
    auto f = [](double x) { return std::sin(x); };
    EXPECT_NEAR(fd_derivative(f, 0.7, 1).real(), std::cos(0.7), 1e-11);
    EXPECT_NEAR(fd_derivative(f, 0.7, 2).real(), -std::sin(0.7), 1e-9);
    EXPECT_NEAR(fd_derivative(f, 0.7, 3).real(), -std::cos(0.7), 1e-7);
    EXPECT_THROW(fd_derivative(f, 0.7, 4), DomainError);
    FdOptions opt;
    opt.lo = 0.0;
    EXPECT_THROW(fd_derivative(f, 0.001, 1, opt), DomainError);
}

TEST(LogLogSlope, ExactPowerLaw) {
    std::vector<SlopePoint> pts;
    for (int k = 3; k <= 10; ++k) pts.push_back({1LL << k, 5.0 * std::pow(2.0, -1.5 * k)});
    EXPECT_NEAR(fit_loglog_slope(pts), -1.5, 1e-12);
}

TEST(LogLogSlope, Rejections) {
    EXPECT_THROW(fit_loglog_slope({{1, 1.0}, {2, 0.5}}), InsufficientDataError);
    EXPECT_THROW(fit_loglog_slope({{1, 1.0}, {2, 0.5}, {2, 0.2}}), DomainError);
    EXPECT_THROW(fit_loglog_slope({{1, 1.0}, {2, 0.0}, {3, 0.2}}), DomainError);
}

TEST(Uniform, StaysInRangeAndIsReproducible) {
    std::mt19937_64 a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform_in(a, -2.0, 3.0);
        EXPECT_GE(u, -2.0);
        EXPECT_LT(u, 3.0);
        EXPECT_EQ(u, uniform_in(b, -2.0, 3.0));
    }
}
