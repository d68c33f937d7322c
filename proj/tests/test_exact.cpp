#include <catch2/catch_amalgamated.hpp>

#include "spnet/exact.hpp"

using namespace spnet;

namespace {
const BigRat half(1, 2);
const BigRat third(1, 3);
}  // namespace

TEST_CASE("source degree pmf: closed form, stepwise DP, known values") {
    auto d3 = bernoulli_degree_pmf(3, half);
    REQUIRE(d3[1] == BigRat(3, 8));
    REQUIRE(d3[2] == BigRat(3, 8));
    REQUIRE(d3[3] == BigRat(1, 4));
    auto d2 = bernoulli_degree_pmf(2, third);
    REQUIRE(d2[1] == BigRat(2, 3));
    REQUIRE(d2[2] == BigRat(1, 3));
    for (int n = 1; n <= 7; ++n)
        REQUIRE(bernoulli_degree_pmf_dp(n, third) == bernoulli_degree_pmf(n, third));
    REQUIRE(bernoulli_degree_factorial_moment(3, 1, half) == BigRat(15, 8));
}

TEST_CASE("leftmost length law is the degree law under p -> 1-p") {
    for (int n = 1; n <= 6; ++n)
        REQUIRE(bernoulli_leftpath_pmf(n, third) == bernoulli_degree_pmf(n, 1 - third));
}

TEST_CASE("joint law marginals recover both single laws") {
    for (int n = 1; n <= 6; ++n) {
        auto joint = bernoulli_joint_pmf(n, third);
        std::vector<BigRat> len(n + 1, BigRat(0)), deg(n + 1, BigRat(0));
        BigRat total = 0;
        for (const auto& [k, v] : joint) {
            len[k.first] += v;
            deg[k.second] += v;
            total += v;
        }
        REQUIRE(total == 1);
        auto lp = bernoulli_leftpath_pmf(n, third);
        auto dp = bernoulli_degree_pmf(n, third);
        for (int m = 1; m <= n; ++m) {
            REQUIRE(len[m] == lp[m]);
            REQUIRE(deg[m] == dp[m]);
        }
    }
}

TEST_CASE("mean path count: recurrence equals the closed form") {
    for (const auto& p : {half, third, BigRat(2, 3)}) {
        auto rec = bernoulli_expected_paths(6, p);
        for (int n = 1; n <= 6; ++n)
            REQUIRE(bernoulli_expected_paths_closed(n, ProbParam::from_rational(p)) == rec[n]);
    }
    REQUIRE(bernoulli_expected_paths(2, half)[2] == BigRat(3, 2));
    REQUIRE(bernoulli_expected_paths(2, third)[2] == BigRat(4, 3));
    REQUIRE(bernoulli_expected_paths_closed(3, ProbParam::from_rational(half)) == BigRat(2));
}

TEST_CASE("binary model closed forms at small n") {
    REQUIRE(binary_expected_pathlength(1) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(binary_expected_pathlength(2) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(binary_expected_sinkdegree(2) == Catch::Approx(2.0).margin(1e-12));
    auto exact = binary_expected_paths_exact(10);
    REQUIRE(exact[3] == BigRat(2));
    REQUIRE(exact[4] == BigRat(7, 3));
    auto scaled = binary_expected_paths(10);
    for (int n = 1; n <= 10; ++n)
        REQUIRE(scaled[n].to_double() ==
                Catch::Approx(to_double(exact[n])).epsilon(1e-12));
}

TEST_CASE("saturation model: limit pmf, mass, mean degree") {
    REQUIRE(saturation_limit_pmf(1, BigRat(1, 4)) == BigRat(9, 16));
    REQUIRE(saturation_limit_mass(BigRat(1, 4)) == 1);
    REQUIRE(saturation_limit_mass(half) == 1);
    REQUIRE(saturation_limit_mass(BigRat(3, 4)) == BigRat(1, 9));
    REQUIRE(saturation_expected_sourcedegree(3, ProbParam::parse("1/2")) == BigRat(11, 6));
    REQUIRE(saturation_expected_sourcedegree(1, ProbParam::parse("1/4")) == 1);
    REQUIRE(saturation_expected_sourcedegree(2, ProbParam::parse("1/4")) == BigRat(5, 4));
}

TEST_CASE("preferential model mean degree at small n") {
    REQUIRE(preferential_expected_sourcedegree(1, ProbParam::parse("1/2")) == 1);
    REQUIRE(preferential_expected_sourcedegree(2, ProbParam::parse("1/3")) == BigRat(4, 3));
    REQUIRE(preferential_expected_sourcedegree(2, ProbParam::parse("3/4")) == BigRat(7, 4));
}

TEST_CASE("float evaluation tracks the rational route") {
    auto ff = bernoulli_degree_pmf_t<double>(6, 1.0 / 3.0);
    auto rr = bernoulli_degree_pmf(6, third);
    for (int m = 1; m <= 6; ++m)
        REQUIRE(ff[m] == Catch::Approx(to_double(rr[m])).margin(1e-12));
}
