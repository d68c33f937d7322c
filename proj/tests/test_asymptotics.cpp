#include <catch2/catch_amalgamated.hpp>

#include "spnet/asymptotics.hpp"
#include "spnet/exact.hpp"

using namespace spnet;

TEST_CASE("density at p = 1/2 is the half-normal") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0})
        REQUIRE(mittag_leffler_density(x, 0.5) ==
                Catch::Approx(std::exp(-x * x / 4.0) / std::sqrt(std::numbers::pi))
                    .margin(1e-8));
}

TEST_CASE("density mass and moments match the moment formula") {
    for (double p : {0.3, 0.5, 0.7}) {
        auto mom = mittag_leffler_density_moments(p);
        REQUIRE(mom[0] == Catch::Approx(1.0).margin(1e-6));
        for (int r = 1; r <= 3; ++r)
            REQUIRE(mom[r] == Catch::Approx(mittag_leffler_moment(r, p)).margin(1e-5));
    }
}

TEST_CASE("limit coefficient recurrences: weighted route is r! times plain") {
    auto cl = binary_length_limit_cr(30), dl = binary_length_limit_cr_dual(30);
    auto cd = binary_degree_limit_cr(30), dd = binary_degree_limit_cr_dual(30);
    long double fact = 1.0L;
    for (int r = 1; r <= 30; ++r) {
        fact *= r;
        REQUIRE(std::abs(static_cast<double>(dl[r] / (fact * cl[r]) - 1.0L)) < 1e-12);
        REQUIRE(std::abs(static_cast<double>(dd[r] / (fact * cd[r]) - 1.0L)) < 1e-12);
    }
    REQUIRE(binary_length_limit_moment(0) == Catch::Approx(1.0).margin(1e-15));
    REQUIRE(binary_degree_limit_moment(0) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("attraction-model alpha sequences: recurrence equals closed form") {
    for (const auto& p : {BigRat(1, 2), BigRat(3, 4), BigRat(1, 3)}) {
        auto a = preferential_alpha_rec(20, p);
        for (int r = 1; r <= 20; ++r) REQUIRE(a[r] == preferential_alpha_closed(r, p));
    }
    REQUIRE(preferential_alpha_closed(2, BigRat(1, 2)) == BigRat(4, 27));
    auto s = saturation_alpha_rec(20, BigRat(3, 4));
    for (int r = 1; r <= 20; ++r) REQUIRE(s[r] == saturation_alpha_closed(r, BigRat(3, 4)));
}

TEST_CASE("path-count growth constants") {
    REQUIRE(bernoulli_paths_growth_constant(ProbParam::parse("1/2")) ==
            Catch::Approx(1.0 / (1.0 - std::exp(-2.0))).margin(1e-15));
    // p/(1-p) = 1/2 raised to 1/(1-2p) = 3
    REQUIRE(bernoulli_paths_growth_constant(ProbParam::parse("1/3")) ==
            Catch::Approx(8.0 / 7.0).margin(1e-15));
    REQUIRE_THROWS_AS(bernoulli_paths_growth_constant(ProbParam::parse("0")),
                      std::invalid_argument);
}

TEST_CASE("binary path-count mean: two recurrence routes agree exactly") {
    // the coupled two-sequence system vs the direct recurrence
    int N = 60;
    std::vector<BigRat> E(N + 1), Et(N + 1);
    E[0] = 0;
    E[1] = 1;
    Et[0] = 1;
    for (int n = 1; n <= N; ++n) {
        if (n >= 2) {
            BigRat s = 0;
            for (int k = 0; k <= n - 2; ++k) s += Et[k];
            E[n] = 2 * s / (n - 1);
        }
        BigRat t = 0;
        for (int k = 1; k <= n; ++k) t += E[k] * Et[n - k];
        Et[n] = t / n;
    }
    auto direct = binary_expected_paths_exact(N);
    for (int n = 1; n <= N; ++n) REQUIRE(E[n] == direct[n]);
}

TEST_CASE("growth-rate estimate, scaled mean, and second-order slope") {
    auto e = binary_expected_paths(2000);
    auto est = binary_paths_rho(e);
    REQUIRE(est.rho >= 0.89);
    REQUIRE(est.rho < 0.90);

    double scaled = binary_paths_scaled_mean(e[2000], 2000, est.rho);
    REQUIRE(std::abs(scaled - 1.0) < 0.01);

    // coefficient of the Z log Z term in the singular expansion
    double c = est.rho * est.rho / (3.0 * (est.rho - 1.0) * (est.rho - 1.0));
    double slope = (1.0 - scaled) * 1999.0 * 1998.0;
    REQUIRE(slope / c == Catch::Approx(1.0).margin(0.05));

    // consecutive-ratio gap matches the same expansion
    double gap_pred = est.rho * 2.0 * c *
                      (1.0 / (999.0 * 998.0 * 997.0) - 1.0 / (1999.0 * 1998.0 * 1997.0));
    REQUIRE((est.ratio_full - est.ratio_half) / gap_pred == Catch::Approx(1.0).margin(0.01));

    // independent route: blow-up point of the mean generating function's ODE,
    // E'' = E'/(1-z) + E E', E ~ 2/(rho - z) at the pole
    double z = 0.0, E = 1.0, F = 2.0;
    auto f2 = [](double zz, double EE, double FF) { return FF / (1.0 - zz) + EE * FF; };
    while (E < 1e7) {
        double h = std::min(1e-4, 0.02 * E / std::abs(F));
        double k1E = F, k1F = f2(z, E, F);
        double k2E = F + 0.5 * h * k1F;
        double k2F = f2(z + 0.5 * h, E + 0.5 * h * k1E, F + 0.5 * h * k1F);
        double k3E = F + 0.5 * h * k2F;
        double k3F = f2(z + 0.5 * h, E + 0.5 * h * k2E, F + 0.5 * h * k2F);
        double k4E = F + h * k3F;
        double k4F = f2(z + h, E + h * k3E, F + h * k3F);
        E += h / 6.0 * (k1E + 2.0 * k2E + 2.0 * k3E + k4E);
        F += h / 6.0 * (k1F + 2.0 * k2F + 2.0 * k3F + k4F);
        z += h;
    }
    REQUIRE(z + 2.0 / E == Catch::Approx(est.rho).margin(1e-6));
}

TEST_CASE("rho estimation rejects orders too small to extrapolate") {
    REQUIRE_THROWS_AS(binary_paths_rho(10), std::invalid_argument);
    REQUIRE_THROWS_AS(binary_paths_rho(25), std::invalid_argument);
}

TEST_CASE("moment sequences are positive definite, junk is not") {
    std::vector<double> m;
    for (int r = 0; r <= 8; ++r) m.push_back(mittag_leffler_moment(r, 0.5));
    REQUIRE(hankel_positive(m, 4));
    std::vector<double> bad = {1.0, 2.0, 1.0};  // would imply negative variance
    REQUIRE_FALSE(hankel_positive(bad, 1));
}
