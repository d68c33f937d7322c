#include <catch2/catch_amalgamated.hpp>

#include "spnet/exact.hpp"
#include "spnet/montecarlo.hpp"
#include "spnet/oracle.hpp"

using namespace spnet;

namespace {
// moment z-gates; higher moments converge more slowly, so they get the loose cap
void require_moments_within(const LimitComparison& c, double cap1, double cap_hi) {
    for (const auto& m : c.moments) {
        INFO("law=" << limit_law_name(c.law) << " r=" << m.r << " sample=" << m.sample
                    << " limit=" << m.limit << " z=" << m.z);
        REQUIRE(std::abs(m.z) < (m.r >= 2 ? cap_hi : cap1));
    }
}
}  // namespace

TEST_CASE("same seed and worker count reproduce bit-identical summaries") {
    auto cfg = ModelConfig::bernoulli(ProbParam::parse("1/2"));
    std::vector<Stat> stats = {Stat::source_degree, Stat::walk_length};
    auto a = simulate(cfg, 50, 4000, 99, stats, 1);
    auto b = simulate(cfg, 50, 4000, 99, stats, 1);
    auto c = simulate(cfg, 50, 4000, 99, stats, 3);
    for (std::size_t i = 0; i < stats.size(); ++i) {
        REQUIRE(a.stats[i].histogram == b.stats[i].histogram);
        REQUIRE(a.stats[i].mean == b.stats[i].mean);
        REQUIRE(a.stats[i].scaled_sum == b.stats[i].scaled_sum);
        std::uint64_t mass = 0;
        for (const auto& [bin, count] : a.stats[i].histogram) mass += count;
        REQUIRE(mass == 4000);
    }
    // a different worker partition is a different (deterministic) sample
    REQUIRE(a.stats[0].histogram != c.stats[0].histogram);
    auto c2 = simulate(cfg, 50, 4000, 99, stats, 3);
    REQUIRE(c.stats[0].histogram == c2.stats[0].histogram);
}

TEST_CASE("forced structures sample deterministically") {
    auto sum = simulate(ModelConfig::binary(), 2, 500, 1, {Stat::path_count});
    const auto& hist = sum[Stat::path_count].histogram;
    REQUIRE(hist.size() == 1);
    REQUIRE(hist.at(2) == 500);
}

TEST_CASE("sampled mean source degree sits on the exact formula") {
    const int n = 500;
    const std::uint64_t trials = 20000;
    auto sum = simulate(ModelConfig::bernoulli(ProbParam::parse("1/2")), n, trials, 13,
                        {Stat::source_degree});
    const auto& s = sum[Stat::source_degree];
    double want = to_double(bernoulli_degree_factorial_moment(n, 1, BigRat(1, 2)));
    double se = std::sqrt(s.variance / static_cast<double>(trials));
    REQUIRE(std::abs(s.mean - want) < 5.0 * se);
}

TEST_CASE("sampled pmf at n=6 matches the enumeration bin by bin") {
    const std::uint64_t trials = 200000;
    auto cfg = ModelConfig::saturation(ProbParam::parse("1/2"));
    auto rep = enumerate(cfg, 6);
    auto sum = simulate(cfg, 6, trials, 23, {Stat::source_degree});
    const auto& hist = sum[Stat::source_degree].histogram;
    for (const auto& [bin, count] : hist) REQUIRE(rep.source_degree.count((int)bin) == 1);
    for (const auto& [m, pr] : rep.source_degree) {
        double p = to_double(pr);
        double mean = p * static_cast<double>(trials);
        double sigma = std::sqrt(mean * (1.0 - p));
        auto it = hist.find(m);
        double got = it == hist.end() ? 0.0 : static_cast<double>(it->second);
        INFO("bin " << m);
        REQUIRE(std::abs(got - mean) < 5.0 * sigma);
    }
}

TEST_CASE("scaled moments approach the degree and length limit laws") {
    auto s = simulate(ModelConfig::bernoulli(ProbParam::parse("1/2")), 2000, 10000, 17,
                      {Stat::source_degree, Stat::sink_degree, Stat::walk_length});
    auto cd = compare_limit(s, LimitLaw::mittag_leffler_degree);
    require_moments_within(cd, 5.0, 5.0);
    REQUIRE(cd.stat == Stat::source_degree);
    REQUIRE(cd.exponent == Catch::Approx(0.5));
    require_moments_within(compare_limit(s, LimitLaw::mittag_leffler_length), 5.0, 5.0);

    // the density overlay: cells carrying real mass stay within 6 sigma
    int checked = 0;
    for (const auto& row : cd.overlay)
        if (row.expected * 0.05 * 10000 > 25) {
            INFO("x=" << row.x << " emp=" << row.empirical << " want=" << row.expected);
            REQUIRE(std::abs(row.z) < 6.0);
            ++checked;
        }
    REQUIRE(checked > 5);
}

TEST_CASE("binary limit laws cover both statistics") {
    auto s = simulate(ModelConfig::binary(), 2000, 10000, 19,
                      {Stat::sink_degree, Stat::walk_length});
    require_moments_within(compare_limit(s, LimitLaw::binary_length), 5.0, 5.0);
    require_moments_within(compare_limit(s, LimitLaw::binary_degree), 5.0, 6.0);
}

TEST_CASE("preferential degree law") {
    auto s = simulate(ModelConfig::preferential(ProbParam::parse("1/2")), 2000, 10000, 29,
                      {Stat::source_degree});
    auto c = compare_limit(s, LimitLaw::preferential_degree);
    REQUIRE(c.exponent == Catch::Approx(0.75));
    require_moments_within(c, 5.0, 5.0);
}

TEST_CASE("saturation degree law on both sides of the threshold") {
    SECTION("discrete side") {
        auto s = simulate(ModelConfig::saturation(ProbParam::parse("1/4")), 10000, 3000, 31,
                          {Stat::source_degree});
        auto c = compare_limit(s, LimitLaw::saturation_degree);
        REQUIRE(c.exponent == 0.0);
        require_moments_within(c, 5.0, 8.0);
        REQUIRE(!c.overlay.empty());
        REQUIRE(to_double(saturation_limit_pmf(1, BigRat(1, 4))) ==
                Catch::Approx(c.overlay[0].expected).margin(1e-12));
        REQUIRE(std::abs(c.overlay[0].z) < 5.0);
    }
    SECTION("continuous side") {
        auto s = simulate(ModelConfig::saturation(ProbParam::parse("3/4")), 10000, 3000, 37,
                          {Stat::source_degree});
        auto c = compare_limit(s, LimitLaw::saturation_degree);
        REQUIRE(c.exponent == Catch::Approx(0.5));
        require_moments_within(c, 5.0, 8.0);
    }
}

TEST_CASE("resource and parameter guards") {
    auto cfg = ModelConfig::bernoulli(ProbParam::parse("1/2"));
    REQUIRE_THROWS_AS(simulate(cfg, 1000, 3000000, 1, {Stat::source_degree}),
                      std::length_error);
    REQUIRE_THROWS_AS(simulate(cfg, 100, 10, 1, {Stat::path_count}), std::invalid_argument);
    REQUIRE_THROWS_AS(simulate(cfg, 10, 10, 1, {}), std::invalid_argument);

    auto s = simulate(cfg, 10, 10, 1, {Stat::source_degree});
    REQUIRE_THROWS_AS(compare_limit(s, LimitLaw::binary_length), std::invalid_argument);
    REQUIRE_THROWS_AS(compare_limit(s, LimitLaw::mittag_leffler_length),
                      std::invalid_argument);  // walk length was not sampled

    auto sat_half = simulate(ModelConfig::saturation(ProbParam::parse("1/2")), 10, 10, 1,
                             {Stat::source_degree});
    REQUIRE_THROWS_AS(compare_limit(sat_half, LimitLaw::saturation_degree),
                      std::invalid_argument);

    REQUIRE_THROWS_AS(parse_stat("nope"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_limit_law("nope"), std::invalid_argument);
}

TEST_CASE("log path counts replace raw counts at large n") {
    auto sum = simulate(ModelConfig::bernoulli(ProbParam::parse("1/3")), 80, 200, 3,
                        {Stat::log2_path_count});
    const auto& s = sum[Stat::log2_path_count];
    REQUIRE(s.bin_scale == 8);
    REQUIRE(s.mean > 0.0);
}
