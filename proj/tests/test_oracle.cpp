#include <catch2/catch_amalgamated.hpp>

#include "spnet/oracle.hpp"

using namespace spnet;

namespace {
void require_all_pass(const FormulaVerification& ver) {
    for (const auto& c : ver.checks) {
        INFO("n=" << ver.n << " check=" << c.name << " worst=" << c.worst << " " << c.detail);
        CHECK(c.pass);
    }
    REQUIRE(ver.all_pass());
}
}  // namespace

TEST_CASE("enumeration reproduces hand-counted small cases") {
    auto two = enumerate(ModelConfig::bernoulli(ProbParam::parse("1/3")), 2);
    REQUIRE(two.history_count == 2);
    REQUIRE(two.source_degree.at(1) == BigRat(2, 3));
    REQUIRE(two.source_degree.at(2) == BigRat(1, 3));

    auto forced = enumerate(ModelConfig::binary(), 3);
    REQUIRE(forced.path_count.size() == 1);
    REQUIRE(forced.path_count.at(BigInt(2)) == 1);

    auto three = enumerate(ModelConfig::bernoulli(ProbParam::parse("1/2")), 3);
    REQUIRE(three.source_degree.at(1) == BigRat(3, 8));
    REQUIRE(three.source_degree.at(2) == BigRat(3, 8));
    REQUIRE(three.source_degree.at(3) == BigRat(1, 4));
    REQUIRE(three.e_source_degree == BigRat(15, 8));
}

TEST_CASE("history counts and total probability") {
    std::uint64_t colored = 1, bucket = 1;
    for (int n = 2; n <= 5; ++n) {
        colored *= 2 * (n - 1);  // (n-1)! 2^{n-1}
        bucket *= n - 1;         // (n-1)!
        for (const auto& cfg : {ModelConfig::bernoulli(ProbParam::parse("1/3")),
                                ModelConfig::preferential(ProbParam::parse("1/2"))}) {
            auto rep = enumerate(cfg, n);
            REQUIRE(rep.history_count == colored);
            REQUIRE(rep.total_probability == 1);
        }
        // saturated edges carry weight zero, so those branches vanish from n=4 on
        auto sat = enumerate(ModelConfig::saturation(ProbParam::parse("3/4")), n);
        if (n <= 3) REQUIRE(sat.history_count == colored);
        else REQUIRE(sat.history_count < colored);
        REQUIRE(sat.total_probability == 1);
        for (const auto& cfg : {ModelConfig::binary(), ModelConfig::bary(3)}) {
            auto rep = enumerate(cfg, n);
            REQUIRE(rep.history_count == bucket);
            REQUIRE(rep.total_probability == 1);
        }
    }
}

TEST_CASE("every applicable formula matches the enumeration") {
    SECTION("bernoulli, three weights") {
        for (const char* p : {"1/4", "1/2", "2/3"})
            for (int n = 1; n <= 6; ++n)
                require_all_pass(verify_formulas(ModelConfig::bernoulli(ProbParam::parse(p)), n));
    }
    SECTION("binary") {
        for (int n = 1; n <= 7; ++n) require_all_pass(verify_formulas(ModelConfig::binary(), n));
    }
    SECTION("three-slot buckets") {
        for (int n = 1; n <= 7; ++n) require_all_pass(verify_formulas(ModelConfig::bary(3), n));
    }
    SECTION("attraction models") {
        for (const char* p : {"1/3", "1/2", "3/4"}) {
            for (int n = 1; n <= 5; ++n) {
                require_all_pass(
                    verify_formulas(ModelConfig::preferential(ProbParam::parse(p)), n));
                require_all_pass(
                    verify_formulas(ModelConfig::saturation(ProbParam::parse(p)), n));
            }
        }
    }
}

TEST_CASE("tree-route enumeration produces identical tables") {
    std::vector<ModelConfig> models = {
        ModelConfig::bernoulli(ProbParam::parse("1/3")), ModelConfig::binary(),
        ModelConfig::preferential(ProbParam::parse("2/3")),
        ModelConfig::saturation(ProbParam::parse("1/2")), ModelConfig::bary(3)};
    for (const auto& cfg : models) {
        INFO(model_name(cfg.model));
        auto direct = enumerate(cfg, 5);
        auto trees = enumerate_via_trees(cfg, 5);
        REQUIRE(direct.history_count == trees.history_count);
        REQUIRE(direct.source_degree == trees.source_degree);
        REQUIRE(direct.sink_degree == trees.sink_degree);
        REQUIRE(direct.leftmost_length == trees.leftmost_length);
        REQUIRE(direct.walk_length == trees.walk_length);
        REQUIRE(direct.joint_walk_degree == trees.joint_walk_degree);
        REQUIRE(direct.path_count == trees.path_count);
        REQUIRE(direct.e_paths == trees.e_paths);
        REQUIRE(direct.total_probability == trees.total_probability);
    }
}

TEST_CASE("budget and parameter errors are hard") {
    REQUIRE_THROWS_AS(enumerate(ModelConfig::bernoulli(ProbParam::parse("1/2")), 9),
                      std::length_error);
    REQUIRE_THROWS_AS(enumerate(ModelConfig::binary(), 10), std::length_error);
    REQUIRE_THROWS_AS(enumerate(ModelConfig::bernoulli(ProbParam::parse("0.3")), 3),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(enumerate(ModelConfig::bernoulli(ProbParam::parse("1/2")), 0),
                      std::invalid_argument);
}
