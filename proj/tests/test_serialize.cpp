#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <vector>

#include "spnet/montecarlo.hpp"
#include "spnet/oracle.hpp"
#include "spnet/serialize.hpp"
#include "spnet/version.hpp"

using namespace spnet;

namespace {
std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}
}  // namespace

TEST_CASE("enumeration report serializes with envelope and exact fractions") {
    auto rep = enumerate(ModelConfig::bernoulli(ProbParam::parse("1/2")), 3);
    auto j = Json::parse(to_json(rep).dump());

    REQUIRE(j["version"] == version_string);
    REQUIRE(j["config"]["model"] == "bernoulli");
    REQUIRE(j["config"]["p"] == "1/2");
    REQUIRE(j["n"] == 3);
    REQUIRE(j["history_count"] == 8);
    REQUIRE(j["total_probability"] == "1/1");

    const auto& deg = j["tables"]["source_degree"];
    REQUIRE(deg.size() == 3);
    REQUIRE(deg[0]["m"] == 1);
    REQUIRE(deg[0]["prob"] == "3/8");
    REQUIRE(deg[2]["prob"] == "1/4");
    REQUIRE(j["expectations"]["source_degree"] == "15/8");

    bool joint_ok = false;
    for (const auto& row : j["tables"]["joint_walk_degree"])
        if (row["length"] == 1 && row["degree"] == 2 && row["prob"] == "1/8") joint_ok = true;
    REQUIRE(joint_ok);
}

TEST_CASE("enumeration report flattens to one csv row per table entry") {
    auto rep = enumerate(ModelConfig::binary(), 3);
    auto text = to_csv(rep);
    auto rows = lines_of(text);

    REQUIRE(rows.size() >= 3);
    REQUIRE(rows[0].rfind("# version=", 0) == 0);
    REQUIRE(rows[0].find("model=binary") != std::string::npos);
    REQUIRE(rows[1] == "table,m,l,prob,prob_float");

    std::size_t entries = rep.source_degree.size() + rep.sink_degree.size() +
                          rep.leftmost_length.size() + rep.walk_length.size() +
                          rep.joint_walk_degree.size() + rep.path_count.size();
    REQUIRE(rows.size() == entries + 2);
    for (std::size_t i = 2; i < rows.size(); ++i)
        REQUIRE(std::count(rows[i].begin(), rows[i].end(), ',') == 4);
}

TEST_CASE("simulation summary round-trips its run parameters") {
    auto sum = simulate(ModelConfig::binary(), 8, 300, 42, {Stat::walk_length});
    auto j = Json::parse(to_json(sum).dump());

    REQUIRE(j["version"] == version_string);
    REQUIRE(j["config"]["model"] == "binary");
    REQUIRE(j["n"] == 8);
    REQUIRE(j["trials"] == 300);
    REQUIRE(j["seed"] == 42);
    REQUIRE(j["stats"].size() == 1);

    const auto& st = j["stats"][0];
    REQUIRE(st["stat"] == "walk-length");
    REQUIRE(st["scaled_moments"].size() == 3);
    std::uint64_t mass = 0;
    for (const auto& cell : st["histogram"]) mass += cell["count"].get<std::uint64_t>();
    REQUIRE(mass == 300);

    auto rows = lines_of(to_csv(sum));
    REQUIRE(rows[1] == "stat,exponent,x,count,frequency");
    REQUIRE(rows.size() == sum[Stat::walk_length].histogram.size() + 2);
}

TEST_CASE("limit comparison serializes moments and overlay") {
    auto sum = simulate(ModelConfig::binary(), 400, 2000, 7, {Stat::walk_length});
    auto cmp = compare_limit(sum, LimitLaw::binary_length);
    auto j = Json::parse(to_json(cmp, sum).dump());

    REQUIRE(j["law"] == "binary-length");
    REQUIRE(j["stat"] == "walk-length");
    REQUIRE(j["moments"].size() == 3);
    REQUIRE(j["moments"][0]["r"] == 1);
    REQUIRE(j["moments"][0].contains("sample"));
    REQUIRE(j["moments"][0].contains("se"));

    auto rows = lines_of(to_csv(cmp, sum));
    REQUIRE(rows[1] == "kind,x,sample,expected,se,z");
    REQUIRE(rows.size() == 2 + 3 + cmp.overlay.size());
    REQUIRE(rows[2].rfind("moment,1,", 0) == 0);
}
