#include <catch2/catch_amalgamated.hpp>

#include "spnet/network.hpp"
#include "spnet/trees.hpp"

using namespace spnet;

TEST_CASE("a fresh network is the single source-sink edge") {
    SPNetwork net;
    REQUIRE(net.edge_count() == 1);
    REQUIRE(net.node_count() == 2);
    REQUIRE(net.source_degree() == 1);
    REQUIRE(net.sink_degree() == 1);
    REQUIRE(net.leftmost_path_length() == 1);
    REQUIRE(count_paths(net) == 1);
}

TEST_CASE("duplication sequence builds the expected shape") {
    // parallel x3 on edge 1, serial on 2, parallel on 5, serial on 1
    SPNetwork net;
    net.duplicate_parallel(1);
    net.duplicate_parallel(1);
    net.duplicate_parallel(1);
    net.duplicate_serial(2);
    net.duplicate_parallel(5);
    net.duplicate_serial(1);
    REQUIRE(net.edge_count() == 7);
    REQUIRE(net.source_degree() == 4);
    REQUIRE(net.leftmost_path_length() == 2);
    REQUIRE(count_paths(net) == 5);
}

TEST_CASE("serial doubling keeps the split edge at its tail") {
    SPNetwork net;
    net.duplicate_serial(1);
    REQUIRE(net.edge_count() == 2);
    REQUIRE(net.node_count() == 3);
    REQUIRE(net.source_degree() == 1);
    REQUIRE(net.sink_degree() == 1);
    REQUIRE(net.leftmost_path_length() == 2);
    // edge 1 still leaves the source; edge 2 is the new tail half
    REQUIRE(net.edge(1).tail == SPNetwork::source);
    REQUIRE(net.edge(2).head == SPNetwork::sink);
}

TEST_CASE("parallel doubling inserts the copy beside the original") {
    SPNetwork net;
    net.duplicate_parallel(1);
    REQUIRE(net.edge(2).tail == net.edge(1).tail);
    REQUIRE(net.edge(2).head == net.edge(1).head);
    REQUIRE(net.out_edges(SPNetwork::source) == std::vector<EdgeLabel>{1, 2});

    // doubling edge 1 again lands between 1 and 2, not at the end
    net.duplicate_parallel(1);
    REQUIRE(net.out_edges(SPNetwork::source) == std::vector<EdgeLabel>{1, 3, 2});
    REQUIRE(net.edge(3).head == SPNetwork::sink);
}

TEST_CASE("saturated tails force serial steps in the bucket rule") {
    // selection sequence 1,2,1,2,5,6 under the b=2 rule
    SPNetwork net;
    net.duplicate_parallel(1);  // source had out-degree 1
    net.duplicate_serial(2);    // source saturated
    net.duplicate_serial(1);
    net.duplicate_serial(2);
    net.duplicate_parallel(5);  // fresh internal node, room left
    net.duplicate_serial(6);
    REQUIRE(net.sink_degree() == 2);
    REQUIRE(net.leftmost_path_length() == 2);
    REQUIRE(count_paths(net) == 3);

    // replaying the same labels through a bucket tree gives the same network
    BucketTree bt(2);
    for (int j : {1, 2, 1, 2, 5, 6}) bt.attract(j);
    REQUIRE(tree_to_network(bt).same_structure(net));
    REQUIRE(history_probability(bt) == BigRat(1, 720));
}

TEST_CASE("random path length pmf enumerates source-sink walks") {
    // edge beside a 2-chain: half the walks take the short branch
    SPNetwork net;
    net.duplicate_parallel(1);
    net.duplicate_serial(2);
    auto pmf = random_path_length_pmf(net);
    REQUIRE(pmf.size() == 2);
    REQUIRE(pmf.at(1) == BigRat(1, 2));
    REQUIRE(pmf.at(2) == BigRat(1, 2));
}

TEST_CASE("path counting agrees between exact and scaled routes") {
    Rng rng(5);
    auto net = grow(ModelConfig::bernoulli(ProbParam::parse("1/2")), 40, rng);
    BigInt exact = count_paths(net);
    ScaledFloat scaled = count_paths_scaled(net);
    REQUIRE(std::abs(scaled.to_double() / to_double(exact) - 1.0) < 1e-12);
}

TEST_CASE("growth replays identically through the tree encodings") {
    std::vector<ModelConfig> models = {
        ModelConfig::bernoulli(ProbParam::parse("1/3")), ModelConfig::binary(),
        ModelConfig::preferential(ProbParam::parse("2/3")),
        ModelConfig::saturation(ProbParam::parse("1/2")), ModelConfig::bary(3)};
    for (const auto& cfg : models) {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            Rng r1(seed), r2(seed);
            SPNetwork direct = grow(cfg, 10, r1);
            SPNetwork replayed;
            if (cfg.colored()) {
                auto t = grow_colored_tree(flavor_for(cfg.model), *cfg.p, 10, r2);
                replayed = tree_to_network(t);
            } else {
                auto t = grow_bucket_tree(cfg.saturation_bound(), 10, r2);
                replayed = tree_to_network(t);
            }
            INFO(model_name(cfg.model) << " seed " << seed);
            REQUIRE(direct.same_structure(replayed));
        }
    }
}

TEST_CASE("binary growth never exceeds out-degree two") {
    Rng rng(11);
    GrowthProcess proc(ModelConfig::binary());
    for (int rep = 0; rep < 20; ++rep) {
        proc.reset();
        proc.grow_to(30, rng);
        const auto& net = proc.network();
        for (int v = 0; v < net.node_count(); ++v) REQUIRE(net.out_degree(v) <= 2);
    }
}

TEST_CASE("invalid configurations are rejected") {
    REQUIRE_THROWS_AS(ModelConfig::bary(1).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(ModelConfig::bernoulli(ProbParam::parse("0")).validate(),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(ModelConfig::bernoulli(ProbParam::parse("5/4")).validate(),
                      std::invalid_argument);
    ModelConfig no_p;
    no_p.model = Model::preferential;
    REQUIRE_THROWS_AS(no_p.validate(), std::invalid_argument);
}

TEST_CASE("rng streams differ per worker and replay per seed") {
    Rng a = Rng::stream(42, 0), b = Rng::stream(42, 1), c = Rng::stream(42, 0);
    bool all_equal = true;
    for (int i = 0; i < 64; ++i) {
        std::uint64_t x = a.below(1000), y = b.below(1000), z = c.below(1000);
        all_equal = all_equal && (x == y);
        REQUIRE(x == z);
        REQUIRE(x < 1000);
    }
    REQUIRE_FALSE(all_equal);
}
