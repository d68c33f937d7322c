#include <catch2/catch_amalgamated.hpp>

#include "spnet/trees.hpp"

using namespace spnet;

TEST_CASE("colored-tree history probabilities sum to one") {
    // all parent/color choices for 4 nodes, uniform-attachment flavor
    ProbParam p = ProbParam::parse("1/3");
    BigRat total = 0;
    for (int p2 = 1; p2 <= 1; ++p2)
        for (int c2 = 0; c2 < 2; ++c2)
            for (int p3 = 1; p3 <= 2; ++p3)
                for (int c3 = 0; c3 < 2; ++c3)
                    for (int p4 = 1; p4 <= 3; ++p4)
                        for (int c4 = 0; c4 < 2; ++c4) {
                            ColoredIncreasingTree t(TreeFlavor::recursive);
                            t.attach(p2, c2 ? Color::blue : Color::red);
                            t.attach(p3, c3 ? Color::blue : Color::red);
                            t.attach(p4, c4 ? Color::blue : Color::red);
                            total += history_probability(t, p);
                        }
    REQUIRE(total == 1);
}

TEST_CASE("attachment weights follow the flavor") {
    ProbParam half = ProbParam::parse("1/2");
    SECTION("uniform: each parent equally likely") {
        ColoredIncreasingTree t(TreeFlavor::recursive);
        t.attach(1, Color::blue);  // node 2: forced parent, color weight 1/2
        REQUIRE(history_probability(t, half) == BigRat(1, 2));
        t.attach(2, Color::blue);  // node 3: parent 2 with weight 1/2
        REQUIRE(history_probability(t, half) == BigRat(1, 8));
    }
    SECTION("plane: weight 1 + out-degree over 2k-3") {
        ColoredIncreasingTree t(TreeFlavor::plane_recursive);
        t.attach(1, Color::blue);
        t.attach(1, Color::blue);  // root has out-degree 1: weight 2/3
        REQUIRE(history_probability(t, half) == BigRat(1, 2) * BigRat(2, 3) * BigRat(1, 2));
    }
    SECTION("saturating: weight 2 - out-degree over k, third child refused") {
        ColoredIncreasingTree t(TreeFlavor::binary_increasing);
        t.attach(1, Color::blue);
        t.attach(1, Color::blue);  // root now has two children
        // node 2 weight (2-0)/2, node 3 at root weight (2-1)/3
        REQUIRE(history_probability(t, half) ==
                BigRat(2, 2) * BigRat(1, 2) * BigRat(1, 3) * BigRat(1, 2));
        REQUIRE_THROWS_AS(t.attach(1, Color::red), std::invalid_argument);
    }
}

TEST_CASE("bucket trees cap bucket sizes and weight histories uniformly") {
    BucketTree bt(3);
    for (int j : {1, 1, 1, 2, 3}) bt.attract(j);
    REQUIRE(bt.order() == 6);
    for (const auto& bucket : bt.buckets) REQUIRE(bucket.size() <= 3);
    REQUIRE(history_probability(bt) == BigRat(1, 120));
}

TEST_CASE("grown trees respect their structural constraints") {
    Rng rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        auto t = grow_colored_tree(TreeFlavor::binary_increasing, ProbParam::parse("1/2"), 20,
                                   rng);
        for (int v = 1; v <= t.order(); ++v) REQUIRE(t.children[v].size() <= 2);
        auto bt = grow_bucket_tree(2, 20, rng);
        for (const auto& bucket : bt.buckets) REQUIRE(bucket.size() <= 2);
    }
}

TEST_CASE("tree encodings map onto networks") {
    // blue = parallel, red = serial: a blue child then a red child of the
    // blue edge gives the edge-beside-2-chain network
    ColoredIncreasingTree t(TreeFlavor::recursive);
    t.attach(1, Color::blue);
    t.attach(2, Color::red);
    auto net = tree_to_network(t);
    REQUIRE(net.edge_count() == 3);
    REQUIRE(net.source_degree() == 2);
    REQUIRE(net.leftmost_path_length() == 1);
    REQUIRE(count_paths(net) == 2);
}

TEST_CASE("only the colored models have a tree flavor") {
    REQUIRE(flavor_for(Model::bernoulli) == TreeFlavor::recursive);
    REQUIRE(flavor_for(Model::preferential) == TreeFlavor::plane_recursive);
    REQUIRE(flavor_for(Model::saturation) == TreeFlavor::binary_increasing);
    REQUIRE_THROWS_AS(flavor_for(Model::binary), std::invalid_argument);
    REQUIRE_THROWS_AS(flavor_for(Model::bary), std::invalid_argument);
}
