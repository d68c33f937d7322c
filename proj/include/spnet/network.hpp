#pragma once

// Two-terminal series-parallel networks grown by edge duplication, plus the
// path statistics read off them. Out-adjacency is an intrusive linked list
// per node (first_/Edge::next) so both duplication rules are O(1) and the
// left-to-right order survives every insertion.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spnet/model.hpp"
#include "spnet/rational.hpp"
#include "spnet/rng.hpp"
#include "spnet/scaled_float.hpp"
#include "spnet/slots.hpp"

namespace spnet {

using NodeId = std::int32_t;
using EdgeLabel = std::int32_t;

struct Edge {
    NodeId tail = 0;
    NodeId head = 0;
    EdgeLabel next = 0;   // right sibling in tail's out order, 0 = last
    std::int32_t attraction = 0;  // times this edge has been duplicated

    bool operator==(const Edge&) const = default;
};

class SPNetwork {
public:
    static constexpr NodeId source = 0;
    static constexpr NodeId sink = 1;

    SPNetwork() { reset(); }

    // back to the single edge 1 = (source, sink); keeps capacity
    void reset() {
        edges_.clear();
        edges_.resize(2);
        edges_[1] = {source, sink, 0, 0};
        first_.assign(2, 0);
        outdeg_.assign(2, 0);
        first_[source] = 1;
        outdeg_[source] = 1;
        sink_indeg_ = 1;
    }

    int edge_count() const { return static_cast<int>(edges_.size()) - 1; }
    int node_count() const { return static_cast<int>(first_.size()); }

    const Edge& edge(EdgeLabel j) const {
        check_label(j);
        return edges_[j];
    }

    // new edge alongside j, immediately to its right
    EdgeLabel duplicate_parallel(EdgeLabel j) {
        check_label(j);
        Edge& e = edges_[j];
        EdgeLabel n = static_cast<EdgeLabel>(edges_.size());
        edges_.push_back({e.tail, e.head, e.next, 0});
        edges_[j].next = n;
        edges_[j].attraction++;
        outdeg_[edges_[n].tail]++;
        if (edges_[n].head == sink) sink_indeg_++;
        return n;
    }

    // j = (x, y) becomes (x, z), the new edge is z's only out-edge (z, y);
    // j keeps its slot in x's out order
    EdgeLabel duplicate_serial(EdgeLabel j) {
        check_label(j);
        NodeId z = static_cast<NodeId>(first_.size());
        first_.push_back(0);
        outdeg_.push_back(0);
        Edge& e = edges_[j];
        NodeId y = e.head;
        e.head = z;
        e.attraction++;
        EdgeLabel n = static_cast<EdgeLabel>(edges_.size());
        edges_.push_back({z, y, 0, 0});
        first_[z] = n;
        outdeg_[z] = 1;
        return n;  // sink in-degree is unchanged: j left, n arrived
    }

    int out_degree(NodeId v) const { return outdeg_[v]; }
    int source_degree() const { return outdeg_[source]; }
    int sink_degree() const { return sink_indeg_; }

    EdgeLabel first_out(NodeId v) const { return first_[v]; }
    EdgeLabel next_edge(EdgeLabel e) const { return edges_[e].next; }

    // out-edges of v, left to right
    std::vector<EdgeLabel> out_edges(NodeId v) const {
        std::vector<EdgeLabel> r;
        r.reserve(outdeg_[v]);
        for (EdgeLabel e = first_[v]; e != 0; e = edges_[e].next) r.push_back(e);
        return r;
    }

    int leftmost_path_length() const {
        int len = 0;
        NodeId v = source;
        while (v != sink) {
            v = edges_[first_[v]].head;
            if (++len > edge_count())
                throw std::logic_error("leftmost walk did not reach the sink");
        }
        return len;
    }

    bool same_structure(const SPNetwork& o) const {
        return edges_ == o.edges_ && first_ == o.first_;
    }

private:
    std::vector<Edge> edges_;       // 1-based, edges_[0] unused
    std::vector<EdgeLabel> first_;  // per node, leftmost out-edge (0 = none)
    std::vector<std::int32_t> outdeg_;
    int sink_indeg_ = 1;

    void check_label(EdgeLabel j) const {
        if (j < 1 || j >= static_cast<EdgeLabel>(edges_.size()))
            throw std::out_of_range("no edge labeled " + std::to_string(j));
    }
};

// One growth process: network plus the model's selection state. Reusable
// across trials without reallocation (reset + grow).
//
// Draw order per step, mirrored exactly by the tree growers in trees.hpp:
//   1. one bounded draw picking the attracting edge
//        bernoulli / binary / bary : uniform over labels 1..k-1
//        preferential / saturation : uniform over the weight slots
//   2. colored models only: one unit draw, parallel iff u < p.
class GrowthProcess {
public:
    explicit GrowthProcess(const ModelConfig& cfg) : cfg_(cfg) {
        cfg_.validate();
        if (cfg_.colored()) p_ = cfg_.p->value();
        reset();
    }

    void reset() {
        net_.reset();
        switch (cfg_.model) {
            case Model::preferential:
                pref_.clear();
                pref_.add_item(1);
                break;
            case Model::saturation:
                sat_.clear();
                sat_.add_item(1);
                break;
            default:
                break;
        }
    }

    // grow until the network has n edges
    void grow_to(int n, Rng& rng) {
        if (n < 1) throw std::invalid_argument("n must be >= 1");
        while (net_.edge_count() < n) step(rng);
    }

    void step(Rng& rng) {
        EdgeLabel j;
        bool parallel;
        switch (cfg_.model) {
            case Model::bernoulli:
                j = static_cast<EdgeLabel>(rng.below(net_.edge_count())) + 1;
                parallel = rng.unit() < p_;
                break;
            case Model::binary:
            case Model::bary:
                j = static_cast<EdgeLabel>(rng.below(net_.edge_count())) + 1;
                parallel = net_.out_degree(net_.edge(j).tail) < cfg_.saturation_bound();
                break;
            case Model::preferential:
                j = pref_.select_and_reinforce(rng);
                parallel = rng.unit() < p_;
                break;
            case Model::saturation:
                j = sat_.select_and_exhaust(rng);
                parallel = rng.unit() < p_;
                break;
            default:
                throw std::logic_error("bad model");
        }
        EdgeLabel n = parallel ? net_.duplicate_parallel(j) : net_.duplicate_serial(j);
        if (cfg_.model == Model::preferential) pref_.add_item(n);
        if (cfg_.model == Model::saturation) sat_.add_item(n);
    }

    const SPNetwork& network() const { return net_; }
    const ModelConfig& config() const { return cfg_; }

private:
    ModelConfig cfg_;
    double p_ = 0.0;
    SPNetwork net_;
    PreferentialSlots pref_;
    SaturationSlots sat_;
};

inline SPNetwork grow(const ModelConfig& cfg, int n, Rng& rng) {
    GrowthProcess g(cfg);
    g.grow_to(n, rng);
    return g.network();
}

namespace detail {

// nodes in DFS post-order from the source: every successor of a node appears
// before the node itself (the walk follows out-edges; the graph is acyclic)
inline std::vector<NodeId> postorder(const SPNetwork& net) {
    std::vector<NodeId> order;
    order.reserve(net.node_count());
    std::vector<std::uint8_t> seen(net.node_count(), 0);
    std::vector<std::pair<NodeId, EdgeLabel>> stack;  // node, next out-edge to scan
    seen[SPNetwork::source] = 1;
    stack.emplace_back(SPNetwork::source, net.first_out(SPNetwork::source));
    while (!stack.empty()) {
        auto& [v, e] = stack.back();
        if (e == 0) {
            order.push_back(v);
            stack.pop_back();
            continue;
        }
        NodeId w = net.edge(e).head;
        e = net.next_edge(e);
        if (!seen[w]) {
            seen[w] = 1;
            stack.emplace_back(w, net.first_out(w));
        }
    }
    return order;
}

// per-node count of distinct paths to the sink, any arithmetic type
template <class V>
std::vector<V> sink_path_counts(const SPNetwork& net) {
    std::vector<V> cnt(net.node_count(), V(0));
    cnt[SPNetwork::sink] = V(1);
    for (NodeId v : postorder(net)) {
        if (v == SPNetwork::sink) continue;
        V acc(0);
        for (EdgeLabel e : net.out_edges(v)) acc += cnt[net.edge(e).head];
        cnt[v] = acc;
    }
    return cnt;
}

}  // namespace detail

// number of distinct source-to-sink paths, exact
inline BigInt count_paths(const SPNetwork& net) {
    return detail::sink_path_counts<BigInt>(net)[SPNetwork::source];
}

// same count in mantissa/exponent form, for sizes where exact integers are
// pointlessly expensive
inline ScaledFloat count_paths_scaled(const SPNetwork& net) {
    return detail::sink_path_counts<ScaledFloat>(net)[SPNetwork::source];
}

// one uniform random walk source -> sink (uniform out-edge at every node)
inline int random_path_length(const SPNetwork& net, Rng& rng) {
    int len = 0;
    NodeId v = SPNetwork::source;
    while (v != SPNetwork::sink) {
        auto hop = rng.below(net.out_degree(v));
        EdgeLabel e = net.first_out(v);
        while (hop--) e = net.next_edge(e);
        v = net.edge(e).head;
        ++len;
    }
    return len;
}

// exact law of the random-walk path length: pmf over {1..n}
inline std::map<int, BigRat> random_path_length_pmf(const SPNetwork& net) {
    std::vector<std::map<int, BigRat>> pmf(net.node_count());
    pmf[SPNetwork::sink][0] = 1;
    for (NodeId v : detail::postorder(net)) {
        if (v == SPNetwork::sink) continue;
        auto outs = net.out_edges(v);
        BigRat w(1, static_cast<long>(outs.size()));
        std::map<int, BigRat>& mine = pmf[v];
        for (EdgeLabel e : outs)
            for (const auto& [len, pr] : pmf[net.edge(e).head]) mine[len + 1] += w * pr;
    }
    return pmf[SPNetwork::source];
}

}  // namespace spnet
