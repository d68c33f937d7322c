#pragma once

// Tree encodings of growth histories and the replay back to a network.
// Node/label k in a tree corresponds to edge k of the network; replaying
// attachments in label order rebuilds the network exactly.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spnet/model.hpp"
#include "spnet/network.hpp"
#include "spnet/rng.hpp"
#include "spnet/slots.hpp"

namespace spnet {

enum class Color : std::uint8_t { blue, red };  // blue = parallel, red = serial

enum class TreeFlavor { recursive, plane_recursive, binary_increasing };

inline TreeFlavor flavor_for(Model m) {
    switch (m) {
        case Model::bernoulli: return TreeFlavor::recursive;
        case Model::preferential: return TreeFlavor::plane_recursive;
        case Model::saturation: return TreeFlavor::binary_increasing;
        default: throw std::invalid_argument("model has a bucket encoding, not a colored one");
    }
}

// Rooted tree on 1..n, labels increasing along every branch; node k >= 2
// hangs under parent[k] with color[k]. children[v] keeps attachment order.
struct ColoredIncreasingTree {
    TreeFlavor flavor = TreeFlavor::recursive;
    std::vector<int> parent;  // index k, entries for 2..n
    std::vector<Color> color;
    std::vector<std::vector<int>> children;

    explicit ColoredIncreasingTree(TreeFlavor f = TreeFlavor::recursive) : flavor(f) { reset(); }

    void reset() {
        parent.assign(2, 0);
        color.assign(2, Color::blue);
        children.assign(2, {});
    }

    int order() const { return static_cast<int>(parent.size()) - 1; }

    void attach(int p, Color c) {
        int k = static_cast<int>(parent.size());
        if (p < 1 || p >= k) throw std::out_of_range("parent label out of range");
        if (flavor == TreeFlavor::binary_increasing && children[p].size() >= 2)
            throw std::invalid_argument("binary increasing tree: node already has 2 children");
        parent.push_back(p);
        color.push_back(c);
        children.emplace_back();
        children[p].push_back(k);
    }
};

// Buckets of capacity b; label k >= 2 is pulled in by attractor[k], landing
// either inside the attractor's bucket or in a fresh child bucket of it.
struct BucketTree {
    int b = 2;
    std::vector<int> attractor;   // index k, entries for 2..n
    std::vector<int> bucket_of;   // label -> bucket id
    std::vector<std::vector<int>> buckets;        // bucket id -> labels, insertion order
    std::vector<int> bucket_parent_label;         // bucket id -> attracting label (0 = root)
    std::vector<std::vector<int>> child_buckets;  // label -> bucket ids opened under it

    explicit BucketTree(int cap = 2) : b(cap) {
        if (cap < 2) throw std::invalid_argument("bucket capacity must be >= 2");
        reset();
    }

    void reset() {
        attractor.assign(2, 0);
        bucket_of.assign(2, 0);
        buckets.assign(1, {1});
        bucket_parent_label.assign(1, 0);
        child_buckets.assign(2, {});
    }

    int order() const { return static_cast<int>(attractor.size()) - 1; }

    // returns true when k joined the attractor's bucket (replays as parallel)
    bool attract(int j) {
        int k = static_cast<int>(attractor.size());
        if (j < 1 || j >= k) throw std::out_of_range("attractor label out of range");
        attractor.push_back(j);
        child_buckets.emplace_back();
        int bj = bucket_of[j];
        bool joined = static_cast<int>(buckets[bj].size()) < b;
        if (joined) {
            buckets[bj].push_back(k);
            bucket_of.push_back(bj);
        } else {
            int nb = static_cast<int>(buckets.size());
            buckets.push_back({k});
            bucket_parent_label.push_back(j);
            bucket_of.push_back(nb);
            child_buckets[j].push_back(nb);
        }
        return joined;
    }
};

// Stochastic tree growth. Draw order per step matches GrowthProcess::step:
// one bounded draw for the attachment point, then (colored flavors) one unit
// draw for the colour. Feeding the same stream to both builders yields the
// same history on both sides.
inline ColoredIncreasingTree grow_colored_tree(TreeFlavor flavor, const ProbParam& p, int n,
                                               Rng& rng) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    double pd = p.value();
    if (!(pd > 0.0 && pd < 1.0)) throw std::invalid_argument("p must lie strictly in (0,1)");
    ColoredIncreasingTree t(flavor);
    PreferentialSlots pref;
    SaturationSlots sat;
    if (flavor == TreeFlavor::plane_recursive) pref.add_item(1);
    if (flavor == TreeFlavor::binary_increasing) sat.add_item(1);
    for (int k = 2; k <= n; ++k) {
        int j = 0;
        switch (flavor) {
            case TreeFlavor::recursive:
                j = static_cast<int>(rng.below(k - 1)) + 1;
                break;
            case TreeFlavor::plane_recursive:
                j = pref.select_and_reinforce(rng);
                break;
            case TreeFlavor::binary_increasing:
                j = sat.select_and_exhaust(rng);
                break;
        }
        Color c = rng.unit() < pd ? Color::blue : Color::red;
        t.attach(j, c);
        if (flavor == TreeFlavor::plane_recursive) pref.add_item(k);
        if (flavor == TreeFlavor::binary_increasing) sat.add_item(k);
    }
    return t;
}

inline BucketTree grow_bucket_tree(int b, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    BucketTree t(b);
    for (int k = 2; k <= n; ++k) t.attract(static_cast<int>(rng.below(k - 1)) + 1);
    return t;
}

// Replay: blue child of j <=> parallel duplication of edge j, red <=> serial.
inline SPNetwork tree_to_network(const ColoredIncreasingTree& t) {
    SPNetwork net;
    for (int k = 2; k <= t.order(); ++k) {
        if (t.color[k] == Color::blue)
            net.duplicate_parallel(t.parent[k]);
        else
            net.duplicate_serial(t.parent[k]);
    }
    return net;
}

// Replay: landing inside the attractor's bucket <=> parallel, fresh bucket
// <=> serial.
inline SPNetwork tree_to_network(const BucketTree& t) {
    SPNetwork net;
    for (int k = 2; k <= t.order(); ++k) {
        int j = t.attractor[k];
        if (t.bucket_of[k] == t.bucket_of[j])
            net.duplicate_parallel(j);
        else
            net.duplicate_serial(j);
    }
    return net;
}

// Probability that the flavor's stochastic growth produces exactly this tree
// (labels, shape and colours). Exact; p must be rational.
inline BigRat history_probability(const ColoredIncreasingTree& t, const ProbParam& p) {
    const BigRat pb = p.rat();  // throws unless rational
    const BigRat pr = 1 - pb;
    const int n = t.order();
    std::vector<int> outdeg(n + 1, 0);
    BigRat prob = 1;
    for (int k = 2; k <= n; ++k) {
        int j = t.parent[k];
        switch (t.flavor) {
            case TreeFlavor::recursive:
                prob /= k - 1;
                break;
            case TreeFlavor::plane_recursive:
                // node weight 1 + outdeg, total 2k - 3
                prob *= BigRat(1 + outdeg[j], 2 * k - 3);
                break;
            case TreeFlavor::binary_increasing:
                // node weight 2 - outdeg, total k
                prob *= BigRat(2 - outdeg[j], k);
                break;
        }
        prob *= (t.color[k] == Color::blue) ? pb : pr;
        outdeg[j]++;
    }
    return prob;
}

// Bucket histories draw uniformly among labels at every step.
inline BigRat history_probability(const BucketTree& t) {
    return BigRat(BigInt(1), factorial(t.order() - 1));
}

}  // namespace spnet
