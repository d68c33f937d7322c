#pragma once

// Exhaustive enumeration of every growth history at small n. The tables are
// exact rationals, so they serve as ground truth for the closed-form module:
// rational formulas must match them to the bit, float formulas to a pinned
// relative tolerance. A second enumerator drives the tree encodings instead
// of the network and must produce identical tables.

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spnet/exact.hpp"
#include "spnet/model.hpp"
#include "spnet/network.hpp"
#include "spnet/rational.hpp"
#include "spnet/spectrum.hpp"
#include "spnet/trees.hpp"

namespace spnet {

// Probability-weighted tables over all histories of size n. Every pmf and
// total_probability sums to exactly 1 when enumeration completed.
struct OracleReport {
    ModelConfig cfg;
    int n = 1;
    std::uint64_t history_count = 0;

    std::map<int, BigRat> source_degree;
    std::map<int, BigRat> sink_degree;
    std::map<int, BigRat> leftmost_length;
    std::map<int, BigRat> walk_length;  // law of the uniform source-to-sink walk
    std::map<std::pair<int, int>, BigRat> joint_walk_degree;  // (walk length, source degree)
    std::map<BigInt, BigRat> path_count;

    BigRat e_source_degree;
    BigRat e_sink_degree;
    BigRat e_leftmost;
    BigRat e_walk_length;
    BigRat e_paths;
    BigRat total_probability;
};

namespace detail {

// colored histories: (n-1)! 2^{n-1}; bucket histories: (n-1)!
inline void oracle_check_budget(const ModelConfig& cfg, int n) {
    cfg.validate();
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const int cap = cfg.colored() ? 8 : 9;
    if (n > cap)
        throw std::length_error("oracle budget: n <= " + std::to_string(cap) + " for the " +
                                model_name(cfg.model) + " model");
    if (cfg.colored() && !cfg.p->is_rational())
        throw std::invalid_argument("oracle needs p as an exact rational");
}

inline void oracle_absorb(OracleReport& rep, const SPNetwork& net, const BigRat& prob) {
    rep.history_count += 1;
    rep.total_probability += prob;
    const int d = net.source_degree();
    const int s = net.sink_degree();
    const int lm = net.leftmost_path_length();
    rep.source_degree[d] += prob;
    rep.sink_degree[s] += prob;
    rep.leftmost_length[lm] += prob;
    rep.e_source_degree += prob * d;
    rep.e_sink_degree += prob * s;
    rep.e_leftmost += prob * lm;
    for (const auto& [len, pr] : random_path_length_pmf(net)) {
        BigRat w = prob * pr;
        rep.walk_length[len] += w;
        rep.joint_walk_degree[{len, d}] += w;
        rep.e_walk_length += w * len;
    }
    BigInt paths = count_paths(net);
    rep.e_paths += prob * BigRat(paths);
    rep.path_count[std::move(paths)] += prob;
}

// One driver for all five models; only the per-edge branch weights differ.
// attr[j] counts how often edge j attracted a duplicate (the out-degree of
// node j in the encoding tree), which the weighted models' weights read.
inline void oracle_expand(const ModelConfig& cfg, int n, const BigRat& pb, const BigRat& qb,
                          const SPNetwork& net, const std::vector<int>& attr, const BigRat& prob,
                          OracleReport& rep) {
    const int m = net.edge_count();
    if (m == n) {
        oracle_absorb(rep, net, prob);
        return;
    }
    auto descend = [&](EdgeLabel j, bool parallel, const BigRat& w) {
        SPNetwork next = net;
        std::vector<int> a = attr;
        if (parallel)
            next.duplicate_parallel(j);
        else
            next.duplicate_serial(j);
        a[j] += 1;
        a.push_back(0);
        oracle_expand(cfg, n, pb, qb, next, a, prob * w, rep);
    };
    switch (cfg.model) {
        case Model::bernoulli: {
            const BigRat u(1, m);
            for (EdgeLabel j = 1; j <= m; ++j) {
                descend(j, true, u * pb);
                descend(j, false, u * qb);
            }
            break;
        }
        case Model::binary:
        case Model::bary: {
            const BigRat u(1, m);
            for (EdgeLabel j = 1; j <= m; ++j)
                descend(j, net.out_degree(net.edge(j).tail) < cfg.saturation_bound(), u);
            break;
        }
        case Model::preferential: {
            // edge weights 1 + attr sum to 2m - 1
            for (EdgeLabel j = 1; j <= m; ++j) {
                const BigRat w(1 + attr[j], 2 * m - 1);
                descend(j, true, w * pb);
                descend(j, false, w * qb);
            }
            break;
        }
        case Model::saturation: {
            // edge weights 2 - attr sum to m + 1; exhausted edges drop out
            for (EdgeLabel j = 1; j <= m; ++j) {
                if (attr[j] == 2) continue;
                const BigRat w(2 - attr[j], m + 1);
                descend(j, true, w * pb);
                descend(j, false, w * qb);
            }
            break;
        }
    }
}

inline void tree_expand_colored(const ProbParam& p, int n, const ColoredIncreasingTree& t,
                                OracleReport& rep) {
    const int k = t.order();
    if (k == n) {
        oracle_absorb(rep, tree_to_network(t), history_probability(t, p));
        return;
    }
    for (int j = 1; j <= k; ++j) {
        if (t.flavor == TreeFlavor::binary_increasing && t.children[j].size() >= 2) continue;
        for (Color c : {Color::blue, Color::red}) {
            ColoredIncreasingTree u = t;
            u.attach(j, c);
            tree_expand_colored(p, n, u, rep);
        }
    }
}

inline void tree_expand_bucket(int n, const BucketTree& t, OracleReport& rep) {
    const int k = t.order();
    if (k == n) {
        oracle_absorb(rep, tree_to_network(t), history_probability(t));
        return;
    }
    for (int j = 1; j <= k; ++j) {
        BucketTree u = t;
        u.attract(j);
        tree_expand_bucket(n, u, rep);
    }
}

}  // namespace detail

// Depth-first sweep of every selection (and colour) sequence. Tables are
// accumulated on the fly; no history is ever stored.
inline OracleReport enumerate(const ModelConfig& cfg, int n) {
    detail::oracle_check_budget(cfg, n);
    OracleReport rep;
    rep.cfg = cfg;
    rep.n = n;
    BigRat pb = cfg.colored() ? cfg.p->rat() : BigRat(0);
    BigRat qb = 1 - pb;
    SPNetwork net;
    std::vector<int> attr{0, 0};
    detail::oracle_expand(cfg, n, pb, qb, net, attr, BigRat(1), rep);
    return rep;
}

// Same sweep through the tree encodings: histories are enumerated as trees,
// their probabilities come from the tree law, the statistics from the replay.
// Must agree with enumerate() entry for entry.
inline OracleReport enumerate_via_trees(const ModelConfig& cfg, int n) {
    detail::oracle_check_budget(cfg, n);
    OracleReport rep;
    rep.cfg = cfg;
    rep.n = n;
    if (cfg.colored()) {
        ColoredIncreasingTree t(flavor_for(cfg.model));
        detail::tree_expand_colored(*cfg.p, n, t, rep);
    } else {
        BucketTree t(cfg.saturation_bound());
        detail::tree_expand_bucket(n, t, rep);
    }
    return rep;
}

// One formula comparison. Exact comparisons pass only on equality; float
// comparisons pass at the tolerance recorded in `detail`. `worst` is the
// largest deviation seen either way.
struct FormulaCheck {
    std::string name;
    bool pass = false;
    double worst = 0.0;
    std::string detail;
};

struct FormulaVerification {
    ModelConfig cfg;
    int n = 1;
    std::vector<FormulaCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

template <class K>
FormulaCheck check_maps_exact(const std::string& name, const std::map<K, BigRat>& got,
                              const std::map<K, BigRat>& want) {
    FormulaCheck c;
    c.name = name;
    c.pass = true;
    std::map<K, BigRat> diff;
    for (const auto& [k, v] : got) diff[k] += v;
    for (const auto& [k, v] : want) diff[k] -= v;
    for (const auto& [k, v] : diff) {
        if (v == 0) continue;
        c.pass = false;
        c.worst = std::max(c.worst, std::abs(to_double(v)));
    }
    if (!c.pass) c.detail = "entries differ, largest gap " + std::to_string(c.worst);
    return c;
}

inline std::map<int, BigRat> pmf_vector_to_map(const std::vector<BigRat>& v) {
    std::map<int, BigRat> m;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] != 0) m[static_cast<int>(i)] = v[i];
    return m;
}

inline FormulaCheck check_pmf_exact(const std::string& name, const std::map<int, BigRat>& got,
                                    const std::vector<BigRat>& want) {
    return check_maps_exact(name, got, pmf_vector_to_map(want));
}

inline FormulaCheck check_scalar_exact(const std::string& name, const BigRat& got,
                                       const BigRat& want) {
    FormulaCheck c;
    c.name = name;
    c.pass = got == want;
    if (!c.pass) {
        c.worst = std::abs(to_double(BigRat(got - want)));
        c.detail = "oracle " + format_rational(got) + " vs formula " + format_rational(want);
    }
    return c;
}

inline FormulaCheck check_scalar_float(const std::string& name, const BigRat& got, double want,
                                       double tol) {
    FormulaCheck c;
    c.name = name;
    c.worst = std::abs(to_double(got) - want) / std::max(1.0, std::abs(want));
    c.pass = c.worst <= tol;
    c.detail = "relative tolerance " + std::to_string(tol);
    return c;
}

}  // namespace detail

// Every applicable closed form checked against the enumeration. Failures are
// returned, not thrown: a red row is a finding.
inline FormulaVerification verify_formulas(const ModelConfig& cfg, int n) {
    OracleReport rep = enumerate(cfg, n);
    FormulaVerification out;
    out.cfg = cfg;
    out.n = n;
    auto& cs = out.checks;
    switch (cfg.model) {
        case Model::bernoulli: {
            const BigRat p = cfg.p->rat();
            cs.push_back(detail::check_pmf_exact("source-degree-pmf-closed", rep.source_degree,
                                                 bernoulli_degree_pmf(n, p)));
            cs.push_back(detail::check_pmf_exact("source-degree-pmf-stepwise", rep.source_degree,
                                                 bernoulli_degree_pmf_dp(n, p)));
            cs.push_back(detail::check_pmf_exact("leftmost-pmf-closed", rep.leftmost_length,
                                                 bernoulli_leftpath_pmf(n, p)));
            cs.push_back(detail::check_maps_exact("sink-degree-matches-source", rep.sink_degree,
                                                  rep.source_degree));
            cs.push_back(detail::check_maps_exact("walk-length-matches-leftmost", rep.walk_length,
                                                  rep.leftmost_length));
            cs.push_back(detail::check_maps_exact("joint-walk-degree-pmf", rep.joint_walk_degree,
                                                  bernoulli_joint_pmf(n, p)));
            cs.push_back(detail::check_scalar_exact("mean-source-degree", rep.e_source_degree,
                                                    bernoulli_degree_factorial_moment(n, 1, p)));
            BigRat m2 = 0;
            for (const auto& [d, pr] : rep.source_degree) m2 += pr * d * (d - 1);
            cs.push_back(detail::check_scalar_exact("source-degree-second-factorial-moment", m2,
                                                    bernoulli_degree_factorial_moment(n, 2, p)));
            cs.push_back(detail::check_scalar_exact("mean-path-count-recurrence", rep.e_paths,
                                                    bernoulli_expected_paths(n, p)[n]));
            cs.push_back(detail::check_scalar_exact("mean-path-count-closed", rep.e_paths,
                                                    bernoulli_expected_paths_closed(n, *cfg.p)));
            break;
        }
        case Model::binary: {
            cs.push_back(detail::check_maps_exact("walk-length-matches-leftmost", rep.walk_length,
                                                  rep.leftmost_length));
            cs.push_back(detail::check_scalar_float("mean-walk-length", rep.e_walk_length,
                                                    binary_expected_pathlength(n), 1e-10));
            cs.push_back(detail::check_scalar_float("mean-sink-degree", rep.e_sink_degree,
                                                    binary_expected_sinkdegree(n), 1e-10));
            cs.push_back(detail::check_scalar_exact("mean-path-count", rep.e_paths,
                                                    binary_expected_paths_exact(n)[n]));
            cs.push_back(detail::check_scalar_float("mean-walk-length-spectrum", rep.e_walk_length,
                                                    bary_expected_pathlength(n, 2), 1e-9));
            break;
        }
        case Model::bary:
            cs.push_back(detail::check_scalar_float("mean-walk-length-spectrum", rep.e_walk_length,
                                                    bary_expected_pathlength(n, cfg.b), 1e-9));
            break;
        case Model::preferential:
            cs.push_back(detail::check_scalar_exact("mean-source-degree", rep.e_source_degree,
                                                    preferential_expected_sourcedegree(n, *cfg.p)));
            break;
        case Model::saturation:
            cs.push_back(detail::check_scalar_exact("mean-source-degree", rep.e_source_degree,
                                                    saturation_expected_sourcedegree(n, *cfg.p)));
            break;
    }
    cs.push_back(
        detail::check_scalar_exact("history-probability-total", rep.total_probability, BigRat(1)));
    return out;
}

}  // namespace spnet
