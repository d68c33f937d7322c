#pragma once

// Sampling harness for large n. Grows networks trial by trial, accumulates
// per-statistic summaries (raw moments, histogram, scaled power sums) and
// compares the scaled moments against the documented limit laws.
//
// Determinism contract: worker w draws from Rng::stream(seed, w), trial t
// belongs to worker t mod W, partials merge in worker order. Fixed
// (seed, worker count, stats order) gives a bit-identical summary, threaded
// or not.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "spnet/asymptotics.hpp"
#include "spnet/exact.hpp"
#include "spnet/model.hpp"
#include "spnet/network.hpp"
#include "spnet/rng.hpp"
#include "spnet/spectrum.hpp"

namespace spnet {

enum class Stat {
    source_degree,
    sink_degree,
    leftmost_length,
    walk_length,
    log2_path_count,
    path_count,  // exact value; n <= 60 only, counts blow up exponentially
};

inline const char* stat_name(Stat s) {
    switch (s) {
        case Stat::source_degree: return "source-degree";
        case Stat::sink_degree: return "sink-degree";
        case Stat::leftmost_length: return "leftmost-length";
        case Stat::walk_length: return "walk-length";
        case Stat::log2_path_count: return "log2-path-count";
        case Stat::path_count: return "path-count";
    }
    throw std::logic_error("bad stat");
}

inline Stat parse_stat(const std::string& s) {
    for (Stat k : {Stat::source_degree, Stat::sink_degree, Stat::leftmost_length,
                   Stat::walk_length, Stat::log2_path_count, Stat::path_count})
        if (s == stat_name(k)) return k;
    throw std::invalid_argument("unknown stat '" + s + "'");
}

// Scaling exponent gamma of the statistic's limit law, 0 when none is on
// record. Lengths scale with n^{1-p} (Bernoulli) or the spectrum root;
// degrees with n^p, n^{sqrt2 - 1}, n^{(p+1)/2} or n^{2p-1}.
inline double scaling_exponent(const ModelConfig& cfg, Stat s) {
    const bool degree = s == Stat::source_degree || s == Stat::sink_degree;
    const bool length = s == Stat::leftmost_length || s == Stat::walk_length;
    switch (cfg.model) {
        case Model::bernoulli:
            if (degree) return cfg.p->value();
            if (length) return 1.0 - cfg.p->value();
            return 0.0;
        case Model::binary:
        case Model::bary:
            if (length) return bary_spectrum(cfg.saturation_bound()).roots[0].real();
            if (degree && cfg.saturation_bound() == 2) return std::numbers::sqrt2 - 1.0;
            return 0.0;
        case Model::preferential:
            if (s == Stat::source_degree) return (cfg.p->value() + 1.0) / 2.0;
            return 0.0;
        case Model::saturation:
            if (s == Stat::source_degree && cfg.p->value() > 0.5)
                return 2.0 * cfg.p->value() - 1.0;
            return 0.0;
    }
    throw std::logic_error("bad model");
}

// One statistic over all trials. Histogram key = llround(value * bin_scale);
// mass equals the trial count. scaled_sum[r-1] carries sum of (X/n^gamma)^r.
struct StatSummary {
    Stat stat = Stat::source_degree;
    double exponent = 0.0;
    int bin_scale = 1;
    double mean = 0.0;
    double variance = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;
    std::map<long long, std::uint64_t> histogram;
    std::array<long double, 6> scaled_sum{};

    // empirical scaled moment and its standard error, r = 1..3
    double scaled_moment(int r, std::uint64_t trials) const {
        if (r < 1 || r > 6) throw std::invalid_argument("moment order out of range");
        return static_cast<double>(scaled_sum[r - 1] / static_cast<long double>(trials));
    }
    double scaled_moment_se(int r, std::uint64_t trials) const {
        if (r < 1 || 2 * r > 6) throw std::invalid_argument("moment order out of range");
        long double m1 = scaled_sum[r - 1] / static_cast<long double>(trials);
        long double m2 = scaled_sum[2 * r - 1] / static_cast<long double>(trials);
        long double var = m2 - m1 * m1;
        if (var < 0) var = 0;
        return std::sqrt(static_cast<double>(var) / static_cast<double>(trials));
    }
};

struct SimSummary {
    ModelConfig cfg;
    int n = 1;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::vector<StatSummary> stats;

    const StatSummary& operator[](Stat s) const {
        for (const auto& t : stats)
            if (t.stat == s) return t;
        throw std::invalid_argument(std::string("summary holds no ") + stat_name(s));
    }
};

namespace detail {

struct StatAcc {
    long double sum = 0, sumsq = 0;
    std::array<long double, 6> scaled{};
    std::map<long long, std::uint64_t> hist;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double x, double y, int bin_scale) {
        sum += x;
        sumsq += static_cast<long double>(x) * x;
        long double yp = 1;
        for (auto& s : scaled) {
            yp *= y;
            s += yp;
        }
        hist[std::llround(x * bin_scale)] += 1;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }

    void merge(const StatAcc& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        for (std::size_t r = 0; r < scaled.size(); ++r) scaled[r] += o.scaled[r];
        for (const auto& [k, c] : o.hist) hist[k] += c;
        lo = std::min(lo, o.lo);
        hi = std::max(hi, o.hi);
    }
};

inline double measure(Stat s, const SPNetwork& net, Rng& rng) {
    switch (s) {
        case Stat::source_degree: return net.source_degree();
        case Stat::sink_degree: return net.sink_degree();
        case Stat::leftmost_length: return net.leftmost_path_length();
        case Stat::walk_length: return random_path_length(net, rng);
        case Stat::log2_path_count: return count_paths_scaled(net).log2();
        case Stat::path_count: return to_double(count_paths(net));
    }
    throw std::logic_error("bad stat");
}

}  // namespace detail

inline constexpr std::uint64_t default_sim_budget = 1ull << 31;  // trials * n

inline SimSummary simulate(const ModelConfig& cfg, int n, std::uint64_t trials,
                           std::uint64_t seed, const std::vector<Stat>& stats, int workers = 1,
                           std::uint64_t budget = default_sim_budget) {
    cfg.validate();
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (stats.empty()) throw std::invalid_argument("no statistics requested");
    if (trials > budget / static_cast<std::uint64_t>(n))
        throw std::length_error("simulation budget exceeded: trials * n > " +
                                std::to_string(budget));
    for (Stat s : stats)
        if (s == Stat::path_count && n > 60)
            throw std::invalid_argument("exact path counts blow up: use log2-path-count for n > 60");

    const std::size_t k = stats.size();
    std::vector<int> bin_scale(k);
    for (std::size_t i = 0; i < k; ++i)
        bin_scale[i] = stats[i] == Stat::log2_path_count ? 8 : 1;

    const int w_count = workers;
    std::vector<std::vector<detail::StatAcc>> partial(w_count, std::vector<detail::StatAcc>(k));
    auto run_worker = [&](int w) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(w));
        GrowthProcess proc(cfg);
        auto& accs = partial[w];
        const double scale_n = static_cast<double>(n);
        std::vector<double> nscale(k);
        for (std::size_t i = 0; i < k; ++i)
            nscale[i] = std::pow(scale_n, scaling_exponent(cfg, stats[i]));
        for (std::uint64_t t = static_cast<std::uint64_t>(w); t < trials;
             t += static_cast<std::uint64_t>(w_count)) {
            proc.reset();
            proc.grow_to(n, rng);
            for (std::size_t i = 0; i < k; ++i) {
                double x = detail::measure(stats[i], proc.network(), rng);
                accs[i].add(x, x / nscale[i], bin_scale[i]);
            }
        }
    };
    if (w_count == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(w_count);
        for (int w = 0; w < w_count; ++w) pool.emplace_back(run_worker, w);
        for (auto& th : pool) th.join();
    }

    SimSummary out;
    out.cfg = cfg;
    out.n = n;
    out.trials = trials;
    out.seed = seed;
    out.workers = w_count;
    out.stats.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        detail::StatAcc acc;
        for (int w = 0; w < w_count; ++w) acc.merge(partial[w][i]);
        auto& s = out.stats[i];
        s.stat = stats[i];
        s.exponent = scaling_exponent(cfg, stats[i]);
        s.bin_scale = bin_scale[i];
        const long double nt = static_cast<long double>(trials);
        s.mean = static_cast<double>(acc.sum / nt);
        long double var = acc.sumsq / nt - (acc.sum / nt) * (acc.sum / nt);
        s.variance = var > 0 ? static_cast<double>(var) : 0.0;
        s.min_value = acc.lo;
        s.max_value = acc.hi;
        s.histogram = std::move(acc.hist);
        s.scaled_sum = acc.scaled;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Limit-law comparisons
// ---------------------------------------------------------------------------

enum class LimitLaw {
    mittag_leffler_degree,  // Bernoulli source/sink degree over n^p
    mittag_leffler_length,  // Bernoulli path lengths over n^{1-p}
    binary_length,
    binary_degree,
    preferential_degree,
    saturation_degree,
};

inline const char* limit_law_name(LimitLaw l) {
    switch (l) {
        case LimitLaw::mittag_leffler_degree: return "mittag-leffler-degree";
        case LimitLaw::mittag_leffler_length: return "mittag-leffler-length";
        case LimitLaw::binary_length: return "binary-length";
        case LimitLaw::binary_degree: return "binary-degree";
        case LimitLaw::preferential_degree: return "preferential-degree";
        case LimitLaw::saturation_degree: return "saturation-degree";
    }
    throw std::logic_error("bad law");
}

inline LimitLaw parse_limit_law(const std::string& s) {
    for (LimitLaw l : {LimitLaw::mittag_leffler_degree, LimitLaw::mittag_leffler_length,
                       LimitLaw::binary_length, LimitLaw::binary_degree,
                       LimitLaw::preferential_degree, LimitLaw::saturation_degree})
        if (s == limit_law_name(l)) return l;
    throw std::invalid_argument("unknown limit law '" + s + "'");
}

inline Stat default_stat_for(LimitLaw l) {
    switch (l) {
        case LimitLaw::mittag_leffler_degree: return Stat::source_degree;
        case LimitLaw::mittag_leffler_length: return Stat::walk_length;
        case LimitLaw::binary_length: return Stat::walk_length;
        case LimitLaw::binary_degree: return Stat::sink_degree;
        case LimitLaw::preferential_degree: return Stat::source_degree;
        case LimitLaw::saturation_degree: return Stat::source_degree;
    }
    throw std::logic_error("bad law");
}

struct MomentComparison {
    int r = 0;
    double sample = 0.0;
    double limit = 0.0;
    double se = 0.0;
    double z = 0.0;
};

// One histogram cell of the scaled statistic against the limit density (or
// the limit pmf, in the discrete saturation regime). z treats the cell count
// as Poisson.
struct OverlayRow {
    double x = 0.0;
    double width = 0.0;
    double empirical = 0.0;
    double expected = 0.0;
    double z = 0.0;
};

struct LimitComparison {
    LimitLaw law;
    Stat stat;
    double exponent = 0.0;
    std::vector<MomentComparison> moments;  // r = 1..3
    std::vector<OverlayRow> overlay;
};

namespace detail {

inline void require_model(const ModelConfig& cfg, Model m, const char* law) {
    if (cfg.model != m)
        throw std::invalid_argument(std::string(law) + " does not apply to the " +
                                    model_name(cfg.model) + " model");
}

// The weighted-model theorems scale the degree by a constant on top of
// n^gamma. The sampler's scaled sums carry X / n^gamma alone, so the
// constant moves to the limit side: E((X/n^gamma)^r) -> E(D^r) / c^r.
inline double law_prefactor(LimitLaw law, const ModelConfig& cfg) {
    switch (law) {
        case LimitLaw::preferential_degree: {
            const double p = cfg.p->value();
            return (p + 1) * (p + 1) / (p * std::pow(2.0, p + 1));
        }
        case LimitLaw::saturation_degree: {
            const double p = cfg.p->value();
            if (p > 0.5) return (2 * p - 1) * (2 * p - 1) / (p * p);
            return 1.0;
        }
        default: return 1.0;
    }
}

// Catalan(m) p^{m-1} (1-p)^{m+1} in doubles; works for float p too
inline double saturation_pmf_d(long long m, double p) {
    double catalan = 1.0;
    for (long long k = 0; k < m; ++k) catalan *= 2.0 * (2 * k + 1) / (k + 2);
    return catalan * std::pow(p, static_cast<double>(m - 1)) *
           std::pow(1.0 - p, static_cast<double>(m + 1));
}

inline double limit_moment(LimitLaw law, const ModelConfig& cfg, int r) {
    switch (law) {
        case LimitLaw::mittag_leffler_degree:
            return mittag_leffler_moment(r, cfg.p->value());
        case LimitLaw::mittag_leffler_length:
            return mittag_leffler_moment(r, 1.0 - cfg.p->value());
        case LimitLaw::binary_length: return binary_length_limit_moment(r);
        case LimitLaw::binary_degree: return binary_degree_limit_moment(r);
        case LimitLaw::preferential_degree:
            return preferential_limit_moment(r, cfg.p->value());
        case LimitLaw::saturation_degree: {
            if (cfg.p->is_half())
                throw std::invalid_argument("saturation degree has no limit law at p = 1/2");
            double p = cfg.p->value();
            if (p > 0.5) return saturation_limit_moment(r, p);
            // subcritical: the degree converges without scaling to the law
            // with pmf Catalan(m-1) p^{m-1} (1-p)^{m+1}; geometric tails, so
            // the moment series is summable directly
            double acc = 0, term = 1;
            for (long long m = 1; term > 1e-16 * acc || m < 8; ++m) {
                term = std::pow(static_cast<double>(m), r) * saturation_pmf_d(m, p);
                acc += term;
                if (m > 4000) throw std::runtime_error("saturation moment series stalled");
            }
            return acc;
        }
    }
    throw std::logic_error("bad law");
}

}  // namespace detail

inline LimitComparison compare_limit(const SimSummary& sum, LimitLaw law) {
    const ModelConfig& cfg = sum.cfg;
    switch (law) {
        case LimitLaw::mittag_leffler_degree:
        case LimitLaw::mittag_leffler_length:
            detail::require_model(cfg, Model::bernoulli, limit_law_name(law));
            break;
        case LimitLaw::binary_length:
        case LimitLaw::binary_degree:
            if (!(cfg.model == Model::binary || (cfg.model == Model::bary && cfg.b == 2)))
                throw std::invalid_argument(std::string(limit_law_name(law)) +
                                            " needs the binary rule");
            break;
        case LimitLaw::preferential_degree:
            detail::require_model(cfg, Model::preferential, limit_law_name(law));
            break;
        case LimitLaw::saturation_degree:
            detail::require_model(cfg, Model::saturation, limit_law_name(law));
            break;
    }

    // a law accepts any statistic it is proved for: both Bernoulli degrees
    // are equidistributed, so are the two path-length readings
    auto accepts = [&](Stat s) {
        switch (law) {
            case LimitLaw::mittag_leffler_degree:
                return s == Stat::source_degree || s == Stat::sink_degree;
            case LimitLaw::mittag_leffler_length:
            case LimitLaw::binary_length:
                return s == Stat::walk_length || s == Stat::leftmost_length;
            case LimitLaw::binary_degree: return s == Stat::sink_degree;
            case LimitLaw::preferential_degree:
            case LimitLaw::saturation_degree: return s == Stat::source_degree;
        }
        return false;
    };
    const StatSummary* picked = nullptr;
    Stat preferred = default_stat_for(law);
    for (const auto& s : sum.stats)
        if (s.stat == preferred) picked = &s;
    if (!picked)
        for (const auto& s : sum.stats)
            if (accepts(s.stat)) {
                picked = &s;
                break;
            }
    if (!picked)
        throw std::invalid_argument(std::string("summary holds no statistic for ") +
                                    limit_law_name(law));

    LimitComparison out;
    out.law = law;
    out.stat = picked->stat;
    out.exponent = picked->exponent;
    const double prefactor = detail::law_prefactor(law, cfg);
    for (int r = 1; r <= 3; ++r) {
        MomentComparison m;
        m.r = r;
        m.sample = picked->scaled_moment(r, sum.trials);
        m.limit = detail::limit_moment(law, cfg, r) / std::pow(prefactor, r);
        m.se = picked->scaled_moment_se(r, sum.trials);
        m.z = m.se > 0 ? (m.sample - m.limit) / m.se : 0.0;
        out.moments.push_back(m);
    }

    const double nt = static_cast<double>(sum.trials);
    if (law == LimitLaw::mittag_leffler_degree) {
        // density overlay: scaled histogram cells vs the limit density
        const double p = cfg.p->value();
        const double npow = std::pow(sum.n, p);
        const double xmax = picked->max_value / npow;
        const int cells = 40;
        const double width = xmax / cells > 0 ? xmax / cells : 1.0;
        std::vector<std::uint64_t> counts(cells, 0);
        for (const auto& [key, c] : picked->histogram) {
            double x = static_cast<double>(key) / picked->bin_scale / npow;
            int cell = std::min(cells - 1, static_cast<int>(x / width));
            counts[cell] += c;
        }
        for (int i = 0; i < cells; ++i) {
            OverlayRow row;
            row.x = (i + 0.5) * width;
            row.width = width;
            row.empirical = static_cast<double>(counts[i]) / (nt * width);
            // the density integrator refuses cells where cancellation ate all
            // digits (large x, p near 1); report those honestly as NaN
            try {
                row.expected = mittag_leffler_density(row.x, p);
                double expect_count = row.expected * width * nt;
                row.z = expect_count > 0 ? (static_cast<double>(counts[i]) - expect_count) /
                                               std::sqrt(expect_count)
                                         : 0.0;
            } catch (const std::runtime_error&) {
                row.expected = std::numeric_limits<double>::quiet_NaN();
                row.z = 0.0;
            }
            out.overlay.push_back(row);
        }
    }
    if (law == LimitLaw::saturation_degree && cfg.p->value() < 0.5) {
        // discrete overlay: empirical pmf vs the limit pmf
        const double p = cfg.p->value();
        long long mmax = picked->histogram.empty() ? 1 : picked->histogram.rbegin()->first;
        for (long long m = 1; m <= mmax; ++m) {
            OverlayRow row;
            row.x = static_cast<double>(m);
            row.width = 1.0;
            auto it = picked->histogram.find(m);
            row.empirical = it == picked->histogram.end()
                                ? 0.0
                                : static_cast<double>(it->second) / nt;
            row.expected = detail::saturation_pmf_d(m, p);
            double se = std::sqrt(row.expected * (1.0 - row.expected) / nt);
            row.z = se > 0 ? (row.empirical - row.expected) / se : 0.0;
            out.overlay.push_back(row);
        }
    }
    return out;
}

}  // namespace spnet
