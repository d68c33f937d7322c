#pragma once

// Finite-n distributions and expectations in closed or recurrence form.
// Everything here has two numeric routes: exact rationals whenever p is
// rational and the formula is rational in p, doubles otherwise. The closed
// forms are alternating sums with serious cancellation, which is why the
// rational route exists and is the one the oracle comparisons use.

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spnet/model.hpp"
#include "spnet/rational.hpp"
#include "spnet/scaled_float.hpp"
#include "spnet/special.hpp"
#include "spnet/spectrum.hpp"

namespace spnet {

namespace detail {

template <class T>
T from_bigint(const BigInt& v);
template <>
inline BigRat from_bigint<BigRat>(const BigInt& v) { return BigRat(v); }
template <>
inline double from_bigint<double>(const BigInt& v) { return to_double(v); }

// accumulator: plain for exact types, Neumaier-compensated for double
template <class T>
struct Acc {
    T s = 0;
    void add(const T& v) { s += v; }
    T value() const { return s; }
};
template <>
struct Acc<double> {
    CompensatedSum c;
    void add(double v) { c.add(v); }
    double value() const { return c.value(); }
};

// C(x, k) as an iterative product, field-generic
template <class T>
T gen_binomial_t(const T& x, unsigned k) {
    T r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (x - T(i)) / T(i + 1);
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bernoulli(p) model: source degree, leftmost path, joint law, mean paths
// ---------------------------------------------------------------------------

// P{D_n = m} = sum_{j=0}^{m-1} C(m-1, j) (-1)^{n+j-1} C(p(j+1) - 1, n - 1)
template <class T>
std::vector<T> bernoulli_degree_pmf_t(int n, const T& p) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<T> g(n);  // g[j] = C(p(j+1) - 1, n-1), signed below
    for (int j = 0; j < n; ++j) g[j] = detail::gen_binomial_t<T>(p * T(j + 1) - T(1), n - 1);
    std::vector<T> pmf(n + 1, T(0));
    for (int m = 1; m <= n; ++m) {
        detail::Acc<T> acc;
        for (int j = 0; j < m; ++j) {
            T term = detail::from_bigint<T>(binomial_int(m - 1, j)) * g[j];
            acc.add(((n + j - 1) % 2 == 0) ? term : -term);
        }
        pmf[m] = acc.value();
    }
    return pmf;
}

// P{L_n = m} = sum_{j=0}^{m-1} C(m-1, j) (-1)^{n+j-1} C(j - p(j+1), n - 1)
template <class T>
std::vector<T> bernoulli_leftpath_pmf_t(int n, const T& p) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<T> g(n);
    for (int j = 0; j < n; ++j) g[j] = detail::gen_binomial_t<T>(T(j) - p * T(j + 1), n - 1);
    std::vector<T> pmf(n + 1, T(0));
    for (int m = 1; m <= n; ++m) {
        detail::Acc<T> acc;
        for (int j = 0; j < m; ++j) {
            T term = detail::from_bigint<T>(binomial_int(m - 1, j)) * g[j];
            acc.add(((n + j - 1) % 2 == 0) ? term : -term);
        }
        pmf[m] = acc.value();
    }
    return pmf;
}

// Stable O(n^2) route: condition on step n - 1 -> n. The source degree rises
// by one exactly when one of its m edges is hit (m/(n-1)) and the coin says
// parallel (p). Must agree with the closed form exactly.
template <class T>
std::vector<T> bernoulli_degree_pmf_dp_t(int n, const T& p) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<T> cur(n + 1, T(0));
    cur[1] = 1;
    for (int t = 2; t <= n; ++t) {
        std::vector<T> nxt(n + 1, T(0));
        for (int m = 1; m <= t; ++m) {
            T v = cur[m] * (T(1) - p * T(m) / T(t - 1));
            if (m >= 2) v = v + cur[m - 1] * p * T(m - 1) / T(t - 1);
            nxt[m] = v;
        }
        cur = std::move(nxt);
    }
    return cur;
}

// P{L_n = m, D_n = l}; exact. Support only (zero entries pruned).
inline std::map<std::pair<int, int>, BigRat> bernoulli_joint_pmf(int n, const BigRat& p) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const BigRat q = 1 - p;
    std::vector<std::vector<BigRat>> g(n, std::vector<BigRat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g[i][j] = detail::gen_binomial_t<BigRat>(q * i + p * j, n - 1);
    std::map<std::pair<int, int>, BigRat> pmf;
    for (int m = 1; m <= n; ++m)
        for (int l = 1; l <= n; ++l) {
            BigRat acc = 0;
            for (int i = 0; i < m; ++i) {
                BigRat row = 0;
                for (int j = 0; j < l; ++j) {
                    BigRat term = BigRat(binomial_int(l - 1, j)) * g[i][j];
                    row += ((n + i + j - 1) % 2 == 0) ? term : -term;
                }
                acc += BigRat(binomial_int(m - 1, i)) * row;
            }
            if (acc != 0) pmf[{m, l}] = acc;
        }
    return pmf;
}

// r-th falling factorial moment of the source degree,
// E = r! sum_{j=0}^{r-1} C(r-1, j) (-1)^{r-1-j} C(n + p(j+1) - 1, n - 1)
template <class T>
T bernoulli_degree_factorial_moment_t(int n, int r, const T& p) {
    if (n < 1 || r < 0) throw std::invalid_argument("need n >= 1, r >= 0");
    if (r == 0) return T(1);
    detail::Acc<T> acc;
    for (int j = 0; j < r; ++j) {
        T term = detail::from_bigint<T>(binomial_int(r - 1, j)) *
                 binomial_shifted(p * T(j + 1), n - 1);
        acc.add(((r - 1 - j) % 2 == 0) ? term : -term);
    }
    return detail::from_bigint<T>(factorial(r)) * acc.value();
}

// E(P_n) for n = 1..n_max via the recurrence
// (n-1) E(P_n) = 2p sum_{k<n} E(P_k) + (1-p) sum_{k<n} E(P_k) E(P_{n-k});
// index 0 unused.
template <class T>
std::vector<T> bernoulli_expected_paths_t(int n_max, const T& p) {
    if (n_max < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<T> e(n_max + 1, T(0));
    e[1] = 1;
    T prefix = e[1];
    for (int n = 2; n <= n_max; ++n) {
        T conv = 0;
        for (int k = 1; k < n; ++k) conv = conv + e[k] * e[n - k];
        e[n] = (T(2) * p * prefix + (T(1) - p) * conv) / T(n - 1);
        prefix = prefix + e[n];
    }
    return e;
}

// Closed forms for E(P_n). p != 1/2:
//   sum_{j=0}^{n-1} (-1)^{n+j-1} C((2p-1)j - 1, n-1) sum_{k=0}^{n-1} C(k, j) t^k,
// t = p/(2p-1). At p = 1/2 the complete Bell polynomials take over, with
// x_i = -(i-1)! H_{n-1}^{(i)}.
inline BigRat bernoulli_expected_paths_closed(int n, const ProbParam& p) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const BigRat pr = p.rat();
    if (p.is_half()) {
        std::vector<BigRat> xs(n - 1);
        for (int i = 1; i <= n - 1; ++i)
            xs[i - 1] = -BigRat(factorial(i - 1)) * harmonic_rat(n - 1, i);
        std::vector<BigRat> bell = complete_bell(xs);
        BigRat acc = 0;
        BigRat w = 1;  // (-1/2)^k
        for (int k = 0; k <= n - 1; ++k) {
            acc += w * bell[k];
            w *= BigRat(-1, 2);
        }
        return acc;
    }
    const BigRat s = 2 * pr - 1;
    const BigRat t = pr / s;
    std::vector<BigRat> tp(n);  // t^k
    tp[0] = 1;
    for (int k = 1; k < n; ++k) tp[k] = tp[k - 1] * t;
    BigRat acc = 0;
    for (int j = 0; j < n; ++j) {
        BigRat inner = 0;
        for (int k = j; k < n; ++k) inner += BigRat(binomial_int(k, j)) * tp[k];
        BigRat outer = detail::gen_binomial_t<BigRat>(s * j - 1, n - 1) * inner;
        acc += ((n + j - 1) % 2 == 0) ? outer : -outer;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Binary model: mean leftmost path, mean sink degree, mean path count
// ---------------------------------------------------------------------------

// E(L_n) = n [ (3+s5)/(2 s5) C(n + (s5-3)/2, n) - (3-s5)/(2 s5) C(n - (s5+3)/2, n) ]
inline double binary_expected_pathlength(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const double s5 = std::sqrt(5.0);
    double a = binomial_shifted((s5 - 3.0) / 2.0, n);
    double b = binomial_shifted(-(s5 + 3.0) / 2.0, n);
    return n * ((3.0 + s5) / (2.0 * s5) * a - (3.0 - s5) / (2.0 * s5) * b);
}

// E(D_n) = (1+s2)/2 C(n + s2 - 2, n-1) - (s2-1)/2 C(n - s2 - 2, n-1)
inline double binary_expected_sinkdegree(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const double s2 = std::sqrt(2.0);
    double a = binomial_shifted(s2 - 1.0, n - 1);
    double b = binomial_shifted(-s2 - 1.0, n - 1);
    return (1.0 + s2) / 2.0 * a - (s2 - 1.0) / 2.0 * b;
}

// E(P_n) for the binary rule via
//   (n-1)(n-2) E_n = sum_{k=2}^{n-1} (k-1) E_k (1 + E_{n-k}),  E_1 = 1, E_2 = 2.
// Exact rationals; fine up to a few hundred terms.
inline std::vector<BigRat> binary_expected_paths_exact(int n_max) {
    if (n_max < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<BigRat> e(n_max + 1, BigRat(0));
    e[1] = 1;
    if (n_max >= 2) e[2] = 2;
    for (int n = 3; n <= n_max; ++n) {
        BigRat acc = 0;
        for (int k = 2; k < n; ++k) acc += BigRat(k - 1) * e[k] * (1 + e[n - k]);
        e[n] = acc / BigRat(BigInt(n - 1) * (n - 2));
    }
    return e;
}

// Same recurrence in mantissa/exponent form; the values grow like rho^{-n}
// and overflow doubles near n ~ 5000, this stays finite to n = 10^4 and past.
inline std::vector<ScaledFloat> binary_expected_paths(int n_max) {
    if (n_max < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<ScaledFloat> e(n_max + 1);
    e[1] = ScaledFloat(1.0);
    if (n_max >= 2) e[2] = ScaledFloat(2.0);
    const ScaledFloat one(1.0);
    for (int n = 3; n <= n_max; ++n) {
        ScaledFloat acc(0.0);
        for (int k = 2; k < n; ++k)
            acc += e[k] * (one + e[n - k]) * static_cast<double>(k - 1);
        acc *= 1.0 / (static_cast<double>(n - 1) * (n - 2));
        e[n] = acc;
    }
    return e;
}

// ---------------------------------------------------------------------------
// Saturation model (weight 2 - attractions): source degree, discrete limit
// ---------------------------------------------------------------------------

// E(D_n) = (1 - C(n + 2p - 1, n)) / (1 - 2p) for p != 1/2, H_n at p = 1/2
inline BigRat saturation_expected_sourcedegree(int n, const ProbParam& p) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (p.is_half()) return harmonic_rat(n);
    const BigRat pr = p.rat();
    return (1 - binomial_shifted_rat(2 * pr - 1, n)) / (1 - 2 * pr);
}

inline double saturation_expected_sourcedegree_f(int n, double p) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (std::abs(p - 0.5) <= 1e-12)
        throw std::invalid_argument(
            "p is a float within 1e-12 of 1/2; pass p as a ratio so the formula branch is "
            "unambiguous");
    return (1.0 - binomial_shifted(2.0 * p - 1.0, n)) / (1.0 - 2.0 * p);
}

// limit law of the source degree for p <= 1/2 (defective for p > 1/2):
// p_m = Catalan(m) p^{m-1} (1-p)^{m+1}
inline BigRat saturation_limit_pmf(int m, const BigRat& p) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    BigRat cat = BigRat(binomial_int(2 * m, m)) / (m + 1);
    BigRat pw = 1;
    for (int i = 0; i < m - 1; ++i) pw *= p;
    BigRat qw = 1;
    for (int i = 0; i < m + 1; ++i) qw *= 1 - p;
    return cat * pw * qw;
}

// total mass of the limit pmf: the Catalan generating function evaluated in
// exact arithmetic, sqrt((1-2p)^2) resolved to |1-2p| by rational comparison.
// 1 for p <= 1/2, ((1-p)/p)^2 above.
inline BigRat saturation_limit_mass(const BigRat& p) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie strictly in (0,1)");
    BigRat abs_term = 1 - 2 * p;
    if (abs_term < 0) abs_term = -abs_term;
    return (1 - p) / p * ((1 - abs_term) / (2 * p * (1 - p)) - 1);
}

// ---------------------------------------------------------------------------
// Preferential model (weight 1 + attractions): source degree
// ---------------------------------------------------------------------------

// E(D_n) = (1 + X_n)/(1 + p) with X_1 = p, X_n = X_{n-1} (2n + p - 2)/(2n - 3):
// the coefficient-extraction ratios of the closed generating function,
// already multiplied through by n!/T_n.
template <class T>
T preferential_expected_sourcedegree_t(int n, const T& p) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    T x = p;
    for (int k = 2; k <= n; ++k) x = x * (T(2 * k - 2) + p) / T(2 * k - 3);
    return (T(1) + x) / (T(1) + p);
}

inline BigRat preferential_expected_sourcedegree(int n, const ProbParam& p) {
    return preferential_expected_sourcedegree_t<BigRat>(n, p.rat());
}
inline double preferential_expected_sourcedegree_f(int n, double p) {
    return preferential_expected_sourcedegree_t<double>(n, p);
}

// ---------------------------------------------------------------------------
// convenience dispatchers used by the oracle comparisons and the CLI
// ---------------------------------------------------------------------------

inline std::vector<BigRat> bernoulli_degree_pmf(int n, const BigRat& p) {
    return bernoulli_degree_pmf_t<BigRat>(n, p);
}
inline std::vector<BigRat> bernoulli_degree_pmf_dp(int n, const BigRat& p) {
    return bernoulli_degree_pmf_dp_t<BigRat>(n, p);
}
inline std::vector<BigRat> bernoulli_leftpath_pmf(int n, const BigRat& p) {
    return bernoulli_leftpath_pmf_t<BigRat>(n, p);
}
inline std::vector<BigRat> bernoulli_expected_paths(int n, const BigRat& p) {
    return bernoulli_expected_paths_t<BigRat>(n, p);
}
inline BigRat bernoulli_degree_factorial_moment(int n, int r, const BigRat& p) {
    return bernoulli_degree_factorial_moment_t<BigRat>(n, r, p);
}

}  // namespace spnet
