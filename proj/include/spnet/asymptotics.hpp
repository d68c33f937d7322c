#pragma once

// Limit laws and growth constants: Mittag-Leffler moments and density,
// the moment recurrences of the binary-rule limits (each in two
// algebraically independent forms, kept separate on purpose so they can be
// checked against each other), the plane-recursive and saturation moment
// coefficient sequences, and the decay rate of the mean path count.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spnet/exact.hpp"
#include "spnet/model.hpp"
#include "spnet/rational.hpp"
#include "spnet/scaled_float.hpp"
#include "spnet/special.hpp"

namespace spnet {

// ---------------------------------------------------------------------------
// Mittag-Leffler(p) limit law (Bernoulli source degree, scaled by n^p)
// ---------------------------------------------------------------------------

// r-th moment r!/Gamma(rp + 1)
inline double mittag_leffler_moment(int r, double p) {
    if (r < 0 || !(p > 0.0 && p < 1.0)) throw std::invalid_argument("need r >= 0, 0 < p < 1");
    return to_double(factorial(r)) / gamma_fn(r * p + 1.0);
}

// density on (0, inf),
//   f(x) = (1/(pi p)) int_0^inf exp(-w^{1/p} - x w cos(pi p))
//                              sin(pi p - x w sin(pi p)) dw.
// The integrand oscillates with w-period 2 pi / (x sin(pi p)), so the range
// is cut into panels no wider than a quarter period before the adaptive
// rule sees them. For p > 1/2 the cosine term is positive in the exponent
// and the integrand swings up to exp(E*) before the w^{1/p} term wins; the
// result is the tiny difference of huge oscillating lobes, so each panel's
// tolerance is tied to its own magnitude (tightening past the cancellation
// floor just recurses forever), and amplification beyond exp(200) is
// refused outright since no digits of the true value would survive.
inline double mittag_leffler_density(double x, double p, double tol = 1e-11) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("need 0 < p < 1");
    if (!(x > 0.0)) throw std::invalid_argument("density argument must be positive");
    const double pip = std::numbers::pi * p;
    const double c = std::cos(pip), s = std::sin(pip);
    auto exponent = [&](double w) { return -std::pow(w, 1.0 / p) - x * w * c; };
    auto rising = [&](double w) {
        return -(1.0 / p) * std::pow(w, 1.0 / p - 1.0) - x * c > 0.0;
    };
    double peak_w = 0.0, peak_e = 0.0;
    if (c < 0.0) {
        peak_w = std::pow(p * (-c) * x, p / (1.0 - p));
        peak_e = exponent(peak_w);
        if (peak_e > 200.0)
            throw std::runtime_error(
                "density integrand amplification exceeds double-precision cancellation range");
    }
    double W = 1.0;
    while (rising(W) || exponent(W) > -43.0) {
        W *= 2.0;
        if (W > 1e9) throw std::runtime_error("integration cutoff not found");
    }
    auto f = [&](double w) { return std::exp(exponent(w)) * std::sin(pip - x * w * s); };
    int panels = static_cast<int>(std::ceil(W * x * s / std::numbers::pi)) * 4 + 8;
    CompensatedSum total;
    const double per_panel = tol / panels;
    for (int i = 0; i < panels; ++i) {
        double a = W * i / panels, b = W * (i + 1) / panels;
        double emax = std::max(exponent(a), exponent(b));
        if (peak_w > a && peak_w < b) emax = std::max(emax, peak_e);
        double panel_tol = std::max(per_panel, 2e-15 * std::exp(emax) * (b - a));
        total.add(adaptive_simpson(f, a, b, panel_tol));
    }
    return total.value() / (std::numbers::pi * p);
}

namespace detail {

template <std::size_t N>
using Arr = std::array<double, N>;

template <std::size_t N>
Arr<N> simpson_rule(double a, double b, const Arr<N>& fa, const Arr<N>& fm,
                    const Arr<N>& fb) {
    Arr<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = (b - a) / 6.0 * (fa[i] + 4.0 * fm[i] + fb[i]);
    return r;
}

template <std::size_t N, class F>
Arr<N> simpson_rec(F& f, double a, double b, const Arr<N>& fa, const Arr<N>& fm,
                   const Arr<N>& fb, const Arr<N>& whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    Arr<N> fl = f(0.5 * (a + m)), fr = f(0.5 * (m + b));
    Arr<N> left = simpson_rule(a, m, fa, fl, fm);
    Arr<N> right = simpson_rule(m, b, fm, fr, fb);
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        err = std::max(err, std::abs(left[i] + right[i] - whole[i]));
    Arr<N> out;
    if (depth <= 0 || err <= 15.0 * tol) {
        for (std::size_t i = 0; i < N; ++i)
            out[i] = left[i] + right[i] + (left[i] + right[i] - whole[i]) / 15.0;
        return out;
    }
    Arr<N> lo = simpson_rec(f, a, m, fa, fl, fm, left, tol / 2.0, depth - 1);
    Arr<N> hi = simpson_rec(f, m, b, fm, fr, fb, right, tol / 2.0, depth - 1);
    for (std::size_t i = 0; i < N; ++i) out[i] = lo[i] + hi[i];
    return out;
}

// componentwise adaptive Simpson for a small bundle of integrands sharing
// one expensive kernel evaluation
template <std::size_t N, class F>
Arr<N> adaptive_simpson_arr(F f, double a, double b, double tol, int max_depth = 40) {
    Arr<N> fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    Arr<N> whole = simpson_rule(a, b, fa, fm, fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace detail

namespace detail {

// Markov bound on the moment tail: int_X^inf x^3 f(x) dx <= E(X^k)/X^{k-3},
// minimized over k. Uses only the closed moment formula, never the noisy
// numeric density, so the cutoff search is exact and cheap.
inline double ml_tail_bound(double X, double p) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 4; k <= 120; k += 2) {
        double lg = std::lgamma(k + 1.0) - std::lgamma(k * p + 1.0) - (k - 3) * std::log(X);
        best = std::min(best, std::exp(lg));
    }
    return best;
}

}  // namespace detail

// numeric mass and first moments of the Mittag-Leffler density, one shared
// integration pass: returns {int f, int x f, int x^2 f, int x^3 f}. The
// truncation point is certified through the moment tail bound; past
// p ~ 3/4 no certifiable cutoff fits inside the density's usable range and
// the density call itself throws.
inline std::array<double, 4> mittag_leffler_density_moments(double p, double tol = 2e-7) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("need 0 < p < 1");
    double X = 4.0;
    while (detail::ml_tail_bound(X, p) > 1e-8) {
        X += X < 8.0 ? 1.0 : X / 4.0;
        if (X > 4096.0) throw std::runtime_error("moment cutoff not found");
    }
    auto kernel = [&](double x) -> std::array<double, 4> {
        if (x <= 0.0) return {1.0 / gamma_fn(1.0 - p), 0.0, 0.0, 0.0};
        double fx = mittag_leffler_density(x, p);
        return {fx, x * fx, x * x * fx, x * x * x * fx};
    };
    return detail::adaptive_simpson_arr<4>(kernel, 0.0, X, tol);
}

// ---------------------------------------------------------------------------
// binary model limits: moment coefficient recurrences, both routes
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::vector<long double>> pascal(int n) {
    std::vector<std::vector<long double>> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        c[i].assign(i + 1, 1.0L);
        for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

}  // namespace detail

// path length, scaled by n^phi with phi = (sqrt(5)-1)/2. Plain convolution:
// c_r = [sum_{k=1}^{r-1} (k phi + 1) c_k c_{r-k}] / ((r-1) phi ((r+1) phi + 1))
inline std::vector<long double> binary_length_limit_cr(int r_max) {
    const long double phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
    std::vector<long double> c(r_max + 1);
    c[0] = 1.0L;
    if (r_max >= 1) c[1] = (std::sqrt(5.0L) + 5.0L) / 10.0L;
    for (int r = 2; r <= r_max; ++r) {
        long double s = 0.0L;
        for (int k = 1; k < r; ++k) s += (k * phi + 1.0L) * c[k] * c[r - k];
        c[r] = s / ((r - 1) * phi * ((r + 1) * phi + 1.0L));
    }
    return c;
}

// same limit reached through the factorial-moment singular expansion, where
// the convolution carries binomial weights. Equal to r! times the plain
// sequence; computed independently so that equality stays a real check.
inline std::vector<long double> binary_length_limit_cr_dual(int r_max) {
    const long double phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
    auto bin = detail::pascal(r_max);
    std::vector<long double> c(r_max + 1);
    c[0] = 1.0L;
    if (r_max >= 1) c[1] = (std::sqrt(5.0L) + 5.0L) / 10.0L;
    for (int r = 2; r <= r_max; ++r) {
        long double s = 0.0L;
        for (int k = 1; k < r; ++k) s += bin[r][k] * (k * phi + 1.0L) * c[k] * c[r - k];
        c[r] = s / ((r - 1) * phi * ((r + 1) * phi + 1.0L));
    }
    return c;
}

// r-th moment of the path length limit: r! c_r / Gamma(r phi + 1)
inline double binary_length_limit_moment(int r) {
    if (r < 0) throw std::invalid_argument("r must be >= 0");
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto c = binary_length_limit_cr(r);
    return to_double(factorial(r)) * static_cast<double>(c[r]) / gamma_fn(r * phi + 1.0);
}

// sink degree, scaled by n^{sqrt(2)-1}:
// c_r = [sum_{k=1}^{r-1} c_k c_{r-k}] / ((r (sqrt(2)-1) + 1)^2 - 2)
inline std::vector<long double> binary_degree_limit_cr(int r_max) {
    const long double s2 = std::sqrt(2.0L);
    std::vector<long double> c(r_max + 1);
    c[0] = 1.0L;
    if (r_max >= 1) c[1] = (1.0L + s2) / (2.0L * s2);
    for (int r = 2; r <= r_max; ++r) {
        long double s = 0.0L;
        for (int k = 1; k < r; ++k) s += c[k] * c[r - k];
        long double d = r * (s2 - 1.0L) + 1.0L;
        c[r] = s / (d * d - 2.0L);
    }
    return c;
}

inline std::vector<long double> binary_degree_limit_cr_dual(int r_max) {
    const long double s2 = std::sqrt(2.0L);
    auto bin = detail::pascal(r_max);
    std::vector<long double> c(r_max + 1);
    c[0] = 1.0L;
    if (r_max >= 1) c[1] = (1.0L + s2) / (2.0L * s2);
    for (int r = 2; r <= r_max; ++r) {
        long double s = 0.0L;
        for (int k = 1; k < r; ++k) s += bin[r][k] * c[k] * c[r - k];
        long double d = r * (s2 - 1.0L) + 1.0L;
        c[r] = s / (d * d - 2.0L);
    }
    return c;
}

// r-th moment of the sink degree limit: r! (r(sqrt(2)-1)+1) c_r / Gamma(r(sqrt(2)-1)+1)
inline double binary_degree_limit_moment(int r) {
    if (r < 0) throw std::invalid_argument("r must be >= 0");
    const double s2 = std::sqrt(2.0);
    auto c = binary_degree_limit_cr(r);
    double a = r * (s2 - 1.0) + 1.0;
    return to_double(factorial(r)) * a * static_cast<double>(c[r]) / gamma_fn(a);
}

// ---------------------------------------------------------------------------
// preferential model: singular coefficients of the degree moments
// ---------------------------------------------------------------------------

// alpha_0 = -1, alpha_1 = 1/(p+1), beta_r = (r p + r - 1) alpha_r, and for r >= 2
// alpha_r = p/((r-1)(p+1)) * sum over r0 + r1 + r2 = r-1, r0 <= r-2, of
//           (r-1)!/(r0! r1! r2!) alpha_{r0+1} beta_{r1} beta_{r2}
inline std::vector<BigRat> preferential_alpha_rec(int r_max, const BigRat& p) {
    if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
    std::vector<BigRat> a(r_max + 1), b(r_max + 1);
    a[0] = -1;
    a[1] = 1 / (p + 1);
    b[0] = 1;
    b[1] = p * a[1];
    for (int r = 2; r <= r_max; ++r) {
        BigRat s = 0;
        for (int r0 = 0; r0 <= r - 2; ++r0)
            for (int r1 = 0; r1 <= r - 1 - r0; ++r1) {
                int r2 = r - 1 - r0 - r1;
                BigRat mult = BigRat(factorial(r - 1)) /
                              BigRat(factorial(r0) * factorial(r1) * factorial(r2));
                s += mult * a[r0 + 1] * b[r1] * b[r2];
            }
        a[r] = p * s / (BigRat(r - 1) * (p + 1));
        b[r] = (BigRat(r) * p + r - 1) * a[r];
    }
    return a;
}

// closed form alpha_r = (r-1)! p^{r-1} C(r(p+1)-2, r-1) / (p+1)^{2r-1}
inline BigRat preferential_alpha_closed(int r, const BigRat& p) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    BigRat num = BigRat(factorial(r - 1)) * binomial_rat(BigRat(r) * (p + 1) - 2, r - 1);
    for (int i = 0; i < r - 1; ++i) num *= p;
    BigRat den = 1;
    for (int i = 0; i < 2 * r - 1; ++i) den *= p + 1;
    return num / den;
}

// r-th moment of the scaled degree limit, Gamma(r(p+1)/2 + 1)/Gamma(rp + 1)
inline double preferential_limit_moment(int r, double p) {
    if (r < 0 || !(p > 0.0 && p < 1.0)) throw std::invalid_argument("need r >= 0, 0 < p < 1");
    return gamma_fn(r * (p + 1.0) / 2.0 + 1.0) / gamma_fn(r * p + 1.0);
}

// ---------------------------------------------------------------------------
// saturation model, p > 1/2 branch: degree moment coefficients
// ---------------------------------------------------------------------------

// alpha_1 = p^2/(2p-1), alpha_r = [sum_{l=1}^{r-1} C(r,l) alpha_l alpha_{r-l}]
//                                 / ((r-1)(2p-1)) for r >= 2
inline std::vector<BigRat> saturation_alpha_rec(int r_max, const BigRat& p) {
    if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
    if (p == BigRat(1, 2)) throw std::invalid_argument("defined for p != 1/2");
    std::vector<BigRat> a(r_max + 1);
    a[1] = p * p / (2 * p - 1);
    for (int r = 2; r <= r_max; ++r) {
        BigRat s = 0;
        for (int l = 1; l < r; ++l) s += BigRat(binomial_int(r, l)) * a[l] * a[r - l];
        a[r] = s / (BigRat(r - 1) * (2 * p - 1));
    }
    return a;
}

// closed form alpha_r = r! p^{2r} / (2p-1)^{2r-1}
inline BigRat saturation_alpha_closed(int r, const BigRat& p) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    if (p == BigRat(1, 2)) throw std::invalid_argument("defined for p != 1/2");
    BigRat num = BigRat(factorial(r));
    for (int i = 0; i < 2 * r; ++i) num *= p;
    BigRat den = 1;
    for (int i = 0; i < 2 * r - 1; ++i) den *= 2 * p - 1;
    return num / den;
}

// scaled degree limit moments for p > 1/2: 1 for r = 0, else
// ((2p-1)/p^2) r! / Gamma(r(2p-1) + 1)
inline double saturation_limit_moment(int r, double p) {
    if (r < 0 || !(p > 0.5 && p < 1.0)) throw std::invalid_argument("need r >= 0, 1/2 < p < 1");
    if (r == 0) return 1.0;
    return (2.0 * p - 1.0) / (p * p) * to_double(factorial(r)) /
           gamma_fn(r * (2.0 * p - 1.0) + 1.0);
}

// ---------------------------------------------------------------------------
// mean path count growth
// ---------------------------------------------------------------------------

// Bernoulli model: E(P_n) ~ alpha^n/(1-p) with
// alpha = 1/(1 - (p/(1-p))^{1/(1-2p)}), continuously extended to 1/(1-e^{-2})
// at p = 1/2
inline double bernoulli_paths_growth_constant(const ProbParam& p) {
    if (p.is_half()) return 1.0 / (1.0 - std::exp(-2.0));
    double pv = p.value();
    if (!(pv > 0.0 && pv < 1.0)) throw std::invalid_argument("p must lie strictly in (0,1)");
    return 1.0 / (1.0 - std::pow(pv / (1.0 - pv), 1.0 / (1.0 - 2.0 * pv)));
}

// Binary model: the generating function of the mean path counts has a
// movable singularity at rho = 0.8989..., a simple pole dressed with a
// Z log Z psi-series term whose coefficient fixes the second-order shape:
// E(P_n) rho^n / 2 = 1 - rho^2/(3 (rho-1)^2 (n-1)(n-2)) + O(log n / n^4).
// The consecutive-mean ratios E_{n-1}/E_n therefore approach rho with an
// O(1/n^3) correction; one Richardson step at orders N and N/2 removes it.
struct RhoEstimate {
    double rho = 0.0;        // extrapolated
    double ratio_full = 0.0; // E_{N-1}/E_N
    double ratio_half = 0.0; // E_{N/2-1}/E_{N/2}
    int n = 0;
};

inline RhoEstimate binary_paths_rho(const std::vector<ScaledFloat>& e) {
    int n = static_cast<int>(e.size()) - 1;
    if (n < 16 || n % 2 != 0) throw std::invalid_argument("need an even order >= 16");
    RhoEstimate out;
    out.n = n;
    out.ratio_full = ratio(e[n - 1], e[n]);
    out.ratio_half = ratio(e[n / 2 - 1], e[n / 2]);
    out.rho = (8.0 * out.ratio_full - out.ratio_half) / 7.0;
    return out;
}

inline RhoEstimate binary_paths_rho(int n_max) {
    return binary_paths_rho(binary_expected_paths(n_max));
}

// E(P_n) rho^n / 2 evaluated without leaving the exponent range
inline double binary_paths_scaled_mean(const ScaledFloat& e_n, int n, double rho) {
    long double l2 = static_cast<long double>(e_n.log2()) +
                     static_cast<long double>(n) * std::log2(static_cast<long double>(rho));
    return static_cast<double>(std::exp2(l2)) / 2.0;
}

// ---------------------------------------------------------------------------
// moment sequence sanity: Hankel positive-definiteness
// ---------------------------------------------------------------------------

// Cholesky on the (k+1)x(k+1) Hankel matrix of a moment sequence m_0..m_{2k};
// a distribution's moments must pass for every k.
inline bool hankel_positive(const std::vector<double>& m, int k) {
    if (static_cast<int>(m.size()) < 2 * k + 1) throw std::invalid_argument("need m_0..m_{2k}");
    int d = k + 1;
    std::vector<long double> a(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a[i * d + j] = m[i + j];
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            long double s = a[i * d + j];
            for (int t = 0; t < j; ++t) s -= a[i * d + t] * a[j * d + t];
            if (i == j) {
                if (s <= 0.0L) return false;
                a[i * d + i] = std::sqrt(s);
            } else {
                a[i * d + j] = s / a[j * d + j];
            }
        }
    }
    return true;
}

}  // namespace spnet
