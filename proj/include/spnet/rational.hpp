#pragma once

// Exact big-integer / big-rational arithmetic for the enumeration oracle and
// the closed-form distribution code. The backend is aliased here so nothing
// else in the library names it directly.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spnet {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

// C(n, k) for non-negative integers. Intermediate divisions are exact.
inline BigInt binomial_int(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

// Generalized binomial C(x, k) = x(x-1)...(x-k+1) / k! for rational x.
inline BigRat binomial_rat(const BigRat& x, unsigned k) {
    BigRat num = 1;
    for (unsigned i = 0; i < k; ++i) num *= x - i;
    return num / BigRat(factorial(k));
}

// C(m + c, m) = prod_{k=1}^{m} (c + k)/k. The form every closed-form
// expectation here reduces to; stays O(m) and division-free in the backend.
inline BigRat binomial_shifted_rat(const BigRat& c, unsigned m) {
    BigRat r = 1;
    for (unsigned k = 1; k <= m; ++k) r *= (c + k) / k;
    return r;
}

// H_n^{(r)} = sum_{k=1}^{n} 1/k^r.
inline BigRat harmonic_rat(unsigned n, unsigned r = 1) {
    BigRat h = 0;
    for (unsigned k = 1; k <= n; ++k) {
        BigInt kr = 1;
        for (unsigned i = 0; i < r; ++i) kr *= k;
        h += BigRat(BigInt(1), kr);
    }
    return h;
}

inline double to_double(const BigRat& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& i) { return i.convert_to<double>(); }

// Accepts "a/b" or a plain integer "a"; bases may be signed, b != 0.
inline BigRat parse_rational(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("not a rational: '" + s + "'"); };
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return BigRat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) bad();
        return BigRat(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return 0;  // unreachable
}

// Canonical "num/den" form, denominator always present.
inline std::string format_rational(const BigRat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace spnet
