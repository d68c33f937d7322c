#pragma once

// Characteristic spectrum of the b-ary rule: the b simple roots of
// lambda (lambda+1) ... (lambda+b-1) = (b-1)!  and the coefficients beta_i
// attached to them. Root finding is a simultaneous (Aberth-type) iteration;
// P and P' are evaluated in linear-factor product form, which keeps residuals
// measurable at ~1e-15 * (b-1)! (the expanded Horner form cannot certify the
// required residual bound at b = 8; see the expanded coefficients below,
// which are still built exactly for inspection and tests).

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "spnet/rational.hpp"
#include "spnet/special.hpp"

namespace spnet {

using Cplx = std::complex<double>;

struct BarySpectrum {
    int b = 0;
    std::vector<Cplx> roots;      // roots[0] is the positive real root, im == 0
    std::vector<Cplx> betas;      // beta_i = 1 / (1 + lambda_i * sum_k 1/(lambda_i + k))
    std::vector<double> residuals;  // |P(root)| in product form
    std::vector<BigInt> coefficients;  // expanded monic polynomial, degree b; [k] multiplies z^k
    int iterations = 0;

    double lambda1() const { return roots.at(0).real(); }
};

namespace detail {

// coefficients of z(z+1)...(z+b-1) - (b-1)! (Stirling-cycle convolution)
inline std::vector<BigInt> bary_poly_coefficients(int b) {
    std::vector<BigInt> c{1};
    for (int k = 0; k < b; ++k) {
        std::vector<BigInt> n(c.size() + 1);
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i + 1] += c[i];
            n[i] += k * c[i];
        }
        c = std::move(n);
    }
    c[0] -= factorial(b - 1);
    return c;
}

struct PolyEval {
    Cplx value;
    Cplx derivative;
};

// product-form evaluation of P(z) = prod (z+k) - F and its derivative via
// leave-one-out prefix/suffix products
inline PolyEval bary_poly_eval(int b, double F, Cplx z) {
    std::vector<Cplx> pre(b + 1), suf(b + 1);
    pre[0] = 1.0;
    for (int k = 0; k < b; ++k) pre[k + 1] = pre[k] * (z + static_cast<double>(k));
    suf[b] = 1.0;
    for (int k = b - 1; k >= 0; --k) suf[k] = suf[k + 1] * (z + static_cast<double>(k));
    Cplx d = 0.0;
    for (int k = 0; k < b; ++k) d += pre[k] * suf[k + 1];
    return {pre[b] - F, d};
}

}  // namespace detail

// pre: 2 <= b <= 64
inline BarySpectrum bary_spectrum(int b) {
    if (b < 2 || b > 64) throw std::invalid_argument("b must lie in [2, 64]");
    const double F = to_double(factorial(b - 1));

    BarySpectrum s;
    s.b = b;
    s.coefficients = detail::bary_poly_coefficients(b);

    std::vector<Cplx> z(b);
    const double cx = -(b - 1) / 2.0;          // root centroid
    const double r0 = (b - 1) / 2.0 + 1.0;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 3) throw std::runtime_error("root iteration failed to converge");
        double phase = 0.39 + 0.61 * attempt;  // asymmetric, off the real axis
        for (int i = 0; i < b; ++i) {
            double a = 2.0 * std::numbers::pi * i / b + phase;
            z[i] = Cplx(cx + r0 * std::cos(a), r0 * std::sin(a));
        }
        bool converged = false;
        int it = 0;
        for (; it < 500; ++it) {
            double worst = 0.0;
            for (int i = 0; i < b; ++i) {
                auto [pv, pd] = detail::bary_poly_eval(b, F, z[i]);
                Cplx nwt = pv / pd;
                Cplx rep = 0.0;
                for (int j = 0; j < b; ++j)
                    if (j != i) rep += 1.0 / (z[i] - z[j]);
                Cplx w = nwt / (1.0 - nwt * rep);
                z[i] -= w;
                worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
            }
            if (worst < 1e-13) {
                converged = true;
                break;
            }
        }
        if (converged) {
            s.iterations = it + 1;
            break;
        }
    }

    // snap near-real roots, restore exact conjugate pairing
    for (auto& r : z)
        if (std::abs(r.imag()) < 1e-9 * std::max(1.0, std::abs(r.real()))) r = Cplx(r.real(), 0.0);
    std::sort(z.begin(), z.end(), [](Cplx a, Cplx b2) {
        if (a.real() != b2.real()) return a.real() > b2.real();
        return a.imag() > b2.imag();
    });
    for (int i = 0; i + 1 < b; ++i) {
        if (z[i].imag() > 0.0 && std::abs(z[i + 1].real() - z[i].real()) < 1e-8 &&
            std::abs(z[i + 1].imag() + z[i].imag()) < 1e-8) {
            double re = 0.5 * (z[i].real() + z[i + 1].real());
            double im = 0.5 * (z[i].imag() - z[i + 1].imag());
            z[i] = Cplx(re, im);
            z[i + 1] = Cplx(re, -im);
        }
    }
    if (!(z[0].imag() == 0.0 && z[0].real() > 0.0 && z[0].real() < 1.0))
        throw std::runtime_error("positive real root not isolated in (0,1)");

    s.roots = z;
    s.residuals.resize(b);
    s.betas.resize(b);
    for (int i = 0; i < b; ++i) {
        s.residuals[i] = std::abs(detail::bary_poly_eval(b, F, z[i]).value);
        Cplx h = 0.0;
        for (int k = 1; k <= b - 1; ++k) h += 1.0 / (z[i] + static_cast<double>(k));
        s.betas[i] = 1.0 / (1.0 + z[i] * h);
    }
    return s;
}

// E(L_n) for the b-ary rule: sum_i beta_i * C(n + lambda_i - 1, n - 1),
// binomials as iterative complex products. The imaginary parts cancel; a
// residue above 1e-9 relative would mean the spectrum is bad, so it throws.
inline double bary_expected_pathlength(int n, const BarySpectrum& s) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    Cplx acc = 0.0;
    for (int i = 0; i < s.b; ++i) acc += s.betas[i] * binomial_shifted(s.roots[i], n - 1);
    double scale = std::max(1.0, std::abs(acc.real()));
    if (std::abs(acc.imag()) > 1e-9 * scale)
        throw std::runtime_error("imaginary residue in b-ary expectation");
    return acc.real();
}

inline double bary_expected_pathlength(int n, int b) {
    return bary_expected_pathlength(n, bary_spectrum(b));
}

}  // namespace spnet
