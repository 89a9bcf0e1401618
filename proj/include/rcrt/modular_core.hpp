#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "rcrt/errors.hpp"

namespace rcrt {

// Exact arbitrary-precision signed integer; nothing in this library uses
// fixed-width arithmetic.
using Int = mpz_class;

// Exact rational carrier for the half-open rounding bracket. The denominator
// is normalized to be positive on construction.
struct SignedRatio {
    Int num;
    Int den;

    SignedRatio(Int n, Int d);
};

// Pairwise coprime moduli m_i with product M, cofactors M_i = M / m_i and
// coefficients u_i satisfying sum(u_i * M_i) == 1 exactly.
struct CoprimeModuliSet {
    std::vector<Int> m;
    Int M;
    std::vector<Int> cofactors;
    std::vector<Int> bezout;

    std::size_t size() const { return m.size(); }
};

struct ExtendedGcd {
    Int g;  // gcd(a, b), always >= 0
    Int x;
    Int y;  // a*x + b*y == g
};

ExtendedGcd extended_gcd(const Int &a, const Int &b);

// g = gcd(values) together with coefficients c_i such that
// sum(c_i * values_i) == g, obtained by a left-to-right fold of extended_gcd.
std::pair<Int, std::vector<Int>> bezout_fold(const std::vector<Int> &values);

// Builds the coprime set for m (each >= 1). Throws NotCoprimeError when some
// pair shares a factor; the coefficient identity is checked on construction.
CoprimeModuliSet bezout_chain(const std::vector<Int> &m);

// Unique x in [0, M) with x == residues_i (mod m_i). Residues may be any
// integers; they are reduced internally. Partial sums are reduced mod M as
// they accumulate, keeping intermediates below ~M^2.
Int crt_solve(const std::vector<Int> &residues, const CoprimeModuliSet &mods);

// The unique integer n with x - 1/2 <= n < x + 1/2. Exact halves round down.
// Computed purely in integer arithmetic as ceil((2*num - den) / (2*den)).
Int round_half(const Int &num, const Int &den);
Int round_half(const SignedRatio &x);

// Least nonnegative remainder of h modulo m (m >= 1): the g with m | (g - h)
// and 0 <= g < m.
Int mod_least_nonneg(const Int &h, const Int &m);

// Floor division a / b for b >= 1.
Int floor_div(const Int &a, const Int &b);

// a^{-1} mod m; throws NotCoprimeError when gcd(a, m) != 1.
Int inv_mod(const Int &a, const Int &m);

}  // namespace rcrt
