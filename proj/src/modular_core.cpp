#include "rcrt/modular_core.hpp"

namespace rcrt {

SignedRatio::SignedRatio(Int n, Int d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw InvalidParamsError("SignedRatio: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
}

ExtendedGcd extended_gcd(const Int &a, const Int &b) {
    Int old_r = a, r = b;
    Int old_x = 1, x = 0;
    Int old_y = 0, y = 1;
    Int quot, tmp;
    while (r != 0) {
        quot = old_r / r;
        tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_x - quot * x;
        old_x = x;
        x = tmp;
        tmp = old_y - quot * y;
        old_y = y;
        y = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_x = -old_x;
        old_y = -old_y;
    }
    return {old_r, old_x, old_y};
}

std::pair<Int, std::vector<Int>> bezout_fold(const std::vector<Int> &values) {
    if (values.empty()) throw InvalidParamsError("bezout_fold: empty value list");
    std::vector<Int> coeff;
    coeff.reserve(values.size());
    coeff.emplace_back(1);
    Int g = values.front();
    for (std::size_t i = 1; i < values.size(); ++i) {
        ExtendedGcd e = extended_gcd(g, values[i]);
        for (Int &c : coeff) c *= e.x;
        coeff.push_back(e.y);
        g = e.g;
    }
    return {g, coeff};
}

CoprimeModuliSet bezout_chain(const std::vector<Int> &m) {
    if (m.empty()) throw InvalidParamsError("bezout_chain: need at least one modulus");
    for (const Int &mi : m)
        if (mi < 1) throw InvalidParamsError("bezout_chain: moduli must be positive");
    Int g;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            mpz_gcd(g.get_mpz_t(), m[i].get_mpz_t(), m[j].get_mpz_t());
            if (g != 1)
                throw NotCoprimeError("bezout_chain: moduli " + m[i].get_str() + " and " +
                                      m[j].get_str() + " share a factor");
        }

    CoprimeModuliSet out;
    out.m = m;
    out.M = 1;
    for (const Int &mi : m) out.M *= mi;
    out.cofactors.reserve(m.size());
    for (const Int &mi : m) out.cofactors.push_back(out.M / mi);

    auto [gg, u] = bezout_fold(out.cofactors);
    out.bezout = std::move(u);

    // the identity is the contract; check it exactly on every construction
    Int sum = 0;
    for (std::size_t i = 0; i < out.m.size(); ++i) sum += out.bezout[i] * out.cofactors[i];
    detail::require(gg == 1 && sum == 1, "bezout_chain: coefficient identity failed");
    return out;
}

Int crt_solve(const std::vector<Int> &residues, const CoprimeModuliSet &mods) {
    if (residues.size() != mods.size())
        throw InvalidParamsError("crt_solve: residue count does not match moduli count");
    Int acc = 0, term;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        term = mod_least_nonneg(residues[i], mods.m[i]);
        term *= mods.bezout[i];
        term *= mods.cofactors[i];
        acc += term;
        acc = mod_least_nonneg(acc, mods.M);
    }
    return acc;
}

Int round_half(const Int &num, const Int &den) {
    if (den == 0) throw InvalidParamsError("round_half: zero denominator");
    Int n = num, d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    Int a = 2 * n - d;
    Int b = 2 * d;
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int round_half(const SignedRatio &x) { return round_half(x.num, x.den); }

Int mod_least_nonneg(const Int &h, const Int &m) {
    if (m < 1) throw InvalidParamsError("mod_least_nonneg: modulus must be positive");
    Int r;
    mpz_mod(r.get_mpz_t(), h.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int floor_div(const Int &a, const Int &b) {
    if (b < 1) throw InvalidParamsError("floor_div: divisor must be positive");
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int inv_mod(const Int &a, const Int &m) {
    if (m < 1) throw InvalidParamsError("inv_mod: modulus must be positive");
    ExtendedGcd e = extended_gcd(mod_least_nonneg(a, m), m);
    if (e.g != 1)
        throw NotCoprimeError("inv_mod: " + a.get_str() + " is not invertible modulo " +
                              m.get_str());
    return mod_least_nonneg(e.x, m);
}

}  // namespace rcrt
