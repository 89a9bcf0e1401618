#include "rcrt/robust_recon.hpp"

namespace rcrt {

const char *to_string(Method m) {
    switch (m) {
        case Method::quotient: return "quotient";
        case Method::wang_xia: return "wang_xia";
        case Method::extremes: return "extremes";
        case Method::generalized: return "generalized";
    }
    return "unknown";
}

const char *to_string(Branch b) {
    switch (b) {
        case Branch::none: return "none";
        case Branch::low_spread: return "low-spread";
        case Branch::high_spread: return "high-spread";
    }
    return "unknown";
}

Observation make_observation(const RobustModuliSet &mods, std::vector<Int> rbar) {
    if (rbar.size() != mods.size())
        throw InvalidParamsError("make_observation: remainder count does not match moduli count");
    for (std::size_t i = 0; i < rbar.size(); ++i) {
        if (rbar[i] < 0)
            rbar[i] = 0;
        else if (rbar[i] >= mods.full_moduli[i])
            rbar[i] = mods.full_moduli[i] - 1;
    }
    return Observation{mods, std::move(rbar)};
}

ExtremeStats compute_stats(const Observation &obs) {
    if (obs.rbar.empty() || obs.rbar.size() != obs.mods.size())
        throw InvalidParamsError("compute_stats: malformed observation");
    const Int &d = obs.mods.d;
    ExtremeStats st;
    st.residues.reserve(obs.rbar.size());
    for (const Int &rb : obs.rbar) st.residues.push_back(mod_least_nonneg(rb, d));
    st.alpha = st.residues.front();
    st.beta = st.residues.front();
    for (const Int &res : st.residues) {
        if (res > st.alpha) st.alpha = res;
        if (res < st.beta) st.beta = res;
        if (2 * res > d && (!st.mu || res < *st.mu)) st.mu = res;
        if (2 * res < d && (!st.nu || res > *st.nu)) st.nu = res;
    }
    return st;
}

Reconstruction reconstruct_extremes(const Observation &obs) {
    ExtremeStats st = compute_stats(obs);
    const RobustModuliSet &mods = obs.mods;
    const Int &d = mods.d;
    const std::size_t k = obs.rbar.size();

    // low-spread covers the cases with no wraparound ambiguity; the
    // knife-edge 2*(alpha - beta) == d goes to the high-spread branch
    const bool low_spread = 2 * (st.alpha - st.beta) < d;

    std::vector<Int> gamma_hat;
    gamma_hat.reserve(k);
    if (low_spread) {
        for (const Int &rb : obs.rbar) gamma_hat.push_back(floor_div(rb, d));
    } else {
        if (!st.mu)
            throw DegenerateStatsError(
                "high-spread branch selected but no residue exceeds d/2; "
                "errors violate the d/4 bound");
        const Int shift = d - *st.mu;
        for (const Int &rb : obs.rbar) gamma_hat.push_back(floor_div(rb + shift, d));
    }

    Reconstruction rec;
    rec.method = Method::extremes;
    rec.branch = low_spread ? Branch::low_spread : Branch::high_spread;
    rec.N0_hat = crt_solve(gamma_hat, mods.base);
    if (low_spread) {
        Int sum = 0;
        for (const Int &res : st.residues) sum += res;
        rec.N_hat = d * *rec.N0_hat + floor_div(sum, Int(static_cast<unsigned long>(k)));
    } else {
        rec.N_hat = d * *rec.N0_hat;
    }
    rec.gamma_hat = std::move(gamma_hat);
    rec.stats = std::move(st);
    return rec;
}

namespace {

// [(rbar_i - rbar_1)/d] for every i; entry 0 is 0.
std::vector<Int> rounded_difference_quotients(const Observation &obs) {
    std::vector<Int> h(obs.rbar.size());
    h[0] = 0;
    for (std::size_t i = 1; i < obs.rbar.size(); ++i)
        h[i] = round_half(obs.rbar[i] - obs.rbar[0], obs.mods.d);
    return h;
}

// Steps shared by the two quotient-based routes once q_1 is known:
// q_i = (q_1 * m_1 - h_i) / m_i, per-modulus estimates, rounded average.
Reconstruction finish_from_q1(const Observation &obs, const std::vector<Int> &h, Int q1,
                              Method method) {
    const CoprimeModuliSet &base = obs.mods.base;
    const std::size_t k = obs.rbar.size();

    std::vector<Int> q_hat(k);
    q_hat[0] = std::move(q1);
    for (std::size_t i = 1; i < k; ++i) {
        Int num = q_hat[0] * base.m[0] - h[i];
        if (num % base.m[i] != 0)
            throw NonExactQuotientError("quotient recovery: division by m_i is not exact");
        q_hat[i] = num / base.m[i];
    }

    std::vector<Int> per(k);
    Int sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
        per[i] = obs.mods.full_moduli[i] * q_hat[i] + obs.rbar[i];
        sum += per[i];
    }

    Reconstruction rec;
    rec.N_hat = round_half(sum, Int(static_cast<unsigned long>(k)));
    rec.method = method;
    rec.branch = Branch::none;
    rec.q_hat = std::move(q_hat);
    rec.per_modulus = std::move(per);
    return rec;
}

}  // namespace

Reconstruction reconstruct_quotient(const Observation &obs) {
    if (obs.rbar.empty() || obs.rbar.size() != obs.mods.size())
        throw InvalidParamsError("reconstruct_quotient: malformed observation");
    const CoprimeModuliSet &base = obs.mods.base;
    const std::vector<Int> h = rounded_difference_quotients(obs);

    const Int &M1 = base.cofactors[0];
    Int q1 = 0;
    for (std::size_t i = 1; i < h.size(); ++i) {
        // M_1 / m_i is an integer for every i >= 2
        Int term = h[i] * base.bezout[i] * (M1 / base.m[i]);
        q1 = mod_least_nonneg(q1 + term, M1);
    }
    return finish_from_q1(obs, h, std::move(q1), Method::quotient);
}

Reconstruction reconstruct_wang_xia(const Observation &obs) {
    const std::size_t k = obs.rbar.size();
    if (k != obs.mods.size())
        throw InvalidParamsError("reconstruct_wang_xia: malformed observation");
    if (k < 2) throw InvalidParamsError("reconstruct_wang_xia: needs at least two moduli");
    const CoprimeModuliSet &base = obs.mods.base;
    const std::vector<Int> h = rounded_difference_quotients(obs);

    // q_1 == h_i * m_1^{-1} (mod m_i): collect the residues and solve by CRT
    // over m_2..m_k
    std::vector<Int> xi, subm;
    xi.reserve(k - 1);
    subm.reserve(k - 1);
    for (std::size_t i = 1; i < k; ++i) {
        Int gamma_i1 = inv_mod(base.m[0], base.m[i]);
        xi.push_back(mod_least_nonneg(h[i] * gamma_i1, base.m[i]));
        subm.push_back(base.m[i]);
    }
    CoprimeModuliSet sub = bezout_chain(subm);
    Int q1 = crt_solve(xi, sub);
    return finish_from_q1(obs, h, std::move(q1), Method::wang_xia);
}

Int quotient_via_congruence(const CleanInstance &inst, std::size_t j) {
    const CoprimeModuliSet &base = inst.mods.base;
    if (j >= base.size())
        throw InvalidParamsError("quotient_via_congruence: index out of range");
    const Int &Mj = base.cofactors[j];
    Int acc = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (i == j) continue;
        Int diff = inst.r[i] - inst.r[j];
        detail::require(diff % inst.mods.d == 0,
                        "quotient_via_congruence: remainders not congruent mod d");
        Int term = (diff / inst.mods.d) * base.bezout[i] * (Mj / base.m[i]);
        acc = mod_least_nonneg(acc + term, Mj);
    }
    return acc;
}

GeneralModuliSet build_general(const std::vector<Int> &n) {
    if (n.size() < 2) throw InvalidParamsError("build_general: need at least two moduli");
    for (const Int &ni : n)
        if (ni < 1) throw InvalidParamsError("build_general: moduli must be positive");

    GeneralModuliSet gm;
    gm.n = n;
    const std::size_t k = n.size();
    gm.dij.assign(k, std::vector<Int>(k, Int(0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            Int g;
            mpz_gcd(g.get_mpz_t(), n[i].get_mpz_t(), n[j].get_mpz_t());
            gm.dij[i][j] = g;
            gm.dij[j][i] = std::move(g);
        }

    gm.M = 1;
    for (const Int &ni : n) mpz_lcm(gm.M.get_mpz_t(), gm.M.get_mpz_t(), ni.get_mpz_t());

    std::vector<Int> cof;
    cof.reserve(k);
    for (const Int &ni : n) cof.push_back(gm.M / ni);
    auto [g, v] = bezout_fold(cof);
    Int sum = 0;
    for (std::size_t i = 0; i < k; ++i) sum += v[i] * cof[i];
    detail::require(g == 1 && sum == 1, "build_general: cofactor combination identity failed");
    gm.v = std::move(v);

    gm.tau4 = -1;
    gm.ref_index = 0;
    for (std::size_t i = 0; i < k; ++i) {
        Int mn = -1;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            if (mn < 0 || gm.dij[i][j] < mn) mn = gm.dij[i][j];
        }
        if (mn > gm.tau4) {
            gm.tau4 = mn;
            gm.ref_index = i;
        }
    }

    gm.ref_cofactor = cof[gm.ref_index];
    gm.weights.assign(k, Int(0));
    for (std::size_t j = 0; j < k; ++j) {
        if (j == gm.ref_index) continue;
        // d_{ref,j} * M / (n_ref * n_j) == M / lcm(n_ref, n_j), always integral
        Int num = gm.dij[gm.ref_index][j] * gm.M;
        Int den = gm.n[gm.ref_index] * gm.n[j];
        detail::require(num % den == 0, "build_general: quotient weight is not integral");
        gm.weights[j] = mod_least_nonneg(gm.v[j] * (num / den), gm.ref_cofactor);
    }
    return gm;
}

GeneralRecovery general_recover_quotient(const GeneralModuliSet &gm,
                                         const std::vector<Int> &rbar) {
    const std::size_t k = gm.n.size();
    if (rbar.size() != k)
        throw InvalidParamsError("general_recover_quotient: remainder count mismatch");
    for (std::size_t i = 0; i < k; ++i)
        if (rbar[i] < 0 || rbar[i] >= gm.n[i])
            throw InvalidParamsError("general_recover_quotient: remainder outside [0, n_i)");

    const std::size_t ref = gm.ref_index;
    Int acc = 0, h;
    for (std::size_t j = 0; j < k; ++j) {
        if (j == ref) continue;
        h = round_half(rbar[j] - rbar[ref], gm.dij[ref][j]);
        h *= gm.weights[j];
        acc = mod_least_nonneg(acc + h, gm.ref_cofactor);
    }

    GeneralRecovery out;
    out.q_hat = std::move(acc);
    out.N_hat = gm.n[ref] * out.q_hat + rbar[ref];
    return out;
}

}  // namespace rcrt
