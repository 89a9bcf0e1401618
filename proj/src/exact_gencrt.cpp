#include "rcrt/exact_gencrt.hpp"

namespace rcrt {

RobustModuliSet robust_moduli(const std::vector<Int> &m, const Int &d) {
    if (d < 1) throw InvalidParamsError("robust_moduli: d must be positive");
    RobustModuliSet out;
    out.base = bezout_chain(m);
    out.d = d;
    out.full_moduli.reserve(out.base.size());
    for (const Int &mi : out.base.m) out.full_moduli.push_back(d * mi);
    out.range = d * out.base.M;
    return out;
}

bool check_consistency(const std::vector<Int> &r, const Int &d) {
    if (d < 1) throw InvalidParamsError("check_consistency: d must be positive");
    if (r.empty()) return true;
    const Int first = mod_least_nonneg(r.front(), d);
    for (std::size_t i = 1; i < r.size(); ++i)
        if (mod_least_nonneg(r[i], d) != first) return false;
    return true;
}

namespace {

void validate_remainders(const RobustModuliSet &mods, const std::vector<Int> &r) {
    if (r.size() != mods.size())
        throw InvalidParamsError("remainder count does not match moduli count");
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] < 0 || r[i] >= mods.full_moduli[i])
            throw InvalidParamsError("remainder " + r[i].get_str() + " outside [0, " +
                                     mods.full_moduli[i].get_str() + ")");
}

}  // namespace

CleanInstance solve_exact(const RobustModuliSet &mods, const std::vector<Int> &r) {
    validate_remainders(mods, r);
    if (!check_consistency(r, mods.d))
        throw InconsistentError("remainders disagree modulo d; system has no solution");

    CleanInstance inst;
    inst.mods = mods;
    inst.r = r;
    inst.a = mod_least_nonneg(r.front(), mods.d);
    for (const Int &ri : r)
        detail::require(mod_least_nonneg(ri, mods.d) == inst.a,
                        "solve_exact: common remainder differs across indices");

    inst.gamma.reserve(r.size());
    for (const Int &ri : r) {
        Int diff = ri - inst.a;
        detail::require(diff % mods.d == 0, "solve_exact: digit division not exact");
        inst.gamma.push_back(diff / mods.d);
    }
    inst.N0 = crt_solve(inst.gamma, mods.base);
    inst.N = mods.d * inst.N0 + inst.a;

    // independent route: Bezout combination of the raw remainders mod dM
    Int direct = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        direct += r[i] * mods.base.bezout[i] * mods.base.cofactors[i];
        direct = mod_least_nonneg(direct, mods.range);
    }
    detail::require(direct == inst.N, "solve_exact: digit and Bezout solution paths disagree");

    inst.q.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        Int num = inst.N - r[i];
        detail::require(num % mods.full_moduli[i] == 0, "solve_exact: quotient division not exact");
        inst.q.push_back(num / mods.full_moduli[i]);
    }
    return inst;
}

CleanInstance instance_from_N(const RobustModuliSet &mods, const Int &N) {
    if (N < 0 || N >= mods.range)
        throw OutOfRangeError("instance_from_N: N outside [0, " + mods.range.get_str() + ")");

    CleanInstance inst;
    inst.mods = mods;
    inst.N = N;
    inst.r.reserve(mods.size());
    for (const Int &dm : mods.full_moduli) inst.r.push_back(mod_least_nonneg(N, dm));
    inst.a = mod_least_nonneg(N, mods.d);

    inst.gamma.reserve(mods.size());
    inst.q.reserve(mods.size());
    for (std::size_t i = 0; i < mods.size(); ++i) {
        Int gnum = inst.r[i] - inst.a;
        detail::require(gnum % mods.d == 0, "instance_from_N: digit division not exact");
        inst.gamma.push_back(gnum / mods.d);
        Int qnum = N - inst.r[i];
        detail::require(qnum % mods.full_moduli[i] == 0,
                        "instance_from_N: quotient division not exact");
        inst.q.push_back(qnum / mods.full_moduli[i]);
    }
    Int n0num = N - inst.a;
    detail::require(n0num % mods.d == 0, "instance_from_N: N0 division not exact");
    inst.N0 = n0num / mods.d;
    return inst;
}

}  // namespace rcrt
