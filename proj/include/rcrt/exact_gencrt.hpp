#pragma once

#include "rcrt/modular_core.hpp"

namespace rcrt {

// Moduli d*m_1, ..., d*m_k with pairwise coprime m_i. A consistent remainder
// system has a unique solution in [0, range) with range = d*M.
struct RobustModuliSet {
    CoprimeModuliSet base;
    Int d;
    std::vector<Int> full_moduli;  // d * m_i
    Int range;                     // d * M

    std::size_t size() const { return base.size(); }
};

RobustModuliSet robust_moduli(const std::vector<Int> &m, const Int &d);

// Error-free state of one congruence system: the value N together with every
// derived quantity the reconstruction algorithms are judged against.
struct CleanInstance {
    RobustModuliSet mods;
    Int N;
    std::vector<Int> r;      // N mod (d * m_i)
    Int a;                   // N mod d, the common remainder
    std::vector<Int> gamma;  // (r_i - a) / d
    std::vector<Int> q;      // (N - r_i) / (d * m_i)
    Int N0;                  // (N - a) / d
};

// True iff all pairwise differences r_i - r_j are divisible by d,
// i.e. all r_i share the same least nonnegative remainder mod d.
bool check_consistency(const std::vector<Int> &r, const Int &d);

// Solves the system exactly and returns the populated instance. Throws
// InconsistentError when the common-remainder condition fails. The digit
// route (a, gamma_i, CRT) and the direct Bezout combination mod dM are both
// evaluated and must agree; disagreement is an internal invariant breach.
CleanInstance solve_exact(const RobustModuliSet &mods, const std::vector<Int> &r);

// Populates an instance from a known value N in [0, d*M).
CleanInstance instance_from_N(const RobustModuliSet &mods, const Int &N);

}  // namespace rcrt
