#pragma once

#include <optional>
#include <vector>

#include "rcrt/exact_gencrt.hpp"

namespace rcrt {

// Observed (possibly corrupted) remainders, clamped into [0, d*m_i) on
// ingestion: values below zero become zero, values at or above d*m_i become
// d*m_i - 1.
struct Observation {
    RobustModuliSet mods;
    std::vector<Int> rbar;
};

Observation make_observation(const RobustModuliSet &mods, std::vector<Int> rbar);

// Extreme values of the observed remainders modulo d. mu and nu are absent
// when their defining sets are empty; all comparisons against d/2 are strict
// and performed as 2*residue vs d.
struct ExtremeStats {
    std::vector<Int> residues;  // rbar_i mod d
    Int alpha;                  // max residue
    Int beta;                   // min residue
    std::optional<Int> mu;      // min residue strictly above d/2
    std::optional<Int> nu;      // max residue strictly below d/2
};

ExtremeStats compute_stats(const Observation &obs);

enum class Method { quotient, wang_xia, extremes, generalized };
enum class Branch { none, low_spread, high_spread };

const char *to_string(Method m);
const char *to_string(Branch b);

// Estimate produced by one reconstruction run. The estimate is never clamped
// into [0, dM); callers see the raw value. When q_hat is present,
// per_modulus[i] == d*m_i*q_hat[i] + rbar_i.
struct Reconstruction {
    Int N_hat;
    Method method = Method::quotient;
    Branch branch = Branch::none;
    std::optional<std::vector<Int>> q_hat;
    std::optional<std::vector<Int>> gamma_hat;
    std::optional<std::vector<Int>> per_modulus;
    std::optional<Int> N0_hat;
    std::optional<ExtremeStats> stats;
};

// Estimates N from the extreme residue statistics. Low-spread branch
// (2*(alpha-beta) < d): digits are floor(rbar_i / d) and the common remainder
// is estimated by the floored mean residue. High-spread branch: digits are
// floor((rbar_i + d - mu) / d) and the estimate is d times the CRT solution.
// Guarantees |N - N_hat| < d/4 whenever a consistent N exists whose
// per-remainder errors all stay strictly below d/4.
Reconstruction reconstruct_extremes(const Observation &obs);

// Estimates N by recovering the quotients q_i = (N - r_i) / (d*m_i) from the
// rounded difference quotients [(rbar_i - rbar_1)/d], then averaging the
// per-modulus estimates d*m_i*q_i + rbar_i. Quotients are recovered exactly
// whenever all errors stay strictly below d/4.
Reconstruction reconstruct_quotient(const Observation &obs);

// Same quotient recovery routed through per-modulus inverses and an explicit
// CRT over m_2..m_k instead of the single Bezout combination. Produces the
// same estimate as reconstruct_quotient on every input; requires k >= 2.
Reconstruction reconstruct_wang_xia(const Observation &obs);

// Quotient q_j of a clean instance from the Bezout congruence alone
// (no knowledge of N). j is a 0-based index.
Int quotient_via_congruence(const CleanInstance &inst, std::size_t j);

// Arbitrary positive moduli n_i (k >= 2) with pairwise gcds d_ij. tau4 stores
// the integer max_i min_{j != i} d_ij, so the robustness bound is tau4 / 4
// and error admissibility is the exact comparison 4*|delta| < tau4.
struct GeneralModuliSet {
    std::vector<Int> n;
    std::vector<std::vector<Int>> dij;  // pairwise gcds; dij[i][i] == 0
    Int M;                              // lcm of all n_i
    std::vector<Int> v;                 // sum(v_i * M / n_i) == 1
    Int tau4;
    std::size_t ref_index;  // argmax_i min_{j != i} d_ij, lowest index on ties

    // derived, cached for the recovery loop
    Int ref_cofactor;          // M / n_ref
    std::vector<Int> weights;  // v_j * (d_{ref,j} * M / (n_ref * n_j)) mod ref_cofactor
};

GeneralModuliSet build_general(const std::vector<Int> &n);

struct GeneralRecovery {
    Int q_hat;  // recovered quotient (N - r_ref) / n_ref, in [0, M / n_ref)
    Int N_hat;  // n_ref * q_hat + rbar_ref
};

// Recovers the reference quotient from corrupted remainders rbar_i in
// [0, n_i). When every |rbar_i - r_i| satisfies 4*|error| < tau4, the
// recovered quotient is exact and |N - N_hat| equals the reference error.
GeneralRecovery general_recover_quotient(const GeneralModuliSet &gm,
                                         const std::vector<Int> &rbar);

}  // namespace rcrt
