#include "rcrt/oracle_sim.hpp"

#include <chrono>
#include <thread>

namespace rcrt {

namespace {

constexpr const char *kGeneratorId =
    "splitmix64; trial t drawn from SplitMix64 seeded with seed xor mix64(t+1); "
    "draw order per trial: N, then delta_1..delta_k, each by masked rejection";

}  // namespace

SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix64(seed ^ SplitMix64::mix(trial + 1));
}

Int uniform_below(SplitMix64 &rng, const Int &bound) {
    if (bound < 1) throw InvalidParamsError("uniform_below: bound must be positive");
    if (bound == 1) return Int(0);
    const Int top = bound - 1;
    const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const unsigned top_bits = bits % 64 == 0 ? 64u : unsigned(bits % 64);
    const std::uint64_t top_mask = top_bits == 64 ? ~0ull : ((1ull << top_bits) - 1);
    std::vector<std::uint64_t> buf(words);
    Int value;
    for (;;) {
        for (auto &w : buf) w = rng.next();
        buf.back() &= top_mask;  // least significant word first
        mpz_import(value.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
        if (value < bound) return value;
    }
}

Observation inject_errors(const CleanInstance &inst, const ErrorVector &ev) {
    if (ev.delta.size() != inst.r.size())
        throw InvalidParamsError("inject_errors: delta length mismatch");
    std::vector<Int> rbar;
    rbar.reserve(inst.r.size());
    for (std::size_t i = 0; i < inst.r.size(); ++i) rbar.push_back(inst.r[i] + ev.delta[i]);
    return make_observation(inst.mods, std::move(rbar));
}

Int campaign_bound(const CampaignConfig &cfg) {
    if (cfg.error_bound) {
        if (*cfg.error_bound < 0)
            throw InvalidParamsError("campaign_bound: explicit bound must be nonnegative");
        return *cfg.error_bound;
    }
    if (cfg.d < 1) throw InvalidParamsError("campaign_bound: d must be positive");
    // largest integer strictly below d/4
    Int b;
    mpz_cdiv_q_ui(b.get_mpz_t(), cfg.d.get_mpz_t(), 4);
    b -= 1;
    if (b < 0) b = 0;
    return b;
}

namespace {

struct PartialStats {
    std::uint64_t success = 0;
    Int max_abs_err{0};
    std::uint64_t quotient_exact = 0;
    std::uint64_t low_spread = 0;
    std::uint64_t high_spread = 0;
    std::uint64_t no_branch = 0;
    std::uint64_t errors = 0;
};

struct Partial {
    std::uint64_t trials = 0;
    std::uint64_t clamped = 0;
    std::vector<PartialStats> algo;
    std::vector<FailureWitness> witnesses;  // ascending trial order, capped
};

bool is_quotient_method(Method m) { return m == Method::quotient || m == Method::wang_xia; }

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

void run_trial(const CampaignConfig &cfg, std::uint64_t trial, const CleanInstance &inst,
               const std::vector<Int> &delta, Partial &out, const TrialSink &sink) {
    Observation obs = inject_errors(inst, ErrorVector{delta});
    for (std::size_t i = 0; i < obs.rbar.size(); ++i) {
        if (obs.rbar[i] != inst.r[i] + delta[i]) {
            ++out.clamped;
            break;
        }
    }
    ++out.trials;

    for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
        const Method method = cfg.algorithms[ai];
        PartialStats &st = out.algo[ai];
        std::optional<Reconstruction> rec;
        std::string error_tag;
        try {
            switch (method) {
                case Method::quotient: rec = reconstruct_quotient(obs); break;
                case Method::wang_xia: rec = reconstruct_wang_xia(obs); break;
                case Method::extremes: rec = reconstruct_extremes(obs); break;
                default: throw InvalidParamsError("campaign: unsupported algorithm");
            }
        } catch (const DegenerateStatsError &) {
            error_tag = "degenerate_stats";
        } catch (const NonExactQuotientError &) {
            error_tag = "non_exact_quotient";
        }

        bool success = false;
        Int abs_err;
        if (rec) {
            abs_err = abs(inst.N - rec->N_hat);
            success = 4 * abs_err < obs.mods.d;
            if (abs_err > st.max_abs_err) st.max_abs_err = abs_err;
            switch (rec->branch) {
                case Branch::none: ++st.no_branch; break;
                case Branch::low_spread: ++st.low_spread; break;
                case Branch::high_spread: ++st.high_spread; break;
            }
            if (is_quotient_method(method) && rec->q_hat && *rec->q_hat == inst.q)
                ++st.quotient_exact;
        } else {
            ++st.errors;
        }

        if (success) {
            ++st.success;
        } else if (out.witnesses.size() < kMaxFailureWitnesses) {
            FailureWitness w;
            w.trial = trial;
            w.algorithm = method;
            w.N = inst.N;
            w.deltas = delta;
            w.rbar = obs.rbar;
            if (rec) {
                w.N_hat = rec->N_hat;
                w.abs_err = abs_err;
            }
            w.error = error_tag;
            out.witnesses.push_back(std::move(w));
        }

        if (sink) {
            TrialRecord row;
            row.trial = trial;
            row.N = inst.N;
            row.deltas = delta;
            row.algorithm = method;
            if (rec) {
                row.N_hat = rec->N_hat;
                row.abs_err = abs_err;
            }
            row.success = success;
            sink(row);
        }
    }
}

CampaignReport merge_partials(const CampaignConfig &cfg, const Int &bound, std::string generator,
                              std::vector<Partial> partials) {
    CampaignReport report;
    report.config = cfg;
    report.effective_bound = bound;
    report.generator = std::move(generator);
    report.algorithms.resize(cfg.algorithms.size());
    for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
        report.algorithms[ai].algorithm = cfg.algorithms[ai];
        if (is_quotient_method(cfg.algorithms[ai])) report.algorithms[ai].quotient_exact = 0;
    }

    for (Partial &p : partials) {
        report.total += p.trials;
        report.clamped += p.clamped;
        for (std::size_t ai = 0; ai < p.algo.size(); ++ai) {
            AlgoStats &dst = report.algorithms[ai];
            const PartialStats &src = p.algo[ai];
            dst.success += src.success;
            if (src.max_abs_err > dst.max_abs_err) dst.max_abs_err = src.max_abs_err;
            if (dst.quotient_exact) *dst.quotient_exact += src.quotient_exact;
            dst.low_spread += src.low_spread;
            dst.high_spread += src.high_spread;
            dst.no_branch += src.no_branch;
            dst.errors += src.errors;
        }
        // partials arrive in ascending chunk order, witnesses within a
        // partial in ascending trial order
        for (FailureWitness &w : p.witnesses) {
            if (report.failures.size() >= kMaxFailureWitnesses) break;
            report.failures.push_back(std::move(w));
        }
    }
    for (const AlgoStats &st : report.algorithms)
        report.total_failures += report.total - st.success;
    return report;
}

void launch_workers(unsigned workers, const std::function<void(unsigned)> &body) {
    if (workers <= 1) {
        body(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back([&body, t] { body(t); });
    for (std::thread &th : pool) th.join();
}

}  // namespace

CampaignReport exhaustive_sweep(const CampaignConfig &cfg, unsigned threads,
                                const TrialSink &sink) {
    if (cfg.mode != CampaignMode::exhaustive)
        throw InvalidParamsError("exhaustive_sweep: config mode is not exhaustive");
    if (cfg.algorithms.empty())
        throw InvalidParamsError("exhaustive_sweep: no algorithms selected");
    const auto start = std::chrono::steady_clock::now();

    const RobustModuliSet mods = robust_moduli(cfg.m, cfg.d);
    const Int bound = campaign_bound(cfg);
    const std::size_t k = cfg.m.size();

    if (!mods.range.fits_ulong_p())
        throw InvalidParamsError("exhaustive_sweep: dynamic range too large to enumerate");
    const std::uint64_t range = mods.range.get_ui();
    Int per_n = 1;
    const Int span = 2 * bound + 1;
    for (std::size_t i = 0; i < k; ++i) per_n *= span;
    const Int total_exact = per_n * mods.range;
    if (!per_n.fits_ulong_p() || !total_exact.fits_ulong_p())
        throw InvalidParamsError("exhaustive_sweep: trial space too large to enumerate");
    const std::uint64_t per_n_u = per_n.get_ui();

    unsigned workers = resolve_threads(threads);
    if (sink) workers = 1;
    if (workers > range) workers = unsigned(range == 0 ? 1 : range);

    std::vector<Partial> partials(workers);
    auto body = [&](unsigned t) {
        Partial &p = partials[t];
        p.algo.resize(cfg.algorithms.size());
        const std::uint64_t lo = range * t / workers;
        const std::uint64_t hi = range * (t + 1) / workers;
        std::vector<Int> delta(k);
        for (std::uint64_t n = lo; n < hi; ++n) {
            const CleanInstance inst = instance_from_N(mods, Int(static_cast<unsigned long>(n)));
            for (Int &dd : delta) dd = -bound;
            std::uint64_t offset = 0;
            for (;;) {
                run_trial(cfg, n * per_n_u + offset, inst, delta, p, sink);
                ++offset;
                std::size_t pos = 0;
                while (pos < k) {
                    delta[pos] += 1;
                    if (delta[pos] <= bound) break;
                    delta[pos] = -bound;
                    ++pos;
                }
                if (pos == k) break;
            }
        }
    };
    launch_workers(workers, body);

    CampaignReport report = merge_partials(cfg, bound, "", std::move(partials));
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

CampaignReport random_campaign(const CampaignConfig &cfg, unsigned threads,
                               const TrialSink &sink) {
    if (cfg.mode != CampaignMode::random)
        throw InvalidParamsError("random_campaign: config mode is not random");
    if (cfg.trials < 1) throw InvalidParamsError("random_campaign: need at least one trial");
    if (cfg.algorithms.empty())
        throw InvalidParamsError("random_campaign: no algorithms selected");
    const auto start = std::chrono::steady_clock::now();

    const RobustModuliSet mods = robust_moduli(cfg.m, cfg.d);
    const Int bound = campaign_bound(cfg);
    const Int span = 2 * bound + 1;
    const std::size_t k = cfg.m.size();

    unsigned workers = resolve_threads(threads);
    if (sink) workers = 1;
    if (std::uint64_t(workers) > cfg.trials) workers = unsigned(cfg.trials);

    std::vector<Partial> partials(workers);
    auto body = [&](unsigned t) {
        Partial &p = partials[t];
        p.algo.resize(cfg.algorithms.size());
        const std::uint64_t lo = cfg.trials * t / workers;
        const std::uint64_t hi = cfg.trials * (t + 1) / workers;
        std::vector<Int> delta(k);
        for (std::uint64_t trial = lo; trial < hi; ++trial) {
            SplitMix64 rng = trial_rng(cfg.seed, trial);
            const Int N = uniform_below(rng, mods.range);
            for (std::size_t i = 0; i < k; ++i) delta[i] = uniform_below(rng, span) - bound;
            const CleanInstance inst = instance_from_N(mods, N);
            run_trial(cfg, trial, inst, delta, p, sink);
        }
    };
    launch_workers(workers, body);

    CampaignReport report = merge_partials(cfg, bound, kGeneratorId, std::move(partials));
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

SharpnessWitness sharpness_witness(const Int &p, const Int &q, const Int &d) {
    if (p == q) throw InvalidParamsError("sharpness_witness: p and q must be distinct");
    if (d < 4 || d % 4 != 0)
        throw InvalidParamsError("sharpness_witness: d must be a positive multiple of 4");
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
        throw InvalidParamsError("sharpness_witness: p must be prime");
    if (q < 2 || mpz_probab_prime_p(q.get_mpz_t(), 32) == 0)
        throw InvalidParamsError("sharpness_witness: q must be prime");

    SharpnessWitness w;
    w.p = p;
    w.q = q;
    w.d = d;
    w.v = inv_mod(p, q);
    w.mods = robust_moduli({p, q}, d);

    const Int quarter = d / 4;
    const Int half = d / 2;
    w.observation = {d, d + half};

    w.instance1 = instance_from_N(w.mods, d * w.v * p + 3 * quarter);
    w.instance2 = instance_from_N(w.mods, d + quarter);

    detail::require(w.instance1.r == std::vector<Int>{3 * quarter, d + 3 * quarter},
                    "sharpness_witness: instance 1 remainders mismatch");
    detail::require(w.instance2.r == std::vector<Int>{d + quarter, d + quarter},
                    "sharpness_witness: instance 2 remainders mismatch");
    detail::require(check_consistency(w.instance1.r, d) && check_consistency(w.instance2.r, d),
                    "sharpness_witness: instances are not consistent");

    w.delta1 = {w.observation[0] - w.instance1.r[0], w.observation[1] - w.instance1.r[1]};
    w.delta2 = {w.observation[0] - w.instance2.r[0], w.observation[1] - w.instance2.r[1]};
    for (const Int &dd : w.delta1)
        detail::require(abs(dd) == quarter, "sharpness_witness: instance 1 error is not d/4");
    for (const Int &dd : w.delta2)
        detail::require(abs(dd) == quarter, "sharpness_witness: instance 2 error is not d/4");

    const ExtremeStats st = compute_stats(make_observation(w.mods, w.observation));
    detail::require(st.alpha - st.beta == half, "sharpness_witness: alpha - beta != d/2");

    const Int gap = abs(w.instance1.N - w.instance2.N);
    detail::require(w.instance1.N != w.instance2.N && gap > half,
                    "sharpness_witness: instances are not far enough apart");
    return w;
}

}  // namespace rcrt
