#include "rcrt/report_json.hpp"

#include <ostream>

namespace rcrt {

namespace {

Json str_array(const std::vector<Int> &xs) {
    Json a = Json::array();
    for (const Int &x : xs) a.push_back(x.get_str());
    return a;
}

std::string dec(std::uint64_t v) { return std::to_string(v); }

}  // namespace

Json to_json(const ExtremeStats &st) {
    Json j;
    j["alpha"] = st.alpha.get_str();
    j["beta"] = st.beta.get_str();
    if (st.mu) j["mu"] = st.mu->get_str();
    if (st.nu) j["nu"] = st.nu->get_str();
    return j;
}

Json to_json(const Reconstruction &rec) {
    Json j;
    j["n_hat"] = rec.N_hat.get_str();
    j["method"] = to_string(rec.method);
    j["branch"] = to_string(rec.branch);
    if (rec.q_hat) j["q_hat"] = str_array(*rec.q_hat);
    if (rec.gamma_hat) j["gamma_hat"] = str_array(*rec.gamma_hat);
    if (rec.stats) j["stats"] = to_json(*rec.stats);
    return j;
}

Json to_json(const CampaignReport &report) {
    Json cfg;
    cfg["mode"] = report.config.mode == CampaignMode::exhaustive ? "exhaustive" : "random";
    cfg["moduli"] = str_array(report.config.m);
    cfg["d"] = report.config.d.get_str();
    cfg["error_bound"] =
        report.config.error_bound ? report.config.error_bound->get_str() : std::string("paper");
    cfg["effective_bound"] = report.effective_bound.get_str();
    if (report.config.mode == CampaignMode::random) {
        cfg["trials"] = dec(report.config.trials);
        cfg["seed"] = dec(report.config.seed);
    }
    Json algos = Json::array();
    for (Method m : report.config.algorithms) algos.push_back(to_string(m));
    cfg["algorithms"] = algos;

    Json j;
    j["config"] = std::move(cfg);
    if (!report.generator.empty()) j["generator"] = report.generator;
    j["total_trials"] = dec(report.total);
    j["clamped_trials"] = dec(report.clamped);

    Json per_algo = Json::array();
    for (const AlgoStats &st : report.algorithms) {
        Json a;
        a["algorithm"] = to_string(st.algorithm);
        a["success"] = dec(st.success);
        a["failures"] = dec(report.total - st.success);
        a["success_rate"] =
            report.total == 0 ? 0.0 : double(st.success) / double(report.total);
        a["max_abs_err"] = st.max_abs_err.get_str();
        if (st.quotient_exact)
            a["quotient_exact"] = dec(*st.quotient_exact);
        else
            a["quotient_exact"] = nullptr;
        Json branches;
        if (st.algorithm == Method::extremes) {
            branches["low-spread"] = dec(st.low_spread);
            branches["high-spread"] = dec(st.high_spread);
        } else {
            branches["none"] = dec(st.no_branch);
        }
        a["branches"] = std::move(branches);
        a["errors"] = dec(st.errors);
        per_algo.push_back(std::move(a));
    }
    j["algorithms"] = std::move(per_algo);

    Json fails = Json::array();
    for (const FailureWitness &w : report.failures) {
        Json f;
        f["trial"] = dec(w.trial);
        f["algorithm"] = to_string(w.algorithm);
        f["n"] = w.N.get_str();
        f["deltas"] = str_array(w.deltas);
        f["rbar"] = str_array(w.rbar);
        f["n_hat"] = w.N_hat ? Json(w.N_hat->get_str()) : Json(nullptr);
        f["abs_err"] = w.abs_err ? Json(w.abs_err->get_str()) : Json(nullptr);
        if (!w.error.empty()) f["error"] = w.error;
        fails.push_back(std::move(f));
    }
    j["failures"] = std::move(fails);
    j["total_failures"] = dec(report.total_failures);
    j["duration_seconds"] = report.duration_seconds;
    return j;
}

Json to_json(const SharpnessWitness &w) {
    auto instance = [](const CleanInstance &inst, const std::vector<Int> &delta) {
        Json j;
        j["n"] = inst.N.get_str();
        j["r"] = str_array(inst.r);
        j["a"] = inst.a.get_str();
        j["deltas"] = str_array(delta);
        return j;
    };
    const ExtremeStats st = compute_stats(make_observation(w.mods, w.observation));
    Json j;
    j["p"] = w.p.get_str();
    j["q"] = w.q.get_str();
    j["d"] = w.d.get_str();
    j["v"] = w.v.get_str();
    j["moduli"] = str_array(w.mods.full_moduli);
    j["observation"] = str_array(w.observation);
    j["alpha"] = st.alpha.get_str();
    j["beta"] = st.beta.get_str();
    j["n1"] = w.instance1.N.get_str();
    j["instance1"] = instance(w.instance1, w.delta1);
    j["n2"] = w.instance2.N.get_str();
    j["instance2"] = instance(w.instance2, w.delta2);
    const Int gap = abs(w.instance1.N - w.instance2.N);
    j["gap"] = gap.get_str();
    return j;
}

Json solve_to_json(const CleanInstance &inst) {
    Json j;
    j["n"] = inst.N.get_str();
    j["a"] = inst.a.get_str();
    j["n0"] = inst.N0.get_str();
    j["gamma"] = str_array(inst.gamma);
    j["q"] = str_array(inst.q);
    return j;
}

Json gen_recover_to_json(const GeneralModuliSet &gm, const GeneralRecovery &rec) {
    Json j;
    j["ref_index"] = gm.ref_index + 1;
    j["tau4"] = gm.tau4.get_str();
    j["q_hat"] = rec.q_hat.get_str();
    j["n_hat"] = rec.N_hat.get_str();
    return j;
}

std::string stable_fingerprint(const CampaignReport &report) {
    Json j = to_json(report);
    j.erase("duration_seconds");
    return j.dump();
}

void write_csv_header(std::ostream &os) {
    os << "trial_index,N,deltas,algo,n_hat,abs_err,success\n";
}

void write_csv_row(std::ostream &os, const TrialRecord &row) {
    os << row.trial << ',' << row.N.get_str() << ',';
    for (std::size_t i = 0; i < row.deltas.size(); ++i) {
        if (i) os << ';';
        os << row.deltas[i].get_str();
    }
    os << ',' << to_string(row.algorithm) << ',';
    if (row.N_hat) os << row.N_hat->get_str();
    os << ',';
    if (row.abs_err) os << row.abs_err->get_str();
    os << ',' << (row.success ? 1 : 0) << '\n';
}

}  // namespace rcrt
