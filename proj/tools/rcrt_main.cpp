// rcrt: command-line front end for exact and error-tolerant solving of
// congruence systems with moduli d*m_i. All output on stdout is a single
// JSON document; diagnostics go to stderr.
//
// Exit codes: 0 success, 2 domain error (inconsistent or degenerate input),
// 3 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "rcrt/oracle_sim.hpp"
#include "rcrt/report_json.hpp"

namespace {

using rcrt::Int;

Int parse_int(const std::string &text) {
    std::size_t start = text.size() > 0 && (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size())
        throw rcrt::InvalidParamsError("not a decimal integer: '" + text + "'");
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw rcrt::InvalidParamsError("not a decimal integer: '" + text + "'");
    return Int(text, 10);
}

std::vector<Int> parse_int_list(const std::string &text) {
    std::vector<Int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(parse_int(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

std::vector<rcrt::Method> parse_algorithms(const std::string &text) {
    std::vector<rcrt::Method> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string name = text.substr(pos, comma - pos);
        pos = comma + 1;
        rcrt::Method m;
        if (name == "quotient")
            m = rcrt::Method::quotient;
        else if (name == "wangxia" || name == "wang_xia")
            m = rcrt::Method::wang_xia;
        else if (name == "extremes")
            m = rcrt::Method::extremes;
        else
            throw rcrt::InvalidParamsError("unknown algorithm: '" + name + "'");
        for (rcrt::Method seen : out)
            if (seen == m) throw rcrt::InvalidParamsError("algorithm listed twice: '" + name + "'");
        out.push_back(m);
    }
    return out;
}

// CRT_THREADS caps parallelism; unset means use all hardware threads.
unsigned simulation_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const char *env = std::getenv("CRT_THREADS");
    if (env == nullptr) return hw;
    const std::string text(env);
    Int cap = parse_int(text);
    if (cap < 1) throw rcrt::InvalidParamsError("CRT_THREADS must be a positive integer");
    if (!cap.fits_ulong_p() || cap > Int(1000000))
        return hw;
    unsigned cap_u = unsigned(cap.get_ui());
    return cap_u < hw ? cap_u : hw;
}

void emit(const rcrt::Json &j) { std::cout << j.dump(2) << "\n"; }

struct SolveArgs {
    std::string moduli, d, remainders;
};

struct ReconstructArgs {
    std::string algo, moduli, d, remainders;
};

struct SimulateArgs {
    std::string mode, moduli, d;
    std::string bound = "paper";
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool trials_set = false, seed_set = false;
    std::string algos = "quotient,wangxia,extremes";
    std::string csv;
};

struct SharpnessArgs {
    std::string p, q, d;
};

struct GenRecoverArgs {
    std::string moduli, remainders;
};

int run_solve(const SolveArgs &args) {
    auto mods = rcrt::robust_moduli(parse_int_list(args.moduli), parse_int(args.d));
    auto inst = rcrt::solve_exact(mods, parse_int_list(args.remainders));
    emit(rcrt::solve_to_json(inst));
    return 0;
}

int run_reconstruct(const ReconstructArgs &args) {
    auto mods = rcrt::robust_moduli(parse_int_list(args.moduli), parse_int(args.d));
    auto obs = rcrt::make_observation(mods, parse_int_list(args.remainders));
    rcrt::Reconstruction rec;
    if (args.algo == "quotient")
        rec = rcrt::reconstruct_quotient(obs);
    else if (args.algo == "wangxia" || args.algo == "wang_xia")
        rec = rcrt::reconstruct_wang_xia(obs);
    else if (args.algo == "extremes")
        rec = rcrt::reconstruct_extremes(obs);
    else
        throw rcrt::InvalidParamsError("unknown --algo: '" + args.algo + "'");
    emit(rcrt::to_json(rec));
    return 0;
}

int run_simulate(const SimulateArgs &args) {
    rcrt::CampaignConfig cfg;
    cfg.m = parse_int_list(args.moduli);
    cfg.d = parse_int(args.d);
    if (args.bound != "paper") cfg.error_bound = parse_int(args.bound);
    cfg.algorithms = parse_algorithms(args.algos);

    if (args.mode == "exhaustive") {
        cfg.mode = rcrt::CampaignMode::exhaustive;
    } else if (args.mode == "random") {
        cfg.mode = rcrt::CampaignMode::random;
        if (!args.trials_set || !args.seed_set)
            throw rcrt::InvalidParamsError("random mode requires --trials and --seed");
        cfg.trials = args.trials;
        cfg.seed = args.seed;
    } else {
        throw rcrt::InvalidParamsError("unknown --mode: '" + args.mode + "'");
    }

    const unsigned threads = simulation_threads();
    std::ofstream csv;
    rcrt::TrialSink sink;
    if (!args.csv.empty()) {
        csv.open(args.csv);
        if (!csv) throw rcrt::InvalidParamsError("cannot open CSV path: '" + args.csv + "'");
        rcrt::write_csv_header(csv);
        sink = [&csv](const rcrt::TrialRecord &row) { rcrt::write_csv_row(csv, row); };
    }

    rcrt::CampaignReport report;
    if (cfg.mode == rcrt::CampaignMode::exhaustive)
        report = rcrt::exhaustive_sweep(cfg, threads, sink);
    else
        report = rcrt::random_campaign(cfg, threads, sink);
    emit(rcrt::to_json(report));
    return 0;
}

int run_sharpness(const SharpnessArgs &args) {
    auto w = rcrt::sharpness_witness(parse_int(args.p), parse_int(args.q), parse_int(args.d));
    emit(rcrt::to_json(w));
    return 0;
}

int run_gen_recover(const GenRecoverArgs &args) {
    auto gm = rcrt::build_general(parse_int_list(args.moduli));
    auto rec = rcrt::general_recover_quotient(gm, parse_int_list(args.remainders));
    emit(rcrt::gen_recover_to_json(gm, rec));
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact and error-tolerant Chinese remaindering with moduli d*m_i"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto *solve = app.add_subcommand("solve", "solve the congruence system exactly");
    solve->add_option("--moduli", solve_args.moduli, "comma-separated pairwise coprime m_i")
        ->required();
    solve->add_option("--d", solve_args.d, "common factor d")->required();
    solve->add_option("--remainders", solve_args.remainders, "comma-separated r_i in [0, d*m_i)")
        ->required();

    ReconstructArgs rec_args;
    auto *reconstruct =
        app.add_subcommand("reconstruct", "estimate N from corrupted remainders");
    reconstruct->add_option("--algo", rec_args.algo, "quotient | wangxia | extremes")->required();
    reconstruct->add_option("--moduli", rec_args.moduli, "comma-separated pairwise coprime m_i")
        ->required();
    reconstruct->add_option("--d", rec_args.d, "common factor d")->required();
    reconstruct
        ->add_option("--remainders", rec_args.remainders,
                     "comma-separated observed remainders (clamped into range)")
        ->required();

    SimulateArgs sim_args;
    auto *simulate = app.add_subcommand("simulate", "run a reconstruction campaign");
    simulate->add_option("--mode", sim_args.mode, "exhaustive | random")->required();
    simulate->add_option("--moduli", sim_args.moduli, "comma-separated pairwise coprime m_i")
        ->required();
    simulate->add_option("--d", sim_args.d, "common factor d")->required();
    simulate->add_option("--bound", sim_args.bound,
                         "error bound: 'paper' (= ceil(d/4)-1) or an explicit integer");
    auto *trials_opt = simulate->add_option("--trials", sim_args.trials, "trial count (random)");
    auto *seed_opt = simulate->add_option("--seed", sim_args.seed, "64-bit seed (random)");
    simulate->add_option("--algos", sim_args.algos, "subset of quotient,wangxia,extremes");
    simulate->add_option("--csv", sim_args.csv, "write a per-trial CSV log to this path");

    SharpnessArgs sharp_args;
    auto *sharpness =
        app.add_subcommand("sharpness", "build the two-instance witness at error d/4");
    sharpness->add_option("--p", sharp_args.p, "prime p")->required();
    sharpness->add_option("--q", sharp_args.q, "prime q, distinct from p")->required();
    sharpness->add_option("--d", sharp_args.d, "positive multiple of 4")->required();

    GenRecoverArgs gen_args;
    auto *gen = app.add_subcommand("gen-recover",
                                   "recover the reference quotient for arbitrary moduli");
    gen->add_option("--moduli", gen_args.moduli, "comma-separated moduli n_i (k >= 2)")
        ->required();
    gen->add_option("--remainders", gen_args.remainders, "comma-separated observed r_i in [0, n_i)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        sim_args.trials_set = trials_opt->count() > 0;
        sim_args.seed_set = seed_opt->count() > 0;
        if (solve->parsed()) return run_solve(solve_args);
        if (reconstruct->parsed()) return run_reconstruct(rec_args);
        if (simulate->parsed()) return run_simulate(sim_args);
        if (sharpness->parsed()) return run_sharpness(sharp_args);
        if (gen->parsed()) return run_gen_recover(gen_args);
        std::cerr << "no subcommand selected\n";
        return 3;
    } catch (const rcrt::InconsistentError &e) {
        std::cout << R"({"error":"inconsistent"})" << "\n";
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const rcrt::DegenerateStatsError &e) {
        std::cout << R"({"error":"degenerate_stats"})" << "\n";
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const rcrt::NonExactQuotientError &e) {
        std::cout << R"({"error":"non_exact_quotient"})" << "\n";
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
