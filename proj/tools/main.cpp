// grauth command-line front end.
//
// Exit codes: 0 success, 1 usage / configuration error, 2 verification failure
// (an injectivity collision, an oracle disagreement, or a resiliency failure).

#include "grauth/config.hpp"
#include "grauth/protocol.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace grauth;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "table";
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "config file path")->required();
    cmd->add_option("--out", opts.out_path, "write the report here instead of stdout");
    cmd->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"table", "records"}));
    cmd->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
}

ReportFormat fmt_of(const CommonOpts& opts) {
    return opts.format == "records" ? ReportFormat::Records : ReportFormat::Table;
}

void emit(const CommonOpts& opts, const std::string& report) {
    if (opts.out_path.empty()) {
        std::cout << report;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write: " + opts.out_path);
    out << report;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Timer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        // timing goes to stderr only; report bytes stay deterministic
        std::cerr << "elapsed: " << ms << " ms\n";
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gray-map authentication code toolkit"};
    app.require_subcommand(1);

    CommonOpts ring_o, gray_o, build_o, res_o, inj_o, atk_o, sim_o;

    auto* ring_cmd = app.add_subcommand("ring-info", "describe the rings A and B");
    add_common(ring_cmd, ring_o);

    auto* gray_cmd = app.add_subcommand("gray-table", "list the Gray image of every element of A");
    add_common(gray_cmd, gray_o);

    auto* build_cmd = app.add_subcommand("build-code", "assemble the code and audit set cardinalities");
    add_common(build_cmd, build_o);

    auto* res_cmd = app.add_subcommand("check-resilience", "verify the resiliency of the mixing map");
    add_common(res_cmd, res_o);

    auto* inj_cmd = app.add_subcommand("verify-injectivity", "check that distinct keys give distinct encoding rules");
    add_common(inj_cmd, inj_o);
    std::string mode = "exhaustive";
    i64 sample_count = 10000;
    std::uint64_t inj_seed = 0;
    bool inj_seed_set = false;
    inj_cmd->add_option("--mode", mode, "exhaustive or sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    inj_cmd->add_option("--count", sample_count, "pairs to sample in sampled mode")
        ->check(CLI::PositiveNumber);
    inj_cmd->add_option("--seed", inj_seed, "sampling seed (default: config seed)")
        ->each([&](const std::string&) { inj_seed_set = true; });

    auto* atk_cmd = app.add_subcommand("attack-probs", "exact impersonation and substitution probabilities");
    add_common(atk_cmd, atk_o);

    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo attack simulation");
    add_common(sim_cmd, sim_o);
    std::string adversary = "impersonation";
    i64 trials = 100000;
    std::uint64_t sim_seed = 0;
    bool sim_seed_set = false;
    sim_cmd->add_option("--adversary", adversary, "impersonation or substitution")
        ->check(CLI::IsMember({"impersonation", "substitution"}));
    sim_cmd->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim_seed, "simulation seed (default: config seed)")
        ->each([&](const std::string&) { sim_seed_set = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const CommonOpts& opts = *[&]() -> const CommonOpts* {
            if (sub == ring_cmd) return &ring_o;
            if (sub == gray_cmd) return &gray_o;
            if (sub == build_cmd) return &build_o;
            if (sub == res_cmd) return &res_o;
            if (sub == inj_cmd) return &inj_o;
            if (sub == atk_cmd) return &atk_o;
            return &sim_o;
        }();

        Timer timer;
        CodeConfig cfg = load_config(opts.config_path);
        ReportFormat fmt = fmt_of(opts);

        // ring-info and gray-table only need the rings, so they work even at
        // parameters where the full code construction is impossible
        if (sub == ring_cmd) {
            RingPtr A = Ring::make(cfg.p, cfg.r, cfg.ell, cfg.size_cap);
            RingPtr B = cfg.n == 1 ? A
                                   : Ring::make(cfg.p, cfg.r, cfg.ell * cfg.n,
                                                cfg.size_cap);
            emit(opts, render_ring_info(*A, *B, fmt));
            return 0;
        }
        if (sub == gray_cmd) {
            GrayMap g(Ring::make(cfg.p, cfg.r, cfg.ell, cfg.size_cap));
            emit(opts, render_gray_table(g, fmt));
            return 0;
        }

        CodeInstance code = CodeInstance::build(cfg);

        if (sub == build_cmd) {
            emit(opts, render_build_code(code, fmt));
        } else if (sub == res_cmd) {
            ResilienceReport rep = check_resilient(*code.B, cfg.n, code.f, cfg.t);
            emit(opts, render_resilience(code, rep, fmt));
            if (!rep.ok) return 2;
        } else if (sub == inj_cmd) {
            Verifier verifier(code, opts.jobs);
            InjectivityReport rep =
                mode == "exhaustive"
                    ? verifier.verify_exhaustive()
                    : verifier.verify_sampled(sample_count,
                                              inj_seed_set ? inj_seed : cfg.seed);
            emit(opts, render_injectivity(code, rep, fmt));
            if (rep.collisions > 0 || !rep.oracle_agreement) return 2;
        } else if (sub == atk_cmd) {
            Verifier verifier(code, opts.jobs);
            emit(opts, render_attack(code, verifier.attack_probs(), fmt));
        } else {
            Verifier verifier(code, opts.jobs);
            SimConfig sim;
            sim.trials = trials;
            sim.seed = sim_seed_set ? sim_seed : cfg.seed;
            sim.adversary = adversary == "substitution" ? AdversaryKind::Substitution
                                                        : AdversaryKind::Impersonation;
            emit(opts, render_simulation(code, sim, run_attack(code, verifier, sim), fmt));
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
