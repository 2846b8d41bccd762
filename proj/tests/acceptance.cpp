// Acceptance suite: one PASS/FAIL line per criterion, exit nonzero if any fail.
//
// Usage: grauth_acceptance --configs <dir> [--cli <path-to-cli-binary>]

#include "grauth/config.hpp"
#include "grauth/protocol.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace grauth;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
              << detail << "\n";
    if (!ok) ++g_failures;
}

CodeInstance build_p0() {
    CodeConfig cfg;
    cfg.p = 2; cfg.r = 2; cfg.ell = 2; cfg.n = 1; cfg.t = 1;
    return CodeInstance::build(cfg);
}

CodeInstance build_p1() {
    CodeConfig cfg;
    cfg.p = 5; cfg.r = 2; cfg.ell = 1; cfg.n = 1; cfg.t = 1;
    return CodeInstance::build(cfg);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// criterion 1: P0 exhaustive injectivity, all 32640 pairs, under 60 s
void criterion1(const CodeInstance& p0) {
    auto start = std::chrono::steady_clock::now();
    Verifier v(p0, 4);
    auto rep = v.verify_exhaustive();
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    std::ostringstream d;
    d << "P0 exhaustive: " << rep.collisions << " collisions / " << rep.pairs
      << " pairs in " << secs << " s";
    report(1, rep.pairs == 32640 && rep.collisions == 0 && secs < 60.0, d.str());
}

// criterion 2: P1 exhaustive injectivity
void criterion2(const CodeInstance& p1) {
    Verifier v(p1, 4);
    auto rep = v.verify_exhaustive();
    i64 want = p1.key_count * (p1.key_count - 1) / 2;
    std::ostringstream d;
    d << "P1 exhaustive: " << rep.collisions << " collisions / " << rep.pairs
      << " pairs";
    report(2, rep.pairs == want && rep.collisions == 0, d.str());
}

// criterion 3: constructive witnesses agree with the full-row oracle; Cases I
// and III resolve without brute force; fallbacks are findings, not failures
void criterion3(const CodeInstance& p0) {
    Verifier v(p0, 4);
    auto rep = v.verify_exhaustive();
    bool cases_i_iii_constructive = true;
    i64 fallback_count = 0;
    for (auto& [label, cnt] : rep.by_assertion) {
        if (label == "brute-force") fallback_count = cnt;
    }
    // a fallback for Case I or III would show up as missing I/III.* counts
    i64 i_iii = 0;
    for (auto& [label, cnt] : rep.by_assertion)
        if (label == "I" || label.rfind("III.", 0) == 0) i_iii += cnt;
    cases_i_iii_constructive =
        i_iii == rep.by_case[int(CaseKind::I)] + rep.by_case[int(CaseKind::III)];
    std::ostringstream d;
    d << "oracle agreement=" << (rep.oracle_agreement ? "yes" : "no")
      << ", constructive " << (rep.pairs - rep.fallbacks) << "/" << rep.pairs
      << " (" << fallback_count << " brute-force fallbacks";
    for (auto& f : rep.findings) d << "; finding: " << f;
    d << ")";
    report(3, rep.oracle_agreement && cases_i_iii_constructive, d.str());
}

// criterion 4: cardinality formulas vs enumeration at P0 and P1; the |N|
// discrepancy must be surfaced, not silently absorbed
void criterion4(const CodeInstance& p0, const CodeInstance& p1) {
    bool ok = true;
    std::ostringstream d;
    for (const CodeInstance* code : {&p0, &p1}) {
        auto c = code->cardinalities();
        bool match = c.L_enum == c.L_formula && c.D_eta_enum == c.D_eta_formula &&
                     c.T_thetazetak_enum == c.T_thetazetak_formula &&
                     c.T_etathetaZ_enum == c.T_etathetaZ_formula;
        ok = ok && match;
        d << "|L|=" << c.L_enum << " |D_eta|=" << c.D_eta_enum
          << " |T_thetazetak|=" << c.T_thetazetak_enum
          << " |T_etathetaZ|=" << c.T_etathetaZ_enum << "; ";
        // the report must carry the discrepancy note
        std::string rendered = render_build_code(*code, ReportFormat::Table);
        bool surfaced = c.N_enum == c.N_formula ||
                        rendered.find("known-discrepancy set=N") != std::string::npos;
        ok = ok && surfaced;
        d << "|N| " << c.N_enum << " vs stated " << c.N_formula
          << (surfaced ? " (surfaced)" : " (NOT surfaced)") << "; ";
    }
    report(4, ok, d.str());
}

// criterion 5: Gray injectivity + socle additivity on GR(4,1) and GR(4,2);
// GR(4,1) table equals the classical Gray code 00, 01, 11, 10
void criterion5() {
    bool ok = true;
    std::ostringstream d;
    for (int ell : {1, 2}) {
        GrayMap g(Ring::make(2, 2, ell));
        const Ring& a = *g.ring();
        std::set<std::string> images;
        for (i64 i = 0; i < a.size(); ++i) {
            Elem e = a.element(i);
            images.insert(g.to_string(g.image(e)));
            for (i64 j = -1; j < a.teich_order(); ++j) {
                Elem c = j < 0 ? a.zero() : a.teich(j);
                try {
                    g.add_socle(e, c); // throws if additivity fails
                } catch (...) {
                    ok = false;
                }
            }
        }
        if (i64(images.size()) != a.size()) ok = false;
        d << "GR(4," << ell << ") injective over " << a.size()
          << " elements, socle additivity holds; ";
    }
    GrayMap g4(Ring::make(2, 2, 1));
    const Ring& z4 = *g4.ring();
    std::vector<std::string> table;
    for (i64 i = 0; i < 4; ++i) table.push_back(g4.to_string(g4.image(z4.from_int(i))));
    bool classical = table == std::vector<std::string>{"0:0", "0:1", "1:1", "1:0"};
    ok = ok && classical;
    d << "Z_4 table " << (classical ? "matches 00,01,11,10" : "WRONG");
    report(5, ok, d.str());
}

// criterion 6: trace linearity/surjectivity on GR(4,2)/Z_4 and on P0's B;
// L-difference property exhaustive
void criterion6(const CodeInstance& p0) {
    bool ok = true;
    std::ostringstream d;
    auto check_ext = [&](RingPtr a, RingPtr b, const char* name) {
        Extension ext(a, b);
        std::set<i64> image;
        for (i64 ui = 0; ui < b->size() && ok; ++ui) {
            Elem u = b->element(ui);
            image.insert(a->index_of(ext.trace(u)));
            for (i64 ai = 0; ai < a->size() && ok; ++ai) {
                Elem alpha = a->element(ai);
                if (ext.trace(b->mul(ext.embed(alpha), u)) !=
                    a->mul(alpha, ext.trace(u)))
                    ok = false;
            }
            for (i64 vi = 0; vi < b->size() && ok; ++vi)
                if (ext.trace(b->add(u, b->element(vi))) !=
                    a->add(ext.trace(u), ext.trace(b->element(vi))))
                    ok = false;
        }
        if (i64(image.size()) != a->size()) ok = false;
        d << name << " trace linear+onto; ";
    };
    check_ext(Ring::make(2, 2, 1), Ring::make(2, 2, 2), "GR(4,2)/Z_4");
    check_ext(p0.A, p0.B, "P0 B/A");
    bool ldiff = true;
    for (auto& u : p0.L)
        for (auto& v : p0.L) {
            Elem diff = p0.A->sub(u, v);
            if (!p0.A->is_zero(diff) && p0.A->in_socle(diff)) ldiff = false;
        }
    ok = ok && ldiff;
    d << "L-difference " << (ldiff ? "holds" : "FAILS") << " over " << p0.L.size()
      << "^2 pairs";
    report(6, ok, d.str());
}

// criterion 7: exact attack probabilities and Monte-Carlo agreement
void criterion7(const CodeInstance& p0) {
    Verifier v(p0, 4);
    auto atk = v.attack_probs();
    bool ok = atk.p_I.num * i64(p0.q) >= atk.p_I.den; // p_I >= 1/q
    std::ostringstream d;
    d << "p_I=" << atk.p_I.str() << " p_S=" << atk.p_S.str();
    for (auto kind : {AdversaryKind::Impersonation, AdversaryKind::Substitution}) {
        SimConfig sim;
        sim.trials = 100000;
        sim.seed = 1;
        sim.adversary = kind;
        AttackEstimate est = run_attack(p0, v, sim);
        double dev = std::abs(est.frequency - est.exact);
        bool within = dev <= 3.0 * est.std_error + 1e-12;
        ok = ok && within;
        d << (kind == AdversaryKind::Impersonation ? "; imp " : "; sub ")
          << est.successes << "/" << est.trials << " dev=" << dev
          << (within ? " within 3 sigma" : " OUTSIDE 3 sigma");
    }
    report(7, ok, d.str());
}

// criterion 8: byte-identical reports across runs; wire round-trip exhaustive;
// optionally the CLI binary itself is exercised twice
void criterion8(const CodeInstance& p0, const std::string& configs_dir,
                const std::string& cli) {
    bool ok = true;
    std::ostringstream d;

    auto render_all = [&](const CodeInstance& code) {
        Verifier v(code, 3);
        std::string out = render_build_code(code, ReportFormat::Records);
        out += render_injectivity(code, v.verify_exhaustive(), ReportFormat::Records);
        out += render_attack(code, v.attack_probs(), ReportFormat::Records);
        return out;
    };
    CodeInstance again = build_p0();
    ok = render_all(p0) == render_all(again);
    d << "library reports " << (ok ? "byte-identical" : "DIFFER");

    i64 roundtrips = 0;
    for (i64 k = 0; k < p0.key_count; k += 16)
        for (auto& s : p0.S) {
            Message m = transmit(p0, k, s);
            Message back = decode_message(p0, encode_message(p0, m));
            if (!(back.source.s0 == m.source.s0 && back.source.s1 == m.source.s1 &&
                  back.source.s2 == m.source.s2 && back.tag == m.tag))
                ok = false;
            ++roundtrips;
        }
    d << "; " << roundtrips << " wire round-trips";

    if (!cli.empty()) {
        std::string c1 = "/tmp/grauth_acc_1.txt", c2 = "/tmp/grauth_acc_2.txt";
        std::string cmd = cli + " verify-injectivity --config " + configs_dir +
                          "/p0.cfg --format records --out ";
        bool cli_ok = std::system((cmd + c1 + " 2>/dev/null").c_str()) == 0 &&
                      std::system((cmd + c2 + " 2>/dev/null").c_str()) == 0 &&
                      !slurp(c1).empty() && slurp(c1) == slurp(c2);
        ok = ok && cli_ok;
        d << "; CLI runs " << (cli_ok ? "byte-identical" : "DIFFER");
    }
    report(8, ok, d.str());
}

} // namespace

int main(int argc, char** argv) {
    std::string configs_dir = "configs", cli;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--configs") configs_dir = argv[i + 1];
        else if (flag == "--cli") cli = argv[i + 1];
    }
    try {
        CodeInstance p0 = build_p0();
        CodeInstance p1 = build_p1();
        criterion1(p0);
        criterion2(p1);
        criterion3(p0);
        criterion4(p0, p1);
        criterion5();
        criterion6(p0);
        criterion7(p0);
        criterion8(p0, configs_dir, cli);
    } catch (const std::exception& e) {
        std::cout << "FAIL acceptance setup: " << e.what() << "\n";
        return 1;
    }
    return g_failures == 0 ? 0 : 1;
}
