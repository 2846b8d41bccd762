#include "grauth/config.hpp"

#include "grauth/report.hpp"

#include <fstream>
#include <sstream>

namespace grauth {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = strip(tok);
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

} // namespace

CodeConfig parse_config(const std::string& text) {
    CodeConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (key == "p") cfg.p = std::stoll(val);
        else if (key == "r") cfg.r = std::stoi(val);
        else if (key == "ell") cfg.ell = std::stoi(val);
        else if (key == "n") cfg.n = std::stoi(val);
        else if (key == "t") cfg.t = std::stoi(val);
        else if (key == "eta") cfg.eta = split_list(val);
        else if (key == "theta") cfg.theta = split_list(val);
        else if (key == "Z") cfg.zeta = split_list(val);
        else if (key == "f") cfg.f_spec = val;
        else if (key == "seed") cfg.seed = std::stoull(val);
        else if (key == "cap") cfg.size_cap = std::stoll(val);
        else
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
    return cfg;
}

CodeConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

std::string header(const CodeInstance& code, const char* subcommand) {
    std::ostringstream os;
    os << "# grauth " << subcommand << "\n";
    os << "# fingerprint " << code.fingerprint() << "\n";
    std::istringstream ps(code.canonical_params());
    std::string line;
    while (std::getline(ps, line)) os << "# " << line << "\n";
    return os.str();
}

} // namespace

std::string render_ring_info(const Ring& A, const Ring& B, ReportFormat fmt) {
    std::ostringstream os;
    os << "# grauth ring-info\n";
    auto dump_ring = [&](const char* name, const Ring& ring) {
        if (fmt == ReportFormat::Records) {
            os << "ring name=" << name << " p=" << ring.p() << " r=" << ring.r()
               << " d=" << ring.d() << " size=" << ring.size()
               << " xi=" << ring.to_string(ring.xi()) << "\n";
            os << "teich name=" << name << " count=" << (ring.teich_order() + 1);
            os << " elems=0";
            for (i64 j = 0; j < ring.teich_order(); ++j)
                os << ";" << ring.to_string(ring.teich(j));
            os << "\n";
        } else {
            os << name << ": GR(" << ring.char_mod() << "," << ring.d()
               << "), size " << ring.size() << ", modulus ";
            for (size_t i = 0; i < ring.modulus().size(); ++i)
                os << (i ? "," : "") << ring.modulus()[i];
            os << ", xi = " << ring.to_string(ring.xi()) << "\n";
            os << "  T(" << name << ") = { 0";
            for (i64 j = 0; j < ring.teich_order(); ++j)
                os << ", " << ring.to_string(ring.teich(j));
            os << " }\n";
        }
    };
    dump_ring("A", A);
    dump_ring("B", B);
    os << (fmt == ReportFormat::Records ? "coprime count=" : "G(T(B)) size: ");
    os << coprime_teichmuller(B).size() << "\n";
    return os.str();
}

std::string render_gray_table(const GrayMap& g, ReportFormat fmt) {
    std::ostringstream os;
    os << "# grauth gray-table\n";
    const Ring& A = *g.ring();
    for (i64 idx = 0; idx < A.size(); ++idx) {
        Elem a = A.element(idx);
        if (fmt == ReportFormat::Records)
            os << "gray a=" << A.to_string(a) << " phi=" << g.to_string(g.image(a))
               << "\n";
        else
            os << A.to_string(a) << " -> " << g.to_string(g.image(a)) << "\n";
    }
    return os.str();
}

std::string render_build_code(const CodeInstance& code, ReportFormat fmt) {
    std::ostringstream os;
    os << header(code, "build-code");
    auto c = code.cardinalities();
    const Ring& A = *code.A;
    const Ring& B = *code.B;

    auto vec_str = [&](const std::vector<Elem>& v) {
        std::string s;
        for (size_t j = 0; j < v.size(); ++j) {
            if (j) s += ';';
            s += B.to_string(v[j]);
        }
        return s;
    };

    if (fmt == ReportFormat::Records) {
        os << "card set=N enum=" << c.N_enum << " formula=" << c.N_formula
           << (c.N_enum == c.N_formula ? " match=yes" : " match=no") << "\n";
        os << "card set=L enum=" << c.L_enum << " formula=" << c.L_formula
           << (c.L_enum == c.L_formula ? " match=yes" : " match=no") << "\n";
        os << "card set=D_eta enum=" << c.D_eta_enum
           << " formula=" << c.D_eta_formula
           << (c.D_eta_enum == c.D_eta_formula ? " match=yes" : " match=no") << "\n";
        os << "card set=T_thetazetak enum=" << c.T_thetazetak_enum
           << " formula=" << c.T_thetazetak_formula
           << (c.T_thetazetak_enum == c.T_thetazetak_formula ? " match=yes"
                                                             : " match=no")
           << "\n";
        os << "card set=T_etathetaZ enum=" << c.T_etathetaZ_enum
           << " formula=" << c.T_etathetaZ_formula
           << (c.T_etathetaZ_enum == c.T_etathetaZ_formula ? " match=yes"
                                                           : " match=no")
           << "\n";
    } else {
        os << "cardinalities (enumerated vs formula):\n";
        auto line = [&](const char* name, i64 e, i64 f) {
            os << "  " << name << ": " << e << " vs " << f
               << (e == f ? "" : "  <-- MISMATCH") << "\n";
        };
        line("|N|", c.N_enum, c.N_formula);
        line("|L|", c.L_enum, c.L_formula);
        line("|D_eta|", c.D_eta_enum, c.D_eta_formula);
        line("|T_thetazetak|", c.T_thetazetak_enum, c.T_thetazetak_formula);
        line("|T_etathetaZ|", c.T_etathetaZ_enum, c.T_etathetaZ_formula);
    }
    if (c.N_enum != c.N_formula) {
        os << (fmt == ReportFormat::Records ? "finding " : "note: ")
           << "known-discrepancy set=N detail=X_b_t-multiset-count"
           << " (the stated |X_{b,t}| counts the zero vector once per family;"
           << " enumeration deduplicates)\n";
    }
    os << (fmt == ReportFormat::Records ? "side-condition" : "side condition")
       << " (r-1)(n+1)<q^m-1: " << (c.side_condition_qm ? "holds" : "fails")
       << "; p^m reading: " << (c.side_condition_pm ? "holds" : "fails") << "\n";
    os << (fmt == ReportFormat::Records ? "size " : "sizes: ") << "|P|="
       << code.P.size() << " |S|=" << code.S.size() << " |K|=" << code.key_count
       << "\n";

    os << (fmt == ReportFormat::Records ? "" : "\nset N:\n");
    for (auto& v : code.N)
        os << (fmt == ReportFormat::Records ? "N " : "  ") << vec_str(v) << "\n";
    os << (fmt == ReportFormat::Records ? "" : "\nset L:\n");
    for (auto& e : code.L)
        os << (fmt == ReportFormat::Records ? "L " : "  ") << A.to_string(e) << "\n";
    os << (fmt == ReportFormat::Records ? "" : "\nset T_etathetaZ:\n");
    for (auto& pr : code.T_etathetaZ)
        os << (fmt == ReportFormat::Records ? "T " : "  ") << B.to_string(pr.s0)
           << "|" << vec_str(pr.s1) << "\n";
    return os.str();
}

std::string render_resilience(const CodeInstance& code,
                              const ResilienceReport& rep, ReportFormat fmt) {
    std::ostringstream os;
    os << header(code, "check-resilience");
    if (fmt == ReportFormat::Records) {
        os << "resilience t=" << rep.t << " ok=" << (rep.ok ? "yes" : "no")
           << " fixings=" << rep.fixings_checked;
        if (!rep.ok) os << " failure=\"" << rep.failure << "\"";
        os << "\n";
    } else {
        os << "f is " << (rep.ok ? "" : "NOT ") << rep.t
           << "-resilient (balanced under every fixing of <= " << rep.t
           << " coordinates); fixings checked: " << rep.fixings_checked << "\n";
        if (!rep.ok) os << "failure: " << rep.failure << "\n";
    }
    os << "note: resiliency definition adopted from standard usage; the cited"
          " construction does not restate it\n";
    return os.str();
}

std::string render_injectivity(const CodeInstance& code,
                               const InjectivityReport& rep, ReportFormat fmt) {
    std::ostringstream os;
    os << header(code, "verify-injectivity");
    if (fmt == ReportFormat::Records) {
        os << "summary pairs=" << rep.pairs << " collisions=" << rep.collisions
           << " fallbacks=" << rep.fallbacks
           << " oracle-agreement=" << (rep.oracle_agreement ? "yes" : "no")
           << "\n";
        for (int i = 0; i < 4; ++i)
            os << "case name=" << case_name(CaseKind(i))
               << " pairs=" << rep.by_case[i] << "\n";
        for (auto& [k, v] : rep.by_assertion)
            os << "assertion label=" << k << " pairs=" << v << "\n";
        for (auto& f : rep.findings) os << "finding " << f << "\n";
    } else {
        os << rep.collisions << " collisions / " << rep.pairs << " pairs\n";
        os << "oracle agreement: " << (rep.oracle_agreement ? "yes" : "NO") << "\n";
        os << "constructive resolution: " << (rep.pairs - rep.fallbacks) << "/"
           << rep.pairs << " pairs (" << rep.fallbacks << " brute-force fallbacks)\n";
        os << "per case:";
        for (int i = 0; i < 4; ++i)
            os << " " << case_name(CaseKind(i)) << "=" << rep.by_case[i];
        os << "\nper assertion:\n";
        for (auto& [k, v] : rep.by_assertion)
            os << "  " << k << ": " << v << "\n";
        for (auto& f : rep.findings) os << "finding: " << f << "\n";
    }
    return os.str();
}

std::string render_attack(const CodeInstance& code, const AttackReport& rep,
                          ReportFormat fmt) {
    std::ostringstream os;
    os << header(code, "attack-probs");
    auto state_str = [&](i64 si) { return code.state_to_string(code.S[si]); };
    auto tag_str = [&](i64 t) {
        return code.gray->field()->to_string(code.gray->field()->element(t));
    };
    if (fmt == ReportFormat::Records) {
        os << "p_I value=" << rep.p_I.str() << " s=" << state_str(rep.pI_state)
           << " t=" << tag_str(rep.pI_tag) << "\n";
        os << "p_S value=" << rep.p_S.str() << " s=" << state_str(rep.pS_obs_state)
           << " t=" << tag_str(rep.pS_obs_tag)
           << " s'=" << state_str(rep.pS_sub_state)
           << " t'=" << tag_str(rep.pS_sub_tag) << "\n";
    } else {
        os << "p_I = " << rep.p_I.str() << "  argmax (s,t) = ("
           << state_str(rep.pI_state) << ", " << tag_str(rep.pI_tag) << ")\n";
        os << "p_S = " << rep.p_S.str() << "  argmax (s,t) = ("
           << state_str(rep.pS_obs_state) << ", " << tag_str(rep.pS_obs_tag)
           << "), (s',t') = (" << state_str(rep.pS_sub_state) << ", "
           << tag_str(rep.pS_sub_tag) << ")\n";
    }
    return os.str();
}

std::string render_simulation(const CodeInstance& code, const SimConfig& sim,
                              const AttackEstimate& est, ReportFormat fmt) {
    std::ostringstream os;
    os << header(code, "simulate");
    const char* adv =
        sim.adversary == AdversaryKind::Impersonation ? "impersonation"
                                                      : "substitution";
    std::ostringstream nums;
    nums.precision(8);
    nums << std::fixed << est.frequency << " exact=" << est.exact
         << " stderr=" << est.std_error;
    if (fmt == ReportFormat::Records) {
        os << "simulate adversary=" << adv << " trials=" << est.trials
           << " seed=" << sim.seed << " successes=" << est.successes
           << " frequency=" << nums.str() << " rng=" << est.rng_id << "\n";
    } else {
        os << adv << " attack: " << est.successes << "/" << est.trials
           << " successes, frequency=" << nums.str() << "\n";
        os << "rng: " << est.rng_id << ", seed " << sim.seed << "\n";
    }
    return os.str();
}

} // namespace grauth
