#include "grauth/config.hpp"

#include <doctest.h>

using namespace grauth;

TEST_CASE("config parsing") {
    CodeConfig cfg = parse_config(
        "# comment line\n"
        "p = 5\n"
        "r=2\n"
        "ell = 1   # trailing comment\n"
        "n = 1\n"
        "t = 1\n"
        "eta = xi^1\n"
        "theta = xi^2\n"
        "Z = xi^2, xi^3, 1\n"
        "f = linear:1\n"
        "seed = 77\n"
        "cap = 4096\n"
        "\n");
    CHECK(cfg.p == 5);
    CHECK(cfg.r == 2);
    CHECK(cfg.ell == 1);
    CHECK(cfg.eta == std::vector<std::string>{"xi^1"});
    CHECK(cfg.theta == std::vector<std::string>{"xi^2"});
    CHECK(cfg.zeta == std::vector<std::string>{"xi^2", "xi^3", "1"});
    CHECK(cfg.f_spec == "linear:1");
    CHECK(cfg.seed == 77);
    CHECK(cfg.size_cap == 4096);

    CHECK_THROWS(parse_config("p: 2\n"));         // missing '='
    CHECK_THROWS(parse_config("unknown = 1\n"));  // unknown key
    CHECK_THROWS(load_config("/nonexistent/path.cfg"));
}

TEST_CASE("renderers are deterministic and format-sensitive") {
    CodeConfig cfg;
    cfg.p = 2;
    cfg.r = 2;
    cfg.ell = 2;
    auto code = CodeInstance::build(cfg);
    Verifier v(code);

    CHECK(render_build_code(code, ReportFormat::Table) ==
          render_build_code(code, ReportFormat::Table));
    CHECK(render_build_code(code, ReportFormat::Table) !=
          render_build_code(code, ReportFormat::Records));

    auto rep = v.verify_exhaustive();
    std::string r1 = render_injectivity(code, rep, ReportFormat::Records);
    std::string r2 = render_injectivity(code, rep, ReportFormat::Records);
    CHECK(r1 == r2);
    CHECK(r1.find("collisions=0") != std::string::npos);
    CHECK(r1.find("fingerprint " + code.fingerprint()) != std::string::npos);

    auto atk = v.attack_probs();
    std::string a = render_attack(code, atk, ReportFormat::Table);
    CHECK(a.find("p_I = 1/4") != std::string::npos);

    GrayMap g4(Ring::make(2, 2, 1));
    std::string table = render_gray_table(g4, ReportFormat::Table);
    CHECK(table.find("0 -> 0:0") != std::string::npos);
    CHECK(table.find("2 -> 1:1") != std::string::npos);
    CHECK(table.find("3 -> 1:0") != std::string::npos);
}

TEST_CASE("reports carry the materialized defaults") {
    CodeConfig cfg;
    cfg.p = 2;
    cfg.r = 2;
    cfg.ell = 2;
    auto code = CodeInstance::build(cfg);
    std::string params = code.canonical_params();
    CHECK(params.find("eta=xi^1") != std::string::npos);
    CHECK(params.find("theta=xi^1") != std::string::npos);
    CHECK(params.find("Z=xi^2,1") != std::string::npos);
    CHECK(params.find("f=linear:1") != std::string::npos);
}
