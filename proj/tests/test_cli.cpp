#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ksurf/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ksurf/fpgroup.hpp"
#include "ksurf/pretzel.hpp"
#include "ksurf/seifert.hpp"

using namespace ksurf;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = cli::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// Value of "<key>=..." in a machine block; "" if absent.
std::string kv(const std::string& machine_out, const std::string& key) {
    std::istringstream is(machine_out);
    std::string line;
    while (std::getline(is, line))
        if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
    return "";
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

const char kHurwitz[] = "<x, y | x^2, y^3, (x*y)^7, (x^-1*y^-1*x*y)^4>";

}  // namespace

TEST_CASE("group abelianize") {
    const auto r = run({"--machine", "group", "abelianize", kHurwitz});
    CHECK(r.code == 0);
    CHECK(kv(r.out, "group.abelianize.betti") == "0");
    CHECK(kv(r.out, "group.abelianize.torsion") == "[]");

    const auto z = run({"--machine", "group", "abelianize", "<a | >"});
    CHECK(z.code == 0);
    CHECK(kv(z.out, "group.abelianize.betti") == "1");
}

TEST_CASE("group deficiency and b2bound") {
    const auto d = run({"--machine", "group", "deficiency",
                        "<x, y, z | x^2, y^3, z^7, x*y*z>"});
    CHECK(d.code == 0);
    CHECK(kv(d.out, "group.deficiency.deficiency") == "-1");

    const auto b = run({"--machine", "group", "b2bound",
                        "<x, y, z | x^2, y^3, z^7, x*y*z>"});
    CHECK(b.code == 0);
    CHECK(kv(b.out, "group.b2bound.b2_upper_bound") == "1");
}

TEST_CASE("group todd-coxeter closes at 168") {
    const auto r = run({"--machine", "group", "todd-coxeter", kHurwitz,
                        "--subgroup", "", "--max", "100000"});
    CHECK(r.code == 0);
    CHECK(kv(r.out, "group.todd_coxeter.index") == "168");
    CHECK(kv(r.out, "group.todd_coxeter.status") == "pass");
}

TEST_CASE("group todd-coxeter overflow is inconclusive, not a failure") {
    const auto r = run({"--machine", "group", "todd-coxeter",
                        "<x, y | x^2, y^3, (x*y)^7>", "--max", "100"});
    CHECK(r.code == 0);
    CHECK(kv(r.out, "group.todd_coxeter.index") == "overflow");
    CHECK(kv(r.out, "group.todd_coxeter.status") == "inconclusive");
}

TEST_CASE("group schreier reports the subgroup abelianization") {
    const auto r = run({"--machine", "group", "schreier", "<x | x^6>",
                        "--subgroup", "x^2"});
    CHECK(r.code == 0);
    CHECK(kv(r.out, "group.schreier.index") == "2");
    CHECK(kv(r.out, "group.schreier.schreier_generators") == "1");
    CHECK(kv(r.out, "group.schreier.subgroup_betti") == "0");
    CHECK(kv(r.out, "group.schreier.subgroup_torsion") == "[3]");
}

TEST_CASE("group quotient-order on the pinned permutations") {
    const auto r = run({"--machine", "group", "quotient-order",
                        "[1,0,3,2,5,4,7,6];[0,2,4,3,1,6,7,5]"});
    CHECK(r.code == 0);
    CHECK(kv(r.out, "group.quotient_order.order") == "168");
    CHECK(kv(r.out, "group.quotient_order.degree") == "8");
}

TEST_CASE("seifert commands") {
    const char kCover[] = "S2(0; 1/2, -1/3, -1/7)";
    const auto h1 = run({"--machine", "seifert", "h1", kCover});
    CHECK(h1.code == 0);
    CHECK(kv(h1.out, "seifert.h1.h1") == "1");

    const auto e = run({"--machine", "seifert", "euler", kCover});
    CHECK(e.code == 0);
    CHECK(kv(e.out, "seifert.euler.euler") == "-1/42");

    const auto kf = run({"seifert", "kill-fiber", kCover});
    CHECK(kf.code == 0);
    CHECK(kf.out.find("triangle (2,3,7) match: true") != std::string::npos);

    const auto inf = run({"--machine", "seifert", "h1", "S2(0;)"});
    CHECK(inf.code == 0);
    CHECK(kv(inf.out, "seifert.h1.h1") == "infinite");
}

TEST_CASE("pretzel commands") {
    const auto det = run({"--machine", "pretzel", "det", "P(3,3,3)"});
    CHECK(det.code == 0);
    CHECK(kv(det.out, "pretzel.det.determinant") == "27");

    const auto g = run({"--machine", "pretzel", "goeritz", "P(-2,3,7)"});
    CHECK(g.code == 0);
    CHECK(kv(g.out, "pretzel.goeritz.row0") == "[1, -3]");
    CHECK(kv(g.out, "pretzel.goeritz.row1") == "[-3, 10]");
    CHECK(kv(g.out, "pretzel.goeritz.b_plus") == "2");

    const auto dbc = run({"--machine", "pretzel", "dbc", "P(-2,3,7)"});
    CHECK(dbc.code == 0);
    CHECK(kv(dbc.out, "pretzel.dbc.dbc") == "S2(0; 1/2, -1/3, -1/7)");
    CHECK(kv(dbc.out, "pretzel.dbc.crosscheck") == "pass");
}

TEST_CASE("machine mode prints only the structured block") {
    const auto r = run({"--machine", "pretzel", "det", "P(1,1,1)"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("--- machine ksurf.report.v1 ---\n", 0) == 0);
    CHECK(r.out.find("[pass]") == std::string::npos);
    // every line after the header is key=value
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        CHECK(line.find('=') != std::string::npos);
    }
    // the same command without --machine prints the human report instead
    const auto h = run({"pretzel", "det", "P(1,1,1)"});
    CHECK(h.out.find("[pass]") != std::string::npos);
    CHECK(h.out.find("--- machine") == std::string::npos);
}

TEST_CASE("usage and parse errors exit 2") {
    CHECK(run({}).code == 2);                                      // missing subcommand
    CHECK(run({"group"}).code == 2);                               // missing args
    CHECK(run({"group", "frobnicate", "<x | >"}).code == 2);       // unknown verb
    CHECK(run({"group", "abelianize", "<x | x^"}).code == 2);      // parse error
    CHECK(run({"seifert", "h1", "S2(0; 1/0)"}).code == 2);         // bad fiber
    CHECK(run({"pretzel", "det", "P(1,2)"}).code == 2);            // too few strands
    CHECK(run({"surface", "frobnicate", "nope"}).code == 2);       // unknown surface verb
    CHECK(run({"verify", "--corrupt", "bogus"}).code == 2);        // bad corrupt value
    CHECK(run({"surface", "check", "/nonexistent/file.surf"}).code == 2);

    const auto perr = run({"group", "abelianize", "<x | x^"});
    CHECK(perr.err.find("parse error:") != std::string::npos);
    CHECK(perr.err.find("position") != std::string::npos);
}

TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("ksurf") != std::string::npos);
}

TEST_CASE("surface check on a torus double passes every section") {
    const auto path = write_temp("ksurf_cli_torus.surf",
                                 "surface S_torus\n"
                                 "type torus\n"
                                 "construction double_of_ribbon k=1\n"
                                 "cover_pi1 triangle(2,3,7)\n"
                                 "h2_cert rank=1 source=\"test\"\n");
    const auto r = run({"--machine", "surface", "check", path.string()});
    CHECK(r.code == 0);
    CHECK(kv(r.out, "surface.input.chi") == "0");
    CHECK(kv(r.out, "surface.theorem.status") == "pass");
    CHECK(kv(r.out, "surface.theorem.conclusion") == "stably_irreducible");
    CHECK(kv(r.out, "surface.theorem.trace_lines") == "62");  // 7 + 10*11/2 at sweep 10
    CHECK(kv(r.out, "surface.theorem.replay") == "ok");
    CHECK(kv(r.out, "surface.proposition.status") == "pass");
    CHECK(kv(r.out, "surface.proposition.conclusion") == "not_sphere_sum_unknotted");
    CHECK(kv(r.out, "surface.remark.status").empty());  // only emitted for Klein bottles
    std::filesystem::remove(path);
}

TEST_CASE("surface check adds the remark section for Klein bottles") {
    const auto path = write_temp("ksurf_cli_klein.surf",
                                 "surface K\n"
                                 "type klein\n"
                                 "construction double_of_ribbon k=1\n"
                                 "cover_pi1 triangle(2,3,7)\n"
                                 "h2_cert rank=1 source=\"test\"\n"
                                 "indecomposable_cert source=\"one-ended triangle group\"\n");
    const auto r = run({"--machine", "surface", "check", path.string()});
    CHECK(r.code == 0);
    CHECK(kv(r.out, "surface.remark.status") == "pass");
    CHECK(kv(r.out, "surface.remark.conclusion") == "no_rp2_splitting");
    CHECK(kv(r.out, "surface.remark.trace_lines") == "5");

    // without the certificate the remark is inconclusive but the run still exits 0
    const auto path2 = write_temp("ksurf_cli_klein_nocert.surf",
                                  "surface K\n"
                                  "type klein\n"
                                  "construction double_of_ribbon k=1\n"
                                  "cover_pi1 triangle(2,3,7)\n"
                                  "h2_cert rank=1 source=\"test\"\n");
    const auto r2 = run({"--machine", "surface", "check", path2.string()});
    CHECK(r2.code == 0);
    CHECK(kv(r2.out, "surface.remark.status") == "inconclusive");
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("surface check on a sphere double is inconclusive, exit 0") {
    const auto path = write_temp("ksurf_cli_sphere.surf",
                                 "surface S0\n"
                                 "type orientable g=0\n"
                                 "construction double_of_ribbon k=0\n"
                                 "cover_pi1 <x | x>\n"
                                 "h2_cert rank=0 source=\"trivial\"\n");
    const auto r = run({"--machine", "surface", "check", path.string()});
    CHECK(r.code == 0);
    CHECK(kv(r.out, "surface.theorem.status") == "inconclusive");
    CHECK(kv(r.out, "surface.theorem.reason") == "chi not < 2");
    CHECK(kv(r.out, "surface.proposition.conclusion") == "not_applicable");
    std::filesystem::remove(path);
}

TEST_CASE("surface check respects --sweep and --trace") {
    const auto path = write_temp("ksurf_cli_sweep.surf",
                                 "surface S_torus\n"
                                 "type torus\n"
                                 "construction double_of_ribbon k=1\n"
                                 "cover_pi1 triangle(2,3,7)\n"
                                 "h2_cert rank=1 source=\"test\"\n");
    const auto r = run({"--machine", "--sweep", "4", "surface", "check", path.string()});
    CHECK(r.code == 0);
    CHECK(kv(r.out, "surface.theorem.sweep") == "4");
    CHECK(kv(r.out, "surface.theorem.trace_lines") == "17");  // 7 + 4*5/2

    const auto t = run({"--trace", "surface", "check", path.string()});
    CHECK(t.code == 0);
    CHECK(t.out.find("(1) hypothesis: chi(S) = 2 - 2k = 0 < 2 with k = 1") !=
          std::string::npos);
    CHECK(t.out.find("rule: Hopf exact sequence") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("verify --corrupt modes exit 1") {
    for (const char* mode : {"psl27", "goeritz", "cert"}) {
        const auto r = run({"--machine", "verify", "--corrupt", mode});
        CHECK(r.code == 1);
    }
}

TEST_CASE("printed text forms round-trip through their parsers") {
    const char kCover[] = "S2(0; 1/2, -1/3, -1/7)";

    const auto pi1 = run({"--machine", "seifert", "pi1", kCover});
    const std::string printed = kv(pi1.out, "seifert.pi1.presentation");
    REQUIRE(!printed.empty());
    CHECK(fp::parse_presentation(printed).str() == printed);

    const auto base = run({"--machine", "seifert", "kill-fiber", kCover});
    const std::string base_printed = kv(base.out, "seifert.kill_fiber.presentation");
    REQUIRE(!base_printed.empty());
    CHECK(fp::parse_presentation(base_printed).str() == base_printed);

    const auto dbc = run({"--machine", "pretzel", "dbc", "P(-2,3,7)"});
    const std::string cover_printed = kv(dbc.out, "pretzel.dbc.dbc");
    REQUIRE(!cover_printed.empty());
    CHECK(seifert::SeifertInvariants::parse(cover_printed).str() == cover_printed);
    CHECK(cover_printed == kCover);

    // normalization happens on parse: 2/4 reduces to 1/2 and 3/3 folds into b
    const auto norm = run({"--machine", "seifert", "euler", "S2(1; 2/4, 3/3)"});
    CHECK(norm.code == 0);
    CHECK(kv(norm.out, "seifert.euler.euler") == "-5/2");  // -(2 + 1/2)
}

TEST_CASE("global flags may appear after the subcommand") {
    const auto r = run({"group", "todd-coxeter", kHurwitz, "--machine", "--max", "100000"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("--- machine", 0) == 0);
    CHECK(kv(r.out, "group.todd_coxeter.index") == "168");
}
