#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

const std::string& work_dir() {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/lquot-cli-XXXXXX";
        char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CliResult run_cli(const std::string& args) {
    std::string opath = work_dir() + "/stdout";
    std::string epath = work_dir() + "/stderr";
    std::string cmd =
        std::string(LQUOT_CLI_PATH) + " " + args + " >" + opath + " 2>" + epath;
    int rc = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(opath);
    r.err = slurp(epath);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("psi evaluates numerically and symbolically") {
    CliResult r = run_cli("psi --m 0 --z 1");
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, 13) == "-0.5772156649");

    r = run_cli("psi --m 2 --z 1 --exact");
    CHECK(r.code == 0);
    CHECK(r.out == "-2*zeta(3)\n");

    r = run_cli("psi --m 0 --z 1/4 --bits 192");
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, 13) == "-4.2274535333");

    r = run_cli("psi --m 0 --z 0.5,1.25");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "*i"));
}

TEST_CASE("pole, usage, and domain exits") {
    CHECK(run_cli("psi --m 0 --z -1").code == 3);
    CHECK(run_cli("psi --m 1 --z -3").code == 3);
    CHECK(run_cli("psi --m 0 --z 1 --exact").code == 0);
    CHECK(run_cli("psi --m 0 --z 0.5 --exact").code == 2);
    CHECK(run_cli("psi").code == 2);
    CHECK(run_cli("nonsense --m 0").code == 2);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("--bits 32 psi --m 0 --z 1").code == 2);
    CHECK(run_cli("psi --m 0 --z abc").code == 2);
    CHECK(run_cli("--format yaml psi --m 0 --z 1").code == 2);
    CHECK(run_cli("certify siegel --k 19 --g 3 --s0 10").code == 5);
    CHECK(run_cli("certify hilbert --k 5 --n 3 --dF 21 --normN 1 --s0 5/2").code == 5);
    CHECK(run_cli("certify modular --k 12 --N 121 --D 1 --s0 99").code == 5);
    CHECK(run_cli("certify gld --N 23 --kappa 1/2 --s0 3/4").code == 5);
    CHECK(run_cli("rank --family modular --k 12 --D 1 --J 2,4 --s0 6").code == 5);
    CHECK(run_cli("rank --family gld --kappa 0 --N 1 --q 7").code == 5);
    CHECK(run_cli("rank --family modular --k 2 --N 1 --D 1 --q 7 --J 2,3 --s0 6").code == 2);
    CHECK(run_cli("rank --family modular --k 2 --N 1 --D 1").code == 2);
    CHECK(run_cli("closedform --family nosuch --s0 6").code == 2);
    CHECK(run_cli("gen-coeffs --kind nosuch --out x.coeffs").code == 2);
}

TEST_CASE("certify exit codes follow the verdict") {
    CliResult yes = run_cli("certify modular --N 1 --D 13 --k 12 --s0 6");
    CHECK(yes.code == 0);
    CHECK(contains(yes.out, "verdict: Certified"));
    CHECK(contains(yes.out, "claim: modular-nonvanish"));

    CliResult no = run_cli("certify modular --N 121 --D 1 --k 12 --s0 6");
    CHECK(no.code == 1);
    CHECK(contains(no.out, "verdict: NotCertified"));

    CHECK(run_cli("certify modular --N 121 --D 1 --k 12 --s0 6 --remark").code == 0);
    CHECK(run_cli("certify gld --N 23 --kappa 1/2 --s0 1/2").code == 0);
    CHECK(run_cli("certify gld --N 22 --kappa 1/2 --s0 1/2").code == 1);
    CHECK(run_cli("certify halfint --k 13/2 --N 8").code == 0);
    CHECK(run_cli("certify halfint --k 13/2 --N 4").code == 1);
    CHECK(run_cli("certify hilbert --k 5 --n 5 --dF 14641 --normN 1 --s0 5/2").code == 0);
    CHECK(run_cli("certify siegel --k 30 --g 2 --s0 15").code == 0);

    CliResult deep = run_cli("--bits 256 certify gld --N 23 --kappa 1/2 --s0 1/2");
    CHECK(deep.code == 0);
    CHECK(contains(deep.out, "precision-bits: 256"));
}

TEST_CASE("rank certificates list the spanning symbols") {
    CliResult r = run_cli("rank --family modular --q 7 --k 2 --N 1 --D 1");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "guarantee: 1"));
    CHECK(contains(r.out, "computed-rank: 3"));
    CHECK(contains(r.out, "symbols: psipair(1/7) psipair(2/7) psipair(3/7)"));

    r = run_cli("rank --family modular --J 2,3,5 --k 12 --D 1 --s0 6");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "guarantee: 2"));
    CHECK(contains(r.out, "computed-rank: 3"));
    CHECK(contains(r.out, "symbols: log(2) log(3) log(5)"));
}

TEST_CASE("closedform prints values and exact expressions") {
    CliResult r = run_cli("closedform --family modular --k 12 --N 1 --D 1 --s0 6 --exact");
    CHECK(r.code == 0);
    CHECK(r.out == "-137/30 + 2*gamma + 2*log(pi) + 2*log(2)\n");

    r = run_cli("closedform --family modular --k 12 --N 1 --D 1 --s0 6");
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, 12) == "0.2635187959");

    // The degree-one principal value log pi - psi(1/4).
    CliResult viagld =
        run_cli("closedform --family gld --d 1 --N 1 --kappa 0 --s0 1/2");
    CHECK(viagld.code == 0);
    CHECK(viagld.out.substr(0, 12) == "5.3721834192");
}

TEST_CASE("coefficient files round-trip through identity checks") {
    std::string file = work_dir() + "/delta.coeffs";
    CliResult gen = run_cli("gen-coeffs --kind delta --nmax 3000 --out " + file);
    CHECK(gen.code == 0);
    CHECK(contains(gen.out, "wrote"));

    // Generation is deterministic.
    std::string file2 = work_dir() + "/delta2.coeffs";
    run_cli("gen-coeffs --kind delta --nmax 3000 --out " + file2);
    CHECK(slurp(file) == slurp(file2));
    CHECK(slurp(file).size() > 0);

    CliResult id = run_cli("identity --data " + file + " --s0 6 --m 0");
    CHECK(id.code == 0);
    CHECK(contains(id.out, "result: pass"));
    CHECK(contains(id.out, "residual:"));

    CliResult id1 = run_cli("identity --data " + file + " --s0 5 --m 1 --tol-exp 30");
    CHECK(id1.code == 0);

    // Unreachable tolerance at this precision is a usage error.
    CHECK(run_cli("identity --data " + file + " --s0 6 --m 0 --tol-exp 65").code == 2);

    // Malformed and missing files carry exit 4.
    std::string bad = work_dir() + "/bad.coeffs";
    std::ofstream(bad) << "# family: modular-twisted\nnot a coefficient line\n";
    CliResult badr = run_cli("identity --data " + bad + " --s0 6 --m 0");
    CHECK(badr.code == 4);
    CHECK(contains(badr.err, "line"));
    CHECK(run_cli("identity --data " + work_dir() + "/absent.coeffs --s0 6 --m 0").code == 4);
}

TEST_CASE("json-lines output is machine-readable and deterministic") {
    const std::string cmds[] = {
        "--format jsonl psi --m 0 --z 1",
        "--format jsonl psi --m 2 --z 1 --exact",
        "--format jsonl closedform --family modular --k 12 --N 1 --D 1 --s0 6",
        "--format jsonl certify modular --N 1 --D 13 --k 12 --s0 6",
        "--format jsonl certify halfint --k 13/2 --N 8",
        "--format jsonl rank --family modular --q 7 --k 2 --N 1 --D 1",
        "--format jsonl rank --family modular --J 2,3,5 --k 12 --D 1 --s0 6",
    };
    for (const std::string& cmd : cmds) {
        CliResult a = run_cli(cmd);
        CliResult b = run_cli(cmd);
        CHECK(a.out == b.out);
        CHECK(a.out.back() == '\n');
        CHECK(a.out.find('\n') == a.out.size() - 1);

        nlohmann::json rec = nlohmann::json::parse(a.out);
        CHECK(rec.contains("command"));
        CHECK(rec.contains("inputs"));
        CHECK(rec.contains("precision_bits"));
        CHECK(rec.contains("assumptions"));
        CHECK(rec["assumptions"].is_array());
        CHECK((rec.contains("value") || rec.contains("residual") ||
               rec.contains("verdict")));
    }

    nlohmann::json psi = nlohmann::json::parse(run_cli(cmds[0]).out);
    CHECK(psi["command"] == "psi");
    CHECK(psi["precision_bits"] == 128);
    CHECK(psi["value"].get<std::string>().substr(0, 13) == "-0.5772156649");

    nlohmann::json exact = nlohmann::json::parse(run_cli(cmds[1]).out);
    CHECK(exact["value"] == "-2*zeta(3)");
    CHECK(exact["precision_bits"] == 0);

    nlohmann::json cert = nlohmann::json::parse(run_cli(cmds[3]).out);
    CHECK(cert["command"] == "certify-modular");
    CHECK(cert["verdict"] == "Certified");
    CHECK(cert["inputs"] == "k=12 N=1 D=13 s0=6 branch=primary");
    CHECK(cert["assumptions"].size() == 2);

    nlohmann::json rank = nlohmann::json::parse(run_cli(cmds[5]).out);
    CHECK(rank["verdict"] == "Certified");
    CHECK(rank["guarantee"] == 1);
    CHECK(rank["computed-rank"] == 3);
    CHECK(rank["symbols"].size() == 3);

    // Identity records report the residual; precision follows --bits.
    std::string file = work_dir() + "/chi5.coeffs";
    run_cli("gen-coeffs --kind chi5 --nmax 500 --out " + file);
    std::string idc = "--bits 192 --format jsonl identity --data " + file +
                      " --s0 2/5 --m 0 --tol-exp 20";
    CliResult ia = run_cli(idc);
    CliResult ib = run_cli(idc);
    CHECK(ia.code == 0);
    CHECK(ia.out == ib.out);
    nlohmann::json id = nlohmann::json::parse(ia.out);
    CHECK(id["verdict"] == "pass");
    CHECK(id["precision_bits"] == 192);
    CHECK(id.contains("residual"));
}

TEST_CASE("help is available at exit 0") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("certify --help").code == 0);
    CliResult r = run_cli("certify gld --help");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "--kappa"));
}
