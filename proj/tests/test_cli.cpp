// End-to-end tests of the command line tool against golden outputs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SPLICE_FORGE_BIN
#error "SPLICE_FORGE_BIN must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(SPLICE_FORGE_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string tmpdir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/splice-cli-XXXXXX";
        REQUIRE(mkdtemp(tmpl) != nullptr);
        return std::string(tmpl);
    }();
    return dir;
}

std::string write_input(const std::string& name, const std::string& text) {
    std::string path = tmpdir() + "/" + name;
    std::ofstream(path) << text;
    return path;
}

std::string golden(const std::string& name) {
    std::ifstream f(std::string(GOLDEN_DIR) + "/" + name);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char* kTrefoil = "node v;\nbound v:2;\nbound v:3;\narrow v:1 m=1;\n";
const char* kCable =
    "node u;\nnode w;\nbound u:2;\nbound u:3;\nedge u:1 -- w:7;\n"
    "bound w:2;\narrow w:1 m=1;\n";
const char* kMixed = "node v;\narrow v:2 m=1;\narrow v:3 m=-1;\nbound v:1;\n";

}  // namespace

TEST_CASE("validate") {
    auto in = write_input("trefoil.dsl", kTrefoil);
    auto r = run("validate " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("validate_ok.json"));

    auto bad = write_input("bad.dsl", "node v;\nbound v:2;\nbound v:4;\n");
    auto rb = run("validate " + bad);
    CHECK(rb.exit_code == 0);  // the report itself is the payload
    CHECK(rb.out == golden("validate_bad.json"));
}

TEST_CASE("node-data") {
    auto in = write_input("trefoil.dsl", kTrefoil);
    auto r = run("node-data " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("node_data.json"));
}

TEST_CASE("normalize") {
    auto in = write_input("reducible.dsl",
                          "node v;\nbound v:1;\narrow v:2 m=1;\nbound v:3;\n");
    auto r = run("normalize " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("normalize.json"));
}

TEST_CASE("invert") {
    auto in = write_input("mixed.dsl", kMixed);
    auto r = run("invert " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("invert.dsl"));
}

TEST_CASE("check-s3") {
    auto in = write_input("cable.dsl", kCable);
    auto r = run("check-s3 " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("check_s3.json"));
}

TEST_CASE("link") {
    auto in = write_input("trefoil.dsl", kTrefoil);
    auto r = run("link --x v.a1 --y fiber:v " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("link.json"));
}

TEST_CASE("fiber-check") {
    auto in = write_input("cable.dsl", kCable);
    auto r = run("fiber-check " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("fiber_check.json"));
}

TEST_CASE("hat") {
    auto in = write_input("mixed.dsl", kMixed);
    CHECK(run("hat " + in).out == golden("hat.json"));
    CHECK(run("hat --format dot " + in).out == golden("hat.dot"));
    CHECK(run("hat --format text " + in).out == golden("hat.txt"));
}

TEST_CASE("cut") {
    auto in = write_input("cable.dsl", kCable);
    auto r = run("cut --edge u--w " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("cut.json"));
}

TEST_CASE("splice") {
    auto left = write_input("left.dsl", "node u; bound u:2; bound u:3; arrow u:1 m=1;");
    auto right = write_input("right.dsl",
                             "node w; bound w:2; arrow w:1 m=1; arrow w:7 m=1;");
    auto r = run("splice --at u.a1 --with " + right + " --at2 w.a2 " + left);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("splice.dsl"));
}

TEST_CASE("tight") {
    auto in = write_input("trefoil.dsl", kTrefoil);
    auto r = run("tight " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("tight.json"));

    auto mixed = write_input("mixed.dsl", kMixed);
    auto rm = run("tight --per-piece " + mixed);
    CHECK(rm.exit_code == 0);
    CHECK(rm.out == golden("tight_mixed.json"));
}

TEST_CASE("milnor-fg") {
    auto in = write_input("hopf.dsl", "link A <-> B m=(1,1);\n");
    auto r = run("milnor-fg --g B " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden("milnor_fg.json"));
}

TEST_CASE("contact-verify") {
    auto in = write_input("trefoil.dsl", kTrefoil);
    auto r = run("contact-verify --style tw --grid 400 " + in);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"ok\": true") != std::string::npos);
    CHECK(r.out.find("\"lutz\": []") != std::string::npos);
    CHECK(r.out.find("\"collars_in_window\": true") != std::string::npos);

    auto mixed = write_input("mixed.dsl", kMixed);
    auto rm = run("contact-verify --style lemma33 --grid 400 " + mixed);
    CHECK(rm.exit_code == 0);
    CHECK(rm.out.find("torus v.a2") != std::string::npos);  // Lutz tube

    // artifact outputs
    auto svg = tmpdir() + "/c.svg";
    auto csv = tmpdir() + "/c.csv";
    run("contact-verify --style tw --grid 400 --svg " + svg + " --csv " + csv + " " + in);
    std::ifstream fs(svg), fc(csv);
    CHECK(fs.good());
    CHECK(fc.good());
    std::string line;
    std::getline(fc, line);
    CHECK(line == "curve,r,x,y");
}

TEST_CASE("export") {
    auto in = write_input("cable.dsl", kCable);
    CHECK(run("export --format dsl " + in).out == golden("export.dsl"));
    CHECK(run("export --format json " + in).out == golden("export.json"));
    CHECK(run("export --format dot " + in).out == golden("export.dot"));
}

TEST_CASE("stdin input") {
    std::string cmd = std::string("printf 'unknot K m=2;' | ") + SPLICE_FORGE_BIN +
                      " tight - 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    pclose(p);
    CHECK(out.find("\"Tight\"") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("no-such-command").exit_code == 1);
    auto parse_err = write_input("broken.dsl", "node v;\narrow v:1 m=0;\n");
    CHECK(run("validate " + parse_err).exit_code == 2);
    auto unfibered = write_input("unfibered.dsl",
                                 "node v;\narrow v:2 m=2;\narrow v:3 m=-3;\nbound v:1;\n");
    CHECK(run("tight " + unfibered).exit_code == 3);
    auto nosphere = write_input("nosphere.dsl",
                                "node v;\nbound v:2;\nbound v:3;\narrow v:5 m=1;\n");
    CHECK(run("tight " + nosphere).exit_code == 3);
    CHECK(run("tight --assume-s3 " + nosphere).exit_code == 0);
}

TEST_CASE("environment seed is ignored") {
    auto in = write_input("trefoil.dsl", kTrefoil);
    auto r1 = run("contact-verify --style tw --grid 300 " + in);
    setenv("SPLICE_FORGE_SEED", "12345", 1);
    auto r2 = run("contact-verify --style tw --grid 300 " + in);
    unsetenv("SPLICE_FORGE_SEED");
    CHECK(r1.out == r2.out);
}
