#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct CmdResult {
    int code;
    std::string out;
};

CmdResult run(const std::string& args) {
    std::string cmd = std::string(METALLIC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("metallic_test_" + name);
}

}  // namespace

TEST_CASE("gen prints b-file lines") {
    auto r = run("gen --def d --count 3");
    CHECK(r.code == 0);
    CHECK(r.out == "1 1\n2 4\n3 6\n");

    r = run("gen --def e --count 1");
    CHECK(r.code == 0);
    CHECK(r.out == "1 1\n");

    for (const char* def : {"a", "b", "c"}) {
        r = run(std::string("gen --def ") + def + " --count 25");
        CHECK(r.code == 0);
        CHECK(r.out.starts_with("1 1\n2 4\n3 6\n4 8\n5 11\n"));
    }
}

TEST_CASE("gen usage errors exit 2") {
    CHECK(run("gen --def a --count 0").code == 2);
    CHECK(run("gen --def z --count 5").code == 2);
    CHECK(run("gen --count 5").code == 2);
    CHECK(run("gen --def c --count 5 --h 3").code == 2);  // h only applies to d/e
    CHECK(run("nonsense").code == 2);
}

TEST_CASE("gen with h parameter") {
    auto d = run("gen --def d --count 8 --h 1");
    auto e = run("gen --def e --count 8 --h 1");
    CHECK(d.code == 0);
    CHECK(e.code == 0);
    CHECK(d.out == e.out);  // conjectured floors differ, nearest roundings only at n = 137
}

TEST_CASE("gen output is deterministic") {
    auto first = run("gen --def d --count 2000");
    auto second = run("gen --def d --count 2000");
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("verify agrees across definitions") {
    auto r = run("verify --count 1000 --defs abcd");
    CHECK(r.code == 0);
    CHECK(r.out.find("OK") != std::string::npos);
    CHECK(r.out.find("term 1000 = 2413") != std::string::npos);

    r = run("verify --count 300 --defs abcde");
    CHECK(r.code == 0);

    r = run("verify --count 3000 --defs abcde --e-cap 500");
    CHECK(r.code == 0);

    CHECK(run("verify --count 10 --defs a").code == 2);
    CHECK(run("verify --count 10 --defs axe").code == 2);
}

TEST_CASE("scan reports the h = 1 nearest-integer counterexample") {
    auto r = run("scan --h 1 --max 200 --mode counterexample");
    CHECK(r.code == 1);
    CHECK(r.out.find("137: 220 != 221") != std::string::npos);
}

TEST_CASE("scan is clean where the theorem and conjecture hold") {
    auto r = run("scan --h 2 --max 1500 --mode counterexample");
    CHECK(r.code == 0);
    CHECK(r.out.find("no mismatch") != std::string::npos);

    r = run("scan --h 3 --max 300 --mode conjecture");
    CHECK(r.code == 0);

    CHECK(run("scan --h 0 --max 10 --mode conjecture").code == 2);
    CHECK(run("scan --h 1 --max 10 --mode sideways").code == 2);
}

TEST_CASE("scan respects the refinement cap environment variable") {
    std::string cmd = "METALLIC_E_CAP=4 " + std::string(METALLIC_CLI_PATH) +
                      " scan --h 1 --max 200 --mode counterexample 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int code = WEXITSTATUS(pclose(pipe));
    CHECK(code == 1);
    CHECK(out.find("137") != std::string::npos);
}

TEST_CASE("pi digits") {
    auto r = run("pi --digits 10");
    CHECK(r.code == 0);
    CHECK(r.out == "3.1415926535\n");

    r = run("pi --digits 1");
    CHECK(r.out == "3.1\n");

    CHECK(run("pi --digits 0").code == 2);
}

TEST_CASE("bdiff against a golden file") {
    auto gen = run("gen --def d --count 25");
    REQUIRE(gen.code == 0);

    auto golden = temp_file("golden.txt");
    {
        std::ofstream f(golden);
        f << "# first 25 terms\n" << gen.out;
    }
    auto r = run("bdiff --file " + golden.string() + " --def d");
    CHECK(r.code == 0);
    CHECK(r.out.find("SUCCESS") != std::string::npos);

    // round trip against every definition
    for (const char* def : {"a", "b", "c", "e"}) {
        r = run("bdiff --file " + golden.string() + " --def " + def);
        CHECK(r.code == 0);
    }

    auto corrupted = temp_file("corrupted.txt");
    {
        std::ofstream f(corrupted);
        f << "1 1\n2 4\n3 7\n4 8\n";  // 3rd value edited
    }
    r = run("bdiff --file " + corrupted.string() + " --def d");
    CHECK(r.code == 1);
    CHECK(r.out.find("divergence at index 3") != std::string::npos);

    auto gappy = temp_file("gappy.txt");
    {
        std::ofstream f(gappy);
        f << "1 1\n3 6\n";
    }
    CHECK(run("bdiff --file " + gappy.string() + " --def d").code == 2);

    CHECK(run("bdiff --file /no/such/file.txt --def d").code == 2);

    std::filesystem::remove(golden);
    std::filesystem::remove(corrupted);
    std::filesystem::remove(gappy);
}
