#include <doctest.h>

#include "jsonl_cache.hpp"
#include "quadclass/cli.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace quadclass;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("quadclass_test_" + name);
    fs::remove(p);
    return p;
}

std::size_t line_count(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);)
        ++n;
    return n;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run_cli({"classnum", "--", "-23"}).code == 0);
    CHECK(run_cli({"classnum", "--d", "-23"}).code == 0);
    CHECK(run_cli({"classnum", "--", "5"}).code == 2);
    CHECK(run_cli({"classnum", "--", "0"}).code == 2);
    CHECK(run_cli({"classnum", "--", "abc"}).code == 2);
    CHECK(run_cli({"witness", "--x", "2", "--y", "3", "--n", "3"}).code == 0);
    CHECK(run_cli({"witness", "--x", "2", "--y", "5", "--n", "3"}).code == 1);
    CHECK(run_cli({"witness", "--x", "2", "--y", "4", "--n", "3"}).code == 2);
    CHECK(run_cli({"witness", "--x", "2", "--y", "3", "--n", "4"}).code == 2);
    CHECK(run_cli({"--max-disc", "1000", "classnum", "--", "-1999"}).code == 3);
    CHECK(run_cli({"family", "cor7", "--p", "5", "--k", "1", "--t", "2"}).code == 3);
    CHECK(run_cli({"check", "cohn", "--V", "3", "--n", "5"}).code == 0);
    CHECK(run_cli({"check", "cohn", "--V", "3", "--n", "3"}).code == 0);
    CHECK(run_cli({"check", "hoque", "--m", "3", "--p", "5", "--n", "1", "--r", "4"}).code == 0);
    CHECK(run_cli({"family", "cor7", "--p", "5", "--k", "1", "--t", "1"}).code == 0);
    CHECK(run_cli({"family", "iizuka", "--n", "3", "--m", "1", "--l", "1"}).code == 0);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"classnum"}).code == 2);
    CHECK(run_cli({"--json", "--csv", "classnum", "--", "-23"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);

    const Outcome cap = run_cli({"--max-disc", "1000", "classnum", "--", "-1999"});
    CHECK(cap.err.find("resource cap") != std::string::npos);
}

TEST_CASE("table output") {
    const Outcome r = run_cli({"classnum", "--", "-23"});
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "d    d_sf  delta  h  cross_checked\n"
          "---  ----  -----  -  -------------\n"
          "-23  -23   -23    3  yes\n");

    const Outcome sq = run_cli({"squarefree", "--", "-242"});
    REQUIRE(sq.code == 0);
    CHECK(sq.out.find("-2") != std::string::npos);
    CHECK(sq.out.find("11") != std::string::npos);
}

TEST_CASE("json output") {
    const Outcome r = run_cli({"--json", "witness", "--x", "2", "--y", "3", "--n", "3"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["d"] == "23");
    CHECK(j["delta"] == "-23");
    CHECK(j["h"] == "3");
    CHECK(j["alpha_form"] == "(2,1,3)");
    CHECK(j["alpha_order"] == "3");
    CHECK(j["cofactor_s"] == "1");
    CHECK(j["n_divides_h"] == true);
    CHECK(j["alpha_n_principal"] == true);

    const Outcome f = run_cli({"--json", "family", "cor7", "--p", "5", "--k", "1", "--t", "1"});
    REQUIRE(f.code == 0);
    const auto fj = nlohmann::json::parse(f.out);
    CHECK(fj["family_kind"] == "cor7_triple");
    CHECK(fj["base_d"] == "-421874");
    REQUIRE(fj["members"].size() == 3);
    CHECK(fj["members"][0]["delta"] == "-1687496");
    CHECK(fj["members"][0]["asserted"] == true);
    CHECK(fj["all_asserted_pass"] == true);

    const Outcome s = run_cli({"--json", "scan", "--x", "2", "--n", "3", "--from", "3", "--to", "9"});
    REQUIRE(s.code == 0);
    const auto sj = nlohmann::json::parse(s.out);
    REQUIRE(sj["records"].size() == 4);
    CHECK(sj["records"][3]["report"]["delta"] == "-116");
    CHECK(sj["records"][3]["report"]["h"] == "6");

    const Outcome g = run_cli({"--json", "group", "--", "-84"});
    REQUIRE(g.code == 0);
    const auto gj = nlohmann::json::parse(g.out);
    CHECK(gj["h"] == "4");
}

TEST_CASE("csv output") {
    const Outcome r = run_cli({"--csv", "witness", "--x", "2", "--y", "3", "--n", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "x,y,n,d,t,delta,h,alpha,order,s,alpha^n=1,n|h\n"
          "2,3,3,23,1,-23,3,\"(2,1,3)\",3,1,yes,yes\n");

    const Outcome s = run_cli({"--csv", "search", "--n", "3", "--offsets", "0,1,4", "--from", "-200",
                               "--to", "-1"});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("-110,0,-110,-110,-440,12,yes") != std::string::npos);
}

TEST_CASE("search parsing and omitted offsets") {
    const Outcome s = run_cli({"search", "--n", "3", "--from", "-30", "--to", "-1", "--max-hits", "2"});
    REQUIRE(s.code == 0);
    const Outcome bad = run_cli({"search", "--n", "3", "--offsets", "0,x", "--from", "-30", "--to", "-1"});
    CHECK(bad.code == 2);
    const Outcome empty = run_cli({"search", "--n", "3", "--offsets", "0", "--from", "-1", "--to", "-5"});
    CHECK(empty.code == 2);
}

TEST_CASE("repeated runs are byte-identical") {
    const std::vector<std::string> args{"--json", "--seed", "42", "family", "cor5", "--n", "5",
                                        "--k", "2", "--l", "3"};
    const Outcome a = run_cli(args);
    const Outcome b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const Outcome c = run_cli({"--json", "--seed", "42", "--threads", "3", "family", "cor5", "--n", "5",
                               "--k", "2", "--l", "3"});
    CHECK(c.out == a.out);
}

TEST_CASE("cache: cold, warm and no-cache runs agree") {
    const fs::path cache = temp_file("cache.jsonl");
    const std::vector<std::string> base{"--json", "family", "cor7", "--p", "5", "--k", "1", "--t", "1"};
    std::vector<std::string> cached{"--cache", cache.string()};
    cached.insert(cached.end(), base.begin(), base.end());

    const Outcome plain = run_cli(base);
    const Outcome cold = run_cli(cached);
    const std::size_t lines_after_cold = line_count(cache);
    const Outcome warm = run_cli(cached);
    REQUIRE(plain.code == 0);
    CHECK(cold.out == plain.out);
    CHECK(warm.out == plain.out);
    CHECK(lines_after_cold > 0);
    CHECK(line_count(cache) == lines_after_cold);

    std::ifstream in(cache);
    for (std::string line; std::getline(in, line);) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j["v"] == 1);
        CHECK(j["key"].is_string());
        CHECK(j["value"].is_string());
    }
    fs::remove(cache);
}

TEST_CASE("cache: corrupt lines are skipped") {
    const fs::path cache = temp_file("corrupt.jsonl");
    {
        std::ofstream out(cache);
        out << "not json\n";
        out << R"({"v":2,"key":"h:-23","value":"99"})" << '\n';
        out << R"({"v":1,"key":"h:-23","value":"3;checked"})" << '\n';
        out << R"({"v":1,"key":42})" << '\n';
    }
    std::ostringstream warnings;
    cli::JsonlCache jc(cache, warnings);
    CHECK(jc.skipped_lines() == 3);
    CHECK(jc.get("h:-23") == std::optional<std::string>("3;checked"));
    CHECK_FALSE(warnings.str().empty());

    const Outcome r = run_cli({"--cache", cache.string(), "classnum", "--", "-23"});
    CHECK(r.code == 0);
    CHECK(r.err.find("skipp") != std::string::npos);
    fs::remove(cache);
}

TEST_CASE("cache: verify-cache detects tampering") {
    const fs::path cache = temp_file("verify.jsonl");
    REQUIRE(run_cli({"--cache", cache.string(), "classnum", "--", "-679"}).code == 0);
    const Outcome ok = run_cli({"--cache", cache.string(), "--verify-cache", "classnum", "--", "-679"});
    CHECK(ok.code == 0);
    CHECK(ok.err.find("0 mismatches") != std::string::npos);

    {
        std::ofstream out(cache, std::ios::app);
        out << R"({"v":1,"key":"h:-23","value":"5"})" << '\n';
    }
    const Outcome bad = run_cli({"--cache", cache.string(), "--verify-cache", "classnum", "--", "-23"});
    CHECK(bad.code == 4);
    CHECK(bad.err.find("h:-23") != std::string::npos);
    fs::remove(cache);
}

TEST_CASE("QUADCLASS_CACHE overrides --cache") {
    const fs::path env_cache = temp_file("env.jsonl");
    const fs::path flag_cache = temp_file("flag.jsonl");
    ::setenv("QUADCLASS_CACHE", env_cache.string().c_str(), 1);
    const Outcome r = run_cli({"--cache", flag_cache.string(), "classnum", "--", "-679"});
    ::unsetenv("QUADCLASS_CACHE");
    CHECK(r.code == 0);
    CHECK(fs::exists(env_cache));
    CHECK(line_count(env_cache) > 0);
    CHECK_FALSE(fs::exists(flag_cache));
    fs::remove(env_cache);
    fs::remove(flag_cache);
}

#ifdef QUADCLASS_BINARY
TEST_CASE("installed binary runs") {
    const std::string cmd = std::string(QUADCLASS_BINARY) + " classnum -- -23";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string text;
    char buf[256];
    while (std::fgets(buf, sizeof buf, pipe))
        text += buf;
    const int status = ::pclose(pipe);
    CHECK(status == 0);
    CHECK(text.find("-23    3") != std::string::npos);
}
#endif
