#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "easyqg/cli.hpp"
#include "easyqg/partition.hpp"
#include "easyqg/rational.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace easyqg;

namespace {

const std::string kGoldenDir = EASYQG_GOLDEN_DIR;

std::string trim(std::string s) {
    const auto a = s.find_first_not_of(' ');
    const auto b = s.find_last_not_of(' ');
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

// Splits on single spaces; an empty token stands for an empty argument, so
// "--i  --j " passes two empty words.
std::vector<std::string> split_args(const std::string& text) {
    std::vector<std::string> args;
    std::string cur;
    for (char ch : text) {
        if (ch == ' ') {
            args.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    args.push_back(cur);
    for (auto& a : args) {
        const auto pos = a.find("{dir}");
        if (pos != std::string::npos) a.replace(pos, 5, kGoldenDir);
    }
    return args;
}

cli::Outcome run(std::initializer_list<std::string> args) { return cli::run(args); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("golden outputs") {
    // EASYQG_UPDATE_GOLDEN=1 rewrites the expected files instead of comparing.
    const bool update = std::getenv("EASYQG_UPDATE_GOLDEN") != nullptr;
    std::ifstream cases(kGoldenDir + "/cases.txt");
    REQUIRE(cases.good());
    std::string line;
    int count = 0;
    while (std::getline(cases, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto bar = line.find(" | ");
        REQUIRE(bar != std::string::npos);
        const std::string name = trim(line.substr(0, bar));
        const auto outcome = cli::run(split_args(line.substr(bar + 3)));
        const std::string got = "exit " + std::to_string(outcome.exit_code) + "\n" + outcome.out;
        const std::string path = kGoldenDir + "/" + name + ".out";
        if (update) {
            std::ofstream(path) << got;
        } else {
            CHECK_MESSAGE(slurp(path) == got, name);
        }
        ++count;
    }
    CHECK(count > 30);
}

TEST_CASE("exit codes and error objects") {
    CHECK(run({"integrate", "--cat", "S", "--n", "3", "--i", "1", "--j", "1"}).exit_code == 0);
    const auto bad = run({"integrate", "--cat", "S", "--n", "1", "--i", "1,1", "--j", "1,1"});
    CHECK(bad.exit_code == 2);
    const auto err = nlohmann::json::parse(bad.out);
    CHECK(err["error"]["code"] == "singular");
    CHECK(nlohmann::json::parse(run({"bogus"}).out)["error"]["code"] == "usage");
    CHECK(run({"--help"}).exit_code == 0);
    CHECK(run({}).exit_code == 2);
}

TEST_CASE("kmax flag does not leak") {
    const int before = k_max();
    CHECK(run({"--kmax", "3", "partitions", "--k", "4"}).exit_code == 2);
    CHECK(k_max() == before);
    CHECK(run({"--kmax", "12", "partitions", "--cat", "O", "--k", "2"}).exit_code == 0);
    CHECK(k_max() == before);
}

TEST_CASE("text formats round trip") {
    const auto listing = nlohmann::json::parse(run({"partitions", "--k", "5"}).out);
    CHECK(listing["count"] == 52);
    for (const auto& p : listing["partitions"]) {
        const std::string text = p.get<std::string>();
        CHECK(SetPartition::parse(text).to_string() == text);
    }
    const auto table = nlohmann::json::parse(run({"invert", "--cat", "B", "--k", "3", "--n", "4"}).out);
    for (const auto& row : table["weingarten"])
        for (const auto& v : row) {
            const std::string text = v.get<std::string>();
            CHECK(to_string(parse_rational(text)) == text);
        }
    CHECK_THROWS(parse_rational("2/4x"));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK(to_string(parse_rational("2/4")) == "1/2");
}

TEST_CASE("transform round trip through the cli") {
    const auto c = nlohmann::json::parse(
        run({"transform", "--species", "free", "--direction", "m2c", "--moments", "1/2,3,-1,7/3,5"}).out);
    std::string list;
    for (const auto& v : c["cumulants"]) list += (list.empty() ? "" : ",") + v.get<std::string>();
    const auto m = nlohmann::json::parse(
        run({"transform", "--species", "free", "--direction", "c2m", "--moments", list}).out);
    CHECK(m["moments"] == nlohmann::json::array({"1/2", "3", "-1", "7/3", "5"}));
}

TEST_CASE("monte carlo output is reproducible") {
    const auto a = run({"mc", "--group", "B", "--n", "4", "--i", "1,2", "--j", "1,1", "--samples", "3000", "--seed", "5"});
    const auto b = run({"mc", "--group", "B", "--n", "4", "--i", "1,2", "--j", "1,1", "--samples", "3000", "--seed", "5"});
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}
