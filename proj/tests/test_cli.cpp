#include <dioph/cli.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dioph::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::ordered_json run_json(std::vector<std::string> args, int expected_code) {
    args.push_back("--output");
    args.push_back("json");
    const Result r = run(args);
    EXPECT_EQ(r.code, expected_code) << r.err;
    return nlohmann::ordered_json::parse(r.out);
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(CliVerify, Examples) {
    auto a = run_json({"verify", "--set", "7,14,41", "--k", "2"}, 0);
    EXPECT_EQ(a["verdict"], "pass");
    EXPECT_EQ(a["pairs"][0]["root"], "10");
    EXPECT_EQ(a["pairs"][1]["root"], "17");
    EXPECT_EQ(a["pairs"][2]["root"], "24");

    auto b = run_json({"verify", "--set", "3,4,13", "--k", "-3"}, 0);
    EXPECT_EQ(b["pairs"][0]["root"], "3");
    EXPECT_EQ(b["pairs"][1]["root"], "6");
    EXPECT_EQ(b["pairs"][2]["root"], "7");
    EXPECT_EQ(b["k"], "-3");

    auto c = run_json({"verify", "--set", "7,14,40", "--k", "2"}, 1);
    EXPECT_EQ(c["verdict"], "fail");
    EXPECT_TRUE(c["pairs"][2]["root"].is_null());
    EXPECT_EQ(c["pairs"][2]["shifted"], "562");

    const Result text = run({"verify", "--set", "7,14,40", "--k", "2"});
    EXPECT_EQ(text.code, 1);
    EXPECT_TRUE(contains(text.out, "first failing pair 7*40"));
}

TEST(CliVerify, UsageErrors) {
    EXPECT_EQ(run({"verify", "--set", "7,x,41", "--k", "2"}).code, 2);
    EXPECT_EQ(run({"verify", "--set", "7", "--k", "2"}).code, 2);
    EXPECT_EQ(run({"verify", "--set", "7,7", "--k", "2"}).code, 2);
    EXPECT_EQ(run({"verify", "--set", "0,7", "--k", "2"}).code, 2);
    EXPECT_EQ(run({"verify", "--set", "1,7", "--k", "0"}).code, 2);
    EXPECT_EQ(run({"verify", "--set", "1,7"}).code, 2);
    EXPECT_EQ(run({"verify", "--set", "1,7,", "--k", "2"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    const Result r = run({"verify", "--set", "7,x", "--k", "2"});
    EXPECT_TRUE(contains(r.err, "error"));
}

TEST(CliClassify, Examples) {
    EXPECT_EQ(run_json({"classify", "--set", "7,14,41", "--k", "2"}, 0)["verdict"], "regular");
    auto b = run_json({"classify", "--set", "41,82,239", "--k", "2"}, 0);
    EXPECT_EQ(b["verdict"], "regular");
    EXPECT_EQ(b["lhs"], "13456");
    EXPECT_EQ(b["rhs"], "13456");
    EXPECT_EQ(run_json({"classify", "--set", "1,3,120", "--k", "1"}, 1)["verdict"], "irregular");
    EXPECT_EQ(run({"classify", "--set", "1,2", "--k", "2"}).code, 2);
}

TEST(CliExtend, Examples) {
    auto a = run_json({"extend", "--set", "1,3,8", "--k", "1"}, 0);
    EXPECT_EQ(a["verdict"], "extended");
    bool found = false;
    for (const auto& c : a["candidates"])
        if (c["m"] == "120" && c["complete"] == true) found = true;
    EXPECT_TRUE(found);
    EXPECT_TRUE(a["certificate"].is_null());

    auto b = run_json({"extend", "--set", "7,14,41", "--k", "2"}, 3);
    EXPECT_EQ(b["verdict"], "certified_non_extendable");
    EXPECT_EQ(b["certificate"]["modulus"], 4);
    EXPECT_EQ(b["self_hits"][0], "41");

    const Result c = run({"extend", "--set", "41,239,478", "--k", "2"});
    EXPECT_TRUE(c.code == 3 || c.code == 4);
    EXPECT_FALSE(contains(c.out, "verdict: extended"));

    const Result text = run({"extend", "--set", "7,14,41", "--k", "2"});
    EXPECT_TRUE(contains(text.out, "certified non-extendable, modulus 4"));
}

TEST(CliExtend, BoundedVerdictWithoutCertificate) {
    auto r = run_json({"extend", "--set", "1,5,10", "--k", "-1", "--max-modulus", "2000"}, 4);
    EXPECT_EQ(r["verdict"], "no_extension_below_bound");
    EXPECT_TRUE(r["certificate"].is_null());
}

TEST(CliExtend, BruteStrategy) {
    auto r = run_json({"extend", "--set", "1,3,8", "--k", "1", "--strategy", "brute", "--max-m", "500"}, 0);
    EXPECT_EQ(r["strategy"], "brute_force");
    EXPECT_EQ(r["bound"], "500");
    EXPECT_EQ(r["candidates"][0]["m"], "120");
}

TEST(CliExtend, InvalidTriple) {
    const Result r = run({"extend", "--set", "7,14,40", "--k", "2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "7*40 + 2 = 282"));
    EXPECT_EQ(run({"extend", "--set", "1,3", "--k", "1"}).code, 2);
    EXPECT_EQ(run({"extend", "--set", "1,3,8", "--k", "1", "--strategy", "lucky"}).code, 2);
}

TEST(CliPell, Examples) {
    auto a = run_json({"pell", "--d", "8"}, 0);
    EXPECT_EQ(a["fundamental"]["x"], "3");
    EXPECT_EQ(a["fundamental"]["y"], "1");
    EXPECT_EQ(a["coefficient"], "6");
    EXPECT_EQ(a["solutions"][3]["x"], "99");

    auto b = run_json({"pell", "--d", "48"}, 0);
    EXPECT_EQ(b["fundamental"]["x"], "7");
    EXPECT_EQ(b["coefficient"], "14");

    auto c = run_json({"pell", "--d", "2", "--n", "-2", "--count", "3"}, 0);
    ASSERT_EQ(c["classes"].size(), 1u);
    EXPECT_EQ(c["classes"][0]["base"]["x"], "0");
    EXPECT_EQ(c["classes"][0]["base"]["y"], "1");
    EXPECT_EQ(c["classes"][0]["members"][1]["x"], "4");
    EXPECT_EQ(c["classes"][0]["members"][1]["y"], "3");
    EXPECT_EQ(c["classes"][0]["members"][2]["x"], "24");
    EXPECT_EQ(c["classes"][0]["members"][2]["y"], "17");

    EXPECT_TRUE(run_json({"pell", "--d", "3", "--n", "2"}, 0)["classes"].empty());

    const Result text = run({"pell", "--d", "8"});
    EXPECT_TRUE(contains(text.out, "fundamental solution (3, 1), recurrence coefficient 6"));
}

TEST(CliPell, InvalidD) {
    EXPECT_EQ(run({"pell", "--d", "9"}).code, 2);
    EXPECT_EQ(run({"pell", "--d", "1"}).code, 2);
    EXPECT_EQ(run({"pell", "--d", "abc"}).code, 2);
    EXPECT_EQ(run({"pell", "--d", "8", "--n", "0"}).code, 2);
}

TEST(CliObstruct, Examples) {
    auto a = run_json({"obstruct", "--k", "2", "--prime", "3"}, 0);
    EXPECT_EQ(a["legendre"], -1);
    EXPECT_EQ(a["excluded"], true);
    EXPECT_EQ(a["mod4_quadruple_obstruction"], true);

    auto b = run_json({"obstruct", "--k", "2", "--prime", "5"}, 0);
    EXPECT_EQ(b["legendre"], -1);
    EXPECT_EQ(b["excluded"], true);

    auto c = run_json({"obstruct", "--k", "1", "--prime", "3"}, 0);
    EXPECT_EQ(c["excluded"], false);
    EXPECT_EQ(c["mod4_quadruple_obstruction"], false);

    auto d = run_json({"obstruct", "--k", "-3", "--prime", "5"}, 0);
    EXPECT_EQ(d["excluded"], true);

    const Result text = run({"obstruct", "--k", "2", "--prime", "3"});
    EXPECT_TRUE(contains(text.out, "(2/3) = -1"));
    EXPECT_TRUE(contains(text.out, "excluded"));
}

TEST(CliObstruct, InvalidPrime) {
    EXPECT_EQ(run({"obstruct", "--k", "2", "--prime", "4"}).code, 2);
    EXPECT_EQ(run({"obstruct", "--k", "2", "--prime", "9"}).code, 2);
    EXPECT_EQ(run({"obstruct", "--k", "2", "--prime", "2"}).code, 2);
}

TEST(CliJson, RoundTripIsByteIdentical) {
    const std::vector<std::vector<std::string>> commands{
        {"verify", "--set", "7,14,41", "--k", "2"},
        {"verify", "--set", "7,14,40", "--k", "2"},
        {"classify", "--set", "3,4,13", "--k", "-3"},
        {"extend", "--set", "7,14,41", "--k", "2"},
        {"extend", "--set", "1,3,8", "--k", "1"},
        {"pell", "--d", "61", "--count", "6"},
        {"pell", "--d", "2", "--n", "-2"},
        {"obstruct", "--k", "-3", "--prime", "5"},
    };
    for (auto args : commands) {
        args.push_back("--output");
        args.push_back("json");
        const Result first = run(args);
        const Result second = run(args);
        EXPECT_EQ(first.out, second.out);
        EXPECT_EQ(nlohmann::ordered_json::parse(first.out).dump(2) + "\n", first.out);
        EXPECT_FALSE(contains(first.out, "e+"));
        EXPECT_FALSE(contains(first.out, "."));
    }
}

TEST(CliJson, KeysInCanonicalOrder) {
    auto j = run_json({"extend", "--set", "7,14,41", "--k", "2"}, 3);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"command", "set", "k", "strategy", "bound", "verdict", "candidates",
                                              "self_hits", "certificate"}));
    std::vector<std::string> cert_keys;
    for (auto it = j["certificate"].begin(); it != j["certificate"].end(); ++it) cert_keys.push_back(it.key());
    EXPECT_EQ(cert_keys, (std::vector<std::string>{"modulus", "allowed_residues"}));
}
