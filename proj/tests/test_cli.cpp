#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "triapn/lut.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(TRIAPN_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("verify: consistent instances exit 0, usage errors exit 1") {
    const auto ok = run("verify --m 3 --k 1 --a 1 --b 1 --c 0");
    CHECK(ok.exit_code == 0);
    const auto doc = json::parse(ok.out);
    CHECK(doc["consistent"] == true);
    CHECK(doc["du"] == 2);
    CHECK(doc["core"] == 1);
    CHECK(doc["image_class"] == "bijective");
    CHECK(doc["config"]["reduction"] == "0b1011");

    // consistent non-example: roots exist and the map is not bijective
    const auto non = run("verify --m 3 --k 1 --a 1 --b 0 --c 0");
    CHECK(non.exit_code == 0);
    const auto non_doc = json::parse(non.out);
    CHECK(non_doc["condition_has_root"] == true);
    CHECK(non_doc["projective"] != "bijective");
    CHECK(non_doc["consistent"] == true);

    CHECK(run("verify --m 3 --k 3 --a 1 --b 0 --c 0").exit_code == 1); // BadTwist
    CHECK(run("verify --m 3 --k 1 --a 0 --b 0 --c 0").exit_code == 1); // ZeroA
    CHECK(run("verify --m 3 --k 1").exit_code == 1);                   // missing flags
    CHECK(run("").exit_code == 1);
    CHECK(run("no-such-command").exit_code == 1);
}

TEST_CASE("export round-trips through the ddt subcommand") {
    const std::string sbox = "cli_export.txt";
    const std::string sidecar = "cli_export.txt.json";
    const auto exported =
        run("export --m 3 --k 1 --a 1 --b 1 --c 0 --out " + sbox);
    CHECK(exported.exit_code == 0);

    const auto side = json::parse(slurp(sidecar));
    CHECK(side["du"] == 2);
    CHECK(side["image_class"] == "bijective");
    CHECK(side["verified"] == true);
    CHECK(side["m"] == 3);
    CHECK(side["reduction"] == "0b1011");

    const auto lut = triapn::from_sbox_text(slurp(sbox));
    CHECK(lut.n == 9);
    CHECK(lut.table.size() == 512);
    CHECK(lut.table[0] == 0);
    CHECK(lut.is_permutation());

    const auto ddt = run("ddt --in " + sbox);
    CHECK(ddt.exit_code == 0);
    const auto ddt_doc = json::parse(ddt.out);
    CHECK(ddt_doc["max_uniformity"] == side["du"]);
    CHECK(ddt_doc["early_aborted"] == false);
    CHECK(ddt_doc["n"] == 9);

    std::remove(sbox.c_str());
    std::remove(sidecar.c_str());
}

TEST_CASE("walsh subcommand reports the requested masks") {
    const std::string sbox = "cli_walsh.txt";
    REQUIRE(run("export --m 2 --k 1 --a 1 --b 0 --c 1 --out " + sbox).exit_code == 0);
    const auto r = run("walsh --in " + sbox + " --mask 1 --mask 3f");
    CHECK(r.exit_code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["n"] == 6);
    REQUIRE(doc["masks"].size() == 2);
    CHECK(doc["masks"][0]["v"] == "1");
    CHECK(doc["masks"][1]["v"] == "3f");
    std::remove(sbox.c_str());
    std::remove((sbox + ".json").c_str());
}

TEST_CASE("skew subcommand computes ring operations") {
    const auto prod = run("skew --m 2 --k 1 --op mul --poly 2,1 --poly2 2,1");
    CHECK(prod.exit_code == 0);
    CHECK(prod.out == "product: 3,1,1\n");

    const auto divr = run("skew --m 2 --k 1 --op divr --poly 3,1,1 --poly2 2,1");
    CHECK(divr.exit_code == 0);
    CHECK(divr.out == "quotient: 2,1\nremainder: 0\n");

    const auto lindiv = run("skew --m 3 --k 1 --op lindiv --poly 1,0,1,1");
    CHECK(lindiv.exit_code == 0);
    CHECK(lindiv.out == "right: none\nleft: none\n");

    CHECK(run("skew --m 2 --k 1 --op mul --poly 2,1").exit_code == 1); // missing poly2
    CHECK(run("skew --m 2 --k 1 --op bogus --poly 2,1").exit_code == 1);
}

TEST_CASE("search subcommand writes deterministic artifacts") {
    const std::string csv1 = "cli_sweep1.csv", csv2 = "cli_sweep2.csv";
    const std::string json1 = "cli_sweep1.json", json2 = "cli_sweep2.json";
    const auto r1 = run("search --m 2 --k 1 --level full --workers 1 --csv " + csv1 +
                        " --json " + json1);
    const auto r2 = run("search --m 2 --k 1 --level full --workers 4 --csv " + csv2 +
                        " --json " + json2);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(csv1) == slurp(csv2));
    CHECK(slurp(json1) == slurp(json2));
    const auto doc = json::parse(slurp(json1));
    CHECK(doc["total"] == 48);
    CHECK(doc["violations"] == 0);
    for (const auto& path : {csv1, csv2, json1, json2})
        std::remove(path.c_str());
}

TEST_CASE("search --first reports the least hit") {
    const auto r = run("search --m 3 --k 1 --level full --first");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("a=1 b=0 c=1") != std::string::npos);
    CHECK(r.out.find("du=2") != std::string::npos);
}

TEST_CASE("compare and gold subcommands succeed on reference sizes") {
    const auto cmp = run("compare --m 3 --k 1");
    CHECK(cmp.exit_code == 0);
    CHECK(cmp.out.find("li_kaleyski_1: sigma reading matches") != std::string::npos);
    CHECK(cmp.out.find("li_kaleyski_2: sigma reading matches") != std::string::npos);
    CHECK(cmp.out.find("bartoli_stanica: sigma reading matches") != std::string::npos);
    CHECK(cmp.out.find("literal-q reading: degenerate") != std::string::npos);

    const auto gold = run("gold --n 9 --i 1 --s 1ac --j 3");
    CHECK(gold.exit_code == 0);
    CHECK(gold.out.find("du=2") != std::string::npos);
    CHECK(gold.out.find("holds") != std::string::npos);
    CHECK(run("gold --n 9 --i 3").exit_code == 1); // NotCoprime
}
