#include "ogeg/cli.hpp"

#include "ogeg/distributions.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ogeg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& contents) {
    const fs::path dir = fs::temp_directory_path() / "ogeg_cli_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << contents;
    return p;
}

}  // namespace

TEST_CASE("builtin dataset") {
    const Dataset d = cli::load_dataset("aarset");
    CHECK(d.size() == 50);
    CHECK(d.min() == 0.1);
    CHECK(d.max() == 86.0);
    CHECK(cli::load_dataset("AARSET").size() == 50);
}

TEST_CASE("dataset files") {
    const Dataset plain = cli::load_dataset(write_temp("plain.txt", "1\n2\n3\n").string());
    CHECK(std::vector<double>(plain.values().begin(), plain.values().end()) == std::vector<double>{1, 2, 3});

    const Dataset csv = cli::load_dataset(write_temp("h.csv", "time\r\n0.5,\r\n\r\n2.5\r\n").string());
    CHECK(csv.size() == 2);

    auto error_of = [](const std::string& name, const std::string& text) -> std::string {
        try {
            cli::load_dataset(write_temp(name, text).string());
        } catch (const DataError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(error_of("neg.txt", "-1\n").find("line 1") != std::string::npos);
    CHECK(error_of("word.txt", "1\n2\nabc\n").find("line 3") != std::string::npos);
    CHECK(error_of("zero.txt", "1\n0\n").find("line 2") != std::string::npos);
    CHECK(error_of("two.csv", "1,2\n").find("column 3") != std::string::npos);
    CHECK_FALSE(error_of("empty.txt", "\n\n").empty());
    CHECK_THROWS_AS(cli::load_dataset("/nonexistent/file.txt"), DataError);
}

TEST_CASE("compare report") {
    const Outcome r = invoke({"compare", "--data", "aarset", "--families", "e,ge,g,gg,bg,ogeg", "--format", "json"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "report_v1");
    CHECK(j["provenance"]["dataset"]["label"] == "aarset");
    const auto& rows = j["result"]["rows"];
    REQUIRE(rows.size() == 6);
    CHECK(rows[0]["family"] == "ogeg");
    CHECK(std::abs(rows[0]["gof"]["neg_loglik"].get<double>() - 215.9735) < 0.05);
    CHECK(std::abs(rows[0]["reference"]["aic"].get<double>() - 423.947) < 1e-9);
    bool flagged = false;
    for (const auto& n : j["notes"]) flagged |= n.get<std::string>().find("OGE-G") == 0;
    CHECK(flagged);

    const Outcome t1 = invoke({"compare", "--format", "table"});
    const Outcome t2 = invoke({"compare", "--format", "table"});
    CHECK(t1.out == t2.out);
    CHECK(t1.out.find("OGE-G") < t1.out.find("BG"));
}

TEST_CASE("gof command") {
    const Outcome r = invoke({"gof", "--family", "g", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["result"]["gof"]["ks_stat"].get<double>() - 0.1696) < 0.005);
    CHECK(std::abs(j["result"]["gof"]["ks_pvalue"].get<double>() - 0.1123) < 0.02);
}

TEST_CASE("fit command") {
    const Outcome r = invoke({"fit", "--family", "ogeg", "--ci", "0.9", "--alpha0", "0.05", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["ci_level"] == 0.9);
    CHECK(j["result"]["conf_intervals"].size() == 4);
    CHECK(invoke({"fit", "--family", "gg", "--format", "csv"}).out.rfind("parameter,estimate", 0) == 0);
}

TEST_CASE("sampling is reproducible and round-trips") {
    const std::vector<std::string> args = {"sample", "--family", "ogeg", "--params", "1,1,1,1", "--n", "5", "--seed", "1"};
    const Outcome a = invoke(args);
    const Outcome b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const Dataset back = cli::load_dataset(write_temp("sample.txt", a.out).string());
    RandomSource rng(1);
    const Dataset direct = sample(ModelSpec::ogeg({1, 1, 1, 1}), 5, rng);
    CHECK(std::equal(back.values().begin(), back.values().end(), direct.values().begin()));
}

TEST_CASE("moments command") {
    const Outcome r = invoke({"moments", "--params", "1,1,1,1", "--r", "1..4", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["moments"].size() == 4);
    CHECK(invoke({"moments", "--params", "1,1,1,1", "--method", "mc", "--samples", "1000"}).code == 0);
}

TEST_CASE("curves command") {
    const Outcome s = invoke({"curves", "--what", "survival", "--family", "g", "--points", "10"});
    REQUIRE(s.code == 0);
    CHECK(s.out.rfind("x,value,series\n", 0) == 0);
    CHECK(s.out.find("kaplan_meier") != std::string::npos);
    CHECK(s.out.find("fitted:g") != std::string::npos);
    const Outcome h = invoke({"curves", "--what", "hazard", "--family", "ogeg", "--params", "0.04,0.000345,0.078,0.194"});
    CHECK(h.code == 0);
    const Outcome p = invoke({"curves", "--what", "profile", "--family", "g", "--points", "6"});
    CHECK(p.code == 0);
    CHECK(p.out.find("profile:lambda") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(invoke({}).code == cli::kExitUsage);
    CHECK(invoke({"bogus"}).code == cli::kExitUsage);
    CHECK(invoke({"fit", "--family", "weibull"}).code == cli::kExitUsage);
    CHECK(invoke({"fit", "--format", "xml"}).code == cli::kExitUsage);
    CHECK(invoke({"fit", "--data", "/nonexistent.txt"}).code == cli::kExitData);
    CHECK(invoke({"fit", "--family", "bg", "--data", write_temp("three.txt", "1\n2\n3\n").string()}).code ==
          cli::kExitData);
    CHECK(invoke({"sample", "--params", "1,1,1,-1"}).code == cli::kExitUsage);
    CHECK(invoke({"--help"}).code == cli::kExitOk);
}
