#include "support.hpp"

#include "gapquant/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using testsupport::data_path;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = gapquant::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() / ("gapquant_test_" + name);
    std::ofstream(path, std::ios::binary) << contents;
    return path.string();
}

const std::string kHeader = "id,standard,section,quoted_text,description,root_cause,probability,severity";

} // namespace

TEST_CASE("validate") {
    CHECK(run({"validate", data_path("table_fixture.csv")}).code == 0);

    const auto bad = temp_file("bad.csv", kHeader + "\nC1,N,1,q,d,Data Vulnerability,1,1\nC2,N,1,q,d,Data Vulnerability,1,Awful\n");
    const auto r = run({"validate", bad});
    CHECK(r.code == 1);
    CHECK(r.out.find("row 3 [severity] error") != std::string::npos);

    CHECK(run({"validate", data_path("no_such_file.csv")}).code == 2);
    CHECK(run({"validate", temp_file("noheader.csv", "")}).code == 2);
}

TEST_CASE("metrics") {
    const auto fixture = data_path("table_fixture.csv");
    const auto md = run({"metrics", fixture, "--by", "standard", "--format", "md"});
    CHECK(md.code == 0);
    CHECK(md.out.find("| NIST AI RMF 1.0 Playbook | 10.54 | 0.29 | 69.23 | 78 | 0.25 |") != std::string::npos);

    const auto overall = nlohmann::json::parse(run({"metrics", fixture}).out);
    REQUIRE(overall["standards"].size() == 1);
    CHECK(overall["standards"][0]["n"] == 136);

    // Grid and rule modes differ only through the Likely/Moderate concerns.
    const auto grid = nlohmann::json::parse(run({"metrics", fixture, "--by", "standard", "--mode", "grid"}).out);
    const auto rules = nlohmann::json::parse(run({"metrics", fixture, "--by", "standard", "--mode", "rules"}).out);
    const std::size_t at_diff_cell[] = {4, 5, 5};   // ALTAI, ICO, NIST
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& g = grid["standards"][i];
        const auto& r = rules["standards"][i];
        CHECK(g["csgp_percent"] == r["csgp_percent"]);
        CHECK(g["rsi"] == r["rsi"]);
        CHECK(r["tier_counts"]["High"].get<std::size_t>() - g["tier_counts"]["High"].get<std::size_t>() == at_diff_cell[i]);
        CHECK(g["tier_counts"]["Medium"].get<std::size_t>() - r["tier_counts"]["Medium"].get<std::size_t>() == at_diff_cell[i]);
        CHECK(g["tier_counts"]["ExtremelyHigh"] == r["tier_counts"]["ExtremelyHigh"]);
        CHECK(g["tier_counts"]["Low"] == r["tier_counts"]["Low"]);
    }

    const auto empty = temp_file("all_rejected.csv", kHeader + ",expert_1,expert_2,expert_3,expert_4\n"
                                                            "C1,N,1,q,d,Data Vulnerability,1,1,rejected,rejected,rejected,confirmed\n");
    const auto r = run({"metrics", empty, "--by", "standard"});
    CHECK(r.code == 1);
    CHECK(r.err.find("EmptyDataset") != std::string::npos);

    CHECK(run({"metrics", fixture, "--format", "svg"}).code == 1);
    CHECK(run({"metrics", fixture, "--mode", "both"}).code == 2);
    CHECK(run({"metrics", fixture, "--threshold", "1.5"}).code == 2);
    CHECK(run({"metrics", fixture, "--threshold", "abc"}).code == 2);
    CHECK(run({"metrics", fixture, "--threshold", "0"}).code == 2);
}

TEST_CASE("metrics writes to --out") {
    const auto path = (std::filesystem::temp_directory_path() / "gapquant_test_out.json").string();
    std::filesystem::remove(path);
    const auto r = run({"metrics", data_path("table_fixture.csv"), "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(nlohmann::json::parse(in)["standards"].size() == 1);
}

TEST_CASE("metrics honours column renames") {
    const auto path = temp_file("renamed.csv", "ID,Doc,section,quoted_text,description,Cause,P,S\nC1,N,1,q,d,Data Vulnerability,Likely,Critical\n");
    CHECK(run({"metrics", path}).code == 2);
    const auto r = run({"metrics", path, "--map", "Doc=standard", "--map", "Cause=root_cause", "--map", "P=probability",
                        "--map", "S=severity"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["standards"][0]["rsi"] == 12.0);
}

TEST_CASE("alpha") {
    const auto agree = temp_file("agree.csv", "item_id,a,b,c\n1,x,x,x\n2,y,y,y\n3,x,x,\n");
    const auto r = run({"alpha", agree});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("alpha=1.0\n", 0) == 0);

    const auto oracle = temp_file("oracle.csv", "item_id,a,b\n1,0,1\n2,1,0\n");
    const auto j = nlohmann::json::parse(run({"alpha", oracle, "--format", "json"}).out);
    CHECK(std::abs(j["alpha"].get<double>() - (-0.5)) < 1e-9);

    const auto one = temp_file("one.csv", "item_id,a\n1,0\n2,1\n");
    const auto e = run({"alpha", one});
    CHECK(e.code == 1);
    CHECK(e.err.find("InsufficientData") != std::string::npos);

    CHECK(run({"alpha", temp_file("dup.csv", "item_id,a,b\n1,0,0\n1,0,0\n")}).code == 2);
}

TEST_CASE("consensus, plan, classify, report and matrix-dump") {
    const auto ballots = temp_file("ballots.csv", kHeader + ",expert_1,expert_2,expert_3,expert_4\n"
                                   "C1,N,1,q,d,Data Vulnerability,5,4,confirmed,confirmed,plausible,rejected\n"
                                   "C2,N,1,q,d,Data Vulnerability,1,1,confirmed,confirmed,rejected,rejected\n"
                                   "C3,N,1,q,d,Ambiguous Specification,3,3,,,,\n");
    const auto c = run({"consensus", ballots});
    CHECK(c.code == 0);
    CHECK(c.err.find("accepted=1 rejected=1 pending=0 active=2") != std::string::npos);
    CHECK(c.out.find("C2,N,1,q,d,Data Vulnerability,Unlikely,Negligible,RejectedByExperts") != std::string::npos);

    const auto m = nlohmann::json::parse(run({"metrics", ballots}).out);
    CHECK(m["standards"][0]["n"] == 2);

    const auto p = run({"plan", data_path("table_fixture.csv"), "--budget", "3", "--seed", "4"});
    CHECK(p.code == 0);
    CHECK(std::count(p.out.begin(), p.out.end(), '\n') == 3);
    CHECK(run({"plan", data_path("table_fixture.csv"), "--budget", "3", "--seed", "4"}).out == p.out);

    const auto cl = run({"classify", ballots});
    CHECK(cl.out.find("C1,N,5,4,20,ExtremelyHigh,ExtremelyHigh") != std::string::npos);
    CHECK(cl.out.find("C2") == std::string::npos);

    const auto rep = run({"report", data_path("table_fixture.csv"), "--table", "tiers", "--format", "csv"});
    CHECK(rep.out.find("NIST AI RMF 1.0 Playbook,78,19,30,26,3") != std::string::npos);
    const auto svg = run({"report", data_path("table_fixture.csv"), "--table", "rootcause", "--format", "svg"});
    CHECK(svg.out.rfind("<svg", 0) == 0);
    const auto grid = run({"report", data_path("table_fixture.csv"), "--table", "matrix", "--standard", "ALTAI HLEG EC",
                           "--format", "json"});
    CHECK(nlohmann::json::parse(grid.out)["total"] == 28);

    const auto dump = run({"matrix-dump", "--format", "csv"});
    CHECK(dump.code == 0);
    CHECK(std::count(dump.out.begin(), dump.out.end(), '\n') == 41);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
