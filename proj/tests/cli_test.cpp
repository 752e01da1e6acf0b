#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>
#include <sstream>

#include "ecoscope/cli.hpp"

using ecoscope::cli::run;

namespace {

const std::string kFixture30 = std::string(ECOSCOPE_FIXTURE_DIR) + "/fixture30.snap";
const std::string kAdvisorNpm = std::string(ECOSCOPE_FIXTURE_DIR) + "/advisor_npm.snap";

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = run(args, in, out, err);
    return {code, out.str(), err.str()};
}

// published parse rule for StructuredText: one record per line, fields
// separated by tabs, first field is the record kind, the rest key=value
std::vector<std::map<std::string, std::string>> parse_structured(const std::string& text,
                                                                 std::string* kind0 = nullptr) {
    std::vector<std::map<std::string, std::string>> records;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        std::map<std::string, std::string> record;
        std::istringstream fields(line);
        std::string field;
        bool first = true;
        while (std::getline(fields, field, '\t')) {
            if (first) {
                record["_kind"] = field;
                if (kind0 && records.empty()) *kind0 = field;
                first = false;
                continue;
            }
            auto eq = field.find('=');
            REQUIRE(eq != std::string::npos);
            record[field.substr(0, eq)] = field.substr(eq + 1);
        }
        records.push_back(std::move(record));
    }
    return records;
}

} // namespace

TEST_CASE("unknown subcommand exits 2 with usage text") {
    auto result = run_cli({"frobnicate"});
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("Usage") != std::string::npos);
}

TEST_CASE("no subcommand exits 2") {
    CHECK(run_cli({}).exit_code == 2);
}

TEST_CASE("missing snapshot is a config error") {
    unsetenv("ECOSCOPE_SNAPSHOT");
    auto result = run_cli({"graph-stats"});
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("snapshot") != std::string::npos);
}

TEST_CASE("ECOSCOPE_SNAPSHOT works as fallback") {
    setenv("ECOSCOPE_SNAPSHOT", kFixture30.c_str(), 1);
    auto result = run_cli({"graph-stats", "--format", "structured"});
    unsetenv("ECOSCOPE_SNAPSHOT");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("graph-stats\t") == 0);
}

TEST_CASE("check on the typosquat fixture: decline, accept, assume-yes") {
    // declined (empty stdin)
    auto declined = run_cli({"check", "crossenv", "--snapshot", kAdvisorNpm});
    CHECK(declined.exit_code == 1);
    CHECK(declined.out.find("cross-env") != std::string::npos);
    CHECK(declined.err.find("Proceed anyway?") != std::string::npos);

    // user confirms
    auto confirmed = run_cli({"check", "crossenv", "--snapshot", kAdvisorNpm}, "y\n");
    CHECK(confirmed.exit_code == 0);

    // --yes never reads stdin and succeeds
    auto assumed = run_cli({"check", "crossenv", "--snapshot", kAdvisorNpm, "--yes"});
    CHECK(assumed.exit_code == 0);
    CHECK(assumed.err.find("Proceed") == std::string::npos);
}

TEST_CASE("check on the popular package is silent") {
    auto result = run_cli({"check", "cross-env", "--snapshot", kAdvisorNpm});
    CHECK(result.exit_code == 0);
    CHECK(result.out.empty());
    CHECK(result.err.empty());
}

TEST_CASE("structured check output parses by the published rule") {
    auto result = run_cli(
        {"check", "crossenv", "--snapshot", kAdvisorNpm, "--format", "structured", "--yes"});
    CHECK(result.exit_code == 0);
    auto records = parse_structured(result.out);
    REQUIRE(records.size() == 1);
    CHECK(records[0].at("_kind") == "alert");
    CHECK(records[0].at("kind") == "PossibleTyposquat");
    CHECK(records[0].at("subject") == "crossenv");
    CHECK(records[0].at("suggestion") == "cross-env");
    CHECK(records[0].at("distance") == "1");
}

TEST_CASE("incidents command summary") {
    auto result = run_cli({"incidents", "--format", "structured"});
    CHECK(result.exit_code == 0);
    auto records = parse_structured(result.out);
    REQUIRE(records.size() == 9); // 8 incidents + summary
    int incident_count = 0;
    for (const auto& record : records)
        if (record.at("_kind") == "incident") ++incident_count;
    CHECK(incident_count == 8);
    const auto& summary = records.back();
    CHECK(summary.at("_kind") == "incident-summary");
    CHECK(summary.at("count") == "8");
    CHECK(summary.at("median_ttd_days") == "7.5");
    CHECK(summary.at("Bait") == "2");
    CHECK(summary.at("Direct") == "4");
    CHECK(summary.at("Influencer") == "2");
}

TEST_CASE("every analysis command emits parseable structured output") {
    std::vector<std::vector<std::string>> commands = {
        {"graph-stats"}, {"popularity", "--top", "2", "--xmin", "10000"},
        {"abandonment"}, {"squat-scan"},
        {"import-squat-scan"},
    };
    for (auto args : commands) {
        args.push_back("--snapshot");
        args.push_back(kFixture30);
        args.push_back("--format");
        args.push_back("structured");
        auto result = run_cli(args);
        CHECK(result.exit_code == 0);
        auto records = parse_structured(result.out);
        CHECK(!records.empty());
    }
}

TEST_CASE("check-update on a stale fixture package") {
    auto result = run_cli({"check-update", "chardet", "--snapshot", kFixture30});
    CHECK(result.exit_code == 1); // abandoned, declined
    auto fresh = run_cli({"check-update", "flask", "--snapshot", kFixture30});
    CHECK(fresh.exit_code == 0);
    auto missing = run_cli({"check-update", "nope", "--snapshot", kFixture30});
    CHECK(missing.exit_code == 2);
}

TEST_CASE("check bs4 on the PyPI fixture raises the import collision") {
    auto result = run_cli(
        {"check", "bs4", "--snapshot", kFixture30, "--format", "structured", "--yes"});
    CHECK(result.exit_code == 0);
    auto records = parse_structured(result.out);
    REQUIRE(records.size() == 1);
    CHECK(records[0].at("kind") == "ImportNameCollision");
    CHECK(records[0].at("suggestion") == "beautifulsoup4");
}

TEST_CASE("help exits 0") {
    auto result = run_cli({"--help"});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("ecoscope") != std::string::npos);
}
