#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "ecoscope/snapshot.hpp"

using namespace ecoscope;

namespace {

const char* kHeader = R"({"ecosystem":"npm","captured_at":1546300800})";

std::string lines(std::initializer_list<const char*> ls) {
    std::string out;
    for (const char* l : ls) {
        out += l;
        out += '\n';
    }
    return out;
}

} // namespace

TEST_CASE("parses header plus well-formed records") {
    std::istringstream in(lines(
        {kHeader,
         R"({"name":"a","latest_version":"1.0.0","dependencies":["b"],"last_release":1500000000,"downloads":10})",
         R"({"name":"b","latest_version":"2.0.0","dependencies":[],"last_release":1500000000,"downloads":20})"}));
    Snapshot snap = parse_snapshot(in);
    CHECK(snap.ecosystem == Ecosystem::Npm);
    CHECK(snap.captured_at == 1546300800);
    CHECK(snap.records.size() == 2);
    CHECK(snap.find("a")->dependencies == std::vector<std::string>{"b"});
    CHECK(snap.ingest_warnings == 0);
}

TEST_CASE("duplicate name reports the offending line") {
    std::istringstream in(lines({kHeader, R"({"name":"a"})", R"({"name":"a"})"}));
    try {
        parse_snapshot(in);
        FAIL("expected DuplicateNameError");
    } catch (const DuplicateNameError& e) {
        CHECK(e.name == "a");
        CHECK(e.line == 3);
    }
}

TEST_CASE("self-dependency is dropped with a warning") {
    std::istringstream in(lines({kHeader, R"({"name":"a","dependencies":["a"]})"}));
    Snapshot snap = parse_snapshot(in);
    CHECK(snap.find("a")->dependencies.empty());
    CHECK(snap.ingest_warnings == 1);
}

TEST_CASE("duplicate dependencies are collapsed with a warning") {
    std::istringstream in(lines({kHeader, R"({"name":"a","dependencies":["b","b","c"]})"}));
    Snapshot snap = parse_snapshot(in);
    CHECK(snap.find("a")->dependencies == std::vector<std::string>{"b", "c"});
    CHECK(snap.ingest_warnings == 1);
}

TEST_CASE("missing header") {
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_snapshot(empty), MissingHeaderError);
    std::istringstream no_header(lines({R"({"name":"a"})"}));
    CHECK_THROWS_AS(parse_snapshot(no_header), MissingHeaderError);
}

TEST_CASE("malformed line") {
    std::istringstream in(lines({kHeader, "not json"}));
    try {
        parse_snapshot(in);
        FAIL("expected MalformedLineError");
    } catch (const MalformedLineError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("future release beyond captured_at is accepted at parse time") {
    // ingest does not validate last_release against captured_at; the
    // abandonment check raises FutureRelease when it matters
    std::istringstream in(lines({kHeader, R"({"name":"a","last_release":9999999999})"}));
    CHECK(parse_snapshot(in).records.size() == 1);
}

TEST_CASE("serialize/parse round-trip on random snapshots") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        Snapshot snap;
        snap.ecosystem = trial % 2 ? Ecosystem::Npm : Ecosystem::PyPI;
        snap.captured_at = 1546300800 + trial;
        std::uniform_int_distribution<int> count(0, 20);
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            PackageRecord rec;
            rec.name = "pkg" + std::to_string(i);
            rec.ecosystem = snap.ecosystem;
            rec.latest_version = std::to_string(rng() % 10) + ".0";
            rec.downloads = rng() % 100000;
            rec.last_release = 1500000000 + static_cast<std::int64_t>(rng() % 1000000);
            int deps = static_cast<int>(rng() % 4);
            for (int d = 0; d < deps; ++d) {
                std::string dep = "pkg" + std::to_string(rng() % 30);
                if (dep != rec.name &&
                    std::find(rec.dependencies.begin(), rec.dependencies.end(), dep) ==
                        rec.dependencies.end())
                    rec.dependencies.push_back(dep);
            }
            if (rng() % 3 == 0) rec.modules.push_back("mod" + std::to_string(i));
            snap.by_name.emplace(rec.name, snap.records.size());
            snap.records.push_back(std::move(rec));
        }

        std::ostringstream serialized;
        serialize_snapshot(snap, serialized);
        std::istringstream in(serialized.str());
        Snapshot parsed = parse_snapshot(in);

        REQUIRE(parsed.records.size() == snap.records.size());
        CHECK(parsed.ecosystem == snap.ecosystem);
        CHECK(parsed.captured_at == snap.captured_at);
        for (const auto& rec : snap.records) {
            const PackageRecord* other = parsed.find(rec.name);
            REQUIRE(other != nullptr);
            CHECK(other->latest_version == rec.latest_version);
            CHECK(other->dependencies == rec.dependencies);
            CHECK(other->last_release == rec.last_release);
            CHECK(other->downloads == rec.downloads);
            CHECK(other->modules == rec.modules);
        }
    }
}

TEST_CASE("no record ever keeps a self-dependency after ingest") {
    std::istringstream in(lines(
        {kHeader, R"({"name":"x","dependencies":["x","y","x"]})", R"({"name":"y"})"}));
    Snapshot snap = parse_snapshot(in);
    for (const auto& rec : snap.records)
        for (const auto& dep : rec.dependencies) CHECK(dep != rec.name);
}

TEST_CASE("name normalization helpers") {
    CHECK(fold_name("Flask") == "flask");
    CHECK(normalize_name("My-Package") == "my_package");
    CHECK(normalize_name("my_package") == "my_package");
}
