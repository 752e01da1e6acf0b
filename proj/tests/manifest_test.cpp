#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ecoscope/manifest.hpp"

using namespace ecoscope;

TEST_CASE("literal list with constraints") {
    auto result = extract_pypi_dependencies(R"(
from setuptools import setup

setup(
    name="demo",
    install_requires=["requests", "flask>=1.0"],
)
)");
    CHECK(result.declared == std::vector<std::string>{"requests", "flask"});
    CHECK(result.parse_status == ParseStatus::Complete);
}

TEST_CASE("no install-requires parameter") {
    auto result = extract_pypi_dependencies("setup(name='demo')");
    CHECK(result.declared.empty());
    CHECK(result.parse_status == ParseStatus::Complete);
}

TEST_CASE("list built by a function call is dynamic") {
    auto result = extract_pypi_dependencies("setup(install_requires=read_requirements())");
    CHECK(result.declared.empty());
    CHECK(result.parse_status == ParseStatus::PartialDynamic);
}

TEST_CASE("mixed literal and dynamic elements keeps the readable part") {
    auto result = extract_pypi_dependencies(
        "setup(install_requires=['requests', extra_dep, 'six'])");
    CHECK(result.declared == std::vector<std::string>{"requests", "six"});
    CHECK(result.parse_status == ParseStatus::PartialDynamic);
}

TEST_CASE("constraint and extras stripping") {
    CHECK(strip_requirement("flask>=1.0") == "flask");
    CHECK(strip_requirement("requests[security]>=2.0") == "requests");
    CHECK(strip_requirement("  numpy == 1.16 ") == "numpy");
    CHECK(strip_requirement("zope.interface~=4.0") == "zope.interface");
    CHECK(strip_requirement("a-b_c.d") == "a-b_c.d");
}

TEST_CASE("tuple literal, comments, trailing comma") {
    auto result = extract_pypi_dependencies(R"(
setup(
    install_requires=(
        'requests',  # http
        "six",
    ),
)
)");
    CHECK(result.declared == std::vector<std::string>{"requests", "six"});
    CHECK(result.parse_status == ParseStatus::Complete);
}

TEST_CASE("install_requires as substring of another identifier is ignored") {
    auto result = extract_pypi_dependencies("my_install_requires_list = ['x']");
    CHECK(result.declared.empty());
    CHECK(result.parse_status == ParseStatus::Complete);
}

TEST_CASE("extracted names carry no comparison operators or whitespace") {
    const char* manifests[] = {
        "setup(install_requires=['a>=1', 'b <2', 'c!=3', 'd~=4', 'e==5'])",
        "setup(install_requires=['pkg ; python_version < \"3\"'])",
    };
    for (const char* m : manifests) {
        for (const auto& name : extract_pypi_dependencies(m).declared) {
            CHECK(name.find_first_of("<>=!~ \t") == std::string::npos);
            CHECK(!name.empty());
        }
    }
}
