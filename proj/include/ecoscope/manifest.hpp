#pragma once

#include <string>
#include <vector>

namespace ecoscope {

enum class ParseStatus {
    Complete,       // the install-requires list was a literal sequence of string literals
    PartialDynamic, // the list is computed at run time; static reading is incomplete
};

struct DependencyExtraction {
    std::vector<std::string> declared; // names trimmed, version constraints stripped
    ParseStatus parse_status = ParseStatus::Complete;
};

/// Statically reads the install-requires list out of a PyPI-style setup
/// manifest. Never executes the manifest; anything that is not a literal
/// list of string literals yields PartialDynamic.
DependencyExtraction extract_pypi_dependencies(const std::string& manifest_text);

/// "flask>=1.0,<2" -> "flask"; also strips extras ("requests[security]").
std::string strip_requirement(const std::string& requirement);

} // namespace ecoscope
