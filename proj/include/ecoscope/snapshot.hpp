#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecoscope/errors.hpp"

namespace ecoscope {

enum class Ecosystem { Npm, PyPI };

std::string to_string(Ecosystem eco);
std::optional<Ecosystem> ecosystem_from_string(const std::string& s);

/// Lowercase ASCII fold; both registries are case-insensitive in practice.
std::string fold_name(std::string_view name);

/// Lowercase plus '-'/'_' equivalence, used for PyPI module/package matching.
std::string normalize_name(std::string_view name);

/// One package's metadata as captured in a registry snapshot.
struct PackageRecord {
    std::string name;
    Ecosystem ecosystem = Ecosystem::Npm;
    std::string latest_version;
    std::vector<std::string> dependencies; // latest version only, deduped, no self-edge
    std::int64_t last_release = 0;         // UTC seconds
    std::uint64_t downloads = 0;           // cumulative count at snapshot time
    std::vector<std::string> modules;      // top-level modules provided (PyPI)
    std::vector<std::string> file_hashes;  // content digests, empty = unknown
};

/// Immutable after parse; safe for concurrent read.
struct Snapshot {
    Ecosystem ecosystem = Ecosystem::Npm;
    std::int64_t captured_at = 0; // reference time for abandonment
    std::vector<PackageRecord> records;
    std::unordered_map<std::string, std::size_t> by_name; // verbatim name -> index
    int ingest_warnings = 0; // self-edges dropped + duplicate dependencies collapsed

    const PackageRecord* find(const std::string& name) const {
        auto it = by_name.find(name);
        return it == by_name.end() ? nullptr : &records[it->second];
    }
};

struct EmptySnapshotError : Error {
    EmptySnapshotError();
};

struct DuplicateNameError : Error {
    DuplicateNameError(const std::string& name, int line);
    std::string name;
    int line;
};

struct MalformedLineError : Error {
    MalformedLineError(int line, const std::string& reason);
    int line;
    std::string reason;
};

struct MissingHeaderError : Error {
    MissingHeaderError();
};

/// Reads the line-delimited snapshot format: a header line with
/// {ecosystem, captured_at}, then one record object per line.
/// Self-dependencies are dropped and dependency lists deduplicated,
/// each counted in ingest_warnings.
Snapshot parse_snapshot(std::istream& input);
Snapshot parse_snapshot_file(const std::string& path);

void serialize_snapshot(const Snapshot& snapshot, std::ostream& output);

} // namespace ecoscope
