#include "ecoscope/snapshot.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace ecoscope {

using json = nlohmann::ordered_json;

std::string to_string(Ecosystem eco) {
    return eco == Ecosystem::Npm ? "npm" : "pypi";
}

std::optional<Ecosystem> ecosystem_from_string(const std::string& s) {
    std::string folded = fold_name(s);
    if (folded == "npm") return Ecosystem::Npm;
    if (folded == "pypi") return Ecosystem::PyPI;
    return std::nullopt;
}

std::string fold_name(std::string_view name) {
    std::string out(name);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string normalize_name(std::string_view name) {
    std::string out = fold_name(name);
    std::replace(out.begin(), out.end(), '-', '_');
    return out;
}

DuplicateNameError::DuplicateNameError(const std::string& name, int line)
    : Error("duplicate package name '" + name + "' at line " + std::to_string(line)),
      name(name),
      line(line) {}

MalformedLineError::MalformedLineError(int line, const std::string& reason)
    : Error("malformed line " + std::to_string(line) + ": " + reason),
      line(line),
      reason(reason) {}

MissingHeaderError::MissingHeaderError() : Error("snapshot header line is missing") {}

EmptySnapshotError::EmptySnapshotError() : Error("snapshot has no records") {}

namespace {

PackageRecord record_from_json(const json& j, Ecosystem eco, int line, int& warnings) {
    PackageRecord rec;
    rec.ecosystem = eco;
    rec.name = j.at("name").get<std::string>();
    if (rec.name.empty()) throw MalformedLineError(line, "empty package name");
    rec.latest_version = j.value("latest_version", std::string{});
    rec.last_release = j.value("last_release", std::int64_t{0});
    rec.downloads = j.value("downloads", std::uint64_t{0});
    if (j.contains("modules")) rec.modules = j.at("modules").get<std::vector<std::string>>();
    if (j.contains("file_hashes"))
        rec.file_hashes = j.at("file_hashes").get<std::vector<std::string>>();

    // drop self-edges and duplicates, counting each as a warning
    std::unordered_set<std::string> seen;
    if (j.contains("dependencies")) {
        for (const auto& dep : j.at("dependencies")) {
            std::string name = dep.get<std::string>();
            if (name == rec.name) {
                ++warnings;
                continue;
            }
            if (!seen.insert(name).second) {
                ++warnings;
                continue;
            }
            rec.dependencies.push_back(std::move(name));
        }
    }
    return rec;
}

} // namespace

Snapshot parse_snapshot(std::istream& input) {
    Snapshot snap;
    std::string line;
    int line_no = 0;
    bool have_header = false;

    while (std::getline(input, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw MalformedLineError(line_no, e.what());
        }
        if (!have_header) {
            if (!j.contains("ecosystem") || !j.contains("captured_at"))
                throw MissingHeaderError();
            auto eco = ecosystem_from_string(j.at("ecosystem").get<std::string>());
            if (!eco) throw MalformedLineError(line_no, "unknown ecosystem");
            snap.ecosystem = *eco;
            snap.captured_at = j.at("captured_at").get<std::int64_t>();
            have_header = true;
            continue;
        }
        PackageRecord rec;
        try {
            rec = record_from_json(j, snap.ecosystem, line_no, snap.ingest_warnings);
        } catch (const MalformedLineError&) {
            throw;
        } catch (const json::exception& e) {
            throw MalformedLineError(line_no, e.what());
        }
        if (snap.by_name.count(rec.name)) throw DuplicateNameError(rec.name, line_no);
        snap.by_name.emplace(rec.name, snap.records.size());
        snap.records.push_back(std::move(rec));
    }
    if (!have_header) throw MissingHeaderError();
    return snap;
}

Snapshot parse_snapshot_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open snapshot file: " + path);
    return parse_snapshot(in);
}

void serialize_snapshot(const Snapshot& snapshot, std::ostream& output) {
    json header;
    header["ecosystem"] = to_string(snapshot.ecosystem);
    header["captured_at"] = snapshot.captured_at;
    output << header.dump() << '\n';
    for (const auto& rec : snapshot.records) {
        json j;
        j["name"] = rec.name;
        j["latest_version"] = rec.latest_version;
        j["dependencies"] = rec.dependencies;
        j["last_release"] = rec.last_release;
        j["downloads"] = rec.downloads;
        if (!rec.modules.empty()) j["modules"] = rec.modules;
        if (!rec.file_hashes.empty()) j["file_hashes"] = rec.file_hashes;
        output << j.dump() << '\n';
    }
}

} // namespace ecoscope
