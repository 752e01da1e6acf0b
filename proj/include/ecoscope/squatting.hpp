#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ecoscope/snapshot.hpp"

namespace ecoscope {

enum class SquatKind { TypoPair, ImportSquat };

struct SquatCandidate {
    SquatKind kind = SquatKind::TypoPair;
    std::string subject; // the suspicious package
    std::string target;  // squatted package or module name
    int distance = 0;    // TypoPair only
    double popularity_ratio = 0.0;
    std::optional<double> content_similarity;
    std::string evidence;
};

struct NoNamesOfLengthError : Error {
    explicit NoNamesOfLengthError(std::size_t length);
};

struct EmptyArchiveError : Error {
    EmptyArchiveError();
};

struct WrongEcosystemError : Error {
    explicit WrongEcosystemError(const std::string& expected);
};

/// Levenshtein distance over lowercase-folded names. With
/// allow_transposition, an adjacent swap counts as one edit.
std::size_t edit_distance(std::string_view a, std::string_view b,
                          bool allow_transposition = false);

/// Bounded variant: returns the distance if <= limit, otherwise limit + 1.
std::size_t edit_distance_bounded(std::string_view a, std::string_view b,
                                  std::size_t limit);

/// An unordered name pair, stored with first <= second (folded order not
/// required; pairs use the verbatim names sorted ascending).
using NamePair = std::pair<std::string, std::string>;

/// All unordered pairs at edit distance <= max_distance where both names
/// have length >= min_length. Candidate generation uses a deletion
/// neighborhood index (each folded name keyed by all deletion variants up
/// to max_distance characters); bucket-mates are verified with the real
/// distance. Exact for max_distance in {1, 2}.
std::set<NamePair> candidate_pairs(const std::vector<std::string>& names,
                                   int max_distance, std::size_t min_length);

/// Fraction of names of exactly the given length that sit in at least one
/// distance-1 pair (against the whole name set).
double short_name_saturation(const std::vector<std::string>& names, std::size_t length);

/// Jaccard index of the two digest sets.
double content_similarity(const std::vector<std::string>& hashes_a,
                          const std::vector<std::string>& hashes_b);

/// PyPI only: one candidate per (record, provided module) whose normalized
/// module name differs from the normalized package name. Evidence notes
/// whether the module name is registered as a different package
/// ("collision") or unregistered ("open slot").
std::vector<SquatCandidate> import_squat_candidates(const Snapshot& snapshot);

/// Orients each pair so subject = lower-download name, attaches the
/// popularity ratio (zero downloads counted as 1) and, when both sides
/// carry file hashes, the content similarity. Sorted by ratio descending,
/// subject name ascending on ties.
std::vector<SquatCandidate> rank_typo_candidates(const std::set<NamePair>& pairs,
                                                 const Snapshot& snapshot);

} // namespace ecoscope
