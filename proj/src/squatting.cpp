#include "ecoscope/squatting.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace ecoscope {

NoNamesOfLengthError::NoNamesOfLengthError(std::size_t length)
    : Error("no names of length " + std::to_string(length)) {}

EmptyArchiveError::EmptyArchiveError() : Error("archive digest set is empty") {}

WrongEcosystemError::WrongEcosystemError(const std::string& expected)
    : Error("operation requires a " + expected + " snapshot") {}

std::size_t edit_distance(std::string_view a, std::string_view b,
                          bool allow_transposition) {
    std::string fa = fold_name(a);
    std::string fb = fold_name(b);
    const std::size_t n = fa.size(), m = fb.size();
    if (n == 0) return m;
    if (m == 0) return n;

    std::vector<std::size_t> prev2(m + 1), prev(m + 1), cur(m + 1);
    std::iota(prev.begin(), prev.end(), std::size_t{0});
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t cost = fa[i - 1] == fb[j - 1] ? 0 : 1;
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
            if (allow_transposition && i > 1 && j > 1 && fa[i - 1] == fb[j - 2] &&
                fa[i - 2] == fb[j - 1])
                cur[j] = std::min(cur[j], prev2[j - 2] + 1);
        }
        std::swap(prev2, prev);
        std::swap(prev, cur);
    }
    return prev[m];
}

std::size_t edit_distance_bounded(std::string_view a, std::string_view b,
                                  std::size_t limit) {
    std::string fa = fold_name(a);
    std::string fb = fold_name(b);
    const std::size_t n = fa.size(), m = fb.size();
    std::size_t diff = n > m ? n - m : m - n;
    if (diff > limit) return limit + 1;
    if (n == 0 || m == 0) return std::max(n, m);

    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    std::iota(prev.begin(), prev.end(), std::size_t{0});
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        std::size_t row_min = cur[0];
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t cost = fa[i - 1] == fb[j - 1] ? 0 : 1;
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
            row_min = std::min(row_min, cur[j]);
        }
        if (row_min > limit) return limit + 1;
        std::swap(prev, cur);
    }
    return std::min(prev[m], limit + 1);
}

namespace {

// All variants of `s` with up to `depth` characters deleted, `s` included.
void deletion_variants(const std::string& s, int depth,
                       std::unordered_set<std::string>& out) {
    out.insert(s);
    if (depth == 0 || s.empty()) return;
    std::string variant;
    variant.reserve(s.size() - 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        variant.assign(s, 0, i);
        variant.append(s, i + 1, std::string::npos);
        if (out.insert(variant).second && depth > 1) deletion_variants(variant, depth - 1, out);
    }
}

} // namespace

std::set<NamePair> candidate_pairs(const std::vector<std::string>& names,
                                   int max_distance, std::size_t min_length) {
    if (max_distance < 1 || max_distance > 2)
        throw Error("candidate_pairs supports max_distance 1 or 2");

    std::vector<const std::string*> kept;
    std::vector<std::string> folded;
    for (const auto& name : names) {
        if (name.size() >= min_length) {
            kept.push_back(&name);
            folded.push_back(fold_name(name));
        }
    }

    // deletion-neighborhood signature index: only bucket-mates can be close
    std::unordered_map<std::string, std::vector<std::uint32_t>> buckets;
    {
        std::unordered_set<std::string> variants;
        for (std::uint32_t i = 0; i < kept.size(); ++i) {
            variants.clear();
            deletion_variants(folded[i], max_distance, variants);
            for (const auto& key : variants) buckets[key].push_back(i);
        }
    }

    std::unordered_set<std::uint64_t> candidate_ids;
    for (const auto& [key, ids] : buckets) {
        if (ids.size() < 2) continue;
        for (std::size_t a = 0; a < ids.size(); ++a)
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                std::uint32_t lo = std::min(ids[a], ids[b]);
                std::uint32_t hi = std::max(ids[a], ids[b]);
                candidate_ids.insert((static_cast<std::uint64_t>(lo) << 32) | hi);
            }
    }

    std::set<NamePair> result;
    for (std::uint64_t packed : candidate_ids) {
        std::uint32_t lo = static_cast<std::uint32_t>(packed >> 32);
        std::uint32_t hi = static_cast<std::uint32_t>(packed & 0xffffffffu);
        if (edit_distance_bounded(folded[lo], folded[hi],
                                  static_cast<std::size_t>(max_distance)) <=
            static_cast<std::size_t>(max_distance)) {
            const std::string& a = *kept[lo];
            const std::string& b = *kept[hi];
            result.insert(a < b ? NamePair{a, b} : NamePair{b, a});
        }
    }
    return result;
}

double short_name_saturation(const std::vector<std::string>& names, std::size_t length) {
    std::size_t of_length = 0;
    for (const auto& name : names)
        if (name.size() == length) ++of_length;
    if (of_length == 0) throw NoNamesOfLengthError(length);

    auto pairs = candidate_pairs(names, 1, 0);
    std::unordered_set<std::string> in_pair;
    for (const auto& [a, b] : pairs) {
        in_pair.insert(a);
        in_pair.insert(b);
    }
    std::size_t hit = 0;
    for (const auto& name : names)
        if (name.size() == length && in_pair.count(name)) ++hit;
    return static_cast<double>(hit) / static_cast<double>(of_length);
}

double content_similarity(const std::vector<std::string>& hashes_a,
                          const std::vector<std::string>& hashes_b) {
    if (hashes_a.empty() || hashes_b.empty()) throw EmptyArchiveError();
    std::unordered_set<std::string> a(hashes_a.begin(), hashes_a.end());
    std::unordered_set<std::string> b(hashes_b.begin(), hashes_b.end());
    std::size_t intersection = 0;
    for (const auto& h : a)
        if (b.count(h)) ++intersection;
    std::size_t unions = a.size() + b.size() - intersection;
    return static_cast<double>(intersection) / static_cast<double>(unions);
}

std::vector<SquatCandidate> import_squat_candidates(const Snapshot& snapshot) {
    if (snapshot.ecosystem != Ecosystem::PyPI) throw WrongEcosystemError("PyPI");

    std::unordered_map<std::string, const PackageRecord*> by_normalized;
    for (const auto& rec : snapshot.records) {
        auto [it, inserted] = by_normalized.emplace(normalize_name(rec.name), &rec);
        if (!inserted && rec.downloads > it->second->downloads) it->second = &rec;
    }

    std::vector<SquatCandidate> candidates;
    for (const auto& rec : snapshot.records) {
        std::string norm_pkg = normalize_name(rec.name);
        for (const auto& module : rec.modules) {
            std::string norm_mod = normalize_name(module);
            if (norm_mod == norm_pkg) continue;
            SquatCandidate cand;
            cand.kind = SquatKind::ImportSquat;
            cand.subject = rec.name;
            cand.target = module;
            auto it = by_normalized.find(norm_mod);
            if (it != by_normalized.end()) {
                const PackageRecord& other = *it->second;
                cand.popularity_ratio = static_cast<double>(rec.downloads) /
                                        static_cast<double>(std::max<std::uint64_t>(
                                            other.downloads, 1));
                cand.evidence = "collision: module name registered as package '" +
                                other.name + "'";
            } else {
                cand.evidence = "open slot: module name not registered as a package";
            }
            candidates.push_back(std::move(cand));
        }
    }
    return candidates;
}

std::vector<SquatCandidate> rank_typo_candidates(const std::set<NamePair>& pairs,
                                                 const Snapshot& snapshot) {
    std::vector<SquatCandidate> out;
    for (const auto& [a, b] : pairs) {
        const PackageRecord* ra = snapshot.find(a);
        const PackageRecord* rb = snapshot.find(b);
        std::uint64_t da = ra ? ra->downloads : 0;
        std::uint64_t db = rb ? rb->downloads : 0;
        // subject is the obscure side; names ascending on a downloads tie
        bool a_is_subject = da != db ? da < db : a < b;
        const std::string& subject = a_is_subject ? a : b;
        const std::string& target = a_is_subject ? b : a;
        std::uint64_t subject_dl = a_is_subject ? da : db;
        std::uint64_t target_dl = a_is_subject ? db : da;

        SquatCandidate cand;
        cand.kind = SquatKind::TypoPair;
        cand.subject = subject;
        cand.target = target;
        cand.distance = static_cast<int>(edit_distance(subject, target));
        cand.popularity_ratio = static_cast<double>(target_dl) /
                                static_cast<double>(std::max<std::uint64_t>(subject_dl, 1));
        const PackageRecord* rs = a_is_subject ? ra : rb;
        const PackageRecord* rt = a_is_subject ? rb : ra;
        if (rs && rt && !rs->file_hashes.empty() && !rt->file_hashes.empty())
            cand.content_similarity = content_similarity(rs->file_hashes, rt->file_hashes);
        out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), [](const SquatCandidate& x, const SquatCandidate& y) {
        if (x.popularity_ratio != y.popularity_ratio)
            return x.popularity_ratio > y.popularity_ratio;
        if (x.subject != y.subject) return x.subject < y.subject;
        return x.target < y.target;
    });
    return out;
}

} // namespace ecoscope
