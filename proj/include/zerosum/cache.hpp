#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "zerosum/atoms.hpp"
#include "zerosum/report.hpp"

namespace zerosum {

namespace detail {

inline std::string atoms_payload(const AtomSet& a) {
    json payload;
    payload["atoms"] = a.atoms;
    payload["davenport"] = a.davenport;
    std::vector<std::vector<Int>> coords;
    for (const auto& e : a.elements) coords.push_back(e.coords);
    payload["elements"] = coords;
    return payload.dump();
}

}  // namespace detail

/// On-disk record of one enumeration, keyed by the canonical group name and
/// the subset bitmask over element-enumeration order. The checksum guards
/// the atom list; any mismatch (or version change) forces a recompute.
inline json cache_record(const AtomSet& a) {
    json rec;
    rec["format_version"] = 1;
    rec["group"] = a.group.name();
    rec["subset_mask"] = detail::hex64(a.subset_mask());
    rec["atoms"] = a.atoms;
    rec["davenport"] = a.davenport;
    std::vector<std::vector<Int>> coords;
    for (const auto& e : a.elements) coords.push_back(e.coords);
    rec["elements"] = coords;
    rec["checksum"] = detail::hex64(detail::fnv1a64(detail::atoms_payload(a)));
    return rec;
}

inline std::filesystem::path cache_path(const std::filesystem::path& dir,
                                        const FiniteAbelianGroup& g, uint64_t mask) {
    return dir / g.name() / (detail::hex64(mask) + ".atoms");
}

/// Parse and validate a cache record against the expected key; nullopt on
/// any inconsistency, so corrupt or stale content is never trusted.
inline std::optional<AtomSet> load_cached_atoms(const std::filesystem::path& file,
                                                const GroupTables& t, uint64_t mask) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    json rec;
    try {
        in >> rec;
    } catch (const json::exception&) {
        return std::nullopt;
    }
    try {
        if (rec.at("format_version").get<int>() != 1) return std::nullopt;
        if (rec.at("group").get<std::string>() != t.group.name()) return std::nullopt;
        if (rec.at("subset_mask").get<std::string>() != detail::hex64(mask)) return std::nullopt;
        AtomSet a;
        a.group = t.group;
        for (const auto& coords : rec.at("elements"))
            a.elements.push_back(t.group.make(coords.get<std::vector<Int>>()));
        for (const auto& v : rec.at("atoms")) a.atoms.push_back(v.get<std::vector<Int>>());
        a.davenport = rec.at("davenport").get<Int>();
        if (rec.at("checksum").get<std::string>() !=
            detail::hex64(detail::fnv1a64(detail::atoms_payload(a))))
            return std::nullopt;
        // rebuild derived fields and revalidate the key
        if (a.subset_mask() != mask) return std::nullopt;
        auto order = detail::canonical_subset_order(t, mask);
        if (order.size() != a.elements.size()) return std::nullopt;
        for (size_t i = 0; i < order.size(); ++i)
            if (!(t.elements[order[i]] == a.elements[i])) return std::nullopt;
        for (const auto& v : a.atoms) {
            if (v.size() != a.elements.size()) return std::nullopt;
            Int len = 0;
            Rational k;
            uint64_t sup = 0;
            for (size_t j = 0; j < v.size(); ++j) {
                if (v[j] < 0) return std::nullopt;
                len += v[j];
                if (v[j]) {
                    k += Rational(v[j], t.orders[order[j]]);
                    sup |= uint64_t(1) << order[j];
                }
            }
            a.lengths.push_back(len);
            a.cross_numbers.push_back(k);
            a.support_masks.push_back(sup);
        }
        return a;
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

/// Write-temp-then-rename, so concurrent readers never observe a torn file.
inline void store_atoms(const std::filesystem::path& dir, const AtomSet& a) {
    static std::atomic<uint64_t> unique{0};
    auto file = cache_path(dir, a.group, a.subset_mask());
    std::filesystem::create_directories(file.parent_path());
    auto tmp = file;
    tmp += ".tmp." + std::to_string(::getpid()) + "." +
           std::to_string(unique.fetch_add(1));
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
        out << cache_record(a).dump() << "\n";
        if (!out) throw std::runtime_error("cache: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

/// Cached enumeration: returns validated cache content when present, else
/// computes, stores atomically and returns the fresh result. A present but
/// invalid record triggers a recompute with a warning.
inline AtomSet load_or_compute(const std::filesystem::path& dir, const GroupTables& t,
                               uint64_t mask, const EnumerationConfig& cfg = {},
                               std::ostream* warn = nullptr) {
    auto file = cache_path(dir, t.group, mask);
    if (std::filesystem::exists(file)) {
        if (auto cached = load_cached_atoms(file, t, mask)) return *cached;
        if (warn)
            *warn << "warning: invalid cache record " << file.string() << ", recomputing\n";
    }
    AtomSet fresh = enumerate_atoms(t, mask, cfg);
    store_atoms(dir, fresh);
    return fresh;
}

}  // namespace zerosum
