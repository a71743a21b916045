#pragma once

#include <cstdio>
#include <json.hpp>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "zerosum/rational.hpp"

namespace zerosum {

using json = nlohmann::json;

namespace detail {

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(uint64_t x) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(x));
    return buf;
}

}  // namespace detail

/// Source tags for numeric claims: "computed" (from enumeration or exact
/// linear algebra), "formula" (a closed-form prediction), "sandwich-bound"
/// (decided only up to inner/outer bounds).
namespace source {
inline constexpr const char* computed = "computed";
inline constexpr const char* formula = "formula";
inline constexpr const char* sandwich = "sandwich-bound";
}  // namespace source

/// One pass/fail line of a report. `check` is a stable identifier; a
/// record with applicable=false documents that a hypothesis was not met.
struct VerdictRecord {
    std::string check;
    std::string subject;
    bool ok = true;
    bool applicable = true;
    std::string source = source::computed;
    json detail = json::object();

    bool red() const { return applicable && !ok; }
};

/// A whole command run: named values plus verdicts, rendered either as an
/// aligned human summary or as line-delimited records with explicit field
/// names (schema version 1; one record per verdict, timing only in the
/// trailing summary record).
struct Report {
    std::string command;
    std::vector<std::pair<std::string, json>> values;  // name -> payload
    std::vector<VerdictRecord> verdicts;
    double timing_ms = 0.0;

    static constexpr int schema_version = 1;

    void add_value(const std::string& name, json payload,
                   const char* src = source::computed) {
        json v;
        v["value"] = std::move(payload);
        v["source"] = src;
        values.emplace_back(name, std::move(v));
    }

    void add(VerdictRecord v) { verdicts.push_back(std::move(v)); }

    bool any_red() const {
        for (const auto& v : verdicts)
            if (v.red()) return true;
        return false;
    }

    Int red_count() const {
        Int n = 0;
        for (const auto& v : verdicts)
            if (v.red()) ++n;
        return n;
    }

    void render_machine(std::ostream& os) const {
        json meta;
        meta["record"] = "meta";
        meta["schema"] = schema_version;
        meta["command"] = command;
        os << meta.dump() << "\n";
        for (const auto& [name, payload] : values) {
            json rec;
            rec["record"] = "value";
            rec["name"] = name;
            rec["value"] = payload.at("value");
            rec["source"] = payload.at("source");
            os << rec.dump() << "\n";
        }
        for (const auto& v : verdicts) {
            json rec;
            rec["record"] = "verdict";
            rec["check"] = v.check;
            rec["subject"] = v.subject;
            rec["ok"] = v.ok;
            rec["applicable"] = v.applicable;
            rec["source"] = v.source;
            if (!v.detail.empty()) rec["detail"] = v.detail;
            os << rec.dump() << "\n";
        }
        json summary;
        summary["record"] = "summary";
        summary["verdicts"] = verdicts.size();
        summary["red"] = red_count();
        summary["timing_ms"] = timing_ms;
        os << summary.dump() << "\n";
    }

    void render_human(std::ostream& os) const {
        os << "== " << command << "\n";
        for (const auto& [name, payload] : values)
            os << "  " << name << " = " << payload.at("value").dump() << "  ["
               << payload.at("source").get<std::string>() << "]\n";
        for (const auto& v : verdicts) {
            const char* tag = !v.applicable ? "  n/a" : (v.ok ? "   ok" : " FAIL");
            os << "  [" << tag << "] " << v.check << "  " << v.subject;
            if (!v.detail.empty()) os << "  " << v.detail.dump();
            os << "\n";
        }
        os << "  -- " << verdicts.size() << " verdict(s), " << red_count() << " red, "
           << timing_ms << " ms\n";
    }

    void render(std::ostream& os, bool machine) const {
        machine ? render_machine(os) : render_human(os);
    }
};

inline json to_json(const std::set<Int>& s) { return json(std::vector<Int>(s.begin(), s.end())); }

}  // namespace zerosum
