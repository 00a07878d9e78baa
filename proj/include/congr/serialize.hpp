#pragma once

#include "congr/abelian.hpp"
#include "congr/cohomology.hpp"
#include "congr/presentation.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace congr {

using json = nlohmann::json;

inline json to_json(const AbelianGroup& g) {
    json factors = json::array();
    for (const Int& d : g.invariant_factors) factors.push_back(static_cast<long>(d));
    return json{{"free_rank", g.free_rank}, {"invariant_factors", factors}};
}

inline AbelianGroup abelian_from_json(const json& j) {
    std::vector<Int> factors;
    for (const auto& d : j.at("invariant_factors")) factors.push_back(Int(d.get<long>()));
    return AbelianGroup(j.at("free_rank").get<long>(), std::move(factors));
}

inline json to_json(const CohomologyResult& r) {
    json groups = json::object();
    for (const auto& [k, g] : r.groups) groups[std::to_string(k)] = to_json(g);
    return json{{"model", r.model},
                {"m", r.m},
                {"n", r.n},
                {"modulus", static_cast<long>(r.modulus)},
                {"groups", groups}};
}

// ---- presentation cache ------------------------------------------------

constexpr int kCacheFormatVersion = 1;

inline json presentation_to_json(const GroupPresentation& p, long m) {
    json gens = json::array();
    for (const Word& w : p.generators) gens.push_back(w.to_string());
    json rels = json::array();
    for (const GenWord& r : p.relators) {
        json rel = json::array();
        for (GenRef g : r) rel.push_back(g.sign * (long(g.index) + 1));
        rels.push_back(rel);
    }
    return json{{"format_version", kCacheFormatVersion},
                {"m", m},
                {"label", p.label},
                {"generators", gens},
                {"relators", rels}};
}

inline GroupPresentation presentation_from_json(const json& j, long m) {
    if (j.at("format_version").get<int>() != kCacheFormatVersion)
        fail(errc::io_error, "presentation cache: format version mismatch");
    if (j.at("m").get<long>() != m) fail(errc::io_error, "presentation cache: wrong m");
    GroupPresentation p;
    p.label = j.at("label").get<std::string>();
    for (const auto& g : j.at("generators")) p.generators.push_back(Word::parse(g));
    for (const auto& rel : j.at("relators")) {
        GenWord w;
        for (const auto& e : rel) {
            long v = e.get<long>();
            w.push_back({std::size_t(std::abs(v)) - 1, v > 0 ? 1 : -1});
        }
        p.relators.push_back(std::move(w));
    }
    p.validate();
    return p;
}

/// Atomic write: temp file in the same directory, then rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& data) {
    std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(errc::io_error, "cannot write " + tmp.string());
        out << data;
    }
    std::filesystem::rename(tmp, path);
}

inline std::filesystem::path presentation_cache_path(const std::filesystem::path& dir, long m) {
    return dir / ("gamma_" + std::to_string(m) + ".json");
}

inline bool load_cached_presentation(const std::filesystem::path& dir, long m,
                                     GroupPresentation& out) {
    std::filesystem::path path = presentation_cache_path(dir, m);
    std::ifstream in(path);
    if (!in) return false;
    try {
        json j = json::parse(in);
        out = presentation_from_json(j, m);
        return true;
    } catch (...) {
        return false;  // stale or corrupt cache entries are rebuilt
    }
}

inline void store_cached_presentation(const std::filesystem::path& dir, long m,
                                      const GroupPresentation& p) {
    write_file_atomic(presentation_cache_path(dir, m), presentation_to_json(p, m).dump(1));
}

// ---- verification report ------------------------------------------------

enum class CellStatus { Match, Mismatch, PaperDiscrepancyFlagged };

inline const char* to_string(CellStatus s) {
    switch (s) {
        case CellStatus::Match: return "MATCH";
        case CellStatus::Mismatch: return "MISMATCH";
        case CellStatus::PaperDiscrepancyFlagged: return "PAPER_DISCREPANCY_FLAGGED";
    }
    return "?";
}

inline CellStatus status_from_string(const std::string& s) {
    if (s == "MATCH") return CellStatus::Match;
    if (s == "MISMATCH") return CellStatus::Mismatch;
    if (s == "PAPER_DISCREPANCY_FLAGGED") return CellStatus::PaperDiscrepancyFlagged;
    fail(errc::io_error, "bad cell status '" + s + "'");
}

struct ReportCell {
    std::string suite;
    std::string check;
    long m = 0, n = 0, p = 0;
    std::string predicted;
    std::string computed;
    CellStatus status = CellStatus::Match;
    double wall_ms = 0;

    bool operator==(const ReportCell& o) const {
        return suite == o.suite && check == o.check && m == o.m && n == o.n && p == o.p &&
               predicted == o.predicted && computed == o.computed && status == o.status;
    }
};

struct VerificationReport {
    std::vector<ReportCell> cells;

    long count(CellStatus s) const {
        long k = 0;
        for (const auto& c : cells)
            if (c.status == s) ++k;
        return k;
    }
    long matches() const { return count(CellStatus::Match); }
    long mismatches() const { return count(CellStatus::Mismatch); }
    long flagged() const { return count(CellStatus::PaperDiscrepancyFlagged); }
    int exit_code() const { return mismatches() > 0 ? 1 : 0; }

    bool operator==(const VerificationReport& o) const { return cells == o.cells; }
};

inline json report_to_json(const VerificationReport& r, bool timings = false) {
    json cells = json::array();
    for (const auto& c : r.cells) {
        json jc{{"suite", c.suite}, {"check", c.check},         {"m", c.m},
                {"n", c.n},         {"p", c.p},                 {"predicted", c.predicted},
                {"computed", c.computed}, {"status", to_string(c.status)}};
        if (timings) jc["wall_ms"] = c.wall_ms;
        cells.push_back(std::move(jc));
    }
    return json{{"cells", cells},
                {"summary",
                 {{"match", r.matches()},
                  {"mismatch", r.mismatches()},
                  {"flagged", r.flagged()}}}};
}

inline VerificationReport report_from_json(const json& j) {
    VerificationReport r;
    for (const auto& jc : j.at("cells")) {
        ReportCell c;
        c.suite = jc.at("suite").get<std::string>();
        c.check = jc.at("check").get<std::string>();
        c.m = jc.at("m").get<long>();
        c.n = jc.at("n").get<long>();
        c.p = jc.at("p").get<long>();
        c.predicted = jc.at("predicted").get<std::string>();
        c.computed = jc.at("computed").get<std::string>();
        c.status = status_from_string(jc.at("status").get<std::string>());
        r.cells.push_back(std::move(c));
    }
    return r;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

inline std::string report_to_csv(const VerificationReport& r, bool timings = false) {
    std::ostringstream os;
    os << "suite,check,m,n,p,predicted,computed,status";
    if (timings) os << ",wall_ms";
    os << "\n";
    for (const auto& c : r.cells) {
        os << detail::csv_escape(c.suite) << ',' << detail::csv_escape(c.check) << ',' << c.m
           << ',' << c.n << ',' << c.p << ',' << detail::csv_escape(c.predicted) << ','
           << detail::csv_escape(c.computed) << ',' << to_string(c.status);
        if (timings) os << ',' << c.wall_ms;
        os << "\n";
    }
    return os.str();
}

inline VerificationReport report_from_csv(const std::string& text) {
    VerificationReport r;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue;
        }
        std::vector<std::string> f = detail::csv_split(line);
        if (f.size() < 8) fail(errc::io_error, "report_from_csv: short row");
        ReportCell c;
        c.suite = f[0];
        c.check = f[1];
        c.m = std::stol(f[2]);
        c.n = std::stol(f[3]);
        c.p = std::stol(f[4]);
        c.predicted = f[5];
        c.computed = f[6];
        c.status = status_from_string(f[7]);
        r.cells.push_back(std::move(c));
    }
    return r;
}

inline std::string report_to_text(const VerificationReport& r, bool timings = false) {
    std::ostringstream os;
    for (const auto& c : r.cells) {
        os << '[' << to_string(c.status) << "] " << c.suite << " " << c.check;
        if (c.m) os << " m=" << c.m;
        if (c.n || c.suite == "h1-torsion" || c.suite == "h1-rank") os << " n=" << c.n;
        if (c.p) os << " p=" << c.p;
        os << ": predicted " << c.predicted << ", computed " << c.computed;
        if (timings) os << " (" << c.wall_ms << " ms)";
        os << "\n";
    }
    os << "summary: " << r.matches() << " match, " << r.mismatches() << " mismatch, "
       << r.flagged() << " flagged\n";
    return os.str();
}

}  // namespace congr
