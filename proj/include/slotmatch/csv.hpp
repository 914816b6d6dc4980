// csv.hpp - ingestion and writing of the three dataset files.
//
// trajectories.csv : user_id,lat,lon,t_start,t_end
// billboards.csv   : billboard_id,lat,lon,cost,panel_size
// affinities.csv   : user_id,tag_id,probability
//
// Headers are required; timestamps are integer seconds.
#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slotmatch/core.hpp"

namespace slotmatch {
namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_double(const std::string& s, std::size_t row, const std::string& col) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("row " + std::to_string(row) + ": column '" + col +
                              "' is not a number: '" + s + "'");
    }
}

inline std::int64_t parse_int(const std::string& s, std::size_t row, const std::string& col) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ValidationError("row " + std::to_string(row) + ": column '" + col +
                              "' is not an integer: '" + s + "'");
    return v;
}

// Reads all data lines; checks the header against `expected` (a prefix match
// of length >= min_cols is accepted so optional trailing columns can be absent).
inline std::vector<std::vector<std::string>> read_rows(const std::string& path,
                                                       const std::vector<std::string>& expected,
                                                       std::size_t min_cols,
                                                       std::size_t& ncols) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) {
        ncols = 0;
        return {};  // empty file -> empty list
    }
    auto header = split_csv_line(line);
    if (header.size() < min_cols || header.size() > expected.size())
        throw ValidationError(path + ": unexpected header");
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] != expected[i])
            throw ValidationError(path + ": header column " + std::to_string(i) +
                                  " is '" + header[i] + "', expected '" + expected[i] + "'");
    ncols = header.size();
    std::vector<std::vector<std::string>> rows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != ncols)
            throw ValidationError(path + ": row " + std::to_string(row) + " has " +
                                  std::to_string(fields.size()) + " columns, expected " +
                                  std::to_string(ncols));
        rows.push_back(std::move(fields));
    }
    return rows;
}

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace detail

inline std::vector<TrajectoryRecord> load_trajectories(const std::string& path) {
    std::size_t ncols = 0;
    auto rows = detail::read_rows(path, {"user_id", "lat", "lon", "t_start", "t_end"}, 5, ncols);
    std::vector<TrajectoryRecord> out;
    out.reserve(rows.size());
    std::size_t row = 1;
    for (auto& f : rows) {
        ++row;
        TrajectoryRecord r{f[0],
                           detail::parse_double(f[1], row, "lat"),
                           detail::parse_double(f[2], row, "lon"),
                           detail::parse_int(f[3], row, "t_start"),
                           detail::parse_int(f[4], row, "t_end")};
        validate_trajectory(r, row);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<BillboardRecord> load_billboards(const std::string& path) {
    std::size_t ncols = 0;
    auto rows = detail::read_rows(path, {"billboard_id", "lat", "lon", "cost", "panel_size"}, 4, ncols);
    std::vector<BillboardRecord> out;
    out.reserve(rows.size());
    std::size_t row = 1;
    for (auto& f : rows) {
        ++row;
        BillboardRecord r{f[0],
                          detail::parse_double(f[1], row, "lat"),
                          detail::parse_double(f[2], row, "lon"),
                          detail::parse_double(f[3], row, "cost"),
                          ncols >= 5 ? detail::parse_double(f[4], row, "panel_size") : 1.0};
        validate_billboard(r, row);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<TagAffinity> load_affinities(const std::string& path) {
    std::size_t ncols = 0;
    auto rows = detail::read_rows(path, {"user_id", "tag_id", "probability"}, 3, ncols);
    std::vector<TagAffinity> out;
    out.reserve(rows.size());
    std::set<std::pair<std::string, std::string>> seen;
    std::size_t row = 1;
    for (auto& f : rows) {
        ++row;
        TagAffinity r{f[0], f[1], detail::parse_double(f[2], row, "probability")};
        validate_affinity(r, row);
        if (!seen.emplace(r.user_id, r.tag_id).second)
            throw ValidationError("row " + std::to_string(row) + ": duplicate (user_id, tag_id) pair " +
                                  r.user_id + "," + r.tag_id);
        out.push_back(std::move(r));
    }
    return out;
}

inline void write_trajectories(const std::string& path, const std::vector<TrajectoryRecord>& rs) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "user_id,lat,lon,t_start,t_end\n";
    for (const auto& r : rs)
        out << r.user_id << ',' << detail::fmt_double(r.lat) << ',' << detail::fmt_double(r.lon)
            << ',' << r.t_start << ',' << r.t_end << '\n';
}

inline void write_billboards(const std::string& path, const std::vector<BillboardRecord>& rs) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "billboard_id,lat,lon,cost,panel_size\n";
    for (const auto& r : rs)
        out << r.billboard_id << ',' << detail::fmt_double(r.lat) << ',' << detail::fmt_double(r.lon)
            << ',' << detail::fmt_double(r.cost) << ',' << detail::fmt_double(r.panel_size) << '\n';
}

inline void write_affinities(const std::string& path, const std::vector<TagAffinity>& rs) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "user_id,tag_id,probability\n";
    for (const auto& r : rs)
        out << r.user_id << ',' << r.tag_id << ',' << detail::fmt_double(r.probability) << '\n';
}

}  // namespace slotmatch
