// Flat-file formats. Patterns are '1'/'0' lines; everything else is plain
// CSV with no quoting. Numbers are written canonically (integers in
// decimal, doubles in shortest round-trip form), so parsing an artifact
// and re-serializing it reproduces the bytes exactly.

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bmatrix/complexity.hpp"
#include "bmatrix/core.hpp"
#include "bmatrix/experiments.hpp"
#include "bmatrix/sites.hpp"

namespace bmx::io {

[[nodiscard]] inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

[[nodiscard]] inline double parse_double(std::string_view text, std::size_t line) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw parse_error(line, "expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

template <typename Int>
[[nodiscard]] Int parse_int(std::string_view text, std::size_t line) {
    Int value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw parse_error(line, "expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

// ---------------------------------------------------------------------------
// line/field splitting

[[nodiscard]] inline std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

[[nodiscard]] inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

[[nodiscard]] inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path + "' for reading");
    }
    return in;
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot open '" + path + "' for writing");
    }
    out << contents;
    if (!out) {
        throw io_error("failed writing '" + path + "'");
    }
}

[[nodiscard]] inline std::string read_file(const std::string& path) {
    std::ifstream in = open_input(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// pattern text format: one '1'/'0' pattern per line

[[nodiscard]] inline MemorySet read_patterns(std::istream& in) {
    std::vector<BipolarVector> memories;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            throw parse_error(line_no, "empty pattern line");
        }
        try {
            memories.push_back(BipolarVector::from_bits(line));
        } catch (const std::invalid_argument& e) {
            throw parse_error(line_no, e.what());
        }
        if (memories.back().size() != memories.front().size()) {
            throw parse_error(line_no, "pattern length differs from first pattern");
        }
    }
    return MemorySet(std::move(memories));  // validates distinctness, m >= 1, n >= 2
}

inline void write_patterns(std::ostream& out, const MemorySet& memories) {
    for (const auto& mem : memories.memories()) {
        out << mem.to_bits() << '\n';
    }
}

// ---------------------------------------------------------------------------
// weight matrix CSV: a header line holding n, then n rows of n integers

inline void write_weights_csv(std::ostream& out, const WeightMatrix& t) {
    const std::size_t n = t.size();
    out << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out << ',';
            out << t(i, j);
        }
        out << '\n';
    }
}

[[nodiscard]] inline WeightMatrix read_weights_csv(std::istream& in) {
    const auto lines = read_lines(in);
    if (lines.empty()) {
        throw parse_error(1, "missing weight-matrix header");
    }
    const auto n = parse_int<std::size_t>(lines[0], 1);
    if (lines.size() != n + 1) {
        throw parse_error(lines.size(), "expected " + std::to_string(n) + " matrix rows");
    }
    std::vector<int> entries;
    entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto fields = split_fields(lines[i + 1]);
        if (fields.size() != n) {
            throw parse_error(i + 2, "expected " + std::to_string(n) + " columns");
        }
        for (const auto& f : fields) entries.push_back(parse_int<int>(f, i + 2));
    }
    return WeightMatrix(n, std::move(entries));  // validates symmetry / zero diagonal
}

// ---------------------------------------------------------------------------
// positions CSV: index,x,y[,z]

inline void write_positions_csv(std::ostream& out, const ProximityModel& prox) {
    out << (prox.dims() == 3 ? "index,x,y,z" : "index,x,y") << '\n';
    for (std::size_t i = 0; i < prox.size(); ++i) {
        const auto& p = prox.position(i);
        out << i << ',' << format_double(p[0]) << ',' << format_double(p[1]);
        if (prox.dims() == 3) out << ',' << format_double(p[2]);
        out << '\n';
    }
}

[[nodiscard]] inline ProximityModel read_positions_csv(std::istream& in) {
    const auto lines = read_lines(in);
    if (lines.empty()) {
        throw parse_error(1, "missing positions header");
    }
    int dims = 0;
    if (lines[0] == "index,x,y") {
        dims = 2;
    } else if (lines[0] == "index,x,y,z") {
        dims = 3;
    } else {
        throw parse_error(1, "unrecognized positions header '" + lines[0] + "'");
    }
    std::vector<std::array<double, 3>> pos;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        if (fields.size() != static_cast<std::size_t>(dims) + 1) {
            throw parse_error(i + 1, "wrong column count");
        }
        const auto index = parse_int<std::size_t>(fields[0], i + 1);
        if (index != i - 1) {
            throw parse_error(i + 1, "positions must be listed in index order");
        }
        std::array<double, 3> p{0.0, 0.0, 0.0};
        for (int d = 0; d < dims; ++d) p[d] = parse_double(fields[d + 1], i + 1);
        pos.push_back(p);
    }
    return ProximityModel(std::move(pos), dims);
}

// ---------------------------------------------------------------------------
// site map CSV: memory_index,level,site_index,score,strict

inline void write_sites_csv(std::ostream& out, const ActiveSiteMap& map) {
    out << "memory_index,level,site_index,score,strict\n";
    for (std::size_t i = 0; i < map.entries().size(); ++i) {
        const auto& e = map.entry(i);
        for (std::size_t k = 0; k < e.sites.size(); ++k) {
            out << i << ',' << e.level << ',' << e.sites[k] << ',' << e.scores[k] << ','
                << (map.is_strict_score(e.scores[k]) ? 1 : 0) << '\n';
        }
    }
}

[[nodiscard]] inline ActiveSiteMap read_sites_csv(std::istream& in) {
    const auto lines = read_lines(in);
    if (lines.empty() || lines[0] != "memory_index,level,site_index,score,strict") {
        throw parse_error(1, "unrecognized site-map header");
    }
    std::vector<ActiveSiteEntry> entries;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        if (fields.size() != 5) {
            throw parse_error(i + 1, "wrong column count");
        }
        const auto memory = parse_int<std::size_t>(fields[0], i + 1);
        // Rows must stay grouped: continue the current memory or start the next.
        if (memory == entries.size()) {
            entries.emplace_back();
        } else if (memory + 1 != entries.size()) {
            throw parse_error(i + 1, "memory indices must be grouped in order");
        }
        entries[memory].level = parse_int<std::uint64_t>(fields[1], i + 1);
        entries[memory].sites.push_back(parse_int<std::size_t>(fields[2], i + 1));
        entries[memory].scores.push_back(parse_int<std::size_t>(fields[3], i + 1));
    }
    if (entries.empty()) {
        throw std::invalid_argument("site map has no rows");
    }
    return ActiveSiteMap(std::move(entries), entries.size());
}

// ---------------------------------------------------------------------------
// experiment sweep CSV

inline void write_experiments_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "strategy,n,m,r,trials,mean_success,stddev,strict_site_rate,master_seed\n";
    for (const auto& row : rows) {
        out << strategy_name(row.strategy) << ',' << row.n << ',' << row.m << ',' << row.r << ','
            << row.trials << ',' << format_double(row.stats.mean_success) << ','
            << format_double(row.stats.stddev) << ',' << format_double(row.stats.strict_site_rate)
            << ',' << row.master_seed << '\n';
    }
}

[[nodiscard]] inline std::vector<SweepRow> read_experiments_csv(std::istream& in) {
    const auto lines = read_lines(in);
    if (lines.empty() ||
        lines[0] != "strategy,n,m,r,trials,mean_success,stddev,strict_site_rate,master_seed") {
        throw parse_error(1, "unrecognized experiments header");
    }
    std::vector<SweepRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        if (fields.size() != 9) {
            throw parse_error(i + 1, "wrong column count");
        }
        SweepRow row;
        row.strategy = strategy_from_name(fields[0]);
        row.n = parse_int<std::size_t>(fields[1], i + 1);
        row.m = parse_int<std::size_t>(fields[2], i + 1);
        row.r = parse_int<std::size_t>(fields[3], i + 1);
        row.trials = parse_int<std::size_t>(fields[4], i + 1);
        row.stats.mean_success = parse_double(fields[5], i + 1);
        row.stats.stddev = parse_double(fields[6], i + 1);
        row.stats.strict_site_rate = parse_double(fields[7], i + 1);
        row.master_seed = parse_int<std::uint64_t>(fields[8], i + 1);
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// cost report CSV

inline void write_cost_csv(std::ostream& out, const CostReport& report) {
    out << "n,r,classical_ops,active_ops,ratio\n";
    out << report.n << ',' << report.r << ',' << report.classical_ops.str() << ','
        << report.active_ops.str() << ',' << format_double(report.ratio) << '\n';
}

[[nodiscard]] inline CostReport read_cost_csv(std::istream& in) {
    const auto lines = read_lines(in);
    if (lines.size() < 2 || lines[0] != "n,r,classical_ops,active_ops,ratio") {
        throw parse_error(1, "unrecognized cost header");
    }
    const auto fields = split_fields(lines[1]);
    if (fields.size() != 5) {
        throw parse_error(2, "wrong column count");
    }
    CostReport report;
    report.n = parse_int<unsigned>(fields[0], 2);
    report.r = parse_int<unsigned>(fields[1], 2);
    report.classical_ops = BigInt(fields[2]);
    report.active_ops = BigInt(fields[3]);
    report.ratio = parse_double(fields[4], 2);
    return report;
}

}  // namespace bmx::io
