#pragma once

// Small CSV table reader shared by the input loaders.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "carrierflow/errors.hpp"

namespace carrierflow::csv {

namespace fs = std::filesystem;


struct Table {
    std::string file;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // data rows; file row = index + 2

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }
};

inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    cells.push_back(cur);
    return cells;
}

inline std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Table read_table(const fs::path& dir, const std::string& file) {
    Table t;
    t.file = file;
    std::istringstream in(slurp(dir / file));
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (row == 1) {
            t.header = split(line);
            std::set<std::string> seen;
            for (const auto& h : t.header)
                if (!seen.insert(h).second) throw SchemaError(file, 1, h, "duplicate column");
            continue;
        }
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != t.header.size())
            throw SchemaError(file, row, "",
                              "expected " + std::to_string(t.header.size()) + " cells, found " + std::to_string(cells.size()));
        t.rows.push_back(std::move(cells));
    }
    if (row == 0) throw SchemaError(file, 1, "", "missing header");
    return t;
}

/// Checks that the header holds exactly the expected columns.
inline void require_columns(const Table& t, const std::vector<std::string>& expected) {
    for (const auto& h : t.header) {
        bool known = false;
        for (const auto& e : expected) known = known || e == h;
        if (!known) throw SchemaError(t.file, 1, h, "unknown column");
    }
    for (const auto& e : expected)
        if (t.column(e) < 0) throw SchemaError(t.file, 1, e, "missing column");
}

class RowReader {
public:
    RowReader(const Table& t, std::size_t r) : t_(t), r_(r) {}

    const std::string& text(const std::string& col) const { return t_.rows[r_][t_.column(col)]; }

    double number(const std::string& col) const {
        const std::string& s = text(col);
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size()) fail(col, "not a number: '" + s + "'");
        return v;
    }

    std::optional<double> optional_number(const std::string& col) const {
        if (text(col).empty()) return std::nullopt;
        return number(col);
    }

    bool boolean(const std::string& col) const {
        const std::string& s = text(col);
        if (s == "true") return true;
        if (s == "false") return false;
        fail(col, "expected true or false, found '" + s + "'");
    }

    template <class Fn>
    auto parsed(const std::string& col, Fn fn) const {
        try {
            return fn(text(col));
        } catch (const DataError& e) {
            fail(col, e.what());
        }
    }

    [[noreturn]] void fail(const std::string& col, const std::string& what) const {
        throw SchemaError(t_.file, static_cast<int>(r_) + 2, col, what);
    }

private:
    const Table& t_;
    std::size_t r_;
};

inline std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_number(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw DataError("not a number: '" + s + "'");
    return v;
}

}  // namespace carrierflow::csv
