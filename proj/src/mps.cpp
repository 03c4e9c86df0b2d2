#include "carrierflow/mps.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "carrierflow/errors.hpp"

namespace carrierflow {

namespace {

std::string number_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Shortest rendering of at most 12 characters.
std::string number_fixed(double v) {
    char buf[40];
    for (int prec = 12; prec >= 1; --prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::string(buf).size() <= 12) return buf;
    }
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

class Writer {
public:
    Writer(std::ostream& out, const SparseProblem& p, MpsFormat f) : out_(out), p_(p), fixed_(f == MpsFormat::fixed) {}

    std::string col(int j) const { return fixed_ ? mps_column_name(j) : p_.col_names[j]; }
    std::string row(int i) const { return fixed_ ? mps_row_name(i) : p_.row_names[i]; }
    std::string num(double v) const { return fixed_ ? number_fixed(v) : number_full(v); }

    // Fields start in columns 2, 5, 15, 25, 40 and 50 of the fixed layout.
    void line(const std::string& f1, const std::string& f2, const std::string& f3 = {},
              const std::string& f4 = {}) {
        std::string s = " " + pad(f1, 2) + " " + pad(f2, 8);
        if (!f3.empty()) s += "  " + pad(f3, 8);
        if (!f4.empty()) s += "  " + f4;
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out_ << s << '\n';
    }

    void write() {
        const std::string obj = fixed_ ? "COST" : "OBJ";
        out_ << "NAME          " << p_.name << '\n';
        out_ << "ROWS\n";
        line("N", obj);
        for (int i = 0; i < p_.num_rows; ++i) {
            const char* t = p_.sense[i] == RowSense::less_equal ? "L" : p_.sense[i] == RowSense::greater_equal ? "G" : "E";
            line(t, row(i));
        }
        out_ << "COLUMNS\n";
        bool in_int = false;
        int marker = 0;
        for (int j = 0; j < p_.num_cols; ++j) {
            const bool is_int = p_.integer[j] != 0;
            if (is_int != in_int) {
                char name[16];
                std::snprintf(name, sizeof name, "MARKER%02d", marker++ % 100);
                line("", name, "'MARKER'", is_int ? "'INTORG'" : "'INTEND'");
                in_int = is_int;
            }
            if (p_.objective[j] != 0.0) line("", col(j), obj, num(p_.objective[j]));
            for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k) line("", col(j), row(p_.row_index[k]), num(p_.values[k]));
            if (p_.objective[j] == 0.0 && p_.col_start[j] == p_.col_start[j + 1]) line("", col(j), obj, "0");
        }
        if (in_int) {
            char name[16];
            std::snprintf(name, sizeof name, "MARKER%02d", marker++ % 100);
            line("", name, "'MARKER'", "'INTEND'");
        }
        out_ << "RHS\n";
        if (p_.objective_offset != 0.0) line("", "RHS", obj, num(-p_.objective_offset));
        for (int i = 0; i < p_.num_rows; ++i)
            if (p_.rhs[i] != 0.0) line("", "RHS", row(i), num(p_.rhs[i]));
        out_ << "BOUNDS\n";
        for (int j = 0; j < p_.num_cols; ++j) {
            const double l = p_.lower[j], u = p_.upper[j];
            if (l == u) {
                line("FX", "BND", col(j), num(l));
                continue;
            }
            if (std::isinf(l) && std::isinf(u)) {
                line("FR", "BND", col(j));
                continue;
            }
            if (std::isinf(l)) line("MI", "BND", col(j));
            else if (l != 0.0 || p_.integer[j]) line("LO", "BND", col(j), num(l));
            if (!std::isinf(u)) line("UP", "BND", col(j), num(u));
            else if (p_.integer[j]) line("PL", "BND", col(j));
        }
        out_ << "ENDATA\n";
    }

private:
    std::ostream& out_;
    const SparseProblem& p_;
    bool fixed_;
};

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> t;
    std::string s;
    while (is >> s) t.push_back(s);
    return t;
}

double parse_number(const std::string& s, int line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("mps line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
}

}  // namespace

std::string mps_column_name(int col) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "C%07d", col + 1);
    return buf;
}

std::string mps_row_name(int row) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "R%07d", row + 1);
    return buf;
}

void write_mps(std::ostream& out, const SparseProblem& problem, MpsFormat format) {
    problem.validate();
    Writer(out, problem, format).write();
}

void write_mps(const std::string& path, const SparseProblem& problem, MpsFormat format) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    write_mps(f, problem, format);
    if (!f) throw IoError("write to '" + path + "' failed");
}

SparseProblem read_mps(std::istream& in) {
    enum class Section { none, rows, columns, rhs, bounds, done };
    Section sec = Section::none;
    std::string objective_row;
    std::map<std::string, int> row_of;
    std::map<std::string, int> col_of;
    ProblemBuilder b;
    std::vector<std::vector<Term>> row_terms;
    std::vector<RowSense> senses;
    std::vector<std::string> row_names;
    std::vector<double> rhs;
    std::vector<double> costs;
    std::vector<Term> col_entries;  // (row, value) accumulated before columns exist
    struct Entry { int col; int row; double value; };
    std::vector<Entry> entries;
    std::vector<std::string> col_names;
    std::vector<char> integer;
    std::vector<double> lower, upper;
    double offset = 0.0;
    bool in_int = false;
    std::string name = "carrierflow";

    std::string line;
    int line_no = 0;
    auto col_index = [&](const std::string& c) {
        auto it = col_of.find(c);
        if (it != col_of.end()) return it->second;
        const int j = static_cast<int>(col_names.size());
        col_of.emplace(c, j);
        col_names.push_back(c);
        integer.push_back(in_int ? 1 : 0);
        costs.push_back(0.0);
        lower.push_back(0.0);
        upper.push_back(kInf);
        return j;
    };
    auto row_index = [&](const std::string& r) {
        auto it = row_of.find(r);
        if (it == row_of.end()) throw DataError("mps line " + std::to_string(line_no) + ": unknown row '" + r + "'");
        return it->second;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '*') continue;
        const auto t = tokens(line);
        if (t.empty()) continue;
        if (line[0] != ' ' && line[0] != '\t') {
            const std::string& h = t[0];
            if (h == "NAME") { if (t.size() > 1) name = t[1]; sec = Section::none; }
            else if (h == "ROWS") sec = Section::rows;
            else if (h == "COLUMNS") sec = Section::columns;
            else if (h == "RHS") sec = Section::rhs;
            else if (h == "BOUNDS") sec = Section::bounds;
            else if (h == "ENDATA") { sec = Section::done; break; }
            else if (h == "RANGES") throw DataError("mps: RANGES section is not supported");
            else throw DataError("mps line " + std::to_string(line_no) + ": unknown section '" + h + "'");
            continue;
        }
        switch (sec) {
            case Section::rows: {
                if (t.size() != 2) throw DataError("mps line " + std::to_string(line_no) + ": bad ROWS entry");
                if (t[0] == "N") {
                    if (objective_row.empty()) objective_row = t[1];
                    continue;
                }
                RowSense s;
                if (t[0] == "L") s = RowSense::less_equal;
                else if (t[0] == "G") s = RowSense::greater_equal;
                else if (t[0] == "E") s = RowSense::equal;
                else throw DataError("mps line " + std::to_string(line_no) + ": bad row type '" + t[0] + "'");
                row_of.emplace(t[1], static_cast<int>(row_names.size()));
                row_names.push_back(t[1]);
                senses.push_back(s);
                rhs.push_back(0.0);
                break;
            }
            case Section::columns: {
                if (t.size() >= 3 && t[1] == "'MARKER'") {
                    if (t[2] == "'INTORG'") in_int = true;
                    else if (t[2] == "'INTEND'") in_int = false;
                    continue;
                }
                if (t.size() != 3 && t.size() != 5) throw DataError("mps line " + std::to_string(line_no) + ": bad COLUMNS entry");
                const int j = col_index(t[0]);
                for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
                    const double v = parse_number(t[k + 1], line_no);
                    if (t[k] == objective_row) costs[j] += v;
                    else entries.push_back({j, row_index(t[k]), v});
                }
                break;
            }
            case Section::rhs: {
                const std::size_t start = t.size() % 2 == 1 ? 1 : 0;
                for (std::size_t k = start; k + 1 < t.size(); k += 2) {
                    const double v = parse_number(t[k + 1], line_no);
                    if (t[k] == objective_row) offset = -v;
                    else rhs[row_index(t[k])] = v;
                }
                break;
            }
            case Section::bounds: {
                const std::string& type = t[0];
                const bool needs_value = type == "LO" || type == "UP" || type == "FX" || type == "LI" || type == "UI";
                std::string cname;
                double v = 0.0;
                if (needs_value) {
                    if (t.size() == 4) cname = t[2];
                    else if (t.size() == 3) cname = t[1];
                    else throw DataError("mps line " + std::to_string(line_no) + ": bad BOUNDS entry");
                    v = parse_number(t.back(), line_no);
                } else {
                    cname = t.back();
                }
                auto it = col_of.find(cname);
                if (it == col_of.end()) throw DataError("mps line " + std::to_string(line_no) + ": unknown column '" + cname + "'");
                const int j = it->second;
                if (type == "LO" || type == "LI") lower[j] = v;
                else if (type == "UP" || type == "UI") {
                    upper[j] = v;
                    if (v < 0.0 && lower[j] == 0.0) lower[j] = -kInf;
                } else if (type == "FX") lower[j] = upper[j] = v;
                else if (type == "FR") { lower[j] = -kInf; upper[j] = kInf; }
                else if (type == "MI") lower[j] = -kInf;
                else if (type == "PL") upper[j] = kInf;
                else if (type == "BV") { lower[j] = 0.0; upper[j] = 1.0; integer[j] = 1; }
                else throw DataError("mps line " + std::to_string(line_no) + ": bad bound type '" + type + "'");
                if (type == "LI" || type == "UI") integer[j] = 1;
                break;
            }
            default:
                throw DataError("mps line " + std::to_string(line_no) + ": data outside a section");
        }
    }
    if (sec != Section::done) throw DataError("mps: missing ENDATA");

    for (std::size_t j = 0; j < col_names.size(); ++j)
        b.add_column(col_names[j], lower[j], upper[j], costs[j], integer[j] != 0);
    std::vector<std::vector<Term>> terms(row_names.size());
    for (const auto& e : entries) terms[e.row].push_back({e.col, e.value});
    for (std::size_t i = 0; i < row_names.size(); ++i) b.add_row(row_names[i], senses[i], rhs[i], terms[i]);
    SparseProblem p = b.build(name);
    p.objective_offset = offset;
    return p;
}

SparseProblem read_mps_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path + "'");
    return read_mps(f);
}

std::vector<double> read_solution(std::istream& in, const SparseProblem& problem) {
    const NameRegistry names(problem);
    std::vector<double> x(problem.num_cols, 0.0);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto t = tokens(line);
        if (t.empty()) continue;
        if (t.size() != 2) throw DataError("solution line " + std::to_string(line_no) + ": expected 'name value'");
        int j = names.column(t[0]);
        if (j < 0 && t[0].size() == 8 && t[0][0] == 'C') {
            try {
                j = std::stoi(t[0].substr(1)) - 1;
            } catch (const std::exception&) {
                j = -1;
            }
            if (j >= problem.num_cols) j = -1;
        }
        if (j < 0) throw DataError("solution line " + std::to_string(line_no) + ": unknown column '" + t[0] + "'");
        x[j] = parse_number(t[1], line_no);
    }
    return x;
}

std::vector<double> read_solution_file(const std::string& path, const SparseProblem& problem) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path + "'");
    return read_solution(f, problem);
}

void write_solution(std::ostream& out, const SparseProblem& problem, const SolveResult& result) {
    out << "# status " << to_string(result.status) << '\n';
    out << "# objective " << number_full(result.objective) << '\n';
    for (int j = 0; j < problem.num_cols && j < static_cast<int>(result.primal.size()); ++j)
        out << problem.col_names[j] << ' ' << number_full(result.primal[j]) << '\n';
}

}  // namespace carrierflow
