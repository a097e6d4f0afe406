#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "numfan/design.hpp"
#include "numfan/scalar.hpp"

namespace numfan {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == ';' || c == '\t') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    while (!fields.empty() && fields.back().empty()) fields.pop_back();
    return fields;
}

inline std::vector<std::vector<std::string>> read_csv_rows(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto fields = split_csv_line(line);
        if (!fields.empty()) rows.push_back(std::move(fields));
    }
    return rows;
}

inline bool all_numeric(const std::vector<std::string>& fields) {
    for (const auto& f : fields)
        if (!Scalar::parse(f)) return false;
    return !fields.empty();
}

}  // namespace detail

/// One point per row, d numeric columns; decimal or "p/q" literals.  A single
/// non-numeric first row is treated as a header and skipped.
inline Design read_design_csv(std::istream& in, const std::string& origin = "<stream>") {
    auto rows = detail::read_csv_rows(in);
    if (!rows.empty() && !detail::all_numeric(rows.front())) rows.erase(rows.begin());
    if (rows.empty()) throw ParseError(origin + ": no data rows");
    const std::size_t d = rows.front().size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != d)
            throw ParseError(origin + ": row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " columns, expected " + std::to_string(d));
        if (!detail::all_numeric(rows[i]))
            throw ParseError(origin + ": row " + std::to_string(i + 1) + " is not numeric");
    }
    return Design::parse_rows(rows);
}

inline Design read_design_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return read_design_csv(in, path);
}

/// Comma-separated tolerance literal ("0.018,0.018").
inline std::vector<double> parse_tolerance(const std::string& text) {
    std::vector<double> tol;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto s = Scalar::parse(item);
        if (!s || s->value() < 0) throw ParseError("tolerance: cannot parse '" + item + "'");
        tol.push_back(s->value());
    }
    if (tol.empty()) throw ParseError("tolerance: empty");
    return tol;
}

/// One-row CSV of d tolerance values (optional header row, as for designs).
inline std::vector<double> read_tolerance_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    auto rows = detail::read_csv_rows(in);
    if (!rows.empty() && !detail::all_numeric(rows.front())) rows.erase(rows.begin());
    if (rows.size() != 1) throw ParseError(path + ": expected exactly one tolerance row");
    std::vector<double> tol;
    for (const auto& f : rows.front()) {
        auto s = Scalar::parse(f);
        if (!s || s->value() < 0) throw ParseError(path + ": bad tolerance '" + f + "'");
        tol.push_back(s->value());
    }
    return tol;
}

}  // namespace numfan
