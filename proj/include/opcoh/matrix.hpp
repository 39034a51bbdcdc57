#ifndef OPCOH_MATRIX_HPP
#define OPCOH_MATRIX_HPP

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "opcoh/rational.hpp"

namespace opcoh {

/// Sparse exact-rational matrix with labeled rows and columns.
/// Invariant: no stored entry is zero.
struct SparseMatrix {
    long rows = 0;
    long cols = 0;
    std::map<std::pair<long, long>, Rational> entries;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    SparseMatrix() = default;
    SparseMatrix(long r, long c) : rows(r), cols(c) {
        row_labels.resize(r);
        col_labels.resize(c);
        for (long i = 0; i < r; ++i) row_labels[i] = "r" + std::to_string(i);
        for (long j = 0; j < c; ++j) col_labels[j] = "c" + std::to_string(j);
    }

    void set(long r, long c, const Rational& v) {
        check_index(r, c);
        if (v == 0)
            entries.erase({r, c});
        else
            entries[{r, c}] = v;
    }

    void add(long r, long c, const Rational& v) {
        check_index(r, c);
        auto it = entries.find({r, c});
        if (it == entries.end()) {
            if (v != 0) entries[{r, c}] = v;
            return;
        }
        it->second += v;
        if (it->second == 0) entries.erase(it);
    }

    Rational at(long r, long c) const {
        check_index(r, c);
        auto it = entries.find({r, c});
        return it == entries.end() ? Rational(0) : it->second;
    }

    std::vector<Rational> row(long r) const {
        std::vector<Rational> out(cols, Rational(0));
        for (auto it = entries.lower_bound({r, 0}); it != entries.end() && it->first.first == r; ++it)
            out[it->first.second] = it->second;
        return out;
    }

    long nnz() const { return static_cast<long>(entries.size()); }

    long row_nnz(long r) const {
        long n = 0;
        for (auto it = entries.lower_bound({r, 0}); it != entries.end() && it->first.first == r; ++it) ++n;
        return n;
    }

    long col_nnz(long c) const {
        long n = 0;
        for (const auto& [rc, v] : entries)
            if (rc.second == c) ++n;
        return n;
    }

    bool all_entries_pm_one() const {
        for (const auto& [rc, v] : entries)
            if (v != 1 && v != -1) return false;
        return true;
    }

    // CSV: first row holds column labels, first column row labels, empty
    // cells mean zero, values printed as "p/q" or integers.
    void to_csv(std::ostream& os) const {
        os << quote("");
        for (long j = 0; j < cols; ++j) os << "," << quote(col_labels[j]);
        os << "\n";
        for (long i = 0; i < rows; ++i) {
            os << quote(row_labels[i]);
            for (long j = 0; j < cols; ++j) {
                os << ",";
                auto it = entries.find({i, j});
                if (it != entries.end()) os << quote(to_string(it->second));
            }
            os << "\n";
        }
    }

    std::string to_csv_string() const {
        std::ostringstream os;
        to_csv(os);
        return os.str();
    }

    static SparseMatrix from_csv(std::istream& is) {
        std::vector<std::vector<std::string>> cells;
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            cells.push_back(split_csv_line(line));
        }
        if (cells.empty()) throw Error("empty CSV");
        SparseMatrix m(static_cast<long>(cells.size()) - 1, static_cast<long>(cells[0].size()) - 1);
        for (long j = 0; j < m.cols; ++j) m.col_labels[j] = cells[0][j + 1];
        for (long i = 0; i < m.rows; ++i) {
            const auto& row = cells[i + 1];
            if (static_cast<long>(row.size()) != m.cols + 1)
                throw Error("ragged CSV row " + std::to_string(i + 2));
            m.row_labels[i] = row[0];
            for (long j = 0; j < m.cols; ++j)
                if (!row[j + 1].empty()) m.set(i, j, parse_rational(row[j + 1]));
        }
        return m;
    }

    static SparseMatrix from_csv_string(const std::string& s) {
        std::istringstream is(s);
        return from_csv(is);
    }

    bool operator==(const SparseMatrix& o) const {
        return rows == o.rows && cols == o.cols && entries == o.entries &&
               row_labels == o.row_labels && col_labels == o.col_labels;
    }

private:
    void check_index(long r, long c) const {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw Error("matrix index out of bounds");
    }

    static std::string quote(const std::string& s) {
        // monomial labels contain commas, so always follow RFC-style quoting
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += "\"\"";
            else out += ch;
        }
        out += "\"";
        return out;
    }

    static std::vector<std::string> split_csv_line(const std::string& line) {
        std::vector<std::string> out;
        std::string cur;
        bool in_quotes = false;
        for (size_t i = 0; i < line.size(); ++i) {
            char ch = line[i];
            if (in_quotes) {
                if (ch == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        cur += '"';
                        ++i;
                    } else {
                        in_quotes = false;
                    }
                } else {
                    cur += ch;
                }
            } else if (ch == '"') {
                in_quotes = true;
            } else if (ch == ',') {
                out.push_back(cur);
                cur.clear();
            } else if (ch != '\r') {
                cur += ch;
            }
        }
        out.push_back(cur);
        return out;
    }
};

} // namespace opcoh

#endif
