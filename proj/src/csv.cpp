#include "condscan/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace condscan {

namespace {

std::vector<std::string> split_fields(const std::string& line, std::size_t lineno) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                quoted = false;
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            if (!field.empty()) {
                std::ostringstream os;
                os << "line " << lineno << ": unexpected quote inside field";
                throw DataError(os.str());
            }
            quoted = true;
        } else if (c == ',') {
            out.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) {
        std::ostringstream os;
        os << "line " << lineno << ": unterminated quoted field";
        throw DataError(os.str());
    }
    out.push_back(field);
    return out;
}

double parse_cell(const std::string& cell, const std::string& column, std::size_t lineno) {
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    // tolerate surrounding spaces
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || begin == end) {
        std::ostringstream os;
        os << "line " << lineno << ", column '" << column << "': not numeric: '" << cell << "'";
        throw DataError(os.str());
    }
    return v;
}

} // namespace

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input file: " + path);

    Table table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1) {
            table.header = split_fields(line, lineno);
            if (table.header.empty() || (table.header.size() == 1 && table.header[0].empty())) {
                throw DataError("line 1: empty header");
            }
            table.columns.assign(table.header.size(), {});
            continue;
        }
        if (line.empty()) continue; // tolerate a trailing blank line
        const std::vector<std::string> fields = split_fields(line, lineno);
        if (fields.size() != table.header.size()) {
            std::ostringstream os;
            os << "line " << lineno << ": expected " << table.header.size() << " fields, got "
               << fields.size();
            throw DataError(os.str());
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            table.columns[c].push_back(parse_cell(fields[c], table.header[c], lineno));
        }
    }
    if (lineno == 0) throw DataError("empty file: " + path);
    return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open output file: " + path);
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out << ',';
        out << header[c];
    }
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    char buf[64];
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out << ',';
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), columns[c][r]);
            out.write(buf, ptr - buf);
            (void)ec;
        }
        out << '\n';
    }
    if (!out) throw DataError("failed writing: " + path);
}

std::vector<std::size_t> resolve_columns(const Table& table, const std::string& selection) {
    std::vector<std::size_t> out;
    std::string token;
    std::istringstream in(selection);
    while (std::getline(in, token, ',')) {
        if (token.empty()) throw DataError("empty column selector in '" + selection + "'");
        bool digits = true;
        for (char c : token) digits = digits && c >= '0' && c <= '9';
        if (digits) {
            const std::size_t idx = std::stoul(token);
            if (idx >= table.header.size()) {
                throw DataError("column index " + token + " out of range");
            }
            out.push_back(idx);
            continue;
        }
        bool found = false;
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            if (table.header[c] == token) {
                out.push_back(c);
                found = true;
                break;
            }
        }
        if (!found) throw DataError("no column named '" + token + "'");
    }
    return out;
}

} // namespace condscan
