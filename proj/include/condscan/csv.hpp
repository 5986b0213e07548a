#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace condscan {

/// Data-level failures (unreadable file, malformed CSV, non-numeric
/// cells). The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// RFC-4180 subset: header row required, comma separator, optional
/// quoting (no embedded separators), '.' decimal point, scientific
/// notation accepted. Errors carry the 1-based line number.
Table read_csv(const std::string& path);

/// Writes values with shortest round-trip formatting so a read-back
/// reproduces the exact doubles.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

/// Resolves a comma-separated selection of column names or 0-based
/// indices against the table header.
std::vector<std::size_t> resolve_columns(const Table& table, const std::string& selection);

} // namespace condscan
