#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace numlab::cli {

enum class OutputFormat { Table, Csv, Json };

/// Value rounded to `digits` significant digits, printf %g style.
std::string sig(double v, int digits);

/// Shortest text that reads back as the same double.
std::string full(double v);

/// Header row plus data rows; rendered as aligned text or CSV.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    std::size_t size() const noexcept { return rows_.size(); }

    void print_aligned(std::ostream& os) const;
    void print_csv(std::ostream& os) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace numlab::cli
