#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavtc::cli {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 17 significant digits, so every value round-trips. NaN becomes an empty field.
std::string format_number(double v);
std::string format_number(long long v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
};

void write_csv(std::ostream& out, const Table& table);
void write_csv(const std::filesystem::path& path, const Table& table);

// Plain comma-separated text without quoting. An empty stream gives an empty
// table; ragged rows are a CsvError.
Table read_csv(std::istream& in);

} // namespace uavtc::cli
