#include "uavtc/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace uavtc::cli {

std::string format_number(double v)
{
    if (std::isnan(v)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_number(long long v)
{
    return std::to_string(v);
}

void Table::add_row(std::vector<std::string> row)
{
    if (row.size() != columns.size())
        throw CsvError("row has " + std::to_string(row.size()) + " fields, expected " + std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

namespace {

void write_line(std::ostream& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

} // namespace

void write_csv(std::ostream& out, const Table& table)
{
    write_line(out, table.columns);
    for (const auto& row : table.rows) write_line(out, row);
}

void write_csv(const std::filesystem::path& path, const Table& table)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("cannot open " + path.string() + " for writing");
    write_csv(out, table);
    out.flush();
    if (!out) throw CsvError("write to " + path.string() + " failed");
}

Table read_csv(std::istream& in)
{
    Table table;
    std::string line;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line);
        if (header) {
            table.columns = std::move(fields);
            header = false;
            continue;
        }
        if (fields.size() != table.columns.size())
            throw CsvError("line " + std::to_string(line_no) + ": " + std::to_string(fields.size())
                           + " fields, header has " + std::to_string(table.columns.size()));
        table.rows.push_back(std::move(fields));
    }
    return table;
}

} // namespace uavtc::cli
