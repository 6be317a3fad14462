#include "uavtc/cli/plotdata.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <string>
#include <vector>

namespace uavtc::cli {

namespace {

struct SeriesSpec {
    std::string name;
    std::string y;
    std::string se;  // empty: no standard error column
};

// How one results layout maps to long format: rows are grouped into series by
// the key columns, plotted against column x.
struct Layout {
    std::vector<std::string> columns;
    std::vector<std::string> keys;
    std::string x;
    std::vector<SeriesSpec> series;
};

const std::vector<Layout>& layouts()
{
    static const std::vector<Layout> all = {
        {{"m", "t", "n", "p_analytic", "p_mc", "p_poisson_independent"},
         {"m", "t"},
         "n",
         {{"analytic", "p_analytic", ""}, {"mc", "p_mc", ""}, {"poisson_independent", "p_poisson_independent", ""}}},
        {{"m", "t", "threshold_db", "p_mc", "se"}, {"m", "t"}, "threshold_db", {{"mc", "p_mc", "se"}}},
        {{"t", "p_retx_analytic", "p_retx_mc", "se", "p_marginal_independent"},
         {},
         "t",
         {{"retx_analytic", "p_retx_analytic", ""},
          {"retx_mc", "p_retx_mc", "se"},
          {"marginal_independent", "p_marginal_independent", ""}}},
        {{"t", "threshold_db", "p_joint_analytic", "p_joint_mc", "se_joint", "p_marginal_0_analytic",
          "p_marginal_0_mc", "se_marginal_0", "p_marginal_t_analytic", "p_marginal_t_mc", "se_marginal_t",
          "p_independent_joint"},
         {"threshold_db"},
         "t",
         {{"joint_analytic", "p_joint_analytic", ""},
          {"joint_mc", "p_joint_mc", "se_joint"},
          {"marginal_0_analytic", "p_marginal_0_analytic", ""},
          {"marginal_0_mc", "p_marginal_0_mc", "se_marginal_0"},
          {"marginal_t_analytic", "p_marginal_t_analytic", ""},
          {"marginal_t_mc", "p_marginal_t_mc", "se_marginal_t"},
          {"independent_joint", "p_independent_joint", ""}}},
        {{"t", "threshold_db", "quantity", "analytic", "mc", "se", "z"},
         {"quantity", "threshold_db"},
         "t",
         {{"analytic", "analytic", ""}, {"mc", "mc", "se"}}},
    };
    return all;
}

bool is_number(const std::string& s)
{
    if (s.empty()) return false;
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    return ec == std::errc() && ptr == end;
}

std::size_t column_index(const Table& t, const std::string& name)
{
    return static_cast<std::size_t>(std::find(t.columns.begin(), t.columns.end(), name) - t.columns.begin());
}

} // namespace

Table emit_plotdata(const Table& results)
{
    Table out;
    out.columns = {"series", "x", "y", "se"};
    if (results.columns.empty()) return out;

    const auto& all = layouts();
    const auto layout = std::find_if(all.begin(), all.end(), [&](const Layout& l) { return l.columns == results.columns; });
    if (layout == all.end()) throw CsvError("unrecognized results header");

    const std::size_t x_col = column_index(results, layout->x);
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::vector<std::string>>> grouped;

    for (std::size_t r = 0; r < results.rows.size(); ++r) {
        const auto& row = results.rows[r];
        if (row.size() != results.columns.size()) throw CsvError("ragged row " + std::to_string(r + 1));
        const std::string& x = row[x_col];
        if (!is_number(x)) throw CsvError("row " + std::to_string(r + 1) + ": non-numeric " + layout->x);

        std::string suffix;
        for (const auto& key : layout->keys) suffix += " " + key + "=" + row[column_index(results, key)];

        for (const auto& s : layout->series) {
            const std::string& y = row[column_index(results, s.y)];
            const std::string se = s.se.empty() ? std::string() : row[column_index(results, s.se)];
            if (y.empty()) continue;  // estimate unavailable at this point
            if (!is_number(y) || (!se.empty() && !is_number(se)))
                throw CsvError("row " + std::to_string(r + 1) + ": non-numeric value in " + s.y);
            const std::string name = s.name + suffix;
            auto [it, inserted] = grouped.try_emplace(name);
            if (inserted) order.push_back(name);
            it->second.push_back({name, x, y, se});
        }
    }
    for (const auto& name : order)
        for (auto& row : grouped[name]) out.rows.push_back(std::move(row));
    return out;
}

Table emit_plotdata(std::istream& results_csv)
{
    return emit_plotdata(read_csv(results_csv));
}

} // namespace uavtc::cli
