#pragma once

#include <istream>

#include "uavtc/cli/csv.hpp"

namespace uavtc::cli {

// Long format with columns series,x,y,se, derived from a results table. The
// experiment is recognized from the header. A table without columns (empty
// input) gives the header only; an unknown header or a non-numeric cell is a
// CsvError.
Table emit_plotdata(const Table& results);
Table emit_plotdata(std::istream& results_csv);

} // namespace uavtc::cli
