#ifndef PECOK_CSV_HPP
#define PECOK_CSV_HPP

#include "pecok/core_model.hpp"

#include <filesystem>
#include <iosfwd>

namespace pecok {

/// Reads one observation per row of comma-separated decimals. A first line
/// containing any non-numeric field is taken as a header and skipped. Blank
/// lines are ignored. Throws InputError naming the offending line on
/// ragged rows or unparsable fields.
DataMatrix read_data_csv(std::istream& in);
DataMatrix read_data_csv(const std::filesystem::path& path);

void write_data_csv(std::ostream& out, const DataMatrix& x);

/// Columns: index,label
void write_labels_csv(std::ostream& out, const LabelPartition& partition);

}  // namespace pecok

#endif  // PECOK_CSV_HPP
