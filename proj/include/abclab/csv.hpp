#ifndef ABCLAB_CSV_HPP
#define ABCLAB_CSV_HPP

#include <optional>
#include <string>
#include <vector>

#include "abclab/abc.hpp"

namespace abclab {

// Comma-separated, '.' decimal point, LF line endings, one header row.
// Numbers are written with full round-trip precision so identical runs give
// byte-identical files.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;

    std::size_t column(const std::string& name) const;
    std::vector<double> column_values(const std::string& name) const;
};

std::string format_double(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::optional<double>>>& rows);
CsvTable read_csv(const std::string& path);

// Columnar reference-table format:
// model_index, param_1..param_k, summary_1..summary_p, distance
// with k the largest parameter dimension (shorter parameters leave blanks)
// and distances computed against `observed` under `distance`.
void save_reference_table(const std::string& path, const ReferenceTable& table,
                          const SummaryVector& observed, const DistanceSpec& distance);
ReferenceTable load_reference_table(const std::string& path);

}  // namespace abclab

#endif
