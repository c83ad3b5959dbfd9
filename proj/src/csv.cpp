#include "abclab/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace abclab {

std::size_t CsvTable::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::invalid_argument("csv: no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> CsvTable::column_values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows)
        if (row[c]) out.push_back(*row[c]);
    return out;
}

std::string format_double(double v) {
    // Shortest representation that round-trips exactly.
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::optional<double>>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            if (row[c]) out << format_double(*row[c]);
        }
        out << "\n";
    }
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        std::vector<std::optional<double>> row;
        row.reserve(cells.size());
        for (const auto& c : cells)
            row.push_back(c.empty() ? std::nullopt
                                    : std::optional<double>(std::strtod(c.c_str(), nullptr)));
        row.resize(table.header.size());
        table.rows.push_back(std::move(row));
    }
    return table;
}

void save_reference_table(const std::string& path, const ReferenceTable& table,
                          const SummaryVector& observed, const DistanceSpec& distance) {
    std::size_t k = 0;
    for (const auto& row : table.rows) k = std::max(k, row.parameter.size());
    const std::size_t p = table.summary_names.size();
    std::vector<std::string> header = {"model_index"};
    for (std::size_t i = 1; i <= k; ++i) header.push_back("param_" + std::to_string(i));
    for (std::size_t i = 1; i <= p; ++i) header.push_back("summary_" + std::to_string(i));
    header.push_back("distance");
    std::vector<std::vector<std::optional<double>>> rows;
    rows.reserve(table.rows.size());
    for (const auto& r : table.rows) {
        std::vector<std::optional<double>> row;
        row.reserve(header.size());
        row.emplace_back(static_cast<double>(r.model_index));
        for (std::size_t i = 0; i < k; ++i)
            row.push_back(i < r.parameter.size()
                              ? std::optional<double>(r.parameter[i])
                              : std::nullopt);
        for (double s : r.summary) row.emplace_back(s);
        row.emplace_back(distance(r.summary, observed));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

ReferenceTable load_reference_table(const std::string& path) {
    const CsvTable csv = read_csv(path);
    ReferenceTable table;
    std::size_t k = 0, p = 0;
    for (const auto& name : csv.header) {
        if (name.rfind("param_", 0) == 0) ++k;
        if (name.rfind("summary_", 0) == 0) ++p;
    }
    for (std::size_t i = 1; i <= p; ++i)
        table.summary_names.push_back("summary_" + std::to_string(i));
    table.rows.reserve(csv.rows.size());
    int max_model = -1;
    for (const auto& row : csv.rows) {
        TableRow r;
        r.model_index = static_cast<int>(*row[0]);
        max_model = std::max(max_model, r.model_index);
        for (std::size_t i = 0; i < k; ++i)
            if (row[1 + i]) r.parameter.push_back(*row[1 + i]);
        for (std::size_t i = 0; i < p; ++i) r.summary.push_back(*row[1 + k + i]);
        table.rows.push_back(std::move(r));
    }
    table.model_count = static_cast<std::size_t>(max_model + 1);
    return table;
}

}  // namespace abclab
