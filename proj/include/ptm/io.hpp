#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptm/complex_matrix.hpp"
#include "ptm/sweep.hpp"

namespace ptm {

/// Key/value pairs echoed into every output file header.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Matrix file schema: {"n": <int>, "entries": [[[re, im], ...], ...]},
/// row-major. Ragged or miscounted rows raise NotSquare; malformed JSON or
/// non-finite values raise ParseError.
ComplexMatrix parse_matrix_json(const std::string& text);
ComplexMatrix parse_matrix_file(const std::string& path);

std::string matrix_to_json(const ComplexMatrix& m);
void write_matrix_file(const ComplexMatrix& m, const std::string& path);

/// 17 significant digits; round-trips doubles exactly.
std::string format_double(double v);

/// Pre-stringified tabular output.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

Table sweep_table(const std::vector<SweepRow>& rows);
Table scan_table(const std::vector<ScanRow>& rows);
Table mus_line_table(const std::vector<MusLine>& lines);

/// CSV with `# key = value` metadata lines before the header row.
std::string to_csv(const Table& table, const Metadata& meta);

/// {"metadata": {...}, "rows": [{column: value, ...}]}. Numeric cells become
/// JSON numbers; inf and nan are emitted as strings.
std::string to_json(const Table& table, const Metadata& meta);

/// Write via a temp file in the same directory plus an atomic rename.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace ptm
