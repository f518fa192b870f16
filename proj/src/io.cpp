#include "ptm/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ptm/errors.hpp"
#include "ptm/models.hpp"
#include "ptm/spectral.hpp"

namespace ptm {

namespace {

using json = nlohmann::ordered_json;

double number_at(const json& cell, const char* what) {
    if (!cell.is_number())
        throw ParseError(std::string("expected a number for ") + what);
    const double v = cell.get<double>();
    if (!std::isfinite(v))
        throw ParseError(std::string("non-finite value for ") + what);
    return v;
}

} // namespace

ComplexMatrix parse_matrix_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("matrix file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries"))
        throw ParseError("matrix file must be an object with \"n\" and \"entries\"");
    if (!doc["n"].is_number_integer() || doc["n"].get<long>() < 1)
        throw ParseError("\"n\" must be a positive integer");

    const std::size_t n = doc["n"].get<std::size_t>();
    const json& entries = doc["entries"];
    if (!entries.is_array() || entries.size() != n)
        throw NotSquare("\"entries\" must hold exactly n rows");

    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = entries[i];
        if (!row.is_array() || row.size() != n)
            throw NotSquare("matrix rows must all have length n");
        for (std::size_t j = 0; j < n; ++j) {
            const json& cell = row[j];
            if (!cell.is_array() || cell.size() != 2)
                throw ParseError("matrix entries must be [re, im] pairs");
            m(i, j) = cplx(number_at(cell[0], "a real part"), number_at(cell[1], "an imaginary part"));
        }
    }
    return m;
}

ComplexMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open matrix file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_matrix_json(buf.str());
    } catch (ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (NotSquare& e) {
        throw NotSquare(path + ": " + e.what());
    }
}

std::string matrix_to_json(const ComplexMatrix& m) {
    json doc;
    doc["n"] = m.size();
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    doc["entries"] = std::move(rows);
    return doc.dump();
}

void write_matrix_file(const ComplexMatrix& m, const std::string& path) {
    atomic_write_file(path, matrix_to_json(m) + "\n");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
    Table t;
    t.columns = {"p", "theta", "eta", "varA", "varB", "lhs", "rhs", "lambdaG", "mus",
                 "state_class"};
    t.rows.reserve(rows.size());
    for (const SweepRow& r : rows)
        t.rows.push_back({format_double(r.p), format_double(r.theta), format_double(r.eta),
                          format_double(r.var_a), format_double(r.var_b), format_double(r.lhs),
                          format_double(r.rhs), format_double(r.lambda_g),
                          r.mus ? "1" : "0", to_string(r.state_class)});
    return t;
}

Table scan_table(const std::vector<ScanRow>& rows) {
    Table t;
    t.columns = {"gamma", "kappa", "phase"};
    t.rows.reserve(rows.size());
    for (const ScanRow& r : rows)
        t.rows.push_back({format_double(r.gamma), format_double(r.kappa), to_string(r.phase)});
    return t;
}

Table mus_line_table(const std::vector<MusLine>& lines) {
    Table t;
    t.columns = {"axis", "value", "state_class", "rows"};
    t.rows.reserve(lines.size());
    for (const MusLine& l : lines)
        t.rows.push_back({l.axis == LineAxis::p_axis ? "p" : "theta", format_double(l.value),
                          to_string(l.state_class), std::to_string(l.rows)});
    return t;
}

std::string to_csv(const Table& table, const Metadata& meta) {
    std::string out;
    for (const auto& [key, value] : meta)
        out += "# " + key + " = " + value + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table, const Metadata& meta) {
    json doc;
    json m = json::object();
    for (const auto& [key, value] : meta) m[key] = value;
    doc["metadata"] = std::move(m);

    json rows = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            const std::string& cell = row[c];
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() + cell.size() && !cell.empty() && std::isfinite(v))
                obj[table.columns[c]] = v;
            else
                obj[table.columns[c]] = cell;
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.flush()) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot replace " + path);
    }
}

} // namespace ptm
