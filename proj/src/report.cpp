#include "bgx/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace bgx {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json to_json(const ModelParams& m) { return {{"n", m.n}, {"p", m.p}, {"a", m.a}}; }

namespace {

// JSON has no NaN or infinity; those become null
nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json to_json(const Report& r) {
    nlohmann::json j;
    j["params"] = to_json(r.params);
    j["in_window"] = r.in_window;
    j["residuals"] = {{"boundary", num(r.boundary)}, {"pde", num(r.pde)}, {"two_path", num(r.two_path)}};
    j["solution_norm_sq"] = num(r.solution_norm_sq);
    j["finite_norm"] = r.finite_norm;
    j["isometry"] = {{"measured", num(r.isometry_measured)}, {"closed_form", num(r.isometry_closed)}};
    j["dtn_table"] = nlohmann::json::array();
    for (const auto& [xn, e] : r.dtn_table) j["dtn_table"].push_back({{"x_n", xn}, {"rel_err", num(e)}});
    j["passed"] = r.passed();
    return j;
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::invalid_argument("Table: row width mismatch");
    rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Table::Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_double(*d);
    if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

nlohmann::json cell_json(const Table::Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return num(*d);
    if (const long long* i = std::get_if<long long>(&c)) return *i;
    return std::get<std::string>(c);
}

}  // namespace

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += '\n';
    }
    return out;
}

nlohmann::json Table::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json o;
        for (std::size_t i = 0; i < row.size(); ++i) o[columns[i]] = cell_json(row[i]);
        arr.push_back(o);
    }
    return arr;
}

Table dtn_table(const DtNResult& r) {
    Table t;
    t.columns = {"x_n", "rel_err_vs_Lsp", "extrapolated"};
    for (const auto& row : r.rows) t.add({row.xn, row.rel_err, r.extrapolated_err});
    return t;
}

}  // namespace bgx
