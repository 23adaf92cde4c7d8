#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "bgx/poisson.hpp"

namespace bgx {

// {params, residuals{boundary, pde, two_path}, isometry{measured, closed_form},
//  dtn_table[{x_n, rel_err}]} plus the window and membership flags.
nlohmann::json to_json(const Report& r);
nlohmann::json to_json(const ModelParams& m);

// Plot-ready table. Numbers are written with 17 significant digits.
struct Table {
    using Cell = std::variant<double, long long, std::string>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    std::string to_csv() const;
    nlohmann::json to_json() const;  // array of objects keyed by column
};

std::string format_double(double v);

// Columns {x_n, rel_err_vs_Lsp, extrapolated}; `extrapolated` is the error of the
// Richardson value and repeats on every row.
Table dtn_table(const DtNResult& r);

}  // namespace bgx
