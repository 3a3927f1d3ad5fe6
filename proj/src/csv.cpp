#include "morlax/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "morlax/errors.hpp"

namespace morlax {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_front_csv(const std::string& path, const EvalTable& table) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("cannot write front CSV: " + path);
    for (int k = 1; k <= table.m; ++k) out << "w_" << k << ',';
    for (int k = 1; k <= table.m; ++k)
        out << "J_" << k << (k == table.m ? "" : ",");
    out << '\n';
    for (const EvalRow& row : table.rows) {
        for (int k = 0; k < table.m; ++k)
            out << format_g17(row.w.weights[static_cast<std::size_t>(k)]) << ',';
        for (int k = 0; k < table.m; ++k)
            out << format_g17(row.mean_return[static_cast<std::size_t>(k)])
                << (k + 1 == table.m ? "" : ",");
        out << '\n';
    }
    out.close();
    if (!out) throw ConfigError("failed writing front CSV: " + path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& cell, int line_no) {
    const char* s = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    while (end != nullptr && (*end == ' ' || *end == '\t')) ++end;
    if (end == s || end == nullptr || *end != '\0')
        throw ConfigError("malformed CSV row at line " +
                          std::to_string(line_no) + ": bad number '" + cell +
                          "'");
    return v;
}

}  // namespace

FrontCsv read_front_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read front CSV: " + path);

    std::string line;
    int line_no = 0;
    // header
    if (!std::getline(in, line))
        throw ConfigError("malformed CSV header at line 1: empty file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> head = split_csv_line(line);

    int w_cols = 0;
    while (w_cols < static_cast<int>(head.size()) &&
           head[static_cast<std::size_t>(w_cols)] ==
               "w_" + std::to_string(w_cols + 1))
        ++w_cols;
    const int j_cols = static_cast<int>(head.size()) - w_cols;
    if (j_cols < 1)
        throw ConfigError("malformed CSV header at line 1: no J_* columns");
    for (int k = 0; k < j_cols; ++k)
        if (head[static_cast<std::size_t>(w_cols + k)] !=
            "J_" + std::to_string(k + 1))
            throw ConfigError(
                "malformed CSV header at line 1: expected J_" +
                std::to_string(k + 1) + ", got '" +
                head[static_cast<std::size_t>(w_cols + k)] + "'");
    if (w_cols != 0 && w_cols != j_cols)
        throw ConfigError("malformed CSV header at line 1: " +
                          std::to_string(w_cols) + " weight columns vs " +
                          std::to_string(j_cols) + " objective columns");

    FrontCsv out;
    out.m = j_cols;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (static_cast<int>(cells.size()) != w_cols + j_cols)
            throw ConfigError("malformed CSV row at line " +
                              std::to_string(line_no) + ": expected " +
                              std::to_string(w_cols + j_cols) +
                              " columns, got " + std::to_string(cells.size()));
        if (w_cols > 0) {
            std::vector<double> w(static_cast<std::size_t>(w_cols));
            for (int k = 0; k < w_cols; ++k)
                w[static_cast<std::size_t>(k)] =
                    parse_number(cells[static_cast<std::size_t>(k)], line_no);
            out.weights.push_back(TradeoffVector{std::move(w)});
        }
        ObjectiveVector j(static_cast<std::size_t>(j_cols));
        for (int k = 0; k < j_cols; ++k)
            j[static_cast<std::size_t>(k)] = parse_number(
                cells[static_cast<std::size_t>(w_cols + k)], line_no);
        out.points.push_back(std::move(j));
    }
    return out;
}

}  // namespace morlax
