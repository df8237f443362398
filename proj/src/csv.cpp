#include "spreadopt/csv.hpp"

#include <charconv>
#include <cmath>

#include "spreadopt/mc.hpp"

namespace spreadopt {

std::string format_number(double value) {
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

namespace {

std::string flag_tokens(unsigned flags) {
    std::string out;
    const auto append = [&out](const char* token) {
        if (!out.empty()) out += '|';
        out += token;
    };
    if (flags & cell_zero_benchmark) append("zero_benchmark");
    if (flags & cell_analytic_error) append("analytic_error");
    return out;
}

std::string optional_field(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string();
}

void put_row(std::ostream& sink, const std::string& row, std::size_t rows_written) {
    sink << row << '\n';
    if (!sink) throw IoError("csv: sink write failure", rows_written);
}

}  // namespace

std::size_t write_grid_csv(const std::vector<GridCell>& cells, std::ostream& sink,
                           double ci_level) {
    std::size_t rows = 0;
    put_row(sink, grid_csv_header, rows);
    for (const GridCell& cell : cells) {
        const auto [ci_lo, ci_hi] = confidence_interval(
            PriceEstimate{cell.mc_mean, cell.mc_std_error, 0}, ci_level);
        std::string row;
        row += format_number(cell.maturity);
        row += ',';
        row += format_number(cell.rho);
        row += ',';
        row += format_number(cell.strike);
        row += ',';
        row += format_number(cell.mc_mean);
        row += ',';
        row += format_number(cell.mc_std_error);
        row += ',';
        row += format_number(ci_lo);
        row += ',';
        row += format_number(ci_hi);
        row += ',';
        row += format_number(cell.kirk);
        row += ',';
        row += optional_field(cell.modified_kirk);
        row += ',';
        row += optional_field(cell.err_kirk_pct);
        row += ',';
        row += optional_field(cell.err_modified_pct);
        row += ',';
        row += flag_tokens(cell.flags);
        put_row(sink, row, rows);
        ++rows;
    }
    sink.flush();
    if (!sink) throw IoError("csv: sink write failure", rows);
    return rows;
}

std::size_t write_figure_data(const std::vector<GridCell>& cells, double rho,
                              double maturity, std::ostream& sink) {
    std::size_t rows = 0;
    bool found = false;
    for (const GridCell& cell : cells) {
        if (cell.rho != rho || cell.maturity != maturity) continue;
        if (!found) {
            put_row(sink, "K,err_kirk_pct,err_modified_pct", rows);
            found = true;
        }
        std::string row;
        row += format_number(cell.strike);
        row += ',';
        row += optional_field(cell.err_kirk_pct);
        row += ',';
        row += optional_field(cell.err_modified_pct);
        put_row(sink, row, rows);
        ++rows;
    }
    if (!found)
        throw std::domain_error("figure data: no cells for rho=" + format_number(rho) +
                                " T=" + format_number(maturity));
    sink.flush();
    if (!sink) throw IoError("csv: sink write failure", rows);
    return rows;
}

}  // namespace spreadopt
