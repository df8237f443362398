#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spreadopt/grid.hpp"

namespace spreadopt {

class IoError : public std::runtime_error {
public:
    IoError(const std::string& what, std::size_t rows_written)
        : std::runtime_error(what), rows_written_(rows_written) {}
    std::size_t rows_written() const { return rows_written_; }

private:
    std::size_t rows_written_;
};

/// Shortest-of-9-significant-digits rendering used for every CSV number.
/// Locale independent; round-trips exactly through parsing at this precision.
std::string format_number(double value);

inline constexpr const char* grid_csv_header =
    "T,rho,K,mc_mean,mc_std_error,ci_lower,ci_upper,kirk,modified_kirk,"
    "err_kirk_pct,err_modified_pct,flags";

/// Header plus one row per cell in grid order, LF line endings. Undefined
/// values render as empty fields with the reason in the flags column.
/// Returns the number of data rows; throws IoError on sink failure.
std::size_t write_grid_csv(const std::vector<GridCell>& cells, std::ostream& sink,
                           double ci_level = 0.95);

/// Plot data for one (rho, maturity) slice: K against both percentage-error
/// series. Throws std::domain_error if the slice is absent from `cells`.
std::size_t write_figure_data(const std::vector<GridCell>& cells, double rho,
                              double maturity, std::ostream& sink);

}  // namespace spreadopt
