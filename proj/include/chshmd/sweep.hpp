#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace chshmd {

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  /// Points min + k*step for k = 0.. while not past max (1e-9 slack).
  std::size_t count() const;
  double at(std::size_t k) const;
};

/// One row per grid point; an empty optional is written as NA.
struct SweepGrid {
  std::vector<SweepAxis> axes;
  std::vector<std::string> fields;
  struct Row {
    std::vector<double> coords;
    std::vector<std::optional<double>> values;
  };
  std::vector<Row> rows;

  std::size_t expected_rows() const;
};

enum class SweepFormat { csv, json };

/// Numbers use "%.10g" so output is byte-stable.
void write_csv(const SweepGrid& grid, std::ostream& out);
void write_json(const SweepGrid& grid, std::ostream& out);
void write_grid(const SweepGrid& grid, SweepFormat format, std::ostream& out);

/// fig1, fig2, fig3, fig4, fig7, fig8, fig8-slice.
const std::vector<std::string>& figure_ids();

/// Throws std::invalid_argument for an unknown id.
SweepGrid figure_sweep(const std::string& id, unsigned jobs = 0);

}  // namespace chshmd
