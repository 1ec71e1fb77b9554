#include "chshmd/sweep.hpp"

#include "chshmd/bounds.hpp"
#include "chshmd/info.hpp"
#include "chshmd/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace chshmd {

std::size_t SweepAxis::count() const {
  if (!(step > 0.0) || max < min) return 0;
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

double SweepAxis::at(std::size_t k) const { return min + static_cast<double>(k) * step; }

std::size_t SweepGrid::expected_rows() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.count();
  return n;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  // Avoid "-0" in otherwise identical output.
  if (std::string(buf) == "-0") return "0";
  return buf;
}

std::string cell(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

using RowFn = std::function<std::vector<std::optional<double>>(const std::vector<double>&)>;

SweepGrid run_grid(std::vector<SweepAxis> axes, std::vector<std::string> fields, const RowFn& fn, unsigned jobs) {
  SweepGrid grid{std::move(axes), std::move(fields), {}};
  const std::size_t n = grid.expected_rows();
  grid.rows.resize(n);
  parallel_for(n, jobs, [&](std::size_t index) {
    // Row-major: the last axis varies fastest.
    std::vector<double> coords(grid.axes.size());
    std::size_t rest = index;
    for (std::size_t a = grid.axes.size(); a-- > 0;) {
      const std::size_t c = grid.axes[a].count();
      coords[a] = grid.axes[a].at(rest % c);
      rest /= c;
    }
    auto values = fn(coords);
    if (values.size() != grid.fields.size()) throw std::logic_error("sweep row has the wrong number of fields");
    grid.rows[index] = {std::move(coords), std::move(values)};
  });
  return grid;
}

bool in_lower_region(double m1, double m2) { return m2 <= m1 + 1e-12 && m1 + 2.0 * m2 <= 2.0 + 1e-12; }

const SweepAxis square_m1{"M1", 0.0, 2.0, 0.01};
const SweepAxis square_m2{"M2", 0.0, 2.0, 0.01};

}  // namespace

void write_csv(const SweepGrid& grid, std::ostream& out) {
  std::string header;
  for (const auto& a : grid.axes) header += (header.empty() ? "" : ",") + a.name;
  for (const auto& f : grid.fields) header += (header.empty() ? "" : ",") + f;
  out << header << "\n";
  for (const auto& row : grid.rows) {
    std::string line;
    for (double c : row.coords) line += (line.empty() ? "" : ",") + num(c);
    for (const auto& v : row.values) line += (line.empty() ? "" : ",") + cell(v);
    out << line << "\n";
  }
}

void write_json(const SweepGrid& grid, std::ostream& out) {
  // Hand-written so numbers keep the same %.10g text as the CSV.
  out << "{\n  \"axes\": [";
  for (std::size_t i = 0; i < grid.axes.size(); ++i) {
    const auto& a = grid.axes[i];
    out << (i ? ", " : "") << "{\"name\": \"" << a.name << "\", \"min\": " << num(a.min) << ", \"max\": " << num(a.max)
        << ", \"step\": " << num(a.step) << "}";
  }
  out << "],\n  \"fields\": [";
  for (std::size_t i = 0; i < grid.fields.size(); ++i) out << (i ? ", " : "") << "\"" << grid.fields[i] << "\"";
  out << "],\n  \"rows\": [\n";
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    const auto& row = grid.rows[r];
    out << "    [";
    for (std::size_t i = 0; i < row.coords.size(); ++i) out << (i ? ", " : "") << num(row.coords[i]);
    for (const auto& v : row.values) out << ", " << (v ? num(*v) : "null");
    out << "]" << (r + 1 < grid.rows.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
}

void write_grid(const SweepGrid& grid, SweepFormat format, std::ostream& out) {
  if (format == SweepFormat::csv) {
    write_csv(grid, out);
  } else {
    write_json(grid, out);
  }
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig1", "fig2", "fig3", "fig4", "fig7", "fig8", "fig8-slice"};
  return ids;
}

SweepGrid figure_sweep(const std::string& id, unsigned jobs) {
  using Values = std::vector<std::optional<double>>;
  const double vt = kTsirelsonViolation;

  if (id == "fig1") {
    return run_grid({square_m1, square_m2}, {"V_G"}, [](const auto& c) { return Values{v_g(c[0], c[1])}; }, jobs);
  }
  if (id == "fig2") {
    return run_grid(
        {square_m1, square_m2}, {"I_G"},
        [](const auto& c) {
          if (!in_lower_region(c[0], c[1])) return Values{std::nullopt};
          return Values{i_g(c[0], c[1])};
        },
        jobs);
  }
  if (id == "fig3") {
    return run_grid(
        {{"V", 0.0, 2.0, 0.005}}, {"I_G_min", "I_H", "I_B"},
        [](const auto& c) { return Values{i_g_min(c[0]).I, i_hall(c[0]), i_banik(c[0])}; }, jobs);
  }
  if (id == "fig4") {
    return run_grid({{"z", 0.0, vt / 3.0, 0.002}}, {"I_4"}, [](const auto& c) { return Values{i_four(c[0])}; }, jobs);
  }
  if (id == "fig7") {
    return run_grid(
        {square_m1, square_m2}, {"I_I"},
        [](const auto& c) {
          if (!in_lower_region(c[0], c[1])) return Values{std::nullopt};
          return Values{i_interp(c[0], c[1])};
        },
        jobs);
  }
  if (id == "fig8") {
    return run_grid(
        {{"V", 0.0, 2.0, 0.01}}, {"I_I_min", "argmin_M1", "argmin_M2", "I_H", "I_B"},
        [](const auto& c) {
          const InfoCurvePoint p = i_interp_min(c[0]);
          const double m2 = p.argmin_M2.value_or(0.0);
          return Values{p.I, c[0] - 2.0 * m2, m2, i_hall(c[0]), i_banik(c[0])};
        },
        jobs);
  }
  if (id == "fig8-slice") {
    return run_grid(
        {{"M2", 0.0, vt / 3.0, 0.002}}, {"M1", "I_I"},
        [vt](const auto& c) { return Values{vt - 2.0 * c[0], i_interp_v(vt, c[0])}; }, jobs);
  }
  std::string known;
  for (const auto& k : figure_ids()) known += (known.empty() ? "" : ", ") + k;
  throw std::invalid_argument("unknown figure id '" + id + "' (known: " + known + ")");
}

}  // namespace chshmd
