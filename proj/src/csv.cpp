#include "cqed/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cqed {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kCsvDigits);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, ptr);
}

double parse_number(const std::string& text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("parse_number: '" + text + "' is not a number");
  }
  return v;
}

namespace {

void write_rows(std::ostream& out, const Trajectory& traj, Variant variant, Stage stage) {
  const auto selectors = figure_selectors(variant, stage);
  const PopulationTable table = populations(traj, selectors);
  // The last selector is the photon probability; the rest fill P1..P5.
  const std::size_t state_columns = selectors.size() - 1;
  const char* name = stage == Stage::A ? "A" : "B";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_number(traj.times[i]) << ',' << name;
    for (std::size_t k = 0; k < 5; ++k) {
      out << ',' << format_number(k < state_columns ? table.series[k][i] : 0.0);
    }
    out << ',' << format_number(table.series[state_columns][i]) << ','
        << format_number(traj.norms[i]) << '\n';
  }
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const SimResult& result, Variant variant) {
  out << kTrajectoryHeader << '\n';
  write_rows(out, result.stage_a_trajectory, variant, Stage::A);
  write_rows(out, result.stage_b_trajectory, variant, Stage::B);
}

void write_sweep_csv(std::ostream& out, SweepParameter parameter,
                     const std::vector<SweepRow>& rows) {
  out << to_string(parameter) << ",P_A,F_A,P_B,F_B\n";
  for (const auto& r : rows) {
    out << format_number(r.value) << ',' << format_number(r.P_A) << ','
        << format_number(r.F_A) << ',' << format_number(r.P_B) << ','
        << format_number(r.F_B) << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("CsvTable: no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  return parse_number(rows.at(row).at(column(name)));
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("read_csv: empty input");
  table.header = split(line);
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw std::invalid_argument("read_csv: line " + std::to_string(number) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

void write_trajectory_plot(std::ostream& out, const std::string& csv_name, Variant variant) {
  const bool qutrit = variant == Variant::Qutrit;
  out << "# Populations vs gA t; run with: gnuplot <this file>\n"
      << "set datafile separator ','\n"
      << "set terminal svg size 900,700\n"
      << "set output '" << csv_name << ".svg'\n"
      << "set multiplot layout 2,1\n"
      << "set xlabel 'g t'\n"
      << "set ylabel 'population'\n"
      << "set yrange [-0.02:1.02]\n"
      << "set key outside right\n"
      << "set title 'stage A'\n"
      << "plot '" << csv_name << "' using (strcol(2) eq 'A' ? $1 : NaN):3 with lines title 'P1', \\\n"
      << "     '' using (strcol(2) eq 'A' ? $1 : NaN):4 with lines title 'P2', \\\n"
      << "     '' using (strcol(2) eq 'A' ? $1 : NaN):5 with lines title 'P3', \\\n"
      << "     '' using (strcol(2) eq 'A' ? $1 : NaN):8 with lines dashtype 2 title 'Pp'\n"
      << "set title 'stage B'\n"
      << "plot '" << csv_name << "' using (strcol(2) eq 'B' ? $1 : NaN):3 with lines title \"P1'\", \\\n"
      << "     '' using (strcol(2) eq 'B' ? $1 : NaN):4 with lines title \"P2'\", \\\n"
      << "     '' using (strcol(2) eq 'B' ? $1 : NaN):5 with lines title \"P3'\", \\\n"
      << "     '' using (strcol(2) eq 'B' ? $1 : NaN):6 with lines title \"P4'\", \\\n";
  if (qutrit) {
    out << "     '' using (strcol(2) eq 'B' ? $1 : NaN):7 with lines title \"P5'\", \\\n";
  }
  out << "     '' using (strcol(2) eq 'B' ? $1 : NaN):8 with lines dashtype 2 title \"Pp'\"\n"
      << "unset multiplot\n";
}

void write_sweep_plot(std::ostream& out, const std::string& csv_name, SweepParameter parameter) {
  const std::string_view x = to_string(parameter);
  out << "# Success probability and fidelity vs " << x << "; run with: gnuplot <this file>\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set terminal svg size 900,700\n"
      << "set output '" << csv_name << ".svg'\n"
      << "set multiplot layout 2,1\n"
      << "set xlabel '" << x << " / g'\n"
      << "set ylabel 'success probability'\n"
      << "plot '" << csv_name << "' using 1:2 with linespoints, '' using 1:4 with linespoints\n"
      << "set ylabel 'fidelity'\n"
      << "plot '" << csv_name << "' using 1:3 with linespoints, '' using 1:5 with linespoints\n"
      << "unset multiplot\n";
}

}  // namespace cqed
