// CSV artifacts and gnuplot scripts. Numbers are written with 12 significant
// digits and a '.' decimal point regardless of locale; lines end in '\n'.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cqed/protocol.hpp"
#include "cqed/sweep.hpp"

namespace cqed {

inline constexpr int kCsvDigits = 12;
inline constexpr const char* kTrajectoryHeader = "t,stage,P1,P2,P3,P4,P5,Pp,norm2";

std::string format_number(double v);
/// Locale-independent parse; throws std::invalid_argument on malformed text.
double parse_number(const std::string& text);

/// Rows for stage A then stage B. Time is gA t on the global clock.
void write_trajectory_csv(std::ostream& out, const SimResult& result, Variant variant);

/// Header "<parameter>,P_A,F_A,P_B,F_B".
void write_sweep_csv(std::ostream& out, SweepParameter parameter,
                     const std::vector<SweepRow>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

/// Reads a header line plus rows; every row must have the header's width.
CsvTable read_csv(std::istream& in);

/// Two-panel population plot (stage A, stage B) of a trajectory CSV.
void write_trajectory_plot(std::ostream& out, const std::string& csv_name, Variant variant);
/// Success probability and fidelity panels of a sweep CSV.
void write_sweep_plot(std::ostream& out, const std::string& csv_name, SweepParameter parameter);

}  // namespace cqed
