#pragma once

// CSV table assembly and the minimal SVG renderer behind the CLI.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fareymmd/kernels.hpp"

namespace fareymmd {

inline constexpr std::string_view kTableCsvHeader =
    "n,N,kernel,lambda,mmd,mmd_normalized,franel_sum,l2_discretized,mikolas_error";

struct TableRow {
  std::int64_t n{0};
  std::uint64_t size{0};
  std::string kernel_id;
  bool has_lambda{false};
  double lambda{0.0};
  double mmd{0.0};
  double mmd_normalized{0.0};
  std::string franel;   // exact "p/q"
  double l2{0.0};
  std::string mikolas;  // exact "p/q"
};

// Rows for n = 2..n_max, sorted by (n, kernel id, lambda). Farey generation
// and per-n statistics may fan out across threads; output is deterministic
// for any thread count.
std::vector<TableRow> build_table(std::int64_t n_max,
                                  const std::vector<KernelSpec>& kernels,
                                  int threads = 1);

// %.17g for doubles (guarantees round-trip), exact "p/q" for the rationals.
std::string format_real(double v);
std::string table_to_csv(std::span<const TableRow> rows);

// One plot series per (kernel, lambda) pair, in row order.
struct PlotSeries {
  std::string label;
  std::vector<double> n;
  std::vector<double> normalized;
};

// Parses CSV in the exact cmd_table format; throws std::invalid_argument on a
// wrong header, malformed rows, or an empty body.
std::vector<PlotSeries> parse_table_csv(std::istream& in);

// Deterministic standalone SVG: one polyline per series on linear axes.
std::string render_svg(std::span<const PlotSeries> series);

}  // namespace fareymmd
