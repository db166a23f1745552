#include "fareymmd/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fareymmd/analysis.hpp"

namespace fareymmd {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

struct KernelSlot {
  KernelSpec spec;
  KernelEvaluator evaluator;
};

}  // namespace

std::vector<TableRow> build_table(std::int64_t n_max,
                                  const std::vector<KernelSpec>& kernels,
                                  int threads) {
  if (n_max < 2) throw std::invalid_argument("table: n_max must be >= 2");
  if (kernels.empty()) throw std::invalid_argument("table: needs at least one kernel");

  std::vector<KernelSlot> slots;
  slots.reserve(kernels.size());
  for (const KernelSpec& spec : kernels) slots.push_back({spec, KernelEvaluator(spec)});
  std::sort(slots.begin(), slots.end(), [](const KernelSlot& a, const KernelSlot& b) {
    const std::string ida = a.spec.id();
    const std::string idb = b.spec.id();
    if (ida != idb) return ida < idb;
    return a.spec.lambda < b.spec.lambda;
  });

  const std::size_t per_n = slots.size();
  std::vector<TableRow> rows(static_cast<std::size_t>(n_max - 1) * per_n);

  const auto compute_one = [&](std::int64_t n) {
    const FareySequence seq = farey_sequence(n);
    const DiscrepancyStats stats = discrepancy_stats(seq.points);
    const std::string franel = stats.franel.str();
    const std::string mikolas = stats.mikolas_x2.str();
    const double norm_factor = std::pow(static_cast<double>(n), 1.5);
    for (std::size_t s = 0; s < per_n; ++s) {
      const MmdResult r = mmd_for_sequence(slots[s].evaluator, seq);
      TableRow row;
      row.n = n;
      row.size = seq.size();
      row.kernel_id = slots[s].spec.id();
      row.has_lambda = slots[s].spec.has_lambda();
      row.lambda = slots[s].spec.lambda;
      row.mmd = r.mmd;
      row.mmd_normalized = r.mmd * norm_factor;
      row.franel = franel;
      row.l2 = stats.l2;
      row.mikolas = mikolas;
      rows[static_cast<std::size_t>(n - 2) * per_n + s] = std::move(row);
    }
  };

  int worker_count = threads > 0 ? threads
                                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  worker_count = std::min<int>(worker_count, static_cast<int>(n_max - 1));
  if (worker_count <= 1) {
    for (std::int64_t n = 2; n <= n_max; ++n) compute_one(n);
  } else {
    std::atomic<std::int64_t> next{2};
    std::vector<std::thread> workers;
    for (int w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        while (true) {
          const std::int64_t n = next.fetch_add(1);
          if (n > n_max) break;
          compute_one(n);
        }
      });
    }
    for (auto& t : workers) t.join();
  }
  return rows;
}

std::string table_to_csv(std::span<const TableRow> rows) {
  std::string out(kTableCsvHeader);
  out += '\n';
  for (const TableRow& r : rows) {
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.size);
    out += ',';
    out += r.kernel_id;
    out += ',';
    if (r.has_lambda) out += format_real(r.lambda);
    out += ',';
    out += format_real(r.mmd);
    out += ',';
    out += format_real(r.mmd_normalized);
    out += ',';
    out += r.franel;
    out += ',';
    out += format_real(r.l2);
    out += ',';
    out += r.mikolas;
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double_strict(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("table csv: bad ") + what + " value '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("table csv: bad ") + what + " value '" + text + "'");
  }
  return v;
}

}  // namespace

std::vector<PlotSeries> parse_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("table csv: empty input");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTableCsvHeader) {
    throw std::invalid_argument("table csv: unexpected header line");
  }

  std::vector<PlotSeries> series;
  const auto series_for = [&](const std::string& label) -> PlotSeries& {
    for (PlotSeries& s : series) {
      if (s.label == label) return s;
    }
    series.push_back(PlotSeries{label, {}, {}});
    return series.back();
  };

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 9) {
      throw std::invalid_argument("table csv: expected 9 fields, got " +
                                  std::to_string(f.size()));
    }
    const double n = parse_double_strict(f[0], "n");
    if (!(n >= 1.0)) throw std::invalid_argument("table csv: bad n value");
    if (f[2].empty()) throw std::invalid_argument("table csv: empty kernel id");
    const double normalized = parse_double_strict(f[5], "mmd_normalized");
    const std::string label = f[3].empty() ? f[2] : f[2] + ":" + f[3];
    PlotSeries& s = series_for(label);
    s.n.push_back(n);
    s.normalized.push_back(normalized);
  }
  if (series.empty()) {
    throw std::invalid_argument("table csv: no data rows");
  }
  return series;
}

namespace {

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#7f7f7f"};

}  // namespace

std::string render_svg(std::span<const PlotSeries> series) {
  if (series.empty()) throw std::invalid_argument("svg: no series to plot");

  double n_min = 0.0, n_max = 0.0, y_max = 0.0;
  bool first = true;
  for (const PlotSeries& s : series) {
    if (s.n.empty()) throw std::invalid_argument("svg: empty series");
    for (std::size_t i = 0; i < s.n.size(); ++i) {
      if (first) {
        n_min = n_max = s.n[i];
        first = false;
      }
      n_min = std::min(n_min, s.n[i]);
      n_max = std::max(n_max, s.n[i]);
      y_max = std::max(y_max, s.normalized[i]);
    }
  }
  if (n_max == n_min) n_max = n_min + 1.0;
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.08;

  const double width = 880.0, height = 560.0;
  const double left = 70.0, right = width - 180.0;
  const double top = 40.0, bottom = height - 60.0;
  const auto sx = [&](double n) {
    return left + (n - n_min) / (n_max - n_min) * (right - left);
  };
  const auto sy = [&](double v) { return bottom - v / y_max * (bottom - top); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(bottom) << "\" x2=\""
      << fmt2(right) << "\" y2=\"" << fmt2(bottom) << "\"/>\n";
  svg << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(top) << "\" x2=\""
      << fmt2(left) << "\" y2=\"" << fmt2(bottom) << "\"/>\n";
  svg << "</g>\n";

  const int ticks = 5;
  svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int t = 0; t <= ticks; ++t) {
    const double n = n_min + (n_max - n_min) * t / ticks;
    const double x = sx(n);
    svg << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(bottom) << "\" x2=\""
        << fmt2(x) << "\" y2=\"" << fmt2(bottom + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(bottom + 20)
        << "\" text-anchor=\"middle\">" << fmt_tick(n) << "</text>\n";
    const double v = y_max * t / ticks;
    const double y = sy(v);
    svg << "<line x1=\"" << fmt2(left - 5) << "\" y1=\"" << fmt2(y) << "\" x2=\""
        << fmt2(left) << "\" y2=\"" << fmt2(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt2(left - 8) << "\" y=\"" << fmt2(y + 4)
        << "\" text-anchor=\"end\">" << fmt_tick(v) << "</text>\n";
  }
  svg << "<text x=\"" << fmt2((left + right) / 2) << "\" y=\"" << fmt2(height - 15)
      << "\" text-anchor=\"middle\">n</text>\n";
  svg << "<text x=\"18\" y=\"" << fmt2((top + bottom) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fmt2((top + bottom) / 2) << ")\">MMD(F_n) * n^(3/2)</text>\n";
  svg << "</g>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].n.size(); ++i) {
      if (i) svg << ' ';
      svg << fmt2(sx(series[s].n[i])) << ',' << fmt2(sy(series[s].normalized[i]));
    }
    svg << "\"/>\n";
    const double ly = top + 18.0 * static_cast<double>(s);
    svg << "<line x1=\"" << fmt2(right + 12) << "\" y1=\"" << fmt2(ly) << "\" x2=\""
        << fmt2(right + 36) << "\" y2=\"" << fmt2(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << fmt2(right + 42) << "\" y=\"" << fmt2(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].label
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace fareymmd
