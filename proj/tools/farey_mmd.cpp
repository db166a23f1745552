// Command-line front end: exact Farey listings, MMD evaluations, diagnostic
// tables (CSV), rate fits, and SVG plots of normalized MMD curves.
//
// Exit codes: 0 success, 2 usage/input error, 3 numeric overflow.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fareymmd/analysis.hpp"
#include "fareymmd/farey.hpp"
#include "fareymmd/kernels.hpp"
#include "fareymmd/mmd.hpp"
#include "fareymmd/report.hpp"

namespace {

using namespace fareymmd;

struct Options {
  std::int64_t n = 0;
  std::int64_t n_max = 0;
  std::int64_t n_lo = 0;
  std::vector<std::string> kernels;
  std::string output;
  std::string format = "text";
  std::string threads = "1";
  std::string method = "auto";
  std::string input;
  bool selftest = false;
};

int parse_threads(const std::string& text) {
  if (text == "auto") return 0;
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("--threads expects a positive integer or 'auto'");
  }
  if (used != text.size() || v < 1) {
    throw std::invalid_argument("--threads expects a positive integer or 'auto'");
  }
  return v;
}

std::vector<KernelSpec> parse_kernels(const std::vector<std::string>& ids) {
  if (ids.empty()) throw std::invalid_argument("at least one --kernel is required");
  std::vector<KernelSpec> specs;
  specs.reserve(ids.size());
  for (const std::string& id : ids) specs.push_back(KernelSpec::parse(id));
  return specs;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << payload;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

int cmd_farey(const Options& opt) {
  const FareySequence seq = farey_sequence(opt.n);
  std::string payload;
  if (opt.format == "csv") {
    payload = "index,num,den\n";
    for (std::size_t i = 0; i < seq.points.size(); ++i) {
      payload += std::to_string(i + 1) + "," + std::to_string(seq.points[i].num) +
                 "," + std::to_string(seq.points[i].den) + "\n";
    }
  } else if (opt.format == "text") {
    for (std::size_t i = 0; i < seq.points.size(); ++i) {
      if (i) payload += ',';
      payload += seq.points[i].str();
    }
    payload += '\n';
  } else {
    throw std::invalid_argument("farey supports --format text|csv");
  }
  write_output(opt.output, payload);
  return 0;
}

MmdResult run_method(const std::string& method, const KernelEvaluator& kernel,
                     const FareySequence& seq) {
  if (method == "auto") return mmd_for_sequence(kernel, seq);
  if (method == "naive") return mmd_squared_naive(kernel, to_real_points(seq), seq.index);
  if (method == "fast") return mmd_squared_fast(kernel, to_real_points(seq), seq.index);
  if (method == "lemma1") {
    if (kernel.spec().family != KernelFamily::BrownianShift) {
      throw std::invalid_argument("--method lemma1 applies to the brownian kernel only");
    }
    return mmd_lemma1(seq.points, seq.index);
  }
  throw std::invalid_argument("--method expects auto|naive|fast|lemma1");
}

int cmd_mmd(const Options& opt) {
  const std::vector<KernelSpec> specs = parse_kernels(opt.kernels);
  const FareySequence seq = farey_sequence(opt.n);
  std::string payload;
  const bool csv = opt.format == "csv";
  if (!csv && opt.format != "text") {
    throw std::invalid_argument("mmd supports --format text|csv");
  }
  if (csv) payload = "n,N,kernel,lambda,method,mmd_squared,mmd\n";
  for (const KernelSpec& spec : specs) {
    const KernelEvaluator kernel(spec);
    const MmdResult r = run_method(opt.method, kernel, seq);
    const std::string lambda = spec.has_lambda() ? format_real(spec.lambda) : "";
    if (csv) {
      payload += std::to_string(seq.index) + "," + std::to_string(seq.size()) + "," +
                 spec.id() + "," + lambda + "," + to_string(r.method) + "," +
                 format_real(r.mmd_squared) + "," + format_real(r.mmd) + "\n";
    } else {
      payload += "kernel=" + spec.id() + " lambda=" + lambda +
                 " n=" + std::to_string(seq.index) + " N=" + std::to_string(seq.size()) +
                 " method=" + to_string(r.method) +
                 " mmd_squared=" + format_real(r.mmd_squared) +
                 " mmd=" + format_real(r.mmd) + "\n";
    }
  }
  write_output(opt.output, payload);
  return 0;
}

int cmd_table(const Options& opt) {
  if (opt.format != "csv" && opt.format != "text") {
    throw std::invalid_argument("table emits CSV; use the plot command for SVG");
  }
  const std::vector<KernelSpec> specs = parse_kernels(opt.kernels);
  const auto rows = build_table(opt.n_max, specs, parse_threads(opt.threads));
  write_output(opt.output, table_to_csv(rows));
  return 0;
}

int cmd_rates(const Options& opt) {
  std::string payload;
  if (opt.selftest) {
    // Planted power law n^{-3/2}: the fit must recover the exponent exactly.
    std::vector<CurvePoint> curve;
    for (std::int64_t n = 2; n <= 100; ++n) {
      CurvePoint p;
      p.n = n;
      p.size = 0;
      p.value = std::pow(static_cast<double>(n), -1.5);
      p.normalized = p.value * std::pow(static_cast<double>(n), 1.5);
      curve.push_back(p);
    }
    const RateFit fit = rate_fit(curve, 2, 100, "selftest");
    char line[160];
    std::snprintf(line, sizeof(line), "selftest planted n^-3/2: slope %.6f residual %.3e\n",
                  fit.slope, fit.residual_l2);
    payload = line;
    write_output(opt.output, payload);
    return 0;
  }

  const std::vector<KernelSpec> specs = parse_kernels(opt.kernels);
  const std::int64_t n_lo =
      opt.n_lo > 0 ? opt.n_lo : std::max<std::int64_t>(50, opt.n_max / 5);
  const int threads = parse_threads(opt.threads);
  for (const KernelSpec& spec : specs) {
    const auto curve = normalized_curve(spec, opt.n_max, threads);
    const RateFit fit = rate_fit(curve, n_lo, opt.n_max, "mmd:" + spec.id());
    payload += "kernel=" + spec.id() +
               " lambda=" + (spec.has_lambda() ? format_real(spec.lambda) : "") +
               " window=[" + std::to_string(fit.n_lo) + "," + std::to_string(fit.n_hi) +
               "]" + " slope=" + format_real(fit.slope) +
               " intercept=" + format_real(fit.intercept) +
               " residual_l2=" + format_real(fit.residual_l2) + " (diagnostic)\n";
  }
  write_output(opt.output, payload);
  return 0;
}

int cmd_plot(const Options& opt) {
  std::vector<PlotSeries> series;
  if (opt.input.empty()) {
    series = parse_table_csv(std::cin);
  } else {
    std::ifstream in(opt.input, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + opt.input);
    series = parse_table_csv(in);
  }
  write_output(opt.output, render_svg(series));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Farey sequence MMD diagnostics"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* farey = app.add_subcommand("farey", "List the Farey sequence F_n exactly");
  farey->add_option("--n", opt.n, "Sequence index n >= 1")->required();
  farey->add_option("--format", opt.format, "text|csv (default text)");
  farey->add_option("--output", opt.output, "Output path (default stdout)");

  CLI::App* mmd = app.add_subcommand("mmd", "MMD of F_n for one or more kernels");
  mmd->add_option("--n", opt.n, "Sequence index n >= 1")->required();
  mmd->add_option("--kernel", opt.kernels,
                  "Kernel id[:lambda]; repeatable (brownian, matern12, matern32, "
                  "matern52, ibm<m>, expxy)");
  mmd->add_option("--method", opt.method, "auto|naive|fast|lemma1 (default auto)");
  mmd->add_option("--format", opt.format, "text|csv (default text)");
  mmd->add_option("--output", opt.output, "Output path (default stdout)");

  CLI::App* table = app.add_subcommand(
      "table", "CSV of MMD and exact discrepancy statistics for n = 2..n-max");
  table->add_option("--n-max", opt.n_max, "Largest sequence index")->required();
  table->add_option("--kernel", opt.kernels, "Kernel id[:lambda]; repeatable");
  table->add_option("--threads", opt.threads, "Worker threads or 'auto' (default 1)");
  table->add_option("--format", opt.format, "csv (default)");
  table->add_option("--output", opt.output, "Output path (default stdout)");

  CLI::App* rates = app.add_subcommand("rates", "Log-log slope fits of the MMD curves");
  rates->add_option("--n-max", opt.n_max, "Largest sequence index");
  rates->add_option("--n-lo", opt.n_lo, "Fit window start (default max(50, n_max/5))");
  rates->add_option("--kernel", opt.kernels, "Kernel id[:lambda]; repeatable");
  rates->add_option("--threads", opt.threads, "Worker threads or 'auto' (default 1)");
  rates->add_flag("--selftest", opt.selftest, "Fit a planted n^-3/2 power law instead");
  rates->add_option("--output", opt.output, "Output path (default stdout)");

  CLI::App* plot = app.add_subcommand("plot", "Render a table CSV as an SVG plot");
  plot->add_option("--input", opt.input, "Table CSV path (default stdin)");
  plot->add_option("--output", opt.output, "Output path (default stdout)");

  // The farey/mmd default format is text; table defaults to csv.
  table->parse_complete_callback([&] {
    if (opt.format == "text") opt.format = "csv";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(farey)) return cmd_farey(opt);
    if (app.got_subcommand(mmd)) return cmd_mmd(opt);
    if (app.got_subcommand(table)) return cmd_table(opt);
    if (app.got_subcommand(rates)) {
      if (!opt.selftest && opt.n_max < 2) {
        throw std::invalid_argument("rates: --n-max >= 2 is required");
      }
      return cmd_rates(opt);
    }
    if (app.got_subcommand(plot)) return cmd_plot(opt);
  } catch (const std::overflow_error& e) {
    std::cerr << "error (overflow): " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
