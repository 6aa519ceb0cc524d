// markov-twist: labels, enumeration, figures, verification, density witnesses
// and bound scans for twist numbers on the modular torus.

#include "markov_twist/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

namespace mt = markov_twist;
namespace cli = markov_twist::cli;

namespace {

struct Options {
  unsigned long qmax = 0;
  long prec = 0;
  unsigned threads = 1;
  std::string out;
  std::string svg;
  std::string which = "geom";
  std::optional<double> decay;
  std::optional<std::string> cest;
  std::string slope;
  std::string x, y, eps;
};

/// Opens `path` for writing; "-" or empty means stdout.
std::ostream& open_output(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path.empty() || path == "-") return std::cout;
  holder = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*holder) throw std::runtime_error("cannot open " + path + " for writing");
  return *holder;
}

long precision_or(const Options& o, long fallback) {
  long p = o.prec == 0 ? fallback : o.prec;
  if (p < mt::kMinPrecisionBits) throw mt::RangeError("--prec must be at least 64 bits");
  return p;
}

unsigned thread_count(const Options& o) {
  if (o.threads == 0) return std::max(1u, std::thread::hardware_concurrency());
  return o.threads;
}

int run_enumerate(const Options& o) {
  std::unique_ptr<std::ofstream> file;
  std::ostream& os = open_output(o.out, file);
  std::size_t rows = cli::write_enumeration(os, o.qmax, precision_or(o, cli::kFigurePrecision), thread_count(o));
  os.flush();
  if (!os) throw std::runtime_error("write failed");
  std::cerr << rows << " rows\n";
  return cli::kOk;
}

int run_figure(const Options& o) {
  cli::Which which = cli::parse_which(o.which);
  cli::FigureStyle style;
  if (o.decay) {
    if (!(*o.decay > 0)) throw mt::RangeError("--decay must be positive");
    style.decay_rate = *o.decay;
  }
  std::unique_ptr<std::ofstream> csv_file, svg_file;
  std::ostream* csv = o.out.empty() ? nullptr : &open_output(o.out, csv_file);
  std::ostream* svg = o.svg.empty() ? nullptr : &open_output(o.svg, svg_file);
  if (!csv && !svg) throw mt::RangeError("figure: give --out and/or --svg");
  cli::FigureCounts c =
      cli::write_figure(csv, svg, which, o.qmax, precision_or(o, cli::kFigurePrecision), thread_count(o), style);
  std::cerr << c.points << " points\n";
  return cli::kOk;
}

int run_witness(const Options& o) {
  mt::Rational x = mt::parse_rational(o.x);
  mt::Rational y = mt::parse_rational(o.y);
  mt::Rational eps = mt::parse_rational(o.eps);
  const long prec = precision_or(o, cli::kVerifyPrecision);
  mt::HReal c_est(0L, prec);
  if (o.cest) {
    c_est = mt::HReal(*o.cest, prec);
  } else {
    const unsigned long q = o.qmax == 0 ? 500 : o.qmax;
    mt::BoundScan b = mt::bound_scan(mt::default_scales(q), prec, mt::EnumerationOptions{thread_count(o), 8});
    c_est = b.c_est();
  }
  cli::WitnessReport r = cli::make_witness(x, y, eps, c_est, prec);
  cli::print_witness(std::cout, r);
  return cli::kOk;
}

int run_bound_scan(const Options& o) {
  std::unique_ptr<std::ofstream> file;
  std::ostream& os = open_output(o.out, file);
  cli::print_bound_scan(os, o.qmax == 0 ? 500 : o.qmax, precision_or(o, cli::kVerifyPrecision), thread_count(o));
  return cli::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Farey and geometric twist numbers on the modular torus"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--prec", o.prec, "working precision in bits (>= 64)");
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    if (with_out) sub->add_option("--out", o.out, "output path, '-' for stdout");
  };

  CLI::App* labels = app.add_subcommand("labels", "all labels of one slope p/q");
  labels->add_option("slope", o.slope, "slope p/q in [0,1]")->required();
  common(labels, false);

  CLI::App* enumerate = app.add_subcommand("enumerate", "CSV of every slope with q <= qmax");
  enumerate->add_option("--qmax", o.qmax, "largest denominator")->required();
  common(enumerate, true);

  CLI::App* figure = app.add_subcommand("figure", "scatter data and SVG of tau_X or tau_F");
  figure->add_option("--qmax", o.qmax, "largest denominator")->required();
  figure->add_option("--which", o.which, "geom or farey")->capture_default_str();
  figure->add_option("--svg", o.svg, "SVG output path");
  figure->add_option("--decay", o.decay, "radius decay rate per unit q (default 1/120)");
  common(figure, true);

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--qmax", o.qmax, "largest denominator (0 = empty scan)")->required();
  common(verify, false);

  CLI::App* witness = app.add_subcommand("witness", "density witness near (x, y)");
  witness->add_option("x", o.x, "target slope, rational or decimal")->required();
  witness->add_option("y", o.y, "target twist, rational or decimal")->required();
  witness->add_option("eps", o.eps, "tolerance, rational or decimal")->required();
  witness->add_option("--qmax", o.qmax, "bound-scan size used to estimate C (default 500)");
  witness->add_option("--cest", o.cest, "use this constant instead of running a bound scan");
  common(witness, false);

  CLI::App* scan = app.add_subcommand("bound-scan", "empirical constants over scales qmax/4, qmax/2, qmax");
  scan->add_option("--qmax", o.qmax, "largest scale (default 500)");
  common(scan, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kParse;
  }

  try {
    if (*labels) {
      cli::print_labels(std::cout, mt::parse_slope(o.slope), precision_or(o, cli::kVerifyPrecision));
      return cli::kOk;
    }
    if (*enumerate) return run_enumerate(o);
    if (*figure) return run_figure(o);
    if (*verify) return cli::print_verify(std::cout, o.qmax, precision_or(o, cli::kVerifyPrecision), thread_count(o));
    if (*witness) return run_witness(o);
    if (*scan) return run_bound_scan(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return cli::kParse;
  } catch (const std::domain_error& e) {
    std::cerr << "range error: " << e.what() << '\n';
    return cli::kRange;
  } catch (const mt::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return cli::kResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kFailure;
  }
  return cli::kFailure;
}
