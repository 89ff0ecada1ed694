// qorbit — command-line front end: algebra file checks, dual-space
// stratification, star products, operator quantization, PBW normal forms,
// and the verification suites, with text or machine-readable JSON reports.
//
// Exit codes: 0 success, 1 assertion/validation failure, 2 config or parse
// error.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "qorbit/enveloping.hpp"
#include "qorbit/moyal.hpp"
#include "qorbit/parse.hpp"
#include "qorbit/stratify.hpp"
#include "qorbit/suites.hpp"

using namespace qorbit;
using nlohmann::ordered_json;

namespace {

struct OutputOptions {
  std::string path;           // empty = stdout
  std::string format = "text";
  bool no_timestamp = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--output", out.path, "write the report to a file instead of stdout");
  cmd->add_option("--format", out.format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--no-timestamp", out.no_timestamp,
                "omit the timestamp (byte-identical reports for identical inputs)");
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void emit(const OutputOptions& out, ordered_json report, const std::string& text) {
  if (!out.no_timestamp) report["timestamp"] = timestamp_now();
  const std::string body = out.format == "json" ? report.dump(2) + "\n" : text;
  if (out.path.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw ParseError("cannot write " + out.path);
    f << body;
  }
}

// Bundled catalog algebras are addressable by name; anything else is a path.
LieAlgebra::Ptr load_algebra(const std::string& spec) {
  if (spec == "aff_r") return aff_real();
  if (spec == "aff_c") return aff_complex();
  return LieAlgebra::from_json_file(spec);
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void parse_grid(const std::string& text, SuiteOptions& opt) {
  double lo = 0, hi = 0;
  int count = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || !(lo < hi) ||
      count <= 0)
    throw ParseError("invalid grid spec '" + text + "' (expected min:max:count)");
  if (!power_of_two(count))
    throw ParseError("grid count must be a power of two for FFT commands, got " + text);
  opt.grid_min = lo;
  opt.grid_max = hi;
  opt.grid_count = count;
}

int cmd_algebra_check(const std::string& path, const OutputOptions& out) {
  const auto alg = load_algebra(path);
  const auto report = check_jacobi(*alg);

  ordered_json j;
  j["schema"] = "1";
  j["command"] = "algebra check";
  j["algebra"] = alg->name();
  j["dim"] = alg->dim();
  j["valid"] = report.valid();
  j["antisymmetry_violations"] = ordered_json::array();
  for (const auto& v : report.antisymmetry)
    j["antisymmetry_violations"].push_back(
        {{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1}, {"value", v.value}});
  j["jacobi_violations"] = ordered_json::array();
  for (const auto& v : report.jacobi)
    j["jacobi_violations"].push_back(
        {{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1}, {"l", v.l + 1}, {"value", v.value}});

  std::string text = "algebra " + alg->name() + " (dim " + std::to_string(alg->dim()) + "): ";
  text += report.valid()
              ? "valid (antisymmetry and Jacobi hold)\n"
              : "INVALID (" + std::to_string(report.antisymmetry.size()) + " antisymmetry, " +
                    std::to_string(report.jacobi.size()) + " Jacobi violations)\n";
  emit(out, std::move(j), text);
  return report.valid() ? 0 : 1;
}

int cmd_stratify(const std::string& path, int samples, std::uint64_t seed,
                 const std::string& dist, const OutputOptions& out) {
  const auto alg = load_algebra(path);
  const auto report = stratify(alg, SamplerSpec::parse(dist), samples, seed);

  ordered_json j = ordered_json::parse(report.to_json_text());
  std::string text = "stratification of " + alg->name() + "* (" + std::to_string(samples) +
                     " samples, seed " + std::to_string(seed) + ")\n";
  for (const auto& [rank, count] : report.rank_histogram)
    text += "  rank " + std::to_string(rank) + ": " + std::to_string(count) + " samples\n";
  emit(out, std::move(j), text);
  return 0;
}

int cmd_star(const std::string& expr_a, const std::string& expr_b, const std::string& chart_id,
             const std::string& assoc_expr, const OutputOptions& out) {
  const auto chart = chart_by_id(chart_id);
  const auto a = parse_symbol(expr_a, chart.phase_space);
  const auto b = parse_symbol(expr_b, chart.phase_space);
  const auto product = star(a, b, chart.lambda);

  ordered_json j;
  j["schema"] = "1";
  j["command"] = "star";
  j["chart"] = chart.orbit_id;
  j["result"] = product.format();
  std::string text = product.format() + "\n";
  bool ok = true;
  if (!assoc_expr.empty()) {
    const auto c = parse_symbol(assoc_expr, chart.phase_space);
    const auto lhs = star(product, c, chart.lambda);
    const auto rhs = star(a, star(b, c, chart.lambda), chart.lambda);
    const double dev = max_coeff_deviation(lhs, rhs);
    const double scale = std::max({1.0, max_abs_coeff(lhs), max_abs_coeff(rhs)});
    ok = dev / scale < 1e-10;
    j["assoc_deviation"] = dev / scale;
    j["assoc_pass"] = ok;
    text += std::string("associativity with the third factor: ") + (ok ? "pass" : "FAIL") +
            " (relative deviation " + std::to_string(dev / scale) + ")\n";
  }
  emit(out, std::move(j), text);
  return ok ? 0 : 1;
}

int cmd_quantize(const std::string& expr, const std::string& chart_id, bool shear,
                 const OutputOptions& out) {
  const auto chart = chart_by_id(chart_id);
  const auto zt = parse_symbol(expr, chart.phase_space);
  DiffOperator op = quantize_symbol(zt, chart);
  if (shear) op = change_vars_shear(op, chart);

  ordered_json j;
  j["schema"] = "1";
  j["command"] = "quantize";
  j["chart"] = chart.orbit_id;
  j["sheared"] = shear;
  j["operator"] = op.format();
  emit(out, std::move(j), op.format() + "\n");
  return 0;
}

int cmd_pbw(const std::string& word_text, const std::string& algebra_spec,
            const std::string& order_text, const OutputOptions& out) {
  const auto alg = load_algebra(algebra_spec);
  auto split = [](const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) parts.push_back(item);
    return parts;
  };
  UEWord word;
  for (const auto& label : split(word_text)) word.push_back(alg->label_index(label));
  std::vector<int> order;
  if (order_text.empty()) {
    for (int i = 0; i < alg->dim(); ++i) order.push_back(i);
  } else {
    for (const auto& label : split(order_text)) order.push_back(alg->label_index(label));
  }
  const auto nf = pbw_normal_form(UEElement::word(alg, word), order);

  ordered_json j;
  j["schema"] = "1";
  j["command"] = "pbw";
  j["algebra"] = alg->name();
  j["word"] = word_text;
  j["normal_form"] = nf.format();
  emit(out, std::move(j), nf.format() + "\n");
  return 0;
}

int cmd_verify(const std::string& suite, const SuiteOptions& opt, const OutputOptions& out) {
  const auto checks = run_suite(suite, opt);
  bool pass = true;
  for (const auto& c : checks) pass = pass && c.pass;

  ordered_json j;
  j["schema"] = "1";
  j["command"] = "verify";
  j["suite"] = suite;
  j["seed"] = opt.seed;
  j["pass"] = pass;
  j["checks"] = ordered_json::array();
  std::string text = "verify " + suite + " (seed " + std::to_string(opt.seed) + ")\n";
  char line[256];
  for (const auto& c : checks) {
    ordered_json jc = {{"criterion", c.criterion}, {"name", c.name},      {"metric", c.metric},
                       {"tolerance", c.tolerance}, {"pass", c.pass},      {"detail", c.detail}};
    std::snprintf(line, sizeof line, "  [%s] %-32s metric %-12.3e tol %-9.1e %s\n",
                  c.pass ? "pass" : "FAIL", c.name.c_str(), c.metric, c.tolerance,
                  c.detail.c_str());
    text += line;
    if (!c.tests.empty()) {
      jc["tests"] = ordered_json::array();
      text += "         group element           sup_error   l2_error    norm_drift  "
              "boundary_mass\n";
      for (const auto& t : c.tests) {
        jc["tests"].push_back({{"group_element", t.group_element},
                               {"sup_error", t.sup_error},
                               {"l2_error", t.l2_error},
                               {"norm_drift", t.norm_drift},
                               {"boundary_mass", t.boundary_mass}});
        std::snprintf(line, sizeof line, "         %-22s %-11.3e %-11.3e %-11.3e %-11.3e\n",
                      t.group_element.c_str(), t.sup_error, t.l2_error, t.norm_drift,
                      t.boundary_mass);
        text += line;
      }
    }
    j["checks"].push_back(std::move(jc));
  }
  text += pass ? "all checks passed\n" : "FAILURES present\n";
  emit(out, std::move(j), text);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deformation quantization on coadjoint orbits of the catalog groups"};
  app.require_subcommand(1);

  // algebra check <file>
  auto* algebra = app.add_subcommand("algebra", "structure-constant table operations");
  algebra->require_subcommand(1);
  auto* check = algebra->add_subcommand("check", "validate antisymmetry and the Jacobi identity");
  std::string check_path;
  OutputOptions check_out;
  check->add_option("file", check_path, "algebra JSON file, or aff_r / aff_c")->required();
  add_output_options(check, check_out);

  // orbits stratify <file> --samples N --seed S
  auto* orbits = app.add_subcommand("orbits", "dual-space stratification");
  orbits->require_subcommand(1);
  auto* strat = orbits->add_subcommand("stratify", "sample the dual space and bin by Poisson rank");
  std::string strat_path, strat_dist = "uniform:-1:1";
  int strat_samples = 1000;
  std::uint64_t strat_seed = 0;
  OutputOptions strat_out;
  strat->add_option("file", strat_path, "algebra JSON file, or aff_r / aff_c")->required();
  strat->add_option("--samples", strat_samples, "number of samples")->check(CLI::PositiveNumber);
  strat->add_option("--seed", strat_seed, "RNG seed (required for reproducibility)")->required();
  strat->add_option("--dist", strat_dist, "sampler: uniform[:lo:hi] or gaussian[:sigma]");
  add_output_options(strat, strat_out);

  // star <A> <B> --chart C
  auto* star_cmd = app.add_subcommand("star", "star product of two symbols on a chart");
  std::string star_a, star_b, star_chart = "affR+", star_assoc;
  OutputOptions star_out;
  star_cmd->add_option("exprA", star_a, "left symbol")->required();
  star_cmd->add_option("exprB", star_b, "right symbol")->required();
  star_cmd->add_option("--chart", star_chart, "chart id: affR+, affR-, affC:k");
  star_cmd->add_option("--check-assoc", star_assoc,
                       "assert associativity against a third symbol");
  add_output_options(star_cmd, star_out);

  // quantize <expr> --chart C [--shear]
  auto* quant = app.add_subcommand("quantize", "first-order operator of a p-linear symbol");
  std::string quant_expr, quant_chart = "affR+";
  bool quant_shear = false;
  OutputOptions quant_out;
  quant->add_option("expr", quant_expr, "symbol, p-linear with constant p-coefficients")
      ->required();
  quant->add_option("--chart", quant_chart, "chart id");
  quant->add_flag("--shear", quant_shear, "apply the transport change of variables");
  add_output_options(quant, quant_out);

  // pbw <word> [--order ...] [--algebra ...]
  auto* pbw = app.add_subcommand("pbw", "normal form of a basis word");
  std::string pbw_word, pbw_alg = "aff_c", pbw_order;
  OutputOptions pbw_out;
  pbw->add_option("word", pbw_word, "comma-separated basis labels, e.g. Y1,X1")->required();
  pbw->add_option("--algebra", pbw_alg, "algebra JSON file, or aff_r / aff_c");
  pbw->add_option("--order", pbw_order, "comma-separated basis labels, smallest first");
  add_output_options(pbw, pbw_out);

  // verify <suite>
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string verify_suite, verify_grid, verify_chart;
  SuiteOptions opt;
  OutputOptions verify_out;
  verify->add_option("suite", verify_suite, "commutator | pbw | operator | representation | all")
      ->required();
  verify->add_option("--seed", opt.seed, "RNG seed (required)")->required();
  verify->add_option("--chart", verify_chart, "restrict chart-indexed suites to one chart");
  verify->add_option("--grid", verify_grid, "representation grid min:max:count (count = 2^k)");
  verify->add_option("--tolerance", opt.tolerance_override,
                     "override every threshold (negative control)");
  verify->add_option("--trials", opt.commutator_trials, "random pairs per commutator check");
  verify->add_option("--samples", opt.strat_samples, "stratification sample count");
  verify->add_option("--dump-grid", opt.dump_grid_path,
                     "write the first representation comparison pair as grid files");
  std::string grid_precision = "double";
  verify->add_option("--grid-precision", grid_precision, "grid payload precision")
      ->check(CLI::IsMember({"single", "double"}));
  add_output_options(verify, verify_out);

  try {
    app.parse(argc, argv);

    if (*check) return cmd_algebra_check(check_path, check_out);
    if (*strat) return cmd_stratify(strat_path, strat_samples, strat_seed, strat_dist, strat_out);
    if (*star_cmd) return cmd_star(star_a, star_b, star_chart, star_assoc, star_out);
    if (*quant) return cmd_quantize(quant_expr, quant_chart, quant_shear, quant_out);
    if (*pbw) return cmd_pbw(pbw_word, pbw_alg, pbw_order, pbw_out);
    if (*verify) {
      opt.chart_filter = verify_chart;
      opt.dump_single_precision = grid_precision == "single";
      if (!verify_grid.empty()) parse_grid(verify_grid, opt);
      return cmd_verify(verify_suite, opt, verify_out);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
