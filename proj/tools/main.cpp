// Command-line front end. Parsing and file access only; everything else is
// scattered::run. Wall time goes to stderr so stdout stays byte-stable.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <scattered/cli.hpp>

int main(int argc, char** argv) {
  CLI::App app{"scattered subspaces with respect to Desarguesian spreads"};
  app.get_formatter()->column_width(28);

  scattered::RunConfig cfg;
  std::string irr, poly, subspace_path, v1, v2, out_path;

  app.add_option("command", cfg.command,
                 "field | spread | analyze | extend | search | bounds | linset | dual | splash | "
                 "pseudoregulus | spectrum | code | blocking | mrd | hyperoval | cap | design-check")
      ->required();
  app.add_option("--p", cfg.p, "base field characteristic");
  app.add_option("--e", cfg.e, "base field degree over the prime (default 1)");
  app.add_option("--q", cfg.q, "base field size, alternative to --p/--e");
  app.add_option("--t", cfg.t, "extension degree of the top field");
  app.add_option("--r", cfg.r, "dimension over the top field");
  app.add_option("--irr", irr, "top modulus coefficients over the base field, low degree first");
  app.add_option("--subspace", subspace_path, "generator matrix file, one vector per line");
  app.add_option("--poly", poly, "linearized polynomial coefficients, low q-degree first");
  app.add_option("--v1", v1, "first point of the splash line, base-p coordinate string");
  app.add_option("--v2", v2, "second point of the splash line, base-p coordinate string");
  app.add_option("--k", cfg.k, "blocking fold parameter (default 1)");
  app.add_option("--sigma", cfg.sigma, "duality twist exponent (default 0)");
  app.add_option("--target", cfg.target, "search target dimension");
  app.add_option("--restarts", cfg.restarts, "search restarts (default 32)");
  app.add_option("--seed", cfg.seed, "search seed (default 1)");
  app.add_option("--parallel", cfg.parallel, "worker threads; results do not depend on this");
  app.add_option("--budget", cfg.budget_limit, "enumeration budget (default SCATTER_BUDGET or 10000000)");
  app.add_option("--format", cfg.format, "json | csv | text (default json)");
  app.add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  try {
    if (!irr.empty()) cfg.irr = scattered::parse_int_list(irr);
    if (!poly.empty()) cfg.poly = scattered::parse_int_list(poly);
    if (!v1.empty()) cfg.v1 = v1;
    if (!v2.empty()) cfg.v2 = v2;
    if (!subspace_path.empty()) {
      std::ifstream in(subspace_path);
      if (!in) throw std::invalid_argument("cannot read subspace file '" + subspace_path + "'");
      std::ostringstream text;
      text << in.rdbuf();
      cfg.subspace_text = text.str();
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  const scattered::RunResult result = scattered::run(cfg);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  if (out_path.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
    out << result.output;
  }
  std::cerr << "elapsed_ms=" << elapsed.count() << "\n";
  return result.status;
}
