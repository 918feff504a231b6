#include <iostream>

#include "CLI11.hpp"
#include "toricg2/commands.hpp"

int main(int argc, char** argv) {
  toricg2::RunConfig cfg;
  std::string out, csv;

  CLI::App app{"Toric G2 ansatz checks"};
  app.add_option("command", cfg.command, "validate | curvature | graph | models | solve")
      ->required()
      ->check(CLI::IsMember({"validate", "curvature", "graph", "models", "solve"}));
  app.add_option("--input", cfg.input, "VField JSON file");
  app.add_option("--box", cfg.box, "domain override, e.g. \"nu1=-1:1,mu=0.5:2\"");
  app.add_option("--model", cfg.model, "graph: c3 | t2rc2 | bs; solve: hierarchy | mu-dep | poly-ex | constant");
  app.add_option("--res", cfg.res, "grid points per axis")->capture_default_str();
  app.add_option("--samples", cfg.samples, "random sample points (curvature)")->capture_default_str();
  app.add_option("--degree", cfg.degree, "max degree (solve)")->capture_default_str();
  app.add_option("--tol", cfg.tol, "residual tolerance")->capture_default_str();
  app.add_option("--eps", cfg.eps, "Bryant-Salamon parameter")->capture_default_str();
  app.add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  app.add_option("--out", out, "JSON report path (default stdout)");
  app.add_option("--csv", csv, "CSV table path (curvature; default <out>.csv)");
  CLI11_PARSE(app, argc, argv);

  try {
    const toricg2::CommandResult r = toricg2::run_command(cfg);
    const std::string text = r.report.dump(2) + "\n";
    if (out.empty())
      std::cout << text;
    else
      toricg2::write_text(out, text);
    if (!r.csv.empty()) {
      if (csv.empty() && !out.empty()) csv = out.substr(0, out.rfind('.')) + ".csv";
      if (!csv.empty()) toricg2::write_text(csv, r.csv);
    }
    std::cerr << cfg.command << ": " << (r.pass ? "pass" : "FAIL");
    if (r.report.contains("status")) std::cerr << " (" << r.report["status"].get<std::string>() << ")";
    std::cerr << '\n';
    return r.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "toricg2 " << cfg.command << ": error: " << e.what() << '\n';
    return 2;
  }
}
