#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hyperop/hyperop.hpp"

namespace {

hyperop::RunConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  hyperop::Json j;
  in >> j;
  return hyperop::RunConfig::from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::endl;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cross-validation harness for the operator-inversion library"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path;
  long long seed_override = -1;
  app.add_option("--config", config_path, "JSON run configuration")->expected(1);
  app.add_option("--out", out_path, "report destination (default: config output_path or stdout)");
  app.add_option("--seed", seed_override, "override the configured PRNG seed");
  app.add_option("--csv", csv_path, "also write per-sample residuals as CSV");
  app.fallthrough();

  using Runner = std::function<hyperop::Report(const hyperop::RunConfig&)>;
  Runner runner;
  app.add_subcommand("verify-pair", "matrix inversion-pair identity residuals")
      ->callback([&] { runner = [](const hyperop::RunConfig& c) { return hyperop::cmd_verify_pair(c); }; });
  app.add_subcommand("roundtrip", "apply the operator, invert by all four routes, compare")
      ->callback([&] { runner = [](const hyperop::RunConfig& c) { return hyperop::cmd_roundtrip(c); }; });
  app.add_subcommand("volterra", "kernel-route checks (real parameters only)")
      ->callback([&] { runner = [](const hyperop::RunConfig& c) { return hyperop::cmd_volterra(c); }; });
  app.add_subcommand("remark-check", "closed-form image of z e^{(1-x)z} vs quadrature")
      ->callback([&] { runner = [](const hyperop::RunConfig& c) { return hyperop::cmd_remark_check(c); }; });
  app.add_subcommand("all", "run every check group")
      ->callback([&] { runner = [](const hyperop::RunConfig& c) { return hyperop::cmd_all(c); }; });

  CLI11_PARSE(app, argc, argv);

  try {
    hyperop::RunConfig cfg = load_config(config_path);
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    const hyperop::Report report = runner(cfg);

    const std::string dest = !out_path.empty() ? out_path : cfg.output_path;
    write_text(dest, report.to_json().dump(2));
    if (!csv_path.empty()) write_text(csv_path, report.to_csv());

    return report.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}
