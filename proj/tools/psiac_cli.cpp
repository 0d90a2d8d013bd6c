// Command-line driver: convergence experiments and filter dumps.
//
// Exit status: 0 success, 2 bad configuration or usage, 3 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "experiment.hpp"
#include "psiac/errors.hpp"
#include "psiac/io.hpp"
#include "psiac/kernel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Position-dependent SIAC filtering of DG solutions"};
  app.require_subcommand(1);
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Run a convergence experiment from a JSON config");
  std::string config_path, out_dir;
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");

  auto* dump = app.add_subcommand("dump-filter", "Print a catalog filter as JSON");
  std::string name, side = "L", dump_out;
  int degree = 1;
  dump->add_option("--name", name, "RS, SRV, RLKV, MULTIKNOT or SYMMETRIC")->required();
  dump->add_option("--degree", degree, "DG degree d")->required();
  dump->add_option("--side", side, "L, R or sym");
  dump->add_option("--out", dump_out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      psiac::cli::ExperimentConfig config = psiac::cli::load_config(config_path);
      if (!out_dir.empty()) config.output_dir = out_dir;
      for (const auto& p : psiac::cli::run(config, threads)) std::cout << p.string() << '\n';
    } else if (*dump) {
      psiac::FilterFamily family;
      psiac::Side s;
      try {
        family = psiac::parse_family(name);
        s = psiac::parse_side(side);
        if (family == psiac::FilterFamily::Custom) throw std::invalid_argument("custom filters have no catalog entry");
      } catch (const std::invalid_argument& e) {
        throw psiac::ConfigError(std::string("dump-filter: ") + e.what());
      }
      psiac::FilterSpec spec = [&] {
        try {
          return psiac::filter_catalog(family, degree, s);
        } catch (const std::invalid_argument& e) {
          throw psiac::ConfigError(std::string("dump-filter: ") + e.what());
        } catch (const psiac::UnsupportedDegree& e) {
          throw psiac::ConfigError(std::string("dump-filter: ") + e.what());
        }
      }();
      const std::string text = psiac::dump_filter(spec).dump(1);
      if (dump_out.empty()) {
        std::cout << text << '\n';
      } else {
        std::ofstream os(dump_out);
        if (!os) throw psiac::ConfigError("cannot write " + dump_out);
        os << text << '\n';
      }
    }
  } catch (const psiac::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const psiac::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
