#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bo2d/error.hpp"
#include "bo2d/parallel.hpp"
#include "bo2d_cli/checks.hpp"
#include "bo2d_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace bo2d::cli;
  CLI::App app{"bo2d: collapse simulations of the 2D Benjamin-Ono equation"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "run the integrator from a config file");
  s->add_option("--config", sim.config, "run config")->required();
  s->add_option("--out", sim.out, "output directory (overrides the config)");

  FitArgs fit;
  std::string window;
  auto* f = app.add_subcommand("fit", "fit the blow-up exponent of a trace");
  f->add_option("--trace", fit.trace, "trace CSV")->required();
  f->add_option("--window", window, "fit window lo:hi in tau");
  f->add_option("--out", fit.out, "directory for plot data (default: next to the trace)");

  GroundStateArgs gs;
  auto* g = app.add_subcommand("groundstate", "solve for the radial ground mode");
  g->add_option("--vstar", gs.vstar, "velocity V*")->required();
  g->add_option("--rmax", gs.rmax, "outermost radial node");
  g->add_option("--nodes", gs.nodes, "number of radial nodes");
  g->add_option("--out", gs.out, "output directory");

  std::string suite = "all";
  auto* c = app.add_subcommand("check", "run the operator self-tests");
  c->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kParseError;
  }

  try {
    bo2d::configure_threads_from_env();
  } catch (const bo2d::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }

  if (s->parsed()) return cmd_simulate(sim, std::cout);
  if (f->parsed()) {
    if (!window.empty()) {
      try {
        fit.window = parse_window(window);
      } catch (const bo2d::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
      }
    }
    return cmd_fit(fit, std::cout);
  }
  if (g->parsed()) return cmd_groundstate(gs, std::cout);
  return cmd_check(suite, std::cout);
}
