#include <iostream>

#include "CLI11.hpp"
#include "apcl/errors.hpp"
#include "apcl/experiment.hpp"
#include "apcl/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "entropy solutions of conservation laws with almost-periodic data: "
      "torus lifts, non-degeneracy checks, decay experiments"};
  app.fallthrough();
  app.require_subcommand(1);

  apcl::CmdOptions opts;
  app.add_option("--config", opts.config_path, "experiment config (JSON)");
  app.add_option("--out", opts.out_dir, "output directory")
      ->capture_default_str();
  app.add_option("--threads", opts.threads, "worker thread count");
  app.add_option("--seed", opts.seed,
                 "seed for randomized batteries (recorded only)");

  auto* sc_spectrum = app.add_subcommand(
      "spectrum", "print the spectrum, its group, and a Q-basis");
  auto* sc_nd = app.add_subcommand(
      "nd-check", "decide the non-degeneracy condition (exit 2 when it fails)");
  auto* sc_solve =
      app.add_subcommand("solve", "advance the lifted problem and emit traces");
  auto* sc_decay = app.add_subcommand(
      "decay", "full decay experiment (solve or counterexample branch)");
  auto* sc_fejer =
      app.add_subcommand("fejer", "summation weights at the spectrum lines");
  auto* sc_counter = app.add_subcommand(
      "counterexample", "build the traveling wave certifying no decay");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (opts.threads > 0) apcl::set_worker_threads(opts.threads);

  try {
    if (sc_spectrum->parsed()) return apcl::cmd_spectrum(opts);
    if (sc_nd->parsed()) return apcl::cmd_ndcheck(opts);
    if (sc_solve->parsed()) return apcl::cmd_solve(opts);
    if (sc_decay->parsed()) return apcl::cmd_decay(opts);
    if (sc_fejer->parsed()) return apcl::cmd_fejer(opts);
    if (sc_counter->parsed()) return apcl::cmd_counterexample(opts);
  } catch (const apcl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
