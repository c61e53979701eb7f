#include <cstdio>
#include <exception>

#include "CLI11.hpp"
#include "commands.hpp"
#include "treehardy/errors.hpp"

namespace {

int run(int argc, char** argv) {
  CLI::App app{
      "Discrete Hardy-type and improved Poincare inequalities on radial trees:\n"
      "weight tables, randomized verification, spectral sweeps, and sharpness probes."};
  app.require_subcommand(1);

  using namespace treehardy::cli;
  WeightsConfig wc;
  VerifyConfig vc;
  SweepConfig sc;
  ViolatorConfig xc;

  CLI::App* w = app.add_subcommand(
      "weights", "Tabulate a weight family as CSV (n, W, remainder, asymptotic_gap)");
  w->add_option("--tree", wc.tree, "Tree descriptor")->capture_default_str();
  w->add_option("--weight", wc.weight, "Weight descriptor")->required();
  w->add_option("--max-n", wc.max_n, "Last radius to tabulate")->capture_default_str();
  w->add_option("--out", wc.out, "Output CSV path (default stdout)");

  CLI::App* v = app.add_subcommand(
      "verify", "Check form(phi) >= scale * weighted norm(phi) on random test functions");
  v->add_option("--tree", vc.tree, "Tree descriptor")->capture_default_str();
  v->add_option("--weight", vc.weight, "Weight descriptor")->required();
  v->add_option("--weight-scale", vc.weight_scale, "Multiply the weight by this factor")
      ->capture_default_str();
  v->add_option("--depth", vc.depth, "Truncation depth for the vertex mode")
      ->capture_default_str();
  v->add_option("--trials", vc.trials, "Number of random test functions")
      ->capture_default_str();
  v->add_option("--seed", vc.seed, "Base seed of the counter RNG")->capture_default_str();
  v->add_option("--tolerance", vc.tolerance, "Accept gaps down to -tolerance")
      ->capture_default_str();
  v->add_option("--dist", vc.dist, "Sample distribution: gaussian | rademacher")
      ->capture_default_str();
  v->add_option("--annulus", vc.annulus,
                "a,b: verify radial functions on the window [a, b) instead of a truncation");
  v->add_option("--out", vc.out, "Output CSV path (default stdout)");

  CLI::App* s = app.add_subcommand(
      "sweep", "Window sweeps: Dirichlet bottom eigenvalues, ratios, null-criticality sums");
  s->add_option("--mode", sc.mode, "poincare | crit | ratio | nullcrit")
      ->capture_default_str();
  s->add_option("--tree", sc.tree, "Tree descriptor")->capture_default_str();
  s->add_option("--weight", sc.weight, "Weight descriptor (crit, ratio, nullcrit)");
  s->add_option("--ground", sc.ground, "Radial function descriptor (nullcrit)");
  s->add_option("--windows", sc.windows,
                "Comma-separated strictly increasing window ends (poincare, crit, ratio)");
  s->add_option("--annulus-start", sc.annulus_start, "Window start radius for ratio mode")
      ->capture_default_str();
  s->add_option("--N", sc.big_n, "Largest radius for nullcrit partial sums")
      ->capture_default_str();
  s->add_option("--out", sc.out, "Output CSV path (default stdout)");

  CLI::App* x = app.add_subcommand(
      "violator", "Search growing windows for a function violating a scaled inequality");
  x->add_option("--mode", xc.mode, "weight | rbar")->capture_default_str();
  x->add_option("--tree", xc.tree, "Tree descriptor")->capture_default_str();
  x->add_option("--weight", xc.weight, "Weight descriptor (weight mode)");
  x->add_option("--constant", xc.constant, "Scale C > 1 tested against the weight");
  x->add_option("--constant-factor", xc.constant_factor,
                "Scale factor > 1 tested against the sharp remainder (rbar mode)");
  x->add_option("--annulus-start", xc.annulus_start, "Window start radius")
      ->capture_default_str();
  x->add_option("--max-window", xc.max_window, "Largest window end before giving up")
      ->capture_default_str();
  x->add_option("--out", xc.out, "Witness CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  if (w->parsed()) return cmd_weights(wc);
  if (v->parsed()) return cmd_verify(vc);
  if (s->parsed()) return cmd_sweep(sc);
  return cmd_violator(xc);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace treehardy;
  try {
    return run(argc, argv);
  } catch (const BudgetError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitBudget;
  } catch (const NonnegativityViolation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitViolation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitConfig;
  }
}
