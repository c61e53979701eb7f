#pragma once

/**
 * Subcommand implementations for the treehardy CLI.
 *
 * Each cmd_* parses its descriptors, runs the computation, writes a CSV
 * table to --out (or stdout), and returns the process exit code for the
 * non-exceptional outcomes.  Error exit codes are produced by main() from
 * the exceptions the core library throws:
 *
 *   0  pass / violator found
 *   1  inequality violation where none was expected / verification failed
 *   2  configuration error (bad descriptor, parameter out of range, ...)
 *   3  search or vertex budget exhausted
 */

#include <cstdint>
#include <string>

namespace treehardy::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

struct WeightsConfig {
  std::string tree = "homogeneous:q=2";
  std::string weight;
  long long max_n = 10;
  std::string out;
};

struct VerifyConfig {
  std::string tree = "homogeneous:q=2";
  std::string weight;
  double weight_scale = 1.0;
  long long depth = 10;
  long long trials = 200;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::string dist = "gaussian";
  std::string annulus;  // "a,b"; empty = vertex mode on a truncation
  std::string out;
};

struct SweepConfig {
  std::string tree = "homogeneous:q=2";
  std::string mode = "poincare";  // poincare | crit | ratio | nullcrit
  std::string weight;
  std::string ground;
  std::string windows;  // comma-separated strictly increasing radii
  long long annulus_start = 2;
  long long big_n = 1024;  // --N for nullcrit
  std::string out;
};

struct ViolatorConfig {
  std::string tree = "homogeneous:q=2";
  std::string mode = "weight";  // weight | rbar
  std::string weight;
  double constant = 0.0;         // weight mode threshold C
  double constant_factor = 0.0;  // rbar mode remainder scale factor
  long long annulus_start = 2;
  long long max_window = 4194304;
  std::string out;
};

int cmd_weights(const WeightsConfig& cfg);
int cmd_verify(const VerifyConfig& cfg);
int cmd_sweep(const SweepConfig& cfg);
int cmd_violator(const ViolatorConfig& cfg);

}  // namespace treehardy::cli
