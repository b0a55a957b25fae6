#ifndef INFOORDER_CORPUS_HPP
#define INFOORDER_CORPUS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "infoorder/experiment.hpp"

namespace infoorder {

using Rng = std::mt19937_64;

/// Probability vector whose entries share one denominator d <= max_denominator.
VectorQ random_distribution(Rng& rng, Eigen::Index size, int max_denominator);

/// Full-support distribution with denominators bounded by max_denominator.
VectorQ random_full_support(Rng& rng, Eigen::Index size, int max_denominator);

Experiment random_experiment(Rng& rng, Eigen::Index states, Eigen::Index signals, int max_denominator);

/// Same experiment but every entry positive.
Experiment random_full_support_experiment(Rng& rng, Eigen::Index states, Eigen::Index signals,
                                          int max_denominator);

/// pi_out(s|theta) = sum_{s'} kernel(s|s') pi(s'|theta), with kernel entries
/// in {0, 1/2, 1}.
Experiment random_garbling(Rng& rng, const Experiment& experiment, Eigen::Index signals);

struct ExperimentPair {
  Experiment garbled;
  Experiment reference;
  std::string origin;
};

/**
 * Mixture of independent pairs and pairs ordered by construction (Blackwell
 * garblings, garblings of a diluted reference, reversed garblings), with at
 * most four states and four signals per experiment. Per-row denominators
 * stay at or below 12.
 */
std::vector<ExperimentPair> random_corpus(std::uint64_t seed, std::size_t count);

struct SelftestReport {
  std::size_t pairs = 0;
  std::size_t ordered = 0;
  std::size_t blackwell = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Cross-module equivalence battery: LP order check vs. posterior-hull
/// check across priors, Blackwell vs. unit minimal size, certificate
/// re-verification and transitivity on dilution chains.
SelftestReport run_selftest(std::uint64_t seed, std::size_t pairs);

}  // namespace infoorder

#endif  // INFOORDER_CORPUS_HPP
