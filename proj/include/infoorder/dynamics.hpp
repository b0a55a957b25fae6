#ifndef INFOORDER_DYNAMICS_HPP
#define INFOORDER_DYNAMICS_HPP

#include <optional>
#include <vector>

#include "infoorder/experiment.hpp"

namespace infoorder {

/// Hidden Markov transition; `transition(theta, theta')` = rho(theta'|theta).
struct MarkovChain {
  Labels states;
  MatrixQ transition;

  Eigen::Index state_count() const { return transition.rows(); }
  bool strictly_positive() const;
  bool irreducible() const;
  bool aperiodic() const;
};

MarkovChain make_chain(MatrixQ transition, Labels states = {});
/// Every row equal to `distribution`: the state is redrawn i.i.d. each period.
MarkovChain iid_chain(const VectorQ& distribution);

/// Belief after one transition and one signal:
///   r(s|mu)(theta') ∝ pi(s|theta') sum_theta rho(theta'|theta) mu(theta).
/// Throws InputError when the signal has zero probability.
VectorQ update(const MarkovChain& chain, const Experiment& experiment, const VectorQ& belief,
               Eigen::Index signal);

/// Probability of each signal after one transition from `belief`.
VectorQ signal_probabilities(const MarkovChain& chain, const Experiment& experiment,
                             const VectorQ& belief);

/**
 * Convex set of beliefs held as its extreme points. Supports up to three
 * states, where hull maintenance is exact (interval or polygon).
 */
class BeliefSet {
 public:
  /// Prunes duplicates and non-extreme points.
  explicit BeliefSet(std::vector<VectorQ> points);
  static BeliefSet simplex(Eigen::Index states);

  const std::vector<VectorQ>& extreme_points() const { return points_; }
  Eigen::Index dimension() const { return points_.front().size(); }

  friend bool operator==(const BeliefSet& a, const BeliefSet& b);

 private:
  std::vector<VectorQ> points_;
};

/// L1 distance from a point to the convex hull of a belief set (exact LP).
Rational l1_distance(const VectorQ& point, const BeliefSet& set);

/// max over extreme points p of `outer` of the L1 distance from p to `inner`;
/// the Hausdorff distance when inner is a subset of outer.
Rational hausdorff_gap(const BeliefSet& outer, const BeliefSet& inner);

/// Hull of update(mu, s) over extreme points mu and all signals.
/// Requires a full-support experiment (every entry positive).
BeliefSet eta_step(const MarkovChain& chain, const Experiment& experiment, const BeliefSet& set);

struct EtaResult {
  BeliefSet set;
  int iterations = 0;
  double gap = 0.0;  // distance to the next iterate
  bool converged = false;
};

/// Iterates eta_step from the full simplex until the next iterate is within
/// `tolerance` (or identical) or `max_iterations` is reached.
EtaResult eta_limit(const MarkovChain& chain, const Experiment& experiment, double tolerance,
                    int max_iterations = 200);

/// Every one-step posterior from the prior lies within `tolerance` (L1) of
/// the set.
bool regular_prior_check(const MarkovChain& chain, const Experiment& experiment, const VectorQ& prior,
                         const BeliefSet& set, double tolerance);

struct MergingReport {
  std::optional<int> horizon;
  std::vector<double> max_distance;  // entry n-1 is the profile at length n
  bool monotone = true;
};

/**
 * Least n for which, over every signal string of length n, the posteriors
 * started from any two degenerate initial states are within epsilon (L1).
 * Requires a strictly positive transition.
 */
MergingReport merging_horizon(const MarkovChain& chain, const Experiment& experiment, double epsilon,
                              int max_length = 12);

struct StoppingProblem {
  DecisionProblem problem;
  MarkovChain chain;
  int horizon = 1;
};

/**
 * Optimal finite-horizon stopping value. At each of periods 0..T-1 the
 * decision maker either acts on the current belief or waits; waiting moves
 * the state along the chain and reveals one signal. At period T she must act.
 */
Rational stopping_value(const StoppingProblem& stopping, const Experiment& experiment);

struct Counterexample {
  DecisionProblem problem;
  MarkovChain chain;
};

/**
 * When `garbled` is not a weighted garbling of `reference`, a decision
 * problem with prior `prior` and an i.i.d. chain under which the garbled
 * experiment has a strictly higher stopping value for horizons 1..4.
 */
std::optional<Counterexample> counterexample(const Experiment& garbled, const Experiment& reference,
                                             const Prior& prior);

}  // namespace infoorder

#endif  // INFOORDER_DYNAMICS_HPP
