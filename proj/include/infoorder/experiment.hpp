#ifndef INFOORDER_EXPERIMENT_HPP
#define INFOORDER_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "infoorder/numerics.hpp"

namespace infoorder {

using Labels = std::vector<std::string>;

/**
 * A finite statistical experiment: for every state a distribution over
 * signals. `matrix(theta, s)` is the probability of signal s in state theta,
 * so rows are indexed by state and columns by signal.
 *
 * Instances are only produced by `validate_experiment` (or the functions
 * below, which preserve validity), so every row is a probability vector.
 */
struct Experiment {
  Labels states;
  Labels signals;
  MatrixQ matrix;

  Eigen::Index state_count() const { return matrix.rows(); }
  Eigen::Index signal_count() const { return matrix.cols(); }

  friend bool operator==(const Experiment& a, const Experiment& b) {
    return a.states == b.states && a.signals == b.signals && a.matrix == b.matrix;
  }
};

/// Default labels "theta1".."thetaN" / "s1".."sN".
Labels default_labels(const std::string& stem, Eigen::Index count);

/// Checks rectangularity, nonnegativity and exact unit row sums.
Experiment validate_experiment(MatrixQ rows, Labels states = {}, Labels signals = {});
Experiment validate_experiment(const std::vector<std::vector<Rational>>& rows,
                               Labels states = {}, Labels signals = {});

/// Throws InputError unless `a` and `b` are defined over the same states.
void require_same_states(const Experiment& a, const Experiment& b);

struct Prior {
  VectorQ weights;

  bool full_support() const;
};

/// Validates entries in [0,1] summing to one.
Prior make_prior(VectorQ weights);
Prior uniform_prior(Eigen::Index states);

/// Weight on the signals of a reference experiment.
struct Weight {
  VectorQ gamma;

  Rational size() const { return gamma.maxCoeff(); }
};

/// True iff gamma >= 0 and sum_s gamma(s) pi(s|theta) = 1 in every state.
/// Throws InputError on a length mismatch.
bool weight_check(const Experiment& experiment, const VectorQ& gamma);

/// Validating constructor; also asserts the size is at least one.
Weight make_weight(const Experiment& experiment, VectorQ gamma);

/// The experiment with entries gamma(s) pi(s|theta).
Experiment apply_weight(const Weight& weight, const Experiment& experiment);

/// Drops signals that are null in every state and merges signals whose
/// likelihood columns are positive multiples of one another. Merged labels
/// are joined with '+'.
Experiment regularize(const Experiment& experiment);

/// Observes the experiment with probability 1/beta and a null signal
/// otherwise. The null signal is appended as the last column.
Experiment dilute(const Experiment& experiment, const Rational& beta);

/// Rows ((1 - gamma(s)/size) / (1 - 1/size)) pi(s|theta). Requires size > 1.
Experiment residual_experiment(const Experiment& reference, const Weight& weight);

/// State-dependent decision problem with a prior.
/// `payoffs(a, theta)` is the payoff of action a in state theta.
struct DecisionProblem {
  Labels actions;
  MatrixQ payoffs;
  Prior prior;

  Eigen::Index action_count() const { return payoffs.rows(); }
  Eigen::Index state_count() const { return payoffs.cols(); }
};

DecisionProblem make_decision_problem(MatrixQ payoffs, Prior prior, Labels actions = {});

/// Deterministic strategy: action index per signal.
struct PolicyTable {
  std::vector<Eigen::Index> actions;
};

/// Row-stochastic check shared by experiments and Markov chains.
bool is_stochastic(const MatrixQ& rows);

}  // namespace infoorder

#endif  // INFOORDER_EXPERIMENT_HPP
