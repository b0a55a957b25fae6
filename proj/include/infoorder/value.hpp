#ifndef INFOORDER_VALUE_HPP
#define INFOORDER_VALUE_HPP

#include <cstdint>
#include <optional>

#include "infoorder/experiment.hpp"
#include "infoorder/order.hpp"

namespace infoorder {

struct ValueResult {
  Rational value;
  PolicyTable policy;
};

/// Optimal ex-ante payoff with the experiment, and an optimal policy
/// (lowest action index on ties).
ValueResult value(const DecisionProblem& problem, const Experiment& experiment);

/// Payoff of the best action under the prior alone.
Rational value_null(const DecisionProblem& problem);

/// Ex-ante payoff of a deterministic policy.
Rational policy_payoff(const DecisionProblem& problem, const Experiment& experiment,
                       const PolicyTable& policy);

/// V(reference) >= (1/beta) V(garbled) + (1 - 1/beta) V(no information).
struct BoundReport {
  Rational reference_value;
  Rational garbled_value;
  Rational null_value;
  Rational beta;
  Rational slack;  // left side minus right side
  bool holds = false;
};

BoundReport verify_bound(const DecisionProblem& problem, const Experiment& garbled,
                         const Experiment& reference, const Rational& beta);

/**
 * A decision problem violating the payoff bound at `beta`, or none when
 * dilute(garbled, beta) is a Blackwell garbling of the reference (in which
 * case the bound holds for every decision problem).
 *
 * Actions are the diluted experiment's signals, the prior is uniform and
 * payoffs are the Farkas multipliers of the infeasible Blackwell program,
 * scaled into [-1, 1].
 */
std::optional<DecisionProblem> falsify_bound(const Experiment& garbled, const Experiment& reference,
                                             const Rational& beta);

/// Deterministic in the seed. Payoffs p/d with 1 <= d <= max_denominator
/// and |p| <= d; the prior is full support.
DecisionProblem random_decision_problem(std::uint64_t seed, Eigen::Index state_count,
                                        Eigen::Index action_count, int max_denominator);

struct MixedStrategyPayoff {
  Rational mixed;           // U(sigma_bar; reference)
  Rational garbled_part;    // U(sigma; garbled)
  Rational residual_part;   // U(sigma'; residual experiment)
  Rational size;
  bool identity_holds = false;
};

/**
 * Payoff on the reference experiment of the strategy that, after s', follows
 * sigma through the certificate's kernel with probability gamma(s')/size and
 * sigma' otherwise. Requires size > 1.
 */
MixedStrategyPayoff mixed_strategy_payoff(const DecisionProblem& problem,
                                          const GarblingCertificate& certificate,
                                          const PolicyTable& garbled_policy,
                                          const PolicyTable& residual_policy);

}  // namespace infoorder

#endif  // INFOORDER_VALUE_HPP
