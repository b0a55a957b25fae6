#include "infoorder/value.hpp"

#include <random>

namespace infoorder {

namespace {

using Index = Eigen::Index;

void require_problem_states(const DecisionProblem& problem, const Experiment& experiment) {
  if (problem.state_count() != experiment.state_count()) {
    throw InputError("decision problem and experiment have different state counts");
  }
}

// Row a: sum_theta u(a, theta) pi(s|theta) mu0(theta) for every s.
MatrixQ signal_payoffs(const DecisionProblem& problem, const Experiment& experiment) {
  return problem.payoffs * problem.prior.weights.asDiagonal() * experiment.matrix;
}

}  // namespace

ValueResult value(const DecisionProblem& problem, const Experiment& experiment) {
  require_problem_states(problem, experiment);
  const MatrixQ table = signal_payoffs(problem, experiment);
  ValueResult out;
  out.policy.actions.resize(static_cast<std::size_t>(table.cols()));
  for (Index s = 0; s < table.cols(); ++s) {
    Index best = 0;
    for (Index a = 1; a < table.rows(); ++a) {
      if (table(a, s) > table(best, s)) best = a;
    }
    out.policy.actions[static_cast<std::size_t>(s)] = best;
    out.value += table(best, s);
  }
  return out;
}

Rational value_null(const DecisionProblem& problem) {
  const VectorQ expected = problem.payoffs * problem.prior.weights;
  return expected.maxCoeff();
}

Rational policy_payoff(const DecisionProblem& problem, const Experiment& experiment,
                       const PolicyTable& policy) {
  require_problem_states(problem, experiment);
  if (static_cast<Index>(policy.actions.size()) != experiment.signal_count()) {
    throw InputError("policy does not cover every signal");
  }
  const MatrixQ table = signal_payoffs(problem, experiment);
  Rational total = 0;
  for (Index s = 0; s < table.cols(); ++s) total += table(policy.actions[static_cast<std::size_t>(s)], s);
  return total;
}

BoundReport verify_bound(const DecisionProblem& problem, const Experiment& garbled,
                         const Experiment& reference, const Rational& beta) {
  if (beta < 1) throw InputError("beta must be at least 1, got " + to_string(beta));
  require_same_states(garbled, reference);
  BoundReport r;
  r.reference_value = value(problem, reference).value;
  r.garbled_value = value(problem, garbled).value;
  r.null_value = value_null(problem);
  r.beta = beta;
  const Rational keep = Rational(1) / beta;
  r.slack = r.reference_value - (keep * r.garbled_value + (1 - keep) * r.null_value);
  r.holds = r.slack >= 0;
  return r;
}

std::optional<DecisionProblem> falsify_bound(const Experiment& garbled, const Experiment& reference,
                                             const Rational& beta) {
  const Experiment diluted = dilute(garbled, beta);
  const OrderCheck check = check_blackwell_detailed(diluted, reference);
  if (check.certificate) return std::nullopt;

  // Multipliers of the identity rows (s, theta) follow the |S'| mass rows.
  const Index n_ref = reference.signal_count();
  const Index states = diluted.state_count();
  MatrixQ payoffs(diluted.signal_count(), states);
  for (Index s = 0; s < diluted.signal_count(); ++s) {
    for (Index theta = 0; theta < states; ++theta) payoffs(s, theta) = check.farkas(n_ref + s * states + theta);
  }
  const Rational scale = payoffs.cwiseAbs().maxCoeff();
  if (scale == 0) throw std::logic_error("Farkas certificate has no payoff component");
  payoffs /= scale;

  DecisionProblem problem = make_decision_problem(std::move(payoffs), uniform_prior(states), diluted.signals);
  if (verify_bound(problem, garbled, reference, beta).holds) {
    throw std::logic_error("constructed decision problem does not violate the bound");
  }
  return problem;
}

DecisionProblem random_decision_problem(std::uint64_t seed, Index state_count, Index action_count,
                                        int max_denominator) {
  if (state_count < 1 || action_count < 1 || max_denominator < 1) {
    throw InputError("random decision problem needs positive counts");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> denominator(1, max_denominator);
  MatrixQ payoffs(action_count, state_count);
  for (Index a = 0; a < action_count; ++a) {
    for (Index theta = 0; theta < state_count; ++theta) {
      const int d = denominator(rng);
      std::uniform_int_distribution<int> numerator(-d, d);
      payoffs(a, theta) = Rational(numerator(rng), d);
    }
  }
  std::uniform_int_distribution<int> mass(1, max_denominator);
  VectorQ prior(state_count);
  for (Index theta = 0; theta < state_count; ++theta) prior(theta) = mass(rng);
  prior /= prior.sum();
  return make_decision_problem(std::move(payoffs), make_prior(std::move(prior)));
}

MixedStrategyPayoff mixed_strategy_payoff(const DecisionProblem& problem,
                                          const GarblingCertificate& certificate,
                                          const PolicyTable& garbled_policy,
                                          const PolicyTable& residual_policy) {
  if (!verify_certificate(certificate)) throw InputError("invalid certificate");
  const Experiment& garbled = certificate.garbled();
  const Experiment& reference = certificate.reference();
  require_problem_states(problem, reference);
  const Weight weight = make_weight(reference, certificate.gamma());
  const Rational size = weight.size();
  if (size == 1) throw InputError("mixed strategy needs a certificate of size above 1");
  if (static_cast<Index>(garbled_policy.actions.size()) != garbled.signal_count() ||
      static_cast<Index>(residual_policy.actions.size()) != reference.signal_count()) {
    throw InputError("policy does not cover every signal");
  }

  const MatrixQ phi = certificate.phi();
  const auto expected = [&](Index action, Index s_ref) {
    // sum_theta u(a, theta) pi'(s'|theta) mu0(theta)
    Rational total = 0;
    for (Index theta = 0; theta < reference.state_count(); ++theta) {
      total += problem.payoffs(action, theta) * reference.matrix(theta, s_ref) *
               problem.prior.weights(theta);
    }
    return total;
  };

  MixedStrategyPayoff out;
  out.size = size;
  for (Index t = 0; t < reference.signal_count(); ++t) {
    const Rational follow = weight.gamma(t) / size;
    Rational through_kernel = 0;
    for (Index s = 0; s < garbled.signal_count(); ++s) {
      through_kernel += phi(s, t) * expected(garbled_policy.actions[static_cast<std::size_t>(s)], t);
    }
    out.mixed += follow * through_kernel +
                 (1 - follow) * expected(residual_policy.actions[static_cast<std::size_t>(t)], t);
  }
  out.garbled_part = policy_payoff(problem, garbled, garbled_policy);
  out.residual_part = policy_payoff(problem, residual_experiment(reference, weight), residual_policy);
  const Rational keep = Rational(1) / size;
  out.identity_holds = out.mixed == keep * out.garbled_part + (1 - keep) * out.residual_part;
  return out;
}

}  // namespace infoorder
