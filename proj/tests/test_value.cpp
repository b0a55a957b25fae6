#include <doctest.h>

#include "fixtures.hpp"
#include "infoorder/corpus.hpp"
#include "infoorder/value.hpp"

using namespace infoorder;
using fixtures::q;
using fixtures::rows;
using fixtures::vec;

TEST_CASE("value") {
  const DecisionProblem match = fixtures::matching();
  CHECK(value(match, fixtures::binary_symmetric(q(4, 5))).value == q(4, 5));
  CHECK(value(match, fixtures::binary_symmetric(q(3, 5))).value == q(3, 5));
  CHECK(value(match, fixtures::uninformative()).value == q(1, 2));
  const ValueResult ex = value(match, fixtures::example_one(q(9, 10)));
  CHECK(ex.value == q(7, 10));
  // s0' is a tie: lowest action index wins.
  CHECK(ex.policy.actions == std::vector<Eigen::Index>{0, 0, 1});
  CHECK_THROWS_AS(value(match, fixtures::perfect(3)), InputError);
}

TEST_CASE("value_null") {
  CHECK(value_null(fixtures::matching()) == q(1, 2));
  CHECK(value_null(make_decision_problem(rows({{q(2, 7), q(2, 7)}}), uniform_prior(2))) == q(2, 7));
  CHECK(value_null(make_decision_problem(rows({{q(1, 2), q(-3, 2)}}), uniform_prior(2))) == q(-1, 2));
}

TEST_CASE("information never hurts") {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const DecisionProblem d = random_decision_problem(static_cast<std::uint64_t>(i), 3, 1 + i % 4, 12);
    const Experiment e = random_experiment(rng, 3, 1 + i % 4, 12);
    CHECK(value(d, e).value >= value_null(d));
    CHECK(policy_payoff(d, e, value(d, e).policy) == value(d, e).value);
  }
}

TEST_CASE("verify_bound") {
  const DecisionProblem match = fixtures::matching();
  const BoundReport tight = verify_bound(match, fixtures::binary_symmetric(q(4, 5)), fixtures::example_one(q(9, 10)), q(3, 2));
  CHECK(tight.reference_value == q(7, 10));
  CHECK(tight.slack == 0);
  CHECK(tight.holds);

  const BoundReport bw = verify_bound(match, fixtures::binary_symmetric(q(3, 5)), fixtures::example_one(q(4, 5)), 1);
  // 1/4 + 2 (1/2)(4/5)(1/2)
  CHECK(bw.reference_value == q(13, 20));
  CHECK(bw.garbled_value == q(3, 5));
  CHECK(bw.holds);

  const BoundReport fails = verify_bound(match, fixtures::perfect(), fixtures::uninformative(), 2);
  CHECK(fails.reference_value == q(1, 2));
  CHECK(fails.slack == q(-1, 4));
  CHECK_FALSE(fails.holds);

  CHECK_THROWS_AS(verify_bound(match, fixtures::perfect(), fixtures::perfect(), q(1, 2)), InputError);
}

TEST_CASE("falsify_bound") {
  CHECK_FALSE(falsify_bound(fixtures::binary_symmetric(q(4, 5)), fixtures::example_one(q(9, 10)), q(3, 2)));
  CHECK_FALSE(falsify_bound(fixtures::binary_symmetric(q(4, 5)), fixtures::example_one(q(9, 10)), 2));

  // Below the minimal size the bound must fail for some problem.
  const auto below = falsify_bound(fixtures::binary_symmetric(q(4, 5)), fixtures::example_one(q(9, 10)), q(4, 3));
  REQUIRE(below);
  CHECK_FALSE(verify_bound(*below, fixtures::binary_symmetric(q(4, 5)), fixtures::example_one(q(9, 10)), q(4, 3)).holds);

  for (const Rational beta : {Rational(1), Rational(10)}) {
    const auto d = falsify_bound(fixtures::perfect(), fixtures::uninformative(), beta);
    REQUIRE(d);
    CHECK_FALSE(verify_bound(*d, fixtures::perfect(), fixtures::uninformative(), beta).holds);
    CHECK(d->payoffs.cwiseAbs().maxCoeff() == 1);
    CHECK(d->prior.weights == uniform_prior(2).weights);
    CHECK(d->action_count() == 3);
  }
}

TEST_CASE("random_decision_problem") {
  const DecisionProblem a = random_decision_problem(42, 3, 4, 12);
  const DecisionProblem b = random_decision_problem(42, 3, 4, 12);
  CHECK(a.payoffs == b.payoffs);
  CHECK(a.prior.weights == b.prior.weights);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DecisionProblem d = random_decision_problem(seed, 1 + seed % 4, 1 + seed % 3, 12);
    CHECK(d.payoffs.cwiseAbs().maxCoeff() <= 1);
    CHECK(d.prior.full_support());
    CHECK(d.prior.weights.sum() == 1);
  }
}

TEST_CASE("mixed_strategy_payoff") {
  const DecisionProblem match = fixtures::matching();
  const Experiment garbled = fixtures::binary_symmetric(q(4, 5));
  const Experiment reference = fixtures::example_one(q(9, 10));
  const auto m = min_size(garbled, reference);
  REQUIRE(m);
  const Weight w = make_weight(reference, m->certificate.gamma());
  const PolicyTable sigma = value(match, garbled).policy;
  const PolicyTable sigma_res = value(match, residual_experiment(reference, w)).policy;
  const MixedStrategyPayoff p = mixed_strategy_payoff(match, m->certificate, sigma, sigma_res);
  CHECK(p.identity_holds);
  CHECK(p.mixed == q(7, 10));

  // A constant strategy pays the same everywhere.
  const PolicyTable first{{0, 0}}, first_ref{{0, 0, 0}};
  const MixedStrategyPayoff c = mixed_strategy_payoff(match, m->certificate, first, first_ref);
  CHECK(c.mixed == q(1, 2));
  CHECK(c.garbled_part == q(1, 2));
  CHECK(c.residual_part == q(1, 2));

  CHECK_THROWS_AS(mixed_strategy_payoff(match, *check_blackwell(garbled, garbled), sigma, sigma), InputError);
}

TEST_CASE("decomposition identity on random certificates") {
  Rng rng(4);
  int checked = 0;
  for (const auto& pair : random_corpus(5, 200)) {
    const auto interval = size_interval(pair.garbled, pair.reference);
    if (!interval || !interval->max || *interval->max == 1) continue;
    const GarblingCertificate& cert = *interval->max_witness;
    const DecisionProblem d = random_decision_problem(rng(), pair.garbled.state_count(), 3, 12);
    const Experiment residual = residual_experiment(pair.reference, make_weight(pair.reference, cert.gamma()));
    std::uniform_int_distribution<Eigen::Index> act(0, 2);
    PolicyTable sigma, sigma_res;
    for (Eigen::Index s = 0; s < pair.garbled.signal_count(); ++s) sigma.actions.push_back(act(rng));
    for (Eigen::Index s = 0; s < residual.signal_count(); ++s) sigma_res.actions.push_back(act(rng));
    CHECK(mixed_strategy_payoff(d, cert, sigma, sigma_res).identity_holds);
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("bound holds at the minimal size") {
  std::uint64_t seed = 0;
  for (const auto& pair : random_corpus(6, 60)) {
    const auto m = min_size(pair.garbled, pair.reference);
    if (!m) {
      CHECK(falsify_bound(pair.garbled, pair.reference, 8));
      continue;
    }
    for (int k = 0; k < 20; ++k) {
      const DecisionProblem d = random_decision_problem(seed++, pair.garbled.state_count(), 3, 12);
      CHECK(verify_bound(d, pair.garbled, pair.reference, m->size).holds);
    }
  }
}
