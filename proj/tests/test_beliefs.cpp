#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "infoorder/beliefs.hpp"
#include "infoorder/corpus.hpp"

using namespace infoorder;
using fixtures::q;
using fixtures::rows;
using fixtures::vec;

namespace {

Rational mass_at(const PosteriorDistribution& d, const VectorQ& belief) {
  for (const auto& atom : d.atoms) {
    if (atom.belief == belief) return atom.probability;
  }
  return 0;
}

}  // namespace

TEST_CASE("posteriors") {
  const auto bs = posteriors(fixtures::binary_symmetric(q(4, 5)), uniform_prior(2));
  REQUIRE(bs.atoms.size() == 2);
  CHECK(mass_at(bs, vec({q(4, 5), q(1, 5)})) == q(1, 2));
  CHECK(mass_at(bs, vec({q(1, 5), q(4, 5)})) == q(1, 2));

  const auto ex1 = posteriors(fixtures::example_one(q(4, 5)), uniform_prior(2));
  REQUIRE(ex1.atoms.size() == 3);
  CHECK(mass_at(ex1, vec({q(1, 2), q(1, 2)})) == q(1, 2));
  CHECK(mass_at(ex1, vec({q(4, 5), q(1, 5)})) == q(1, 4));
  CHECK(mass_at(ex1, vec({q(1, 5), q(4, 5)})) == q(1, 4));

  const Prior prior = make_prior(vec({q(1, 3), q(2, 3)}));
  const auto none = posteriors(fixtures::uninformative(2, 3), prior);
  REQUIRE(none.atoms.size() == 1);
  CHECK(none.atoms[0].belief == prior.weights);
  CHECK(none.atoms[0].probability == 1);
  CHECK(none.atoms[0].signals.size() == 3);

  CHECK_THROWS_AS(posteriors(fixtures::perfect(), make_prior(vec({0, 1}))), InputError);
  CHECK_THROWS_AS(posteriors(fixtures::perfect(), uniform_prior(3)), InputError);
}

TEST_CASE("posteriors are a martingale") {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index states = 1 + i % 4;
    const Experiment e = random_experiment(rng, states, 1 + i % 5, 12);
    const Prior prior{random_full_support(rng, states, 12)};
    const auto d = posteriors(e, prior);
    CHECK(d.barycenter() == prior.weights);
    Rational total = 0;
    for (const auto& atom : d.atoms) total += atom.probability;
    CHECK(total == 1);
  }
}

TEST_CASE("bayes") {
  CHECK(bayes(uniform_prior(2).weights, fixtures::binary_symmetric(q(3, 5)), 0) == vec({q(3, 5), q(2, 5)}));
  CHECK_THROWS_AS(bayes(vec({1, 0}), fixtures::perfect(), 1), InputError);
}

TEST_CASE("hull_membership") {
  const auto a = hull_membership(vec({q(3, 5), q(2, 5)}), {vec({q(9, 10), q(1, 10)}), vec({q(1, 10), q(9, 10)})});
  REQUIRE(a);
  CHECK(a->coefficients == vec({q(5, 8), q(3, 8)}));
  CHECK(a->verify());

  CHECK_FALSE(hull_membership(vec({1, 0}), {vec({q(1, 2), q(1, 2)})}));

  const VectorQ mu = vec({q(1, 3), q(1, 6), q(1, 2)});
  const auto c = hull_membership(mu, {mu});
  REQUIRE(c);
  CHECK(c->coefficients == vec({1}));
}

TEST_CASE("hull_check separates outside points") {
  const std::vector<VectorQ> gens{vec({q(2, 5), q(3, 5)}), vec({q(3, 5), q(2, 5)})};
  const HullResult r = hull_check(vec({q(9, 10), q(1, 10)}), gens);
  REQUIRE(r.separation);
  CHECK_FALSE(r.certificate);
  const VectorQ target = vec({q(9, 10), q(1, 10)});
  CHECK(r.separation->normal.dot(target) > r.separation->offset);
  for (const auto& g : gens) CHECK(r.separation->normal.dot(g) <= r.separation->offset);

  HullMembershipCertificate broken{vec({q(1, 2), q(1, 2)}), gens, vec({q(1, 2), q(1, 2)})};
  CHECK(broken.verify());
  broken.coefficients = vec({q(3, 4), q(1, 2)});
  CHECK_FALSE(broken.verify());
}

TEST_CASE("check_weighted_beliefs") {
  const Experiment e = fixtures::example_one(q(4, 5));
  const auto self = check_weighted_beliefs(e, e, uniform_prior(2));
  REQUIRE(self);
  CHECK(self->size == 1);
  // Diagonal coupling.
  for (Eigen::Index i = 0; i < self->joint.rows(); ++i) {
    for (Eigen::Index k = 0; k < self->joint.cols(); ++k) {
      const bool same = self->garbled_posteriors.atoms[static_cast<std::size_t>(i)].belief ==
                        self->reference_posteriors.atoms[static_cast<std::size_t>(k)].belief;
      CHECK(self->joint(i, k) == (same ? self->garbled_posteriors.atoms[static_cast<std::size_t>(i)].probability : 0));
    }
  }

  const Experiment bs = fixtures::binary_symmetric(q(4, 5));
  const Experiment ref = fixtures::example_one(q(9, 10));
  const auto c = check_weighted_beliefs(bs, ref, uniform_prior(2));
  REQUIRE(c);
  CHECK(verify_coupling(*c, bs, ref, uniform_prior(2)).ok());
  CHECK(check_weighted(bs, ref).has_value());
  // (4/5, 1/5) = 7/8 (9/10, 1/10) + 1/8 (1/10, 9/10).
  const auto chi = hull_membership(vec({q(4, 5), q(1, 5)}), {vec({q(9, 10), q(1, 10)}), vec({q(1, 10), q(9, 10)})});
  CHECK(chi->coefficients == vec({q(7, 8), q(1, 8)}));

  CHECK_FALSE(check_weighted_beliefs(fixtures::perfect(), fixtures::uninformative(), uniform_prior(2)));
}

TEST_CASE("verify_coupling") {
  const Experiment bs = fixtures::binary_symmetric(q(3, 5));
  const Experiment ref = fixtures::example_one(q(4, 5));
  const Prior prior = make_prior(vec({q(1, 3), q(2, 3)}));
  const auto c = check_weighted_beliefs(bs, ref, prior);
  REQUIRE(c);
  CHECK(verify_coupling(*c, bs, ref, prior).ok());

  // Shift mass between two cells of one row: marginal kept, barycenter broken.
  CouplingCertificate broken = *c;
  Eigen::Index row = 0, from = -1, to = -1;
  for (Eigen::Index k = 0; k < broken.joint.cols(); ++k) {
    if (broken.joint(row, k) > 0 && from < 0) from = k;
    else if (to < 0) to = k;
  }
  REQUIRE(from >= 0);
  REQUIRE(to >= 0);
  const Rational delta = broken.joint(row, from) / 2;
  broken.joint(row, from) -= delta;
  broken.joint(row, to) += delta;
  broken.size = verify_coupling(broken, bs, ref, prior).realized_size;
  CHECK_FALSE(verify_coupling(broken, bs, ref, prior).ok());

  CouplingCertificate wrong_size = *c;
  wrong_size.size += 1;
  CHECK_FALSE(verify_coupling(wrong_size, bs, ref, prior).ok());

  const auto bw = check_blackwell(bs, ref);
  REQUIRE(bw);
  const CouplingCertificate pushed = coupling_from_blackwell(*bw, prior);
  CHECK(verify_coupling(pushed, bs, ref, prior).ok());
  CHECK(pushed.size == 1);
}

TEST_CASE("coupling_to_weight") {
  const Experiment e = fixtures::binary_symmetric(q(3, 5));
  const auto diag = check_weighted_beliefs(e, e, uniform_prior(2));
  CHECK(coupling_to_weight(*diag, e, uniform_prior(2)).gamma == VectorQ::Ones(2));

  // Null-signal reference: all garbled mass on the two informative posteriors.
  const Experiment ref = fixtures::example_one(q(4, 5));
  const Prior prior = uniform_prior(2);
  CouplingCertificate f = *check_weighted_beliefs(e, ref, prior);
  f.joint.setZero();
  const auto index = [&](const PosteriorDistribution& d, const VectorQ& b) {
    for (std::size_t k = 0; k < d.atoms.size(); ++k) {
      if (d.atoms[k].belief == b) return static_cast<Eigen::Index>(k);
    }
    FAIL("missing atom");
    return Eigen::Index(-1);
  };
  const VectorQ hi = vec({q(4, 5), q(1, 5)}), lo = vec({q(1, 5), q(4, 5)});
  const Eigen::Index g_hi = index(f.garbled_posteriors, vec({q(3, 5), q(2, 5)}));
  const Eigen::Index g_lo = index(f.garbled_posteriors, vec({q(2, 5), q(3, 5)}));
  // (3/5, 2/5) = 2/3 (4/5, 1/5) + 1/3 (1/5, 4/5); each garbled atom has mass 1/2.
  f.joint(g_hi, index(f.reference_posteriors, hi)) = q(1, 3);
  f.joint(g_hi, index(f.reference_posteriors, lo)) = q(1, 6);
  f.joint(g_lo, index(f.reference_posteriors, lo)) = q(1, 3);
  f.joint(g_lo, index(f.reference_posteriors, hi)) = q(1, 6);
  f.size = 2;
  REQUIRE(verify_coupling(f, e, ref, prior).ok());
  const Weight w = coupling_to_weight(f, ref, prior);
  CHECK(w.gamma == vec({0, 2, 2}));
  CHECK(check_blackwell(e, apply_weight(w, ref)));

  const Experiment bs = fixtures::binary_symmetric(q(4, 5));
  const Experiment ref9 = fixtures::example_one(q(9, 10));
  const auto c = check_weighted_beliefs(bs, ref9, prior);
  const Weight w9 = coupling_to_weight(*c, ref9, prior);
  CHECK(w9.size() >= q(3, 2));
  CHECK(check_blackwell(bs, apply_weight(w9, ref9)));

  CHECK_THROWS_AS(coupling_to_weight(*diag, dilute(e, 1), uniform_prior(2)), InputError);
}

TEST_CASE("coupling weights satisfy the weight identity and dominate") {
  for (const auto& pair : random_corpus(9, 120)) {
    const Eigen::Index states = pair.garbled.state_count();
    Rng rng(states);
    const Prior prior{random_full_support(rng, states, 12)};
    const auto c = check_weighted_beliefs(pair.garbled, pair.reference, prior);
    if (!c) continue;
    const Weight w = coupling_to_weight(*c, c->reference, prior);
    CHECK(weight_check(c->reference, w.gamma));
    CHECK(check_blackwell(pair.garbled, apply_weight(w, c->reference)));
  }
}

TEST_CASE("the order depends only on posterior supports") {
  Rng rng(13);
  for (const auto& pair : random_corpus(21, 120)) {
    const auto interval = size_interval(pair.reference, pair.reference);
    if (!interval || !interval->max_witness) continue;
    // Reweight the reference by a non-trivial weight; the posterior support
    // is unchanged apart from signals that lose all mass.
    const Weight w = make_weight(pair.reference, interval->max_witness->gamma());
    const Experiment reweighted = apply_weight(w, pair.reference);
    if ((w.gamma.array() == Rational(0)).any()) continue;
    const Prior prior{random_full_support(rng, pair.garbled.state_count(), 12)};
    CHECK(check_weighted_beliefs(pair.garbled, pair.reference, prior).has_value() ==
          check_weighted_beliefs(pair.garbled, reweighted, prior).has_value());
  }
}

TEST_CASE("belief-hull path agrees with the LP path") {
  Rng rng(77);
  for (const auto& pair : random_corpus(99, 150)) {
    const bool lp = check_weighted(pair.garbled, pair.reference).has_value();
    for (int k = 0; k < 3; ++k) {
      const Prior prior{random_full_support(rng, pair.garbled.state_count(), 12)};
      CHECK(check_weighted_beliefs(pair.garbled, pair.reference, prior).has_value() == lp);
    }
  }
}
