#ifndef INFOORDER_BELIEFS_HPP
#define INFOORDER_BELIEFS_HPP

#include <optional>
#include <vector>

#include "infoorder/experiment.hpp"
#include "infoorder/order.hpp"

namespace infoorder {

/// One support point of the posterior distribution: the signals that
/// induce it, the belief, and its probability.
struct PosteriorAtom {
  std::vector<Eigen::Index> signals;
  VectorQ belief;
  Rational probability;
};

struct PosteriorDistribution {
  Prior prior;
  std::vector<PosteriorAtom> atoms;

  /// sum_k probability_k belief_k; equals the prior exactly.
  VectorQ barycenter() const;
};

/// Bayes posteriors of every positive-probability signal, with signals that
/// induce the same belief merged into one atom.
PosteriorDistribution posteriors(const Experiment& experiment, const Prior& prior);

/// Bayes posterior for one signal. Throws on a zero-probability signal.
VectorQ bayes(const VectorQ& prior, const Experiment& experiment, Eigen::Index signal);

struct HullMembershipCertificate {
  VectorQ target;
  std::vector<VectorQ> generators;
  VectorQ coefficients;

  bool verify() const;
};

/// Hyperplane separating a point from a finite set: h.target > offset and
/// h.g <= offset for every generator g. Read off the hull LP's Farkas vector.
struct Separation {
  VectorQ normal;
  Rational offset;
};

struct HullResult {
  std::optional<HullMembershipCertificate> certificate;
  std::optional<Separation> separation;
};

HullResult hull_check(const VectorQ& target, const std::vector<VectorQ>& generators);
std::optional<HullMembershipCertificate> hull_membership(const VectorQ& target,
                                                         const std::vector<VectorQ>& generators);

/**
 * Coupling f(mu, mu') between the posterior distributions of the garbled
 * experiment (rows) and the regularized reference experiment (columns).
 */
struct CouplingCertificate {
  Experiment reference;  // regularized
  PosteriorDistribution garbled_posteriors;
  PosteriorDistribution reference_posteriors;
  MatrixQ joint;
  Rational size;
};

std::optional<CouplingCertificate> check_weighted_beliefs(const Experiment& garbled,
                                                          const Experiment& reference,
                                                          const Prior& prior);

struct CouplingVerification {
  Verification report;
  Rational realized_size;

  bool ok() const { return report.ok(); }
};

/// Barycenter, first-marginal and likelihood-ratio conditions, exact.
CouplingVerification verify_coupling(const CouplingCertificate& coupling, const Experiment& garbled,
                                     const Experiment& reference, const Prior& prior);

/// gamma(s') = f(mu'_{s'}) / q'(mu'_{s'}) on the regular reference.
Weight coupling_to_weight(const CouplingCertificate& coupling, const Experiment& reference,
                          const Prior& prior);

/// Pushes posteriors through a Blackwell garbling kernel to obtain the
/// size-one coupling of the garbled and reference posterior distributions.
CouplingCertificate coupling_from_blackwell(const GarblingCertificate& blackwell, const Prior& prior);

}  // namespace infoorder

#endif  // INFOORDER_BELIEFS_HPP
