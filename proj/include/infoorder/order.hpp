#ifndef INFOORDER_ORDER_HPP
#define INFOORDER_ORDER_HPP

#include <optional>
#include <string>
#include <vector>

#include "infoorder/experiment.hpp"

namespace infoorder {

/**
 * Witness that `garbled` is a weighted garbling of `reference`.
 *
 * The bilinear pair (gamma, phi) is stored through its product
 * psi(s, s') = gamma(s') phi(s|s'), rows indexed by garbled signals s and
 * columns by reference signals s'. The defining identity is linear in psi:
 *
 *   pi(s|theta) = sum_{s'} psi(s, s') pi'(s'|theta).
 */
class GarblingCertificate {
 public:
  GarblingCertificate(Experiment garbled, Experiment reference, MatrixQ psi);

  const Experiment& garbled() const { return garbled_; }
  const Experiment& reference() const { return reference_; }
  const MatrixQ& psi() const { return psi_; }

  /// gamma(s') = sum_s psi(s, s').
  VectorQ gamma() const { return psi_.colwise().sum().transpose(); }
  /// phi(s|s') = psi(s, s') / gamma(s'); uniform where gamma(s') = 0.
  /// Column s' holds the distribution phi(.|s').
  MatrixQ phi() const;
  Rational size() const { return gamma().maxCoeff(); }

 private:
  Experiment garbled_;
  Experiment reference_;
  MatrixQ psi_;
};

/// Every violated certificate invariant, in human-readable form.
struct Verification {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

Verification verify_certificate(const GarblingCertificate& certificate);

/// Garbling LP outcome, keeping the Farkas vector when infeasible.
struct OrderCheck {
  std::optional<GarblingCertificate> certificate;
  VectorQ farkas;
};

/**
 * Blackwell garbling LP in phi(s|s') >= 0. Constraint layout (and so the
 * Farkas vector layout): first one row per reference signal s'
 * (sum_s phi(s|s') = 1), then one row per (s, theta) pair, s-major.
 */
OrderCheck check_blackwell_detailed(const Experiment& garbled, const Experiment& reference);
std::optional<GarblingCertificate> check_blackwell(const Experiment& garbled,
                                                   const Experiment& reference);

/// Weighted-garbling LP in psi(s, s') >= 0.
std::optional<GarblingCertificate> check_weighted(const Experiment& garbled,
                                                  const Experiment& reference);

struct SizedCertificate {
  Rational size;
  GarblingCertificate certificate;
};

/// Smallest size of a weighted garbling, with a witness attaining it.
std::optional<SizedCertificate> min_size(const Experiment& garbled, const Experiment& reference);

struct SizeInterval {
  Rational min;
  std::optional<Rational> max;  // empty when unbounded
  GarblingCertificate min_witness;
  std::optional<GarblingCertificate> max_witness;
};

/// [min, max] of attainable sizes; max is one LP per reference signal.
std::optional<SizeInterval> size_interval(const Experiment& garbled, const Experiment& reference);

/// psi = (1 - lambda) psi' + lambda psi''.
GarblingCertificate mix_certificates(const GarblingCertificate& first,
                                     const GarblingCertificate& second, const Rational& lambda);

/// Certificate for garbled(first) <= reference(second) from
/// garbled(first) <= reference(first) == garbled(second) <= reference(second).
GarblingCertificate compose(const GarblingCertificate& first, const GarblingCertificate& second);

/// Explicit certificate that `experiment` is a weighted garbling of
/// dilute(experiment, beta) with size beta.
GarblingCertificate dilution_certificate(const Experiment& experiment, const Rational& beta);

/**
 * Augmented experiment pi''(s', d | theta) over S' x {0, 1}.
 * `event(theta, s')` = pi''(s', 1 | theta) and
 * `complement(theta, s')` = pi''(s', 0 | theta).
 */
struct ConditionalExperiment {
  Experiment reference;
  MatrixQ event;
  MatrixQ complement;
  Rational alpha;

  /// pi''(s' | 1, theta) = event / alpha.
  Experiment conditioned() const;
};

/// Checks the marginal, constant-event-probability and conditional
/// independence conditions, plus alpha in (0, 1].
Verification verify_conditional(const ConditionalExperiment& conditional);

ConditionalExperiment to_conditional(const GarblingCertificate& certificate);

/// Rebuilds a certificate for `garbled` <= conditional.reference with
/// gamma(s') = kappa(1|s') / alpha.
GarblingCertificate from_conditional(const ConditionalExperiment& conditional,
                                     const Experiment& garbled);

}  // namespace infoorder

#endif  // INFOORDER_ORDER_HPP
