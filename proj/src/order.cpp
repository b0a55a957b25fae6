#include "infoorder/order.hpp"

namespace infoorder {

namespace {

using Index = Eigen::Index;

// psi(s, s') lives at s * |S'| + s'.
Index psi_index(Index s, Index s_ref, Index n_ref) { return s * n_ref + s_ref; }

MatrixQ unpack_psi(const VectorQ& x, Index n, Index n_ref) {
  MatrixQ psi(n, n_ref);
  for (Index s = 0; s < n; ++s) {
    for (Index t = 0; t < n_ref; ++t) psi(s, t) = x(psi_index(s, t, n_ref));
  }
  return psi;
}

/// Rows pi(s|theta) = sum_{s'} psi(s,s') pi'(s'|theta) over `extra` trailing
/// variables that do not appear in them.
LinearProgram weighted_program(const Experiment& garbled, const Experiment& reference,
                               Index extra = 0) {
  require_same_states(garbled, reference);
  const Index n = garbled.signal_count();
  const Index n_ref = reference.signal_count();
  LinearProgram lp(n * n_ref + extra);
  for (Index s = 0; s < n; ++s) {
    for (Index theta = 0; theta < garbled.state_count(); ++theta) {
      VectorQ row = VectorQ::Zero(lp.variable_count());
      for (Index t = 0; t < n_ref; ++t) row(psi_index(s, t, n_ref)) = reference.matrix(theta, t);
      lp.add(std::move(row), Relation::Equal, garbled.matrix(theta, s));
    }
  }
  return lp;
}

VectorQ column_mass_row(Index n, Index n_ref, Index t, Index width) {
  VectorQ row = VectorQ::Zero(width);
  for (Index s = 0; s < n; ++s) row(psi_index(s, t, n_ref)) = 1;
  return row;
}

}  // namespace

GarblingCertificate::GarblingCertificate(Experiment garbled, Experiment reference, MatrixQ psi)
    : garbled_(std::move(garbled)), reference_(std::move(reference)), psi_(std::move(psi)) {
  if (psi_.rows() != garbled_.signal_count() || psi_.cols() != reference_.signal_count()) {
    throw InputError("certificate kernel has shape " + std::to_string(psi_.rows()) + "x" +
                     std::to_string(psi_.cols()) + ", expected " +
                     std::to_string(garbled_.signal_count()) + "x" +
                     std::to_string(reference_.signal_count()));
  }
}

MatrixQ GarblingCertificate::phi() const {
  const VectorQ g = gamma();
  MatrixQ out(psi_.rows(), psi_.cols());
  for (Index t = 0; t < psi_.cols(); ++t) {
    if (g(t) == 0) {
      out.col(t).setConstant(Rational(1, psi_.rows()));
    } else {
      out.col(t) = psi_.col(t) / g(t);
    }
  }
  return out;
}

Verification verify_certificate(const GarblingCertificate& c) {
  Verification v;
  const Experiment& pi = c.garbled();
  const Experiment& ref = c.reference();
  if (pi.state_count() != ref.state_count()) {
    v.violations.push_back("experiments have different state counts");
    return v;
  }
  const MatrixQ& psi = c.psi();
  for (Index s = 0; s < psi.rows(); ++s) {
    for (Index t = 0; t < psi.cols(); ++t) {
      if (psi(s, t) < 0) {
        v.violations.push_back("psi(" + pi.signals[static_cast<std::size_t>(s)] + ", " +
                               ref.signals[static_cast<std::size_t>(t)] + ") = " +
                               to_string(psi(s, t)) + " is negative");
      }
    }
  }
  // pi = pi' psi^T, both indexed (theta, s).
  const MatrixQ reproduced = ref.matrix * psi.transpose();
  for (Index theta = 0; theta < pi.state_count(); ++theta) {
    for (Index s = 0; s < pi.signal_count(); ++s) {
      if (reproduced(theta, s) != pi.matrix(theta, s)) {
        v.violations.push_back("identity fails at signal " + pi.signals[static_cast<std::size_t>(s)] +
                               ", state " + pi.states[static_cast<std::size_t>(theta)] + ": " +
                               to_string(reproduced(theta, s)) + " != " +
                               to_string(pi.matrix(theta, s)));
      }
    }
  }
  const VectorQ gamma = c.gamma();
  const VectorQ weighted = ref.matrix * gamma;
  for (Index theta = 0; theta < weighted.size(); ++theta) {
    if (weighted(theta) != 1) {
      v.violations.push_back("weight identity fails in state " +
                             ref.states[static_cast<std::size_t>(theta)] + ": " +
                             to_string(weighted(theta)));
    }
  }
  const MatrixQ phi = c.phi();
  for (Index t = 0; t < phi.cols(); ++t) {
    if (phi.col(t).sum() != 1 || (phi.col(t).array() < Rational(0)).any()) {
      v.violations.push_back("phi(.|" + ref.signals[static_cast<std::size_t>(t)] +
                             ") is not a distribution");
    }
  }
  return v;
}

OrderCheck check_blackwell_detailed(const Experiment& garbled, const Experiment& reference) {
  require_same_states(garbled, reference);
  const Index n = garbled.signal_count();
  const Index n_ref = reference.signal_count();
  LinearProgram lp(n * n_ref);
  for (Index t = 0; t < n_ref; ++t) {
    lp.add(column_mass_row(n, n_ref, t, lp.variable_count()), Relation::Equal, 1);
  }
  const LinearProgram identity = weighted_program(garbled, reference);
  for (const auto& c : identity.constraints) lp.constraints.push_back(c);

  const LpOutcome out = solve(lp);
  OrderCheck result;
  if (out.status == LpStatus::Infeasible) {
    result.farkas = out.farkas;
    return result;
  }
  result.certificate.emplace(garbled, reference, unpack_psi(out.solution, n, n_ref));
  return result;
}

std::optional<GarblingCertificate> check_blackwell(const Experiment& garbled,
                                                   const Experiment& reference) {
  return check_blackwell_detailed(garbled, reference).certificate;
}

std::optional<GarblingCertificate> check_weighted(const Experiment& garbled,
                                                  const Experiment& reference) {
  const LpOutcome out = solve(weighted_program(garbled, reference));
  if (out.status == LpStatus::Infeasible) return std::nullopt;
  return GarblingCertificate(garbled, reference,
                             unpack_psi(out.solution, garbled.signal_count(),
                                        reference.signal_count()));
}

std::optional<SizedCertificate> min_size(const Experiment& garbled, const Experiment& reference) {
  const Index n = garbled.signal_count();
  const Index n_ref = reference.signal_count();
  LinearProgram lp = weighted_program(garbled, reference, 1);
  const Index t_var = n * n_ref;
  for (Index t = 0; t < n_ref; ++t) {
    VectorQ row = column_mass_row(n, n_ref, t, lp.variable_count());
    row(t_var) = -1;
    lp.add(std::move(row), Relation::LessEqual, 0);
  }
  lp.objective(t_var) = 1;
  const LpOutcome out = solve(lp);
  if (out.status == LpStatus::Infeasible) return std::nullopt;
  if (out.status == LpStatus::Unbounded) throw std::logic_error("size minimization is bounded below");
  GarblingCertificate cert(garbled, reference, unpack_psi(out.solution, n, n_ref));
  if (cert.size() != out.objective_value) throw std::logic_error("size witness does not attain optimum");
  return SizedCertificate{out.objective_value, std::move(cert)};
}

std::optional<SizeInterval> size_interval(const Experiment& garbled, const Experiment& reference) {
  auto lower = min_size(garbled, reference);
  if (!lower) return std::nullopt;

  const Index n = garbled.signal_count();
  const Index n_ref = reference.signal_count();
  SizeInterval interval{lower->size, std::nullopt, lower->certificate, std::nullopt};
  bool unbounded = false;
  for (Index t = 0; t < n_ref && !unbounded; ++t) {
    LinearProgram lp = weighted_program(garbled, reference);
    lp.sense = Sense::Maximize;
    lp.objective = column_mass_row(n, n_ref, t, lp.variable_count());
    const LpOutcome out = solve(lp);
    if (out.status == LpStatus::Unbounded) {
      unbounded = true;
      break;
    }
    if (!interval.max || out.objective_value > *interval.max) {
      interval.max = out.objective_value;
      interval.max_witness.emplace(garbled, reference, unpack_psi(out.solution, n, n_ref));
    }
  }
  if (unbounded) {
    interval.max.reset();
    interval.max_witness.reset();
  } else if (interval.max_witness->size() != *interval.max) {
    throw std::logic_error("maximal size witness does not attain its size");
  }
  return interval;
}

GarblingCertificate mix_certificates(const GarblingCertificate& first,
                                     const GarblingCertificate& second, const Rational& lambda) {
  if (!(first.garbled() == second.garbled()) || !(first.reference() == second.reference())) {
    throw InputError("cannot mix certificates for different experiment pairs");
  }
  if (lambda < 0 || lambda > 1) throw InputError("mixing weight must lie in [0, 1]");
  return GarblingCertificate(first.garbled(), first.reference(),
                             (1 - lambda) * first.psi() + lambda * second.psi());
}

GarblingCertificate compose(const GarblingCertificate& first, const GarblingCertificate& second) {
  if (!(first.reference() == second.garbled())) {
    throw InputError("middle experiments of the composed certificates differ");
  }
  const VectorQ gamma1 = first.gamma();
  const MatrixQ phi1 = first.phi();   // (s, s')
  const VectorQ gamma2 = second.gamma();
  const MatrixQ phi2 = second.phi();  // (s', s'')

  const Index n = phi1.rows();
  const Index n_mid = phi1.cols();
  const Index n_out = phi2.cols();

  // gamma_hat(s'') = gamma2(s'') sum_{s'} gamma1(s') phi2(s'|s'')
  // phi_hat(s|s'') = sum_{s'} gamma1(s') phi1(s|s') phi2(s'|s'') / normalizer
  MatrixQ psi(n, n_out);
  for (Index u = 0; u < n_out; ++u) {
    Rational normalizer = 0;
    for (Index t = 0; t < n_mid; ++t) normalizer += gamma1(t) * phi2(t, u);
    const Rational gamma_hat = gamma2(u) * normalizer;
    for (Index s = 0; s < n; ++s) {
      Rational phi_hat;
      if (normalizer == 0) {
        phi_hat = Rational(1, n);
      } else {
        for (Index t = 0; t < n_mid; ++t) phi_hat += gamma1(t) * phi1(s, t) * phi2(t, u);
        phi_hat /= normalizer;
      }
      psi(s, u) = gamma_hat * phi_hat;
    }
  }
  return GarblingCertificate(first.garbled(), second.reference(), std::move(psi));
}

GarblingCertificate dilution_certificate(const Experiment& experiment, const Rational& beta) {
  const Experiment diluted = dilute(experiment, beta);
  const Index n = experiment.signal_count();
  MatrixQ psi = MatrixQ::Zero(n, n + 1);
  for (Index s = 0; s < n; ++s) psi(s, s) = beta;
  return GarblingCertificate(experiment, diluted, std::move(psi));
}

// ---------------------------------------------------------------------------

Experiment ConditionalExperiment::conditioned() const {
  return validate_experiment(MatrixQ(event / alpha), reference.states, reference.signals);
}

Verification verify_conditional(const ConditionalExperiment& c) {
  Verification v;
  const MatrixQ& base = c.reference.matrix;
  if (c.event.rows() != base.rows() || c.event.cols() != base.cols() ||
      c.complement.rows() != base.rows() || c.complement.cols() != base.cols()) {
    v.violations.push_back("conditional tables do not match the reference shape");
    return v;
  }
  if (c.alpha <= 0 || c.alpha > 1) v.violations.push_back("alpha " + to_string(c.alpha) + " outside (0, 1]");
  if ((c.event.array() < Rational(0)).any() || (c.complement.array() < Rational(0)).any()) {
    v.violations.push_back("negative conditional probability");
  }
  if (!(MatrixQ(c.event + c.complement) == base)) {
    v.violations.push_back("marginal over the event does not recover the reference experiment");
  }
  for (Index theta = 0; theta < base.rows(); ++theta) {
    if (c.event.row(theta).sum() != c.alpha) {
      v.violations.push_back("event probability in state " +
                             c.reference.states[static_cast<std::size_t>(theta)] + " is " +
                             to_string(c.event.row(theta).sum()) + ", not alpha");
    }
  }
  for (Index t = 0; t < base.cols(); ++t) {
    std::optional<Rational> kappa;
    for (Index theta = 0; theta < base.rows(); ++theta) {
      if (base(theta, t) == 0) {
        if (c.event(theta, t) != 0) v.violations.push_back("event mass on a null signal");
        continue;
      }
      const Rational ratio = c.event(theta, t) / base(theta, t);
      if (!kappa) {
        kappa = ratio;
      } else if (*kappa != ratio) {
        v.violations.push_back("event probability given signal " +
                               c.reference.signals[static_cast<std::size_t>(t)] +
                               " depends on the state");
        break;
      }
    }
  }
  return v;
}

ConditionalExperiment to_conditional(const GarblingCertificate& certificate) {
  if (!verify_certificate(certificate)) throw InputError("invalid certificate");
  const Experiment& ref = certificate.reference();
  const VectorQ gamma = certificate.gamma();
  const Rational size = gamma.maxCoeff();
  ConditionalExperiment out{ref, MatrixQ(ref.matrix * gamma.asDiagonal() / size), MatrixQ(), 0};
  out.complement = ref.matrix - out.event;
  out.alpha = Rational(1) / size;
  return out;
}

GarblingCertificate from_conditional(const ConditionalExperiment& conditional,
                                     const Experiment& garbled) {
  if (const Verification v = verify_conditional(conditional); !v) {
    throw InputError("conditional experiment is invalid: " + v.violations.front());
  }
  const MatrixQ& base = conditional.reference.matrix;
  VectorQ gamma = VectorQ::Zero(base.cols());
  for (Index t = 0; t < base.cols(); ++t) {
    for (Index theta = 0; theta < base.rows(); ++theta) {
      if (base(theta, t) != 0) {
        gamma(t) = conditional.event(theta, t) / base(theta, t) / conditional.alpha;
        break;
      }
    }
  }
  const auto blackwell = check_blackwell(garbled, conditional.conditioned());
  if (!blackwell) {
    throw InputError("conditioned experiment is not Blackwell more informative than the garbled one");
  }
  // psi(s, s') = phi(s|s') gamma(s').
  MatrixQ psi = blackwell->psi() * gamma.asDiagonal();
  GarblingCertificate out(garbled, conditional.reference, std::move(psi));
  if (!verify_certificate(out)) throw std::logic_error("rebuilt certificate failed to verify");
  return out;
}

}  // namespace infoorder
