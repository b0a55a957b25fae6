#include "infoorder/beliefs.hpp"

namespace infoorder {

namespace {

using Index = Eigen::Index;

std::string belief_string(const VectorQ& v) {
  std::string out = "(";
  for (Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v(i));
  return out + ")";
}

Index find_atom(const PosteriorDistribution& dist, const VectorQ& belief) {
  for (std::size_t k = 0; k < dist.atoms.size(); ++k) {
    if (dist.atoms[k].belief == belief) return static_cast<Index>(k);
  }
  return -1;
}

bool same_atoms(const PosteriorDistribution& a, const PosteriorDistribution& b) {
  if (a.atoms.size() != b.atoms.size() || !(a.prior.weights == b.prior.weights)) return false;
  for (std::size_t k = 0; k < a.atoms.size(); ++k) {
    if (!(a.atoms[k].belief == b.atoms[k].belief) ||
        a.atoms[k].probability != b.atoms[k].probability) {
      return false;
    }
  }
  return true;
}

}  // namespace

VectorQ PosteriorDistribution::barycenter() const {
  VectorQ out = VectorQ::Zero(prior.weights.size());
  for (const auto& atom : atoms) out += atom.probability * atom.belief;
  return out;
}

VectorQ bayes(const VectorQ& prior, const Experiment& experiment, Index signal) {
  VectorQ joint = experiment.matrix.col(signal).cwiseProduct(prior);
  const Rational mass = joint.sum();
  if (mass == 0) {
    throw InputError("signal " + experiment.signals[static_cast<std::size_t>(signal)] +
                     " has zero probability");
  }
  return joint / mass;
}

PosteriorDistribution posteriors(const Experiment& experiment, const Prior& prior) {
  if (prior.weights.size() != experiment.state_count()) {
    throw InputError("prior dimension does not match the experiment's states");
  }
  if (!prior.full_support()) throw InputError("posteriors require a full-support prior");
  PosteriorDistribution dist{prior, {}};
  for (Index s = 0; s < experiment.signal_count(); ++s) {
    const Rational mass = experiment.matrix.col(s).dot(prior.weights);
    if (mass == 0) continue;
    VectorQ belief = bayes(prior.weights, experiment, s);
    if (Index k = find_atom(dist, belief); k >= 0) {
      auto& atom = dist.atoms[static_cast<std::size_t>(k)];
      atom.signals.push_back(s);
      atom.probability += mass;
    } else {
      dist.atoms.push_back({{s}, std::move(belief), mass});
    }
  }
  return dist;
}

bool HullMembershipCertificate::verify() const {
  if (coefficients.size() != static_cast<Index>(generators.size())) return false;
  if ((coefficients.array() < Rational(0)).any() || coefficients.sum() != 1) return false;
  VectorQ combination = VectorQ::Zero(target.size());
  for (std::size_t k = 0; k < generators.size(); ++k) {
    combination += coefficients(static_cast<Index>(k)) * generators[k];
  }
  return combination == target;
}

HullResult hull_check(const VectorQ& target, const std::vector<VectorQ>& generators) {
  for (const auto& g : generators) {
    if (g.size() != target.size()) throw InputError("hull generators differ in dimension");
  }
  const Index k = static_cast<Index>(generators.size());
  LinearProgram lp(k);
  lp.add(VectorQ::Ones(k), Relation::Equal, 1);
  for (Index d = 0; d < target.size(); ++d) {
    VectorQ row(k);
    for (Index j = 0; j < k; ++j) row(j) = generators[static_cast<std::size_t>(j)](d);
    lp.add(std::move(row), Relation::Equal, target(d));
  }
  HullResult result;
  if (k == 0) {
    // No generators: separate with the zero normal and offset -1.
    result.separation = Separation{VectorQ::Zero(target.size()), Rational(-1)};
    return result;
  }
  const LpOutcome out = solve(lp);
  if (out.status == LpStatus::Infeasible) {
    result.separation = Separation{out.farkas.tail(target.size()), Rational(-out.farkas(0))};
    return result;
  }
  result.certificate = HullMembershipCertificate{target, generators, out.solution};
  return result;
}

std::optional<HullMembershipCertificate> hull_membership(const VectorQ& target,
                                                         const std::vector<VectorQ>& generators) {
  return hull_check(target, generators).certificate;
}

std::optional<CouplingCertificate> check_weighted_beliefs(const Experiment& garbled,
                                                          const Experiment& reference,
                                                          const Prior& prior) {
  require_same_states(garbled, reference);
  Experiment regular = regularize(reference);
  PosteriorDistribution q = posteriors(garbled, prior);
  PosteriorDistribution q_ref = posteriors(regular, prior);

  std::vector<VectorQ> generators;
  for (const auto& atom : q_ref.atoms) generators.push_back(atom.belief);

  MatrixQ joint = MatrixQ::Zero(static_cast<Index>(q.atoms.size()), static_cast<Index>(generators.size()));
  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    auto member = hull_membership(q.atoms[i].belief, generators);
    if (!member) return std::nullopt;
    joint.row(static_cast<Index>(i)) = q.atoms[i].probability * member->coefficients.transpose();
  }

  Rational size = 0;
  for (std::size_t k = 0; k < q_ref.atoms.size(); ++k) {
    const Rational ratio = joint.col(static_cast<Index>(k)).sum() / q_ref.atoms[k].probability;
    if (k == 0 || ratio > size) size = ratio;
  }
  return CouplingCertificate{std::move(regular), std::move(q), std::move(q_ref), std::move(joint), size};
}

CouplingVerification verify_coupling(const CouplingCertificate& f, const Experiment& garbled,
                                     const Experiment& reference, const Prior& prior) {
  CouplingVerification out;
  auto& v = out.report.violations;
  const PosteriorDistribution q = posteriors(garbled, prior);
  const Experiment regular = regularize(reference);
  const PosteriorDistribution q_ref = posteriors(regular, prior);
  if (!same_atoms(q, f.garbled_posteriors) || !same_atoms(q_ref, f.reference_posteriors)) {
    v.push_back("coupling was built for different posterior distributions");
    return out;
  }
  if (f.joint.rows() != static_cast<Index>(q.atoms.size()) ||
      f.joint.cols() != static_cast<Index>(q_ref.atoms.size())) {
    v.push_back("joint distribution has the wrong shape");
    return out;
  }
  if ((f.joint.array() < Rational(0)).any()) v.push_back("joint distribution has a negative entry");

  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    const Index row = static_cast<Index>(i);
    const Rational marginal = f.joint.row(row).sum();
    if (marginal != q.atoms[i].probability) {
      v.push_back("first marginal at " + belief_string(q.atoms[i].belief) + " is " +
                  to_string(marginal) + ", expected " + to_string(q.atoms[i].probability));
    }
    if (marginal == 0) continue;
    VectorQ mean = VectorQ::Zero(prior.weights.size());
    for (std::size_t k = 0; k < q_ref.atoms.size(); ++k) {
      mean += f.joint(row, static_cast<Index>(k)) * q_ref.atoms[k].belief;
    }
    mean /= marginal;
    if (!(mean == q.atoms[i].belief)) {
      v.push_back("barycenter of f(.|" + belief_string(q.atoms[i].belief) + ") is " +
                  belief_string(mean));
    }
  }

  for (std::size_t k = 0; k < q_ref.atoms.size(); ++k) {
    const Rational ratio = f.joint.col(static_cast<Index>(k)).sum() / q_ref.atoms[k].probability;
    if (k == 0 || ratio > out.realized_size) out.realized_size = ratio;
  }
  if (out.realized_size != f.size) {
    v.push_back("stated size " + to_string(f.size) + " differs from realized likelihood ratio " +
                to_string(out.realized_size));
  }
  return out;
}

Weight coupling_to_weight(const CouplingCertificate& f, const Experiment& reference,
                          const Prior& prior) {
  if (!(regularize(reference) == reference)) throw InputError("reference experiment is not regular");
  if (!(f.reference == reference)) throw InputError("coupling was built for a different reference");
  const PosteriorDistribution q_ref = posteriors(reference, prior);
  if (!same_atoms(q_ref, f.reference_posteriors)) {
    throw InputError("coupling was built for a different prior");
  }
  VectorQ gamma = VectorQ::Zero(reference.signal_count());
  for (std::size_t k = 0; k < q_ref.atoms.size(); ++k) {
    const auto& atom = q_ref.atoms[k];
    // Regular experiments induce one atom per signal.
    gamma(atom.signals.front()) = f.joint.col(static_cast<Index>(k)).sum() / atom.probability;
  }
  return make_weight(reference, std::move(gamma));
}

CouplingCertificate coupling_from_blackwell(const GarblingCertificate& blackwell, const Prior& prior) {
  const Experiment& garbled = blackwell.garbled();
  const Experiment regular = regularize(blackwell.reference());
  PosteriorDistribution q = posteriors(garbled, prior);
  PosteriorDistribution q_ref = posteriors(regular, prior);
  const PosteriorDistribution q_orig = posteriors(blackwell.reference(), prior);

  // Joint law of (s, s'): phi(s|s') Pr(s').
  const MatrixQ phi = blackwell.phi();
  MatrixQ joint = MatrixQ::Zero(static_cast<Index>(q.atoms.size()), static_cast<Index>(q_ref.atoms.size()));
  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    for (const auto& atom : q_orig.atoms) {
      const Index k = find_atom(q_ref, atom.belief);
      for (Index t : atom.signals) {
        const Rational mass = blackwell.reference().matrix.col(t).dot(prior.weights);
        for (Index s : q.atoms[i].signals) joint(static_cast<Index>(i), k) += phi(s, t) * mass;
      }
    }
  }
  Rational size = 0;
  for (std::size_t k = 0; k < q_ref.atoms.size(); ++k) {
    const Rational ratio = joint.col(static_cast<Index>(k)).sum() / q_ref.atoms[k].probability;
    if (k == 0 || ratio > size) size = ratio;
  }
  return CouplingCertificate{regular, std::move(q), std::move(q_ref), std::move(joint), size};
}

}  // namespace infoorder
