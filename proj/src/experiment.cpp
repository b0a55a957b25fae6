#include "infoorder/experiment.hpp"

#include <algorithm>

namespace infoorder {

namespace {

bool proportional(const MatrixQ& m, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if ((m(i, a) == 0) != (m(i, b) == 0)) return false;
    for (Eigen::Index k = i + 1; k < m.rows(); ++k) {
      if (m(i, a) * m(k, b) != m(k, a) * m(i, b)) return false;
    }
  }
  return true;
}

void require_distinct(const Labels& labels, const std::string& what) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (std::find(labels.begin() + static_cast<std::ptrdiff_t>(i) + 1, labels.end(), labels[i]) != labels.end()) {
      throw InputError("duplicate " + what + " label \"" + labels[i] + "\"");
    }
  }
}

std::string fresh_label(const Labels& taken, std::string base) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
  return base;
}

}  // namespace

Labels default_labels(const std::string& stem, Eigen::Index count) {
  Labels out;
  for (Eigen::Index i = 0; i < count; ++i) out.push_back(stem + std::to_string(i + 1));
  return out;
}

bool is_stochastic(const MatrixQ& rows) {
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    if ((rows.row(i).array() < 0).any()) return false;
    if (rows.row(i).sum() != 1) return false;
  }
  return true;
}

Experiment validate_experiment(MatrixQ rows, Labels states, Labels signals) {
  if (rows.rows() == 0 || rows.cols() == 0) throw InputError("experiment has empty dimensions");
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      if (rows(i, j) < 0) {
        throw InputError("negative entry " + to_string(rows(i, j)) + " at state " +
                         std::to_string(i) + ", signal " + std::to_string(j));
      }
    }
    const Rational sum = rows.row(i).sum();
    if (sum != 1) {
      throw InputError("row " + std::to_string(i) + " sums to " + to_string(sum) + ", not 1");
    }
  }
  if (states.empty()) states = default_labels("theta", rows.rows());
  if (signals.empty()) signals = default_labels("s", rows.cols());
  if (static_cast<Eigen::Index>(states.size()) != rows.rows() ||
      static_cast<Eigen::Index>(signals.size()) != rows.cols()) {
    throw InputError("label count does not match matrix shape");
  }
  require_distinct(states, "state");
  require_distinct(signals, "signal");
  return Experiment{std::move(states), std::move(signals), std::move(rows)};
}

Experiment validate_experiment(const std::vector<std::vector<Rational>>& rows, Labels states,
                               Labels signals) {
  if (rows.empty() || rows.front().empty()) throw InputError("experiment has empty dimensions");
  const std::size_t width = rows.front().size();
  MatrixQ m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) throw InputError("experiment rows are not rectangular");
    for (std::size_t j = 0; j < width; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return validate_experiment(std::move(m), std::move(states), std::move(signals));
}

void require_same_states(const Experiment& a, const Experiment& b) {
  if (a.state_count() != b.state_count()) {
    throw InputError("experiments are defined over different state sets (" +
                     std::to_string(a.state_count()) + " vs " + std::to_string(b.state_count()) +
                     " states)");
  }
}

bool Prior::full_support() const { return (weights.array() > 0).all(); }

Prior make_prior(VectorQ weights) {
  if (weights.size() == 0) throw InputError("prior is empty");
  if ((weights.array() < 0).any()) throw InputError("prior has a negative entry");
  if (weights.sum() != 1) throw InputError("prior sums to " + to_string(weights.sum()) + ", not 1");
  return Prior{std::move(weights)};
}

Prior uniform_prior(Eigen::Index states) {
  return Prior{VectorQ::Constant(states, Rational(1, states))};
}

bool weight_check(const Experiment& experiment, const VectorQ& gamma) {
  if (gamma.size() != experiment.signal_count()) {
    throw InputError("weight has " + std::to_string(gamma.size()) + " entries, experiment has " +
                     std::to_string(experiment.signal_count()) + " signals");
  }
  if ((gamma.array() < 0).any()) return false;
  const VectorQ sums = experiment.matrix * gamma;
  return (sums.array() == Rational(1)).all();
}

Weight make_weight(const Experiment& experiment, VectorQ gamma) {
  if (!weight_check(experiment, gamma)) throw InputError("not a valid weight for the experiment");
  Weight w{std::move(gamma)};
  // Each weighted row sums to one, so some gamma(s) is at least one.
  if (w.size() < 1) throw std::logic_error("valid weight with size below one");
  return w;
}

Experiment apply_weight(const Weight& weight, const Experiment& experiment) {
  if (!weight_check(experiment, weight.gamma)) throw InputError("invalid weight");
  MatrixQ rows = experiment.matrix * weight.gamma.asDiagonal();
  return validate_experiment(std::move(rows), experiment.states, experiment.signals);
}

Experiment regularize(const Experiment& experiment) {
  const MatrixQ& m = experiment.matrix;
  std::vector<Eigen::Index> representative;
  std::vector<std::vector<Eigen::Index>> groups;
  for (Eigen::Index s = 0; s < m.cols(); ++s) {
    if (m.col(s).isZero()) continue;
    bool merged = false;
    for (std::size_t g = 0; g < representative.size(); ++g) {
      if (proportional(m, representative[g], s)) {
        groups[g].push_back(s);
        merged = true;
        break;
      }
    }
    if (!merged) {
      representative.push_back(s);
      groups.push_back({s});
    }
  }

  MatrixQ rows = MatrixQ::Zero(m.rows(), static_cast<Eigen::Index>(groups.size()));
  Labels signals;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::string label;
    for (Eigen::Index s : groups[g]) {
      rows.col(static_cast<Eigen::Index>(g)) += m.col(s);
      if (!label.empty()) label += "+";
      label += experiment.signals[static_cast<std::size_t>(s)];
    }
    signals.push_back(fresh_label(signals, std::move(label)));
  }
  return Experiment{experiment.states, std::move(signals), std::move(rows)};
}

Experiment dilute(const Experiment& experiment, const Rational& beta) {
  if (beta < 1) throw InputError("dilution factor must be at least 1, got " + to_string(beta));
  const Rational keep = Rational(1) / beta;
  MatrixQ rows(experiment.state_count(), experiment.signal_count() + 1);
  rows.leftCols(experiment.signal_count()) = experiment.matrix * keep;
  rows.col(experiment.signal_count()).setConstant(1 - keep);
  Labels signals = experiment.signals;
  signals.push_back(fresh_label(experiment.signals, "null"));
  return Experiment{experiment.states, std::move(signals), std::move(rows)};
}

Experiment residual_experiment(const Experiment& reference, const Weight& weight) {
  if (!weight_check(reference, weight.gamma)) throw InputError("invalid weight");
  const Rational size = weight.size();
  if (size == 1) {
    throw InputError("residual experiment is undefined for a weight of size 1 (Blackwell case)");
  }
  const Rational denominator = 1 - Rational(1) / size;
  VectorQ scale(weight.gamma.size());
  for (Eigen::Index s = 0; s < scale.size(); ++s) {
    scale(s) = (1 - weight.gamma(s) / size) / denominator;
  }
  MatrixQ rows = reference.matrix * scale.asDiagonal();
  return validate_experiment(std::move(rows), reference.states, reference.signals);
}

DecisionProblem make_decision_problem(MatrixQ payoffs, Prior prior, Labels actions) {
  if (payoffs.rows() == 0) throw InputError("decision problem needs at least one action");
  if (payoffs.cols() != prior.weights.size()) {
    throw InputError("payoff table has " + std::to_string(payoffs.cols()) + " states, prior has " +
                     std::to_string(prior.weights.size()));
  }
  if (actions.empty()) actions = default_labels("a", payoffs.rows());
  if (static_cast<Eigen::Index>(actions.size()) != payoffs.rows()) {
    throw InputError("action label count does not match payoff rows");
  }
  require_distinct(actions, "action");
  return DecisionProblem{std::move(actions), std::move(payoffs), std::move(prior)};
}

}  // namespace infoorder
