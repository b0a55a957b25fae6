#include "infoorder/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "infoorder/beliefs.hpp"
#include "infoorder/order.hpp"

namespace infoorder {

namespace {

using Index = Eigen::Index;

void require_chain_states(const MarkovChain& chain, const Experiment& experiment) {
  if (chain.state_count() != experiment.state_count()) {
    throw InputError("chain and experiment have different state counts");
  }
}

Rational cross(const VectorQ& o, const VectorQ& a, const VectorQ& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

bool lex_less(const VectorQ& a, const VectorQ& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

// Andrew's monotone chain on the first two coordinates (the third is implied),
// dropping collinear points.
std::vector<VectorQ> polygon_hull(std::vector<VectorQ> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<VectorQ> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

bool MarkovChain::strictly_positive() const { return (transition.array() > Rational(0)).all(); }

bool MarkovChain::irreducible() const {
  const Index n = state_count();
  for (Index start = 0; start < n; ++start) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::queue<Index> frontier;
    frontier.push(start);
    seen[static_cast<std::size_t>(start)] = true;
    while (!frontier.empty()) {
      const Index u = frontier.front();
      frontier.pop();
      for (Index v = 0; v < n; ++v) {
        if (transition(u, v) > 0 && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          frontier.push(v);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
  }
  return true;
}

bool MarkovChain::aperiodic() const {
  // Period of the class of state 0: gcd of level(u) + 1 - level(v) over edges.
  const Index n = state_count();
  std::vector<long> level(static_cast<std::size_t>(n), -1);
  std::queue<Index> frontier;
  level[0] = 0;
  frontier.push(0);
  long period = 0;
  while (!frontier.empty()) {
    const Index u = frontier.front();
    frontier.pop();
    for (Index v = 0; v < n; ++v) {
      if (transition(u, v) == 0) continue;
      auto& lv = level[static_cast<std::size_t>(v)];
      if (lv < 0) {
        lv = level[static_cast<std::size_t>(u)] + 1;
        frontier.push(v);
      } else {
        period = std::gcd(period, std::abs(level[static_cast<std::size_t>(u)] + 1 - lv));
      }
    }
  }
  return period == 1;
}

MarkovChain make_chain(MatrixQ transition, Labels states) {
  if (transition.rows() == 0 || transition.rows() != transition.cols()) {
    throw InputError("transition matrix must be square and nonempty");
  }
  if (!is_stochastic(transition)) throw InputError("transition rows must be distributions");
  if (states.empty()) states = default_labels("theta", transition.rows());
  if (static_cast<Index>(states.size()) != transition.rows()) {
    throw InputError("state label count does not match transition matrix");
  }
  return MarkovChain{std::move(states), std::move(transition)};
}

MarkovChain iid_chain(const VectorQ& distribution) {
  MatrixQ rows(distribution.size(), distribution.size());
  for (Index i = 0; i < rows.rows(); ++i) rows.row(i) = distribution.transpose();
  return make_chain(std::move(rows));
}

VectorQ signal_probabilities(const MarkovChain& chain, const Experiment& experiment,
                             const VectorQ& belief) {
  require_chain_states(chain, experiment);
  const VectorQ predicted = chain.transition.transpose() * belief;
  return experiment.matrix.transpose() * predicted;
}

VectorQ update(const MarkovChain& chain, const Experiment& experiment, const VectorQ& belief,
               Index signal) {
  require_chain_states(chain, experiment);
  const VectorQ predicted = chain.transition.transpose() * belief;
  VectorQ joint = experiment.matrix.col(signal).cwiseProduct(predicted);
  const Rational mass = joint.sum();
  if (mass == 0) {
    throw InputError("signal " + experiment.signals[static_cast<std::size_t>(signal)] +
                     " has zero probability after the transition");
  }
  return joint / mass;
}

// ---------------------------------------------------------------------------

BeliefSet::BeliefSet(std::vector<VectorQ> points) {
  if (points.empty()) throw InputError("belief set needs at least one point");
  const Index dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw InputError("belief set points differ in dimension");
  }
  if (dim > 3) throw InputError("belief sets support at most three states");
  if (dim == 3) {
    points_ = polygon_hull(std::move(points));
  } else if (dim == 2) {
    const auto [lo, hi] = std::minmax_element(points.begin(), points.end(), lex_less);
    points_.push_back(*lo);
    if (!(*hi == *lo)) points_.push_back(*hi);
  } else {
    points_.push_back(points.front());
  }
}

BeliefSet BeliefSet::simplex(Index states) {
  std::vector<VectorQ> vertices;
  for (Index i = 0; i < states; ++i) vertices.push_back(VectorQ::Unit(states, i));
  return BeliefSet(std::move(vertices));
}

bool operator==(const BeliefSet& a, const BeliefSet& b) {
  std::vector<VectorQ> x = a.points_, y = b.points_;
  std::sort(x.begin(), x.end(), lex_less);
  std::sort(y.begin(), y.end(), lex_less);
  return x == y;
}

Rational l1_distance(const VectorQ& point, const BeliefSet& set) {
  const auto& ext = set.extreme_points();
  const Index k = static_cast<Index>(ext.size());
  const Index d = point.size();
  // chi (k), excess+ (d), excess- (d)
  LinearProgram lp(k + 2 * d);
  VectorQ mass = VectorQ::Zero(lp.variable_count());
  mass.head(k).setOnes();
  lp.add(std::move(mass), Relation::Equal, 1);
  for (Index i = 0; i < d; ++i) {
    VectorQ row = VectorQ::Zero(lp.variable_count());
    for (Index j = 0; j < k; ++j) row(j) = ext[static_cast<std::size_t>(j)](i);
    row(k + i) = 1;
    row(k + d + i) = -1;
    lp.add(std::move(row), Relation::Equal, point(i));
  }
  lp.objective.tail(2 * d).setOnes();
  const LpOutcome out = solve(lp);
  if (out.status != LpStatus::Optimal) throw std::logic_error("distance program must be optimal");
  return out.objective_value;
}

Rational hausdorff_gap(const BeliefSet& outer, const BeliefSet& inner) {
  Rational gap = 0;
  for (const auto& p : outer.extreme_points()) gap = std::max(gap, l1_distance(p, inner));
  return gap;
}

BeliefSet eta_step(const MarkovChain& chain, const Experiment& experiment, const BeliefSet& set) {
  require_chain_states(chain, experiment);
  if (!(experiment.matrix.array() > Rational(0)).all()) {
    throw InputError("belief-set iteration requires every signal to have positive probability in every state");
  }
  std::vector<VectorQ> images;
  for (const auto& mu : set.extreme_points()) {
    for (Index s = 0; s < experiment.signal_count(); ++s) images.push_back(update(chain, experiment, mu, s));
  }
  return BeliefSet(std::move(images));
}

EtaResult eta_limit(const MarkovChain& chain, const Experiment& experiment, double tolerance,
                    int max_iterations) {
  if (experiment.state_count() > 3) throw InputError("belief-set iteration supports at most three states");
  EtaResult result{BeliefSet::simplex(experiment.state_count())};
  for (int n = 0; n < max_iterations; ++n) {
    BeliefSet next = eta_step(chain, experiment, result.set);
    const bool identical = next == result.set;
    result.gap = identical ? 0.0 : to_double(hausdorff_gap(result.set, next));
    if (identical || result.gap < tolerance) {
      result.converged = true;
      return result;
    }
    result.set = std::move(next);
    result.iterations = n + 1;
  }
  return result;
}

bool regular_prior_check(const MarkovChain& chain, const Experiment& experiment, const VectorQ& prior,
                         const BeliefSet& set, double tolerance) {
  const VectorQ probabilities = signal_probabilities(chain, experiment, prior);
  for (Index s = 0; s < experiment.signal_count(); ++s) {
    if (probabilities(s) == 0) continue;
    const VectorQ next = update(chain, experiment, prior, s);
    const Rational distance = l1_distance(next, set);
    if (distance > 0 && to_double(distance) > tolerance) return false;
  }
  return true;
}

MergingReport merging_horizon(const MarkovChain& chain, const Experiment& experiment, double epsilon,
                              int max_length) {
  require_chain_states(chain, experiment);
  if (!chain.strictly_positive()) throw InputError("merging horizon requires a strictly positive transition");
  const Index states = chain.state_count();
  const Matrix<double> rho = to_double(chain.transition);
  const Matrix<double> pi = to_double(experiment.matrix);

  std::vector<Matrix<double>> kernels;  // R(s)(theta, theta') = pi(s|theta') rho(theta'|theta)
  for (Index s = 0; s < experiment.signal_count(); ++s) {
    if (experiment.matrix.col(s).isZero()) continue;
    kernels.push_back(rho * pi.col(s).asDiagonal());
  }
  double strings = 1;
  for (int n = 0; n < max_length; ++n) strings *= static_cast<double>(kernels.size());
  if (strings > double(1 << 22)) throw InputError("too many signal strings to enumerate");

  const auto normalize = [](Matrix<double> m) {
    for (Index i = 0; i < m.rows(); ++i) m.row(i) /= m.row(i).sum();
    return m;
  };

  MergingReport report;
  std::vector<Matrix<double>> level{Matrix<double>::Identity(states, states)};
  for (int n = 1; n <= max_length; ++n) {
    std::vector<Matrix<double>> next;
    next.reserve(level.size() * kernels.size());
    double worst = 0.0;
    for (const auto& prefix : level) {
      for (const auto& kernel : kernels) {
        // Row scaling commutes with right multiplication, so normalizing
        // every step leaves the final posteriors unchanged.
        Matrix<double> rows = normalize(prefix * kernel);
        for (Index a = 0; a < states; ++a) {
          for (Index b = a + 1; b < states; ++b) {
            worst = std::max(worst, (rows.row(a) - rows.row(b)).cwiseAbs().sum());
          }
        }
        next.push_back(std::move(rows));
      }
    }
    if (!report.max_distance.empty() && worst > report.max_distance.back() * (1 + 1e-12) + 1e-15) {
      report.monotone = false;
    }
    report.max_distance.push_back(worst);
    if (worst < epsilon) {
      report.horizon = n;
      return report;
    }
    level = std::move(next);
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

class StoppingSolver {
 public:
  StoppingSolver(const StoppingProblem& stopping, const Experiment& experiment)
      : stopping_(stopping), experiment_(experiment), memo_(static_cast<std::size_t>(stopping.horizon) + 1) {}

  Rational solve(int period, const VectorQ& belief) {
    std::vector<Rational> key(belief.data(), belief.data() + belief.size());
    auto& table = memo_[static_cast<std::size_t>(period)];
    if (auto it = table.find(key); it != table.end()) return it->second;

    const VectorQ expected = stopping_.problem.payoffs * belief;
    Rational best = expected.maxCoeff();
    if (period < stopping_.horizon) {
      const VectorQ probabilities = signal_probabilities(stopping_.chain, experiment_, belief);
      Rational wait = 0;
      for (Index s = 0; s < experiment_.signal_count(); ++s) {
        if (probabilities(s) == 0) continue;
        wait += probabilities(s) * solve(period + 1, update(stopping_.chain, experiment_, belief, s));
      }
      best = std::max(best, wait);
    }
    table.emplace(std::move(key), best);
    return best;
  }

 private:
  const StoppingProblem& stopping_;
  const Experiment& experiment_;
  std::vector<std::map<std::vector<Rational>, Rational>> memo_;
};

}  // namespace

Rational stopping_value(const StoppingProblem& stopping, const Experiment& experiment) {
  require_chain_states(stopping.chain, experiment);
  if (stopping.problem.state_count() != experiment.state_count()) {
    throw InputError("decision problem and experiment have different state counts");
  }
  if (stopping.horizon < 0) throw InputError("horizon must be nonnegative");
  if ((stopping.problem.payoffs.cwiseAbs().array() > Rational(1)).any()) {
    throw InputError("stopping payoffs must lie in [-1, 1]");
  }
  double leaves = 1;
  for (int t = 0; t < stopping.horizon; ++t) leaves *= static_cast<double>(experiment.signal_count());
  if (leaves > double(1 << 20)) throw InputError("signal tree too large for exact backward induction");
  StoppingSolver solver(stopping, experiment);
  return solver.solve(0, stopping.problem.prior.weights);
}

std::optional<Counterexample> counterexample(const Experiment& garbled, const Experiment& reference,
                                             const Prior& prior) {
  if (check_weighted(garbled, reference)) return std::nullopt;

  const PosteriorDistribution q = posteriors(garbled, prior);
  const PosteriorDistribution q_ref = posteriors(regularize(reference), prior);
  std::vector<VectorQ> generators;
  for (const auto& atom : q_ref.atoms) generators.push_back(atom.belief);

  std::optional<Separation> separation;
  VectorQ outside;
  for (const auto& atom : q.atoms) {
    HullResult hull = hull_check(atom.belief, generators);
    if (hull.separation) {
      separation = std::move(hull.separation);
      outside = atom.belief;
      break;
    }
  }
  if (!separation) throw std::logic_error("order fails but every posterior lies in the hull");

  // Shift the separating functional to the midpoint, so it is positive at
  // the outside posterior and negative on every reference posterior.
  const VectorQ& h = separation->normal;
  Rational reference_max = h.dot(generators.front());
  for (const auto& g : generators) reference_max = std::max(reference_max, h.dot(g));
  const Rational shift = (h.dot(outside) + reference_max) / 2;
  VectorQ payoff = h - VectorQ::Constant(h.size(), shift);
  payoff /= payoff.cwiseAbs().sum();

  Rational worst_reference = payoff.dot(generators.front());
  for (const auto& g : generators) worst_reference = std::max(worst_reference, payoff.dot(g));
  // A constant outside option strictly between the reference posteriors'
  // payoffs and zero makes every reference belief worth exactly that
  // constant, while the garbled experiment can still reach a positive payoff.
  const Rational outside_option = worst_reference / 2;

  MatrixQ payoffs(2, h.size());
  payoffs.row(0) = payoff.transpose();
  payoffs.row(1).setConstant(outside_option);
  Counterexample out{make_decision_problem(std::move(payoffs), prior, {"act", "outside"}),
                     iid_chain(prior.weights)};

  for (int horizon = 1; horizon <= 4; ++horizon) {
    const StoppingProblem stopping{out.problem, out.chain, horizon};
    if (!(stopping_value(stopping, garbled) > stopping_value(stopping, reference))) {
      throw std::logic_error("counterexample failed to separate stopping values");
    }
  }
  return out;
}

}  // namespace infoorder
