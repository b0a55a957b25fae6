#ifndef INFOORDER_TESTS_FIXTURES_HPP
#define INFOORDER_TESTS_FIXTURES_HPP

#include <random>

#include "infoorder/experiment.hpp"
#include "infoorder/numerics.hpp"
#include "infoorder/order.hpp"

namespace fixtures {

using infoorder::Experiment;
using infoorder::MatrixQ;
using infoorder::Rational;
using infoorder::VectorQ;

inline Rational q(long n, long d) { return Rational(n, d); }

inline MatrixQ rows(std::initializer_list<std::initializer_list<Rational>> r) {
  MatrixQ m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline VectorQ vec(std::initializer_list<Rational> v) {
  VectorQ out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const auto& x : v) out(i++) = x;
  return out;
}

/// Two states, two signals, pi(s_i|theta_i) = p.
inline Experiment binary_symmetric(const Rational& p) {
  return infoorder::validate_experiment(rows({{p, 1 - p}, {1 - p, p}}), {"theta1", "theta2"}, {"s1", "s2"});
}

/// Signal s0' with probability 1/2 in both states, otherwise a binary
/// symmetric signal of accuracy p.
inline Experiment example_one(const Rational& p) {
  const Rational h(1, 2);
  return infoorder::validate_experiment(rows({{h, h * p, h * (1 - p)}, {h, h * (1 - p), h * p}}),
                                        {"theta1", "theta2"}, {"s0'", "s1'", "s2'"});
}

inline Experiment perfect(Eigen::Index states = 2) {
  return infoorder::validate_experiment(MatrixQ(MatrixQ::Identity(states, states)));
}

inline Experiment uninformative(Eigen::Index states = 2, Eigen::Index signals = 2) {
  return infoorder::validate_experiment(MatrixQ(MatrixQ::Constant(states, signals, Rational(1, signals))));
}

/// gamma = (0, 2, 2), phi(s_i|s_i') = (p + p' - 1) / (2p' - 1).
inline infoorder::GarblingCertificate example_one_certificate(const Rational& p, const Rational& p_ref) {
  const Rational keep = (p + p_ref - 1) / (2 * p_ref - 1);
  MatrixQ psi = MatrixQ::Zero(2, 3);
  psi(0, 1) = 2 * keep;
  psi(1, 1) = 2 * (1 - keep);
  psi(0, 2) = 2 * (1 - keep);
  psi(1, 2) = 2 * keep;
  return infoorder::GarblingCertificate(binary_symmetric(p), example_one(p_ref), psi);
}

/// u(a_i, theta_j) = 1 if i == j else 0, uniform prior.
inline infoorder::DecisionProblem matching(Eigen::Index states = 2) {
  return infoorder::make_decision_problem(MatrixQ(MatrixQ::Identity(states, states)),
                                          infoorder::uniform_prior(states));
}

}  // namespace fixtures

#endif  // INFOORDER_TESTS_FIXTURES_HPP
