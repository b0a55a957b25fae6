// Dense two-phase primal simplex over the rationals.
//
// The program is brought into the standard form  min c'x, A'x = b', x >= 0,
// b' >= 0  by splitting free variables, adding slack/surplus columns and
// negating rows with negative right-hand sides. Every row then receives an
// artificial column, so phase 1 starts from the identity basis. Bland's rule
// (lowest-index entering column, lowest-index leaving basic variable on ratio
// ties) guarantees termination in both phases.

#include <stdexcept>

#include "infoorder/numerics.hpp"

namespace infoorder {

namespace {

using Index = Eigen::Index;

struct StructuralColumn {
  Index variable;
  int sign;  // +1 for x_j or x_j^+, -1 for x_j^-
};

class Tableau {
 public:
  Tableau(Index rows, Index columns) : tab_(MatrixQ::Zero(rows + 1, columns + 1)), basis_(rows) {}

  Index rows() const { return tab_.rows() - 1; }
  Index columns() const { return tab_.cols() - 1; }

  Rational& at(Index i, Index j) { return tab_(i, j); }
  const Rational& at(Index i, Index j) const { return tab_(i, j); }
  Rational& rhs(Index i) { return tab_(i, columns()); }
  Rational& reduced(Index j) { return tab_(rows(), j); }
  Index& basis(Index i) { return basis_[static_cast<std::size_t>(i)]; }
  auto cost_row() { return tab_.row(rows()); }

  void pivot(Index p, Index q) {
    const Rational inv = Rational(1) / tab_(p, q);
    tab_.row(p) *= inv;
    for (Index i = 0; i < tab_.rows(); ++i) {
      if (i == p || tab_(i, q) == 0) continue;
      const Rational factor = tab_(i, q);
      tab_.row(i) -= factor * tab_.row(p);
    }
    basis(p) = q;
  }

  enum class Step { Optimal, Pivoted, Unbounded };

  /// One Bland pivot restricted to columns [0, allowed). On Unbounded the
  /// offending column is stored in `entering`.
  Step step(Index allowed, Index& entering) {
    Index q = -1;
    for (Index j = 0; j < allowed; ++j) {
      if (reduced(j) < 0) {
        q = j;
        break;
      }
    }
    if (q < 0) return Step::Optimal;
    entering = q;

    Index p = -1;
    Rational best;
    for (Index i = 0; i < rows(); ++i) {
      if (at(i, q) <= 0) continue;
      Rational ratio = rhs(i) / at(i, q);
      if (p < 0 || ratio < best || (ratio == best && basis(i) < basis(p))) {
        p = i;
        best = std::move(ratio);
      }
    }
    if (p < 0) return Step::Unbounded;
    pivot(p, q);
    return Step::Pivoted;
  }

  Step run(Index allowed, Index& entering) {
    for (;;) {
      const Step s = step(allowed, entering);
      if (s != Step::Pivoted) return s;
    }
  }

 private:
  MatrixQ tab_;
  std::vector<Index> basis_;
};

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
  lp.validate();

  const Index n = lp.variable_count();
  const Index m = static_cast<Index>(lp.constraints.size());

  std::vector<StructuralColumn> structural;
  for (Index j = 0; j < n; ++j) {
    structural.push_back({j, +1});
    if (!lp.nonnegative[static_cast<std::size_t>(j)]) structural.push_back({j, -1});
  }
  const Index n_struct = static_cast<Index>(structural.size());

  std::vector<Index> slack_of_row(static_cast<std::size_t>(m), -1);
  Index n_slack = 0;
  for (Index i = 0; i < m; ++i) {
    if (lp.constraints[static_cast<std::size_t>(i)].relation != Relation::Equal) {
      slack_of_row[static_cast<std::size_t>(i)] = n_struct + n_slack++;
    }
  }
  const Index first_artificial = n_struct + n_slack;
  const Index total = first_artificial + m;

  Tableau tab(m, total);
  std::vector<int> row_sign(static_cast<std::size_t>(m), 1);
  for (Index i = 0; i < m; ++i) {
    const auto& c = lp.constraints[static_cast<std::size_t>(i)];
    const int sign = c.rhs < 0 ? -1 : 1;
    row_sign[static_cast<std::size_t>(i)] = sign;
    for (Index k = 0; k < n_struct; ++k) {
      const auto& col = structural[static_cast<std::size_t>(k)];
      tab.at(i, k) = sign * col.sign * c.coefficients(col.variable);
    }
    if (Index s = slack_of_row[static_cast<std::size_t>(i)]; s >= 0) {
      tab.at(i, s) = c.relation == Relation::LessEqual ? sign : -sign;
    }
    tab.at(i, first_artificial + i) = 1;
    tab.rhs(i) = sign * c.rhs;
    tab.basis(i) = first_artificial + i;
  }

  // Phase 1: minimize the sum of artificials.
  for (Index j = 0; j < first_artificial; ++j) {
    Rational d = 0;
    for (Index i = 0; i < m; ++i) d -= tab.at(i, j);
    tab.reduced(j) = d;
  }
  {
    Rational z = 0;
    for (Index i = 0; i < m; ++i) z += tab.rhs(i);
    tab.reduced(total) = -z;
  }
  Index entering = -1;
  if (tab.run(total, entering) != Tableau::Step::Optimal) {
    throw std::logic_error("phase 1 cannot be unbounded");
  }

  LpOutcome out;
  const Rational phase1 = -tab.reduced(total);
  if (phase1 > 0) {
    out.status = LpStatus::Infeasible;
    out.farkas = VectorQ::Zero(m);
    for (Index i = 0; i < m; ++i) {
      out.farkas(i) = row_sign[static_cast<std::size_t>(i)] * (1 - tab.reduced(first_artificial + i));
    }
    if (!verify_farkas(lp, out.farkas)) throw std::logic_error("Farkas certificate failed to verify");
    return out;
  }

  // Drive remaining artificials out of the basis; rows where that is
  // impossible are redundant and keep their artificial at level zero.
  for (Index i = 0; i < m; ++i) {
    if (tab.basis(i) < first_artificial) continue;
    for (Index j = 0; j < first_artificial; ++j) {
      if (tab.at(i, j) != 0) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 on the original objective (as a minimization).
  const int objective_sign = lp.sense == Sense::Minimize ? 1 : -1;
  VectorQ cost = VectorQ::Zero(total);
  for (Index k = 0; k < n_struct; ++k) {
    const auto& col = structural[static_cast<std::size_t>(k)];
    cost(k) = objective_sign * col.sign * lp.objective(col.variable);
  }
  for (Index j = 0; j <= total; ++j) {
    Rational d = j < total ? cost(j) : Rational(0);
    for (Index i = 0; i < m; ++i) d -= cost(tab.basis(i)) * tab.at(i, j);
    tab.reduced(j) = d;
  }

  const auto standard_to_original = [&](const VectorQ& z) {
    VectorQ x = VectorQ::Zero(n);
    for (Index k = 0; k < n_struct; ++k) {
      const auto& col = structural[static_cast<std::size_t>(k)];
      x(col.variable) += col.sign * z(k);
    }
    return x;
  };

  VectorQ basic = VectorQ::Zero(total);
  for (Index i = 0; i < m; ++i) basic(tab.basis(i)) = tab.rhs(i);

  const Tableau::Step result = tab.run(first_artificial, entering);
  basic.setZero();
  for (Index i = 0; i < m; ++i) basic(tab.basis(i)) = tab.rhs(i);
  out.solution = standard_to_original(basic);

  if (result == Tableau::Step::Unbounded) {
    out.status = LpStatus::Unbounded;
    VectorQ direction = VectorQ::Zero(total);
    direction(entering) = 1;
    for (Index i = 0; i < m; ++i) direction(tab.basis(i)) = -tab.at(i, entering);
    out.ray = standard_to_original(direction);
    if (!verify_ray(lp, out.ray)) throw std::logic_error("unbounded ray failed to verify");
    return out;
  }

  out.status = LpStatus::Optimal;
  out.objective_value = lp.objective.dot(out.solution);
  out.dual = VectorQ::Zero(m);
  for (Index i = 0; i < m; ++i) {
    // Artificial columns carry zero phase-2 cost, so d_art = -w.
    out.dual(i) = -objective_sign * row_sign[static_cast<std::size_t>(i)] *
                  tab.reduced(first_artificial + i);
  }
  if (!satisfies(lp, out.solution)) throw std::logic_error("simplex solution violates constraints");
  Rational dual_value = 0;
  for (Index i = 0; i < m; ++i) dual_value += out.dual(i) * lp.constraints[static_cast<std::size_t>(i)].rhs;
  if (dual_value != out.objective_value) throw std::logic_error("dual value mismatch");
  return out;
}

}  // namespace infoorder
