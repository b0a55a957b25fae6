#ifndef INFOORDER_NUMERICS_HPP
#define INFOORDER_NUMERICS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace infoorder {

/// Exact rational number backed by GMP. Always canonical (lowest terms,
/// positive denominator). Expression templates are disabled so that the
/// type composes cleanly with Eigen's own expression machinery.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using VectorQ = Vector<Rational>;

/** Raised for malformed input: bad numbers, dimension mismatches, violated
 *  preconditions on user-supplied data. */
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "a/b", an integer, or a finite decimal ("0.45", "-1.5e-2" is not
/// accepted) into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical "a/b" form; integers are printed as "a/1" unless `compact`.
std::string to_string(const Rational& value, bool compact = true);

/// Lossy conversion, for reporting and tolerance checks only.
double to_double(const Rational& value);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

/// Converts an exact matrix to floating point.
Matrix<double> to_double(const MatrixQ& m);
Vector<double> to_double(const VectorQ& v);

// ---------------------------------------------------------------------------
// Linear programming

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Maximize };

struct Constraint {
  VectorQ coefficients;
  Relation relation = Relation::Equal;
  Rational rhs;
};

/**
 * Dense linear program over the rationals.
 *
 *   optimize  c.x   subject to   a_i.x (<=,=,>=) b_i,   x_j >= 0 where flagged.
 *
 * Variables are nonnegative unless `nonnegative[j]` is cleared.
 */
struct LinearProgram {
  explicit LinearProgram(Eigen::Index variable_count);

  Eigen::Index variable_count() const { return objective.size(); }
  void add(VectorQ coefficients, Relation relation, Rational rhs);
  /// Throws InputError when a row length disagrees with the variable count.
  void validate() const;

  Sense sense = Sense::Minimize;
  VectorQ objective;
  std::vector<Constraint> constraints;
  std::vector<bool> nonnegative;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

/**
 * Result of `solve`.
 *
 * Optimal:   `solution`, `objective_value`, and `dual` (one multiplier per
 *            constraint, with b.dual == objective_value).
 * Infeasible: `farkas` with y_i >= 0 on >= rows, y_i <= 0 on <= rows,
 *            (y^T A)_j <= 0 on nonnegative variables, == 0 on free ones and
 *            y.b > 0.
 * Unbounded: `solution` is a feasible point and `ray` an improving
 *            direction of the feasible set.
 */
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  VectorQ solution;
  Rational objective_value;
  VectorQ dual;
  VectorQ farkas;
  VectorQ ray;
};

/// Two-phase primal simplex with Bland's rule. Exact; always terminates.
LpOutcome solve(const LinearProgram& lp);

/// Exact re-substitution of x into every constraint and sign restriction.
bool satisfies(const LinearProgram& lp, const VectorQ& x);

/// Exact check of an infeasibility certificate against `lp`'s constraints.
bool verify_farkas(const LinearProgram& lp, const VectorQ& y);

/// Exact check that `ray` is an improving recession direction of `lp`.
bool verify_ray(const LinearProgram& lp, const VectorQ& ray);

}  // namespace infoorder

#endif  // INFOORDER_NUMERICS_HPP
