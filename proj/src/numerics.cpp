#include "infoorder/numerics.hpp"

#include <cctype>

namespace infoorder {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_signed_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("not a number: \"" + std::string(whole) + "\"");
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw InputError("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_signed_integer(s.substr(0, slash), s);
    std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) throw InputError("not a number: \"" + std::string(s) + "\"");
    Integer den(std::string{den_text});
    if (den == 0) throw InputError("zero denominator: \"" + std::string(s) + "\"");
    return Rational(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw InputError("not a number: \"" + std::string(s) + "\"");
    }
    Integer whole = int_part.empty() ? Integer(0) : Integer(std::string(int_part));
    Integer frac = frac_part.empty() ? Integer(0) : Integer(std::string(frac_part));
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac_part.size()));
    Rational value(whole * scale + frac, scale);
    return negative ? Rational(-value) : value;
  }

  return Rational(parse_signed_integer(s, s));
}

std::string to_string(const Rational& value, bool compact) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (compact && den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Matrix<double> to_double(const MatrixQ& m) {
  return m.unaryExpr([](const Rational& x) { return to_double(x); });
}

Vector<double> to_double(const VectorQ& v) {
  return v.unaryExpr([](const Rational& x) { return to_double(x); });
}

// ---------------------------------------------------------------------------

LinearProgram::LinearProgram(Eigen::Index variable_count)
    : objective(VectorQ::Zero(variable_count)),
      nonnegative(static_cast<std::size_t>(variable_count), true) {}

void LinearProgram::add(VectorQ coefficients, Relation relation, Rational rhs) {
  if (coefficients.size() != variable_count()) {
    throw InputError("constraint has " + std::to_string(coefficients.size()) +
                     " coefficients, program has " + std::to_string(variable_count()) +
                     " variables");
  }
  constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::validate() const {
  if (nonnegative.size() != static_cast<std::size_t>(variable_count())) {
    throw InputError("nonnegativity flags do not match variable count");
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].coefficients.size() != variable_count()) {
      throw InputError("constraint " + std::to_string(i) + " has wrong length");
    }
  }
  if (constraints.empty() && objective.isZero()) {
    throw InputError("linear program has neither constraints nor objective");
  }
}

bool satisfies(const LinearProgram& lp, const VectorQ& x) {
  if (x.size() != lp.variable_count()) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (lp.nonnegative[static_cast<std::size_t>(j)] && x(j) < 0) return false;
  }
  for (const auto& c : lp.constraints) {
    const Rational lhs = c.coefficients.dot(x);
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

bool verify_farkas(const LinearProgram& lp, const VectorQ& y) {
  if (y.size() != static_cast<Eigen::Index>(lp.constraints.size())) return false;
  VectorQ combined = VectorQ::Zero(lp.variable_count());
  Rational rhs = 0;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    const Rational& yi = y(static_cast<Eigen::Index>(i));
    if (c.relation == Relation::LessEqual && yi > 0) return false;
    if (c.relation == Relation::GreaterEqual && yi < 0) return false;
    combined += yi * c.coefficients;
    rhs += yi * c.rhs;
  }
  for (Eigen::Index j = 0; j < combined.size(); ++j) {
    if (lp.nonnegative[static_cast<std::size_t>(j)] ? combined(j) > 0 : combined(j) != 0) {
      return false;
    }
  }
  return rhs > 0;
}

bool verify_ray(const LinearProgram& lp, const VectorQ& ray) {
  if (ray.size() != lp.variable_count()) return false;
  for (Eigen::Index j = 0; j < ray.size(); ++j) {
    if (lp.nonnegative[static_cast<std::size_t>(j)] && ray(j) < 0) return false;
  }
  for (const auto& c : lp.constraints) {
    const Rational lhs = c.coefficients.dot(ray);
    if (c.relation == Relation::Equal && lhs != 0) return false;
    if (c.relation == Relation::LessEqual && lhs > 0) return false;
    if (c.relation == Relation::GreaterEqual && lhs < 0) return false;
  }
  const Rational gain = lp.objective.dot(ray);
  return lp.sense == Sense::Minimize ? gain < 0 : gain > 0;
}

}  // namespace infoorder
