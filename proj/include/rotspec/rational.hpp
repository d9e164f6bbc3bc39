#pragma once

// Exact scalar type and the fixed-size plane vectors used throughout.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <string_view>

namespace rotspec {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Vec2Q = Vec2<Rational>;
using Vec2d = Eigen::Vector2d;

/// Raised when user-facing input (parameters, flags, targets) is invalid.
/// `field()` names the offending parameter so the CLI can report it.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// base^exponent; negative exponents invert. Throws on 0^negative.
Rational pow(const Rational& base, int exponent);

Rational abs(const Rational& q);

/// "p/q", or "p" for integers.
std::string to_string(const Rational& q);
/// "(p/q, r/s)"
std::string to_string(const Vec2Q& v);

/// Accepts "p/q", "p q" and plain integers "p" (with optional sign).
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);
Vec2d to_double(const Vec2Q& v);

inline Vec2Q make_vec(const Rational& x, const Rational& y) { return Vec2Q(x, y); }

/// Sup-norm of an exact vector.
inline Rational sup_norm(const Vec2Q& v) {
  Rational ax = abs(v.x());
  Rational ay = abs(v.y());
  return ax < ay ? ay : ax;
}

/// Lexicographic (x, then y) order.
template <typename Scalar>
bool lex_less(const Vec2<Scalar>& p, const Vec2<Scalar>& q) {
  if (p.x() != q.x()) return p.x() < q.x();
  return p.y() < q.y();
}

}  // namespace rotspec
