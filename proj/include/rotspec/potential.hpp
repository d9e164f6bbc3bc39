#pragma once

// The piecewise-constant plane potential on the full 3-shift built from the
// sequences u_k = (x_k, 0), v_k = (x_k, h(x_k)) and
//   w_k = (lambda * w_0 + v_1 + ... + v_k) / (k + lambda),
// together with exact evaluation on periodic points and its finite-memory
// truncations.
//
// With the geometric rule x_k = a * theta^(2k) and h(x) = b * sqrt(x / a),
// every v_k = (a theta^(2k), b theta^k) is rational, so the whole
// construction is carried out in exact arithmetic.

#include "rotspec/rational.hpp"
#include "rotspec/symbolic.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace rotspec {

enum class XRule { Geometric };

struct PotentialParams {
  Rational a{1};
  Rational b{1};
  int lambda = 3;
  Rational theta{1, 2};
  Rational C{2};   // decay constant: sup-norm of v_k < C theta^k
  Rational C1{1};  // sup-norm diameter bound of the image of the potential
  XRule x_rule = XRule::Geometric;

  /// Throws ValidationError naming the first violated field.
  void validate() const;
};

/// Flat `key = value` text; `#` starts a comment. Keys: a, b, lambda,
/// theta_num, theta_den, C, C1, x_rule. Missing keys keep their defaults;
/// unknown keys are rejected. Result is validated.
PotentialParams parse_params(std::istream& in);
PotentialParams load_params(const std::filesystem::path& path);
std::string format_params(const PotentialParams& p);

namespace value_class {
struct W0 {
  friend bool operator==(W0, W0) { return true; }
};
struct U {
  int k;
  friend bool operator==(U, U) = default;
};
struct V {
  int k;
  friend bool operator==(V, V) = default;
};
struct WInf {
  friend bool operator==(WInf, WInf) { return true; }
};
/// The cylinder does not determine the value; all candidates have sup-norm <= bound.
struct Undetermined {
  Rational bound;
  friend bool operator==(const Undetermined&, const Undetermined&) = default;
};
}  // namespace value_class

using ValueClass = std::variant<value_class::W0, value_class::U, value_class::V, value_class::WInf,
                                value_class::Undetermined>;

std::string to_string(const ValueClass& c);

Rational x_point(const PotentialParams& p, int k);
Vec2Q v_point(const PotentialParams& p, int k);
Vec2Q u_point(const PotentialParams& p, int k);
Vec2Q w_point(const PotentialParams& p, int k);
Vec2Q w_infinity(const PotentialParams& p);
/// h(x) = b sqrt(x / a) compared exactly: is y strictly below the graph at x?
bool strictly_below_h(const PotentialParams& p, const Vec2Q& point);

/// Classify the cylinder of a length-m prefix.
ValueClass classify_prefix(const PotentialParams& p, const Word& prefix);

/// Exact value of a determined class; Undetermined has no single value.
Vec2Q class_value(const PotentialParams& p, const ValueClass& c);

/// Exact potential at the periodic point O(segment).
Vec2Q phi_on_periodic(const PotentialParams& p, const Word& segment);
ValueClass classify_periodic(const PotentialParams& p, const Word& segment);

/// Orbit average of the potential.
Vec2Q rotation_vector(const PotentialParams& p, const PeriodicOrbit& orbit);

/// Locally constant truncation Phi_m: one exact value per length-m word,
/// indexed by the word read as a base-3 number (first symbol most significant).
struct PotentialTable {
  int memory = 0;
  std::vector<Vec2Q> values;
  Rational sup_error;  // exact sup |Phi - Phi_m|

  const Vec2Q& at(const Word& w) const { return values[index_of(w)]; }
  static std::size_t index_of(const Word& w);
  static Word word_at(std::size_t index, int memory);
};

/// Truncation for any memory m >= 1; undetermined cylinders map to (0, 0).
PotentialTable truncate_potential(const PotentialParams& p, int memory);
/// Same, but refuses memory <= lambda (no v-values survive).
PotentialTable locally_constant_table(const PotentialParams& p, int memory);
/// C theta^(m+1-lambda): the decay-constant bound on |Phi - Phi_m| (a when m < lambda).
Rational truncation_error_bound(const PotentialParams& p, int memory);
/// Exact sup |Phi - Phi_m|, attained on the 2-free cylinders.
Rational truncation_sup_error(const PotentialParams& p, int memory);

/// max{C1 theta^-lambda, 2 C theta^-lambda}
Rational lipschitz_bound(const PotentialParams& p);

}  // namespace rotspec
