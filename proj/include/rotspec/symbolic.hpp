#pragma once

// Words over {0, ..., d-1}, periodic orbits of the one-sided full shift keyed
// by their minimal-rotation aperiodic necklace, and the theta-metric.

#include "rotspec/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotspec {

class Word {
 public:
  Word() = default;
  /// Throws ValidationError if a symbol is >= alphabet.
  Word(std::vector<std::uint8_t> symbols, int alphabet = 3);
  /// Digits '0'..'9'; e.g. Word::parse("1112").
  static Word parse(std::string_view digits, int alphabet = 3);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  int alphabet() const noexcept { return alphabet_; }
  std::uint8_t operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<std::uint8_t>& symbols() const noexcept { return symbols_; }

  /// Rotate left by j: rotate("0112", 1) == "1120".
  Word rotated(std::size_t j) const;
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.symbols_ <=> b.symbols_;
  }

 private:
  std::vector<std::uint8_t> symbols_;
  int alphabet_ = 3;
};

/// The orbit of the periodic point O(t); `necklace()` is the lexicographically
/// minimal rotation of the primitive root of t.
class PeriodicOrbit {
 public:
  /// Canonicalizes `segment`; throws on an empty segment.
  explicit PeriodicOrbit(const Word& segment);

  const Word& necklace() const noexcept { return necklace_; }
  std::size_t period() const noexcept { return necklace_.size(); }

  friend bool operator==(const PeriodicOrbit&, const PeriodicOrbit&) = default;

 private:
  struct Canonical {};
  PeriodicOrbit(Word necklace, Canonical) : necklace_(std::move(necklace)) {}
  friend std::vector<PeriodicOrbit> enumerate_orbits(int alphabet, int max_period);

  Word necklace_;
};

/// Minimal rotation of the primitive root of w. Throws std::invalid_argument
/// ("empty generating segment") when w is empty.
Word canonical_necklace(const Word& w);

/// Shortest u with w == u^j.
Word primitive_root(const Word& w);

/// One orbit per prime period <= max_period, ordered by period then lexicographically.
std::vector<PeriodicOrbit> enumerate_orbits(int alphabet, int max_period);

/// The `period` rotations of the necklace, in rotation order.
std::vector<Word> orbit_points(const PeriodicOrbit& orbit);

/// First 1-based index at which the periodic sequences O(x) and O(y) differ,
/// or nullopt when they coincide.
std::optional<std::size_t> first_difference(const Word& x, const Word& y);

/// d_theta(O(x), O(y)) = theta^k for the first differing index k, 0 if equal.
Rational theta_distance(const Word& x, const Word& y, const Rational& theta);

}  // namespace rotspec
