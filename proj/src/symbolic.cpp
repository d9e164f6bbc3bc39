#include "rotspec/symbolic.hpp"

#include <algorithm>
#include <numeric>

namespace rotspec {

Word::Word(std::vector<std::uint8_t> symbols, int alphabet)
    : symbols_(std::move(symbols)), alphabet_(alphabet) {
  if (alphabet_ < 1 || alphabet_ > 10) throw ValidationError("alphabet", "must lie in [1, 10]");
  for (auto s : symbols_) {
    if (s >= alphabet_)
      throw ValidationError("symbol", "symbol " + std::to_string(s) + " outside alphabet of size " +
                                          std::to_string(alphabet_));
  }
}

Word Word::parse(std::string_view digits, int alphabet) {
  std::vector<std::uint8_t> symbols;
  symbols.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw ValidationError("symbol", std::string("not a digit: '") + c + "'");
    symbols.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Word(std::move(symbols), alphabet);
}

Word Word::rotated(std::size_t j) const {
  if (symbols_.empty()) return *this;
  Word out = *this;
  std::rotate(out.symbols_.begin(), out.symbols_.begin() + static_cast<std::ptrdiff_t>(j % size()),
              out.symbols_.end());
  return out;
}

std::string Word::str() const {
  std::string s;
  s.reserve(symbols_.size());
  for (auto c : symbols_) s.push_back(static_cast<char>('0' + c));
  return s;
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) {
      std::vector<std::uint8_t> root(w.symbols().begin(), w.symbols().begin() + static_cast<std::ptrdiff_t>(p));
      return Word(std::move(root), w.alphabet());
    }
  }
  return w;
}

Word canonical_necklace(const Word& w) {
  if (w.empty()) throw std::invalid_argument("empty generating segment");
  const Word root = primitive_root(w);
  Word best = root;
  for (std::size_t j = 1; j < root.size(); ++j) {
    Word candidate = root.rotated(j);
    if (candidate < best) best = std::move(candidate);
  }
  return best;
}

PeriodicOrbit::PeriodicOrbit(const Word& segment) : necklace_(canonical_necklace(segment)) {}

std::vector<PeriodicOrbit> enumerate_orbits(int alphabet, int max_period) {
  if (alphabet < 2) throw ValidationError("alphabet", "need at least two symbols");
  if (max_period < 1) throw ValidationError("max_period", "must be >= 1");

  // Duval's generation of Lyndon words (aperiodic necklaces in minimal
  // rotation) of length <= max_period, in lexicographic order.
  std::vector<std::vector<PeriodicOrbit>> by_period(static_cast<std::size_t>(max_period) + 1);
  std::vector<std::uint8_t> word{0};
  const auto top = static_cast<std::uint8_t>(alphabet - 1);
  while (!word.empty()) {
    by_period[word.size()].push_back(PeriodicOrbit(Word(word, alphabet), PeriodicOrbit::Canonical{}));
    const std::size_t n = word.size();
    while (word.size() < static_cast<std::size_t>(max_period)) word.push_back(word[word.size() - n]);
    while (!word.empty() && word.back() == top) word.pop_back();
    if (!word.empty()) ++word.back();
  }

  std::vector<PeriodicOrbit> orbits;
  for (auto& bucket : by_period)
    for (auto& o : bucket) orbits.push_back(std::move(o));
  return orbits;
}

std::vector<Word> orbit_points(const PeriodicOrbit& orbit) {
  std::vector<Word> points;
  points.reserve(orbit.period());
  for (std::size_t j = 0; j < orbit.period(); ++j) points.push_back(orbit.necklace().rotated(j));
  return points;
}

std::optional<std::size_t> first_difference(const Word& x, const Word& y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("empty generating segment");
  // Sequences agreeing on lcm(|x|, |y|) symbols agree everywhere.
  const std::size_t bound = std::lcm(x.size(), y.size());
  for (std::size_t i = 0; i < bound; ++i) {
    if (x[i % x.size()] != y[i % y.size()]) return i + 1;
  }
  return std::nullopt;
}

Rational theta_distance(const Word& x, const Word& y, const Rational& theta) {
  if (!(theta > 0 && theta < 1)) throw ValidationError("theta", "must lie in (0, 1)");
  const auto k = first_difference(x, y);
  if (!k) return Rational(0);
  return pow(theta, static_cast<int>(*k));
}

}  // namespace rotspec
