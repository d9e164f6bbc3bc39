#include "rotspec/rational.hpp"

#include <cctype>
#include <sstream>

namespace rotspec {

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("zero raised to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational result(1);
  Rational square = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= square;
    e >>= 1U;
    if (e != 0) square *= square;
  }
  return result;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_string(const Vec2Q& v) {
  return "(" + to_string(v.x()) + ", " + to_string(v.y()) + ")";
}

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  boost::multiprecision::cpp_int value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (text[i] - '0');
  }
  return negative ? boost::multiprecision::cpp_int(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = trim(text);
  std::size_t split = whole.find('/');
  if (split == std::string_view::npos) {
    split = whole.find_first_of(" \t");
  }
  if (split == std::string_view::npos) return Rational(parse_integer(whole, whole));
  const auto num = parse_integer(trim(whole.substr(0, split)), whole);
  const auto den = parse_integer(trim(whole.substr(split + 1)), whole);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
  return Rational(num, den);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Vec2d to_double(const Vec2Q& v) { return Vec2d(to_double(v.x()), to_double(v.y())); }

}  // namespace rotspec
