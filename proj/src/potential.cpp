#include "rotspec/potential.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace rotspec {

void PotentialParams::validate() const {
  if (!(a > 0)) throw ValidationError("a", "must be positive");
  if (!(b > 0)) throw ValidationError("b", "must be positive");
  if (lambda < 3) throw ValidationError("lambda", "must be an integer >= 3");
  if (!(theta > 0 && theta < 1)) throw ValidationError("theta", "must lie in (0, 1)");
  // sup-norm of v_k = max(a theta^2k, b theta^k) < C theta^k for all k >= 1
  // iff max(a theta, b) < C.
  const Rational decay = a * theta < b ? b : Rational(a * theta);
  if (!(C > decay)) throw ValidationError("C", "must exceed max(a*theta, b) = " + to_string(decay));
  const Rational diameter = a < b * theta ? Rational(b * theta) : a;
  if (C1 < diameter) throw ValidationError("C1", "must be >= sup-norm diameter " + to_string(diameter));
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Rational field_rational(const std::string& key, const std::string& value) {
  try {
    return parse_rational(value);
  } catch (const std::exception& e) {
    throw ValidationError(key, e.what());
  }
}

long field_integer(const std::string& key, const std::string& value) {
  const Rational q = field_rational(key, value);
  if (boost::multiprecision::denominator(q) != 1) throw ValidationError(key, "must be an integer");
  if (abs(q) > 1000000) throw ValidationError(key, "out of range");
  return boost::multiprecision::numerator(q).convert_to<long>();
}

}  // namespace

PotentialParams parse_params(std::istream& in) {
  PotentialParams p;
  std::optional<long> theta_num, theta_den;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("line " + std::to_string(line_no), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "a") {
      p.a = field_rational(key, value);
    } else if (key == "b") {
      p.b = field_rational(key, value);
    } else if (key == "lambda") {
      p.lambda = static_cast<int>(field_integer(key, value));
    } else if (key == "theta_num") {
      theta_num = field_integer(key, value);
    } else if (key == "theta_den") {
      theta_den = field_integer(key, value);
    } else if (key == "C") {
      p.C = field_rational(key, value);
    } else if (key == "C1") {
      p.C1 = field_rational(key, value);
    } else if (key == "x_rule") {
      if (value != "geometric") throw ValidationError(key, "only 'geometric' is supported");
      p.x_rule = XRule::Geometric;
    } else {
      throw ValidationError(key, "unknown parameter");
    }
  }
  if (theta_num || theta_den) {
    const long num = theta_num.value_or(1);
    const long den = theta_den.value_or(2);
    if (den <= 0) throw ValidationError("theta_den", "must be positive");
    p.theta = Rational(num, den);
  }
  p.validate();
  return p;
}

PotentialParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("params", "cannot open " + path.string());
  return parse_params(in);
}

std::string format_params(const PotentialParams& p) {
  std::ostringstream os;
  os << "a = " << to_string(p.a) << "\n"
     << "b = " << to_string(p.b) << "\n"
     << "lambda = " << p.lambda << "\n"
     << "theta_num = " << boost::multiprecision::numerator(p.theta) << "\n"
     << "theta_den = " << boost::multiprecision::denominator(p.theta) << "\n"
     << "C = " << to_string(p.C) << "\n"
     << "C1 = " << to_string(p.C1) << "\n"
     << "x_rule = geometric\n";
  return os.str();
}

std::string to_string(const ValueClass& c) {
  using namespace value_class;
  struct Visitor {
    std::string operator()(W0) const { return "W0"; }
    std::string operator()(U u) const { return "U(" + std::to_string(u.k) + ")"; }
    std::string operator()(V v) const { return "V(" + std::to_string(v.k) + ")"; }
    std::string operator()(WInf) const { return "WInf"; }
    std::string operator()(const Undetermined& u) const {
      return "Undetermined(" + rotspec::to_string(u.bound) + ")";
    }
  };
  return std::visit(Visitor{}, c);
}

Rational x_point(const PotentialParams& p, int k) {
  if (k < 1) throw std::invalid_argument("sequence indices start at 1");
  return p.a * pow(p.theta, 2 * k);
}

Vec2Q v_point(const PotentialParams& p, int k) {
  if (k < 1) throw std::invalid_argument("sequence indices start at 1");
  return Vec2Q(x_point(p, k), p.b * pow(p.theta, k));
}

Vec2Q u_point(const PotentialParams& p, int k) { return Vec2Q(x_point(p, k), Rational(0)); }

Vec2Q w_point(const PotentialParams& p, int k) {
  if (k < 0) throw std::invalid_argument("w index must be >= 0");
  Vec2Q sum(Rational(p.lambda) * p.a, Rational(0));
  for (int j = 1; j <= k; ++j) sum += v_point(p, j);
  return sum / Rational(k + p.lambda);
}

Vec2Q w_infinity(const PotentialParams&) { return Vec2Q(Rational(0), Rational(0)); }

bool strictly_below_h(const PotentialParams& p, const Vec2Q& point) {
  if (point.x() < 0 || point.x() > p.a) throw std::domain_error("h is defined on [0, a]");
  if (point.y() < 0) return true;
  // y < b sqrt(x / a)  <=>  a y^2 < b^2 x   for y >= 0
  return p.a * point.y() * point.y() < p.b * p.b * point.x();
}

Rational truncation_error_bound(const PotentialParams& p, int memory) {
  const Rational tail = p.C * pow(p.theta, memory + 1 - p.lambda);
  // Below lambda a 2-free prefix may still be followed by a 2 within the
  // first lambda symbols, so w_0 stays a candidate value.
  if (memory < p.lambda && tail < p.a) return p.a;
  return tail;
}

Rational truncation_sup_error(const PotentialParams& p, int memory) {
  // Candidates on a 2-free cylinder: w_inf = 0, u_j and v_j for j >= j0, and
  // w_0 when memory < lambda. |v_j| >= |u_j| and both decrease in j.
  const int j0 = std::max(1, memory + 1 - p.lambda);
  const Rational tail = sup_norm(v_point(p, j0));
  if (memory < p.lambda && tail < p.a) return p.a;
  return tail;
}

ValueClass classify_prefix(const PotentialParams& p, const Word& prefix) {
  using namespace value_class;
  if (prefix.empty()) throw std::invalid_argument("prefix must be nonempty");
  if (prefix.alphabet() != 3) throw ValidationError("alphabet", "potential lives on the 3-shift");
  const int m = static_cast<int>(prefix.size());
  for (int l = 1; l <= m; ++l) {
    if (prefix[static_cast<std::size_t>(l - 1)] != 2) continue;
    if (l <= p.lambda) return W0{};
    bool all_ones = true;
    for (int i = 0; i < l - 1 && all_ones; ++i) all_ones = prefix[static_cast<std::size_t>(i)] == 1;
    if (all_ones) return V{l - p.lambda};
    return U{l - p.lambda};
  }
  return Undetermined{truncation_error_bound(p, m)};
}

ValueClass classify_periodic(const PotentialParams& p, const Word& segment) {
  if (segment.empty()) throw std::invalid_argument("empty generating segment");
  // The first 2 of O(segment), if any, occurs within the first period.
  for (std::size_t i = 0; i < segment.size(); ++i) {
    if (segment[i] == 2) {
      std::vector<std::uint8_t> prefix(segment.symbols().begin(),
                                       segment.symbols().begin() + static_cast<std::ptrdiff_t>(i + 1));
      return classify_prefix(p, Word(std::move(prefix), segment.alphabet()));
    }
  }
  return value_class::WInf{};
}

Vec2Q class_value(const PotentialParams& p, const ValueClass& c) {
  using namespace value_class;
  struct Visitor {
    const PotentialParams& p;
    Vec2Q operator()(W0) const { return Vec2Q(p.a, Rational(0)); }
    Vec2Q operator()(U u) const { return u_point(p, u.k); }
    Vec2Q operator()(V v) const { return v_point(p, v.k); }
    Vec2Q operator()(WInf) const { return w_infinity(p); }
    Vec2Q operator()(const Undetermined&) const {
      throw std::logic_error("undetermined cylinder has no single value");
    }
  };
  return std::visit(Visitor{p}, c);
}

Vec2Q phi_on_periodic(const PotentialParams& p, const Word& segment) {
  return class_value(p, classify_periodic(p, segment));
}

Vec2Q rotation_vector(const PotentialParams& p, const PeriodicOrbit& orbit) {
  // Tally classes, then sum in integers: u_k and v_k share x = a theta^(2k),
  // so with theta = r/s both coordinates are integer polynomials over a power of s.
  using boost::multiprecision::cpp_int;
  const Word& t = orbit.necklace();
  const std::size_t n = t.size();
  std::vector<long> x_count(n + 1, 0), v_count(n + 1, 0);  // index 0 = w_0
  int top = 0;
  for (std::size_t start = 0; start < n; ++start) {
    std::size_t first_two = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (t[(start + i) % n] == 2) {
        first_two = i;
        break;
      }
    }
    if (first_two == n) continue;  // w_infinity contributes zero
    const int l = static_cast<int>(first_two) + 1;
    if (l <= p.lambda) {
      ++x_count[0];
      continue;
    }
    bool all_ones = true;
    for (std::size_t i = 0; i < first_two && all_ones; ++i) all_ones = t[(start + i) % n] == 1;
    const auto k = static_cast<std::size_t>(l - p.lambda);
    ++x_count[k];
    if (all_ones) ++v_count[k];
    top = std::max(top, static_cast<int>(k));
  }
  const cpp_int r = numerator(p.theta), s = denominator(p.theta);
  std::vector<cpp_int> rp(2 * static_cast<std::size_t>(top) + 1, 1), sp(rp);
  for (std::size_t j = 1; j < rp.size(); ++j) {
    rp[j] = rp[j - 1] * r;
    sp[j] = sp[j - 1] * s;
  }
  cpp_int x_num = 0, y_num = 0;
  const auto K = static_cast<std::size_t>(top);
  for (std::size_t k = 0; k <= K; ++k) {
    if (x_count[k]) x_num += x_count[k] * rp[2 * k] * sp[2 * (K - k)];
    if (v_count[k]) y_num += v_count[k] * rp[k] * sp[K - k];
  }
  const cpp_int len = static_cast<long>(n);
  return Vec2Q(p.a * Rational(x_num, sp[2 * K] * len), p.b * Rational(y_num, sp[K] * len));
}

std::size_t PotentialTable::index_of(const Word& w) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < w.size(); ++i) idx = idx * 3 + w[i];
  return idx;
}

Word PotentialTable::word_at(std::size_t index, int memory) {
  std::vector<std::uint8_t> symbols(static_cast<std::size_t>(memory));
  for (int i = memory - 1; i >= 0; --i) {
    symbols[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index % 3);
    index /= 3;
  }
  return Word(std::move(symbols), 3);
}

PotentialTable truncate_potential(const PotentialParams& p, int memory) {
  if (memory < 1) throw ValidationError("memory", "must be >= 1");
  if (memory > 12) throw ValidationError("memory", "must be <= 12");
  PotentialTable table;
  table.memory = memory;
  table.sup_error = truncation_sup_error(p, memory);
  std::size_t count = 1;
  for (int i = 0; i < memory; ++i) count *= 3;
  table.values.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const ValueClass c = classify_prefix(p, PotentialTable::word_at(idx, memory));
    if (std::holds_alternative<value_class::Undetermined>(c))
      table.values.push_back(w_infinity(p));
    else
      table.values.push_back(class_value(p, c));
  }
  return table;
}

PotentialTable locally_constant_table(const PotentialParams& p, int memory) {
  if (memory <= p.lambda) throw ValidationError("memory", "memory below lambda+1 loses all V-values");
  return truncate_potential(p, memory);
}

Rational lipschitz_bound(const PotentialParams& p) {
  const Rational scale = pow(p.theta, -p.lambda);
  const Rational first = p.C1 * scale;
  const Rational second = Rational(2) * p.C * scale;
  return first < second ? second : first;
}

}  // namespace rotspec
