#include "teamsem/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace teamsem {

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto bad = [&] { return std::invalid_argument("bad rational '" + text + "'"); };

  std::size_t slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (num.empty() || den.empty()) throw bad();
    try {
      BigInt n(num), d(den);
      if (d == 0) throw bad();
      return Rat(n, d);
    } catch (const std::runtime_error&) {
      throw bad();
    }
  }

  std::size_t dot = text.find('.');
  if (dot != std::string::npos) {
    std::string head = text.substr(0, dot);
    std::string tail = text.substr(dot + 1);
    if (tail.empty()) throw bad();
    for (char c : tail)
      if (c < '0' || c > '9') throw bad();
    bool neg = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
    if (head.empty()) head = "0";
    try {
      BigInt whole(head), frac(tail);
      BigInt den = 1;
      for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
      Rat r = Rat(whole) + Rat(frac, den);
      return neg ? -r : r;
    } catch (const std::runtime_error&) {
      throw bad();
    }
  }

  try {
    return Rat(BigInt(text));
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string rat_to_fraction(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double rat_to_double(const Rat& r) { return static_cast<double>(r); }

Rat approximate_rational(double x, long max_den) {
  if (max_den < 1) throw std::invalid_argument("max_den must be positive");
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  bool neg = x < 0;
  double v = neg ? -x : x;

  // Continued-fraction convergents p/q with q capped at max_den.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e17) break;
    long long a = static_cast<long long>(fl);
    long long p2 = a * p1 + p0;
    long long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rat(0);
  Rat r(p1, q1);
  return neg ? -r : r;
}

}  // namespace teamsem
