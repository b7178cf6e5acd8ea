#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace equispec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders as "p" or "p/q"; always the canonical reduced form.
inline std::string rat_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

/// Parses "p" or "p/q" with an optional leading sign. No float forms:
/// CLI parameters stay exact.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  const auto slash = text.find('/');
  auto check_int = [](const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: missing digits");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("parse_rational: missing digits");
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("parse_rational: not an integer or p/q: " + s);
  };
  if (slash == std::string::npos) {
    check_int(text);
    return Rational(BigInt(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  check_int(num);
  check_int(den);
  BigInt d(den);
  if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
  return Rational(BigInt(num), d);
}

inline Rational pow_rational(const Rational& base, unsigned e) {
  Rational out = 1;
  Rational b = base;
  unsigned n = e;
  while (n) {
    if (n & 1u) out *= b;
    b *= b;
    n >>= 1u;
  }
  return out;
}

struct SquareSplit {
  BigInt root;        // a
  BigInt squarefree;  // b, with n = a^2 * b and b squarefree
};

/// Splits n > 0 into a^2 * b with b squarefree. Trial division with a bound:
/// every kernel produced by the representations here is smooth (products of
/// small linear factors), so the loop terminates quickly; a kernel that is
/// genuinely hard to factor signals a bug upstream and is reported loudly.
inline SquareSplit split_square(BigInt n) {
  if (n <= 0) throw std::domain_error("split_square: argument must be positive");
  SquareSplit out{1, 1};
  auto extract = [&n, &out](const BigInt& p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) out.root *= p;
    if (e & 1) out.squarefree *= p;
  };
  extract(2);
  const long trial_limit = 3'000'000;
  BigInt d = 3;
  while (d * d <= n) {
    if (d > trial_limit) {
      BigInt s = boost::multiprecision::sqrt(n);
      if (s * s == n) {
        out.root *= s;
        n = 1;
        break;
      }
      throw std::overflow_error(
          "split_square: residual cofactor too large to factor: " + n.str());
    }
    extract(d);
    d += 2;
  }
  out.squarefree *= n;  // n is now 1 or prime
  return out;
}

/// Exact square root of a non-negative rational, if it is one.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return Rational(0);
  const auto n = split_square(numerator(r));
  if (n.squarefree != 1) return std::nullopt;
  const auto d = split_square(denominator(r));
  if (d.squarefree != 1) return std::nullopt;
  return Rational(n.root, d.root);
}

}  // namespace equispec
