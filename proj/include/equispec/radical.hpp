#pragma once

#include <cmath>
#include <map>
#include <string>

#include "equispec/rational.hpp"

namespace equispec {

/// Exact finite sum of terms c*sqrt(s), rational c, kernel s a squarefree
/// positive integer (the coefficient absorbs any denominator:
/// sqrt(p/q) = sqrt(p*q)/q). Kernel 1 is the rational part. Products of two
/// normalized kernels need no factorization: with g = gcd(s1, s2),
/// sqrt(s1)*sqrt(s2) = g*sqrt((s1/g)*(s2/g)) and the new kernel is again
/// squarefree.
class RadicalScalar {
 public:
  RadicalScalar() = default;
  RadicalScalar(const Rational& c) {
    if (c != 0) terms_[BigInt(1)] = c;
  }
  RadicalScalar(long c) : RadicalScalar(Rational(c)) {}
  RadicalScalar(int c) : RadicalScalar(Rational(c)) {}

  /// c * sqrt(s) normalized; s >= 0. A negative kernel signals a
  /// representation bug upstream (every xi/rho value on physical states is
  /// non-negative), so it is rejected rather than modeled.
  static RadicalScalar make(const Rational& c, const Rational& s) {
    if (s < 0) throw std::domain_error("RadicalScalar: negative kernel " + rat_str(s));
    RadicalScalar out;
    if (c == 0 || s == 0) return out;
    const BigInt n = numerator(s) * denominator(s);
    const SquareSplit sp = split_square(n);
    const Rational coeff = c * Rational(sp.root, denominator(s));
    if (coeff != 0) out.terms_[sp.squarefree] = coeff;
    return out;
  }

  static RadicalScalar sqrt_of(const Rational& s) { return make(1, s); }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
  }
  Rational rational_value() const {
    if (terms_.empty()) return 0;
    if (!is_rational()) throw std::domain_error("RadicalScalar: irrational: " + str());
    return terms_.begin()->second;
  }
  const std::map<BigInt, Rational>& terms() const { return terms_; }

  RadicalScalar& operator+=(const RadicalScalar& o) {
    for (const auto& [s, c] : o.terms_) add_term(s, c);
    return *this;
  }
  RadicalScalar& operator-=(const RadicalScalar& o) {
    for (const auto& [s, c] : o.terms_) add_term(s, -c);
    return *this;
  }
  friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }
  friend RadicalScalar operator-(RadicalScalar a, const RadicalScalar& b) { return a -= b; }
  RadicalScalar operator-() const {
    RadicalScalar out;
    for (const auto& [s, c] : terms_) out.terms_[s] = -c;
    return out;
  }

  friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
    RadicalScalar out;
    for (const auto& [sa, ca] : a.terms_)
      for (const auto& [sb, cb] : b.terms_) {
        const BigInt g = boost::multiprecision::gcd(sa, sb);
        out.add_term((sa / g) * (sb / g), ca * cb * Rational(g));
      }
    return out;
  }
  RadicalScalar& operator*=(const RadicalScalar& o) { return *this = *this * o; }

  friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) {
    return a.terms_ == b.terms_;
  }

  double to_double() const {
    double out = 0;
    for (const auto& [s, c] : terms_)
      out += c.convert_to<double>() * std::sqrt(s.convert_to<double>());
    return out;
  }

  /// "2*sqrt(2) - 1/3"; kernels ascending, so a rational part comes first.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [s, c] : terms_) {
      Rational a = c;
      if (out.empty()) {
        if (a < 0) {
          out += "-";
          a = -a;
        }
      } else {
        out += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      }
      if (s == 1) {
        out += rat_str(a);
      } else {
        if (a != 1) out += rat_str(a) + "*";
        out += "sqrt(" + s.str() + ")";
      }
    }
    return out;
  }

 private:
  void add_term(const BigInt& s, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(s);
    if (it == terms_.end()) {
      terms_[s] = c;
      return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  std::map<BigInt, Rational> terms_;  // squarefree kernel -> nonzero coefficient
};

inline RadicalScalar operator*(const Rational& c, const RadicalScalar& r) {
  return RadicalScalar(c) * r;
}

}  // namespace equispec
