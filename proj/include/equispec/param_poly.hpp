#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "equispec/rational.hpp"

namespace equispec {

/// Exact polynomial over Q in the two energy-gap parameters k and q.
/// Sparse map from (deg_k, deg_q) to a nonzero rational coefficient.
class ParamPoly {
 public:
  using Key = std::pair<int, int>;

  ParamPoly() = default;
  ParamPoly(const Rational& c) {
    if (c != 0) terms_[{0, 0}] = c;
  }
  ParamPoly(long c) : ParamPoly(Rational(c)) {}
  ParamPoly(int c) : ParamPoly(Rational(c)) {}

  static ParamPoly k(int deg = 1) { return monomial(deg, 0, 1); }
  static ParamPoly q(int deg = 1) { return monomial(0, deg, 1); }
  static ParamPoly monomial(int dk, int dq, const Rational& c) {
    ParamPoly p;
    if (c != 0) p.terms_[{dk, dq}] = c;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
  }
  Rational constant_value() const {
    if (is_zero()) return 0;
    if (!is_constant()) throw std::domain_error("ParamPoly: not a constant: " + str());
    return terms_.begin()->second;
  }
  int degree_k() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first);
    return d;
  }
  int degree_q() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.second);
    return d;
  }
  bool uses_q() const { return degree_q() > 0; }
  Rational coeff(int dk, int dq) const {
    auto it = terms_.find({dk, dq});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  const std::map<Key, Rational>& terms() const { return terms_; }

  ParamPoly& operator+=(const ParamPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key, c);
    return *this;
  }
  ParamPoly& operator-=(const ParamPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key, -c);
    return *this;
  }
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        out.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return out;
  }
  ParamPoly operator-() const {
    ParamPoly out;
    for (const auto& [key, c] : terms_) out.terms_[key] = -c;
    return out;
  }
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
    return a.terms_ == b.terms_;
  }

  ParamPoly pow(int e) const {
    if (e < 0) throw std::domain_error("ParamPoly::pow: negative exponent");
    ParamPoly out(1);
    ParamPoly b = *this;
    while (e) {
      if (e & 1) out *= b;
      b *= b;
      e >>= 1;
    }
    return out;
  }

  Rational eval(const Rational& kv, const Rational& qv) const {
    Rational out = 0;
    for (const auto& [key, c] : terms_)
      out += c * pow_rational(kv, static_cast<unsigned>(key.first)) *
             pow_rational(qv, static_cast<unsigned>(key.second));
    return out;
  }

  /// Partial substitution of k, leaving q symbolic.
  ParamPoly eval_k(const Rational& kv) const {
    ParamPoly out;
    for (const auto& [key, c] : terms_)
      out += monomial(0, key.second, c * pow_rational(kv, static_cast<unsigned>(key.first)));
    return out;
  }

  /// "3*k^2 - 1/2*k*q + 1"; terms in descending (deg_k, deg_q) order.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      Rational c = it->second;
      if (out.empty()) {
        if (c < 0) {
          out += "-";
          c = -c;
        }
      } else {
        out += (c < 0) ? " - " : " + ";
        if (c < 0) c = -c;
      }
      const auto [dk, dq] = it->first;
      std::string mono;
      if (dk > 0) mono += (dk == 1) ? "k" : "k^" + std::to_string(dk);
      if (dq > 0) {
        if (!mono.empty()) mono += "*";
        mono += (dq == 1) ? "q" : "q^" + std::to_string(dq);
      }
      if (mono.empty()) {
        out += rat_str(c);
      } else {
        if (c != 1) out += rat_str(c) + "*";
        out += mono;
      }
    }
    return out;
  }

 private:
  void add_term(const Key& key, const Rational& c) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (c != 0) terms_[key] = c;
      return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  std::map<Key, Rational> terms_;
};

inline ParamPoly operator*(const Rational& c, const ParamPoly& p) {
  return ParamPoly(c) * p;
}
inline ParamPoly operator*(int c, const ParamPoly& p) { return ParamPoly(c) * p; }
inline ParamPoly operator*(long c, const ParamPoly& p) { return ParamPoly(c) * p; }

/// Presentation order: by k-degree, then coefficient list; used to emit
/// solution tables deterministically.
inline bool param_poly_less(const ParamPoly& a, const ParamPoly& b) {
  if (a.degree_k() != b.degree_k()) return a.degree_k() < b.degree_k();
  if (a.degree_q() != b.degree_q()) return a.degree_q() < b.degree_q();
  return a.str() < b.str();
}

/// Exact square root in Q[k] (univariate; polynomials involving q are not
/// needed here). Returns nullopt when p is not a perfect square.
inline std::optional<ParamPoly> poly_sqrt(const ParamPoly& p) {
  if (p.is_zero()) return ParamPoly();
  if (p.uses_q()) return std::nullopt;
  const int d2 = p.degree_k();
  if (d2 % 2 != 0) return std::nullopt;
  const int d = d2 / 2;
  const auto lead = rational_sqrt(p.coeff(d2, 0));
  if (!lead) return std::nullopt;
  ParamPoly r = ParamPoly::monomial(d, 0, *lead);
  for (int i = d - 1; i >= 0; --i) {
    const ParamPoly diff = p - r * r;
    if (diff.is_zero()) break;
    r += ParamPoly::monomial(i, 0, diff.coeff(d + i, 0) / (2 * *lead));
  }
  if (r * r == p) return r;
  return std::nullopt;
}

/// Roots of a*x^2 + b*x + c with rational leading coefficient and b, c in
/// Q[k], when the discriminant is a perfect square over Q[k].
struct QuadraticRoots {
  ParamPoly first, second;
};

inline std::optional<QuadraticRoots> solve_quadratic(const Rational& a,
                                                     const ParamPoly& b,
                                                     const ParamPoly& c) {
  if (a == 0) throw std::domain_error("solve_quadratic: zero leading coefficient");
  const ParamPoly disc = b * b - ParamPoly(4 * a) * c;
  const auto s = poly_sqrt(disc);
  if (!s) return std::nullopt;
  const Rational inv = Rational(1) / (2 * a);
  QuadraticRoots roots{inv * (-b + *s), inv * (-b - *s)};
  if (!param_poly_less(roots.first, roots.second)) std::swap(roots.first, roots.second);
  return roots;
}

}  // namespace equispec
