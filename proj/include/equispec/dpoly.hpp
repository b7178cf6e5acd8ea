#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "equispec/param_poly.hpp"

namespace equispec {

/// Polynomial in the Euler operator D = z d/dz with ParamPoly coefficients;
/// c_[i] multiplies D^i, trailing zeros trimmed. Doubles as Q[k,q][H] when an
/// identity has to hold for the Hamiltonian as an indeterminate.
class DPoly {
 public:
  DPoly() = default;
  DPoly(const ParamPoly& c) {
    if (!c.is_zero()) c_ = {c};
  }
  DPoly(const Rational& c) : DPoly(ParamPoly(c)) {}
  DPoly(long c) : DPoly(ParamPoly(c)) {}
  DPoly(int c) : DPoly(ParamPoly(c)) {}
  DPoly(std::initializer_list<ParamPoly> ascending) : c_(ascending) { trim(); }

  static DPoly D() { return DPoly{ParamPoly(0), ParamPoly(1)}; }
  /// D + a
  static DPoly linear(const ParamPoly& a) { return DPoly{a, ParamPoly(1)}; }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
  const ParamPoly& coeff(int i) const {
    static const ParamPoly zero;
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : zero;
  }
  bool is_constant() const { return degree() <= 0; }

  DPoly& operator+=(const DPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  DPoly& operator-=(const DPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend DPoly operator+(DPoly a, const DPoly& b) { return a += b; }
  friend DPoly operator-(DPoly a, const DPoly& b) { return a -= b; }
  DPoly operator-() const {
    DPoly out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
  }
  friend DPoly operator*(const DPoly& a, const DPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    DPoly out;
    out.c_.resize(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    out.trim();
    return out;
  }
  DPoly& operator*=(const DPoly& o) { return *this = *this * o; }
  friend bool operator==(const DPoly& a, const DPoly& b) { return a.c_ == b.c_; }

  DPoly pow(int e) const {
    if (e < 0) throw std::domain_error("DPoly::pow: negative exponent");
    DPoly out(1);
    DPoly b = *this;
    while (e) {
      if (e & 1) out *= b;
      b *= b;
      e >>= 1;
    }
    return out;
  }

  /// f(D) -> f(D + m); shift(shift(f,a),b) = shift(f,a+b).
  DPoly shift(int m) const {
    if (m == 0 || is_zero()) return *this;
    const DPoly lin = DPoly{ParamPoly(m), ParamPoly(1)};
    DPoly out;
    for (int i = degree(); i >= 0; --i) out = out * lin + DPoly(c_[i]);
    return out;
  }

  /// f evaluated at an integer mode, coefficients staying in Q[k,q].
  ParamPoly eval_int(long j) const { return eval(Rational(j)); }

  ParamPoly eval(const Rational& x) const {
    ParamPoly out;
    for (int i = degree(); i >= 0; --i) out = out * ParamPoly(x) + c_[i];
    return out;
  }

  /// Full numeric evaluation at (x, k, q).
  Rational eval_all(const Rational& x, const Rational& kv, const Rational& qv) const {
    Rational out = 0;
    for (int i = degree(); i >= 0; --i) out = out * x + c_[i].eval(kv, qv);
    return out;
  }

  /// "D^2 + (k)*D + (-1/2)"; descending powers, every non-unit coefficient
  /// parenthesized so the rendering parses back unambiguously.
  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string power;
      if (i >= 1) power = (i == 1) ? "D" : "D^" + std::to_string(i);
      if (power.empty()) {
        out += "(" + c_[i].str() + ")";
      } else if (c_[i] == ParamPoly(1)) {
        out += power;
      } else {
        out += "(" + c_[i].str() + ")*" + power;
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<ParamPoly> c_;
};

inline DPoly operator*(const ParamPoly& c, const DPoly& f) { return DPoly(c) * f; }

/// Product of linear factors (D + a + offset_i), the building block of every
/// ladder-operator image.
inline DPoly linear_product(const ParamPoly& a, int offset_begin, int offset_end) {
  DPoly out(1);
  for (int i = offset_begin; i < offset_end; ++i)
    out *= DPoly::linear(a + ParamPoly(i));
  return out;
}

}  // namespace equispec
