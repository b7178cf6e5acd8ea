#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "equispec/dpoly.hpp"

namespace equispec {

/// Finite sum of generators W(z^n f(D)) plus a central part: the ParamPoly
/// multiplying the formal central charge c. The charge stays symbolic; the
/// algebra only ever needs the cocycle coefficient it multiplies.
class WElement {
 public:
  WElement() = default;

  static WElement make(int mode, const DPoly& f) {
    WElement out;
    if (!f.is_zero()) out.modes_[mode] = f;
    return out;
  }
  static WElement central(const ParamPoly& c) {
    WElement out;
    out.central_ = c;
    return out;
  }

  bool is_zero() const { return modes_.empty() && central_.is_zero(); }
  const std::map<int, DPoly>& modes() const { return modes_; }
  const ParamPoly& central_part() const { return central_; }
  const DPoly& mode(int n) const {
    static const DPoly zero;
    auto it = modes_.find(n);
    return it == modes_.end() ? zero : it->second;
  }

  WElement& operator+=(const WElement& o) {
    for (const auto& [n, f] : o.modes_) add_mode(n, f);
    central_ += o.central_;
    return *this;
  }
  WElement& operator-=(const WElement& o) {
    for (const auto& [n, f] : o.modes_) add_mode(n, -f);
    central_ -= o.central_;
    return *this;
  }
  friend WElement operator+(WElement a, const WElement& b) { return a += b; }
  friend WElement operator-(WElement a, const WElement& b) { return a -= b; }
  WElement operator-() const {
    WElement out;
    for (const auto& [n, f] : modes_) out.modes_[n] = -f;
    out.central_ = -central_;
    return out;
  }
  friend WElement operator*(const ParamPoly& c, const WElement& x) {
    WElement out;
    if (c.is_zero()) return out;
    for (const auto& [n, f] : x.modes_) out.add_mode(n, c * f);
    out.central_ = c * x.central_;
    return out;
  }
  friend bool operator==(const WElement& a, const WElement& b) {
    return a.modes_ == b.modes_ && a.central_ == b.central_;
  }

  void add_mode(int n, const DPoly& f) {
    auto it = modes_.find(n);
    if (it == modes_.end()) {
      if (!f.is_zero()) modes_[n] = f;
      return;
    }
    it->second += f;
    if (it->second.is_zero()) modes_.erase(it);
  }

 private:
  std::map<int, DPoly> modes_;
  ParamPoly central_;
};

/// Composition of the symbols z^n f(D) and z^m g(D): z^{n+m} f(D+m) g(D).
inline std::pair<int, DPoly> symbol_product(int n, const DPoly& f, int m,
                                            const DPoly& g) {
  return {n + m, f.shift(m) * g};
}

/// 2-cocycle on symbols: zero unless n + m = 0; antisymmetric.
inline ParamPoly cocycle(int n, const DPoly& f, int m, const DPoly& g) {
  if (n + m != 0) return {};
  ParamPoly out;
  if (n >= 1) {
    for (int j = 1; j <= n; ++j) out += f.eval_int(-j) * g.eval_int(n - j);
  } else if (m >= 1) {
    for (int j = 1; j <= m; ++j) out -= f.eval_int(m - j) * g.eval_int(-j);
  }
  return out;
}

/// [W(z^n f), W(z^m g)] = W(z^{n+m}(f(D+m) g(D) - f(D) g(D+n))) + c*Psi,
/// extended bilinearly; the central parts of the inputs commute with
/// everything and drop out.
inline WElement bracket(const WElement& x, const WElement& y) {
  WElement out;
  ParamPoly central;
  for (const auto& [n, f] : x.modes())
    for (const auto& [m, g] : y.modes()) {
      out.add_mode(n + m, f.shift(m) * g - g.shift(n) * f);
      central += cocycle(n, f, m, g);
    }
  return out + WElement::central(central);
}

/// [X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]; identically zero, central part
/// included, when the cocycle condition holds.
inline WElement jacobi_residual(const WElement& x, const WElement& y,
                                const WElement& z) {
  return bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) +
         bracket(z, bracket(x, y));
}

/// Rendering: "W(z^-1*((1)*D)) + W(D^2) + (c)*(1)", modes ascending, central
/// last. Exact and parsed back by parse_welement below.
inline std::string to_string(const WElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [n, f] : x.modes()) {
    if (!out.empty()) out += " + ";
    out += "W(";
    if (n == 0) {
      out += f.str();
    } else {
      out += (n == 1) ? "z" : "z^" + std::to_string(n);
      out += "*(" + f.str() + ")";
    }
    out += ")";
  }
  if (!x.central_part().is_zero()) {
    if (!out.empty()) out += " + ";
    out += "(c)*(" + x.central_part().str() + ")";
  }
  return out;
}

namespace detail {

/// Minimal recursive-descent parser for the rendering above. Atoms are D, k,
/// q and rational literals "p" / "p/q"; operators + - * ^ and parentheses.
class WParser {
 public:
  explicit WParser(std::string_view text) : s_(text) {}

  WElement parse() {
    skip_ws();
    if (peek() == '0' && pos_ + 1 >= s_.size()) return {};
    WElement out;
    bool negate = consume_sign();
    out += parse_term(negate);
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      char op = next();
      if (op != '+' && op != '-') fail("expected + or - between terms");
      out += parse_term(op == '-');
    }
    return out;
  }

 private:
  WElement parse_term(bool negate) {
    skip_ws();
    if (peek() == 'W') {
      ++pos_;
      expect('(');
      int mode = 0;
      skip_ws();
      if (peek() == 'z') {
        ++pos_;
        mode = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          mode = parse_int().convert_to<int>();
        }
        expect('*');
        expect('(');
        DPoly f = parse_sum();
        expect(')');
        expect(')');
        return negate ? -WElement::make(mode, f) : WElement::make(mode, f);
      }
      DPoly f = parse_sum();
      expect(')');
      return negate ? -WElement::make(0, f) : WElement::make(0, f);
    }
    if (peek() == '(') {  // central part: (c)*(poly)
      expect('(');
      if (next() != 'c') fail("expected central symbol c");
      expect(')');
      expect('*');
      expect('(');
      DPoly f = parse_sum();
      expect(')');
      if (!f.is_constant()) fail("central coefficient must be free of D");
      ParamPoly c = f.coeff(0);
      return WElement::central(negate ? -c : c);
    }
    fail("expected W(...) or (c)*(...)");
    return {};
  }

  DPoly parse_sum() {
    bool negate = consume_sign();
    DPoly out = parse_product(negate);
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      out += parse_product(c == '-');
    }
    return out;
  }

  DPoly parse_product(bool negate) {
    DPoly out = parse_factor();
    while (true) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      out *= parse_factor();
    }
    return negate ? -out : out;
  }

  DPoly parse_factor() {
    DPoly base = parse_atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      const long e = parse_int().convert_to<long>();
      if (e < 0) fail("negative exponent outside z");
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  DPoly parse_atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      DPoly inner = parse_sum();
      expect(')');
      return inner;
    }
    if (c == 'D') {
      ++pos_;
      return DPoly::D();
    }
    if (c == 'k') {
      ++pos_;
      return DPoly(ParamPoly::k());
    }
    if (c == 'q') {
      ++pos_;
      return DPoly(ParamPoly::q());
    }
    if (c == '-' || (c >= '0' && c <= '9')) return DPoly(ParamPoly(parse_rational_lit()));
    fail("unexpected character in polynomial");
    return {};
  }

  Rational parse_rational_lit() {
    BigInt num = parse_int();
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      BigInt den = parse_int();
      return Rational(num, den);
    }
    return Rational(num);
  }

  BigInt parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (s_[start] == '-' && pos_ == start + 1)) fail("expected integer");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  bool consume_sign() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return true;
    }
    if (peek() == '+') ++pos_;
    return false;
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char next() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
  void expect(char c) {
    skip_ws();
    if (next() != c) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("parse_welement: " + why + " at offset " +
                                std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline WElement parse_welement(std::string_view text) {
  return detail::WParser(text).parse();
}

}  // namespace equispec
