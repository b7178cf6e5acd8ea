#pragma once

#include <array>
#include <string>
#include <vector>

#include "equispec/fock.hpp"
#include "equispec/welement.hpp"

namespace equispec {

// ---------------------------------------------------------------------------
// SQM algebra inside W_{1+infinity}.

/// Constants of the realization (O†)^m H^n -> W(z^m (D+a1+m-1)...(D+a1)(D+a0)^n)
/// and its lowering counterpart.
struct SqmRealization {
  ParamPoly a0, a1, am1;
};

inline WElement map_sqm(int m, int n, const SqmRealization& r, bool raising) {
  if (m < 0 || n < 0) throw std::domain_error("map_sqm: negative word length");
  const DPoly hn = DPoly::linear(r.a0).pow(n);
  if (m == 0) return WElement::make(0, hn);
  if (raising) {
    // (D + a1 + m-1)(D + a1 + m-2) ... (D + a1)
    return WElement::make(m, linear_product(r.a1, 0, m) * hn);
  }
  // (D + a_{-1} - m) ... (D + a_{-1} - 1) * (D - m + 1) ... D
  const DPoly f = linear_product(r.am1, -m, 0) * linear_product(ParamPoly(0), -m + 1, 1);
  return WElement::make(-m, f * hn);
}

/// Solves the constraint system over Q[k]: the cubic
/// 2 a0^3 - (k+3) a0^2 + (k+1) a0 = 0 factors into three roots, and for each
/// a0 the pair {a1, a_{-1}} solves a symmetric quadratic whose discriminant
/// is a perfect square. Returns all six ordered triples.
inline std::vector<SqmRealization> solve_sqm_constraints() {
  const ParamPoly k = ParamPoly::k(), one(1);

  // Cubic in a0 with coefficients in Q[k]; zero constant term gives a0 = 0,
  // the deflated quadratic 2 a0^2 - (k+3) a0 + (k+1) the other two roots.
  std::vector<ParamPoly> a0_roots{ParamPoly(0)};
  const auto quad = solve_quadratic(2, -(k + ParamPoly(3)), k + one);
  if (!quad)
    throw std::logic_error("solve_sqm_constraints: cubic does not factor over Q[k]");
  a0_roots.push_back(quad->first);
  a0_roots.push_back(quad->second);

  std::vector<SqmRealization> out;
  for (const ParamPoly& a0 : a0_roots) {
    // a1 + a_{-1} = (6 a0 + 1 - k)/2,  a1 * a_{-1} = 3 a0^2 - k a0.
    const ParamPoly sum = Rational(1, 2) * (6 * a0 + one - k);
    const ParamPoly prod = 3 * a0 * a0 - k * a0;
    const auto pair = solve_quadratic(1, -sum, prod);
    if (!pair)
      throw std::logic_error("solve_sqm_constraints: a1/a-1 quadratic does not factor");
    out.push_back({a0, pair->first, pair->second});
    out.push_back({a0, pair->second, pair->first});
  }
  return out;
}

struct RelationCheck {
  std::string name;
  bool pass;
  WElement residual;
};

/// The relation set: grading of O and O†, the quadratic commutator, and the
/// cubic relation from [O, O†H]. Residual WElements must vanish identically
/// over Q[k], central parts included.
inline std::vector<RelationCheck> verify_sqm_relations(const SqmRealization& r) {
  const ParamPoly k = ParamPoly::k();
  const WElement img_h = map_sqm(0, 1, r, true);
  const WElement img_h2 = map_sqm(0, 2, r, true);
  const WElement img_h3 = map_sqm(0, 3, r, true);
  const WElement img_o = map_sqm(1, 0, r, false);
  const WElement img_odag = map_sqm(1, 0, r, true);
  const WElement img_odag_h = map_sqm(1, 1, r, true);

  std::vector<RelationCheck> out;
  auto push = [&out](const std::string& name, const WElement& residual) {
    out.push_back({name, residual.is_zero(), residual});
  };
  push("wmap.grading.raise", bracket(img_h, img_odag) - img_odag);
  push("wmap.grading.lower", bracket(img_h, img_o) + img_o);
  push("wmap.commutator",
       bracket(img_o, img_odag) - (ParamPoly(3) * img_h2 - k * img_h));
  // [O, O†H] = (3H^2 - kH)H + sigma(H) = 4H^3 - (3k+3)/2 H^2 + (k+1)/2 H.
  const WElement rhs = ParamPoly(4) * img_h3 -
                       Rational(3, 2) * (k + ParamPoly(1)) * img_h2 +
                       Rational(1, 2) * (k + ParamPoly(1)) * img_h;
  push("wmap.cubic", bracket(img_o, img_odag_h) - rhs);
  return out;
}

struct CocycleScan {
  bool all_zero = true;
  int checked = 0;
  std::string first_nonzero;  // "m=.. n=.. l=..: value" when a pair fails
};

/// The central term could only arise from pairs [O^m H^n, (O†)^m H^l]; the
/// image polynomials carry the factor (D-m+1)...D, which kills every summand
/// of the cocycle. Holds for arbitrary constants, not just solutions.
inline CocycleScan verify_cocycle_vanishing(const SqmRealization& r, int max_m,
                                            int max_n, int max_l) {
  CocycleScan out;
  for (int m = 1; m <= max_m; ++m)
    for (int n = 0; n <= max_n; ++n)
      for (int l = 0; l <= max_l; ++l) {
        const WElement lo = map_sqm(m, n, r, false);
        const WElement hi = map_sqm(m, l, r, true);
        const ParamPoly psi = cocycle(-m, lo.mode(-m), m, hi.mode(m));
        ++out.checked;
        if (!psi.is_zero() && out.all_zero) {
          out.all_zero = false;
          out.first_nonzero = "m=" + std::to_string(m) + " n=" + std::to_string(n) +
                              " l=" + std::to_string(l) + ": " + psi.str();
        }
      }
  return out;
}

// ---------------------------------------------------------------------------
// PSQM algebra inside W_infinity.

struct PsqmRealization {
  ParamPoly alpha, beta, lambda;
};

/// The three solution rows; verified against the constraint system rather
/// than derived, since the eliminant does not factor over Q[k,q].
inline std::vector<PsqmRealization> psqm_realizations() {
  const ParamPoly k = ParamPoly::k(), q = ParamPoly::q(), one(1);
  std::vector<PsqmRealization> out;
  out.push_back({Rational(-1, 2) * (2 * q + k + one),
                 Rational(1, 4) * (q * q + (k + one) * q), Rational(-1, 2) * q});
  out.push_back({Rational(-1, 2) * (2 * q + k + ParamPoly(3)),
                 Rational(1, 4) * (q * q + (k + ParamPoly(3)) * q + 2 * (k + one)),
                 Rational(1, 2) * (ParamPoly(2) - q)});
  out.push_back({-q - one, Rational(1, 4) * (q * q + 2 * q),
                 Rational(1, 2) * (one - q - k)});
  return out;
}

/// P^n H3^m -> W(f(D)^n D^m) with f(D) = z^{-1}(D^2 + alpha D + beta)D; the
/// power is a symbol power, so the z-shifts walk through the factors:
/// f(D)^n = z^{-n} p(D-n+1) p(D-n+2) ... p(D). Raising uses g(D) = z(D+lambda)D.
inline WElement map_psqm(int n, int m, const PsqmRealization& r, bool raising) {
  if (n < 0 || m < 0) throw std::domain_error("map_psqm: negative word length");
  const DPoly hm = DPoly::D().pow(m);
  if (n == 0) return WElement::make(0, hm);
  DPoly f(1);
  if (raising) {
    const DPoly s = DPoly::linear(r.lambda) * DPoly::D();
    for (int j = 0; j < n; ++j) f *= s.shift(j);
    return WElement::make(n, f * hm);
  }
  const DPoly p = (DPoly::D() * DPoly::D() + r.alpha * DPoly::D() + DPoly(r.beta)) * DPoly::D();
  for (int j = 0; j < n; ++j) f *= p.shift(-j);
  return WElement::make(-n, f * hm);
}

/// Constraint equations plus the walg-level consistency checks: the image of
/// [P, P†] must equal the image of chi(H3), the image of [P, P†H3] must equal
/// that of chi(H3)H3 + rho(H3), and the cocycle must vanish on matched pairs.
inline std::vector<RelationCheck> verify_psqm_constraints(const PsqmRealization& r,
                                                          int max_pair_power = 3) {
  const ParamPoly k = ParamPoly::k(), q = ParamPoly::q(), one(1);
  std::vector<RelationCheck> out;

  const ParamPoly eq1 = 2 * r.alpha + 2 * r.lambda + one - (-3 * q - k);
  const ParamPoly eq2 =
      4 * r.beta + 4 * r.lambda + 4 * r.alpha * r.lambda - (3 * q * q + 2 * q * k);
  const ParamPoly eq3 = -4 * r.beta + 4 * r.lambda + 4 * r.alpha * r.lambda +
                        8 * r.beta * r.lambda - (-q.pow(3) - k * q * q - 2 * q);
  out.push_back({"wmap.psqm.eq1", eq1.is_zero(), WElement::central(eq1)});
  out.push_back({"wmap.psqm.eq2", eq2.is_zero(), WElement::central(eq2)});
  out.push_back({"wmap.psqm.eq3", eq3.is_zero(), WElement::central(eq3)});

  auto img_poly = [&r](const DPoly& p) {
    WElement acc;
    for (int i = 0; i <= p.degree(); ++i)
      acc += p.coeff(i) * map_psqm(0, i, r, true);
    return acc;
  };
  const WElement img_p = map_psqm(1, 0, r, false);
  const WElement img_pdag = map_psqm(1, 0, r, true);
  const WElement comm_res = bracket(img_p, img_pdag) - img_poly(psqm_chi());
  out.push_back({"wmap.psqm.commutator", comm_res.is_zero(), comm_res});

  const DPoly chi_h_plus_rho = psqm_chi() * DPoly::D() + psqm_rho();
  const WElement cubic_res =
      bracket(img_p, map_psqm(1, 1, r, true)) - img_poly(chi_h_plus_rho);
  out.push_back({"wmap.psqm.quintic", cubic_res.is_zero(), cubic_res});

  bool cocycle_ok = true;
  ParamPoly first_bad;
  for (int n = 1; n <= max_pair_power; ++n)
    for (int l = 0; l <= max_pair_power; ++l)
      for (int m = 0; m <= max_pair_power; ++m) {
        const WElement lo = map_psqm(n, l, r, false);
        const WElement hi = map_psqm(n, m, r, true);
        const ParamPoly psi = cocycle(-n, lo.mode(-n), n, hi.mode(n));
        if (!psi.is_zero() && cocycle_ok) {
          cocycle_ok = false;
          first_bad = psi;
        }
      }
  out.push_back({"wmap.psqm.cocycle", cocycle_ok, WElement::central(first_bad)});
  return out;
}

// ---------------------------------------------------------------------------
// Structural properties of the maps.

/// Images of distinct basis elements (m, n), m, n <= max_mn, are linearly
/// independent; checked as a rank computation over Q after specializing k.
inline bool images_linearly_independent(const SqmRealization& r, int max_mn,
                                        const Rational& k_value) {
  std::vector<WElement> images;
  for (int m = 0; m <= max_mn; ++m)
    for (int n = 0; n <= max_mn; ++n) {
      images.push_back(map_sqm(m, n, r, true));
      if (m > 0) images.push_back(map_sqm(m, n, r, false));
    }

  // Flatten: columns indexed by (mode, D-power).
  const int mode_span = 2 * max_mn + 1, deg_span = 3 * max_mn + 2;
  const int cols = mode_span * deg_span;
  std::vector<std::vector<Rational>> rows;
  for (const WElement& w : images) {
    std::vector<Rational> row(cols, 0);
    for (const auto& [mode, f] : w.modes())
      for (int i = 0; i <= f.degree(); ++i)
        row[(mode + max_mn) * deg_span + i] = f.coeff(i).eval(k_value, 0);
    rows.push_back(std::move(row));
  }

  // Gaussian elimination over Q; full row rank <=> independence.
  std::size_t rank = 0;
  for (int c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[rank][c];
      for (int j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank == rows.size();
}

/// Under the W_infinity gauge a0 = a1 = 0, a_{-1} = (1-k)/2 no image of a
/// nontrivial basis element carries a constant-polynomial mode W(z^n * const).
inline bool images_avoid_constant_modes(int max_mn) {
  const SqmRealization r{ParamPoly(0), ParamPoly(0),
                         Rational(1, 2) * (ParamPoly(1) - ParamPoly::k())};
  for (int m = 0; m <= max_mn; ++m)
    for (int n = 0; n <= max_mn; ++n) {
      if (m == 0 && n == 0) continue;  // the identity maps to W(1)
      for (bool raising : {true, false}) {
        if (m == 0 && !raising) continue;
        const WElement w = map_sqm(m, n, r, raising);
        for (const auto& [mode, f] : w.modes())
          if (f.degree() < 1) return false;
      }
    }
  return true;
}

/// Cross-representation consistency: read the abstract relation polynomials
/// out of the W_infinity gauge (where H^j maps to W(D^j)) and re-check them
/// on the Fock matrices at a rational k.
inline bool cross_representation_consistent(const Rational& k_value, int levels) {
  const SqmRealization gauge{ParamPoly(0), ParamPoly(0),
                             Rational(1, 2) * (ParamPoly(1) - ParamPoly::k())};
  const SqmModel model{k_value, levels};
  const SqmOps ops = build_sqm(model);
  const auto energies = sqm_energies(model);

  auto as_diagonal_poly = [&](const WElement& w) {
    // expects a pure mode-0 element Sum c_j W(D^j) and no central part
    if (!w.central_part().is_zero()) throw std::logic_error("unexpected central term");
    for (const auto& [mode, f] : w.modes())
      if (mode != 0) throw std::logic_error("unexpected nonzero mode");
    return poly_of_diagonal(w.mode(0), energies, k_value, 0);
  };

  const WElement img_h = map_sqm(0, 1, gauge, true);
  const WElement img_o = map_sqm(1, 0, gauge, false);
  const WElement img_odag = map_sqm(1, 0, gauge, true);

  // [O, O†] read off the symbol algebra, then matched against the matrices.
  FockOperator rhs1 = as_diagonal_poly(bracket(img_o, img_odag));
  rhs1.set_frontier(2);
  const auto c1 = scan_interior(commutator(ops.O, ops.Odag) - rhs1, 1, levels);

  // [O, O†H] likewise.
  FockOperator rhs2 = as_diagonal_poly(bracket(img_o, map_sqm(1, 1, gauge, true)));
  rhs2.set_frontier(2);
  const FockOperator odag_h = ops.Odag * ops.H;
  const auto c2 = scan_interior(commutator(ops.O, odag_h) - rhs2, 1, levels);

  // Grading relations: the bracket image must reproduce O† and -O exactly.
  const WElement g1 = bracket(img_h, img_odag) - img_odag;
  const WElement g2 = bracket(img_h, img_o) + img_o;

  return c1.conclusive && c1.zero && c2.conclusive && c2.zero && g1.is_zero() &&
         g2.is_zero();
}

// ---------------------------------------------------------------------------
// Table rendering (golden-format text).

inline std::string render_sqm_table(const std::vector<SqmRealization>& rows,
                                    const Rational* k_value = nullptr) {
  std::string out = "Table: SQM realization constants (a0, a1, a-1) over Q[k]\n";
  auto show = [&](const ParamPoly& p) {
    return k_value ? rat_str(p.eval(*k_value, 0)) : p.str();
  };
  int i = 0;
  for (const auto& r : rows)
    out += "  row " + std::to_string(++i) + ": a0 = " + show(r.a0) +
           ", a1 = " + show(r.a1) + ", a-1 = " + show(r.am1) + "\n";
  return out;
}

inline std::string render_psqm_table(const std::vector<PsqmRealization>& rows,
                                     const Rational* k_value = nullptr,
                                     const Rational* q_value = nullptr) {
  std::string out = "Table: PSQM realization constants (alpha, beta, lambda) over Q[k,q]\n";
  auto show = [&](const ParamPoly& p) {
    if (k_value && q_value) return rat_str(p.eval(*k_value, *q_value));
    if (k_value) return p.eval_k(*k_value).str();
    return p.str();
  };
  int i = 0;
  for (const auto& r : rows)
    out += "  row " + std::to_string(++i) + ": alpha = " + show(r.alpha) +
           ", beta = " + show(r.beta) + ", lambda = " + show(r.lambda) + "\n";
  return out;
}

}  // namespace equispec
