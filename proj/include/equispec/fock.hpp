#pragma once

#include <string>
#include <vector>

#include "equispec/dpoly.hpp"
#include "equispec/radical.hpp"

namespace equispec {

/// Level-truncated operator on the Fock tower: a dense square matrix over
/// RadicalScalar together with a truncation frontier, the number of top
/// levels whose entries are corrupted by the cutoff. Products widen the
/// frontier additively; identity checks only ever compare entries below it.
class FockOperator {
 public:
  FockOperator() = default;
  FockOperator(int dim, int frontier)
      : dim_(dim), frontier_(frontier), m_(static_cast<std::size_t>(dim) * dim) {}

  static FockOperator identity(int dim) {
    FockOperator out(dim, 0);
    for (int i = 0; i < dim; ++i) out.at(i, i) = RadicalScalar(1);
    return out;
  }

  int dim() const { return dim_; }
  int frontier() const { return frontier_; }
  void set_frontier(int f) { frontier_ = f; }

  RadicalScalar& at(int i, int j) { return m_[static_cast<std::size_t>(i) * dim_ + j]; }
  const RadicalScalar& at(int i, int j) const {
    return m_[static_cast<std::size_t>(i) * dim_ + j];
  }

  FockOperator& operator+=(const FockOperator& o) {
    check_dim(o);
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += o.m_[i];
    frontier_ = std::max(frontier_, o.frontier_);
    return *this;
  }
  FockOperator& operator-=(const FockOperator& o) {
    check_dim(o);
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] -= o.m_[i];
    frontier_ = std::max(frontier_, o.frontier_);
    return *this;
  }
  friend FockOperator operator+(FockOperator a, const FockOperator& b) { return a += b; }
  friend FockOperator operator-(FockOperator a, const FockOperator& b) { return a -= b; }

  friend FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    a.check_dim(b);
    FockOperator out(a.dim_, a.frontier_ + b.frontier_);
    for (int i = 0; i < a.dim_; ++i)
      for (int l = 0; l < a.dim_; ++l) {
        const RadicalScalar& ail = a.at(i, l);
        if (ail.is_zero()) continue;
        for (int j = 0; j < a.dim_; ++j) {
          const RadicalScalar& blj = b.at(l, j);
          if (blj.is_zero()) continue;
          out.at(i, j) += ail * blj;
        }
      }
    return out;
  }

  FockOperator scaled(const RadicalScalar& c) const {
    FockOperator out(dim_, frontier_);
    for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = c * m_[i];
    return out;
  }

  /// Adjoint; all entries are real.
  FockOperator dagger() const {
    FockOperator out(dim_, frontier_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

 private:
  void check_dim(const FockOperator& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("FockOperator: dimension mismatch");
  }

  int dim_ = 0;
  int frontier_ = 0;
  std::vector<RadicalScalar> m_;
};

inline FockOperator commutator(const FockOperator& a, const FockOperator& b) {
  return a * b - b * a;
}

// ---------------------------------------------------------------------------
// SQM tower: |G>, |psi_0> .. |psi_N> with H eigenvalues {0, E0, E0+1, ...}.

struct SqmModel {
  Rational k;
  int levels = 40;  // N

  Rational E0() const { return (k + 1) / 2; }
  int dim() const { return levels + 2; }
  int index_ground() const { return 0; }
  int index(int level) const { return 1 + level; }
  Rational energy(int level) const { return E0() + level; }
};

/// Squared raising coefficient of the tower,
/// xi_t = sum_{m=0..t} (3(E0+m)^2 - k(E0+m)); strictly positive for k > -1.
inline Rational xi(int t, const Rational& k) {
  if (t < 0) throw std::domain_error("xi: negative level");
  const Rational e0 = (k + 1) / 2;
  Rational out = 0;
  for (int m = 0; m <= t; ++m) {
    const Rational e = e0 + m;
    out += 3 * e * e - k * e;
  }
  return out;
}

struct SqmOps {
  FockOperator H, O, Odag;
};

inline SqmOps build_sqm(const SqmModel& model) {
  if (model.levels < 1) throw std::invalid_argument("build_sqm: need at least two levels");
  const int d = model.dim();
  SqmOps ops{FockOperator(d, 0), FockOperator(d, 1), FockOperator(d, 1)};
  for (int n = 0; n <= model.levels; ++n)
    ops.H.at(model.index(n), model.index(n)) = RadicalScalar(model.energy(n));
  for (int n = 0; n + 1 <= model.levels; ++n) {
    const RadicalScalar step = RadicalScalar::sqrt_of(xi(n, model.k));
    ops.Odag.at(model.index(n + 1), model.index(n)) = step;
    ops.O.at(model.index(n), model.index(n + 1)) = step;
  }
  return ops;
}

/// Diagonal operator p(H) for a polynomial p over Q[k,q], evaluated exactly
/// on the model's spectrum; entries on the listed diagonal energies.
inline FockOperator poly_of_diagonal(const DPoly& p, const std::vector<Rational>& energies,
                                     const Rational& kv, const Rational& qv) {
  FockOperator out(static_cast<int>(energies.size()), 0);
  for (std::size_t i = 0; i < energies.size(); ++i)
    out.at(static_cast<int>(i), static_cast<int>(i)) =
        RadicalScalar(p.eval_all(energies[i], kv, qv));
  return out;
}

inline std::vector<Rational> sqm_energies(const SqmModel& model) {
  std::vector<Rational> e{Rational(0)};
  for (int n = 0; n <= model.levels; ++n) e.push_back(model.energy(n));
  return e;
}

// Abstract relation polynomials of the SQM algebra, H as indeterminate.
inline DPoly sqm_sigma() {  // O†O = H(H-1)(H-E0)
  const ParamPoly k = ParamPoly::k();
  return DPoly{ParamPoly(0), Rational(1, 2) * (k + ParamPoly(1)),
               Rational(-1, 2) * (k + ParamPoly(3)), ParamPoly(1)};
}
inline DPoly sqm_pi() {  // OO† = sigma(H+1)
  const ParamPoly k = ParamPoly::k();
  return DPoly{ParamPoly(0), Rational(1, 2) * (ParamPoly(1) - k),
               Rational(1, 2) * (ParamPoly(3) - k), ParamPoly(1)};
}
inline DPoly sqm_gap() {  // [O,O†] = 3H^2 - kH
  return DPoly{ParamPoly(0), -ParamPoly::k(), ParamPoly(3)};
}

// ---------------------------------------------------------------------------
// Interior comparison.

struct InteriorScan {
  bool conclusive = false;
  bool zero = false;
  RadicalScalar worst;  // largest-magnitude interior entry of the residual
};

/// Scans rows/columns that are safe from truncation: every index below
/// first_level (ground / isolated states) plus tower levels n with
/// n <= levels - frontier. Needs at least two safe tower levels to conclude.
inline InteriorScan scan_interior(const FockOperator& r, int first_level, int levels) {
  InteriorScan out;
  const int top = levels - r.frontier();
  if (top < 1) return out;
  out.conclusive = true;
  out.zero = true;
  double worst_mag = 0;
  for (int i = 0; i < r.dim(); ++i) {
    if (i >= first_level && i - first_level > top) continue;
    for (int j = 0; j < r.dim(); ++j) {
      if (j >= first_level && j - first_level > top) continue;
      const RadicalScalar& e = r.at(i, j);
      if (e.is_zero()) continue;
      out.zero = false;
      const double mag = std::abs(e.to_double());
      if (mag >= worst_mag) {
        worst_mag = mag;
        out.worst = e;
      }
    }
  }
  return out;
}

struct IdentityCheck {
  enum class Status { pass, fail, inconclusive };
  std::string name;
  Status status;
  std::string worst;  // exact residual rendering; "0" when passing
  int frontier;
};

inline IdentityCheck make_check(const std::string& name, const FockOperator& residual,
                                int first_level, int levels) {
  const InteriorScan scan = scan_interior(residual, first_level, levels);
  IdentityCheck out{name, IdentityCheck::Status::inconclusive, "0", residual.frontier()};
  if (!scan.conclusive) return out;
  out.status = scan.zero ? IdentityCheck::Status::pass : IdentityCheck::Status::fail;
  if (!scan.zero) out.worst = scan.worst.str();
  return out;
}

inline IdentityCheck make_poly_check(const std::string& name, const DPoly& lhs,
                                     const DPoly& rhs) {
  const DPoly diff = lhs - rhs;
  IdentityCheck out{name, IdentityCheck::Status::pass, "0", 0};
  if (!diff.is_zero()) {
    out.status = IdentityCheck::Status::fail;
    out.worst = diff.str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cubic identity suite (SQM).

inline std::vector<IdentityCheck> verify_cubic_identities(const SqmModel& model) {
  const SqmOps ops = build_sqm(model);
  const auto energies = sqm_energies(model);
  const Rational kv = model.k;
  auto diag = [&](const DPoly& p) { return poly_of_diagonal(p, energies, kv, 0); };

  std::vector<IdentityCheck> checks;
  checks.push_back(make_check("fock.cubic.oodag", ops.O * ops.Odag - diag(sqm_pi()), 1,
                              model.levels));
  checks.push_back(make_check("fock.cubic.odago", ops.Odag * ops.O - diag(sqm_sigma()), 1,
                              model.levels));
  checks.push_back(make_check("fock.cubic.commutator",
                              commutator(ops.O, ops.Odag) - diag(sqm_gap()), 1,
                              model.levels));
  checks.push_back(make_check("fock.grading.raise",
                              commutator(ops.H, ops.Odag) - ops.Odag, 1, model.levels));
  checks.push_back(make_check("fock.grading.lower", commutator(ops.H, ops.O) + ops.O, 1,
                              model.levels));

  // |G> is annihilated by H, O and O†: its column must vanish identically.
  bool ground_ok = true;
  for (int i = 0; i < ops.H.dim(); ++i)
    ground_ok = ground_ok && ops.H.at(i, 0).is_zero() && ops.O.at(i, 0).is_zero() &&
                ops.Odag.at(i, 0).is_zero();
  checks.push_back({"fock.ground.annihilated",
                    ground_ok ? IdentityCheck::Status::pass : IdentityCheck::Status::fail,
                    ground_ok ? "0" : "nonzero |G> column", 0});

  // Polynomial-level identities in Q[k][H]: the factorized form of O†O and
  // the unit shift relating the two orderings.
  const ParamPoly e0 = Rational(1, 2) * (ParamPoly::k() + ParamPoly(1));
  const DPoly factored =
      DPoly::D() * DPoly::linear(ParamPoly(-1)) * DPoly::linear(-e0);
  checks.push_back(make_poly_check("fock.poly.sigma_factored", sqm_sigma(), factored));
  checks.push_back(make_poly_check("fock.poly.pi_is_sigma_shift", sqm_pi(),
                                   sqm_sigma().shift(1)));
  return checks;
}

// ---------------------------------------------------------------------------
// Virasoro-type operators: L_n raises n quanta, L†_n lowers.

inline FockOperator virasoro(int n, const SqmModel& model, bool daggered) {
  if (n < 0) throw std::domain_error("virasoro: mode must be non-negative");
  FockOperator out(model.dim(), n);
  const Rational e0 = model.E0();
  for (int m = 0; m <= model.levels; ++m) {
    if (daggered) {
      if (n > m) continue;  // annihilates below the n-th rung
      Rational val = (m + e0) * (m - n + e0);
      for (int j = m - n + 1; j <= m; ++j) val *= j;  // m!/(m-n)!
      out.at(model.index(m - n), model.index(m)) = RadicalScalar::sqrt_of(val);
    } else {
      if (m + n > model.levels) continue;
      Rational val = (m + e0) * (m + n + e0);
      for (int j = m + 1; j <= m + n; ++j) val *= j;  // (m+n)!/m!
      out.at(model.index(m + n), model.index(m)) = RadicalScalar::sqrt_of(val);
    }
  }
  return out;
}

/// [L_n, L_m] = (m-n) L_{n+m} and [L†_n, L†_m] = (n-m) L†_{n+m} on interior
/// entries, for all 0 <= n, m <= max_mode.
inline std::vector<IdentityCheck> verify_virasoro(const SqmModel& model, int max_mode) {
  std::vector<IdentityCheck> checks;
  for (int n = 0; n <= max_mode; ++n)
    for (int m = 0; m <= max_mode; ++m) {
      const FockOperator lhs = commutator(virasoro(n, model, false), virasoro(m, model, false));
      FockOperator rhs = virasoro(n + m, model, false).scaled(RadicalScalar(Rational(m - n)));
      rhs.set_frontier(n + m);
      checks.push_back(make_check(
          "fock.virasoro.raise." + std::to_string(n) + "." + std::to_string(m),
          lhs - rhs, 1, model.levels));

      const FockOperator lhsd = commutator(virasoro(n, model, true), virasoro(m, model, true));
      FockOperator rhsd = virasoro(n + m, model, true).scaled(RadicalScalar(Rational(n - m)));
      rhsd.set_frontier(n + m);
      checks.push_back(make_check(
          "fock.virasoro.lower." + std::to_string(n) + "." + std::to_string(m),
          lhsd - rhsd, 1, model.levels));
    }
  return checks;
}

// ---------------------------------------------------------------------------
// Coherent states O|alpha> = alpha|alpha>.

struct CoherentExact {
  std::vector<RadicalScalar> coeffs;   // component on |psi_n>
  std::vector<Rational> norm_terms;    // |alpha|^{2n} / prod_{t<n} xi_t
  std::vector<Rational> norm_partials; // running sums of norm_terms
  std::vector<Rational> ratios;        // term ratios alpha^2 / xi_n
  bool eigen_exact = false;            // O|a> - a|a> vanishes below the cut
};

inline CoherentExact coherent_state(const Rational& alpha, const SqmModel& model) {
  CoherentExact out;
  RadicalScalar c(1);
  Rational term = 1, partial = 0;
  const Rational a2 = alpha * alpha;
  for (int n = 0; n <= model.levels; ++n) {
    out.coeffs.push_back(c);
    out.norm_terms.push_back(term);
    partial += term;
    out.norm_partials.push_back(partial);
    const Rational x = xi(n, model.k);
    out.ratios.push_back(a2 / x);
    // c_{n+1} = c_n * alpha / sqrt(xi_n); 1/sqrt(x) = sqrt(x)/x.
    c = c * RadicalScalar::make(alpha / x, x);
    term *= a2 / x;
  }
  out.eigen_exact = true;
  for (int n = 0; n + 1 <= model.levels; ++n) {
    // component of O|a> - a|a> on |psi_n>: sqrt(xi_n) c_{n+1} - a c_n
    const RadicalScalar r =
        RadicalScalar::sqrt_of(xi(n, model.k)) * out.coeffs[n + 1] -
        RadicalScalar(alpha) * out.coeffs[n];
    if (!r.is_zero()) out.eigen_exact = false;
  }
  return out;
}

struct CoherentNumeric {
  std::vector<double> coeffs, norm_terms, norm_partials, ratios;
  double eigen_residual_rel = 0;  // ||O|a> - a|a>|| / |||a>|| on the truncated tower
};

inline CoherentNumeric coherent_state_numeric(double alpha, const SqmModel& model) {
  CoherentNumeric out;
  std::vector<double> xis(model.levels + 1);
  for (int n = 0; n <= model.levels; ++n)
    xis[n] = xi(n, model.k).convert_to<double>();
  double c = 1, term = 1, partial = 0;
  for (int n = 0; n <= model.levels; ++n) {
    out.coeffs.push_back(c);
    out.norm_terms.push_back(term);
    partial += term;
    out.norm_partials.push_back(partial);
    out.ratios.push_back(alpha * alpha / xis[n]);
    c *= alpha / std::sqrt(xis[n]);
    term *= alpha * alpha / xis[n];
  }
  double res2 = 0, norm2 = 0;
  for (int n = 0; n <= model.levels; ++n) {
    const double up = (n + 1 <= model.levels) ? std::sqrt(xis[n]) * out.coeffs[n + 1] : 0.0;
    const double diff = up - alpha * out.coeffs[n];
    res2 += diff * diff;
    norm2 += out.coeffs[n] * out.coeffs[n];
  }
  out.eigen_residual_rel = std::sqrt(res2 / norm2);
  return out;
}

// ---------------------------------------------------------------------------
// PSQM order 2: H3 tower plus optional isolated levels {0, q/2}.

inline DPoly psqm_pi() {  // PP†
  const ParamPoly k = ParamPoly::k(), q = ParamPoly::q(), one(1);
  const ParamPoly h4 = Rational(-1, 2) * (3 * q + k - ParamPoly(5));
  const ParamPoly h3 =
      Rational(1, 4) * (3 * q * q + 2 * (k - ParamPoly(6)) * q + 4 * (ParamPoly(2) - k));
  const ParamPoly h2 =
      Rational(-1, 8) * (q.pow(3) + (k - ParamPoly(9)) * q * q -
                         2 * (3 * k - ParamPoly(7)) * q + 4 * (k - one));
  const ParamPoly h1 =
      Rational(-1, 8) * (q.pow(3) + (k - ParamPoly(3)) * q * q - 2 * (k - one) * q);
  return DPoly{ParamPoly(0), h1, h2, h3, h4, one};
}

inline DPoly psqm_rho() {  // P†P
  const ParamPoly k = ParamPoly::k(), q = ParamPoly::q(), one(1);
  const ParamPoly h4 = Rational(-1, 2) * (3 * q + k + ParamPoly(5));
  const ParamPoly h3 =
      Rational(1, 4) * (3 * q * q + 2 * (k + ParamPoly(6)) * q + 4 * (k + ParamPoly(2)));
  const ParamPoly h2 =
      Rational(-1, 8) * (q.pow(3) + (k + ParamPoly(9)) * q * q +
                         2 * (3 * k + ParamPoly(7)) * q + 4 * (k + one));
  const ParamPoly h1 =
      Rational(1, 8) * (q.pow(3) + (k + ParamPoly(3)) * q * q + 2 * (k + one) * q);
  return DPoly{ParamPoly(0), h1, h2, h3, h4, one};
}

inline DPoly psqm_chi() {  // [P, P†]
  const ParamPoly k = ParamPoly::k(), q = ParamPoly::q();
  const ParamPoly h3 = -2 * (3 * q + k);
  const ParamPoly h2 = Rational(9, 4) * q * q + Rational(3, 2) * k * q + ParamPoly(1);
  const ParamPoly h1 = Rational(-1, 4) * q * (q * q + k * q + ParamPoly(2));
  return DPoly{ParamPoly(0), h1, h2, h3, ParamPoly(5)};
}

struct PsqmModel {
  Rational k, q;
  int levels = 40;
  bool iso_zero = true;   // zero mode of the deeper factorization
  bool iso_qhalf = true;  // image of the SQM ground state, energy q/2

  Rational tower_bottom() const { return (q + k + 1) / 2; }
  int iso_count() const { return (iso_zero ? 1 : 0) + (iso_qhalf ? 1 : 0); }
  int dim() const { return iso_count() + levels + 1; }
  int index(int level) const { return iso_count() + level; }
  Rational energy(int level) const { return tower_bottom() + level; }
};

struct PsqmOps {
  FockOperator H3, P, Pdag;
};

inline PsqmOps build_psqm(const PsqmModel& model) {
  if (model.levels < 1) throw std::invalid_argument("build_psqm: need at least two levels");
  const DPoly rho = psqm_rho();
  auto rho_at = [&](const Rational& e) { return rho.eval_all(e, model.k, model.q); };
  if (rho_at(model.tower_bottom()) != 0)
    throw std::logic_error("build_psqm: rho does not vanish at the tower bottom");
  for (int n = 1; n <= model.levels; ++n)
    if (rho_at(model.energy(n)) < 0)
      throw std::domain_error("build_psqm: negative rho at tower level " +
                              std::to_string(n) + " (unphysical parameter range)");

  const int d = model.dim();
  PsqmOps ops{FockOperator(d, 0), FockOperator(d, 1), FockOperator(d, 1)};
  int iso = 0;
  if (model.iso_zero) ops.H3.at(iso, iso) = RadicalScalar(Rational(0)), ++iso;
  if (model.iso_qhalf) ops.H3.at(iso, iso) = RadicalScalar(model.q / 2), ++iso;
  for (int n = 0; n <= model.levels; ++n)
    ops.H3.at(model.index(n), model.index(n)) = RadicalScalar(model.energy(n));
  for (int n = 0; n + 1 <= model.levels; ++n) {
    const RadicalScalar step = RadicalScalar::sqrt_of(rho_at(model.energy(n + 1)));
    ops.Pdag.at(model.index(n + 1), model.index(n)) = step;
    ops.P.at(model.index(n), model.index(n + 1)) = step;
  }
  return ops;
}

inline std::vector<Rational> psqm_energies(const PsqmModel& model) {
  std::vector<Rational> e;
  if (model.iso_zero) e.push_back(0);
  if (model.iso_qhalf) e.push_back(model.q / 2);
  for (int n = 0; n <= model.levels; ++n) e.push_back(model.energy(n));
  return e;
}

inline std::vector<IdentityCheck> verify_quintic_identities(const PsqmModel& model) {
  const PsqmOps ops = build_psqm(model);
  const auto energies = psqm_energies(model);
  auto diag = [&](const DPoly& p) {
    return poly_of_diagonal(p, energies, model.k, model.q);
  };
  const int first = model.iso_count();

  std::vector<IdentityCheck> checks;
  checks.push_back(make_check("fock.quintic.ppdag", ops.P * ops.Pdag - diag(psqm_pi()),
                              first, model.levels));
  checks.push_back(make_check("fock.quintic.pdagp", ops.Pdag * ops.P - diag(psqm_rho()),
                              first, model.levels));
  checks.push_back(make_check("fock.quintic.commutator",
                              commutator(ops.P, ops.Pdag) - diag(psqm_chi()), first,
                              model.levels));
  checks.push_back(make_check("fock.quintic.grading.raise",
                              commutator(ops.H3, ops.Pdag) - ops.Pdag, first, model.levels));
  checks.push_back(make_check("fock.quintic.grading.lower",
                              commutator(ops.H3, ops.P) + ops.P, first, model.levels));

  bool iso_ok = true;
  for (int s = 0; s < first; ++s)
    for (int i = 0; i < ops.P.dim(); ++i)
      iso_ok = iso_ok && ops.P.at(i, s).is_zero() && ops.Pdag.at(i, s).is_zero() &&
               ops.P.at(s, i).is_zero() && ops.Pdag.at(s, i).is_zero();
  checks.push_back({"fock.quintic.isolated_annihilated",
                    iso_ok ? IdentityCheck::Status::pass : IdentityCheck::Status::fail,
                    iso_ok ? "0" : "nonzero isolated row/column", 0});

  // Ladder consistency in Q[H,k,q]: the two orderings differ by a unit shift
  // and their difference reproduces the commutator polynomial.
  checks.push_back(make_poly_check("fock.poly.pi_is_rho_shift", psqm_pi(),
                                   psqm_rho().shift(1)));
  checks.push_back(make_poly_check("fock.poly.chi_is_pi_minus_rho", psqm_chi(),
                                   psqm_pi() - psqm_rho()));
  return checks;
}

}  // namespace equispec
