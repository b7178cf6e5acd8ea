#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace equispec {

// ---------------------------------------------------------------------------
// Uniform grids.

struct GridSpec {
  double x_min = -8.0;
  double x_max = 8.0;
  double h = 0.008;

  int size() const { return static_cast<int>(std::lround((x_max - x_min) / h)) + 1; }
};

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(double x0, double h, std::vector<double> v)
      : x0_(x0), h_(h), v_(std::move(v)) {}

  static GridFunction sampled(const GridSpec& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.size());
    for (int i = 0; i < g.size(); ++i) v[i] = f(g.x_min + i * g.h);
    return GridFunction(g.x_min, g.h, std::move(v));
  }
  static GridFunction zeros(const GridSpec& g) {
    return GridFunction(g.x_min, g.h, std::vector<double>(g.size(), 0.0));
  }

  int size() const { return static_cast<int>(v_.size()); }
  double x0() const { return x0_; }
  double h() const { return h_; }
  double x(int i) const { return x0_ + i * h_; }
  double operator[](int i) const { return v_[i]; }
  double& operator[](int i) { return v_[i]; }
  const std::vector<double>& samples() const { return v_; }

  GridFunction& operator+=(const GridFunction& o) {
    check(o);
    for (int i = 0; i < size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  GridFunction& operator-=(const GridFunction& o) {
    check(o);
    for (int i = 0; i < size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }

  void check(const GridFunction& o) const {
    if (size() != o.size() || x0_ != o.x0_ || h_ != o.h_)
      throw std::invalid_argument("GridFunction: grid mismatch");
  }

 private:
  double x0_ = 0, h_ = 1;
  std::vector<double> v_;
};

/// CSV with header "x,value", LF endings, 17 significant digits.
inline void write_csv(const GridFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "x,value\n";
  char buf[64];
  for (int i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", f.x(i));
    out << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", f[i]);
    out << buf << "\n";
  }
}

// ---------------------------------------------------------------------------
// Quadrature.

/// Composite Simpson; the default grids have an even interval count.
inline double simpson(const std::vector<double>& f, double h, int lo = 0, int hi = -1) {
  if (hi < 0) hi = static_cast<int>(f.size()) - 1;
  if ((hi - lo) % 2 != 0)
    throw std::invalid_argument("simpson: odd interval count");
  double s = f[lo] + f[hi];
  for (int i = lo + 1; i < hi; ++i) s += f[i] * ((i - lo) % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Running integral C[i] = int_{x_0}^{x_i} f, fourth order: Simpson pairs on
/// matching parity plus a cubic starter for C[1].
inline std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
  const int n = static_cast<int>(f.size());
  std::vector<double> c(n, 0.0);
  if (n >= 4) c[1] = h * (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]) / 24.0;
  else if (n >= 2) c[1] = h * (f[0] + f[1]) / 2.0;
  for (int i = 2; i < n; ++i) c[i] = c[i - 2] + h * (f[i - 2] + 4 * f[i - 1] + f[i]) / 3.0;
  return c;
}

// ---------------------------------------------------------------------------
// Derivatives (fourth-order stencils; the chain itself never needs them,
// they exist to cross-check analytic derivatives and to form residuals).

inline std::vector<double> derivative5(const std::vector<double>& f, double h) {
  const int n = static_cast<int>(f.size());
  if (n < 5) throw std::invalid_argument("derivative5: need at least 5 samples");
  std::vector<double> d(n);
  d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h);
  d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h);
  for (int i = 2; i < n - 2; ++i)
    d[i] = (f[i - 2] - 8 * f[i - 1] + 8 * f[i + 1] - f[i + 2]) / (12 * h);
  d[n - 2] = (3 * f[n - 1] + 10 * f[n - 2] - 18 * f[n - 3] + 6 * f[n - 4] - f[n - 5]) / (12 * h);
  d[n - 1] = (25 * f[n - 1] - 48 * f[n - 2] + 36 * f[n - 3] - 16 * f[n - 4] + 3 * f[n - 5]) / (12 * h);
  return d;
}

inline std::vector<double> second_derivative5(const std::vector<double>& f, double h) {
  const int n = static_cast<int>(f.size());
  if (n < 5) throw std::invalid_argument("second_derivative5: need at least 5 samples");
  std::vector<double> d(n, 0.0);
  for (int i = 2; i < n - 2; ++i)
    d[i] = (-f[i - 2] + 16 * f[i - 1] - 30 * f[i] + 16 * f[i + 1] - f[i + 2]) / (12 * h * h);
  // ends by second-order (only used under Gaussian tails)
  d[0] = d[1] = (f[0] - 2 * f[1] + f[2]) / (h * h);
  d[n - 1] = d[n - 2] = (f[n - 3] - 2 * f[n - 2] + f[n - 1]) / (h * h);
  return d;
}

// ---------------------------------------------------------------------------
// Gaussian integral and the normalizability window.

/// int_{-inf}^x exp(-t^2) dt = (sqrt(pi)/2) * erfc(-x); erfc supplies the
/// series/asymptotic split and keeps full relative accuracy in the tail.
inline double gaussian_integral(double x) {
  static const double half_sqrt_pi = 0.5 * std::sqrt(M_PI);
  return half_sqrt_pi * std::erfc(-x);
}

inline bool c0_admissible(double c0) { return c0 > 0.0 || c0 < -std::sqrt(M_PI); }

// ---------------------------------------------------------------------------
// The isospectral chain w_{n+1} = w_n + u_n, w_0 = x.

struct DarbouxStep {
  GridFunction u, uprime;
};

/// One deformation step. The running integrals use the convention fixed by
/// the n = 0 analytic case: int^x w = x^2/2 + int_{-inf}^x (w - t) dt and the
/// denominator integral starts at -inf (the tail below the grid is the pure
/// Gaussian one). uprime comes from the exact identity u' = -2wu - u^2.
inline DarbouxStep darboux_step(const GridFunction& w, double c) {
  const int n = w.size();
  const double h = w.h();
  std::vector<double> decaying(n);
  for (int i = 0; i < n; ++i) decaying[i] = w[i] - w.x(i);
  const std::vector<double> tail_int = cumulative_integral(decaying, h);

  std::vector<double> integrand(n);
  for (int i = 0; i < n; ++i) {
    const double a = 0.5 * w.x(i) * w.x(i) + tail_int[i];
    integrand[i] = std::exp(-2.0 * a);
  }
  std::vector<double> den = cumulative_integral(integrand, h);
  const double below_grid = gaussian_integral(w.x(0));
  for (int i = 0; i < n; ++i) den[i] += c + below_grid;

  double min_abs = std::abs(den[0]);
  for (int i = 1; i < n; ++i) min_abs = std::min(min_abs, std::abs(den[i]));
  if (min_abs < 1e-9)
    throw std::domain_error("darboux_step: denominator crosses zero (inadmissible constant)");

  GridFunction u(w.x0(), h, std::vector<double>(n));
  GridFunction uprime(w.x0(), h, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    u[i] = integrand[i] / den[i];
    uprime[i] = -2.0 * w[i] * u[i] - u[i] * u[i];
  }
  return {u, uprime};
}

/// Chain of superpotentials with analytic derivatives propagated alongside:
/// the canonical base is w_0 = x, w_0' = 1 (the k = 1 analytic family); a
/// numeric base (k != 1) can be supplied instead. Each step adds (u, u').
class DarbouxChain {
 public:
  explicit DarbouxChain(const GridSpec& grid = {}) : grid_(grid), canonical_(true) {
    w_.push_back(GridFunction::sampled(grid, [](double x) { return x; }));
    wprime_.push_back(GridFunction::sampled(grid, [](double) { return 1.0; }));
  }
  DarbouxChain(const GridSpec& grid, const GridFunction& base_w,
               const GridFunction& base_wprime)
      : grid_(grid), canonical_(false) {
    base_w.check(base_wprime);
    w_.push_back(base_w);
    wprime_.push_back(base_wprime);
  }

  /// Appends w_{depth+1} using constant c. On the canonical base the level-0
  /// constant must lie in the normalizable window; deeper levels (and
  /// numeric bases) are guarded by the denominator check inside the step.
  void extend(double c) {
    if (canonical_ && depth() == 0 && !c0_admissible(c))
      throw std::domain_error("DarbouxChain: c0 outside the normalizable range");
    const DarbouxStep step = darboux_step(w_.back(), c);
    constants_.push_back(c);
    u_.push_back(step.u);
    uprime_.push_back(step.uprime);
    w_.push_back(w_.back() + step.u);
    wprime_.push_back(wprime_.back() + step.uprime);
  }

  int depth() const { return static_cast<int>(u_.size()); }
  const GridSpec& grid() const { return grid_; }
  const GridFunction& w(int level) const { return w_.at(level); }
  const GridFunction& wprime(int level) const { return wprime_.at(level); }
  const GridFunction& u(int level) const { return u_.at(level); }
  const GridFunction& uprime(int level) const { return uprime_.at(level); }
  double constant(int level) const { return constants_.at(level); }

 private:
  GridSpec grid_;
  bool canonical_;
  std::vector<double> constants_;
  std::vector<GridFunction> w_, wprime_, u_, uprime_;
};

/// Potential of the n-th chain Hamiltonian, V = (w_n^2 - w_n')/2 when
/// spectral; the plotting convention drops the additive -1/2 (for the
/// canonical base this is x^2/2 - sum u_m').
inline GridFunction chain_potential(const DarbouxChain& chain, int level, bool spectral) {
  if (level > chain.depth())
    throw std::out_of_range("chain_potential: chain not built to this depth");
  const GridFunction& w = chain.w(level);
  const GridFunction& wp = chain.wprime(level);
  GridFunction v(w.x0(), w.h(), std::vector<double>(w.size()));
  for (int i = 0; i < w.size(); ++i)
    v[i] = 0.5 * (w[i] * w[i] - wp[i]) + (spectral ? 0.0 : 0.5);
  return v;
}

// ---------------------------------------------------------------------------
// Eigenvalues of -1/2 d^2/dx^2 + V with Dirichlet walls: symmetric finite
// differences plus bisection on the Sturm sequence.

namespace detail {

inline int sturm_count_below(const std::vector<double>& diag, double off_sq, double lambda) {
  int count = 0;
  double t = diag[0] - lambda;
  if (t < 0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (t == 0.0) t = -1e-300;
    t = (diag[i] - lambda) - off_sq / t;
    if (t < 0) ++count;
  }
  return count;
}

}  // namespace detail

inline std::vector<double> spectrum(const GridFunction& v, int count) {
  const int interior = v.size() - 2;
  if (count > interior)
    throw std::invalid_argument("spectrum: more eigenvalues than grid points");
  const double h = v.h();
  const double off = -0.5 / (h * h);
  std::vector<double> diag(interior);
  for (int i = 0; i < interior; ++i) diag[i] = 1.0 / (h * h) + v[i + 1];
  const double off_sq = off * off;

  double lo = *std::min_element(diag.begin(), diag.end()) - 2 * std::abs(off);
  double hi = *std::max_element(diag.begin(), diag.end()) + 2 * std::abs(off);

  std::vector<double> out;
  for (int j = 0; j < count; ++j) {
    double a = lo, b = hi;
    for (int iter = 0; iter < 300; ++iter) {
      const double mid = 0.5 * (a + b);
      if (detail::sturm_count_below(diag, off_sq, mid) > j)
        b = mid;
      else
        a = mid;
      if (b - a < 1e-11 * std::max(1.0, std::abs(b))) break;
    }
    if (b - a > 1e-8 * std::max(1.0, std::abs(b)))
      throw std::runtime_error("spectrum: bisection failed to converge in [" +
                               std::to_string(a) + ", " + std::to_string(b) + "]");
    out.push_back(0.5 * (a + b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ground state of the first deformed Hamiltonian.

struct GroundState {
  GridFunction psi;
  double norm_error;         // |int psi^2 - 1|
  double h_residual_rel;     // ||H psi|| / ||psi|| with a numeric 2nd derivative
  double annihilation_sq;    // int |(d/dx + w1) psi|^2
};

inline GroundState ground_state(double c0, const GridSpec& grid = {}) {
  if (!c0_admissible(c0))
    throw std::domain_error("ground_state: c0 outside the normalizable range");
  const double sqrt_pi = std::sqrt(M_PI);
  const double norm_const = std::sqrt(c0 * (c0 + sqrt_pi) / sqrt_pi);
  const int n = grid.size();
  const double h = grid.h;

  std::vector<double> psi(n), u0(n), u0p(n), w1(n), vfull(n);
  for (int i = 0; i < n; ++i) {
    const double x = grid.x_min + i * h;
    const double den = c0 + gaussian_integral(x);
    psi[i] = norm_const * std::exp(-0.5 * x * x) / den;
    u0[i] = std::exp(-x * x) / den;
    u0p[i] = -2.0 * x * u0[i] - u0[i] * u0[i];
    w1[i] = x + u0[i];
    vfull[i] = 0.5 * x * x - 0.5 - u0p[i];
  }

  std::vector<double> psi2(n);
  for (int i = 0; i < n; ++i) psi2[i] = psi[i] * psi[i];
  const double norm = simpson(psi2, h);

  const std::vector<double> d2 = second_derivative5(psi, h);
  std::vector<double> hpsi2(n, 0.0), ann2(n, 0.0);
  const std::vector<double> d1 = derivative5(psi, h);
  for (int i = 2; i < n - 2; ++i) {
    const double hp = -0.5 * d2[i] + vfull[i] * psi[i];
    hpsi2[i] = hp * hp;
    const double a = d1[i] + w1[i] * psi[i];
    ann2[i] = a * a;
  }
  const double hnorm = simpson(hpsi2, h);

  GroundState out{GridFunction(grid.x_min, h, psi), std::abs(norm - 1.0),
                  std::sqrt(hnorm / norm), simpson(ann2, h)};
  return out;
}

// ---------------------------------------------------------------------------
// PSQM partner superpotential: w2 with w2^2 + w2' = w1^2 - w1' + q, built
// from the nodeless zero mode phi'' = R phi via w2 = phi'/phi. The wanted
// solution grows like exp(+x^2/2) at both ends, so the mode is integrated
// outward from the grid center (the direction where it dominates), with
// Numerov steps on the log-rescaled pair.

struct PsqmPartner {
  GridFunction w2;
  double residual;  // max |w2^2 + w2' - R| with w2' from finite differences
};

namespace detail {

/// Outward Numerov integration of phi'' = R phi from the center with
/// phi(center) = 1, phi'(center) = slope; returns log phi or nullopt when a
/// node appears.
inline bool numerov_log_outward(const std::vector<double>& r, double h, int center,
                                double slope, std::vector<double>& logphi) {
  const int n = static_cast<int>(r.size());
  logphi.assign(n, 0.0);
  const double rc = r[center];
  const double rp = (r[center + 1] - r[center - 1]) / (2 * h);
  const double rpp = (r[center + 1] - 2 * rc + r[center - 1]) / (h * h);
  auto taylor = [&](double dx) {
    return 1.0 + slope * dx + rc * dx * dx / 2 + (rp + rc * slope) * dx * dx * dx / 6 +
           (rpp + 2 * rp * slope + rc * rc) * dx * dx * dx * dx / 24;
  };

  for (const int dir : {+1, -1}) {
    double prev = taylor(-dir * h);  // phi one step behind the center
    double curr = 1.0;
    double scale = 0.0;  // log of the factor divided out so far
    logphi[center] = 0.0;
    int i = center;
    while (true) {
      const int next = i + dir;
      if (next < 0 || next >= n) break;
      const double fm = 1.0 - h * h * r[i - dir] / 12.0;
      const double f0 = 1.0 + 5.0 * h * h * r[i] / 12.0;
      const double fp = 1.0 - h * h * r[next] / 12.0;
      double val = (2.0 * f0 * curr - fm * prev) / fp;
      if (val <= 0.0) return false;  // node: this slope fails
      if (val > 1e100) {
        prev = curr / val;
        scale += std::log(val);
        curr = 1.0;
        logphi[next] = scale;
      } else {
        prev = curr;
        curr = val;
        logphi[next] = scale + std::log(val);
      }
      i = next;
    }
  }
  return true;
}

}  // namespace detail

namespace detail {

/// Fourth-order midpoint refinement, doubling the sampling of a smooth grid
/// function (cubic Lagrange through the four nearest nodes).
inline std::vector<double> refine_half(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<double> out(2 * n - 1);
  for (int i = 0; i < n; ++i) out[2 * i] = f[i];
  for (int i = 0; i + 1 < n; ++i) {
    double mid;
    if (i == 0)
      mid = (5 * f[0] + 15 * f[1] - 5 * f[2] + f[3]) / 16.0;
    else if (i + 2 >= n)
      mid = (5 * f[n - 1] + 15 * f[n - 2] - 5 * f[n - 3] + f[n - 4]) / 16.0;
    else
      mid = (-f[i - 1] + 9 * f[i] + 9 * f[i + 1] - f[i + 2]) / 16.0;
    out[2 * i + 1] = mid;
  }
  return out;
}

}  // namespace detail

/// Superpotential w = phi'/phi for w^2 + w' = r from the nodeless zero mode.
/// A Richardson pair (the mode on h and on h/2) cancels the leading h^4
/// Numerov error, whose second derivative would otherwise dominate the
/// residual near the walls.
inline PsqmPartner riccati_superpotential(const std::vector<double>& r, double x0,
                                          double h) {
  const int n = static_cast<int>(r.size());
  const int center = static_cast<int>(std::lround((0.0 - x0) / h));
  if (center < 2 || center > n - 3)
    throw std::invalid_argument("riccati_superpotential: grid must bracket x = 0");

  const std::vector<double> r_half = detail::refine_half(r);
  std::vector<double> l_full, l_half;
  bool ok = false;
  for (const double slope : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0}) {
    if (detail::numerov_log_outward(r, h, center, slope, l_full) &&
        detail::numerov_log_outward(r_half, h / 2, 2 * center, slope, l_half)) {
      ok = true;
      break;
    }
  }
  if (!ok)
    throw std::domain_error("riccati_superpotential: no nodeless zero mode on the grid");

  std::vector<double> logphi(n);
  for (int i = 0; i < n; ++i) logphi[i] = (16 * l_half[2 * i] - l_full[i]) / 15.0;

  const std::vector<double> w2v = derivative5(logphi, h);
  GridFunction w2(x0, h, w2v);
  const std::vector<double> w2p = derivative5(w2v, h);
  double worst = 0.0;
  for (int i = 4; i < n - 4; ++i)
    worst = std::max(worst, std::abs(w2v[i] * w2v[i] + w2p[i] - r[i]));
  return {w2, worst};
}

inline PsqmPartner psqm_partner(const GridFunction& w1, const GridFunction& w1prime,
                                double q) {
  w1.check(w1prime);
  std::vector<double> r(w1.size());
  for (int i = 0; i < w1.size(); ++i) r[i] = w1[i] * w1[i] - w1prime[i] + q;
  return riccati_superpotential(r, w1.x0(), w1.h());
}

/// Numeric solution of w^2 + w' = x^2 + k for k != 1 (and a consistency case
/// for k = 1, where w = x is exact).
inline PsqmPartner solve_superpotential(double k, const GridSpec& grid = {}) {
  std::vector<double> r(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.x_min + i * grid.h;
    r[i] = x * x + k;
  }
  return riccati_superpotential(r, grid.x_min, grid.h);
}

/// Potential of H3 = (p^2 + w2^2 - w2')/2 with w2' eliminated through the
/// defining relation: V3 = w2^2 - R/2.
inline GridFunction psqm_h3_potential(const GridFunction& w1,
                                      const GridFunction& w1prime, double q) {
  const PsqmPartner partner = psqm_partner(w1, w1prime, q);
  GridFunction v(w1.x0(), w1.h(), std::vector<double>(w1.size()));
  for (int i = 0; i < w1.size(); ++i) {
    const double r = w1[i] * w1[i] - w1prime[i] + q;
    v[i] = partner.w2[i] * partner.w2[i] - 0.5 * r;
  }
  return v;
}

}  // namespace equispec
