#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "equispec/darboux.hpp"

using namespace equispec;

TEST_CASE("gaussian integral accuracy", "[darboux]") {
  const double sqrt_pi = std::sqrt(M_PI);
  CHECK(std::abs(gaussian_integral(10.0) - sqrt_pi) < 1e-12 * sqrt_pi);
  CHECK(std::abs(gaussian_integral(0.0) - sqrt_pi / 2) < 1e-13);
  CHECK(gaussian_integral(-10.0) > 0.0);
  CHECK(gaussian_integral(-10.0) < 1e-40);
}

TEST_CASE("normalizability window for c0", "[darboux]") {
  CHECK(c0_admissible(2.0));
  CHECK_FALSE(c0_admissible(-1.0));
  CHECK(c0_admissible(-2.0));
  CHECK_FALSE(c0_admissible(0.0));
  CHECK_FALSE(c0_admissible(-std::sqrt(M_PI) + 1e-6));
  CHECK(c0_admissible(-std::sqrt(M_PI) - 1e-6));
}

TEST_CASE("first deformation matches the analytic closed form", "[darboux]") {
  const GridSpec g;
  DarbouxChain chain(g);
  chain.extend(2.0);
  const GridFunction& u0 = chain.u(0);

  const int center = 1000;  // x = 0
  CHECK(u0.x(center) == 0.0);
  CHECK(std::abs(u0[center] - 1.0 / (2.0 + std::sqrt(M_PI) / 2)) < 1e-10);

  // u0 -> 0 at both walls, so w1 -> x
  CHECK(std::abs(u0[0]) < 1e-25);
  CHECK(std::abs(u0[u0.size() - 1]) < 1e-25);
  CHECK(std::abs(chain.w(1)[0] - chain.w(1).x(0)) < 1e-25);

  // enormous c0 collapses the deformation
  DarbouxChain flat(g);
  flat.extend(1e9);
  double umax = 0;
  for (int i = 0; i < flat.u(0).size(); ++i) umax = std::max(umax, std::abs(flat.u(0)[i]));
  CHECK(umax < 1e-8);
}

TEST_CASE("analytic u' matches centered differences at O(h^2)", "[darboux]") {
  auto worst_gap = [](double h) {
    DarbouxChain chain(GridSpec{-8.0, 8.0, h});
    chain.extend(0.1);
    const GridFunction& u = chain.u(0);
    const GridFunction& up = chain.uprime(0);
    double worst = 0;
    for (int i = 1; i + 1 < u.size(); ++i) {
      const double centered = (u[i + 1] - u[i - 1]) / (2 * h);
      worst = std::max(worst, std::abs(centered - up[i]));
    }
    return worst;
  };
  const double coarse = worst_gap(0.008), fine = worst_gap(0.004);
  CHECK(coarse < 1e-3);
  CHECK(coarse > 1e-9);  // a genuine finite-difference gap, not zero by construction
  const double rate = coarse / fine;
  CHECK(rate > 3.0);  // halving h shrinks the gap ~4x
  CHECK(rate < 5.0);
}

TEST_CASE("inadmissible constants are rejected", "[darboux]") {
  DarbouxChain chain;
  CHECK_THROWS_AS(chain.extend(-1.0), std::domain_error);
}

TEST_CASE("undeformed potential is the oscillator", "[darboux]") {
  DarbouxChain chain;
  const GridFunction v = chain_potential(chain, 0, false);
  for (int i = 0; i < v.size(); i += 100)
    CHECK(std::abs(v[i] - 0.5 * v.x(i) * v.x(i)) < 1e-14);
}

TEST_CASE("deformation step preserves the defining equation", "[darboux]") {
  // w1^2 + w1' = x^2 + 1 with the derivative taken by finite differences,
  // so the check is independent of the analytic u' identity.
  const GridSpec g;
  DarbouxChain chain(g);
  chain.extend(2.0);
  const GridFunction& w1 = chain.w(1);
  const auto w1p = derivative5(w1.samples(), g.h);
  double worst = 0;
  for (int i = 2; i + 2 < w1.size(); ++i) {
    const double x = w1.x(i);
    worst = std::max(worst, std::abs(w1[i] * w1[i] + w1p[i] - x * x - 1.0));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("upper partner stays the shifted oscillator", "[darboux]") {
  // w1^2 + w1' collapses to x^2 + 1 by the derivative identity, so the upper
  // spectrum {1, 2, ...} matches the lower one with its ground state removed.
  DarbouxChain chain;
  chain.extend(2.0);
  const GridFunction& w = chain.w(1);
  const GridFunction& wp = chain.wprime(1);
  GridFunction v_plus(w.x0(), w.h(), std::vector<double>(w.size()));
  for (int i = 0; i < w.size(); ++i) v_plus[i] = 0.5 * (w[i] * w[i] + wp[i]);
  const auto upper = spectrum(v_plus, 5);
  const auto lower = spectrum(chain_potential(chain, 1, true), 6);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(upper[i] - lower[i + 1]) < 5e-3);
}

TEST_CASE("small c0 deforms the well strongly", "[darboux]") {
  DarbouxChain chain;
  chain.extend(0.1);
  const GridFunction v = chain_potential(chain, 1, false);
  double vmin = 1e9;
  double at = 0;
  for (int i = 0; i < v.size(); ++i)
    if (v[i] < vmin) {
      vmin = v[i];
      at = v.x(i);
    }
  CHECK(vmin < -0.5);          // dips well below the oscillator floor
  CHECK(std::abs(at) > 0.5);   // off-center minimum
}

TEST_CASE("deformed potentials return to the oscillator at the walls", "[darboux]") {
  for (const double c0 : {-2.0, 0.1, 2.0, 10.0}) {
    DarbouxChain chain;
    chain.extend(c0);
    const GridFunction v = chain_potential(chain, 1, false);
    const int n = v.size();
    CHECK(std::abs(v[0] - 0.5 * v.x(0) * v.x(0)) < 1e-6);
    CHECK(std::abs(v[n - 1] - 0.5 * v.x(n - 1) * v.x(n - 1)) < 1e-6);
  }
}

TEST_CASE("harmonic eigenvalues from the Sturm solver", "[darboux]") {
  const GridSpec g;
  const GridFunction v = GridFunction::sampled(g, [](double x) { return 0.5 * x * x; });
  const auto ev = spectrum(v, 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(ev[i] - (i + 0.5)) < 5e-3);
}

TEST_CASE("first deformed hamiltonian is isospectral to the oscillator", "[darboux]") {
  DarbouxChain chain;
  chain.extend(2.0);
  const auto ev = spectrum(chain_potential(chain, 1, true), 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(ev[i] - i) < 5e-3);
  for (int i = 0; i + 1 < 6; ++i) CHECK(std::abs(ev[i + 1] - ev[i] - 1.0) < 5e-3);
}

TEST_CASE("spectrum is invariant across the deformation family", "[darboux]") {
  std::vector<std::vector<double>> spectra;
  for (const double c0 : {-2.0, 0.1, 2.0, 10.0}) {
    DarbouxChain chain;
    chain.extend(c0);
    spectra.push_back(spectrum(chain_potential(chain, 1, true), 6));
  }
  for (std::size_t a = 1; a < spectra.size(); ++a)
    for (int i = 0; i < 6; ++i)
      CHECK(std::abs(spectra[a][i] - spectra[0][i]) < 5e-3);
}

TEST_CASE("deeper chain levels stay equally spaced", "[darboux]") {
  DarbouxChain chain;
  chain.extend(2.0);
  chain.extend(2.0);
  chain.extend(2.0);
  for (int level : {2, 3}) {
    const auto ev = spectrum(chain_potential(chain, level, true), 6);
    for (int i = 0; i + 1 < 6; ++i) CHECK(std::abs(ev[i + 1] - ev[i] - 1.0) < 5e-3);
  }
}

TEST_CASE("ground state closed form", "[darboux]") {
  const GroundState gs = ground_state(2.0);
  CHECK(gs.norm_error < 1e-8);
  CHECK(gs.h_residual_rel < 1e-6);
  CHECK(gs.annihilation_sq < 1e-12);

  // c0 below the window throws; c0 < -sqrt(pi) is fine
  CHECK_THROWS_AS(ground_state(-1.0), std::domain_error);
  const GroundState neg = ground_state(-2.0);
  CHECK(neg.norm_error < 1e-8);
  CHECK(neg.h_residual_rel < 1e-6);

  // c0 -> infinity recovers the Gaussian ground state
  const GroundState flat = ground_state(1e8);
  const double x0 = flat.psi.x0();
  const double amp = std::pow(M_PI, -0.25);
  double worst = 0;
  for (int i = 0; i < flat.psi.size(); ++i) {
    const double x = x0 + i * flat.psi.h();
    worst = std::max(worst, std::abs(std::abs(flat.psi[i]) - amp * std::exp(-0.5 * x * x)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("shape-invariant partner reduces to the oscillator shift", "[darboux]") {
  DarbouxChain chain;  // w1 = x solves w^2 + w' = x^2 + 1; RHS with q = 2 is x^2 + 1
  const PsqmPartner p = psqm_partner(chain.w(0), chain.wprime(0), 2.0);
  double dev = 0;
  for (int i = 0; i < p.w2.size(); ++i)
    dev = std::max(dev, std::abs(p.w2[i] - p.w2.x(i)));
  CHECK(dev < 1e-8);
  CHECK(p.residual < 1e-8);
}

TEST_CASE("partner superpotential satisfies the shape-invariance residual", "[darboux]") {
  DarbouxChain chain;
  chain.extend(2.0);
  const PsqmPartner p = psqm_partner(chain.w(1), chain.wprime(1), 1.0);
  CHECK(p.residual < 1e-6);
}

TEST_CASE("h3 spectrum shows the isolated levels and the shifted tower", "[darboux]") {
  DarbouxChain chain;
  chain.extend(2.0);
  const GridFunction v3 = psqm_h3_potential(chain.w(1), chain.wprime(1), 1.0);
  const auto ev = spectrum(v3, 6);
  const double expected[] = {0.0, 0.5, 1.5, 2.5, 3.5, 4.5};
  for (int i = 0; i < 6; ++i) CHECK(std::abs(ev[i] - expected[i]) < 5e-3);
}

TEST_CASE("partner construction rejects oscillatory zero modes", "[darboux]") {
  // q very negative makes the mode equation oscillatory over a wide band, so
  // no slope yields a nodeless solution.
  DarbouxChain chain;
  CHECK_THROWS_AS(psqm_partner(chain.w(0), chain.wprime(0), -30.0), std::domain_error);
}

TEST_CASE("superpotential solver handles k != 1", "[darboux]") {
  const PsqmPartner s = solve_superpotential(3.0);
  CHECK(s.residual < 1e-6);

  // H- spectrum is {0} then E0 + n with E0 = 2
  const GridSpec g;
  const auto wp = derivative5(s.w2.samples(), g.h);
  GridFunction v(g.x_min, g.h, std::vector<double>(s.w2.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = 0.5 * (s.w2[i] * s.w2[i] - wp[i]);
  const auto ev = spectrum(v, 6);
  const double expected[] = {0.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  for (int i = 0; i < 6; ++i) CHECK(std::abs(ev[i] - expected[i]) < 5e-3);

  // k = 1 reproduces w = x
  const PsqmPartner s1 = solve_superpotential(1.0);
  double dev = 0;
  for (int i = 0; i < s1.w2.size(); ++i)
    dev = std::max(dev, std::abs(s1.w2[i] - s1.w2.x(i)));
  CHECK(dev < 1e-8);
}

TEST_CASE("csv output format", "[darboux]") {
  const GridSpec g{0.0, 1.0, 0.5};
  const GridFunction f = GridFunction::sampled(g, [](double x) { return x * x; });
  const std::string path = "csv_format_check.csv";
  write_csv(f, path);
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "x,value\n0,0\n0.5,0.25\n1,1\n");
  std::filesystem::remove(path);
}
