#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>

#include "oracles.hpp"
#include "pjac/certify.hpp"
#include "pjac/corpus.hpp"
#include "pjac/critical.hpp"
#include "pjac/families.hpp"

using namespace pjac;
using namespace std::complex_literals;

namespace {

const double kS2 = std::sqrt(2.0);
const double kS5 = std::sqrt(5.0);

PhiSequence fam(const char* name) { return PhiSequence(family(name).coeffs); }

cplx mu5(int k) {
  // roots of μ⁴ - i√5μ³ - 3μ² + i√5μ + 1
  switch (k) {
    case 1: return 0.25 * cplx(std::sqrt(10.0 - 2.0 * kS5), 1.0 + kS5);
    case 2: return 0.25 * cplx(-std::sqrt(10.0 - 2.0 * kS5), 1.0 + kS5);
    case 3: return 0.25 * cplx(std::sqrt(10.0 + 2.0 * kS5), kS5 - 1.0);
    default: return 0.25 * cplx(-std::sqrt(10.0 + 2.0 * kS5), kS5 - 1.0);
  }
}

oracle::mpc mp_mu5(int k) {
  using oracle::mpf;
  const mpf s5 = boost::multiprecision::sqrt(mpf(5));
  const mpf re = boost::multiprecision::sqrt(k <= 2 ? mpf(10) - 2 * s5 : mpf(10) + 2 * s5) / 4;
  const mpf im = (k <= 2 ? 1 + s5 : s5 - 1) / 4;
  return {k % 2 == 1 ? re : mpf(-re), im};
}

std::vector<oracle::mpc> mp_alpha3() {
  const oracle::mpf s3 = boost::multiprecision::sqrt(oracle::mpf(3));
  return {oracle::mpc(0, s3), oracle::mpc(0, -s3), oracle::mpc(0)};
}

std::vector<oracle::mpc> mp_alpha5() {
  using oracle::mpf;
  const mpf s5 = boost::multiprecision::sqrt(mpf(5));
  return {oracle::mpc(0), oracle::mpc(0, s5), oracle::mpc(0), oracle::mpc(0), oracle::mpc(0, -s5)};
}

void check_vieta(const Certificate& c, cplx d = 1.0) {
  CHECK(std::abs(c.z_plus * c.z_minus - d) <= 1e-10);
  CHECK(std::abs(c.z_plus + c.z_minus - c.pn_at_mu) <= 1e-10);
  CHECK(std::abs(c.z_minus) <= std::abs(c.z_plus));
}

}  // namespace

TEST_CASE("symmetric N=3 verdicts") {
  const PhiSequence seq = fam("elementary-3");
  const Certificate up = certify(seq, 1i * kS2);
  CHECK(up.verdict == Verdict::Eigenvalue);
  CHECK(std::isfinite(up.norm_sq));
  CHECK(std::abs(up.z_minus) < 1.0);
  CHECK(up.max_growth() <= kDefaultRootTol * up.growth_scale);
  CHECK(certify(seq, -1i * kS2).verdict == Verdict::NotEigenvalue);
  const Certificate zero = certify(seq, 0.0);
  CHECK(zero.verdict != Verdict::Eigenvalue);
  CHECK(std::isinf(zero.norm_sq));
  for (const auto& m : {1i * kS2, -1i * kS2, cplx(0.0)}) check_vieta(certify(seq, m));
}

TEST_CASE("symmetric N=3 eigenvalue norm against direct summation") {
  const PhiSequence seq = fam("elementary-3");
  const Certificate c = certify(seq, 1i * kS2);
  using oracle::mpf;
  const oracle::mpc mu(mpf(0), boost::multiprecision::sqrt(mpf(2)));
  const auto s = oracle::direct_sums(mp_alpha3(), mu, 120);
  CHECK(std::abs(c.norm_sq - static_cast<double>(s.modulus)) < 1e-10);
}

TEST_CASE("N=4 eigenvalue and its norm") {
  const PhiSequence seq = fam("elementary-4");
  const Certificate c = certify(seq, 1i * kS2);
  REQUIRE(c.verdict == Verdict::Eigenvalue);
  CHECK(std::abs(c.norm_sq - kS2) < 1e-8);
  // closed form of the block sum
  CHECK(std::abs((24.0 - 16.0 * kS2) / (12.0 * kS2 - 16.0) - kS2) < 1e-12);
  CHECK(std::abs(c.z_minus - (3.0 - 2.0 * kS2)) < 1e-10);
  check_vieta(c);
  CHECK(certify(seq, -1i * kS2).verdict == Verdict::NotEigenvalue);
  const Certificate zero = certify(seq, 0.0);
  CHECK(zero.verdict == Verdict::Boundary);  // P4(0) = 2
  CHECK(std::abs(zero.pn_at_mu - 2.0) < 1e-12);
}

TEST_CASE("N=5 norms agree with the 50-digit summation") {
  const PhiSequence seq = fam("elementary-5");
  for (int k = 1; k <= 2; ++k) {
    const Certificate c = certify(seq, mu5(k));
    REQUIRE(c.verdict == Verdict::Eigenvalue);
    const auto s = oracle::direct_sums(mp_alpha5(), mp_mu5(k), 300);
    CHECK(std::abs(static_cast<double>(s.modulus) - 2.0 * kS5) < 1e-12);
    CHECK(static_cast<double>(s.last_block) < 1e-20);
    CHECK(std::abs(c.norm_sq - 2.0 * kS5) < 1e-8);
    check_vieta(c);
  }
  for (int k = 3; k <= 4; ++k) {
    const Certificate c = certify(seq, mu5(k));
    CHECK(c.verdict == Verdict::NotEigenvalue);
    CHECK(std::abs(c.z_plus * c.z_plus + (3.0 + kS5) / 2.0) < 1e-9);
    check_vieta(c);
  }
}

TEST_CASE("partial sums match the verdict") {
  auto exact_eigenvalue = [](cplx mu) {
    if (std::abs(mu - 1i * kS2) < 1e-6) return oracle::mpc(0, boost::multiprecision::sqrt(oracle::mpf(2)));
    return std::abs(mu - mu5(1)) < 1e-6 ? mp_mu5(1) : mp_mu5(2);
  };
  for (const char* name : {"elementary-3", "elementary-4", "elementary-5"}) {
    const PhiSequence seq = fam(name);
    const int n = seq.period();
    for (const auto& c : discrete_spectrum(seq)) {
      // eigenvalues are summed at their closed forms: a rounded μ carries a
      // growing component of size 1e-16 that 40 blocks amplify past 1e-6
      const oracle::mpc mu = c.verdict == Verdict::Eigenvalue ? exact_eigenvalue(c.mu) : oracle::mp(c.mu);
      const auto alpha = n == 3 ? mp_alpha3() : n == 5 ? mp_alpha5() : oracle::mp_alpha(seq.coeffs());
      const auto s = oracle::direct_sums(alpha, mu, 40 * n);
      const auto block0 = oracle::direct_sums(alpha, mu, n);
      const double partial = static_cast<double>(s.modulus);
      if (c.verdict == Verdict::Eigenvalue)
        CHECK(std::abs(partial - c.norm_sq) < 1e-6);
      else
        CHECK(partial > 10.0 * static_cast<double>(block0.modulus));
    }
  }
}

TEST_CASE("block sums of an eigenvector decrease to zero") {
  const PhiSequence seq = fam("elementary-5");
  const cplx mu = mu5(1);
  const auto v = oracle::mp_values(mp_alpha5(), mp_mu5(1), 5 * 30);
  double prev = 1e300;
  for (int m = 4; m < 30; ++m) {
    double block = 0.0;
    for (int k = 0; k < 5; ++k) block += std::norm(oracle::to_double(v[static_cast<std::size_t>(5 * m + k)]));
    CHECK(block < prev);
    prev = block;
  }
  CHECK(prev < 1e-10);
  CHECK(certify(seq, mu).verdict == Verdict::Eigenvalue);
}

TEST_CASE("generic N=3: verdict on phi_2 roots is |mu - a0| < 1") {
  Rng rng(606);
  int compared = 0;
  for (int t = 0; t < 60; ++t) {
    const auto a = random_triple(rng);
    const PhiSequence seq(CoefficientSet({a[0], a[1], a[2]}));
    // roots of φ2 from the quadratic formula
    const cplx disc = std::sqrt(4.0 + (a[1] - a[0]) * (a[1] - a[0]));
    for (const cplx mu : {0.5 * (a[0] + a[1]) + 0.5 * disc, 0.5 * (a[0] + a[1]) - 0.5 * disc}) {
      const double r = std::abs(mu - a[0]);
      const Certificate c = certify(seq, mu);
      check_vieta(c);
      if (std::abs(r - 1.0) <= 1e-3) continue;
      CHECK((c.verdict == Verdict::Eigenvalue) == (r < 1.0));
      ++compared;
    }
  }
  CHECK(compared >= 100);
}

TEST_CASE("Vieta with a non-unit period determinant") {
  const CoefficientSet c({0.3, -0.2i, 0.1}, {2.0, 1.0i, 0.7});
  const PhiSequence seq(c);
  for (const cplx mu : {cplx(0.1, 0.2), cplx(-1.0, 0.5), cplx(2.0, 0.0)}) check_vieta(certify(seq, mu), c.period_determinant());
}

TEST_CASE("N=4 eigenvector components") {
  const PhiSequence seq = fam("elementary-4");
  const Certificate c = certify(seq, 1i * kS2);
  const Eigenvector ev = eigenvector(seq, c, 40);
  const std::vector<cplx> head = {1.0, 1i * (kS2 - 2.0), 2.0 * kS2 - 3.0, 0.0};
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(ev.x[k] - head[k]) < 1e-8);
  for (std::size_t k = 0; k + 4 < 40; ++k) CHECK(std::abs(ev.x[k + 4] - (3.0 - 2.0 * kS2) * ev.x[k]) < 1e-12);
  for (std::size_t k = 3; k < 40; k += 4) CHECK(ev.y[k] == cplx{});
  CHECK(std::abs(ev.y[0] - std::pow(2.0, -0.25)) < 1e-12);
  CHECK(ev.x[0] == 1.0);
  CHECK(ev.residual <= kDefaultRootTol * (1.0 + std::abs(c.mu)));
  CHECK(std::abs(ev.norm_sq - kS2) < 1e-8);
}

TEST_CASE("eigenvector residuals and errors") {
  for (const char* name : {"elementary-3", "elementary-5"}) {
    const PhiSequence seq = fam(name);
    for (const auto& c : discrete_spectrum(seq)) {
      if (c.verdict != Verdict::Eigenvalue) {
        CHECK_THROWS_AS(eigenvector(seq, c, 10), std::invalid_argument);
        continue;
      }
      const Eigenvector ev = eigenvector(seq, c, 60);
      CHECK(ev.x[0] == 1.0);
      CHECK(ev.residual <= kDefaultRootTol * (1.0 + std::abs(c.mu)));
      double s = 0.0;
      for (const auto& y : ev.y) s += std::norm(y);
      CHECK(s <= 1.0 + 1e-12);
      CHECK(s > 0.99);
    }
  }
}

TEST_CASE("discrete spectrum of the elementary families") {
  {
    const auto sp = discrete_spectrum(fam("elementary-3"));
    REQUIRE(sp.size() == 3);
    CHECK(sp[0].verdict == Verdict::Eigenvalue);
    CHECK(std::abs(sp[0].mu - 1i * kS2) < 1e-10);
    for (std::size_t k = 1; k < sp.size(); ++k) CHECK(sp[k].verdict != Verdict::Eigenvalue);
  }
  {
    const auto sp = discrete_spectrum(fam("elementary-4"));
    int eig = 0;
    for (const auto& c : sp) eig += c.verdict == Verdict::Eigenvalue;
    CHECK(eig == 1);
    CHECK(std::abs(sp[0].mu - 1i * kS2) < 1e-10);
    CHECK(std::abs(sp[0].norm_sq - kS2) < 1e-8);
  }
  {
    const auto sp = discrete_spectrum(fam("elementary-5"));
    REQUIRE(sp.size() >= 2);
    CHECK(sp[0].verdict == Verdict::Eigenvalue);
    CHECK(sp[1].verdict == Verdict::Eigenvalue);
    CHECK(std::abs(sp[0].mu - mu5(2)) < 1e-8);  // ordered by real part
    CHECK(std::abs(sp[1].mu - mu5(1)) < 1e-8);
    for (std::size_t k = 2; k < sp.size(); ++k) CHECK(sp[k].verdict != Verdict::Eigenvalue);
  }
}

TEST_CASE("spectrum ordering is eigenvalues first then by real and imaginary part") {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const auto sp = discrete_spectrum(PhiSequence(random_coefficient_set(rng, 2 + t % 4)));
    for (std::size_t k = 1; k < sp.size(); ++k) {
      const bool e0 = sp[k - 1].verdict == Verdict::Eigenvalue, e1 = sp[k].verdict == Verdict::Eigenvalue;
      CHECK(e0 >= e1);
      if (e0 == e1) {
        const cplx a = sp[k - 1].mu, b = sp[k].mu;
        CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
      }
    }
  }
}

TEST_CASE("spectrum is the same from several threads") {
  const PhiSequence seq = fam("elementary-5");
  const auto ref = discrete_spectrum(PhiSequence(family("elementary-5").coeffs));
  std::vector<int> bad(6, 0);
  std::vector<std::thread> pool;
  for (int t = 0; t < 6; ++t)
    pool.emplace_back([&, t] {
      const auto sp = discrete_spectrum(seq);
      if (sp.size() != ref.size()) {
        ++bad[static_cast<std::size_t>(t)];
        return;
      }
      for (std::size_t k = 0; k < sp.size(); ++k)
        if (sp[k].mu != ref[k].mu || sp[k].verdict != ref[k].verdict) ++bad[static_cast<std::size_t>(t)];
    });
  for (auto& th : pool) th.join();
  for (int b : bad) CHECK(b == 0);
}

TEST_CASE("support points map into [-2, 2]") {
  for (const char* name : {"elementary-3", "elementary-4", "elementary-5"}) {
    const PhiSequence seq = fam(name);
    const SupportCurve sc = support_sample(seq, 33);
    CHECK(sc.points.size() == static_cast<std::size_t>(33 * seq.period()));
    CHECK(sc.branches.size() == static_cast<std::size_t>(seq.period()));
    for (const auto& x : sc.points) {
      const cplx p = seq.pn()(x);
      CHECK(std::abs(p.imag()) <= 1e-8);
      CHECK(p.real() >= -2.0 - 1e-8);
      CHECK(p.real() <= 2.0 + 1e-8);
    }
  }
  // x³ ∈ [-2, 2]: every point lies on a ray at a multiple of π/3
  const SupportCurve s3 = support_sample(fam("elementary-3"), 16);
  for (const auto& x : s3.points) {
    if (std::abs(x) < 1e-9) continue;
    const double a = std::arg(x) / (std::acos(-1.0) / 3.0);
    CHECK(std::abs(a - std::round(a)) < 1e-6);
    CHECK(std::abs(x) <= std::cbrt(2.0) + 1e-9);
  }
  CHECK_THROWS_AS(support_sample(fam("elementary-3"), 1), std::invalid_argument);
}

TEST_CASE("support endpoints of the parametric family") {
  for (double alpha : {0.0, 2.0 / 3.0, 1.0}) {
    const double a[] = {alpha};
    const PhiSequence seq(family("parametric", a).coeffs);
    const SupportCurve sc = support_sample(seq, 64);
    const double lam = lambda_of_alpha(alpha);
    CHECK(std::abs(lam * lam * lam - alpha_tilde1_sq(alpha) * lam - 2.0) < 1e-12);
    int hits = 0;
    for (const auto& e : sc.endpoints()) hits += std::abs(std::abs(e) - lam) < 1e-6;
    CHECK(hits >= 1);
    if (alpha != 2.0 / 3.0)
      for (const auto& e : sc.endpoints()) CHECK(std::abs(std::abs(e) - lam) < 1e-6);
  }
}

TEST_CASE("truncation oracle") {
  const RootSet one = truncation_oracle(fam("elementary-3"), 1);
  REQUIRE(one.roots.size() == 1);
  CHECK(std::abs(one.roots[0].value - 1i * std::sqrt(3.0)) < 1e-14);
  CHECK_THROWS_AS(truncation_oracle(fam("elementary-3"), 0), std::invalid_argument);
  CHECK_THROWS_AS(truncation_oracle(fam("elementary-3"), 65), std::invalid_argument);

  // roots of φ_n against the eigenvalues of the truncated matrix
  Rng rng(4);
  for (int t = 0; t < 6; ++t) {
    const PhiSequence seq(random_coefficient_set(rng, 2 + t % 3));
    const RootSet rs = truncation_oracle(seq, 12);
    CHECK(rs.total_multiplicity() == 12);
    const auto ev = oracle::truncated_eigenvalues(seq.coeffs(), 12);
    for (const auto& r : rs.roots) CHECK(oracle::nearest(ev, r.value) < 1e-6);
  }

  const PhiSequence seq = fam("elementary-4");
  const SupportCurve sc = support_sample(seq, 256);
  double prev = 1e9;
  for (int n : {16, 24, 32}) {
    std::vector<cplx> zs;
    for (const auto& r : truncation_oracle(seq, n).roots)
      for (int k = 0; k < r.multiplicity; ++k) zs.push_back(r.value);
    const double d = oracle::nearest(zs, 1i * kS2);
    CHECK(d < prev);
    prev = d;
    CHECK(oracle::count_near(zs, -1i * kS2, 0.05) == 0);
  }
  CHECK(prev < 0.05);
}
