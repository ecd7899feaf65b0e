#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "oracles.hpp"
#include "pjac/corpus.hpp"
#include "pjac/error.hpp"
#include "pjac/families.hpp"
#include "pjac/recur.hpp"

using namespace pjac;
using namespace std::complex_literals;

namespace {

const double kS3 = std::sqrt(3.0);

CoefficientSet sym3() { return CoefficientSet({1i * kS3, -1i * kS3, 0.0}); }
CoefficientSet sym4() { return CoefficientSet({2i, 0.0, -2i, 0.0}); }
CoefficientSet sym5() { return CoefficientSet({0.0, 1i * std::sqrt(5.0), 0.0, 0.0, -1i * std::sqrt(5.0)}); }

}  // namespace

TEST_CASE("coefficient validation") {
  CHECK_THROWS_AS(CoefficientSet(std::vector<cplx>{}), InputError);
  CHECK_THROWS_AS(CoefficientSet({1.0, 2.0}, {1.0}), InputError);
  CHECK_THROWS_AS(CoefficientSet({1.0, 2.0}, {1.0, 0.0}), InputError);
  CHECK_THROWS_AS(CoefficientSet({cplx(NAN, 0.0)}), InputError);
  CHECK_THROWS_AS(parse_convention("plus"), InputError);
  const CoefficientSet c({1.0, 2i}, {2.0, 0.5});
  CHECK(c.period() == 2);
  CHECK(c.alpha(3) == 2i);
  CHECK(c.alpha(-1) == 2i);
  CHECK(c.beta(4) == 2.0);
  CHECK(c.period_determinant() == 1.0);
  CHECK(c.unimodular());
}

TEST_CASE("recurrence-plus inputs are negated") {
  const CoefficientSet plus({1.0, 2i}, {1.0, 1.0}, parse_convention("recurrence-plus"));
  CHECK(plus.alpha(0) == -1.0);
  CHECK(plus.alpha(1) == -2i);
  const PhiSequence seq(plus);
  CHECK(seq.phi(1) == CPoly({1.0, 1.0}));  // x + a_0
  CHECK(to_string(Convention::RecurrencePlus) == "recurrence-plus");
}

TEST_CASE("phi examples") {
  const PhiSequence s3(sym3());
  CHECK(s3.phi(-1).is_zero());
  CHECK(s3.phi(0) == CPoly::constant(1.0));
  CHECK(relative_difference(s3.phi(2), CPoly({2.0, 0.0, 1.0})) < 1e-15);
  // φ3 = (x - a2) φ2 - φ1 with a2 = 0
  CHECK(relative_difference(s3.phi(3), CPoly::monomial(1.0, 1) * s3.phi(2) - s3.phi(1)) < 1e-15);
  const PhiSequence s5(sym5());
  CHECK(relative_difference(s5.phi(6), CPoly({-1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0})) < 1e-14);
  CHECK_THROWS_AS(s3.phi(-2), std::invalid_argument);
}

TEST_CASE("phi values at zero for the symmetric N=3 family") {
  const auto v = phi_eval_stream(sym3(), 0.0, 30);
  const std::vector<cplx> head = {1.0, -1i * kS3, 2.0, 1i * kS3, 1.0, 0.0};
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(v[k] - head[k]) < 1e-14);
  for (std::size_t k = 0; k + 6 < v.size(); ++k) CHECK(std::abs(v[k + 6] + v[k]) < 1e-12);
}

TEST_CASE("phi values at i sqrt2 for N=4") {
  const double s2 = std::sqrt(2.0);
  const auto v = phi_eval_stream(sym4(), 1i * s2, 40);
  const std::vector<cplx> head = {1.0, 1i * (s2 - 2.0), 2.0 * s2 - 3.0, 0.0};
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(v[k] - head[k]) < 1e-14);
  // the growing component is exactly absent, so rounding grows only slowly
  for (std::size_t k = 0; k + 4 < 20; ++k) CHECK(std::abs(v[k + 4] - (3.0 - 2.0 * s2) * v[k]) < 1e-10);
}

TEST_CASE("monic degree invariant and stream agreement on random families") {
  Rng rng(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 5;
    const PhiSequence seq(random_coefficient_set(rng, n, t % 2 == 0));
    for (int k = 0; k <= 6 * n; ++k) {
      CHECK(seq.phi(k).degree() == k);
      CHECK(seq.phi(k).leading() == 1.0);
    }
    cplx mu(u(rng), u(rng));
    if (std::abs(mu) > 3.0) mu *= 3.0 / std::abs(mu);
    const auto v = phi_eval_stream(seq, mu, 31);
    for (int k = 0; k <= 30; ++k) {
      const cplx p = seq.phi(k)(mu);
      CHECK(std::abs(v[static_cast<std::size_t>(k)] - p) <= 1e-8 * std::max(1.0, std::abs(p)));
    }
  }
}

TEST_CASE("overflow guard reports the index") {
  try {
    phi_eval_stream(CoefficientSet({0.0}), 1e40, 20);
    FAIL("expected overflow");
  } catch (const OverflowGuardError& e) {
    CHECK(e.index() == 4);
    CHECK(e.magnitude() > kOverflowGuard);
  }
}

TEST_CASE("period polynomial examples") {
  CHECK(relative_difference(extract_pn(PhiSequence(sym3())), CPoly::monomial(1.0, 3)) < 1e-12);
  CHECK(relative_difference(extract_pn(PhiSequence(sym4())), CPoly({2.0, 0.0, 0.0, 0.0, 1.0})) < 1e-12);
  CHECK(relative_difference(extract_pn(PhiSequence(sym5())), CPoly::monomial(1.0, 5)) < 1e-12);
  // N = 1: φ0 = 1 divides anything; P_1 = φ1
  const PhiSequence one(CoefficientSet({0.5}));
  CHECK(one.pn() == one.phi(1));
}

TEST_CASE("generic N=3 zero-sum period polynomial") {
  const cplx a0(0.3, -0.2), a1(-0.7, 0.5);
  const cplx a2 = -a0 - a1;
  const PhiSequence seq(CoefficientSet({a0, a1, a2}));
  const CPoly want({-a0 * a1 * a2, a0 * a2 + a1 * a2 + a0 * a1 - 3.0, 0.0, 1.0});
  CHECK(relative_difference(seq.pn(), want) < 1e-12);
}

TEST_CASE("block recurrence phi_n = P phi_{n-N} - phi_{n-2N} on random unimodular families") {
  Rng rng(99);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 5;
    const PhiSequence seq(random_coefficient_set(rng, n));
    const CPoly& p = seq.pn();
    for (int k = 2 * n; k <= 6 * n; ++k)
      CHECK(relative_difference(seq.phi(k), p * seq.phi(k - n) - seq.phi(k - 2 * n)) < 1e-9);
  }
}

TEST_CASE("scaled block recurrence when the period determinant is not 1") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 4;
    const CoefficientSet c = random_coefficient_set(rng, n, false);
    REQUIRE_FALSE(c.unimodular());
    const PhiSequence seq(c);
    const cplx d = c.period_determinant();
    for (int k = 2 * n; k <= 5 * n; ++k)
      CHECK(relative_difference(seq.phi(k), seq.pn() * seq.phi(k - n) - d * seq.phi(k - 2 * n)) < 1e-9);
    for (int m = 2; m <= 4; ++m)
      for (int k = 0; k < n; ++k) CHECK(relative_difference(phi_block(seq, m, k), seq.phi(n * m + k)) < 1e-9);
  }
}

TEST_CASE("phi_block agrees with phi") {
  Rng rng(123);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 5;
    const PhiSequence seq(random_coefficient_set(rng, n));
    for (int m = 2; m <= 4; ++m)
      for (int k = 0; k < n; ++k) CHECK(relative_difference(phi_block(seq, m, k), seq.phi(n * m + k)) < 1e-9);
    // m = 2, k = N-1 is one step of the block recurrence
    CHECK(relative_difference(phi_block(seq, 2, n - 1), seq.phi(2 * n - 1) * seq.pn() - seq.phi(n - 1)) < 1e-9);
  }
  const PhiSequence s3(sym3());
  CHECK(relative_difference(phi_block(s3, 2, 0), s3.phi(6)) < 1e-14);
  CHECK_THROWS_AS(phi_block(s3, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(phi_block(s3, 2, 3), std::invalid_argument);
}

TEST_CASE("chebyshev_of_pn is U_m(P_N) for unimodular sets") {
  const PhiSequence s4(sym4());
  const CPoly p = s4.pn();
  for (int m = 0; m <= 4; ++m)
    for (double x : {0.1, 0.7, -0.4}) {
      // U_m(P) from the trigonometric form where |P| < 2
      const cplx pv = p(x);
      if (std::abs(pv.real()) >= 2.0) continue;
      const double theta = std::acos(pv.real() / 2.0);
      CHECK(std::abs(chebyshev_of_pn(s4, m)(x) - oracle::chebyshev_trig(m, theta)) < 1e-10);
    }
}

TEST_CASE("Jacobi blocks") {
  const auto b3 = jacobi_blocks(sym3());
  CHECK(b3.b(0, 0) == 1i * kS3);
  CHECK(b3.b(1, 1) == -1i * kS3);
  CHECK(b3.b(2, 2) == cplx{});
  const auto b4 = jacobi_blocks(sym4());
  const std::vector<cplx> diag = {2i, 0.0, -2i, 0.0};
  for (int r = 0; r < 4; ++r) CHECK(b4.b(r, r) == diag[static_cast<std::size_t>(r)]);

  Rng rng(8);
  for (int n = 1; n <= 6; ++n) {
    const CoefficientSet c = random_coefficient_set(rng, n, false);
    const auto j = jacobi_blocks(c);
    int nonzero = 0;
    for (const auto& v : j.a.data) nonzero += v != cplx{};
    CHECK(nonzero == 1);
    CHECK(j.a(n - 1, 0) == 1.0);
    // interior rows reproduce μ φ_n(μ)
    const cplx mu(0.4, -0.3);
    const int rows = 5 * n;
    const auto v = phi_eval_stream(c, mu, static_cast<std::size_t>(rows + 1));
    const auto jv = apply_truncated(j, v, static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r)
      CHECK(std::abs(jv[static_cast<std::size_t>(r)] - mu * v[static_cast<std::size_t>(r)]) < 1e-12 * (1.0 + std::abs(v[static_cast<std::size_t>(r)])));
  }
}

TEST_CASE("concurrent phi access is consistent") {
  Rng rng(77);
  const PhiSequence shared(random_coefficient_set(rng, 5));
  const PhiSequence reference(shared.coeffs());
  std::vector<std::thread> pool;
  std::vector<int> bad(8, 0);
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&, t] {
      for (int k = 40; k >= 0; --k)
        if (!(shared.phi((k * (t + 3)) % 41) == reference.phi((k * (t + 3)) % 41))) ++bad[static_cast<std::size_t>(t)];
      if (!(shared.pn() == reference.pn())) ++bad[static_cast<std::size_t>(t)];
    });
  for (auto& th : pool) th.join();
  for (int b : bad) CHECK(b == 0);
}
