#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gvforge/errors.hpp"
#include "gvforge/numtheory.hpp"

using namespace gvforge;

namespace {

bool trial_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % m);
    b = static_cast<std::int64_t>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

// li(x) = gamma + log log x + sum_{k>=1} (log x)^k / (k k!), at 256 bits.
double li_series_minus_li2(double x_value, mpfr_t out) {
  auto li = [](mpfr_t res, unsigned long x) {
    mpfr_t lx, term, sum, tmp;
    for (mpfr_ptr v : {lx, term, sum, tmp}) mpfr_init2(v, 256);
    mpfr_set_ui(lx, x, MPFR_RNDN);
    mpfr_log(lx, lx, MPFR_RNDN);
    mpfr_const_euler(sum, MPFR_RNDN);
    mpfr_log(tmp, lx, MPFR_RNDN);
    mpfr_add(sum, sum, tmp, MPFR_RNDN);
    mpfr_set_ui(term, 1, MPFR_RNDN);  // (log x)^k / k!
    for (unsigned long k = 1; k < 2000; ++k) {
      mpfr_mul(term, term, lx, MPFR_RNDN);
      mpfr_div_ui(term, term, k, MPFR_RNDN);
      mpfr_div_ui(tmp, term, k, MPFR_RNDN);
      mpfr_add(sum, sum, tmp, MPFR_RNDN);
      if (mpfr_cmp_d(tmp, 1e-70) < 0 && k > 10) break;
    }
    mpfr_set(res, sum, MPFR_RNDN);
    for (mpfr_ptr v : {lx, term, sum, tmp}) mpfr_clear(v);
  };
  mpfr_t a, b;
  mpfr_init2(a, 256);
  mpfr_init2(b, 256);
  li(a, static_cast<unsigned long>(x_value));
  li(b, 2);
  mpfr_sub(out, a, b, MPFR_RNDN);
  mpfr_clear(a);
  mpfr_clear(b);
  return mpfr_get_d(out, MPFR_RNDN);
}

}  // namespace

TEST_CASE("sieve_primes small limits") {
  const PrimeTable t10(10);
  REQUIRE(t10.size() == 4);
  CHECK(std::vector<std::uint32_t>(t10.primes().begin(), t10.primes().end()) ==
        std::vector<std::uint32_t>{2, 3, 5, 7});
  const PrimeTable t2(2);
  REQUIRE(t2.size() == 1);
  CHECK(t2.primes()[0] == 2);
  CHECK_THROWS_AS(PrimeTable(1), CapacityError);
  CHECK_THROWS_AS(PrimeTable(kSieveCeiling + 1), CapacityError);
}

TEST_CASE("sieve agrees with trial division up to 1e5") {
  const PrimeTable table(100000);
  std::size_t idx = 0;
  for (std::uint64_t n = 2; n <= 100000; ++n) {
    if (trial_is_prime(n)) {
      REQUIRE(idx < table.size());
      REQUIRE(table.primes()[idx] == n);
      ++idx;
    }
  }
  CHECK(idx == table.size());
}

TEST_CASE("sieve to 1e6 counts 78498 primes, segments included") {
  const PrimeTable table(1000000);
  // Independent count: trial division over the same range.
  std::size_t count = 0;
  for (std::uint64_t n = 2; n <= 1000000; ++n) count += trial_is_prime(n) ? 1 : 0;
  CHECK(count == 78498);
  CHECK(table.size() == count);
}

TEST_CASE("nth_prime") {
  const PrimeTable table(10000);
  CHECK(nth_prime(table, 1) == 2);
  CHECK(nth_prime(table, 125) == 691);
  CHECK(nth_prime(table, 1000) == 7919);
  CHECK_THROWS_AS(nth_prime(table, 0), CapacityError);
  CHECK_THROWS_AS(nth_prime(table, 5000), CapacityError);
}

TEST_CASE("prime_count_ap") {
  const PrimeTable table(100000);
  CHECK(prime_count_ap(table, 20, 4, 3) == 4);  // 3, 7, 11, 19
  CHECK(prime_count_ap(table, 2, 4, 3) == 0);
  CHECK(prime_count_ap(table, 1000, 4, 3) == 87);
  CHECK_THROWS_AS(prime_count_ap(table, 100, 6, 1), ArgumentError);
  CHECK_THROWS_AS(prime_count_ap(table, 100, 4, 4), ArgumentError);

  // pi(x) = pi(x;4,1) + pi(x;4,3) + [2 <= x]
  for (std::uint64_t x = 2; x <= 100000; ++x) {
    REQUIRE(prime_count_ap(table, x, 1, 0) ==
            prime_count_ap(table, x, 4, 1) + prime_count_ap(table, x, 4, 3) + 1);
  }
  // Direct enumeration oracle on a few points.
  for (std::uint64_t x : {3ull, 50ull, 999ull, 65537ull}) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 2; n <= x; ++n) c += (trial_is_prime(n) && n % 4 == 3) ? 1 : 0;
    CHECK(prime_count_ap(table, x, 4, 3) == c);
  }
}

TEST_CASE("chebyshev_theta") {
  const PrimeTable table(10000);
  const HighReal t10 = chebyshev_theta(table, 10);
  CHECK(certify_less(t10 - log(HighReal(210L)), HighReal::from_decimal("1e-30")) == Verdict::pass);
  CHECK(certify_less(log(HighReal(210L)) - t10, HighReal::from_decimal("1e-30")) == Verdict::pass);
  CHECK(std::fabs(t10.mid() - 5.34711) < 1e-5);
  CHECK(chebyshev_theta(table, 2).contains(log(HighReal(2L))));

  // theta(691) < (1 + 3 / log 691) * 691
  const HighReal theta691 = chebyshev_theta(table, 691);
  const HighReal p(691L);
  CHECK(certify_less(theta691, (HighReal(1L) + HighReal(3L) / log(p)) * p) == Verdict::pass);
}

TEST_CASE("primorial_D") {
  const PrimeTable table(10000);
  CHECK(primorial_D(table, 1).value == 8);
  CHECK(primorial_D(table, 3).value == 120);
  CHECK_THROWS_AS(primorial_D(table, 0), ArgumentError);

  // log D = log 4 + theta(p_ell) to 1e-20 relative, ell <= 1000.
  for (std::size_t ell : {1u, 2u, 10u, 125u, 128u, 500u, 1000u}) {
    const Primorial d = primorial_D(table, ell);
    const HighReal other = log(HighReal(4L)) + chebyshev_theta(table, table.nth(ell));
    const HighReal rel = (d.log_value - other) / other;
    CHECK(std::fabs(rel.lower()) < 1e-20);
    CHECK(std::fabs(rel.upper()) < 1e-20);
  }
}

TEST_CASE("log_integral against the series oracle") {
  mpfr_t oracle;
  mpfr_init2(oracle, 256);
  for (long x : {3L, 10L, 1000L, 123457L, 2000000L}) {
    li_series_minus_li2(static_cast<double>(x), oracle);
    Rational q;
    mpfr_get_q(q.get_mpq_t(), oracle);
    const HighReal li = log_integral(HighReal(x));
    const HighReal diff = li - HighReal(q);
    CAPTURE(x);
    CAPTURE(li.bounds_string());
    CHECK(li.width() < 1e-30 * std::max(1.0, li.mid()));
    CHECK(std::fabs(diff.lower()) < 1e-30 * std::max(1.0, li.mid()));
    CHECK(std::fabs(diff.upper()) < 1e-30 * std::max(1.0, li.mid()));
  }
  mpfr_clear(oracle);

  CHECK(log_integral(HighReal(2L)).is_point());
  CHECK(log_integral(HighReal(2L)).contains_zero());
  CHECK(std::fabs(log_integral(HighReal(10L)).mid() - 5.12044) < 1e-5);
  CHECK_THROWS_AS(log_integral(HighReal(1L)), DomainError);
}

TEST_CASE("log_integral increments dominate (x - y) / log x") {
  for (long x : {5L, 100L, 1000L, 50000L}) {
    for (long h : {1L, 3L}) {
      const long y = x - h;
      if (y < 2) continue;
      const HighReal inc = log_integral(HighReal(x)) - log_integral(HighReal(y));
      CHECK(certify_less_equal(HighReal(h) / log(HighReal(x)), inc) == Verdict::pass);
      CHECK(inc.positive());
    }
  }
}

TEST_CASE("kronecker_symbol examples") {
  CHECK(kronecker_symbol(-4, 3) == -1);
  CHECK(kronecker_symbol(12, 3) == 0);
  CHECK(kronecker_symbol(5, 11) == 1);
  CHECK(kronecker_symbol(BigInt(-4), BigInt(3)) == -1);
  CHECK(kronecker_symbol(BigInt(5), BigInt(11)) == 1);
  CHECK(kronecker_symbol(1, 0) == 1);
  CHECK(kronecker_symbol(2, 0) == 0);
  CHECK(kronecker_symbol(5, 2) == -1);
  CHECK(kronecker_symbol(17, 2) == 1);
  CHECK(kronecker_symbol(-1, -1) == -1);
}

TEST_CASE("kronecker_symbol matches Euler's criterion at odd primes") {
  const PrimeTable table(1000);
  for (std::uint32_t p : table.primes()) {
    if (p == 2) continue;
    for (std::int64_t d = -999; d < 1000; ++d) {
      const std::int64_t e = powmod(d, (p - 1) / 2, p);
      const int expected = (d % static_cast<std::int64_t>(p) == 0) ? 0 : (e == 1 ? 1 : -1);
      REQUIRE(kronecker_symbol(d, p) == expected);
    }
  }
}

TEST_CASE("kronecker_symbol is multiplicative in the bottom argument") {
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<std::int64_t> dist(-100000, 100000);
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t a = dist(rng), m = dist(rng), n = dist(rng);
    // (a / mn) = (a / m)(a / n), except the sign convention at -1 * -1.
    if (m < 0 && n < 0) continue;
    REQUIRE(kronecker_symbol(a, m * n) == kronecker_symbol(a, m) * kronecker_symbol(a, n));
    const BigInt ba(a), bm(m);
    REQUIRE(kronecker_symbol(ba, bm) == kronecker_symbol(a, m));
    REQUIRE(kronecker_symbol(ba, bm) == mpz_kronecker(ba.get_mpz_t(), bm.get_mpz_t()));
  }
}

TEST_CASE("either D or -D is a non-residue at primes 3 mod 4") {
  const PrimeTable table(10000);
  for (std::size_t ell = 1; ell <= 6; ++ell) {
    const BigInt D = primorial_D(table, ell).value;
    for (std::uint32_t p : table.primes()) {
      if (p % 4 != 3 || mpz_divisible_ui_p(D.get_mpz_t(), p)) continue;
      const BigInt bp(p);
      REQUIRE((kronecker_symbol(D, bp) == -1 || kronecker_symbol(BigInt(-D), bp) == -1));
    }
  }
}

TEST_CASE("distinct_prime_divisors") {
  const auto f = distinct_prime_divisors(BigInt(-19399380));
  CHECK(f.size() == 8);
  CHECK(distinct_prime_divisors(BigInt(1)).empty());
  CHECK(distinct_prime_divisors(BigInt(97)).size() == 1);
}

TEST_CASE("integer square roots") {
  CHECK(isqrt(4398046511104ull) == 2097152);
  CHECK(isqrt(15) == 3);
  CHECK(ceil_sqrt(15) == 4);
  CHECK(ceil_sqrt(16) == 4);
}
