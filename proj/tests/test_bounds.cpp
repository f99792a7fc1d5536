#include <doctest.h>

#include <cmath>
#include <random>

#include "gvforge/bounds.hpp"
#include "gvforge/errors.hpp"

using namespace gvforge;

namespace {

constexpr std::uint64_t kQ42 = std::uint64_t{1} << 42;
constexpr std::uint64_t kQ = 3931334297145ULL;  // ceil(e^29)

// q-ary entropy in long double, written with log base q directly.
long double hq(long double q, long double d) {
  auto lg = [q](long double x) { return std::log(x) / std::log(q); };
  long double h = d * lg(q - 1);
  if (d > 0) h -= d * lg(d);
  if (d < 1) h -= (1 - d) * lg(1 - d);
  return h;
}

bool is_prime_td(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Rational R(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST_CASE("gv and plotkin agree with a long-double oracle and with each other") {
  for (std::uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL, 16ULL, 101ULL, 1024ULL, 9973ULL, 10000ULL}) {
    for (long num = 1; num < 100; ++num) {
      const Rational d = R(num, 100);
      const long double dd = num / 100.0L;
      const HighReal gv = gv_bound(q, d);
      const HighReal pl = plotkin_bound(q, d);
      if (dd >= 1.0L - 1.0L / q) {
        CHECK(gv.is_point());
        CHECK(gv.upper() == 0.0);
        CHECK(pl.upper() == 0.0);
        continue;
      }
      CHECK(gv.mid() == doctest::Approx(static_cast<double>(1 - hq(q, dd))).epsilon(1e-12));
      CHECK(pl.mid() == doctest::Approx(static_cast<double>(1 - dd * q / (q - 1))).epsilon(1e-12));
      // A lower bound never exceeds an upper bound.
      CHECK(certify_less_equal(gv, pl) == Verdict::pass);
      CHECK(gv.width() < 1e-30);
    }
  }
}

TEST_CASE("boundary identities: h_q(1 - 1/q) = 1 and plotkin vanishes at 1 - 1/q") {
  for (std::uint64_t q = 2; q <= 10000; q += (q < 100 ? 1 : 97)) {
    const Rational edge(BigInt(static_cast<unsigned long>(q - 1)), BigInt(static_cast<unsigned long>(q)));
    CHECK(plotkin_bound(q, edge).upper() == 0.0);
    CHECK(gv_bound(q, edge).upper() == 0.0);
    CHECK(static_cast<double>(hq(q, 1.0L - 1.0L / q)) == doctest::Approx(1.0).epsilon(1e-12));
    // Just below the edge the formula value is small and non-negative.
    const Rational below = edge - Rational(1, 1000000000);
    const HighReal gv = gv_bound(q, below);
    CHECK(gv.lower() > -1e-15);
    CHECK(gv.upper() < 1e-6);
  }
}

TEST_CASE("gv asymptotic form") {
  const HighReal a = gv_asymptotic(1024, R(1, 4));
  const long double h = -(0.25L * std::log(0.25L)) - 0.75L * std::log(0.75L);
  CHECK(a.mid() == doctest::Approx(static_cast<double>(0.75L - h / std::log(1024.0L))).epsilon(1e-14));
}

TEST_CASE("rate bounds reject bad domains") {
  CHECK_THROWS_AS(gv_bound(1, R(1, 2)), DomainError);
  CHECK_THROWS_AS(gv_bound(5, R(0)), DomainError);
  CHECK_THROWS_AS(gv_bound(5, R(1)), DomainError);
  CHECK_THROWS_AS(plotkin_bound(5, R(-1, 2)), DomainError);
  CHECK_THROWS_AS(gv_bound(5, R(3, 2)), DomainError);
}

TEST_CASE("gv at delta = 1/2 for q = 2^42") {
  const HighReal gv = gv_bound(kQ42, R(1, 2));
  const long double q = static_cast<long double>(kQ42);
  CHECK(gv.mid() == doctest::Approx(static_cast<double>(1 - hq(q, 0.5L))).epsilon(1e-15));
  CHECK(gv.mid() == doctest::Approx(0.4761905).epsilon(1e-7));
}

TEST_CASE("theorem-2 schedule at 2^42 and at Q") {
  const BigInt Q = theorem2_threshold();
  CHECK(Q == BigInt("3931334297145"));

  const Schedule s42 = theorem2_schedule(kQ42);
  CHECK(s42.eligible);
  CHECK(s42.valid);
  CHECK(s42.ell == 128);
  CHECK(s42.k == 3841);
  CHECK(s42.r == 2003452383709ULL);
  CHECK(s42.eps->mid() == doctest::Approx(0.325068646).epsilon(1e-9));

  const Schedule sq = theorem2_schedule(kQ);
  CHECK(sq.eligible);
  CHECK(sq.ell == 125);
  CHECK(sq.k == 3657);
  CHECK(sq.r == 1788629061766ULL);
  CHECK((HighReal(1L) - *sq.eps).mid() == doctest::Approx(0.674512735).epsilon(1e-9));

  CHECK_FALSE(theorem2_schedule(kQ - 1).eligible);
  CHECK_FALSE(theorem2_schedule(4).valid);
}

TEST_CASE("schedule_k matches the floor formula, with equality for even ell") {
  for (std::uint64_t ell = 1; ell <= 400; ++ell) {
    const long L = static_cast<long>(ell) - 2;
    const long double exact = L * L / 4.0L - L;
    CHECK(schedule_k(ell) == static_cast<std::int64_t>(std::floor(exact)) - 2);
    if (ell % 2 == 0 && ell >= 4) {
      // (ell - 4)^2 = 4 (k + 3)
      const long m = static_cast<long>(ell) - 4;
      CHECK(m * m == 4 * (schedule_k(ell) + 3));
    }
  }
}

TEST_CASE("certificate at 2^42 passes with the expected witness") {
  const Certificate c = certify_theorem2(kQ42);
  for (const auto& chk : c.checks) {
    INFO(chk.name);
    CHECK(chk.status == Verdict::pass);
  }
  CHECK(c.overall == Verdict::pass);
  CHECK(c.witness.certified);
  CHECK(c.witness.ell == 128);
  CHECK(c.witness.k == 3841);
  CHECK(c.witness.p_ell == 719);
  CHECK(c.witness.Nq_count == 23690);
  CHECK((c.witness.D_log / HighReal(BigInt(2 * 3841))).mid() == doctest::Approx(0.0895013).epsilon(1e-6));
  const Check* g = c.find("g.nfc_gt_gv");
  REQUIRE(g);
  CHECK(g->margin().mid() == doctest::Approx(0.0072307).epsilon(1e-6));
  CHECK(g->rhs.mid() == doctest::Approx(0.4834212).epsilon(1e-6));
  REQUIRE(c.discriminant);
  CHECK(c.find("tower.golod_shafarevich")->status == Verdict::pass);
  // Enclosures are far tighter than the margins they decide.
  for (const auto& chk : c.checks) {
    if (chk.exact) continue;
    INFO(chk.name);
    const double m = std::fabs(chk.margin().mid());
    CHECK(chk.lhs.width() + chk.rhs.width() < 1e-6 * m);
  }
}

TEST_CASE("certificate at Q passes with ell = 125") {
  const Certificate c = certify_theorem2(kQ);
  CHECK(c.overall == Verdict::pass);
  CHECK(c.witness.ell == 125);
  CHECK(c.witness.k == 3657);
  CHECK(c.witness.p_ell == 691);
  CHECK(c.witness.Nq_count == 22529);
  const Check* a = c.find("a.one_minus_eps_gt_0.6745");
  REQUIRE(a);
  CHECK(a->margin().mid() == doctest::Approx(1.2735e-5).epsilon(1e-3));
  CHECK(c.find("g.nfc_gt_gv")->margin().mid() == doctest::Approx(0.0071748).epsilon(1e-6));
}

TEST_CASE("certification fails cleanly below the threshold") {
  const Certificate small = certify_theorem2(1000000);
  CHECK(small.overall == Verdict::fail);
  CHECK(small.find("schedule.q_ge_Q")->status == Verdict::fail);

  const Certificate tiny = certify_theorem2(4);
  CHECK(tiny.overall == Verdict::fail);
  CHECK(tiny.find("guard.ell_ge_3")->status == Verdict::fail);
  CHECK(tiny.find("g.nfc_gt_gv") == nullptr);

  CHECK_THROWS_AS(certify_theorem2(1), DomainError);
}

TEST_CASE("certification respects the sieve limit") {
  CertifyOptions opts;
  opts.sieve_limit = 1000;
  CHECK_THROWS_AS(certify_theorem2(kQ42, opts), CapacityError);
}

TEST_CASE("check_conditions matches a brute-force oracle") {
  std::mt19937_64 rng(7);
  const std::uint64_t q = 200000;
  const PrimeTable table = table_for(q, 40, 0);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t n = 2; primes.size() < 40; ++n) {
    if (is_prime_td(n)) primes.push_back(n);
  }
  for (int it = 0; it < 300; ++it) {
    const std::uint64_t r = 1 + rng() % (q + 50);
    const std::uint64_t ell = 1 + rng() % 40;
    const std::uint64_t k = 1 + rng() % 60;
    const ConditionReport rep = check_conditions(q, r, ell, k, table);
    const std::uint64_t p_ell = primes[ell - 1];
    std::uint64_t nq = 0;
    for (std::uint64_t p = 2; p * p <= q; ++p) {
      if (p > p_ell && p % 4 == 3 && p * p >= r && is_prime_td(p)) ++nq;
    }
    const bool c1 = 2 <= r && r <= q;
    const long L = static_cast<long>(ell) - 2;
    const bool c2 = 4 * (static_cast<long>(k) + 2) <= L * L - 4 * L;
    const bool c3 = nq >= 2 * k;
    INFO("r=", r, " ell=", ell, " k=", k);
    CHECK(rep.witness.p_ell == p_ell);
    CHECK(rep.witness.Nq_count == nq);
    CHECK(rep.ok == (c1 && c2 && c3));
    CHECK(rep.witness.certified == rep.ok);
    const int first = !c1 ? 1 : (!c2 ? 2 : (!c3 ? 3 : 0));
    CHECK(rep.failed_condition == first);
  }
}

TEST_CASE("nfc refuses uncertified witnesses and grows with r") {
  ParamWitness w;
  w.q = kQ42;
  CHECK_THROWS_AS(nfc_bound(kQ42, R(1, 2), w), ArgumentError);

  const std::uint64_t q = 1ULL << 36;
  const PrimeTable table = table_for(q, 40, 0);
  HighReal prev;
  bool have_prev = false;
  for (std::uint64_t r = 1000000; r <= 100000000; r *= 10) {
    const ConditionReport rep = check_conditions(q, r, 40, 100, table);
    REQUIRE(rep.ok);
    const HighReal v = nfc_bound(q, R(1, 3), rep.witness);
    if (have_prev) CHECK(certify_less(prev, v) == Verdict::pass);
    prev = v;
    have_prev = true;
  }
}

TEST_CASE("closing inequality holds from ell = 125 and fails at ell = 10") {
  const ScanResult s = final_inequality_scan(125, 100000);
  CHECK(s.holds);
  CHECK_FALSE(s.first_failure);
  CHECK(s.argmin == 125);
  CHECK(s.min_margin.positive());
  CHECK(final_inequality_margin(10).negative());
  const ScanResult low = final_inequality_scan(3, 200);
  CHECK_FALSE(low.holds);
  CHECK(low.first_failure == 3u);
  CHECK_THROWS_AS(final_inequality_margin(2), DomainError);
}

TEST_CASE("A(r, q) upper bounds") {
  const HighReal c = aqq_constant();
  CHECK(c.mid() == doctest::Approx(1.1373746559787).epsilon(1e-12));
  const PrimeTable table(10000);
  const ArqBounds b = a_rq_upper_bounds(100, 10000, table);
  CHECK(b.minkowski.mid() == doctest::Approx(1229 * 1.1373746559787).epsilon(1e-12));
  CHECK(b.plotkin_derived.mid() == doctest::Approx(10000 / std::log(100.0)).epsilon(1e-12));
  CHECK_THROWS_AS(a_rq_upper_bounds(1, 100, table), ArgumentError);
  CHECK_THROWS_AS(a_rq_upper_bounds(100, 20000, table), CapacityError);
}

TEST_CASE("search dominates the schedule and is monotone in its budget") {
  const Rational half(1, 2);
  const SearchResult s = search_params(kQ42, half);
  REQUIRE(s.best);
  CHECK(s.best->certified);
  CHECK(s.beats_gv);
  const Certificate c = certify_theorem2(kQ42);
  CHECK(certify_less_equal(c.find("g.nfc_gt_gv")->rhs, *s.nfc) == Verdict::pass);

  HighReal prev;
  ParamWitness prev_w;
  bool have_prev = false;
  for (std::uint64_t budget : {1, 2, 4, 8, 16, 32}) {
    SearchOptions o;
    o.budget = budget;
    const SearchResult sb = search_params(1ULL << 30, R(1, 3), o);
    REQUIRE(sb.best);
    if (have_prev && !(sb.best->r == prev_w.r && sb.best->ell == prev_w.ell && sb.best->k == prev_w.k)) {
      CHECK(certify_less_equal(prev, *sb.nfc) == Verdict::pass);
    }
    prev = *sb.nfc;
    prev_w = *sb.best;
    have_prev = true;
  }

  const SearchResult none = search_params(100, half);
  CHECK_FALSE(none.best);
  CHECK_FALSE(none.nfc);
  CHECK_FALSE(none.beats_gv);
}

TEST_CASE("growth proxy") {
  const std::uint64_t q = 1ULL << 30;
  const Rational d(1, 4);
  const HighReal rate = HighReal(Rational(3, 4)) - exp(-log(HighReal(BigInt(static_cast<unsigned long>(q)))) / HighReal(6L));
  CHECK(growth_proxy(q, d, rate).mid() == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK_THROWS_AS(growth_proxy(q, d, HighReal(Rational(3, 4))), DomainError);
}

TEST_CASE("theorem-1 schedule") {
  const Schedule s = theorem1_schedule(kQ42, HighReal(2L));
  const double lq = std::log(static_cast<double>(kQ42));
  CHECK(s.eps->mid() == doctest::Approx(lq * std::log(lq) / (2 * std::pow(2.0, 7))).epsilon(1e-12));
  CHECK(s.valid);
  CHECK_THROWS_AS(theorem1_schedule(26, HighReal(2L)), DomainError);
  CHECK_THROWS_AS(theorem1_schedule(kQ42, HighReal(1L)), ArgumentError);
  CHECK_FALSE(theorem1_schedule(1000, HighReal::from_decimal("1.01")).valid);
}

TEST_CASE("bound table and delta grids") {
  const auto grid = parse_delta_grid("0.1:0.5:0.1");
  REQUIRE(grid.size() == 5);
  CHECK(grid[4] == Rational(1, 2));
  CHECK_THROWS_AS(parse_delta_grid("0.1:0.5"), ArgumentError);
  CHECK_THROWS_AS(parse_delta_grid("0.1:0.5:0"), ArgumentError);
  CHECK_THROWS_AS(parse_delta_grid("0.5:0.1:0.1"), ArgumentError);
  CHECK_THROWS_AS(parse_delta_grid("a:b:c"), ArgumentError);

  const auto rows = bound_table(kQ42, grid);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    REQUIRE(row.nfc);
    CHECK(certify_less_equal(*row.nfc, row.plotkin) == Verdict::pass);
    CHECK(certify_less_equal(row.gv, row.plotkin) == Verdict::pass);
  }
  const auto small = bound_table(100, grid);
  for (const auto& row : small) CHECK_FALSE(row.nfc);
}
