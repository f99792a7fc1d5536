#include "gvforge/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "gvforge/errors.hpp"

namespace gvforge {

namespace {

BigInt to_big(std::uint64_t x) { return BigInt(static_cast<unsigned long>(x)); }
BigInt to_big_signed(std::int64_t x) { return BigInt(static_cast<long>(x)); }
HighReal hr(std::uint64_t x) { return HighReal(to_big(x)); }
HighReal hr_signed(std::int64_t x) { return HighReal(to_big_signed(x)); }
HighReal dec(const char* text) { return HighReal::from_decimal(text); }

void require_q_delta(std::uint64_t q, const Rational& delta) {
  if (q < 2) throw DomainError("q must be at least 2");
  if (delta <= 0 || delta >= 1) throw DomainError("delta must lie in (0, 1), got " + delta.get_str());
}

bool at_or_past_plotkin_point(std::uint64_t q, const Rational& delta) {
  return delta >= Rational(to_big(q - 1), to_big(q));
}

std::uint64_t iroot(std::uint64_t n, unsigned k) {
  BigInt out;
  mpz_root(out.get_mpz_t(), to_big(n).get_mpz_t(), k);
  return out.get_ui();
}

// (ell - 2)^2 - 4 (ell - 2), i.e. four times the condition-2 right-hand side.
BigInt four_cond2_rhs(std::uint64_t ell) {
  const BigInt L = to_big(ell) - 2;
  return L * L - 4 * L;
}

HighReal abs_enclosure(const HighReal& x) {
  if (!x.negative() && !x.contains_zero()) return x;
  if (x.negative()) return -x;
  return HighReal::hull(HighReal(0L), max(x, -x));
}

std::uint64_t nth_prime_upper_bound(std::uint64_t n) {
  if (n < 6) return 13;
  const double dn = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::ceil(dn * (std::log(dn) + std::log(std::log(dn))))) + 1;
}

// Formula value without the witness guard; used for display of failed certificates.
HighReal nfc_value(std::uint64_t q, const Rational& delta, std::uint64_t r, std::uint64_t k, const HighReal& D_log) {
  const HighReal lq = log(hr(q));
  return HighReal(Rational(1 - delta)) * log(hr(r)) / lq - D_log / (HighReal(2L) * hr(k) * lq);
}

// ceil((1 - eps)^2 q), retrying at higher precision when the enclosure straddles an integer.
template <class EpsFn>
std::uint64_t schedule_r(std::uint64_t q, EpsFn eps_fn, bool* overflow) {
  std::optional<BigInt> c;
  for (const mpfr_prec_t bits : {HighReal::precision(), mpfr_prec_t{512}, mpfr_prec_t{2048}}) {
    HighReal::PrecisionScope scope(bits);
    c = (square(HighReal(1L) - eps_fn()) * hr(q)).ceil_exact();
    if (c) break;
  }
  if (!c) throw IndeterminateError("cannot decide r = ceil((1 - eps)^2 q)");
  if (*c < 0 || !c->fits_ulong_p()) {
    *overflow = true;
    return 0;
  }
  return c->get_ui();
}

struct SearchTables {
  const PrimeTable* table;
  std::vector<std::uint32_t> three_mod4;  // primes = 3 mod 4 up to floor(sqrt q), ascending
  std::vector<double> theta_prefix;       // theta_prefix[i] = sum of log p_j for j < i
};

SearchTables make_search_tables(std::uint64_t q, std::uint64_t ell_max, const PrimeTable& table) {
  SearchTables t{&table, {}, {}};
  const std::uint64_t x = isqrt(q);
  for (const std::uint32_t p : table.primes()) {
    if (p > x) break;
    if ((p & 3u) == 3u) t.three_mod4.push_back(p);
  }
  t.theta_prefix.assign(ell_max + 1, 0.0);
  for (std::uint64_t i = 0; i < ell_max; ++i) {
    t.theta_prefix[i + 1] = t.theta_prefix[i] + std::log(static_cast<double>(table.nth(i + 1)));
  }
  return t;
}

SearchResult search_with_table(std::uint64_t q, const Rational& delta, std::uint64_t budget,
                               const PrimeTable& table, const SearchTables& st, std::uint64_t ell_max) {
  SearchResult out;
  out.gv = gv_bound(q, delta);
  const std::uint64_t ell0 = std::max<std::uint64_t>(3, iroot(q, 6));
  std::vector<std::uint64_t> order;
  for (std::uint64_t ell = 3; ell <= ell_max; ++ell) order.push_back(ell);
  std::stable_sort(order.begin(), order.end(), [ell0](std::uint64_t a, std::uint64_t b) {
    const auto da = a > ell0 ? a - ell0 : ell0 - a;
    const auto db = b > ell0 ? b - ell0 : ell0 - b;
    return da < db;
  });
  if (order.size() > budget) order.resize(budget);
  out.ell_explored = order.size();

  const double one_minus_delta = Rational(1 - delta).get_d();
  const double log4 = std::log(4.0);
  bool found = false;
  double best_score = 0;
  std::uint64_t best_r = 0, best_ell = 0, best_k = 0;
  const auto& q3 = st.three_mod4;
  for (const std::uint64_t ell : order) {
    const std::int64_t kmax_cond2 = schedule_k(ell);
    if (kmax_cond2 < 1) continue;
    const std::uint64_t p_ell = table.nth(ell);
    const auto first = std::upper_bound(q3.begin(), q3.end(), static_cast<std::uint32_t>(std::min<std::uint64_t>(p_ell, 0xffffffffu)));
    const std::uint64_t available = static_cast<std::uint64_t>(q3.end() - first);
    const std::uint64_t kmax = std::min<std::uint64_t>(static_cast<std::uint64_t>(kmax_cond2), available / 2);
    const double log_D = log4 + st.theta_prefix[ell];
    for (std::uint64_t k = 1; k <= kmax; ++k) {
      const double p = q3[q3.size() - 2 * k];
      const double score = one_minus_delta * 2.0 * std::log(p) - log_D / (2.0 * static_cast<double>(k));
      if (!found || score > best_score) {
        found = true;
        best_score = score;
        best_r = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
        best_ell = ell;
        best_k = k;
      }
    }
  }
  if (!found) return out;
  const ConditionReport rep = check_conditions(q, best_r, best_ell, best_k, table);
  if (!rep.ok) throw std::logic_error("search produced a witness failing condition " + std::to_string(rep.failed_condition));
  out.best = rep.witness;
  out.nfc = nfc_bound(q, delta, rep.witness);
  out.beats_gv = certify_less(out.gv, *out.nfc) == Verdict::pass;
  return out;
}

std::uint64_t search_ell_max(std::uint64_t q) { return std::max<std::uint64_t>(3, 2 * iroot(q, 6)); }

}  // namespace

// ---------------------------------------------------------------------------

HighReal gv_bound(std::uint64_t q, const Rational& delta) {
  require_q_delta(q, delta);
  if (at_or_past_plotkin_point(q, delta)) return HighReal(0L);
  const HighReal d(delta);
  const HighReal e(Rational(1 - delta));
  const HighReal lq = log(hr(q));
  const HighReal num = d * log(hr(q - 1)) - d * log(d) - e * log(e);
  return HighReal(1L) - num / lq;
}

HighReal gv_asymptotic(std::uint64_t q, const Rational& delta) {
  require_q_delta(q, delta);
  const HighReal d(delta);
  const HighReal e(Rational(1 - delta));
  const HighReal h = -(d * log(d)) - e * log(e);
  return e - h / log(hr(q));
}

HighReal plotkin_bound(std::uint64_t q, const Rational& delta) {
  require_q_delta(q, delta);
  if (at_or_past_plotkin_point(q, delta)) return HighReal(0L);
  return HighReal(Rational(1 - delta - delta / Rational(to_big(q - 1))));
}

std::uint64_t default_sieve_limit() {
  const char* env = std::getenv("GVFORGE_SIEVE_LIMIT");
  if (!env || !*env) return kSieveCeiling;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v < 2) throw ArgumentError(std::string("GVFORGE_SIEVE_LIMIT is not a valid limit: ") + env);
  return std::min<std::uint64_t>(v, kSieveCeiling);
}

PrimeTable table_for(std::uint64_t q, std::uint64_t ell, std::uint64_t sieve_limit) {
  if (sieve_limit == 0) sieve_limit = default_sieve_limit();
  const std::uint64_t need = std::max({isqrt(q), nth_prime_upper_bound(ell), std::uint64_t{2}});
  if (need > sieve_limit) {
    throw CapacityError("uncertifiable at this q: sieving to " + std::to_string(need) + " exceeds the sieve limit " +
                        std::to_string(sieve_limit));
  }
  return PrimeTable(need);
}

ConditionReport check_conditions(std::uint64_t q, std::uint64_t r, std::uint64_t ell, std::uint64_t k,
                                 const PrimeTable& table) {
  if (q < 1 || r < 1 || ell < 1 || k < 1) throw ArgumentError("q, r, ell and k must all be at least 1");
  ConditionReport rep;
  ParamWitness& w = rep.witness;
  w.q = q;
  w.r = r;
  w.ell = ell;
  w.k = k;
  const std::uint64_t x = isqrt(q);
  if (table.limit() < x) throw CapacityError("prime table does not reach floor(sqrt(q)) = " + std::to_string(x));
  if (table.size() < ell) throw CapacityError("prime table holds fewer than ell = " + std::to_string(ell) + " primes");
  w.p_ell = table.nth(ell);
  w.D_log = primorial_D(table, ell).log_value;
  const std::uint64_t lo = std::max(ceil_sqrt(r), w.p_ell + 1);
  w.Nq_count = lo > x ? 0 : table.count_3mod4_upto(x) - table.count_3mod4_upto(lo - 1);

  if (r < 2 || r > q) {
    rep.failed_condition = 1;
    rep.detail = "condition 1 fails: need 2 <= r <= q (r = " + std::to_string(r) + ", q = " + std::to_string(q) + ")";
  } else if (4 * (to_big(k) + 2) > four_cond2_rhs(ell)) {
    rep.failed_condition = 2;
    rep.detail = "condition 2 fails: k + 2 > (ell - 2)^2 / 4 - (ell - 2) (k = " + std::to_string(k) +
                 ", ell = " + std::to_string(ell) + ")";
  } else if (w.Nq_count < 2 * k) {
    rep.failed_condition = 3;
    rep.detail = "condition 3 fails: " + std::to_string(w.Nq_count) + " qualifying primes, need 2k = " +
                 std::to_string(2 * k);
  }
  rep.ok = rep.failed_condition == 0;
  w.certified = rep.ok;
  return rep;
}

ConditionReport check_conditions(std::uint64_t q, std::uint64_t r, std::uint64_t ell, std::uint64_t k) {
  const PrimeTable table = table_for(q, ell, 0);
  return check_conditions(q, r, ell, k, table);
}

HighReal nfc_bound(std::uint64_t q, const Rational& delta, const ParamWitness& w) {
  if (!w.certified || w.q != q) throw ArgumentError("refusing to evaluate the bound on an uncertified witness");
  require_q_delta(q, delta);
  return nfc_value(q, delta, w.r, w.k, w.D_log);
}

// ---------------------------------------------------------------------------

const char* to_string(ScheduleKind kind) noexcept {
  switch (kind) {
    case ScheduleKind::theorem1:
      return "theorem1";
    case ScheduleKind::theorem2:
      return "theorem2";
    case ScheduleKind::custom:
      return "custom";
  }
  return "?";
}

BigInt theorem2_threshold() {
  HighReal::PrecisionScope wide(256);
  if (auto c = exp(HighReal(29L)).ceil_exact()) return *c;
  throw IndeterminateError("cannot decide ceil(exp(29))");
}

std::int64_t schedule_k(std::uint64_t ell) {
  BigInt f;
  const BigInt num = four_cond2_rhs(ell);
  mpz_fdiv_q_ui(f.get_mpz_t(), num.get_mpz_t(), 4);
  f -= 2;
  return f.get_si();
}

Schedule theorem2_schedule(std::uint64_t q) {
  if (q < 2) throw DomainError("q must be at least 2");
  Schedule s;
  s.kind = ScheduleKind::theorem2;
  s.q = q;
  auto eps_fn = [q] { return HighReal(1L) / cbrt(log(hr(q))); };
  s.eps = eps_fn();
  bool overflow = false;
  s.r = schedule_r(q, eps_fn, &overflow);
  s.ell = iroot(q, 6);
  s.k = schedule_k(s.ell);
  s.eligible = to_big(q) >= theorem2_threshold();
  const bool eps_ok = certify_less(*s.eps, HighReal(1L)) == Verdict::pass;
  s.valid = eps_ok && !overflow && s.r >= 2 && s.ell >= 3 && s.k >= 1;
  if (!s.eligible) s.note = "q is below Q = ceil(exp(29)); the schedule carries no guarantee here";
  return s;
}

Schedule theorem1_schedule(std::uint64_t q, const HighReal& C0) {
  if (q < 27) throw DomainError("the theorem-1 schedule needs q >= 27");
  if (certify_less(HighReal(1L), C0) != Verdict::pass) throw ArgumentError("C0 must exceed 1");
  Schedule s;
  s.kind = ScheduleKind::theorem1;
  s.q = q;
  auto eps_fn = [q, &C0] {
    const HighReal l = log(hr(q));
    return l * log(l) / (C0 * exp(l / HighReal(6L)));
  };
  s.eps = eps_fn();
  const bool eps_ok = s.eps->positive() && certify_less(*s.eps, HighReal(1L)) == Verdict::pass;
  bool overflow = false;
  s.r = schedule_r(q, eps_fn, &overflow);
  s.ell = iroot(q, 6);
  s.k = schedule_k(s.ell);
  s.eligible = eps_ok;
  s.valid = eps_ok && !overflow && s.r >= 2 && s.r <= q && s.ell >= 3 && s.k >= 1;
  if (!eps_ok) s.note = "eps_q is not in (0, 1) at this (q, C0); schedule invalid";
  return s;
}

Schedule custom_schedule(std::uint64_t q, std::uint64_t r, std::uint64_t ell, std::uint64_t k) {
  Schedule s;
  s.kind = ScheduleKind::custom;
  s.q = q;
  s.r = r;
  s.ell = ell;
  s.k = static_cast<std::int64_t>(k);
  s.eligible = q >= 2;
  s.valid = q >= 2 && r >= 2 && ell >= 3 && k >= 1;
  return s;
}

// ---------------------------------------------------------------------------

const Check* Certificate::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Certificate certify(const Schedule& s, const CertifyOptions& options) {
  Certificate cert;
  cert.q = s.q;
  cert.schedule = s;
  auto add = [&cert](std::string name, const char* relation, HighReal lhs, HighReal rhs, bool exact = false) {
    Check c{std::move(name), relation, std::move(lhs), std::move(rhs), Verdict::fail, exact};
    c.status = c.relation == "<" ? certify_less(c.lhs, c.rhs) : certify_less_equal(c.lhs, c.rhs);
    cert.checks.push_back(std::move(c));
  };
  auto finish = [&cert] {
    bool any_fail = false, any_indet = false;
    for (const auto& c : cert.checks) {
      any_fail |= c.status == Verdict::fail;
      any_indet |= c.status == Verdict::indeterminate;
    }
    cert.overall = any_fail ? Verdict::fail : (any_indet ? Verdict::indeterminate : Verdict::pass);
    return cert;
  };

  const std::uint64_t q = s.q;
  if (s.kind == ScheduleKind::theorem2) add("schedule.q_ge_Q", "<=", HighReal(theorem2_threshold()), hr(q), true);
  if (s.eps) add("schedule.eps_lt_1", "<", *s.eps, HighReal(1L));
  add("guard.r_ge_2", "<=", HighReal(2L), hr(s.r), true);
  add("guard.ell_ge_3", "<=", HighReal(3L), hr(s.ell), true);
  add("guard.k_ge_1", "<=", HighReal(1L), hr_signed(s.k), true);
  if (s.r < 2 || s.ell < 3 || s.k < 1) return finish();

  const std::uint64_t ell = s.ell;
  const std::uint64_t k = static_cast<std::uint64_t>(s.k);
  const PrimeTable table = table_for(q, ell, options.sieve_limit);
  const ConditionReport cond = check_conditions(q, s.r, ell, k, table);
  cert.witness = cond.witness;
  const std::uint64_t p = cert.witness.p_ell;
  const HighReal L = hr(ell);
  const HighReal P = hr(p);
  const HighReal lq = log(hr(q));

  add("cond1.r_le_q", "<=", hr(s.r), hr(q), true);
  add("cond2.k_plus_2", "<=", hr(k + 2), HighReal(Rational(four_cond2_rhs(ell), 4)), true);

  // (a) sqrt r >= (1 - eps) x > 0.6745 x > 24 x^(1/3) log x^(1/3) >= 24 ell log ell > p_ell
  const HighReal ell_term = HighReal(24L) * L * log(L);
  if (s.eps) {
    BigInt pow6;
    mpz_pow_ui(pow6.get_mpz_t(), to_big(ell).get_mpz_t(), 6);
    const HighReal x = sqrt(hr(q));
    const HighReal x13 = cbrt(x);
    const HighReal x13_term = HighReal(24L) * x13 * log(x13);
    const HighReal one_minus = HighReal(1L) - *s.eps;
    add("a.scaled_q_le_r", "<=", square(one_minus) * hr(q), hr(s.r));
    add("a.one_minus_eps_gt_0.6745", "<", dec("0.6745"), one_minus);
    add("a.0.6745x_gt_24_cbrt_x_log", "<", x13_term, dec("0.6745") * x);
      // t log t is increasing, so ell <= x^(1/3) carries 24 ell log ell <= 24 x^(1/3) log x^(1/3).
    add("a.ell_pow6_le_q", "<=", HighReal(pow6), hr(q), true);
  }
  add("a.p_ell_lt_24_ell_log_ell", "<", P, ell_term);
  add("a.p_ell_squared_lt_r", "<", hr(p) * hr(p), hr(s.r), true);

  // (b) condition 3 by exact count, with the analytic envelope as a cross-check.
  add("b.Nq_ge_2k", "<=", hr(2 * k), hr(cert.witness.Nq_count), true);
  const std::uint64_t x0 = isqrt(q);
  if (x0 >= 1000) {
    const HighReal X = hr(x0);
    const HighReal pi43 = hr(prime_count_ap(table, x0, 4, 3));
    const HighReal dev = abs_enclosure(pi43 - log_integral(X) / HighReal(2L));
    add("b.prop5_envelope_at_sqrt_q", "<", dev, dec("0.53") * X / square(log(X)));
  }

  // (c) log D / 2k <= 0.6839 - 0.3938 and the two constants it combines.
  const HighReal& D_log = cert.witness.D_log;
  const HighReal theta = chebyshev_theta(table, p);
  const Rational half(1, 2);
  const HighReal gv_half = gv_bound(q, half);
  add("c.logD_over_2k_le_0.2901", "<=", D_log / hr(2 * k), dec("0.2901"));
  add("c.gv_half_lt_half_minus_0.6839_over_log_q", "<", gv_half, HighReal(half) - dec("0.6839") / lq);
  add("c.half_log_q_over_r_lt_0.3938", "<", log(HighReal(Rational(to_big(q), to_big(s.r)))) / HighReal(2L),
      dec("0.3938"));
  add("c.theta_le_chebyshev_form", "<=", theta, -log(HighReal(4L)) + dec("0.5802") * hr(k));

  // (d), (e), (f)
  add("d.theta_lt_rosser_schoenfeld", "<", theta, (HighReal(1L) + HighReal(3L) / log(P)) * P);
  add("e.p_over_log_p_lt_ell", "<", P / log(P), L);
  const HighReal f_lhs = HighReal::from_decimal("3.7") * L + L * log(L) + L * log(log(L));
  add("f.final_polynomial", "<=", f_lhs, f_lhs + final_inequality_margin(ell));

  // (g) end to end at delta = 1/2.
  const HighReal nfc = nfc_value(q, half, s.r, k, D_log);
  add("g.nfc_gt_gv", "<", gv_half, nfc);
  if (!cond.ok) cert.checks.back().status = Verdict::fail;  // never certify on a failed witness

  // Tower: pick Delta = -D when it has >= k inert qualifying primes, else D.
  std::vector<BigInt> primes;
  primes.reserve(ell);
  for (std::uint64_t i = 1; i <= ell; ++i) primes.push_back(to_big(table.nth(i)));
  const BigInt D = primorial_D(table, ell).value;
  const std::uint64_t lo = std::max(ceil_sqrt(s.r), p + 1);
  std::uint64_t inert_minus = 0, inert_plus = 0;
  for (const std::uint32_t pr : table.primes()) {
    if (pr > x0) break;
    if (pr < lo || (pr & 3u) != 3u) continue;
    const BigInt bp = to_big(pr);
    inert_minus += kronecker_symbol(BigInt(-D), bp) == -1;
    inert_plus += kronecker_symbol(D, bp) == -1;
  }
  const bool use_minus = inert_minus >= k || inert_minus >= inert_plus;
  const BigInt disc = use_minus ? BigInt(-D) : D;
  const std::uint64_t inert = use_minus ? inert_minus : inert_plus;
  cert.discriminant = disc;
  add("tower.inert_primes_ge_k", "<=", hr(k), hr(inert), true);
  const QuadraticField field = make_field_factored(disc, primes);
  // Genus theory gives d2 >= ell - 2 for either sign.
  if (genus_two_rank_lower(field) < ell - 2) throw std::logic_error("genus rank below ell - 2");
  const TowerCertificate tower = golod_shafarevich_check(field, ell - 2, k);
  Check gs{"tower.golod_shafarevich", "<=", tower.threshold, hr(tower.d2_lower), tower.status, true};
  cert.checks.push_back(std::move(gs));
  return finish();
}

Certificate certify_theorem2(std::uint64_t q, const CertifyOptions& options) {
  return certify(theorem2_schedule(q), options);
}

// ---------------------------------------------------------------------------

HighReal final_inequality_margin(std::uint64_t ell) {
  if (ell < 3) throw DomainError("the final inequality is defined for ell >= 3");
  const HighReal L = hr(ell);
  const HighReal lhs = HighReal::from_decimal("3.7") * L + L * log(L) + L * log(log(L));
  const HighReal bracket = HighReal(Rational(four_cond2_rhs(ell), 4)) - HighReal(3L);
  const HighReal rhs = HighReal::from_decimal("-1.39") + HighReal::from_decimal("0.58") * bracket;
  return rhs - lhs;
}

ScanResult final_inequality_scan(std::uint64_t ell_min, std::uint64_t ell_max) {
  if (ell_min < 3) throw DomainError("ell_min must be at least 3");
  if (ell_max < ell_min) throw ArgumentError("empty ell range");
  ScanResult out;
  bool first = true;
  for (std::uint64_t ell = ell_min; ell <= ell_max; ++ell) {
    const HighReal m = final_inequality_margin(ell);
    if (certify_less_equal(HighReal(0L), m) != Verdict::pass) {
      out.holds = false;
      if (!out.first_failure) out.first_failure = ell;
    }
    if (first || certify_less(m, out.min_margin) == Verdict::pass) {
      out.min_margin = m;
      out.argmin = ell;
      first = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

HighReal aqq_constant() {
  const HighReal two_over_root_pi = HighReal(2L) / sqrt(HighReal::pi());
  return HighReal(1L) / (HighReal(1L) - log(two_over_root_pi));
}

ArqBounds a_rq_upper_bounds(std::uint64_t r, std::uint64_t q, const PrimeTable& table) {
  if (r < 2 || r > q) throw ArgumentError("A(r, q) bounds need 2 <= r <= q");
  if (table.limit() < q) throw CapacityError("prime table does not reach q");
  const HighReal c = aqq_constant();
  return {hr(table.count_upto(q)) * c, hr(q) / log(hr(r)), c};
}

// ---------------------------------------------------------------------------

SearchResult search_params(std::uint64_t q, const Rational& delta, const SearchOptions& options) {
  require_q_delta(q, delta);
  const std::uint64_t ell_max = search_ell_max(q);
  const PrimeTable table = table_for(q, ell_max, options.sieve_limit);
  const SearchTables st = make_search_tables(q, ell_max, table);
  return search_with_table(q, delta, options.budget, table, st, ell_max);
}

HighReal growth_proxy(std::uint64_t q, const Rational& delta, const HighReal& rate_lower) {
  require_q_delta(q, delta);
  const HighReal gap = HighReal(Rational(1 - delta)) - rate_lower;
  if (!gap.positive()) throw DomainError("growth proxy needs rate_lower < 1 - delta");
  return -log(gap) / log(hr(q));
}

std::vector<BoundRow> bound_table(std::uint64_t q, const std::vector<Rational>& deltas, const SearchOptions& options) {
  if (q < 2) throw DomainError("q must be at least 2");
  const std::uint64_t ell_max = search_ell_max(q);
  const PrimeTable table = table_for(q, ell_max, options.sieve_limit);
  const SearchTables st = make_search_tables(q, ell_max, table);
  std::vector<BoundRow> rows;
  rows.reserve(deltas.size());
  for (const Rational& delta : deltas) {
    BoundRow row;
    row.q = q;
    row.delta = delta;
    row.gv = gv_bound(q, delta);
    row.plotkin = plotkin_bound(q, delta);
    const SearchResult sr = search_with_table(q, delta, options.budget, table, st, ell_max);
    if (sr.best) {
      row.nfc = sr.nfc;
      row.witness = sr.best;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Rational> parse_delta_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw ArgumentError("delta grid must be start:stop:step, got '" + spec + "'");
  const Rational start = parse_decimal(spec.substr(0, c1));
  const Rational stop = parse_decimal(spec.substr(c1 + 1, c2 - c1 - 1));
  const Rational step = parse_decimal(spec.substr(c2 + 1));
  if (step <= 0) throw ArgumentError("delta grid step must be positive");
  if (stop < start) throw ArgumentError("delta grid stop is below start");
  std::vector<Rational> out;
  for (Rational d = start; d <= stop; d += step) {
    if (out.size() >= 1'000'000) throw CapacityError("delta grid exceeds 10^6 points");
    out.push_back(d);
  }
  return out;
}

}  // namespace gvforge
