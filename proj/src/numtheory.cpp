#include "gvforge/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "gvforge/errors.hpp"

namespace gvforge {

std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t ceil_sqrt(std::uint64_t n) noexcept {
  const std::uint64_t r = isqrt(n);
  return r * r == n ? r : r + 1;
}

// ---------------------------------------------------------------------------
// Sieve

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2 || limit > kSieveCeiling) {
    throw CapacityError("sieve limit " + std::to_string(limit) + " outside [2, 2^32]");
  }
  const std::uint64_t root = isqrt(limit);

  // Base primes up to sqrt(limit) with a plain sieve.
  std::vector<std::uint32_t> base;
  {
    std::vector<bool> composite(root + 1, false);
    for (std::uint64_t i = 2; i <= root; ++i) {
      if (composite[i]) continue;
      base.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= root; j += i) composite[j] = true;
    }
  }

  constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;
  std::vector<unsigned char> mark(kSegment);
  for (std::uint64_t low = 2; low <= limit; low += kSegment) {
    const std::uint64_t high = std::min(limit, low + kSegment - 1);
    std::fill(mark.begin(), mark.end(), 0);
    for (std::uint32_t p : base) {
      const std::uint64_t pp = std::uint64_t{p} * p;
      if (pp > high) break;
      std::uint64_t start = std::max(pp, (low + p - 1) / p * p);
      for (std::uint64_t j = start; j <= high; j += p) mark[j - low] = 1;
    }
    for (std::uint64_t n = low; n <= high; ++n) {
      if (!mark[n - low]) primes_.push_back(static_cast<std::uint32_t>(n));
    }
  }

  three_mod4_prefix_.resize(primes_.size() + 1);
  three_mod4_prefix_[0] = 0;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    three_mod4_prefix_[i + 1] = three_mod4_prefix_[i] + ((primes_[i] & 3u) == 3u ? 1u : 0u);
  }
}

std::uint64_t PrimeTable::nth(std::size_t i) const {
  if (i == 0 || i > primes_.size()) {
    throw CapacityError("prime index " + std::to_string(i) + " beyond sieve limit " +
                        std::to_string(limit_));
  }
  return primes_[i - 1];
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw CapacityError("is_prime query above sieve limit");
  return std::binary_search(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n));
}

std::size_t PrimeTable::count_upto(std::uint64_t x) const {
  if (x > limit_) throw CapacityError("prime count above sieve limit");
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::size_t PrimeTable::count_3mod4_upto(std::uint64_t x) const {
  return three_mod4_prefix_[count_upto(x)];
}

PrimeTable sieve_primes(std::uint64_t limit) { return PrimeTable(limit); }

std::uint64_t nth_prime(const PrimeTable& table, std::size_t i) { return table.nth(i); }

std::uint64_t prime_count_ap(const PrimeTable& table, std::uint64_t x, unsigned modulus,
                             unsigned residue) {
  if (modulus != 1 && modulus != 4) {
    throw ArgumentError("prime_count_ap supports modulus 1 or 4, got " + std::to_string(modulus));
  }
  if (residue >= modulus) throw ArgumentError("residue must be smaller than modulus");
  if (x < 2) return 0;
  const std::size_t all = table.count_upto(x);
  if (modulus == 1) return all;
  const std::size_t three = table.count_3mod4_upto(x);
  switch (residue) {
    case 3:
      return three;
    case 1:
      return all - three - 1;  // everything except 2 and the 3 (mod 4) class
    case 2:
      return 1;
    default:
      return 0;
  }
}

// ---------------------------------------------------------------------------
// Chebyshev theta and primorials

HighReal chebyshev_theta(const PrimeTable& table, std::uint64_t x) {
  HighReal sum;
  for (std::uint32_t p : table.primes()) {
    if (p > x) break;
    sum += log(HighReal(static_cast<long>(p)));
  }
  if (x > table.limit()) throw CapacityError("theta argument above sieve limit");
  return sum;
}

Primorial primorial_D(const PrimeTable& table, std::size_t ell) {
  if (ell == 0) throw ArgumentError("primorial index must be >= 1");
  if (ell > table.size()) throw CapacityError("primorial index beyond sieve limit");
  // Balanced product keeps the multiplication cost near-linear.
  std::vector<BigInt> level;
  level.reserve(ell);
  for (std::size_t i = 0; i < ell; ++i) level.emplace_back(static_cast<unsigned long>(table.primes()[i]));
  while (level.size() > 1) {
    std::vector<BigInt> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] * level[i + 1]);
    if (level.size() % 2) next.push_back(level.back());
    level.swap(next);
  }
  Primorial out{4 * level.front(), HighReal()};
  out.log_value = log(HighReal(out.value));
  return out;
}

// ---------------------------------------------------------------------------
// Logarithmic integral
//
// Li(x) = int_{log 2}^{log x} e^u / u du. Each panel [a, b] uses n-point
// Gauss-Legendre; the remainder
//   (b-a)^(2n+1) (n!)^4 / ((2n+1) ((2n)!)^3) * max |g^(2n)|
// is added to the enclosure, with |g^(2n)(u)| <= e^b sum_j (2n)!/(2n-j)! / a^(j+1).

namespace {

constexpr int kNodes = 20;

struct GaussRule {
  std::vector<HighReal> nodes;    // on [-1, 1]
  std::vector<HighReal> weights;
  HighReal remainder_factor;      // (n!)^4 / ((2n+1) ((2n)!)^3)
};

GaussRule make_rule(mpfr_prec_t bits) {
  const mpfr_prec_t work = bits + 64;
  mpfr_t x, p0, p1, p2, dp, dx, tmp;
  for (mpfr_ptr v : {x, p0, p1, p2, dp, dx, tmp}) mpfr_init2(v, work);

  GaussRule rule;
  // Node error after Newton convergence is far below 2^-(bits+32); widen by that.
  HighReal node_pad;
  {
    HighReal::PrecisionScope scope(bits);
    node_pad = HighReal(Rational(BigInt(1), BigInt(BigInt(1) << static_cast<unsigned>(bits + 32))));
    node_pad = HighReal::hull(-node_pad, node_pad);
  }

  for (int i = 1; i <= kNodes; ++i) {
    mpfr_const_pi(x, MPFR_RNDN);
    mpfr_mul_d(x, x, (i - 0.25) / (kNodes + 0.5), MPFR_RNDN);
    mpfr_cos(x, x, MPFR_RNDN);
    for (int iter = 0; iter < 200; ++iter) {
      mpfr_set_ui(p0, 1, MPFR_RNDN);
      mpfr_set(p1, x, MPFR_RNDN);
      for (int k = 2; k <= kNodes; ++k) {
        // k P_k = (2k-1) x P_{k-1} - (k-1) P_{k-2}
        mpfr_mul(p2, x, p1, MPFR_RNDN);
        mpfr_mul_ui(p2, p2, 2 * k - 1, MPFR_RNDN);
        mpfr_mul_ui(tmp, p0, k - 1, MPFR_RNDN);
        mpfr_sub(p2, p2, tmp, MPFR_RNDN);
        mpfr_div_ui(p2, p2, k, MPFR_RNDN);
        mpfr_swap(p0, p1);
        mpfr_swap(p1, p2);
      }
      // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
      mpfr_mul(dp, x, p1, MPFR_RNDN);
      mpfr_sub(dp, dp, p0, MPFR_RNDN);
      mpfr_mul_ui(dp, dp, kNodes, MPFR_RNDN);
      mpfr_sqr(tmp, x, MPFR_RNDN);
      mpfr_sub_ui(tmp, tmp, 1, MPFR_RNDN);
      mpfr_div(dp, dp, tmp, MPFR_RNDN);
      mpfr_div(dx, p1, dp, MPFR_RNDN);
      mpfr_sub(x, x, dx, MPFR_RNDN);
      if (mpfr_zero_p(dx) || mpfr_get_exp(dx) < -static_cast<mpfr_exp_t>(work - 4)) break;
    }
    // w = 2 / ((1 - x^2) P'_n(x)^2)
    mpfr_sqr(tmp, x, MPFR_RNDN);
    mpfr_ui_sub(tmp, 1, tmp, MPFR_RNDN);
    mpfr_sqr(dx, dp, MPFR_RNDN);
    mpfr_mul(tmp, tmp, dx, MPFR_RNDN);
    mpfr_ui_div(tmp, 2, tmp, MPFR_RNDN);

    HighReal::PrecisionScope scope(bits);
    Rational xr, wr;
    mpfr_get_q(xr.get_mpq_t(), x);
    mpfr_get_q(wr.get_mpq_t(), tmp);
    rule.nodes.push_back(HighReal(xr) + node_pad);
    rule.weights.push_back(HighReal(wr) + node_pad);
  }
  for (mpfr_ptr v : {x, p0, p1, p2, dp, dx, tmp}) mpfr_clear(v);

  HighReal::PrecisionScope scope(bits);
  BigInt nf, n2f;
  mpz_fac_ui(nf.get_mpz_t(), kNodes);
  mpz_fac_ui(n2f.get_mpz_t(), 2 * kNodes);
  BigInt nf4 = nf * nf * nf * nf;
  BigInt denom = (2 * kNodes + 1) * n2f * n2f * n2f;
  rule.remainder_factor = HighReal(Rational(nf4, denom));
  return rule;
}

const GaussRule& rule_for(mpfr_prec_t bits) {
  static std::mutex mutex;
  static std::map<mpfr_prec_t, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(bits);
  if (it == cache.end()) it = cache.emplace(bits, make_rule(bits)).first;
  return it->second;
}

// Upper bound of |g^(2n)| on [a, b] for g(u) = e^u / u, a > 0.
HighReal derivative_bound(const HighReal& a, const HighReal& b) {
  HighReal sum;
  HighReal falling(1L);  // (2n)! / (2n - j)!
  HighReal inv_a = HighReal(1L) / a;
  HighReal power = inv_a;  // 1 / a^(j+1)
  for (int j = 0; j <= 2 * kNodes; ++j) {
    sum += falling * power;
    falling *= HighReal(static_cast<long>(2 * kNodes - j));
    power *= inv_a;
  }
  return exp(b) * sum;
}

// sup of g on an interval [lo, hi] with lo > 0 (g is convex with minimum at u = 1).
HighReal g_sup(const HighReal& u) {
  const HighReal lo_val = exp(HighReal::from_double(u.lower())) / HighReal::from_double(u.lower());
  const HighReal hi_val = exp(HighReal::from_double(u.upper())) / HighReal::from_double(u.upper());
  return max(lo_val, hi_val);
}

// The exact lower endpoint as a point interval.
HighReal lower_point(const HighReal& x) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x.lo());
  return HighReal(q);
}

struct Panel {
  HighReal a, b;
  int depth;
};

// Integral of e^u/u over [a, b] where a, b are exact (point) values.
HighReal gauss_panels(const HighReal& a, const HighReal& b, const GaussRule& rule, mpfr_prec_t bits) {
  HighReal total;
  if (certify_less(a, b) != Verdict::pass) return total;
  const double span = b.mid() - a.mid();
  const int initial = std::max(1, static_cast<int>(std::ceil(span)));
  const double tol = std::ldexp(1.0, -static_cast<int>(bits - 24));

  std::vector<HighReal> cuts{a};
  for (int i = 1; i < initial; ++i) cuts.push_back(lower_point(a + (b - a) * HighReal(Rational(i, initial))));
  cuts.push_back(b);
  std::vector<Panel> stack;
  for (int i = initial - 1; i >= 0; --i) stack.push_back({cuts[i], cuts[i + 1], 0});

  while (!stack.empty()) {
    Panel panel = stack.back();
    stack.pop_back();
    const HighReal half = (panel.b - panel.a) / HighReal(2L);
    const HighReal centre = (panel.a + panel.b) / HighReal(2L);
    const HighReal len = panel.b - panel.a;
    HighReal len_pow = len;
    for (int i = 0; i < 2 * kNodes; ++i) len_pow *= len;
    const HighReal remainder = len_pow * rule.remainder_factor * derivative_bound(panel.a, panel.b);

    if (remainder.upper() > tol * std::max(1.0, g_sup(panel.b).upper()) && panel.depth < 40) {
      const HighReal mid = lower_point(centre);
      stack.push_back({mid, panel.b, panel.depth + 1});
      stack.push_back({panel.a, mid, panel.depth + 1});
      continue;
    }

    HighReal sum;
    for (int i = 0; i < kNodes; ++i) {
      const HighReal u = centre + half * rule.nodes[i];
      sum += rule.weights[i] * exp(u) / u;
    }
    total += half * sum + HighReal::hull(-remainder, remainder);
  }
  return total;
}

}  // namespace

HighReal log_integral(const HighReal& x) {
  if (mpfr_cmp_ui(x.lo(), 2) < 0) throw DomainError("log_integral requires x >= 2");
  const mpfr_prec_t target = HighReal::precision();
  const mpfr_prec_t bits = target + 32;
  HighReal::PrecisionScope scope(bits);
  const GaussRule& rule = rule_for(bits);

  // Evaluate at an exact point t; Li is increasing, so the enclosure of
  // Li over [x.lo, x.hi] is [Li(x.lo).lo, Li(x.hi).hi].
  auto at_point = [&](mpfr_srcptr t) {
    Rational tq;
    mpfr_get_q(tq.get_mpq_t(), t);
    if (tq == 2) return HighReal();
    const HighReal A = log(HighReal(2L));
    const HighReal B = log(HighReal(tq));
    const HighReal core = gauss_panels(lower_point(A), lower_point(B), rule, bits);
    // The true limits lie in A and B, at most their width away from the points used.
    const HighReal sa = HighReal::from_double((HighReal::from_double(A.width()) * g_sup(A)).upper());
    const HighReal sb = HighReal::from_double((HighReal::from_double(B.width()) * g_sup(B)).upper());
    return core + HighReal::hull(-sa, sa) + HighReal::hull(-sb, sb);
  };

  const HighReal lo_enc = at_point(x.lo());
  if (x.is_point()) return lo_enc;
  return HighReal::hull(lo_enc, at_point(x.hi()));
}

// ---------------------------------------------------------------------------
// Kronecker symbol

int kronecker_symbol(std::int64_t a, std::int64_t n) {
  static constexpr int kTab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  __int128 aa = a;
  __int128 b = n;
  int v = 0;
  while ((b & 1) == 0) {
    b >>= 1;
    ++v;
  }
  int k = (v & 1) ? kTab2[static_cast<int>(aa & 7)] : 1;
  if (b < 0) {
    b = -b;
    if (aa < 0) k = -k;
  }
  // b odd and positive from here on.
  while (true) {
    if (aa == 0) return b > 1 ? 0 : k;
    v = 0;
    while ((aa & 1) == 0) {
      aa >>= 1;
      ++v;
    }
    if (v & 1) k *= kTab2[static_cast<int>(b & 7)];
    if (aa & b & 2) k = -k;
    const __int128 r = aa < 0 ? -aa : aa;
    aa = b % r;
    b = r;
  }
}

int kronecker_symbol(const BigInt& a_in, const BigInt& n_in) {
  static constexpr int kTab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (n_in == 0) return (a_in == 1 || a_in == -1) ? 1 : 0;
  if (mpz_even_p(a_in.get_mpz_t()) && mpz_even_p(n_in.get_mpz_t())) return 0;
  BigInt a = a_in;
  BigInt b = n_in;
  const auto v2 = mpz_scan1(b.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(b.get_mpz_t(), b.get_mpz_t(), v2);
  int k = (v2 & 1) ? kTab2[mpz_fdiv_ui(a.get_mpz_t(), 8)] : 1;
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  while (true) {
    if (a == 0) return b > 1 ? 0 : k;
    const auto v = mpz_scan1(a.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), v);
    if (v & 1) k *= kTab2[mpz_fdiv_ui(b.get_mpz_t(), 8)];
    if ((mpz_fdiv_ui(a.get_mpz_t(), 4) & 2) && (mpz_fdiv_ui(b.get_mpz_t(), 4) & 2)) k = -k;
    BigInt r = abs(a);
    mpz_tdiv_r(a.get_mpz_t(), b.get_mpz_t(), r.get_mpz_t());
    b = r;
  }
}

// ---------------------------------------------------------------------------

std::vector<BigInt> distinct_prime_divisors(const BigInt& n, std::uint64_t trial_bound) {
  BigInt m = abs(n);
  std::vector<BigInt> out;
  if (m <= 1) return out;
  for (unsigned long p = 2; p <= trial_bound; p += (p == 2 ? 1 : 2)) {
    if (BigInt(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      out.emplace_back(p);
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  if (m > 1) {
    const BigInt bound2 = BigInt(trial_bound) * trial_bound;
    if (m > bound2 && mpz_probab_prime_p(m.get_mpz_t(), 40) != 2) {
      throw CapacityError("cofactor " + m.get_str() + " too large to factor by trial division");
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace gvforge
