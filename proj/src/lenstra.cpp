#include "gvforge/lenstra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "gvforge/errors.hpp"

namespace gvforge {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr double kBoundaryNudge = 0x1p-40;
constexpr int kMaxNudges = 16;
constexpr std::size_t kCertifyAttempts = 16;

BigInt to_big(std::uint64_t x) { return BigInt(static_cast<unsigned long>(x)); }

BigInt pow_big(std::uint64_t base, std::uint64_t e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

// Runs body(t) for t in [0, threads) and joins.
template <class F>
void parallel_for_threads(unsigned threads, F&& body) {
  if (threads <= 1) {
    body(0u);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back([&body, t] { body(t); });
  for (auto& th : pool) th.join();
}

struct Span {
  std::int64_t lo = 1;
  std::int64_t hi = 0;  // empty when lo > hi
};

std::int64_t to_i64_checked(const BigInt& v) {
  if (!v.fits_slong_p()) throw CapacityError("lattice coordinate exceeds 64 bits");
  return v.get_si();
}

// Integers strictly inside (lo, hi); nullopt when the enclosures cannot decide.
std::optional<Span> integer_span(const HighReal& lo, const HighReal& hi) {
  if (certify_less_equal(hi, lo) == Verdict::pass) return Span{};
  const auto f = lo.floor_exact();
  const auto c = hi.ceil_exact();
  if (!f || !c) return std::nullopt;
  return Span{to_i64_checked(*f) + 1, to_i64_checked(*c) - 1};
}

// Row range (in v) that can meet the box, from double arithmetic padded by 2.
Span candidate_rows(const LatticeEmbedding& E, double rho, const std::array<double, 2>& tau) {
  const double a1 = E.basis_double(0, 1);
  const double a2 = E.basis_double(1, 1);
  double lo, hi;
  if (E.field().imaginary()) {
    lo = tau[1] / a2;
    hi = (tau[1] + rho) / a2;
  } else {
    const double s = a1 - a2;
    lo = (tau[0] - tau[1] - rho) / s;
    hi = (tau[0] - tau[1] + rho) / s;
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || std::fabs(lo) > 1e15 || std::fabs(hi) > 1e15) {
    throw CapacityError("box extends beyond the enumerable lattice range");
  }
  return {static_cast<std::int64_t>(std::floor(lo)) - 2, static_cast<std::int64_t>(std::ceil(hi)) + 2};
}

// Fast approximate count used only to rank tau candidates.
std::uint64_t count_double(const LatticeEmbedding& E, double rho, const std::array<double, 2>& tau) {
  const double a1 = E.basis_double(0, 1);
  const double a2 = E.basis_double(1, 1);
  const Span rows = candidate_rows(E, rho, tau);
  std::uint64_t total = 0;
  for (std::int64_t v = rows.lo; v <= rows.hi; ++v) {
    const double dv = static_cast<double>(v);
    double lo, hi;
    if (E.field().imaginary()) {
      const double y = dv * a2;
      if (!(tau[1] < y && y < tau[1] + rho)) continue;
      lo = tau[0] - dv * a1;
      hi = lo + rho;
    } else {
      const double l1 = tau[0] - dv * a1;
      const double l2 = tau[1] - dv * a2;
      lo = std::max(l1, l2);
      hi = std::min(l1, l2) + rho;
    }
    if (hi <= lo) continue;
    const double n = std::ceil(hi) - std::floor(lo) - 1.0;
    if (n > 0) total += static_cast<std::uint64_t>(n);
  }
  return total;
}

// Certified count of lattice points strictly inside tau + (0, rho)^2. Returns
// nullopt when some point lies within enclosure width of the boundary.
std::optional<std::uint64_t> count_certified(const LatticeEmbedding& E, const HighReal& rho,
                                             const std::array<double, 2>& tau,
                                             std::vector<AlgebraicInteger>* points) {
  const HighReal t1 = HighReal::from_double(tau[0]);
  const HighReal t2 = HighReal::from_double(tau[1]);
  const HighReal& a1 = E.basis(0, 1);
  const HighReal& a2 = E.basis(1, 1);
  const Span rows = candidate_rows(E, rho.upper(), tau);
  std::uint64_t total = 0;
  for (std::int64_t v = rows.lo; v <= rows.hi; ++v) {
    const HighReal hv(static_cast<long>(v));
    HighReal lo, hi;
    if (E.field().imaginary()) {
      const HighReal y = hv * a2;
      const Verdict above = certify_less(t2, y);
      const Verdict below = certify_less(y, t2 + rho);
      if (above == Verdict::fail || below == Verdict::fail) continue;
      if (above == Verdict::indeterminate || below == Verdict::indeterminate) return std::nullopt;
      lo = t1 - hv * a1;
      hi = lo + rho;
    } else {
      const HighReal l1 = t1 - hv * a1;
      const HighReal l2 = t2 - hv * a2;
      lo = max(l1, l2);
      hi = -max(-l1, -l2) + rho;
    }
    const auto span = integer_span(lo, hi);
    if (!span) return std::nullopt;
    if (span->lo > span->hi) continue;
    total += static_cast<std::uint64_t>(span->hi - span->lo + 1);
    if (points) {
      if (total > kMaxOmegaSize) throw CapacityError("Omega_G exceeds " + std::to_string(kMaxOmegaSize) + " points");
      for (std::int64_t u = span->lo; u <= span->hi; ++u) points->emplace_back(u, v);
    }
  }
  return total;
}

std::array<double, 2> cell_point(const LatticeEmbedding& E, double s, double t) {
  return {s * E.basis_double(0, 0) + t * E.basis_double(0, 1), s * E.basis_double(1, 0) + t * E.basis_double(1, 1)};
}

void require_box_parameters(std::uint64_t r, std::uint64_t G) {
  if (r < 2) throw ArgumentError("box requires r >= 2");
  if (G < 1) throw ArgumentError("box requires G >= 1");
  if (static_cast<double>(G) * std::log2(static_cast<double>(r)) > 4096.0) {
    throw CapacityError("r^G is too large to enumerate");
  }
}

struct Candidate {
  std::uint64_t score;
  std::array<double, 2> tau;
};

std::optional<BoxSpec> certify_candidates(const LatticeEmbedding& E, std::uint64_t r, std::uint64_t G,
                                          std::vector<Candidate>& cands, const BigInt& target, unsigned grid) {
  // Highest score first; equal scores keep generation (lexicographic) order.
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  for (std::size_t i = 0; i < cands.size() && i < kCertifyAttempts; ++i) {
    BoxSpec box;
    try {
      box = make_box(E, r, G, cands[i].tau);
    } catch (const IndeterminateError&) {
      continue;
    }
    if (to_big(box.count) >= target) {
      box.grid = grid;
      return box;
    }
  }
  return std::nullopt;
}

}  // namespace

LatticeEmbedding::LatticeEmbedding(QuadraticField field) : field_(std::move(field)) {
  const BigInt& disc = field_.discriminant();
  const HighReal half(Rational(1, 2));
  const HighReal root = sqrt(HighReal(BigInt(abs(disc))));  // sqrt|disc|
  basis_[0][0] = HighReal(1L);
  if (field_.imaginary()) {
    basis_[1][0] = HighReal(0L);
    basis_[0][1] = field_.half_integral_omega() ? half : HighReal(0L);
    basis_[1][1] = root * half;  // sqrt|d| = sqrt|disc|/2 when disc = 4d
    covolume_ = root * half;
  } else {
    basis_[1][0] = HighReal(1L);
    if (field_.half_integral_omega()) {
      basis_[0][1] = (HighReal(1L) + root) * half;
      basis_[1][1] = (HighReal(1L) - root) * half;
    } else {
      basis_[0][1] = root * half;
      basis_[1][1] = -(root * half);
    }
    covolume_ = root;
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) basis_d_[i][j] = basis_[i][j].mid();
  }
}

std::array<HighReal, 2> LatticeEmbedding::embed(const AlgebraicInteger& a) const {
  const HighReal u(static_cast<long>(a.first));
  const HighReal v(static_cast<long>(a.second));
  return {u * basis_[0][0] + v * basis_[0][1], u * basis_[1][0] + v * basis_[1][1]};
}

std::array<double, 2> LatticeEmbedding::embed_double(const AlgebraicInteger& a) const {
  const double u = static_cast<double>(a.first);
  const double v = static_cast<double>(a.second);
  return {u * basis_d_[0][0] + v * basis_d_[0][1], u * basis_d_[1][0] + v * basis_d_[1][1]};
}

LatticeEmbedding make_embedding(const QuadraticField& field) { return LatticeEmbedding(field); }

BigInt lattice_target(const QuadraticField& field, std::uint64_t r, std::uint64_t G) {
  // Smallest m with m^2 |disc| >= r^(2G).
  const BigInt num = pow_big(r, 2 * G);
  const BigInt ad = abs(field.discriminant());
  BigInt m;
  mpz_cdiv_q(m.get_mpz_t(), num.get_mpz_t(), ad.get_mpz_t());
  mpz_sqrt(m.get_mpz_t(), m.get_mpz_t());
  while (m * m * ad < num) ++m;
  while (m > 0 && (m - 1) * (m - 1) * ad >= num) --m;
  return m;
}

BoxSpec make_box(const LatticeEmbedding& E, std::uint64_t r, std::uint64_t G, std::array<double, 2> tau) {
  require_box_parameters(r, G);
  BoxSpec box;
  box.r = r;
  box.G = G;
  box.rho_squared = Rational(pow_big(r, G), pow_big(2, static_cast<std::uint64_t>(E.field().complex_places())));
  box.rho_squared.canonicalize();
  box.rho = sqrt(HighReal(box.rho_squared));
  box.target = lattice_target(E.field(), r, G);
  for (int attempt = 0; attempt < kMaxNudges; ++attempt) {
    if (const auto n = count_certified(E, box.rho, tau, nullptr)) {
      box.tau = tau;
      box.count = *n;
      return box;
    }
    tau[0] += kBoundaryNudge;
    tau[1] += kBoundaryNudge;
  }
  throw IndeterminateError("lattice points stay on the box boundary after repeated shifts of tau");
}

BoxSpec find_tau(const LatticeEmbedding& E, std::uint64_t r, std::uint64_t G, const TauSearchOptions& options) {
  require_box_parameters(r, G);
  const BigInt target = lattice_target(E.field(), r, G);
  if (target > to_big(kMaxOmegaSize)) {
    throw CapacityError("target lattice count " + target.get_str() + " exceeds " + std::to_string(kMaxOmegaSize));
  }
  const HighReal rho = sqrt(HighReal(Rational(pow_big(r, G), pow_big(2, static_cast<std::uint64_t>(E.field().complex_places())))));
  const double rho_d = rho.mid();

  for (unsigned g = std::max(1u, options.initial_grid); g <= options.max_grid; g *= 2) {
    std::vector<Candidate> cands;
    std::uint64_t best = 0;
    const double step = 1.0 / g;
    for (unsigned i = 0; i < g; ++i) {
      for (unsigned j = 0; j < g; ++j) {
        const auto tau = cell_point(E, i * step, j * step);
        const std::uint64_t score = count_double(E, rho_d, tau);
        if (score + 1 < best) continue;
        if (score > best) {
          best = score;
          // Drop candidates that can no longer lead.
          cands.erase(std::remove_if(cands.begin(), cands.end(),
                                     [best](const Candidate& c) { return c.score + 1 < best; }),
                      cands.end());
        }
        cands.push_back({score, tau});
      }
    }
    if (auto box = certify_candidates(E, r, G, cands, target, g)) return *box;
  }

  // Box centred on the lattice point 0, then seeded sampling of the cell.
  std::vector<Candidate> cands;
  const std::array<double, 2> centred{-rho_d / 2, -rho_d / 2};
  cands.push_back({count_double(E, rho_d, centred), centred});
  std::uint64_t state = options.seed;
  auto next_unit = [&state] {
    // splitmix64: portable across standard libraries.
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1p-53;
  };
  for (std::uint64_t k = 0; k < options.random_samples; ++k) {
    const double s = next_unit();
    const double t = next_unit();
    const auto tau = cell_point(E, s, t);
    cands.push_back({count_double(E, rho_d, tau), tau});
  }
  if (auto box = certify_candidates(E, r, G, cands, target, 0)) return *box;
  throw CapacityError("no certified shift tau reached the target count " + target.get_str() +
                      "; retry with a finer grid or another seed");
}

std::vector<AlgebraicInteger> enumerate_omega(const LatticeEmbedding& E, const BoxSpec& box) {
  std::vector<AlgebraicInteger> points;
  if (!count_certified(E, box.rho, box.tau, &points)) {
    throw IndeterminateError("box boundary passes through a lattice point within enclosure width");
  }
  return points;
}

std::uint64_t residue_symbol(const AlgebraicInteger& a, const PrimeIdealRecord& P, std::uint64_t q) {
  if (P.norm > to_big(q)) {
    throw ArgumentError("N(P) = " + P.norm.get_str() + " exceeds q = " + std::to_string(q));
  }
  const i128 p = P.p;
  auto mod = [p](i128 x) {
    i128 m = x % p;
    return m < 0 ? m + p : m;
  };
  if (P.split_type == SplitType::inert) {
    return static_cast<std::uint64_t>(mod(a.first) * p + mod(a.second));
  }
  return static_cast<std::uint64_t>(mod(mod(a.first) + mod(a.second) * static_cast<i128>(*P.residue_root)));
}

unsigned __int128 abs_norm(const QuadraticField& field, const AlgebraicInteger& a) {
  if (!field.norm_coeff().fits_slong_p()) throw CapacityError("norm coefficient exceeds 64 bits");
  const i128 u = a.first, v = a.second;
  const i128 b = field.trace_coeff();
  const i128 c = field.norm_coeff().get_si();
  i128 uu, uv, vv, cvv, buv, n;
  bool overflow = __builtin_mul_overflow(u, u, &uu);
  overflow |= __builtin_mul_overflow(u, v, &uv);
  overflow |= __builtin_mul_overflow(v, v, &vv);
  overflow |= __builtin_mul_overflow(c, vv, &cvv);
  overflow |= __builtin_mul_overflow(b, uv, &buv);
  overflow |= __builtin_sub_overflow(uu, buv, &n);
  overflow |= __builtin_add_overflow(n, cvv, &n);
  if (overflow) throw CapacityError("element norm overflows 128 bits");
  return static_cast<u128>(n < 0 ? -n : n);
}

namespace {

std::vector<std::vector<std::uint32_t>> map_codewords(const std::vector<AlgebraicInteger>& omega,
                                                      const std::vector<PrimeIdealRecord>& ideals, std::uint64_t q,
                                                      unsigned threads) {
  std::vector<std::vector<std::uint32_t>> words(omega.size());
  threads = std::max(1u, threads);
  parallel_for_threads(threads, [&](unsigned t) {
    for (std::size_t i = t; i < omega.size(); i += threads) {
      auto& w = words[i];
      w.reserve(ideals.size());
      for (const auto& P : ideals) w.push_back(static_cast<std::uint32_t>(residue_symbol(omega[i], P, q)));
    }
  });
  return words;
}

u128 saturating_pow(std::uint64_t base, std::uint64_t e) {
  constexpr u128 kMax = ~u128{0};
  u128 out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (out > kMax / base) return kMax;
    out *= base;
  }
  return out;
}

}  // namespace

LenstraCode build_code(const QuadraticField& field, std::uint64_t r, std::uint64_t q, std::uint64_t G,
                       const BuildOptions& options) {
  if (r < 2) throw ArgumentError("precondition r >= 2 violated (r = " + std::to_string(r) + ")");
  if (r > q) throw ArgumentError("precondition r <= q violated (r = " + std::to_string(r) + ", q = " + std::to_string(q) + ")");
  if (q > kSieveCeiling) throw CapacityError("q exceeds the sieve ceiling 2^32");
  if (G < 1) throw ArgumentError("precondition G >= 1 violated");
  auto ideals = prime_ideals_in_norm_range(field, r, q);
  if (ideals.empty()) {
    throw ArgumentError("precondition n >= 1 violated: no prime ideal has norm in [" + std::to_string(r) + ", " +
                        std::to_string(q) + "]");
  }
  if (G > ideals.size()) {
    throw ArgumentError("precondition G <= n violated (G = " + std::to_string(G) + ", n = " +
                        std::to_string(ideals.size()) + ")");
  }
  require_box_parameters(r, G);
  if (pow_big(r, 2 * G) < abs(field.discriminant())) {
    throw ArgumentError("precondition r^G >= sqrt|disc| violated");
  }

  LenstraCode code{field, q, r, G, std::move(ideals), {}, {}, {}};
  const LatticeEmbedding E(field);
  code.box = find_tau(E, r, G, options.tau);
  code.omega_members = enumerate_omega(E, code.box);
  code.codewords = map_codewords(code.omega_members, code.ideals, q, options.threads);
  return code;
}

CodeVerification verify_code(const LenstraCode& code, unsigned threads) {
  const std::size_t m = code.codewords.size();
  if (m > kPairwiseCap) {
    throw CapacityError(std::to_string(m) + " codewords exceed the pairwise cap " + std::to_string(kPairwiseCap) +
                        "; use sampled verification");
  }
  threads = std::max(1u, threads);
  const std::size_t n = code.n();
  CodeVerification out;
  out.M_bound = lattice_target(code.field, code.r, code.G);
  out.d_bound = n + 1 - code.G;

  const LatticeEmbedding E(code.field);
  std::vector<AlgebraicInteger> omega;
  try {
    omega = enumerate_omega(E, code.box);
  } catch (const IndeterminateError&) {
    omega.clear();
  }
  const auto rederived = map_codewords(omega, code.ideals, code.q, threads);
  out.consistent = omega == code.omega_members && rederived == code.codewords;
  if (!out.consistent) {
    const std::size_t common = std::min(rederived.size(), code.codewords.size());
    std::size_t i = 0;
    while (i < common && rederived[i] == code.codewords[i]) ++i;
    out.first_inconsistent = i;
  }

  auto sorted = code.codewords;
  std::sort(sorted.begin(), sorted.end());
  out.M = static_cast<std::uint64_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  out.injective = out.M == code.omega_members.size() && m == code.omega_members.size();

  using Pair = std::pair<std::size_t, std::size_t>;
  std::vector<std::uint64_t> local(threads, n);
  std::vector<std::optional<Pair>> violation(threads);
  parallel_for_threads(threads, [&](unsigned t) {
    std::uint64_t best = n;
    for (std::size_t i = t; i < m; i += threads) {
      const auto& a = code.codewords[i];
      for (std::size_t j = i + 1; j < m && best > 0; ++j) {
        const auto& b = code.codewords[j];
        // Exact whenever below cap, so both the minimum and violations are exact.
        const std::uint64_t cap = std::max(best, out.d_bound);
        std::uint64_t dist = 0;
        const std::size_t len = std::min(a.size(), b.size());
        for (std::size_t k = 0; k < len && dist < cap; ++k) dist += a[k] != b[k];
        dist += std::max(a.size(), b.size()) - len;
        best = std::min(best, dist);
        if (dist < out.d_bound && !violation[t]) violation[t] = Pair{i, j};
      }
    }
    local[t] = best;
  });
  for (const auto& v : violation) {
    if (v && (!out.first_violation || *v < *out.first_violation)) out.first_violation = v;
  }
  out.d = *std::min_element(local.begin(), local.end());
  out.ok = out.consistent && out.injective && to_big(out.M) >= out.M_bound && out.d >= out.d_bound;
  return out;
}

NormGapReport norm_gap_check(const LenstraCode& code, unsigned threads) {
  const std::size_t m = code.omega_members.size();
  if (m > kPairwiseCap) {
    throw CapacityError(std::to_string(m) + " elements exceed the pairwise cap " + std::to_string(kPairwiseCap));
  }
  threads = std::max(1u, threads);
  const auto words = map_codewords(code.omega_members, code.ideals, code.q, threads);
  std::vector<u128> r_pow(code.n() + 1);
  for (std::size_t j = 0; j <= code.n(); ++j) r_pow[j] = saturating_pow(code.r, j);
  const u128 r_G = saturating_pow(code.r, code.G);

  std::vector<NormGapReport> local(threads);
  parallel_for_threads(threads, [&](unsigned t) {
    NormGapReport rep;
    for (std::size_t i = t; i < m; i += threads) {
      const auto& a = code.omega_members[i];
      for (std::size_t j = i + 1; j < m; ++j) {
        const auto& b = code.omega_members[j];
        const u128 norm = abs_norm(code.field, {a.first - b.first, a.second - b.second});
        std::size_t agree = 0;
        for (std::size_t k = 0; k < code.n(); ++k) agree += words[i][k] == words[j][k];
        rep.upper_ok &= norm < r_G;
        rep.lower_ok &= r_pow[agree] <= norm;
        ++rep.pairs;
      }
    }
    local[t] = rep;
  });
  NormGapReport out;
  for (const auto& rep : local) {
    out.pairs += rep.pairs;
    out.upper_ok &= rep.upper_ok;
    out.lower_ok &= rep.lower_ok;
  }
  return out;
}

void write_code(std::ostream& out, const LenstraCode& code) {
  char tau[96];
  std::snprintf(tau, sizeof tau, "%.17g,%.17g", code.box.tau[0], code.box.tau[1]);
  out << "# lenstra q=" << code.q << " r=" << code.r << " G=" << code.G << " disc=" << code.field.discriminant().get_str()
      << " n=" << code.n() << " tau=" << tau << '\n';
  std::string line;
  for (const auto& w : code.codewords) {
    line.clear();
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k) line += ' ';
      line += std::to_string(w[k]);
    }
    line += '\n';
    out << line;
  }
}

namespace {

std::uint64_t parse_u64(const std::string& text, std::size_t line, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, std::string("malformed ") + what + " '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ParseError(line, std::string(what) + " out of range");
  }
}

double parse_double(const std::string& text, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw ParseError(line, "malformed tau component '" + text + "'");
  }
  return v;
}

}  // namespace

LenstraCode read_code(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError(1, "empty input");
  std::istringstream hs(header);
  std::string hash, tag;
  hs >> hash >> tag;
  if (hash != "#" || tag != "lenstra") throw ParseError(1, "header must start with '# lenstra'");
  std::map<std::string, std::string> kv;
  std::string token;
  while (hs >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError(1, "header token '" + token + "' is not key=value");
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  for (const char* key : {"q", "r", "G", "disc", "n", "tau"}) {
    if (!kv.count(key)) throw ParseError(1, std::string("header is missing '") + key + "'");
  }
  const std::uint64_t q = parse_u64(kv["q"], 1, "q");
  const std::uint64_t r = parse_u64(kv["r"], 1, "r");
  const std::uint64_t G = parse_u64(kv["G"], 1, "G");
  const std::uint64_t n = parse_u64(kv["n"], 1, "n");
  BigInt disc;
  if (disc.set_str(kv["disc"], 10) != 0) throw ParseError(1, "malformed disc");
  const auto comma = kv["tau"].find(',');
  if (comma == std::string::npos) throw ParseError(1, "tau must be 't1,t2'");
  const std::array<double, 2> tau{parse_double(kv["tau"].substr(0, comma), 1),
                                  parse_double(kv["tau"].substr(comma + 1), 1)};

  auto derive = [&]() -> LenstraCode {
    try {
      auto field = make_field(disc);
      if (r < 2 || r > q) throw ArgumentError("header requires 2 <= r <= q");
      if (q > kSieveCeiling) throw CapacityError("q exceeds the sieve ceiling");
      auto ideals = prime_ideals_in_norm_range(field, r, q);
      return LenstraCode{std::move(field), q, r, G, std::move(ideals), {}, {}, {}};
    } catch (const std::exception& e) {
      throw ParseError(1, e.what());
    }
  };
  LenstraCode code = derive();
  if (code.ideals.size() != n) {
    throw ParseError(1, "n = " + std::to_string(n) + " but N_{r,q}(K) = " + std::to_string(code.ideals.size()));
  }
  const LatticeEmbedding E(code.field);
  code.box = make_box(E, r, G, tau);
  code.omega_members = enumerate_omega(E, code.box);

  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::uint32_t> word;
    word.reserve(n);
    while (ls >> token) {
      const std::uint64_t s = parse_u64(token, lineno, "symbol");
      if (s > 0xffffffffULL) throw ParseError(lineno, "symbol exceeds 32 bits");
      word.push_back(static_cast<std::uint32_t>(s));
    }
    if (word.size() != n) {
      throw ParseError(lineno, "expected " + std::to_string(n) + " symbols, found " + std::to_string(word.size()));
    }
    code.codewords.push_back(std::move(word));
  }
  return code;
}

}  // namespace gvforge
