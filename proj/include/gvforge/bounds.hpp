#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gvforge/highreal.hpp"
#include "gvforge/numtheory.hpp"
#include "gvforge/quadfield.hpp"

namespace gvforge {

// ---------------------------------------------------------------------------
// Rate-function bounds. delta is an exact rational so that the boundary
// delta = 1 - 1/q is hit exactly.

/// q-ary Gilbert-Varshamov bound, extended by 0 for delta >= 1 - 1/q.
/// Throws DomainError for q < 2 or delta outside (0, 1).
HighReal gv_bound(std::uint64_t q, const Rational& delta);

/// 1 - delta - h(delta) / log q with the natural-log entropy h.
HighReal gv_asymptotic(std::uint64_t q, const Rational& delta);

/// 1 - delta - delta / (q - 1), extended by 0 for delta >= 1 - 1/q.
HighReal plotkin_bound(std::uint64_t q, const Rational& delta);

/// Witness (r, ell, k) for the number-field code bound. Only check_conditions
/// produces witnesses with `certified` set.
struct ParamWitness {
  std::uint64_t q = 0;
  std::uint64_t r = 0;
  std::uint64_t ell = 0;
  std::uint64_t k = 0;
  std::uint64_t p_ell = 0;
  HighReal D_log;               // log(4 p_1 ... p_ell)
  std::uint64_t Nq_count = 0;   // #{p : r <= p^2 <= q, p > p_ell, p = 3 mod 4}
  bool certified = false;
};

struct ConditionReport {
  bool ok = false;
  int failed_condition = 0;  // 1, 2 or 3; 0 when all hold
  std::string detail;
  ParamWitness witness;      // filled as far as evaluated
};

/// Default sieve limit, overridable through GVFORGE_SIEVE_LIMIT.
std::uint64_t default_sieve_limit();

/// Prime table reaching floor(sqrt(q)) and p_ell. Throws CapacityError when
/// that exceeds `sieve_limit` ("uncertifiable at this q").
PrimeTable table_for(std::uint64_t q, std::uint64_t ell, std::uint64_t sieve_limit);

/// Conditions 1-3, condition 3 by exact count over `table`.
ConditionReport check_conditions(std::uint64_t q, std::uint64_t r, std::uint64_t ell, std::uint64_t k,
                                 const PrimeTable& table);
ConditionReport check_conditions(std::uint64_t q, std::uint64_t r, std::uint64_t ell, std::uint64_t k);

/// (1 - delta) log r / log q - log D / (2 k log q). Refuses uncertified witnesses.
HighReal nfc_bound(std::uint64_t q, const Rational& delta, const ParamWitness& w);

// ---------------------------------------------------------------------------
// Parameter schedules.

enum class ScheduleKind { theorem1, theorem2, custom };

const char* to_string(ScheduleKind kind) noexcept;

struct Schedule {
  ScheduleKind kind = ScheduleKind::theorem2;
  std::uint64_t q = 0;
  std::optional<HighReal> eps;  // absent for custom schedules
  std::uint64_t r = 0;
  std::uint64_t ell = 0;
  std::int64_t k = 0;           // may be <= 0 for small q
  bool eligible = false;        // q >= Q (theorem 2) / eps in (0, 1) (theorem 1)
  bool valid = false;           // r >= 2, ell >= 3, k >= 1 and eps in (0, 1)
  std::string note;
};

/// Q = ceil(exp(29)).
BigInt theorem2_threshold();

/// floor((ell - 2)^2 / 4 - (ell - 2)) - 2.
std::int64_t schedule_k(std::uint64_t ell);

/// eps = (log q)^(-1/3), r = ceil((1 - eps)^2 q), ell = floor(q^(1/6)), k = schedule_k(ell).
Schedule theorem2_schedule(std::uint64_t q);

/// eps = log q log log q / (C0 q^(1/6)) with the same r, ell, k. Requires q >= 27, C0 > 1.
Schedule theorem1_schedule(std::uint64_t q, const HighReal& C0);

Schedule custom_schedule(std::uint64_t q, std::uint64_t r, std::uint64_t ell, std::uint64_t k);

// ---------------------------------------------------------------------------
// Certificates.

struct Check {
  std::string name;
  std::string relation;  // "<" or "<="
  HighReal lhs;
  HighReal rhs;
  Verdict status = Verdict::fail;
  bool exact = false;    // both sides integers or rationals compared exactly

  HighReal margin() const { return rhs - lhs; }
};

struct Certificate {
  std::uint64_t q = 0;
  Schedule schedule;
  ParamWitness witness;
  std::optional<BigInt> discriminant;  // chosen field, +-D
  std::vector<Check> checks;
  Verdict overall = Verdict::fail;

  const Check* find(const std::string& name) const;
};

struct CertifyOptions {
  std::uint64_t sieve_limit = 0;  // 0: default_sieve_limit()
};

/// Full check list for a schedule: chain (a), condition 3 (b), log D / 2k (c),
/// theta and pi bounds (d, e), the final polynomial inequality (f), NFC > GV at
/// delta = 1/2 (g), and the Golod-Shafarevich check on the chosen field.
Certificate certify(const Schedule& schedule, const CertifyOptions& options = {});
Certificate certify_theorem2(std::uint64_t q, const CertifyOptions& options = {});

// ---------------------------------------------------------------------------
// Closing inequality 3.7l + l log l + l log log l <= -1.39 + 0.58[(l-2)^2/4 - (l-2) - 3].

/// rhs - lhs at ell (ell >= 3).
HighReal final_inequality_margin(std::uint64_t ell);

struct ScanResult {
  bool holds = true;
  std::optional<std::uint64_t> first_failure;
  std::uint64_t argmin = 0;
  HighReal min_margin;
};

ScanResult final_inequality_scan(std::uint64_t ell_min, std::uint64_t ell_max);

// ---------------------------------------------------------------------------
// Upper bounds on A(r, q).

/// 1 / (1 - log(2 / sqrt(pi))).
HighReal aqq_constant();

struct ArqBounds {
  HighReal minkowski;        // pi(q) / (1 - log(2 / sqrt(pi)))
  HighReal plotkin_derived;  // q / log r
  HighReal aqq;              // bound for r = q
};

ArqBounds a_rq_upper_bounds(std::uint64_t r, std::uint64_t q, const PrimeTable& table);

// ---------------------------------------------------------------------------
// Parameter search.

struct SearchResult {
  std::optional<ParamWitness> best;
  std::optional<HighReal> nfc;
  HighReal gv;
  bool beats_gv = false;
  std::uint64_t ell_explored = 0;
};

struct SearchOptions {
  std::uint64_t budget = 16;  // number of ell values, nearest floor(q^(1/6)) first
  std::uint64_t sieve_limit = 0;
};

/// Best certified witness for nfc_bound(q, delta): for each ell and each k
/// allowed by condition 2, r is the square of the 2k-th largest qualifying prime.
SearchResult search_params(std::uint64_t q, const Rational& delta, const SearchOptions& options = {});

/// log(1 / (1 - delta - rate_lower)) / log q. DomainError unless rate_lower < 1 - delta.
HighReal growth_proxy(std::uint64_t q, const Rational& delta, const HighReal& rate_lower);

// ---------------------------------------------------------------------------
// Sweeps.

struct BoundRow {
  std::uint64_t q = 0;
  Rational delta;
  HighReal gv;
  HighReal plotkin;
  std::optional<HighReal> nfc;
  std::optional<ParamWitness> witness;
};

std::vector<BoundRow> bound_table(std::uint64_t q, const std::vector<Rational>& deltas,
                                  const SearchOptions& options = {});

/// Grid start:stop:step (inclusive, exact rationals).
std::vector<Rational> parse_delta_grid(const std::string& spec);

}  // namespace gvforge
