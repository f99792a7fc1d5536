#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gvforge/highreal.hpp"

namespace gvforge {

/// Largest sieve limit accepted (segmented internally).
inline constexpr std::uint64_t kSieveCeiling = std::uint64_t{1} << 32;

/// All primes up to `limit`, ascending, with a running count of primes = 3 (mod 4).
class PrimeTable {
 public:
  /// Segmented Eratosthenes. Throws CapacityError when limit is outside [2, 2^32].
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }

  /// p_i, 1-based. Throws CapacityError if i exceeds the table.
  std::uint64_t nth(std::size_t i) const;

  bool is_prime(std::uint64_t n) const;

  /// pi(x). Requires x <= limit().
  std::size_t count_upto(std::uint64_t x) const;
  /// Number of primes p <= x with p = 3 (mod 4). Requires x <= limit().
  std::size_t count_3mod4_upto(std::uint64_t x) const;
  /// Residue of the i-th (0-based) prime mod 4.
  unsigned residue_mod4(std::size_t index) const { return primes_[index] & 3u; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
  // three_mod4_prefix_[i] = #{j < i : primes_[j] = 3 (mod 4)}
  std::vector<std::uint32_t> three_mod4_prefix_;
};

PrimeTable sieve_primes(std::uint64_t limit);

/// The i-th prime (1-based) taken from `table`.
std::uint64_t nth_prime(const PrimeTable& table, std::size_t i);

/// Primes up to x in the class `residue` mod `modulus`; modulus 1 or 4 only.
std::uint64_t prime_count_ap(const PrimeTable& table, std::uint64_t x, unsigned modulus,
                             unsigned residue);

/// theta(x) = sum of log p over p <= x, as an enclosure.
HighReal chebyshev_theta(const PrimeTable& table, std::uint64_t x);

struct Primorial {
  BigInt value;    // D = 4 p_1 ... p_ell
  HighReal log_value;
};

/// D = 4 p_1 ... p_ell exactly, with log D enclosed.
Primorial primorial_D(const PrimeTable& table, std::size_t ell);

/// Li(x) = integral from 2 to x of dt / log t. Throws DomainError for x < 2.
HighReal log_integral(const HighReal& x);

/// Kronecker symbol (a / n) for arbitrary integers.
int kronecker_symbol(const BigInt& a, const BigInt& n);
int kronecker_symbol(std::int64_t a, std::int64_t n);

/// Integer square root floor(sqrt(n)) and its ceiling counterpart.
std::uint64_t isqrt(std::uint64_t n) noexcept;
std::uint64_t ceil_sqrt(std::uint64_t n) noexcept;

/// Distinct prime divisors of |n| by trial division. Throws CapacityError
/// when a cofactor above `trial_bound`^2 remains unfactored.
std::vector<BigInt> distinct_prime_divisors(const BigInt& n, std::uint64_t trial_bound = 10'000'000);

}  // namespace gvforge
