#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gvforge/highreal.hpp"
#include "gvforge/numtheory.hpp"

namespace gvforge {

/// K = Q(sqrt(disc)) for a fundamental discriminant.
///
/// The ring of integers is Z[omega] with omega = sqrt(disc/4) when
/// disc = 0 (mod 4) and omega = (1 + sqrt(disc))/2 when disc = 1 (mod 4).
/// omega is a root of x^2 + trace_coeff * x + norm_coeff.
class QuadraticField {
 public:
  const BigInt& discriminant() const noexcept { return disc_; }
  bool imaginary() const noexcept { return disc_ < 0; }
  int real_places() const noexcept { return imaginary() ? 0 : 2; }     // s
  int complex_places() const noexcept { return imaginary() ? 1 : 0; }  // t
  int infinite_places() const noexcept { return real_places() + complex_places(); }
  bool half_integral_omega() const noexcept { return half_; }
  /// Squarefree d with K = Q(sqrt d).
  const BigInt& radicand() const noexcept { return radicand_; }
  /// omega^2 + trace_coeff * omega + norm_coeff = 0.
  long trace_coeff() const noexcept { return half_ ? -1 : 0; }
  const BigInt& norm_coeff() const noexcept { return norm_coeff_; }
  const std::vector<BigInt>& prime_divisors() const noexcept { return primes_; }
  std::string describe() const;

 private:
  friend QuadraticField make_field_factored(const BigInt& disc, std::vector<BigInt> primes);
  QuadraticField() = default;

  BigInt disc_;
  BigInt radicand_;
  BigInt norm_coeff_;
  bool half_ = false;
  std::vector<BigInt> primes_;
};

/// Validates `disc` as a fundamental discriminant, factoring by trial division.
/// Throws ArgumentError naming the violated condition, CapacityError when
/// squarefreeness cannot be certified without a supplied factorization.
QuadraticField make_field(const BigInt& disc);
QuadraticField make_field(std::int64_t disc);

/// As make_field, with the distinct prime divisors of |disc| supplied by the
/// caller; the factorization is verified, not trusted.
QuadraticField make_field_factored(const BigInt& disc, std::vector<BigInt> primes);

enum class SplitType { inert, split, ramified };

const char* to_string(SplitType t) noexcept;

/// A nonzero prime ideal of O_K above the rational prime p.
struct PrimeIdealRecord {
  std::uint64_t p = 0;
  SplitType split_type = SplitType::inert;
  BigInt norm;
  int conjugate_index = 0;
  /// Root c of the minimal polynomial of omega mod p; the ideal is (p, omega - c).
  std::optional<std::uint64_t> residue_root;

  friend bool operator==(const PrimeIdealRecord&, const PrimeIdealRecord&) = default;
};

/// The prime ideals above p: one record when inert or ramified, two when split
/// (ordered by smallest residue root).
std::vector<PrimeIdealRecord> splitting_type(const QuadraticField& field, std::uint64_t p);

/// All prime ideals with r <= N(P) <= q, sorted by (p, conjugate_index).
std::vector<PrimeIdealRecord> prime_ideals_in_norm_range(const QuadraticField& field, std::uint64_t r,
                                                         std::uint64_t q, const PrimeTable& table);
std::vector<PrimeIdealRecord> prime_ideals_in_norm_range(const QuadraticField& field, std::uint64_t r,
                                                         std::uint64_t q);

/// Positive definite binary quadratic form a x^2 + b xy + c y^2.
struct BinaryForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  bool is_ambiguous() const { return b == 0 || b == a || a == c; }
  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

BinaryForm reduce(BinaryForm f);
/// Gaussian composition followed by reduction.
BinaryForm compose(const BinaryForm& f, const BinaryForm& g);
BinaryForm principal_form(std::int64_t disc);
/// Reduced primitive forms of discriminant disc < 0, in (a, b) order.
std::vector<BinaryForm> reduced_forms(std::int64_t disc);

struct ClassGroupSummary {
  std::uint64_t h = 0;
  unsigned two_rank = 0;
  std::uint64_t form_count = 0;
  std::uint64_t ambiguous_count = 0;
};

inline constexpr std::int64_t kFormEnumerationBound = 100'000'000;

/// Class number and 2-rank of an imaginary quadratic field by form enumeration.
/// The 2-torsion is the set of ambiguous reduced forms; it is checked to be
/// closed under composition with every element squaring to the identity.
ClassGroupSummary class_group_imaginary(const QuadraticField& field);

/// (number of prime divisors of disc) - 2, clamped at 0.
unsigned genus_two_rank_lower(const QuadraticField& field);

/// Inert principal primes pO_K with r <= p^2 <= q, p > p_ell, p = 3 (mod 4),
/// (disc / p) = -1. `table` must reach both floor(sqrt(q)) and p_ell.
std::vector<PrimeIdealRecord> candidate_Sc(const QuadraticField& field, std::uint64_t r, std::uint64_t q,
                                           std::size_t ell, const PrimeTable& table);

struct TowerCertificate {
  QuadraticField field;
  std::uint64_t S_c_size = 0;
  std::uint64_t d2_lower = 0;
  HighReal threshold;  // 2 + 2 sqrt(|S_c| + |S_inf| + 1)
  Verdict status = Verdict::fail;
  bool passes() const noexcept { return status == Verdict::pass; }
};

/// Generalized Golod-Shafarevich criterion for p = 2.
TowerCertificate golod_shafarevich_check(const QuadraticField& field, std::uint64_t d2, std::uint64_t Sc_size);

struct TowerAnalysis {
  TowerCertificate certificate;
  bool d2_exact = false;                     // from the class group rather than genus theory
  std::optional<std::uint64_t> class_number; // imaginary fields within kFormEnumerationBound
};

/// Golod-Shafarevich check using the exact 2-rank for imaginary fields small
/// enough to enumerate, and the genus lower bound otherwise.
TowerAnalysis analyze_tower(const QuadraticField& field, std::uint64_t Sc_size);

}  // namespace gvforge
