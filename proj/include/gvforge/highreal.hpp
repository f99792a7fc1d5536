#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <string_view>

namespace gvforge {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Outcome of a certified comparison.
enum class Verdict { pass, fail, indeterminate };

const char* to_string(Verdict v) noexcept;

/// Parses a decimal literal ("0.2901", "-3", "1.5e-3") into an exact rational.
/// Throws ArgumentError on malformed input.
Rational parse_decimal(std::string_view text);

/// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
///
/// Every operation returns an enclosure of the exact result of the same
/// operation applied to any points of the operands. Comparisons never
/// collapse an overlap into true/false: they report Verdict::indeterminate.
class HighReal {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 128;

  /// Working precision for newly created values on this thread.
  static mpfr_prec_t precision() noexcept;

  /// Temporarily raises (or lowers) the working precision.
  class PrecisionScope {
   public:
    explicit PrecisionScope(mpfr_prec_t bits) noexcept;
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

   private:
    mpfr_prec_t saved_;
  };

  HighReal();
  HighReal(long value);  // NOLINT(google-explicit-constructor): integer literals mix freely
  HighReal(double) = delete;  // use from_double; an implicit double->long would truncate
  explicit HighReal(const BigInt& value);
  explicit HighReal(const Rational& value);
  HighReal(const HighReal& other);
  HighReal(HighReal&& other) noexcept;
  HighReal& operator=(const HighReal& other);
  HighReal& operator=(HighReal&& other) noexcept;
  ~HighReal();

  static HighReal from_double(double value);
  static HighReal from_decimal(std::string_view text);
  /// Smallest interval containing both operands.
  static HighReal hull(const HighReal& a, const HighReal& b);
  static HighReal pi();

  double lower() const;
  double upper() const;
  double mid() const;
  /// Upper bound on hi - lo.
  double width() const;
  bool is_point() const;
  bool contains(const HighReal& other) const;
  bool contains_zero() const;
  bool positive() const;  // certified > 0
  bool negative() const;  // certified < 0

  /// Midpoint in scientific/general notation with `digits` significant digits.
  std::string to_string(int digits = 20) const;
  /// "[lo, hi]" with `digits` significant digits, outward rounded.
  std::string bounds_string(int digits = 25) const;

  /// Exact floor/ceil when the whole enclosure agrees, otherwise nullopt.
  std::optional<BigInt> floor_exact() const;
  std::optional<BigInt> ceil_exact() const;

  HighReal& operator+=(const HighReal& rhs);
  HighReal& operator-=(const HighReal& rhs);
  HighReal& operator*=(const HighReal& rhs);
  HighReal& operator/=(const HighReal& rhs);
  HighReal operator-() const;

  friend HighReal operator+(HighReal a, const HighReal& b) { return a += b; }
  friend HighReal operator-(HighReal a, const HighReal& b) { return a -= b; }
  friend HighReal operator*(HighReal a, const HighReal& b) { return a *= b; }
  friend HighReal operator/(HighReal a, const HighReal& b) { return a /= b; }

  friend HighReal log(const HighReal& x);
  friend HighReal log1p(const HighReal& x);
  friend HighReal exp(const HighReal& x);
  friend HighReal sqrt(const HighReal& x);
  friend HighReal cbrt(const HighReal& x);
  friend HighReal square(const HighReal& x);
  /// x^y for x > 0.
  friend HighReal pow(const HighReal& x, const HighReal& y);
  friend HighReal max(const HighReal& a, const HighReal& b);

  mpfr_srcptr lo() const noexcept { return lo_; }
  mpfr_srcptr hi() const noexcept { return hi_; }

 private:
  struct Uninit {};
  explicit HighReal(Uninit, mpfr_prec_t bits);

  mpfr_t lo_;
  mpfr_t hi_;
};

/// a < b.
Verdict certify_less(const HighReal& a, const HighReal& b);
/// a <= b.
Verdict certify_less_equal(const HighReal& a, const HighReal& b);

}  // namespace gvforge
