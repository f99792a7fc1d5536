#include "gvforge/highreal.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "gvforge/errors.hpp"

namespace gvforge {

namespace {

thread_local mpfr_prec_t working_precision = HighReal::kDefaultPrecision;

// Scratch value with RAII.
struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v, bits); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

std::string format_value(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  char* raw = nullptr;
  const char* fmt = rnd == MPFR_RNDD ? "%.*RDg" : rnd == MPFR_RNDU ? "%.*RUg" : "%.*RNg";
  mpfr_asprintf(&raw, fmt, digits, x);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "?";
}

Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  const auto bad = [&] { return ArgumentError("malformed decimal '" + std::string(text) + "'"); };
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits.push_back(text[i++]);
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits.push_back(text[i++]);
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw bad();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    long e = 0;
    bool seen_exp = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      e = e * 10 + (text[i++] - '0');
      seen_exp = true;
      if (e > 100000) throw bad();
    }
    if (!seen_exp) throw bad();
    scale += exp_negative ? -e : e;
  }
  if (i != text.size()) throw bad();

  BigInt mantissa(digits, 10);
  BigInt power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational value = scale < 0 ? Rational(mantissa, power) : Rational(mantissa * power);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

mpfr_prec_t HighReal::precision() noexcept { return working_precision; }

HighReal::PrecisionScope::PrecisionScope(mpfr_prec_t bits) noexcept : saved_(working_precision) {
  working_precision = bits;
}

HighReal::PrecisionScope::~PrecisionScope() { working_precision = saved_; }

HighReal::HighReal(Uninit, mpfr_prec_t bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
}

HighReal::HighReal() : HighReal(Uninit{}, working_precision) {
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

HighReal::HighReal(long value) : HighReal(Uninit{}, working_precision) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

HighReal::HighReal(const BigInt& value) : HighReal(Uninit{}, working_precision) {
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

HighReal::HighReal(const Rational& value) : HighReal(Uninit{}, working_precision) {
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

HighReal::HighReal(const HighReal& other) : HighReal(Uninit{}, mpfr_get_prec(other.lo_)) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

HighReal::HighReal(HighReal&& other) noexcept : HighReal(Uninit{}, mpfr_get_prec(other.lo_)) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

HighReal& HighReal::operator=(const HighReal& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
    mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

HighReal& HighReal::operator=(HighReal&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

HighReal::~HighReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

HighReal HighReal::from_double(double value) {
  HighReal out(Uninit{}, working_precision);
  mpfr_set_d(out.lo_, value, MPFR_RNDD);
  mpfr_set_d(out.hi_, value, MPFR_RNDU);
  return out;
}

HighReal HighReal::from_decimal(std::string_view text) { return HighReal(parse_decimal(text)); }

HighReal HighReal::hull(const HighReal& a, const HighReal& b) {
  HighReal out(Uninit{}, working_precision);
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

HighReal HighReal::pi() {
  HighReal out(Uninit{}, working_precision);
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

double HighReal::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double HighReal::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double HighReal::mid() const {
  Mpfr m(mpfr_get_prec(lo_) + 2);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

double HighReal::width() const {
  Mpfr w(64);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

bool HighReal::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool HighReal::contains(const HighReal& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_lessequal_p(other.hi_, hi_);
}

bool HighReal::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool HighReal::positive() const { return mpfr_sgn(lo_) > 0; }
bool HighReal::negative() const { return mpfr_sgn(hi_) < 0; }

std::string HighReal::to_string(int digits) const {
  Mpfr m(mpfr_get_prec(lo_) + 2);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return format_value(m.v, digits, MPFR_RNDN);
}

std::string HighReal::bounds_string(int digits) const {
  return "[" + format_value(lo_, digits, MPFR_RNDD) + ", " + format_value(hi_, digits, MPFR_RNDU) + "]";
}

std::optional<BigInt> HighReal::floor_exact() const {
  BigInt a, b;
  mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDD);
  mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
  if (a != b) return std::nullopt;
  return a;
}

std::optional<BigInt> HighReal::ceil_exact() const {
  BigInt a, b;
  mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDU);
  mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDU);
  if (a != b) return std::nullopt;
  return a;
}

HighReal& HighReal::operator+=(const HighReal& rhs) {
  if (this == &rhs) return *this += HighReal(rhs);
  mpfr_add(lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this;
}

HighReal& HighReal::operator-=(const HighReal& rhs) {
  if (this == &rhs) return *this -= HighReal(rhs);
  mpfr_sub(lo_, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, rhs.lo_, MPFR_RNDU);
  return *this;
}

HighReal& HighReal::operator*=(const HighReal& rhs) {
  const mpfr_prec_t bits = std::max(mpfr_get_prec(lo_), working_precision);
  Mpfr lo_best(bits), hi_best(bits), t(bits);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  mpfr_mul(lo_best.v, a[0], b[0], MPFR_RNDD);
  mpfr_mul(hi_best.v, a[0], b[0], MPFR_RNDU);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t.v, a[i], b[j], MPFR_RNDD);
      mpfr_min(lo_best.v, lo_best.v, t.v, MPFR_RNDD);
      mpfr_mul(t.v, a[i], b[j], MPFR_RNDU);
      mpfr_max(hi_best.v, hi_best.v, t.v, MPFR_RNDU);
    }
  }
  mpfr_set_prec(lo_, bits);
  mpfr_set_prec(hi_, bits);
  mpfr_set(lo_, lo_best.v, MPFR_RNDD);
  mpfr_set(hi_, hi_best.v, MPFR_RNDU);
  return *this;
}

HighReal& HighReal::operator/=(const HighReal& rhs) {
  if (rhs.contains_zero()) throw DomainError("division by an interval containing zero");
  const mpfr_prec_t bits = std::max(mpfr_get_prec(lo_), working_precision);
  Mpfr lo_best(bits), hi_best(bits), t(bits);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  mpfr_div(lo_best.v, a[0], b[0], MPFR_RNDD);
  mpfr_div(hi_best.v, a[0], b[0], MPFR_RNDU);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_div(t.v, a[i], b[j], MPFR_RNDD);
      mpfr_min(lo_best.v, lo_best.v, t.v, MPFR_RNDD);
      mpfr_div(t.v, a[i], b[j], MPFR_RNDU);
      mpfr_max(hi_best.v, hi_best.v, t.v, MPFR_RNDU);
    }
  }
  mpfr_set_prec(lo_, bits);
  mpfr_set_prec(hi_, bits);
  mpfr_set(lo_, lo_best.v, MPFR_RNDD);
  mpfr_set(hi_, hi_best.v, MPFR_RNDU);
  return *this;
}

HighReal HighReal::operator-() const {
  HighReal out(Uninit{}, mpfr_get_prec(lo_));
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

HighReal log(const HighReal& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw DomainError("log of an interval not bounded away from zero");
  HighReal out(HighReal::Uninit{}, working_precision);
  mpfr_log(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

HighReal log1p(const HighReal& x) {
  if (mpfr_cmp_si(x.lo_, -1) <= 0) throw DomainError("log1p of an interval reaching -1");
  HighReal out(HighReal::Uninit{}, working_precision);
  mpfr_log1p(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_log1p(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

HighReal exp(const HighReal& x) {
  HighReal out(HighReal::Uninit{}, working_precision);
  mpfr_exp(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

HighReal sqrt(const HighReal& x) {
  if (mpfr_sgn(x.hi_) < 0) throw DomainError("sqrt of a negative interval");
  HighReal out(HighReal::Uninit{}, working_precision);
  if (mpfr_sgn(x.lo_) < 0) {
    mpfr_set_zero(out.lo_, 1);
  } else {
    mpfr_sqrt(out.lo_, x.lo_, MPFR_RNDD);
  }
  mpfr_sqrt(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

HighReal cbrt(const HighReal& x) {
  HighReal out(HighReal::Uninit{}, working_precision);
  mpfr_cbrt(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_cbrt(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

HighReal square(const HighReal& x) {
  HighReal out(HighReal::Uninit{}, working_precision);
  if (x.contains_zero()) {
    Mpfr a(working_precision), b(working_precision);
    mpfr_sqr(a.v, x.lo_, MPFR_RNDU);
    mpfr_sqr(b.v, x.hi_, MPFR_RNDU);
    mpfr_set_zero(out.lo_, 1);
    mpfr_max(out.hi_, a.v, b.v, MPFR_RNDU);
  } else if (mpfr_sgn(x.lo_) > 0) {
    mpfr_sqr(out.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqr(out.hi_, x.hi_, MPFR_RNDU);
  } else {
    mpfr_sqr(out.lo_, x.hi_, MPFR_RNDD);
    mpfr_sqr(out.hi_, x.lo_, MPFR_RNDU);
  }
  return out;
}

HighReal pow(const HighReal& x, const HighReal& y) { return exp(y * log(x)); }

HighReal max(const HighReal& a, const HighReal& b) {
  HighReal out(HighReal::Uninit{}, working_precision);
  mpfr_max(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Verdict certify_less(const HighReal& a, const HighReal& b) {
  if (mpfr_less_p(a.hi(), b.lo())) return Verdict::pass;
  if (mpfr_greaterequal_p(a.lo(), b.hi())) return Verdict::fail;
  return Verdict::indeterminate;
}

Verdict certify_less_equal(const HighReal& a, const HighReal& b) {
  if (mpfr_lessequal_p(a.hi(), b.lo())) return Verdict::pass;
  if (mpfr_greater_p(a.lo(), b.hi())) return Verdict::fail;
  return Verdict::indeterminate;
}

}  // namespace gvforge
