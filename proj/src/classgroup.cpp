// Binary quadratic forms of negative discriminant: reduction, composition and
// enumeration of reduced forms (Cohen, "A Course in Computational Algebraic
// Number Theory", 5.3-5.4).

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gvforge/errors.hpp"
#include "gvforge/quadfield.hpp"

namespace gvforge {

namespace {

using i128 = __int128;

struct Egcd {
  i128 g, x, y;  // x a + y b = g
};

Egcd extended_gcd(i128 a, i128 b) {
  i128 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

i128 floor_mod(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw CapacityError("binary form coefficient overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace

bool BinaryForm::is_reduced() const {
  if (a <= 0 || std::llabs(b) > a || a > c) return false;
  if ((std::llabs(b) == a || a == c) && b < 0) return false;
  return true;
}

BinaryForm reduce(BinaryForm f) {
  i128 a = f.a, b = f.b, c = f.c;
  if (a <= 0) throw ArgumentError("reduce expects a positive definite form");
  auto normalize = [&] {
    if (-a < b && b <= a) return;
    const i128 two_a = 2 * a;
    i128 q = b / two_a;
    i128 r = b - q * two_a;
    if (r < 0) {
      r += two_a;
      --q;
    }
    if (r > a) {
      r -= two_a;
      ++q;
    }
    c -= (b + r) / 2 * q;
    b = r;
  };
  normalize();
  while (a > c) {
    std::swap(a, c);
    b = -b;
    normalize();
  }
  if (a == c && b < 0) b = -b;
  return {narrow(a), narrow(b), narrow(c)};
}

BinaryForm compose(const BinaryForm& f, const BinaryForm& g) {
  if (f.discriminant() != g.discriminant()) throw ArgumentError("composing forms of different discriminant");
  const std::int64_t disc = f.discriminant();
  BinaryForm f1 = f, f2 = g;
  if (f1.a > f2.a) std::swap(f1, f2);
  const i128 a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b, c2 = f2.c;
  const i128 s = (b1 + b2) / 2;
  const i128 n = b2 - s;

  i128 y1, d;
  if (a2 % a1 == 0) {
    y1 = 0;
    d = a1;
  } else {
    const Egcd e = extended_gcd(a2, a1);
    d = e.g;
    y1 = e.x;
  }
  i128 x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    const Egcd e = extended_gcd(s, d);
    d1 = e.g;
    x2 = e.x;
    y2 = -e.y;
  }
  const i128 v1 = a1 / d1;
  const i128 v2 = a2 / d1;
  const i128 r = floor_mod(floor_mod(y1 * y2, v1) * floor_mod(n, v1) - floor_mod(x2 * floor_mod(c2, v1), v1), v1);
  const i128 b3 = b2 + 2 * v2 * r;
  const i128 a3 = v1 * v2;
  const i128 c3 = (b3 * b3 - disc) / (4 * a3);
  return reduce({narrow(a3), narrow(b3), narrow(c3)});
}

BinaryForm principal_form(std::int64_t disc) {
  const std::int64_t b = disc & 1;
  return {1, b, (b - disc) / 4};
}

std::vector<BinaryForm> reduced_forms(std::int64_t disc) {
  if (disc >= 0) throw ArgumentError("reduced form enumeration needs a negative discriminant");
  if (-disc > kFormEnumerationBound) {
    throw CapacityError("|disc| = " + std::to_string(-disc) + " exceeds the form enumeration bound " +
                        std::to_string(kFormEnumerationBound));
  }
  const std::int64_t r4 = ((disc % 4) + 4) % 4;
  if (r4 != 0 && r4 != 1) throw ArgumentError("discriminant must be 0 or 1 mod 4");
  std::vector<BinaryForm> forms;
  // Reduced forms satisfy 3a^2 <= |disc|.
  for (std::int64_t a = 1; 3 * a * a <= -disc; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (((b - disc) & 1) != 0) continue;
      const std::int64_t num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a || (b < 0 && c == a)) continue;
      if (std::gcd(std::gcd(a, std::llabs(b)), c) != 1) continue;
      forms.push_back({a, b, c});
    }
  }
  return forms;
}

ClassGroupSummary class_group_imaginary(const QuadraticField& field) {
  if (!field.imaginary()) {
    throw ArgumentError("class group computation is only supported for imaginary fields");
  }
  if (field.discriminant() < -kFormEnumerationBound) {
    throw CapacityError("|disc| exceeds the form enumeration bound " + std::to_string(kFormEnumerationBound));
  }
  const std::int64_t disc = field.discriminant().get_si();
  const auto forms = reduced_forms(disc);

  std::vector<BinaryForm> ambiguous;
  for (const auto& f : forms) {
    if (f.is_ambiguous()) ambiguous.push_back(f);
  }
  const std::uint64_t count = ambiguous.size();
  if (count == 0 || (count & (count - 1)) != 0) {
    throw std::logic_error("ambiguous form count " + std::to_string(count) + " is not a power of two");
  }
  const BinaryForm identity = principal_form(disc);
  for (const auto& f : ambiguous) {
    if (compose(f, f) != identity) throw std::logic_error("ambiguous form does not square to the identity");
    for (const auto& g : ambiguous) {
      if (!compose(f, g).is_ambiguous()) throw std::logic_error("2-torsion is not closed under composition");
    }
  }

  ClassGroupSummary out;
  out.h = forms.size();
  out.form_count = forms.size();
  out.ambiguous_count = count;
  while ((std::uint64_t{1} << out.two_rank) < count) ++out.two_rank;
  return out;
}

TowerAnalysis analyze_tower(const QuadraticField& field, std::uint64_t Sc_size) {
  std::uint64_t d2 = genus_two_rank_lower(field);
  bool exact = false;
  std::optional<std::uint64_t> h;
  if (field.imaginary() && abs(field.discriminant()) <= kFormEnumerationBound) {
    const ClassGroupSummary cg = class_group_imaginary(field);
    d2 = cg.two_rank;
    exact = true;
    h = cg.h;
  }
  return {golod_shafarevich_check(field, d2, Sc_size), exact, h};
}

}  // namespace gvforge
