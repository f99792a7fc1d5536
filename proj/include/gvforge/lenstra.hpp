#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "gvforge/highreal.hpp"
#include "gvforge/quadfield.hpp"

namespace gvforge {

/// Integer coordinates (u, v) of a = u + v * omega.
using AlgebraicInteger = std::pair<std::int64_t, std::int64_t>;

/// Minkowski-type embedding of O_K into R^2.
///
/// Imaginary K: a -> (Re sigma(a), Im sigma(a)); real K: a -> (sigma1(a), sigma2(a)).
/// Columns of the basis matrix are the images of 1 and omega.
class LatticeEmbedding {
 public:
  explicit LatticeEmbedding(QuadraticField field);

  const QuadraticField& field() const noexcept { return field_; }
  /// basis(row, col); col 0 is Lambda(1), col 1 is Lambda(omega).
  const HighReal& basis(int row, int col) const { return basis_[row][col]; }
  double basis_double(int row, int col) const { return basis_d_[row][col]; }
  /// 2^-t sqrt|disc|.
  const HighReal& covolume() const noexcept { return covolume_; }

  std::array<HighReal, 2> embed(const AlgebraicInteger& a) const;
  std::array<double, 2> embed_double(const AlgebraicInteger& a) const;

 private:
  QuadraticField field_;
  std::array<std::array<HighReal, 2>, 2> basis_;
  std::array<std::array<double, 2>, 2> basis_d_;
  HighReal covolume_;
};

LatticeEmbedding make_embedding(const QuadraticField& field);

/// The open box tau + (0, rho)^2 with rho^2 = r^G / 2^t.
struct BoxSpec {
  std::uint64_t r = 0;
  std::uint64_t G = 0;
  Rational rho_squared;
  HighReal rho;
  std::array<double, 2> tau{0.0, 0.0};
  /// ceil(vol(U_G) / vol(T)) = ceil(r^G / sqrt|disc|).
  BigInt target;
  /// Certified number of lattice points strictly inside the box.
  std::uint64_t count = 0;
  /// Grid resolution that produced tau (0 for the random fallback or an explicit tau).
  unsigned grid = 0;
};

struct TauSearchOptions {
  unsigned initial_grid = 64;
  unsigned max_grid = 1024;
  std::uint64_t seed = 0;
  std::uint64_t random_samples = 1u << 16;
};

inline constexpr std::uint64_t kMaxOmegaSize = 2'000'000;

/// ceil(r^G / sqrt|disc|), exactly.
BigInt lattice_target(const QuadraticField& field, std::uint64_t r, std::uint64_t G);

/// Shift search of Lemma 1: the lexicographically smallest grid maximizer whose
/// certified count reaches the target. Throws CapacityError when no certified
/// tau is found within the grid and sampling budget.
BoxSpec find_tau(const LatticeEmbedding& E, std::uint64_t r, std::uint64_t G, const TauSearchOptions& options = {});

/// Box at a given tau, with its certified lattice count. A tau whose box has a
/// lattice point within enclosure width of the boundary is nudged by 2^-40.
BoxSpec make_box(const LatticeEmbedding& E, std::uint64_t r, std::uint64_t G, std::array<double, 2> tau);

/// Lattice points strictly inside the box, ordered by (v, u).
std::vector<AlgebraicInteger> enumerate_omega(const LatticeEmbedding& E, const BoxSpec& box);

/// Injective map O_K/P -> Z_q: inert (u mod p) * p + (v mod p), otherwise
/// (u + v * residue_root) mod p.
std::uint64_t residue_symbol(const AlgebraicInteger& a, const PrimeIdealRecord& P, std::uint64_t q);

/// |N(u + v omega)| = |u^2 - trace * u v + norm_coeff * v^2|; CapacityError on overflow.
unsigned __int128 abs_norm(const QuadraticField& field, const AlgebraicInteger& a);

struct LenstraCode {
  QuadraticField field;
  std::uint64_t q = 0;
  std::uint64_t r = 0;
  std::uint64_t G = 0;
  std::vector<PrimeIdealRecord> ideals;
  BoxSpec box;
  std::vector<AlgebraicInteger> omega_members;
  std::vector<std::vector<std::uint32_t>> codewords;

  std::size_t n() const noexcept { return ideals.size(); }
};

struct BuildOptions {
  TauSearchOptions tau;
  unsigned threads = 1;
};

/// C(P_1, ..., P_n; G) on all prime ideals with r <= N(P) <= q.
LenstraCode build_code(const QuadraticField& field, std::uint64_t r, std::uint64_t q, std::uint64_t G,
                       const BuildOptions& options = {});

inline constexpr std::uint64_t kPairwiseCap = 100'000;

struct CodeVerification {
  std::uint64_t M = 0;          // distinct codewords
  std::uint64_t d = 0;          // minimum pairwise Hamming distance (n when M = 1)
  BigInt M_bound;               // ceil(r^G / sqrt|disc|)
  std::uint64_t d_bound = 0;    // n + 1 - G
  bool injective = false;       // M = |Omega_G|
  bool consistent = false;      // codewords and Omega_G re-derive from tau
  bool ok = false;
  std::optional<std::size_t> first_inconsistent;  // first codeword differing from the re-derivation
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;  // first pair with distance < d_bound
};

/// Exact (M, d) by pairwise scan. Throws CapacityError above kPairwiseCap codewords.
CodeVerification verify_code(const LenstraCode& code, unsigned threads = 1);

struct NormGapReport {
  std::uint64_t pairs = 0;
  bool upper_ok = true;   // |N(a - b)| < r^G
  bool lower_ok = true;   // r^(agreeing coordinates) <= |N(a - b)|
  bool ok() const noexcept { return upper_ok && lower_ok; }
};

/// The exact norm chain r^l(a,b) <= |N(a - b)| < r^G over all distinct pairs of Omega_G.
NormGapReport norm_gap_check(const LenstraCode& code, unsigned threads = 1);

/// Header line "# lenstra q=.. r=.. G=.. disc=.. n=.. tau=t1,t2", then one codeword per line.
void write_code(std::ostream& out, const LenstraCode& code);

/// Parses the export format and re-derives field, ideals, box and Omega_G from
/// the header; codewords are taken from the file as-is. Throws ParseError.
LenstraCode read_code(std::istream& in);

}  // namespace gvforge
