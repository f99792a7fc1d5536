#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gvforge/bounds.hpp"
#include "gvforge/lenstra.hpp"
#include "gvforge/quadfield.hpp"

namespace gvforge {

// Serializers are deterministic: identical inputs give byte-identical output.

/// {q, schedule, witness{r, ell, k, Nq, ...}, discriminant, checks[{name, relation,
/// lhs, rhs, margin, margin_lower, status, ...}], overall}, two-space indented.
std::string certificate_json(const Certificate& cert);
void write_certificate_text(std::ostream& out, const Certificate& cert);

/// Header q,delta,gv,plotkin,nfc,r,ell,k; nfc, r, ell, k are blank without a witness.
void write_bounds_csv(std::ostream& out, const std::vector<BoundRow>& rows);
std::string bounds_json(const std::vector<BoundRow>& rows);
void write_bounds_text(std::ostream& out, const std::vector<BoundRow>& rows);

std::string search_json(std::uint64_t q, const Rational& delta, const SearchResult& result);
void write_search_text(std::ostream& out, std::uint64_t q, const Rational& delta, const SearchResult& result);

std::string tower_json(const TowerAnalysis& tower);
void write_tower_text(std::ostream& out, const TowerAnalysis& tower);

std::string verification_json(const LenstraCode& code, const CodeVerification& v, const NormGapReport* gap);
void write_verification_text(std::ostream& out, const LenstraCode& code, const CodeVerification& v,
                             const NormGapReport* gap);

/// Decimal rendering of an exact rational (integers as integers, else 17 significant digits).
std::string format_rational(const Rational& x);

}  // namespace gvforge
