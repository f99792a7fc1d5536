#include "gvforge/report.hpp"

#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace gvforge {

namespace {

using nlohmann::ordered_json;

constexpr int kDigits = 17;

std::string num(const HighReal& x) { return x.to_string(kDigits); }

ordered_json schedule_json(const Schedule& s) {
  ordered_json j;
  j["kind"] = to_string(s.kind);
  j["q"] = s.q;
  j["eps"] = s.eps ? ordered_json(s.eps->mid()) : ordered_json(nullptr);
  j["r"] = s.r;
  j["ell"] = s.ell;
  j["k"] = s.k;
  j["eligible"] = s.eligible;
  j["valid"] = s.valid;
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

ordered_json witness_json(const ParamWitness& w) {
  ordered_json j;
  j["r"] = w.r;
  j["ell"] = w.ell;
  j["k"] = w.k;
  j["Nq"] = w.Nq_count;
  j["p_ell"] = w.p_ell;
  j["log_D"] = w.D_log.mid();
  j["certified"] = w.certified;
  return j;
}

std::string discriminant_summary(const BigInt& d) {
  const std::string s = d.get_str();
  if (s.size() <= 40) return s;
  const std::size_t digits = s.size() - (d < 0 ? 1 : 0);
  return (d < 0 ? "-" : "") + std::string("D (") + std::to_string(digits) + " digits)";
}

}  // namespace

std::string format_rational(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return HighReal(x).to_string(kDigits);
}

// ---------------------------------------------------------------------------

std::string certificate_json(const Certificate& cert) {
  ordered_json j;
  j["q"] = cert.q;
  j["schedule"] = schedule_json(cert.schedule);
  j["witness"] = witness_json(cert.witness);
  j["discriminant"] = cert.discriminant ? ordered_json(cert.discriminant->get_str()) : ordered_json(nullptr);
  ordered_json checks = ordered_json::array();
  for (const Check& c : cert.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["relation"] = c.relation;
    e["lhs"] = c.lhs.mid();
    e["rhs"] = c.rhs.mid();
    e["margin"] = c.margin().mid();
    e["margin_lower"] = c.margin().lower();
    e["status"] = to_string(c.status);
    e["exact"] = c.exact;
    e["lhs_enclosure"] = c.lhs.bounds_string(kDigits);
    e["rhs_enclosure"] = c.rhs.bounds_string(kDigits);
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["overall"] = to_string(cert.overall);
  return j.dump(2) + "\n";
}

void write_certificate_text(std::ostream& out, const Certificate& cert) {
  const Schedule& s = cert.schedule;
  out << "certificate q=" << cert.q << " schedule=" << to_string(s.kind) << "\n";
  if (s.eps) out << "  eps=" << num(*s.eps) << "\n";
  out << "  r=" << s.r << " ell=" << s.ell << " k=" << s.k << " eligible=" << (s.eligible ? "yes" : "no")
      << " valid=" << (s.valid ? "yes" : "no") << "\n";
  if (!s.note.empty()) out << "  warning: " << s.note << "\n";
  const ParamWitness& w = cert.witness;
  if (w.p_ell != 0) {
    out << "witness p_ell=" << w.p_ell << " Nq=" << w.Nq_count << " log_D=" << num(w.D_log)
        << " certified=" << (w.certified ? "yes" : "no") << "\n";
  }
  if (cert.discriminant) out << "field disc=" << discriminant_summary(*cert.discriminant) << "\n";
  for (const Check& c : cert.checks) {
    out << "  [" << to_string(c.status) << "] " << c.name << ": " << num(c.lhs) << " " << c.relation << " "
        << num(c.rhs) << "  margin=" << c.margin().to_string(6) << "\n";
  }
  out << "overall: " << to_string(cert.overall) << "\n";
}

// ---------------------------------------------------------------------------

void write_bounds_csv(std::ostream& out, const std::vector<BoundRow>& rows) {
  out << "q,delta,gv,plotkin,nfc,r,ell,k\n";
  for (const BoundRow& row : rows) {
    out << row.q << ',' << format_rational(row.delta) << ',' << num(row.gv) << ',' << num(row.plotkin) << ',';
    if (row.nfc && row.witness) {
      out << num(*row.nfc) << ',' << row.witness->r << ',' << row.witness->ell << ',' << row.witness->k;
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

std::string bounds_json(const std::vector<BoundRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const BoundRow& row : rows) {
    ordered_json e;
    e["q"] = row.q;
    e["delta"] = row.delta.get_str();
    e["gv"] = row.gv.mid();
    e["plotkin"] = row.plotkin.mid();
    e["nfc"] = row.nfc ? ordered_json(row.nfc->mid()) : ordered_json(nullptr);
    e["witness"] = row.witness ? witness_json(*row.witness) : ordered_json(nullptr);
    arr.push_back(std::move(e));
  }
  return arr.dump(2) + "\n";
}

void write_bounds_text(std::ostream& out, const std::vector<BoundRow>& rows) {
  for (const BoundRow& row : rows) {
    out << "q=" << row.q << " delta=" << format_rational(row.delta) << "  gv=" << num(row.gv)
        << "  plotkin=" << num(row.plotkin);
    if (row.nfc && row.witness) {
      out << "  nfc=" << num(*row.nfc) << " (r=" << row.witness->r << " ell=" << row.witness->ell
          << " k=" << row.witness->k << ")";
    } else {
      out << "  nfc=none";
    }
    out << "\n";
  }
}

// ---------------------------------------------------------------------------

std::string search_json(std::uint64_t q, const Rational& delta, const SearchResult& result) {
  ordered_json j;
  j["q"] = q;
  j["delta"] = delta.get_str();
  j["gv"] = result.gv.mid();
  j["nfc"] = result.nfc ? ordered_json(result.nfc->mid()) : ordered_json(nullptr);
  j["beats_gv"] = result.beats_gv;
  j["ell_explored"] = result.ell_explored;
  j["witness"] = result.best ? witness_json(*result.best) : ordered_json(nullptr);
  return j.dump(2) + "\n";
}

void write_search_text(std::ostream& out, std::uint64_t q, const Rational& delta, const SearchResult& result) {
  out << "search q=" << q << " delta=" << format_rational(delta) << " ell_explored=" << result.ell_explored << "\n";
  out << "  gv=" << num(result.gv) << "\n";
  if (result.best && result.nfc) {
    const ParamWitness& w = *result.best;
    out << "  nfc=" << num(*result.nfc) << " r=" << w.r << " ell=" << w.ell << " k=" << w.k << " p_ell=" << w.p_ell
        << " Nq=" << w.Nq_count << "\n";
    out << "  beats_gv=" << (result.beats_gv ? "yes" : "no") << "\n";
  } else {
    out << "  no certified witness\n";
  }
}

// ---------------------------------------------------------------------------

std::string tower_json(const TowerAnalysis& tower) {
  const TowerCertificate& t = tower.certificate;
  ordered_json j;
  j["discriminant"] = t.field.discriminant().get_str();
  j["d2"] = t.d2_lower;
  j["d2_exact"] = tower.d2_exact;
  j["class_number"] = tower.class_number ? ordered_json(*tower.class_number) : ordered_json(nullptr);
  j["sc_size"] = t.S_c_size;
  j["infinite_places"] = t.field.infinite_places();
  j["threshold"] = t.threshold.mid();
  j["status"] = to_string(t.status);
  return j.dump(2) + "\n";
}

void write_tower_text(std::ostream& out, const TowerAnalysis& tower) {
  const TowerCertificate& t = tower.certificate;
  out << "field " << t.field.describe() << "\n";
  if (tower.class_number) out << "  h=" << *tower.class_number << "\n";
  out << "  d2=" << t.d2_lower << (tower.d2_exact ? " (exact)" : " (genus lower bound)") << "\n";
  out << "  threshold=2+2*sqrt(" << t.S_c_size << "+" << t.field.infinite_places() << "+1)=" << t.threshold.to_string(10)
      << "\n";
  out << "  " << (t.passes() ? "infinite 2-class field tower certified" : "criterion not met") << " ["
      << to_string(t.status) << "]\n";
}

// ---------------------------------------------------------------------------

std::string verification_json(const LenstraCode& code, const CodeVerification& v, const NormGapReport* gap) {
  ordered_json j;
  j["q"] = code.q;
  j["r"] = code.r;
  j["G"] = code.G;
  j["n"] = code.n();
  j["M"] = v.M;
  j["M_bound"] = v.M_bound.get_str();
  j["d"] = v.d;
  j["d_bound"] = v.d_bound;
  j["injective"] = v.injective;
  j["consistent"] = v.consistent;
  j["first_inconsistent"] = v.first_inconsistent ? ordered_json(*v.first_inconsistent) : ordered_json(nullptr);
  j["first_violation"] = v.first_violation
                             ? ordered_json::array({v.first_violation->first, v.first_violation->second})
                             : ordered_json(nullptr);
  if (gap) {
    j["norm_gap"] = {{"pairs", gap->pairs}, {"upper_ok", gap->upper_ok}, {"lower_ok", gap->lower_ok}};
  }
  j["status"] = v.ok && (!gap || gap->ok()) ? "pass" : "fail";
  return j.dump(2) + "\n";
}

void write_verification_text(std::ostream& out, const LenstraCode& code, const CodeVerification& v,
                             const NormGapReport* gap) {
  out << "code q=" << code.q << " r=" << code.r << " G=" << code.G << " n=" << code.n() << "\n";
  out << "  M=" << v.M << " (bound " << v.M_bound.get_str() << ")  d=" << v.d << " (bound " << v.d_bound << ")\n";
  out << "  injective=" << (v.injective ? "yes" : "no") << " consistent=" << (v.consistent ? "yes" : "no") << "\n";
  if (v.first_inconsistent) out << "  first codeword differing from re-derivation: " << *v.first_inconsistent << "\n";
  if (v.first_violation) {
    out << "  first pair below distance bound: (" << v.first_violation->first << ", " << v.first_violation->second
        << ")\n";
  }
  if (gap) {
    out << "  norm gap over " << gap->pairs << " pairs: upper " << (gap->upper_ok ? "ok" : "FAIL") << ", lower "
        << (gap->lower_ok ? "ok" : "FAIL") << "\n";
  }
  out << (v.ok && (!gap || gap->ok()) ? "pass" : "fail") << "\n";
}

}  // namespace gvforge
