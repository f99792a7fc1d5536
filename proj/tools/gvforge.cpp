#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "gvforge/bounds.hpp"
#include "gvforge/errors.hpp"
#include "gvforge/lenstra.hpp"
#include "gvforge/quadfield.hpp"
#include "gvforge/report.hpp"

using namespace gvforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitArgument = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitCapacity = 3;

struct Config {
  std::uint64_t q = 0;
  std::string delta;
  std::string delta_grid;
  std::string disc;
  std::optional<std::uint64_t> r, G, ell, k;
  std::uint64_t seed = 0;
  std::uint64_t sieve_limit = 0;
  std::string output;
  std::string format;
  unsigned threads = 0;
  std::string schedule = "theorem2";
  std::string c0 = "2";
  std::uint64_t sc_size = 0;
  std::uint64_t budget = 16;
  std::string path;
  bool skip_norm_gap = false;
};

unsigned thread_count(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t sieve_limit(const Config& c) { return c.sieve_limit ? c.sieve_limit : default_sieve_limit(); }

// Writes to -o when given, stdout otherwise.
void emit(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw ArgumentError("cannot open output file '" + c.output + "'");
  f << text;
}

Rational parse_delta(const std::string& text) {
  try {
    return parse_decimal(text);
  } catch (const ArgumentError&) {
    throw ArgumentError("delta: malformed value '" + text + "'");
  }
}

BigInt parse_disc(const std::string& text) {
  BigInt d;
  if (text.empty() || d.set_str(text, 10) != 0) throw ArgumentError("disc: malformed integer '" + text + "'");
  return d;
}

// ---------------------------------------------------------------------------

int cmd_bounds(const Config& c) {
  if (c.delta.empty() == c.delta_grid.empty()) throw ArgumentError("bounds needs exactly one of --delta, --delta-grid");
  const std::vector<Rational> deltas =
      c.delta.empty() ? parse_delta_grid(c.delta_grid) : std::vector<Rational>{parse_delta(c.delta)};
  SearchOptions opts;
  opts.budget = c.budget;
  opts.sieve_limit = sieve_limit(c);
  const auto rows = bound_table(c.q, deltas, opts);
  std::ostringstream out;
  if (c.format == "json") {
    out << bounds_json(rows);
  } else if (c.format == "text") {
    write_bounds_text(out, rows);
  } else {
    write_bounds_csv(out, rows);
  }
  emit(c, out.str());
  return kExitOk;
}

int cmd_construct(const Config& c) {
  if (!c.r || !c.G) throw ArgumentError("construct needs --r and --G");
  const QuadraticField field = make_field(parse_disc(c.disc));
  BuildOptions opts;
  opts.threads = thread_count(c.threads);
  opts.tau.seed = c.seed;
  const LenstraCode code = build_code(field, *c.r, c.q, *c.G, opts);
  std::ostringstream file;
  write_code(file, code);
  emit(c, file.str());
  std::ostream& summary = c.output.empty() ? std::cerr : std::cout;
  summary << "constructed n=" << code.n() << " M=" << code.omega_members.size()
          << " M_bound=" << code.box.target.get_str() << " d_bound=" << (code.n() + 1 - code.G) << "\n";
  return kExitOk;
}

int cmd_verify(const Config& c) {
  std::ifstream in(c.path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open code file '" + c.path + "'");
  const LenstraCode code = read_code(in);
  const unsigned threads = thread_count(c.threads);
  const CodeVerification v = verify_code(code, threads);
  std::optional<NormGapReport> gap;
  if (!c.skip_norm_gap) gap = norm_gap_check(code, threads);
  std::ostringstream out;
  if (c.format == "json") {
    out << verification_json(code, v, gap ? &*gap : nullptr);
  } else {
    write_verification_text(out, code, v, gap ? &*gap : nullptr);
  }
  emit(c, out.str());
  return v.ok && (!gap || gap->ok()) ? kExitOk : kExitCheckFailed;
}

int cmd_certify(const Config& c) {
  Schedule s;
  if (c.schedule == "theorem2") {
    s = theorem2_schedule(c.q);
  } else if (c.schedule == "theorem1") {
    s = theorem1_schedule(c.q, HighReal(parse_decimal(c.c0)));
  } else {
    if (!c.r || !c.ell || !c.k) throw ArgumentError("schedule custom needs --r, --ell and --k");
    s = custom_schedule(c.q, *c.r, *c.ell, *c.k);
  }
  if (s.kind != ScheduleKind::custom && (c.r || c.ell || c.k)) {
    s = custom_schedule(c.q, c.r.value_or(s.r), c.ell.value_or(s.ell),
                        c.k ? *c.k : static_cast<std::uint64_t>(std::max<std::int64_t>(s.k, 0)));
  }
  if (!s.note.empty()) std::cerr << "warning: " << s.note << "\n";
  if (!s.valid) std::cerr << "warning: schedule parameters are out of range (r, ell or k too small)\n";
  CertifyOptions opts;
  opts.sieve_limit = sieve_limit(c);
  const Certificate cert = certify(s, opts);
  std::ostringstream out;
  if (c.format == "text") {
    write_certificate_text(out, cert);
  } else {
    out << certificate_json(cert);
  }
  emit(c, out.str());
  return cert.overall == Verdict::pass ? kExitOk : kExitCheckFailed;
}

int cmd_tower(const Config& c) {
  const QuadraticField field = make_field(parse_disc(c.disc));
  const TowerAnalysis t = analyze_tower(field, c.sc_size);
  std::ostringstream out;
  if (c.format == "json") {
    out << tower_json(t);
  } else {
    write_tower_text(out, t);
  }
  emit(c, out.str());
  return t.certificate.passes() ? kExitOk : kExitCheckFailed;
}

int cmd_search(const Config& c) {
  const Rational delta = parse_delta(c.delta.empty() ? "0.5" : c.delta);
  SearchOptions opts;
  opts.budget = c.budget;
  opts.sieve_limit = sieve_limit(c);
  const SearchResult res = search_params(c.q, delta, opts);
  std::ostringstream out;
  if (c.format == "json") {
    out << search_json(c.q, delta, res);
  } else {
    write_search_text(out, c.q, delta, res);
  }
  emit(c, out.str());
  return res.best ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gvforge: Lenstra codes over quadratic fields and rate-bound certificates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gvforge 0.1.0");
  Config c;

  const auto add_sieve = [&c](CLI::App* sub) {
    sub->add_option("--sieve-limit", c.sieve_limit,
                    "Largest sieve bound (default: $GVFORGE_SIEVE_LIMIT, else 2^32)");
  };

  auto* bounds = app.add_subcommand("bounds", "GV, Plotkin and number-field-code bounds at (q, delta)");
  bounds->add_option("--q", c.q, "Alphabet size q >= 2")->required();
  bounds->add_option("--delta", c.delta, "Relative distance in (0, 1)");
  bounds->add_option("--delta-grid", c.delta_grid, "Inclusive grid start:stop:step");
  bounds->add_option("--budget", c.budget, "Number of ell values searched per row")->capture_default_str();
  add_sieve(bounds);

  auto* construct = app.add_subcommand("construct", "Build a punctured Lenstra code and write it out");
  construct->add_option("--disc", c.disc, "Fundamental discriminant")->required();
  construct->add_option("--r", c.r, "Smallest ideal norm r >= 2")->required();
  construct->add_option("--q", c.q, "Largest ideal norm q")->required();
  construct->add_option("--G", c.G, "Box exponent G in [1, n]")->required();
  construct->add_option("--seed", c.seed, "Seed for the random tau fallback")->capture_default_str();
  construct->add_option("--threads", c.threads, "Worker threads (default: all cores)");

  auto* verify = app.add_subcommand("verify", "Verify a code file: exact M, d and the norm chain");
  verify->add_option("path", c.path, "Code file")->required();
  verify->add_option("--threads", c.threads, "Worker threads (default: all cores)");
  verify->add_flag("--skip-norm-gap", c.skip_norm_gap, "Skip the pairwise norm chain check");

  auto* certify_cmd = app.add_subcommand("certify", "Certify the closing inequalities at q");
  certify_cmd->add_option("--q", c.q, "Alphabet size")->required();
  certify_cmd->add_option("--schedule", c.schedule, "Parameter schedule")
      ->check(CLI::IsMember({"theorem2", "theorem1", "custom"}))
      ->capture_default_str();
  certify_cmd->add_option("--c0", c.c0, "Constant C0 > 1 for the theorem1 schedule")->capture_default_str();
  certify_cmd->add_option("--r", c.r, "Override r");
  certify_cmd->add_option("--ell", c.ell, "Override ell");
  certify_cmd->add_option("--k", c.k, "Override k");
  add_sieve(certify_cmd);

  auto* tower = app.add_subcommand("tower", "Golod-Shafarevich check for an infinite 2-class field tower");
  tower->add_option("--disc", c.disc, "Fundamental discriminant")->required();
  tower->add_option("--sc-size", c.sc_size, "Number of inert primes |S_c|")->capture_default_str();

  auto* search = app.add_subcommand("search", "Best certified (r, ell, k) for the number-field-code bound");
  search->add_option("--q", c.q, "Alphabet size")->required();
  search->add_option("--delta", c.delta, "Relative distance (default 0.5)");
  search->add_option("--budget", c.budget, "Number of ell values searched")->capture_default_str();
  add_sieve(search);

  // Each subcommand has its own default format.
  std::string fmt_bounds = "csv", fmt_verify = "text", fmt_certify = "json", fmt_tower = "text", fmt_search = "text";
  bounds->add_option("--format", fmt_bounds, "csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->capture_default_str();
  verify->add_option("--format", fmt_verify, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  certify_cmd->add_option("--format", fmt_certify, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  tower->add_option("--format", fmt_tower, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  search->add_option("--format", fmt_search, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  for (auto* sub : {bounds, construct, verify, certify_cmd, tower, search}) {
    sub->add_option("-o,--output", c.output, "Output path (default: stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitArgument;
  }

  try {
    if (*bounds) {
      c.format = fmt_bounds;
      return cmd_bounds(c);
    }
    if (*construct) return cmd_construct(c);
    if (*verify) {
      c.format = fmt_verify;
      return cmd_verify(c);
    }
    if (*certify_cmd) {
      c.format = fmt_certify;
      return cmd_certify(c);
    }
    if (*tower) {
      c.format = fmt_tower;
      return cmd_tower(c);
    }
    if (*search) {
      c.format = fmt_search;
      return cmd_search(c);
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const IndeterminateError& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  }
  return kExitArgument;
}
