// Command-line front end: arl normalize|limit|upsilon|psi|verify.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arl/tower_file.hpp"
#include "arl/verify.hpp"

using namespace arl;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::Usage:
    case ErrorKind::InvalidHom:
    case ErrorKind::InvalidTower:
    case ErrorKind::PrimeMismatch:
    case ErrorKind::NotLPrimary:
    case ErrorKind::InfiniteGroup:
    case ErrorKind::TailUnderivable:
      return 2;
    case ErrorKind::NotARladic:
    case ErrorKind::NotLAdic:
    case ErrorKind::NonStabilizing:
      return 3;
    case ErrorKind::FiniteIndex:
    case ErrorKind::NegativeResult:
      return 4;
    default:
      return 1;
  }
}

std::size_t bound_for(const Tower& F) { return default_bound(F); }

void print_levels(std::ostream& os, const Tower& T, std::size_t levels) {
  const Tower E = T.extended(levels);
  for (std::size_t n = 0; n < std::min(levels, E.size()); ++n) os << "  " << n << ": " << E.level(n).to_string() << '\n';
}

void print_operators(std::ostream& os, const ZlModule& M) {
  for (const auto& [label, m] : M.operators()) {
    os << "operator " << label;
    if (M.precision()) os << " (mod l^" << *M.precision() << ")";
    os << ": " << m.to_string() << '\n';
  }
}

struct Common {
  std::string file, tower;
  std::size_t levels = 0;
};

Tower load(const Common& c) { return load_tower_file(c.file).tower(c.tower); }

std::size_t levels_or(const Common& c, const Tower& T) { return c.levels ? c.levels : T.size(); }

int cmd_normalize(const Common& c) {
  const Tower F = load(c);
  const std::size_t bound = bound_for(F);
  const ARCertificate cert = certify_ar_l_adic(F, bound);
  std::cout << "command: normalize --tower " << c.tower << '\n';
  std::cout << "bound: " << bound << '\n';
  if (cert.verdict != Verdict::Yes || !cert.witness) {
    std::cout << "verdict: " << to_string(cert.verdict) << '\n';
    if (cert.verdict == Verdict::No) std::cout << "witness level: " << cert.level << '\n';
    std::cout << "detail: " << cert.detail << '\n';
    return 3;
  }
  const CanonicalLAdic& w = *cert.witness;
  std::cout << "verdict: Yes\n";
  std::cout << "ml_bound: " << w.ml_bound << '\n';
  std::cout << "r: " << w.r << '\n';
  std::cout << "epimorphism: F[" << w.iso.shift << "] -> G, kernel zero system of radius " << w.kernel_radius
            << (w.kernel_tail_certified ? " (tail certified)" : " (observed)") << '\n';
  std::cout << "inverse: G[" << w.inverse.shift << "] -> F\n";
  std::cout << "G levels:\n";
  print_levels(std::cout, w.G, levels_or(c, F));
  std::cout << "certificates: l_adic=yes\n";
  return 0;
}

int cmd_limit(const Common& c) {
  const Tower F = load(c);
  const CanonicalLAdic w = canonical_l_adic(F, bound_for(F));
  const ZlModule M = limit(w.G);
  std::cout << "command: limit --tower " << c.tower << '\n';
  std::cout << "limit: " << M.to_string() << '\n';
  std::cout << "rank_ql: " << rank_ql(M) << '\n';
  print_operators(std::cout, M);
  return 0;
}

int cmd_upsilon(const Common& c, const std::string& hexpr, bool with_psi) {
  const HyperNat h = HyperNat::parse(hexpr);
  if (!h.is_infinite()) throw Error(ErrorKind::FiniteIndex, "index '" + hexpr + "' is finite");
  const Tower F = load(c);
  const UpsilonObj U = upsilon(F, h, bound_for(F));
  const std::size_t levels = levels_or(c, F);
  std::cout << "command: " << (with_psi ? "psi" : "upsilon") << " --tower " << c.tower << " --h " << h.to_string()
            << '\n';
  std::cout << "marker: " << U.marker.to_string() << '\n';
  std::cout << "index: " << U.index.to_string() << '\n';
  std::cout << "ml_bound: " << U.ml_bound << '\n';
  std::cout << "r: " << U.r << '\n';
  std::cout << "base levels:\n";
  print_levels(std::cout, U.base, levels);
  std::cout << "quotients:\n";
  for (std::size_t k = 1; k <= levels; ++k) std::cout << "  U/l^" << k << ": " << U.quotient(k).to_string() << '\n';
  if (with_psi) {
    const Tower P = psi(U);
    std::cout << "psi levels:\n";
    print_levels(std::cout, P, levels);
    std::cout << "psi l-adic: " << to_string(is_l_adic(P).verdict) << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t cases, unsigned threads,
               const std::string& replay) {
  if (!replay.empty()) {
    std::ifstream in(replay);
    if (!in) throw Error(ErrorKind::Usage, "cannot open '" + replay + "'");
    std::ostringstream os;
    os << in.rdbuf();
    const ReplayOutcome r = replay_report(os.str());
    for (const auto& m : r.messages) std::cout << m << '\n';
    std::cout << "replay: " << r.checked << " cases checked, " << r.mismatched << " not confirmed\n";
    return r.ok() ? 0 : 1;
  }
  if (suite.empty()) throw Error(ErrorKind::Usage, "--suite is required");
  const auto start = std::chrono::steady_clock::now();
  const SuiteReport rep = run_suite(suite, seed, cases, threads);
  std::cout << render_report(rep);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::cout << "# time_ms=" << ms << '\n';
  return rep.failed + rep.unknown == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Artin-Rees l-adic systems calculator"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Common common;
  std::string hexpr, suite, replay;
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  unsigned threads = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--file", common.file, "tower file (.arl.json)")->required();
    sub->add_option("--tower", common.tower, "tower name in the file")->required();
    sub->add_option("--levels", common.levels, "levels to print");
  };
  auto* normalize = app.add_subcommand("normalize", "canonical l-adic replacement");
  add_common(normalize);
  auto* lim = app.add_subcommand("limit", "Z_l-module of the inverse limit");
  add_common(lim);
  auto* ups = app.add_subcommand("upsilon", "normal form of Upsilon_h");
  add_common(ups);
  ups->add_option("--h", hexpr, "infinite index, e.g. h or h+d1")->required();
  auto* ps = app.add_subcommand("psi", "Psi_h of Upsilon_h");
  add_common(ps);
  ps->add_option("--h", hexpr, "infinite index")->required();
  auto* ver = app.add_subcommand("verify", "randomized property suites");
  ver->add_option("--suite", suite, "lemma-kernel, ml, upsilon, phi, faithful, comparison or torsionfree");
  ver->add_option("--seed", seed, "random seed");
  ver->add_option("--cases", cases, "number of cases");
  ver->add_option("--threads", threads, "worker threads");
  ver->add_option("--replay", replay, "re-check a saved report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*normalize) return cmd_normalize(common);
    if (*lim) return cmd_limit(common);
    if (*ups) return cmd_upsilon(common, hexpr, false);
    if (*ps) return cmd_upsilon(common, hexpr, true);
    if (*ver) return cmd_verify(suite, seed, cases, threads, replay);
  } catch (const Error& e) {
    std::cerr << "arl: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return 2;
}
