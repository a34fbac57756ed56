#include "arl/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

namespace arl {

using json = nlohmann::ordered_json;

const char* to_string(Property p) {
  switch (p) {
    case Property::KernelBound: return "kernel-bound";
    case Property::MittagLeffler: return "mittag-leffler";
    case Property::NormalForm: return "normal-form";
    case Property::Phi: return "phi-iso";
    case Property::ChoiceIndependence: return "choice-independence";
    case Property::RightExact: return "right-exact";
    case Property::Faithful: return "faithful";
    case Property::ZlRoundTrip: return "zl-round-trip";
    case Property::TensorLimit: return "tensor-limit";
    case Property::Comparison: return "comparison";
    case Property::TorsionFree: return "torsion-free";
  }
  return "?";
}

GenParams default_params(Property p) {
  GenParams g;
  switch (p) {
    case Property::KernelBound:
      g.primes = {2, 3, 5};
      break;
    case Property::ZlRoundTrip:
      g.max_exp = 5;
      g.max_torsion = 3;
      g.max_rank = 3;
      break;
    default:
      break;
  }
  return g;
}

namespace {

const HyperNat kH = HyperNat::symbol("h");

std::size_t bound_for(const GenParams& p) { return p.levels; }

struct Outcome {
  bool pass = false;
  std::string recipe;
  json cert = json::object();
  std::string detail;
};

Outcome kernel_bound(Rng& rng, const GenParams& p) {
  Outcome o;
  const Prime l = random_prime(rng, p);
  const Extension E = random_extension(rng, l, p);
  const auto z = is_zero_system(E.N, bound_for(p));
  o.recipe = "extension of " + limit(E.G).to_string() + " by a zero system, l=" + std::to_string(l);
  if (z.verdict != Verdict::Yes) {
    o.detail = "kernel is not a certified zero system: " + z.detail;
    return o;
  }
  std::size_t checks = 0;
  for (std::size_t m = 0; z.radius + m <= 6; ++m)
    for (std::size_t n = 0; z.radius + m + n <= 6; ++n) {
      ++checks;
      if (!kernel_bound_check(E.N, E.F, E.G, E.incl, E.proj, z.radius, m, n)) {
        o.detail = "inclusion fails at m=" + std::to_string(m) + " n=" + std::to_string(n);
        return o;
      }
    }
  o.cert = {{"radius", z.radius}, {"checks", checks}};
  o.pass = true;
  return o;
}

Outcome mittag_leffler(Rng& rng, const GenParams& p) {
  Outcome o;
  const ARInstance I = random_ar_l_adic(rng, p);
  o.recipe = I.recipe;
  const auto s = stable_image_bound(I.F, bound_for(p));
  if (!s) {
    o.detail = "no stable-image bound within " + std::to_string(bound_for(p));
    return o;
  }
  const Tower a = stable_image_tower(I.F, *s).tower;
  const Tower b = stable_image_tower(I.F, *s + 1).tower;
  const std::size_t k = std::min(a.size(), b.size());
  o.pass = a.prefix(k).levelwise_equal(b.prefix(k));
  o.cert = {{"s", *s}, {"levels", k}};
  if (!o.pass) o.detail = "stable images at s and s+1 differ";
  return o;
}

Outcome normal_form(Rng& rng, const GenParams& p) {
  Outcome o;
  const Prime l = random_prime(rng, p);
  const ZlModule M = random_zl_module(rng, l, p);
  const Tower L = to_tower(M, p.levels);
  o.recipe = "l-adic " + M.to_string() + ", l=" + std::to_string(l);
  const Tower P = psi(upsilon(L, kH, bound_for(p))).require(p.levels).prefix(p.levels);
  o.pass = P.levelwise_equal(L);
  o.cert = {{"levels", p.levels}};
  if (!o.pass) o.detail = "psi(upsilon(L)) differs from L";
  return o;
}

Outcome phi(Rng& rng, const GenParams& p) {
  Outcome o;
  const ARInstance I = random_ar_l_adic(rng, p);
  o.recipe = I.recipe;
  const PhiIso q = phi_iso(I.F, kH, bound_for(p));
  const IsoResult r = ar_is_isomorphism(q.iso, bound_for(p));
  o.pass = r.verdict == Verdict::Yes;
  o.cert = {{"shift", q.iso.shift}, {"kernel_radius", r.kernel.radius}, {"cokernel_radius", r.cokernel.radius}};
  if (!o.pass) o.detail = std::string("phi is ") + to_string(r.verdict) + ": " + r.kernel.detail + r.cokernel.detail;
  return o;
}

Outcome choice_independence(Rng& rng, const GenParams& p) {
  Outcome o;
  const ARInstance I = random_ar_l_adic(rng, p);
  o.recipe = I.recipe;
  const auto s = stable_image_bound(I.F, bound_for(p));
  if (!s) {
    o.detail = "no stable-image bound";
    return o;
  }
  const UpsilonObj a = upsilon(I.F, kH, bound_for(p), *s);
  const UpsilonObj b = upsilon(I.F, kH, bound_for(p), *s + 2);
  const std::size_t k = std::min({a.base.size(), b.base.size(), p.levels});
  o.pass = a.base.prefix(k).levelwise_equal(b.base.prefix(k));
  o.cert = {{"s", *s}, {"r", a.r}, {"r_at_s_plus_2", b.r}, {"levels", k}};
  if (!o.pass) o.detail = "normal forms through s and s+2 differ";
  return o;
}

Outcome right_exact(Rng& rng, const GenParams& p) {
  Outcome o;
  const ExactInstance I = random_right_exact(rng, p);
  o.recipe = I.recipe;
  o.pass = check_right_exact(I.f, I.g, kH, bound_for(p), 7);
  o.cert = {{"levels", 7}};
  if (!o.pass) o.detail = "finite quotients are not exact";
  return o;
}

Outcome faithful(Rng& rng, const GenParams& p) {
  Outcome o;
  const MorInstance I = random_ar_morphism(rng, p);
  o.recipe = I.recipe;
  const FaithfulnessReport r = faithfulness_check(I.f, kH, bound_for(p));
  o.pass = r.holds;
  o.cert = {{"upsilon_zero", r.upsilon_zero},
            {"upsilon_iso", r.upsilon_iso},
            {"ar_zero", to_string(r.ar_zero)},
            {"ar_iso", to_string(r.ar_iso)}};
  if (!o.pass) o.detail = "zero or isomorphism not reflected";
  return o;
}

Outcome zl_round_trip(Rng& rng, const GenParams& p) {
  Outcome o;
  const Prime l = random_prime(rng, p);
  ZlModule M = random_zl_module(rng, l, p);
  if (!M.is_zero() && rng.chance(1, 2)) M = ZlModule(l, M.torsion(), M.free_rank(), {{"Frob", random_zl_map(rng, M, M)}});
  o.recipe = M.to_string() + ", l=" + std::to_string(l);
  const ZlModule back = limit(to_tower(M, p.levels));
  o.pass = back == M;
  o.cert = {{"module", back.to_string()}};
  if (!o.pass) o.detail = "limit gave " + back.to_string();
  return o;
}

Outcome tensor_limit(Rng& rng, const GenParams& p) {
  Outcome o;
  const ARInstance I = random_ar_l_adic(rng, p);
  o.recipe = I.recipe;
  const ZlModule left = tensor_zl(upsilon(I.F, kH, bound_for(p)));
  const ZlModule right = limit(canonical_l_adic(I.F, bound_for(p)).G);
  o.pass = left == right && left.same_shape(I.lambda);
  o.cert = {{"module", left.to_string()}};
  if (!o.pass) o.detail = "left " + left.to_string() + ", right " + right.to_string() + ", generated " + I.lambda.to_string();
  return o;
}

Outcome comparison(Rng& rng, const GenParams& p) {
  Outcome o;
  const ARInstance I = random_ar_l_adic(rng, p, true);
  o.recipe = I.recipe;
  const ComparisonReport r = comparison_check(I.F, kH, bound_for(p));
  o.pass = r.isomorphic && r.left.same_shape(I.lambda);
  o.cert = {{"left", r.left.to_string()}, {"right", r.right.to_string()}, {"r", r.r}, {"ml_bound", r.ml_bound}};
  if (!o.pass) o.detail = r.detail;
  return o;
}

Outcome torsion_free(Rng& rng, const GenParams& p) {
  Outcome o;
  const Prime l = random_prime(rng, p);
  const ZlModule a = random_zl_module(rng, l, p);
  const ZlModule b = random_zl_module(rng, l, p);
  o.recipe = a.to_string() + " / " + b.to_string() + ", l=" + std::to_string(l);
  const TorsionCriterion c = ladic_iff_torsionfree(a, b, p.levels);
  o.pass = c.verdict;
  o.cert = {{"l_adic", c.l_adic}, {"torsion_free", c.torsion_free}};
  if (c.witness_level) o.cert["witness_level"] = *c.witness_level;
  if (!o.pass) o.detail = c.detail;
  return o;
}

Outcome dispatch(Property p, Rng& rng, const GenParams& params) {
  switch (p) {
    case Property::KernelBound: return kernel_bound(rng, params);
    case Property::MittagLeffler: return mittag_leffler(rng, params);
    case Property::NormalForm: return normal_form(rng, params);
    case Property::Phi: return phi(rng, params);
    case Property::ChoiceIndependence: return choice_independence(rng, params);
    case Property::RightExact: return right_exact(rng, params);
    case Property::Faithful: return faithful(rng, params);
    case Property::ZlRoundTrip: return zl_round_trip(rng, params);
    case Property::TensorLimit: return tensor_limit(rng, params);
    case Property::Comparison: return comparison(rng, params);
    case Property::TorsionFree: return torsion_free(rng, params);
  }
  return {};
}

}  // namespace

PropertyResult check_property(Property p, std::uint64_t seed, std::uint64_t index, const GenParams& params) {
  Rng rng(seed, static_cast<std::uint64_t>(p), index);
  PropertyResult res{p, "Fail", "", json::object(), ""};
  try {
    Outcome o = dispatch(p, rng, params);
    res.status = o.pass ? "Pass" : "Fail";
    res.recipe = o.recipe;
    res.certificate = o.cert;
    res.detail = o.detail;
  } catch (const Error& e) {
    res.status = "Fail";
    res.detail = e.what();
  }
  return res;
}

GenParams shrink_failure(Property p, std::uint64_t seed, std::uint64_t index, GenParams params) {
  auto fails = [&](const GenParams& q) { return check_property(p, seed, index, q).status != "Pass"; };
  while (params.levels > 2) {
    GenParams q = params;
    --q.levels;
    if (!fails(q)) break;
    params = q;
  }
  while (params.max_exp > 1) {
    GenParams q = params;
    --q.max_exp;
    if (!fails(q)) break;
    params = q;
  }
  return params;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma-kernel", "ml", "upsilon", "phi", "faithful", "comparison",
                                              "torsionfree"};
  return names;
}

const std::vector<Property>& suite_properties(const std::string& suite) {
  static const std::map<std::string, std::vector<Property>> table{
      {"lemma-kernel", {Property::KernelBound}},
      {"ml", {Property::MittagLeffler}},
      {"upsilon", {Property::ChoiceIndependence, Property::RightExact}},
      {"phi", {Property::NormalForm, Property::Phi}},
      {"faithful", {Property::Faithful}},
      {"comparison", {Property::ZlRoundTrip, Property::TensorLimit, Property::Comparison}},
      {"torsionfree", {Property::TorsionFree}},
  };
  auto it = table.find(suite);
  if (it == table.end()) throw Error(ErrorKind::Usage, "unknown suite '" + suite + "'");
  return it->second;
}

CaseReport run_case(const std::string& suite, std::uint64_t seed, std::uint64_t index) {
  CaseReport c;
  c.index = index;
  c.status = "Pass";
  for (Property p : suite_properties(suite)) {
    PropertyResult r = check_property(p, seed, index);
    if (r.status != "Pass") {
      c.status = r.status;
      const GenParams small = shrink_failure(p, seed, index, default_params(p));
      const PropertyResult again = check_property(p, seed, index, small);
      c.witness = {{"property", to_string(p)},
                   {"levels", small.levels},
                   {"max_exp", small.max_exp},
                   {"recipe", again.recipe},
                   {"detail", again.detail}};
    }
    c.results.push_back(std::move(r));
  }
  return c;
}

SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::size_t cases, unsigned threads) {
  suite_properties(suite);
  if (cases == 0) throw Error(ErrorKind::Usage, "--cases must be at least 1");
  SuiteReport rep;
  rep.suite = suite;
  rep.seed = seed;
  rep.cases.resize(cases);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cases)));
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < cases; i += threads) rep.cases[i] = run_case(suite, seed, i);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& c : rep.cases) {
    if (c.status == "Pass")
      ++rep.passed;
    else if (c.status == "Unknown")
      ++rep.unknown;
    else
      ++rep.failed;
  }
  return rep;
}

namespace {

json case_json(const CaseReport& c) {
  json j{{"type", "case"}, {"index", c.index}, {"status", c.status}};
  json props = json::object();
  for (const auto& r : c.results) {
    json e{{"status", r.status}, {"recipe", r.recipe}, {"certificate", r.certificate}};
    if (!r.detail.empty()) e["detail"] = r.detail;
    props[to_string(r.property)] = e;
  }
  j["properties"] = props;
  if (!c.witness.is_null()) j["witness"] = c.witness;
  return j;
}

}  // namespace

std::string render_report(const SuiteReport& report) {
  std::ostringstream os;
  json props = json::array();
  for (Property p : suite_properties(report.suite)) props.push_back(to_string(p));
  os << json{{"type", "header"},
             {"command", "verify"},
             {"suite", report.suite},
             {"seed", report.seed},
             {"cases", report.cases.size()},
             {"properties", props}}
            .dump()
     << '\n';
  for (const auto& c : report.cases) os << case_json(c).dump() << '\n';
  os << json{{"type", "summary"}, {"pass", report.passed}, {"fail", report.failed}, {"unknown", report.unknown}}.dump()
     << '\n';
  return os.str();
}

ReplayOutcome replay_report(const std::string& text) {
  ReplayOutcome out;
  std::istringstream in(text);
  std::string line;
  std::string suite;
  std::uint64_t seed = 0;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const std::exception& e) {
      throw Error(ErrorKind::Parse, "report line " + std::to_string(lineno) + " is not JSON: " + e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "header") {
      suite = j.at("suite").get<std::string>();
      seed = j.at("seed").get<std::uint64_t>();
      suite_properties(suite);
      have_header = true;
    } else if (type == "case") {
      if (!have_header) throw Error(ErrorKind::Parse, "case line before the header");
      const auto index = j.at("index").get<std::uint64_t>();
      const json again = case_json(run_case(suite, seed, index));
      ++out.checked;
      if (again != j) {
        ++out.mismatched;
        out.messages.push_back("case " + std::to_string(index) + " does not reproduce");
      } else if (j.at("status") != "Pass") {
        ++out.mismatched;
        out.messages.push_back("case " + std::to_string(index) + " reproduces but is " + j.at("status").get<std::string>());
      }
    }
  }
  if (!have_header) throw Error(ErrorKind::Parse, "report has no header line");
  return out;
}

}  // namespace arl
