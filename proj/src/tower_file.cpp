#include "arl/tower_file.hpp"

#include <fstream>
#include <sstream>

#include "arl/limits.hpp"

namespace arl {

using json = nlohmann::ordered_json;

const Tower& TowerFile::tower(const std::string& name) const {
  auto it = towers.find(name);
  if (it != towers.end()) return it->second;
  std::string known;
  for (const auto& n : order) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorKind::Usage, "no tower named '" + name + "' (file has: " + (known.empty() ? "none" : known) + ")");
}

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

Integer to_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  bad(where, "expected an integer");
}

IntMatrix to_matrix(const json& v, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!v.is_array()) bad(where, "matrix must be an array of rows");
  if (v.size() != rows)
    bad(where, "matrix has " + std::to_string(v.size()) + " rows, expected " + std::to_string(rows));
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = v[i];
    if (!row.is_array()) bad(where + " row " + std::to_string(i), "row must be an array");
    if (row.size() != cols)
      bad(where + " row " + std::to_string(i),
          "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = to_integer(row[j], where + " row " + std::to_string(i) + " col " + std::to_string(j));
  }
  return m;
}

FinAbGroup to_group(const json& v, Prime l, const std::map<std::string, FinAbGroup>& groups, const std::string& where) {
  if (v.is_string()) {
    auto it = groups.find(v.get<std::string>());
    if (it == groups.end()) bad(where, "unknown group '" + v.get<std::string>() + "'");
    return it->second;
  }
  if (!v.is_array()) bad(where, "group must be a name or a list of invariant factors");
  Vector d;
  for (std::size_t i = 0; i < v.size(); ++i) d.push_back(to_integer(v[i], where + "[" + std::to_string(i) + "]"));
  try {
    return FinAbGroup(d, l);
  } catch (const Error& e) {
    bad(where, e.message());
  }
}

// A matrix that is not well defined on the source names its first offending entry.
GroupHom to_hom(const FinAbGroup& s, const FinAbGroup& t, const IntMatrix& m, const std::string& where) {
  for (std::size_t i = 0; i < t.rank(); ++i)
    for (std::size_t j = 0; j < s.rank(); ++j) {
      Integer x = s.invariant_factors()[j] * m(i, j);
      if (x % t.invariant_factors()[i] != 0)
        bad(where + " row " + std::to_string(i) + " col " + std::to_string(j),
            "entry " + m(i, j).get_str() + " does not send Z/" + s.invariant_factors()[j].get_str() + " into Z/" +
                t.invariant_factors()[i].get_str());
    }
  try {
    return GroupHom(s, t, m);
  } catch (const Error& e) {
    bad(where, e.message());
  }
}

struct HomDecl {
  FinAbGroup source, target;
  IntMatrix matrix;
};

Tower to_tower_decl(const json& v, Prime l, const std::map<std::string, FinAbGroup>& groups,
                    const std::map<std::string, HomDecl>& homs, const std::string& where) {
  if (!v.is_object()) bad(where, "tower must be an object");
  if (v.contains("module")) {
    if (!v["module"].is_string()) bad(where + ".module", "expected a module such as \"Zl^1 + Z/l^2\"");
    ZlModule M;
    try {
      M = ZlModule::parse(v["module"].get<std::string>(), l);
    } catch (const Error& e) {
      bad(where + ".module", e.message());
    }
    std::size_t levels = 8;
    if (v.contains("levels")) {
      if (!v["levels"].is_number_unsigned() || v["levels"].get<std::size_t>() == 0)
        bad(where + ".levels", "expected a positive level count");
      levels = v["levels"].get<std::size_t>();
    }
    return to_tower(M, levels);
  }
  if (!v.contains("levels") || !v["levels"].is_array() || v["levels"].empty())
    bad(where + ".levels", "expected a non-empty list of levels");
  const json& jl = v["levels"];
  std::vector<FinAbGroup> lv;
  for (std::size_t n = 0; n < jl.size(); ++n)
    lv.push_back(to_group(jl[n], l, groups, where + ".levels[" + std::to_string(n) + "]"));
  if (v.contains("operators")) {
    const json& ops = v["operators"];
    if (!ops.is_object()) bad(where + ".operators", "expected an object of per-level matrices");
    std::vector<OperatorMap> per(lv.size());
    for (const auto& [label, mats] : ops.items()) {
      const std::string w = where + ".operators." + label;
      if (!mats.is_array() || mats.size() != lv.size())
        bad(w, "expected one matrix per level (" + std::to_string(lv.size()) + ")");
      for (std::size_t n = 0; n < lv.size(); ++n)
        per[n][label] = to_matrix(mats[n], lv[n].rank(), lv[n].rank(), w + "[" + std::to_string(n) + "]");
    }
    for (std::size_t n = 0; n < lv.size(); ++n) {
      try {
        lv[n] = lv[n].with_operators(per[n]);
      } catch (const Error& e) {
        bad(where + ".operators at level " + std::to_string(n), e.message());
      }
    }
  }
  std::vector<GroupHom> tr;
  const json empty = json::array();
  const json& jt = v.contains("transitions") ? v["transitions"] : empty;
  if (!jt.is_array() || jt.size() + 1 != lv.size())
    bad(where + ".transitions", "expected " + std::to_string(lv.size() - 1) + " transitions");
  for (std::size_t k = 0; k < jt.size(); ++k) {
    const std::string w = where + ".transitions[" + std::to_string(k) + "]";
    IntMatrix m;
    if (jt[k].is_string()) {
      auto it = homs.find(jt[k].get<std::string>());
      if (it == homs.end()) bad(w, "unknown hom '" + jt[k].get<std::string>() + "'");
      if (!it->second.source.same_underlying_group(lv[k + 1]) || !it->second.target.same_underlying_group(lv[k]))
        bad(w, "hom '" + jt[k].get<std::string>() + "' does not map level " + std::to_string(k + 1) + " to level " +
                   std::to_string(k));
      m = it->second.matrix;
    } else {
      m = to_matrix(jt[k], lv[k].rank(), lv[k + 1].rank(), w);
    }
    tr.push_back(to_hom(lv[k + 1], lv[k], m, w));
  }
  TailRule tail;
  if (v.contains("tail")) {
    const json& t = v["tail"];
    const std::string w = where + ".tail";
    if (!t.is_object() || !t.contains("kind") || !t["kind"].is_string()) bad(w, "expected {\"kind\": ...}");
    const std::string kind = t["kind"].get<std::string>();
    const std::size_t start = t.contains("start") && t["start"].is_number_unsigned() ? t["start"].get<std::size_t>() : 0;
    if (kind == "Truncated") {
      tail = TailRule::truncated();
    } else if (kind == "ZeroTail") {
      tail = TailRule::zero_tail(start);
    } else if (kind == "EventuallyLAdic") {
      if (!t.contains("module") || !t["module"].is_string()) bad(w + ".module", "EventuallyLAdic needs a module");
      try {
        tail = TailRule::eventually_l_adic(start, ZlModule::parse(t["module"].get<std::string>(), l));
      } catch (const Error& e) {
        bad(w + ".module", e.message());
      }
    } else {
      bad(w + ".kind", "unknown tail kind '" + kind + "'");
    }
  }
  try {
    return Tower(l, std::move(lv), std::move(tr), tail);
  } catch (const Error& e) {
    bad(where, e.message());
  }
}

}  // namespace

TowerFile parse_tower_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Parse, std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("$", "top level must be an object");
  if (j.contains("format") && j["format"] != kTowerFormat)
    bad("$.format", "unsupported format " + j["format"].dump() + " (expected \"" + kTowerFormat + "\")");
  if (!j.contains("prime") || !j["prime"].is_number_unsigned()) bad("$.prime", "expected a prime");
  TowerFile f;
  f.l = j["prime"].get<Prime>();
  if (!is_prime(f.l)) bad("$.prime", std::to_string(f.l) + " is not prime");
  if (j.contains("symbols")) {
    if (!j["symbols"].is_array()) bad("$.symbols", "expected a list of names");
    for (const auto& s : j["symbols"]) {
      if (!s.is_string()) bad("$.symbols", "symbol names must be strings");
      f.symbols.push_back(s.get<std::string>());
    }
  }
  std::map<std::string, FinAbGroup> groups;
  if (j.contains("groups")) {
    if (!j["groups"].is_object()) bad("$.groups", "expected an object");
    for (const auto& [name, g] : j["groups"].items()) groups[name] = to_group(g, f.l, groups, "$.groups." + name);
  }
  std::map<std::string, HomDecl> homs;
  if (j.contains("homs")) {
    if (!j["homs"].is_object()) bad("$.homs", "expected an object");
    for (const auto& [name, h] : j["homs"].items()) {
      const std::string w = "$.homs." + name;
      if (!h.is_object() || !h.contains("source") || !h.contains("target") || !h.contains("matrix"))
        bad(w, "expected {source, target, matrix}");
      const FinAbGroup s = to_group(h["source"], f.l, groups, w + ".source");
      const FinAbGroup t = to_group(h["target"], f.l, groups, w + ".target");
      const IntMatrix m = to_matrix(h["matrix"], t.rank(), s.rank(), w + ".matrix");
      to_hom(s, t, m, w + ".matrix");
      homs[name] = HomDecl{s, t, m};
    }
  }
  if (!j.contains("towers") || !j["towers"].is_object() || j["towers"].empty())
    bad("$.towers", "expected at least one tower");
  for (const auto& [name, t] : j["towers"].items()) {
    f.towers.emplace(name, to_tower_decl(t, f.l, groups, homs, "$.towers." + name));
    f.order.push_back(name);
  }
  return f;
}

TowerFile load_tower_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  try {
    return parse_tower_file(os.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.message());
  }
}

namespace {

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).fits_slong_p())
        row.push_back(m(i, j).get_si());
      else
        row.push_back(m(i, j).get_str());
    }
    rows.push_back(row);
  }
  return rows;
}

json group_json(const FinAbGroup& g) {
  json a = json::array();
  for (const auto& d : g.invariant_factors()) {
    if (d.fits_slong_p())
      a.push_back(d.get_si());
    else
      a.push_back(d.get_str());
  }
  return a;
}

}  // namespace

json tower_to_json(const Tower& T0, std::size_t levels) {
  const Tower T = T0.extended(levels);
  const std::size_t k = std::min(levels, T.size());
  json lv = json::array(), tr = json::array();
  std::map<std::string, json> ops;
  for (std::size_t n = 0; n < k; ++n) {
    lv.push_back(group_json(T.level(n)));
    if (n > 0) tr.push_back(matrix_json(T.transition(n).matrix()));
    for (const auto& [label, m] : T.level(n).operators()) ops[label].push_back(matrix_json(m));
  }
  json out{{"levels", lv}, {"transitions", tr}};
  json opj = json::object();
  for (auto& [label, mats] : ops)
    if (mats.size() == k) opj[label] = mats;
  if (!opj.empty()) out["operators"] = opj;
  const TailRule& tail = T.tail();
  if (tail.kind == TailRule::Kind::ZeroTail && tail.start <= k)
    out["tail"] = {{"kind", "ZeroTail"}, {"start", tail.start}};
  else if (tail.kind == TailRule::Kind::EventuallyLAdic && tail.start < k)
    out["tail"] = {{"kind", "EventuallyLAdic"}, {"start", tail.start}, {"module", tail.module->to_string()}};
  else
    out["tail"] = {{"kind", "Truncated"}};
  return out;
}

std::string dump_tower_file(Prime l, const std::vector<std::pair<std::string, Tower>>& towers, std::size_t levels) {
  json towers_j = json::object();
  for (const auto& [name, T] : towers) towers_j[name] = tower_to_json(T, levels);
  json j{{"format", kTowerFormat}, {"prime", l}, {"towers", towers_j}};
  return j.dump(2) + "\n";
}

}  // namespace arl
