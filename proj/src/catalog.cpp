#include "reflekt/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "reflekt/invariants.hpp"

namespace reflekt {

using nlohmann::json;

std::string data_dir() {
  if (char const *env = std::getenv("REFLEKT_DATA_DIR"); env && *env) return env;
  return REFLEKT_DEFAULT_DATA_DIR;
}

namespace {

bool bundled(std::string const &name) {
  std::ifstream f(data_dir() + "/groups/" + name + ".json");
  return f.good();
}

std::vector<int> parse_int_list(std::string const &s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), ::tolower);
  return s;
}

} // namespace

GroupSpec parse_group_spec(std::string const &text) {
  static std::regex const cyc(R"(^\s*[Cc]_?(\d+)\s*$)");
  static std::regex const imp(R"(^\s*G\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$)");
  std::smatch m;
  GroupSpec spec;
  if (std::regex_match(text, m, cyc)) {
    spec.family = GroupSpec::Family::cyclic;
    spec.ab = std::stoi(m[1]);
    if (spec.ab < 1) throw ParseError("cyclic order must be positive");
    spec.name = "C" + std::to_string(spec.ab);
    return spec;
  }
  if (std::regex_match(text, m, imp)) {
    spec.family = GroupSpec::Family::imprimitive;
    spec.ab = std::stoi(m[1]);
    spec.b = std::stoi(m[2]);
    spec.r = std::stoi(m[3]);
    if (spec.ab < 1 || spec.b < 1 || spec.r < 1 || spec.ab % spec.b != 0)
      throw ParseError("G(ab,b,r) needs positive parameters with b | ab: " + text);
    spec.name = "G(" + std::to_string(spec.ab) + "," + std::to_string(spec.b) + "," + std::to_string(spec.r) + ")";
    return spec;
  }
  spec.family = GroupSpec::Family::file;
  if (text.size() > 5 && text.substr(text.size() - 5) == ".json") {
    spec.path = text;
    std::string base = text.substr(text.find_last_of('/') + 1);
    spec.name = base.substr(0, base.size() - 5);
    return spec;
  }
  std::string name = lower(text);
  if (!bundled(name)) throw ParseError("unknown group spec '" + text + "'");
  spec.name = name;
  spec.path = data_dir() + "/groups/" + name + ".json";
  return spec;
}

std::vector<CycMatrix> imprimitive_generators(int ab, int b, int r) {
  if (ab < 1 || b < 1 || r < 1 || ab % b) throw std::invalid_argument("bad G(ab,b,r) parameters");
  int a = ab / b;
  std::vector<CycMatrix> gens;
  if (a > 1) {
    CycMatrix t = CycMatrix::identity(r);
    t(0, 0) = Cyclotomic::root(a, 1);
    gens.push_back(t);
  }
  if (r >= 2) {
    CycMatrix s(r);
    for (int i = 2; i < r; ++i) s(i, i) = Cyclotomic(1);
    s(0, 1) = Cyclotomic::root(ab, -1);
    s(1, 0) = Cyclotomic::root(ab, 1);
    gens.push_back(s);
    for (int i = 0; i + 1 < r; ++i) {
      CycMatrix p(r);
      for (int k = 0; k < r; ++k)
        if (k != i && k != i + 1) p(k, k) = Cyclotomic(1);
      p(i, i + 1) = Cyclotomic(1);
      p(i + 1, i) = Cyclotomic(1);
      gens.push_back(p);
    }
  }
  if (gens.empty()) gens.push_back(CycMatrix::identity(r));
  return gens;
}

ReflectionGroup make_cyclic(int a) {
  if (a < 1) throw std::invalid_argument("make_cyclic needs a >= 1");
  // stored on V*: c acts on V* by zeta_a
  ReflectionGroup G = ReflectionGroup::generate({CycMatrix::diag({Cyclotomic::root(a, 1)})}, true, a + 1, "C" + std::to_string(a));
  if (G.order() != a) throw ArithmeticInvariantError("cyclic group has the wrong order");
  return G;
}

ReflectionGroup make_imprimitive(int ab, int b, int r) {
  std::int64_t expect = 1;
  for (int i = 0; i < r; ++i) expect *= ab;
  for (int i = 2; i <= r; ++i) expect *= i;
  expect /= b;
  std::string name = "G(" + std::to_string(ab) + "," + std::to_string(b) + "," + std::to_string(r) + ")";
  ReflectionGroup G = ReflectionGroup::generate(imprimitive_generators(ab, b, r), false, int(expect) + 1, name);
  if (G.order() != expect)
    throw ArithmeticInvariantError(name + " realized order " + std::to_string(G.order()) + ", expected " + std::to_string(expect));
  return G;
}

namespace {

Cyclotomic parse_entry(json const &entry, int m) {
  std::vector<std::pair<std::int64_t, Rational>> terms;
  for (auto const &t : entry) {
    if (!t.is_array() || t.size() != 3) throw ParseError("cyclotomic term must be [k, num, den]");
    auto num = [](json const &v) { return v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::int64_t>()); };
    terms.push_back({t[0].get<std::int64_t>(), Rational::parse(num(t[1]) + "/" + num(t[2]))});
  }
  return Cyclotomic::from_terms(m, terms);
}

json number_or_string(std::string const &s) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos == s.size()) return json(v);
  } catch (std::out_of_range const &) {
  }
  return json(s);
}

} // namespace

ReflectionGroup group_from_text(std::string const &text, std::string const &origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (json::parse_error const &e) {
    throw ParseError(origin + ": " + e.what());
  }
  try {
    std::string name = j.at("name");
    int m = j.at("conductor");
    int r = j.at("rank");
    std::string acts = j.at("acts_on");
    if (acts != "V" && acts != "V_dual") throw ParseError(origin + ": acts_on must be V or V_dual");
    std::vector<CycMatrix> gens;
    for (auto const &mat : j.at("generators")) {
      if (int(mat.size()) != r) throw ParseError(origin + ": generator row count differs from rank");
      CycMatrix g(r);
      for (int i = 0; i < r; ++i) {
        if (int(mat[i].size()) != r) throw ParseError(origin + ": generator column count differs from rank");
        for (int k = 0; k < r; ++k) g(i, k) = parse_entry(mat[i][k], m);
      }
      if (!is_unitary(g)) throw ParseError(origin + ": generator is not unitary for the standard Hermitian form");
      gens.push_back(g);
    }
    if (gens.empty()) throw ParseError(origin + ": no generators");
    ReflectionGroup G = ReflectionGroup::generate(gens, acts == "V_dual", 200000, name);
    if (m % G.conductor() != 0) throw ParseError(origin + ": declared conductor does not contain the entries");
    return G;
  } catch (json::exception const &e) {
    throw ParseError(origin + ": " + e.what());
  }
}

ReflectionGroup load_group(std::string const &path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return group_from_text(ss.str(), path);
}

std::string group_to_text(ReflectionGroup const &G, std::string const &provenance) {
  int m = G.conductor();
  std::ostringstream os;
  os << "{\n \"name\": " << json(G.name()).dump() << ",\n \"conductor\": " << m << ",\n \"rank\": " << G.rank()
     << ",\n \"acts_on\": \"V_dual\",\n \"generators\": [\n";
  auto const &gens = G.generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    CycMatrix const &P = G.element(gens[k]);
    os << "  [\n";
    for (int i = 0; i < G.rank(); ++i) {
      json row = json::array();
      for (int c = 0; c < G.rank(); ++c) {
        json entry = json::array();
        for (auto const &t : P(i, c).lifted(m).triples())
          entry.push_back({std::stoll(t[0]), number_or_string(t[1]), number_or_string(t[2])});
        row.push_back(entry);
      }
      os << "   " << row.dump() << (i + 1 < G.rank() ? "," : "") << "\n";
    }
    os << "  ]" << (k + 1 < gens.size() ? "," : "") << "\n";
  }
  os << " ],\n \"provenance\": " << json(provenance).dump() << "\n}\n";
  return os.str();
}

void save_group(ReflectionGroup const &G, std::string const &path, std::string const &provenance) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  f << group_to_text(G, provenance);
}

ReflectionGroup resolve_group(GroupSpec const &spec) {
  switch (spec.family) {
  case GroupSpec::Family::cyclic:
    return make_cyclic(spec.ab);
  case GroupSpec::Family::imprimitive:
    return make_imprimitive(spec.ab, spec.b, spec.r);
  case GroupSpec::Family::file:
    return load_group(spec.path);
  }
  throw std::logic_error("unreachable");
}

int index_of_V(ReflectionGroup const &G, CycMatrix const &A) {
  if (A.rows() != G.rank()) return -1;
  try {
    if (G.conductor() % A.conductor() != 0) return -1;
    return G.index_of(mat_inverse(A).transpose());
  } catch (std::exception const &) {
    return -1;
  }
}

namespace {

std::vector<int> map_generators(ReflectionGroup const &G, ReflectionGroup const &H, std::string const &what) {
  std::vector<int> gens;
  for (int h : H.generators()) {
    int idx = -1;
    try {
      if (G.conductor() % H.element(h).conductor() == 0) idx = G.index_of(H.element(h));
    } catch (std::exception const &) {
    }
    if (idx < 0) throw ParseError(what + " is not contained in " + G.name());
    if (idx != 0) gens.push_back(idx);
  }
  return gens;
}

std::vector<int> map_V_matrices(ReflectionGroup const &G, std::vector<CycMatrix> const &mats, std::string const &what) {
  std::vector<int> gens;
  for (auto const &A : mats) {
    int idx = index_of_V(G, A);
    if (idx < 0) throw ParseError(what + " is not contained in " + G.name());
    if (idx != 0) gens.push_back(idx);
  }
  return gens;
}

} // namespace

NormalSubgroupHandle select_normal(ReflectionGroup const &G, GroupSpec const &spec, std::string const &selector) {
  static std::regex const powc(R"(^\s*\(\s*C_?(\d+)\s*\)\s*\^\s*(\d+)\s*$)");
  static std::regex const cyc(R"(^\s*C_?(\d+)\s*$)");
  static std::regex const imp(R"(^\s*G\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*('?)\s*$)");
  std::smatch m;
  std::vector<int> gens;
  std::string sel = selector;
  if (sel == "trivial") return make_normal_subgroup(G, {}, "trivial");
  if (sel == "whole" || sel == "G") return make_normal_subgroup(G, G.generators(), G.name());
  if (sel.rfind("classes:", 0) == 0) {
    auto const &classes = G.reflection_classes();
    for (int c : parse_int_list(sel.substr(8))) {
      if (c < 0 || c >= int(classes.size())) throw ParseError("reflection class " + std::to_string(c) + " out of range");
      gens.insert(gens.end(), classes[c].begin(), classes[c].end());
    }
    if (gens.empty()) throw ParseError("empty class selector");
  } else if (std::regex_match(sel, m, powc)) {
    int d = std::stoi(m[1]), r = std::stoi(m[2]);
    if (r != G.rank() || d < 1) throw ParseError("(C_d)^r must match the rank of " + G.name());
    std::vector<CycMatrix> mats;
    for (int i = 0; i < r; ++i) {
      CycMatrix t = CycMatrix::identity(r);
      t(i, i) = Cyclotomic::root(d, 1);
      mats.push_back(t);
    }
    gens = map_V_matrices(G, mats, sel);
  } else if (std::regex_match(sel, m, cyc)) {
    int d = std::stoi(m[1]);
    if (G.rank() != 1) throw ParseError("C_d selector needs a rank-1 group");
    gens = map_V_matrices(G, {CycMatrix::diag({Cyclotomic::root(d, 1)})}, sel);
  } else if (std::regex_match(sel, m, imp)) {
    int mm = std::stoi(m[1]), p = std::stoi(m[2]), r = std::stoi(m[3]);
    if (r != G.rank()) throw ParseError(sel + " has the wrong rank");
    std::vector<CycMatrix> mats = imprimitive_generators(mm, p, r);
    if (m[4] == "'") {
      // conjugate copy by diag(1, zeta_2a) inside G(2a,2,2)
      if (r != 2 || spec.family != GroupSpec::Family::imprimitive) throw ParseError("primed selector needs G(2a,2,2)");
      CycMatrix D = CycMatrix::diag({Cyclotomic(1), Cyclotomic::root(spec.ab, 1)});
      CycMatrix Di = CycMatrix::diag({Cyclotomic(1), Cyclotomic::root(spec.ab, -1)});
      for (auto &A : mats) A = mat_mul(mat_mul(D, A), Di);
    }
    gens = map_V_matrices(G, mats, sel);
  } else {
    std::string name = lower(sel);
    if (name == "short-roots") name = G.name() + "_short_roots";
    if (name == "long-roots") name = G.name() + "_long_roots";
    if (!bundled(name)) throw ParseError("unknown subgroup selector '" + selector + "'");
    ReflectionGroup H = load_group(data_dir() + "/groups/" + name + ".json");
    gens = map_generators(G, H, sel);
  }
  for (int g : gens)
    if (!G.is_reflection(g)) throw ParseError("subgroup selector '" + selector + "' has a non-reflection generator");
  return make_normal_subgroup(G, gens, selector);
}

bool Fingerprint::operator<(Fingerprint const &o) const {
  return std::tie(order, degrees) < std::tie(o.order, o.degrees);
}

DegreeMultiset imprimitive_degrees(int m, int p, int r) {
  DegreeMultiset d;
  for (int i = 1; i < r; ++i) d.push_back(i * m);
  d.push_back(r * m / p);
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::int64_t imprimitive_order(int m, int p, int r) {
  std::int64_t o = 1;
  for (int i = 0; i < r; ++i) o *= m;
  for (int i = 2; i <= r; ++i) o *= i;
  return o / p;
}

std::vector<Fingerprint> manifest_normals(std::string const &name, bool &found) {
  found = false;
  std::ifstream f(data_dir() + "/manifest.json");
  if (!f) return {};
  json j = json::parse(f);
  for (auto const &g : j.at("groups")) {
    if (g.at("name") != name) continue;
    found = true;
    std::vector<Fingerprint> out;
    Fingerprint whole;
    whole.label = name;
    whole.order = g.at("order");
    whole.degrees = g.at("degrees").get<DegreeMultiset>();
    out.push_back(whole);
    for (auto const &n : g.at("normal_reflection_subgroups")) {
      Fingerprint fp;
      fp.label = n.at("label");
      fp.order = n.at("order");
      fp.degrees = n.at("degrees").get<DegreeMultiset>();
      out.push_back(fp);
    }
    return out;
  }
  return {};
}

} // namespace

std::vector<Fingerprint> predicted_normals(GroupSpec const &spec) {
  std::vector<Fingerprint> out;
  int ab = spec.ab, b = spec.b, r = spec.r;
  int a = ab / b;
  auto add = [&](std::string label, std::int64_t order, DegreeMultiset d) {
    Fingerprint fp;
    fp.label = std::move(label);
    fp.order = int(order);
    std::sort(d.begin(), d.end());
    fp.degrees = std::move(d);
    out.push_back(fp);
  };
  if (spec.family == GroupSpec::Family::cyclic) {
    for (int d : divisors(ab))
      if (d > 1) add("C" + std::to_string(d), d, {d});
    return out;
  }
  if (r == 1) {
    for (int d : divisors(a))
      if (d > 1) add("C" + std::to_string(d), d, {d});
    return out;
  }
  for (int d : divisors(a)) {
    if (d > 1) {
      std::int64_t o = 1;
      for (int i = 0; i < r; ++i) o *= d;
      add("(C_" + std::to_string(d) + ")^" + std::to_string(r), o, DegreeMultiset(r, d));
    }
    add("G(" + std::to_string(ab) + "," + std::to_string(d * b) + "," + std::to_string(r) + ")", imprimitive_order(ab, d * b, r),
        imprimitive_degrees(ab, d * b, r));
  }
  if (r == 2 && b == 2) {
    for (int d : divisors(a))
      for (char const *copy : {"", "'"})
        add("G(" + std::to_string(a) + "," + std::to_string(d) + ",2)" + copy, imprimitive_order(a, d, 2),
            imprimitive_degrees(a, d, 2));
  }
  return out;
}

ClassificationReport classify(ReflectionGroup const &G, GroupSpec const &spec) {
  ClassificationReport rep;
  rep.group = G.name();
  for (auto const &N : normal_reflection_subgroups(G)) {
    Fingerprint fp;
    fp.label = N.label;
    fp.order = N.order();
    std::vector<EigenMultiset> eig;
    for (int n : N.members) eig.push_back(G.eigen(n));
    fp.degrees = degrees_of(eig, G.rank());
    for (int g : G.reflections())
      if (N.contains(g)) fp.reflections += 1;
    rep.found.push_back(fp);
  }
  if (spec.family == GroupSpec::Family::file) {
    bool ok = false;
    rep.expected = manifest_normals(spec.name, ok);
    rep.has_reference = ok;
  } else {
    rep.expected = predicted_normals(spec);
    rep.has_reference = true;
  }
  if (!rep.has_reference) return rep;
  std::vector<Fingerprint> left = rep.found;
  for (auto const &e : rep.expected) {
    auto it = std::find_if(left.begin(), left.end(), [&](Fingerprint const &f) { return f.same_shape(e); });
    if (it == left.end())
      rep.missing.push_back(e);
    else
      left.erase(it);
  }
  rep.unexpected = left;
  return rep;
}

} // namespace reflekt
