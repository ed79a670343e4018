#include "reflekt/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

namespace reflekt::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

bool is_cyclic(GroupSpec const &spec) { return spec.family == GroupSpec::Family::cyclic; }
bool is_imprimitive(GroupSpec const &spec) { return spec.family == GroupSpec::Family::imprimitive; }

std::string ints(std::vector<int> const &v) { return join_ints(v); }

std::string md_cell(std::string s) {
  for (std::size_t i = 0; (i = s.find('|', i)) != std::string::npos; i += 2) s.replace(i, 1, "\\|");
  return s;
}

void write_report(std::ostream &out, VerificationReport const &r, std::string const &format) {
  if (format == "json") {
    out << report_json(r).dump() << "\n";
    return;
  }
  out << "| " << r.identity << " | " << r.group << " | " << md_cell(r.subgroup) << " | " << r.sigma << " | "
      << (r.pass ? "PASS" : "FAIL") << " | " << md_cell(r.lhs) << " | " << md_cell(r.rhs) << " |\n";
}

void write_report_header(std::ostream &out, std::string const &format) {
  if (format != "markdown") return;
  out << "| identity | group | subgroup | s | result | lhs | rhs |\n|---|---|---|---|---|---|---|\n";
}

// label a found subgroup by its family name when it has one
void relabel(NormalSubgroupHandle &N, ReflectionGroup const &G, GroupSpec const &spec) {
  if (N.is_whole()) {
    N.label = "whole";
    return;
  }
  auto names = family_labels(G, spec, N);
  if (!names.empty()) N.label = names.front();
}

SweepPlan build_plan(std::vector<GroupSpec> specs) {
  SweepPlan plan;
  plan.specs = std::move(specs);
  for (auto const &spec : plan.specs) plan.groups.push_back(resolve_group(spec));
  for (int gi = 0; gi < int(plan.groups.size()); ++gi) {
    ReflectionGroup const &G = plan.groups[gi];
    std::vector<NormalSubgroupHandle> normals{make_normal_subgroup(G, {}, "trivial")};
    for (auto &N : normal_reflection_subgroups(G)) {
      relabel(N, G, plan.specs[gi]);
      normals.push_back(std::move(N));
    }
    bool first = true;
    for (auto &N : normals) {
      SweepTask t;
      t.id = int(plan.tasks.size());
      t.group = gi;
      t.N = std::move(N);
      t.first_of_group = first;
      first = false;
      plan.tasks.push_back(std::move(t));
    }
  }
  return plan;
}

std::int64_t parse_int(std::string const &s, std::string const &what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (std::exception const &) {
    throw ParseError("bad " + what + " '" + s + "'");
  }
  if (used != s.size()) throw ParseError("bad " + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(std::string const &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

void set_sigma(std::vector<VerificationReport> &reps, std::size_t from, std::int64_t s) {
  for (std::size_t i = from; i < reps.size(); ++i) reps[i].sigma = s;
}

} // namespace

std::vector<std::int64_t> parse_sigmas(std::string const &text, ReflectionGroup const &G, GroupSpec const &spec) {
  if (text == "all") return sigma_range(G, spec);
  std::int64_t base = sigma_base(G, spec);
  std::vector<std::int64_t> out;
  for (auto const &piece : split(text, ',')) {
    std::int64_t s = parse_int(piece, "sigma exponent");
    if (s < 1) throw ParseError("sigma exponent must be positive: " + piece);
    if (std::gcd(s, base) != 1)
      throw ParseError("sigma exponent " + piece + " is not coprime to " + std::to_string(base));
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  if (out.empty()) throw ParseError("empty sigma list");
  return out;
}

std::vector<std::string> const &verify_ids() {
  static std::vector<std::string> const ids = {"main",       "orlik-solomon", "shephard-todd",
                                               "numerology", "coset",         "derivative",
                                               "cyclic",     "infinite",      "fake-tensor"};
  return ids;
}

std::vector<VerificationReport> run_verifier(std::string const &id, ReflectionGroup const &G, GroupSpec const &spec,
                                             NormalPair &P, std::vector<std::int64_t> const &sigmas) {
  std::vector<VerificationReport> out;
  if (id == "shephard-todd") {
    out.push_back(verify_shephard_todd(G));
    return out;
  }
  if (id == "cyclic" && !is_cyclic(spec)) throw ParseError("verify cyclic needs a cyclic group C_a");
  if ((id == "infinite" || id == "fake-tensor") && !is_imprimitive(spec))
    throw ParseError("verify " + id + " needs a G(ab,b,r) group");
  if (id == "fake-tensor") {
    if (family_labels(G, spec, P.N()).empty())
      throw ParseError("subgroup '" + P.N().label + "' is not one of the predicted normal subgroups of " + G.name());
    if (auto q = verify_quotient_shape(P, spec)) out.push_back(std::move(*q));
  }
  for (std::int64_t s : sigmas) {
    std::size_t from = out.size();
    GaloisAuto sigma = resolve_sigma(G, spec, s);
    if (id == "main")
      out.push_back(verify_main(P, sigma));
    else if (id == "orlik-solomon")
      out.push_back(verify_orlik_solomon(G, sigma));
    else if (id == "numerology")
      out.push_back(verify_numerology(P, sigma));
    else if (id == "coset")
      out.push_back(verify_coset_identities(P, sigma));
    else if (id == "derivative")
      out.push_back(verify_derivative_recovery(P, sigma));
    else if (id == "cyclic")
      out.push_back(verify_cyclic_closed_forms(P, spec.ab, P.N().order(), s));
    else if (id == "infinite")
      out.push_back(verify_infinite_exponents(G, spec, s));
    else if (id == "fake-tensor")
      for (auto &r : verify_fake_tensor(P, spec, s)) out.push_back(std::move(r));
    else
      throw ParseError("unknown verifier '" + id + "'");
    set_sigma(out, from, s);
  }
  return out;
}

SweepPlan cyclic_plan(int cap) {
  std::vector<GroupSpec> specs;
  for (int a = 1; a <= cap; ++a) specs.push_back(parse_group_spec("C" + std::to_string(a)));
  return build_plan(std::move(specs));
}

SweepPlan imprimitive_plan(int cap, int max_rank) {
  std::vector<GroupSpec> specs;
  for (int ab = 1; ab <= cap; ++ab)
    for (int b = 1; b <= ab; ++b) {
      if (ab % b) continue;
      for (int r = 1; r <= max_rank; ++r)
        specs.push_back(parse_group_spec("G(" + std::to_string(ab) + "," + std::to_string(b) + "," +
                                         std::to_string(r) + ")"));
    }
  return build_plan(std::move(specs));
}

std::vector<VerificationReport> run_task(SweepPlan const &plan, SweepTask const &task) {
  ReflectionGroup const &G = plan.groups[task.group];
  GroupSpec const &spec = plan.specs[task.group];
  NormalPair P(G, task.N);
  std::vector<std::int64_t> sigmas = sigma_range(G, spec);
  std::vector<std::string> ids = {"main", "numerology", "derivative"};
  if (is_cyclic(spec)) {
    ids.push_back("coset");
    ids.push_back("cyclic");
  }
  if (is_imprimitive(spec) && !family_labels(G, spec, task.N).empty()) ids.push_back("fake-tensor");
  if (task.first_of_group) {
    ids.push_back("shephard-todd");
    ids.push_back("orlik-solomon");
    if (is_imprimitive(spec)) ids.push_back("infinite");
  }
  std::vector<VerificationReport> out;
  for (auto const &id : ids)
    for (auto &r : run_verifier(id, G, spec, P, sigmas)) out.push_back(std::move(r));
  return out;
}

namespace {

// runs every task on the OpenMP pool; sink sees each task's reports once,
// in task order, under a lock
template <class Sink> void run_plan_streaming(SweepPlan const &plan, Sink &&sink) {
  std::size_t n = plan.tasks.size();
  std::vector<std::vector<VerificationReport>> done(n);
  std::vector<char> ready(n, 0);
  std::size_t next = 0;
  std::mutex mu;
  kernels::ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n; ++i) {
    err.run([&] {
      auto reps = run_task(plan, plan.tasks[i]);
      std::lock_guard<std::mutex> lock(mu);
      done[i] = std::move(reps);
      ready[i] = 1;
      while (next < n && ready[next]) {
        sink(next, done[next]);
        ++next;
      }
    });
  }
  err.rethrow();
}

} // namespace

std::vector<std::vector<VerificationReport>> run_plan(SweepPlan const &plan) {
  std::vector<std::vector<VerificationReport>> out(plan.tasks.size());
  run_plan_streaming(plan, [&](std::size_t i, std::vector<VerificationReport> const &reps) { out[i] = reps; });
  return out;
}

std::string render_table2() {
  GroupSpec spec = parse_group_spec("g15");
  ReflectionGroup G = resolve_group(spec);
  NormalPair P(G, select_normal(G, spec, "g12"));
  std::string out = table2_header();
  for (std::int64_t s : sigma_range(G, spec)) out += table2_row(P, resolve_sigma(G, spec, s), s) + "\n";
  return out;
}

namespace {

struct Options {
  std::string group;
  std::string normal = "whole";
  std::string sigma = "all";
  std::string format = "json";
  std::string out;
  std::string golden;
  std::vector<std::string> ids;
  std::string family;
  int jobs = 0;
  int cap = -1;
  int max_rank = kRankCap;
};

json info_json(ReflectionGroup const &G) {
  json classes = json::array();
  for (auto const &c : G.reflection_classes()) classes.push_back(c.size());
  return json{{"schema", kInfoSchema},
              {"name", G.name()},
              {"rank", G.rank()},
              {"order", G.order()},
              {"conductor", G.conductor()},
              {"working_conductor", G.working_conductor()},
              {"degrees", degrees(G)},
              {"reflections", G.reflections().size()},
              {"reflection_classes", classes},
              {"hyperplane_orbits", hyperplane_orbits(G).size()}};
}

json fingerprints(std::vector<Fingerprint> const &v) {
  json out = json::array();
  for (auto const &f : v) {
    json o{{"label", f.label}, {"order", f.order}, {"degrees", f.degrees}};
    if (f.reflections) o["reflections"] = f.reflections;
    out.push_back(o);
  }
  return out;
}

int cmd_info(Options const &o, std::ostream &out) {
  ReflectionGroup G = resolve_group(parse_group_spec(o.group));
  json j = info_json(G);
  if (o.format == "json") {
    out << j.dump() << "\n";
    return kPass;
  }
  for (auto const &[k, v] : j.items())
    if (k != "schema") out << "- " << k << ": " << v.dump() << "\n";
  return kPass;
}

int cmd_normals(Options const &o, std::ostream &out) {
  GroupSpec spec = parse_group_spec(o.group);
  ReflectionGroup G = resolve_group(spec);
  ClassificationReport c = classify(G, spec);
  if (o.format == "json") {
    out << json{{"schema", kNormalsSchema},
                {"group", c.group},
                {"found", fingerprints(c.found)},
                {"has_reference", c.has_reference},
                {"expected", fingerprints(c.expected)},
                {"missing", fingerprints(c.missing)},
                {"unexpected", fingerprints(c.unexpected)},
                {"complete", c.complete()}}
               .dump()
        << "\n";
  } else {
    out << "| subgroup | order | degrees | reflections |\n|---|---|---|---|\n";
    for (auto const &f : c.found)
      out << "| " << f.label << " | " << f.order << " | " << ints(f.degrees) << " | " << f.reflections << " |\n";
    for (auto const &f : c.missing) out << "missing: " << f.label << " order " << f.order << "\n";
    for (auto const &f : c.unexpected) out << "unexpected: " << f.label << " order " << f.order << "\n";
    if (!c.has_reference) out << "no reference list for " << c.group << "\n";
  }
  return c.missing.empty() ? kPass : kFail;
}

int cmd_exponents(Options const &o, std::ostream &out) {
  GroupSpec spec = parse_group_spec(o.group);
  ReflectionGroup G = resolve_group(spec);
  auto sigmas = parse_sigmas(o.sigma, G, spec);
  std::optional<NormalPair> P;
  if (!o.normal.empty() && o.normal != "whole") P.emplace(G, select_normal(G, spec, o.normal));
  if (o.format == "markdown") {
    out << (P ? table2_header() : "| s | e^G(V^s) |\n|---|---|\n");
  }
  for (std::int64_t s : sigmas) {
    GaloisAuto sigma = resolve_sigma(G, spec, s);
    ExponentMultiset eG = twisted_exponents(G, sigma);
    std::sort(eG.begin(), eG.end());
    if (o.format == "markdown") {
      out << (P ? table2_row(*P, sigma, s) : "| " + std::to_string(s) + " | " + ints(eG) + " |") << "\n";
      continue;
    }
    json j{{"schema", kExponentsSchema}, {"group", G.name()}, {"sigma_exponent", s}, {"e_G_V", eG}};
    if (P) {
      Numerology n = numerology(*P, sigma);
      std::vector<int> d, eH, eGE, eN, eGU;
      for (auto const &row : n.rows) {
        d.push_back(row.d);
        eH.push_back(row.eH);
        eGE.push_back(row.eGE);
      }
      for (auto [x, y] : n.pairs) {
        eN.push_back(x);
        eGU.push_back(y);
      }
      j["subgroup"] = P->N().label;
      j["d_N"] = d;
      j["e_H_E"] = eH;
      j["e_G_E"] = eGE;
      j["e_N_V"] = eN;
      j["e_G_U"] = eGU;
    }
    out << j.dump() << "\n";
  }
  return kPass;
}

int cmd_verify(Options const &o, std::ostream &out) {
  GroupSpec spec = parse_group_spec(o.group);
  ReflectionGroup G = resolve_group(spec);
  auto sigmas = parse_sigmas(o.sigma, G, spec);
  NormalPair P(G, select_normal(G, spec, o.normal));
  std::vector<std::string> ids;
  for (auto const &raw : o.ids)
    for (auto const &id : split(raw, ',')) {
      if (id == "all") {
        ids.insert(ids.end(), {"main", "numerology", "coset", "derivative", "orlik-solomon", "shephard-todd"});
        if (is_cyclic(spec)) ids.push_back("cyclic");
        if (is_imprimitive(spec)) {
          ids.push_back("infinite");
          if (!family_labels(G, spec, P.N()).empty()) ids.push_back("fake-tensor");
        }
      } else if (std::find(verify_ids().begin(), verify_ids().end(), id) != verify_ids().end()) {
        ids.push_back(id);
      } else {
        throw ParseError("unknown verifier '" + id + "'");
      }
    }
  if (ids.empty()) throw ParseError("no verifier ids given");
  bool ok = true;
  write_report_header(out, o.format);
  for (auto const &id : ids)
    for (auto const &r : run_verifier(id, G, spec, P, sigmas)) {
      write_report(out, r, o.format);
      out.flush();
      ok = ok && r.pass;
    }
  return ok ? kPass : kFail;
}

int cmd_table2(Options const &o, std::ostream &out, std::ostream &err) {
  std::string got = render_table2();
  std::string path = o.golden.empty() ? data_dir() + "/golden/table2.md" : o.golden;
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open golden file " + path);
  std::stringstream want;
  want << f.rdbuf();
  if (o.format == "json") {
    std::istringstream rows(got);
    std::string line;
    std::getline(rows, line);
    std::getline(rows, line);
    while (std::getline(rows, line)) {
      auto cells = split(line, '|');
      out << json{{"schema", "reflekt.table2/1"}, {"row", cells}}.dump() << "\n";
    }
  } else {
    out << got;
  }
  if (got == want.str()) return kPass;
  std::istringstream a(got), b(want.str());
  std::string la, lb;
  for (int line = 1; std::getline(b, lb); ++line) {
    if (!std::getline(a, la)) la.clear();
    if (la != lb) err << "table2 line " << line << ":\n  golden:   " << lb << "\n  computed: " << la << "\n";
  }
  return kFail;
}

int cmd_sweep(Options const &o, std::ostream &out) {
  auto t0 = Clock::now();
  SweepPlan plan;
  int cap = o.cap;
  if (o.family == "cyclic") {
    if (cap < 0) cap = 12;
    if (cap > kCyclicCap) throw ParseError("cyclic sweep cap is " + std::to_string(kCyclicCap));
    plan = cyclic_plan(cap);
  } else if (o.family == "imprimitive") {
    if (cap < 0) cap = kImprimitiveCap;
    if (cap > kImprimitiveCap || o.max_rank > kRankCap || o.max_rank < 1)
      throw ParseError("imprimitive sweep caps are ab <= " + std::to_string(kImprimitiveCap) +
                       ", r <= " + std::to_string(kRankCap));
    plan = imprimitive_plan(cap, o.max_rank);
  } else {
    throw ParseError("sweep family must be cyclic or imprimitive");
  }
  std::size_t reports = 0, passed = 0;
  std::map<std::string, int> failed_ids;
  write_report_header(out, o.format);
  run_plan_streaming(plan, [&](std::size_t, std::vector<VerificationReport> const &reps) {
    for (auto const &r : reps) {
      write_report(out, r, o.format);
      ++reports;
      if (r.pass)
        ++passed;
      else
        ++failed_ids[r.identity];
    }
    out.flush();
  });
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  json summary{{"schema", kSummarySchema}, {"family", o.family},    {"cap", cap},
               {"groups", plan.groups.size()}, {"tasks", plan.tasks.size()}, {"reports", reports},
               {"passed", passed},      {"failed", reports - passed}, {"failed_by_identity", failed_ids},
               {"millis", ms}};
  if (o.format == "json")
    out << summary.dump() << "\n";
  else
    out << "\n" << passed << " of " << reports << " passed over " << plan.tasks.size() << " tasks\n";
  return passed == reports ? kPass : kFail;
}

} // namespace

int run(int argc, char **argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"reflekt: exact checks on complex reflection groups and their normal reflection subgroups"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App *c, bool group_required) {
    auto *g = c->add_option("--group", o.group, "C6, G(6,1,2), a bundled name such as g15, or a .json path");
    if (group_required) g->required();
    c->add_option("--format", o.format)->check(CLI::IsMember({"json", "markdown"}));
    c->add_option("--out", o.out, "write to this file instead of stdout");
    c->add_option("--jobs", o.jobs, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);
  };
  auto *info = app.add_subcommand("info", "order, degrees and reflections");
  add_common(info, true);
  auto *normals = app.add_subcommand("normals", "normal reflection subgroups against the reference list");
  add_common(normals, true);
  auto *expo = app.add_subcommand("exponents", "V^sigma exponents, with the N-side split when --normal is given");
  add_common(expo, true);
  expo->add_option("--normal", o.normal);
  expo->add_option("--sigma", o.sigma, "comma list or all");
  auto *verify = app.add_subcommand("verify", "run verifiers and stream JSON-line reports");
  add_common(verify, true);
  verify->add_option("ids", o.ids, "main, orlik-solomon, shephard-todd, numerology, coset, derivative, cyclic, "
                                   "infinite, fake-tensor, or all")
      ->required();
  verify->add_option("--normal", o.normal, "whole, trivial, classes:i,j, (C_d)^r, G(m,p,r), short-roots, ...");
  verify->add_option("--sigma", o.sigma, "comma list or all");
  auto *table2 = app.add_subcommand("table2", "the g15 over g12 table, compared with the golden file");
  add_common(table2, false);
  table2->add_option("--golden", o.golden);
  auto *sweep = app.add_subcommand("sweep", "verify every (group, normal subgroup, sigma) in a family");
  add_common(sweep, false);
  sweep->add_option("family", o.family, "cyclic or imprimitive")->required();
  sweep->add_option("--cap", o.cap, "largest a (cyclic) or ab (imprimitive)");
  sweep->add_option("--max-rank", o.max_rank, "largest r for the imprimitive sweep");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  if (table2->parsed() && table2->count("--format") == 0) o.format = "markdown";
  if (o.jobs > 0) omp_set_num_threads(o.jobs);

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      err << "cannot write " << o.out << "\n";
      return kUsage;
    }
  }
  std::ostream &sink = o.out.empty() ? out : file;
  try {
    if (info->parsed()) return cmd_info(o, sink);
    if (normals->parsed()) return cmd_normals(o, sink);
    if (expo->parsed()) return cmd_exponents(o, sink);
    if (verify->parsed()) return cmd_verify(o, sink);
    if (table2->parsed()) return cmd_table2(o, sink, err);
    if (sweep->parsed()) return cmd_sweep(o, sink);
  } catch (std::invalid_argument const &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (std::exception const &e) {
    err << "failed: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

} // namespace reflekt::cli
