// One PASS/FAIL line per acceptance criterion.  The property criterion runs
// the unit property cases in-process, so the same binary carries them.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "reflekt/cli.hpp"
#include "../unit/support.hpp"

using namespace reflekt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
  // red, but only through the documented case (d) erratum
  bool tolerated = false;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(std::string const &path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome table2() {
  std::string want = slurp(data_dir() + "/golden/table2.md");
  std::string got = cli::render_table2();
  int rows = 0;
  for (char c : got) rows += c == '\n';
  if (got == want) return {true, std::to_string(rows - 2) + " rows byte-identical to the golden file"};
  std::istringstream a(got), b(want);
  std::string la, lb, first;
  for (int line = 1; std::getline(b, lb); ++line) {
    if (!std::getline(a, la)) la.clear();
    if (la != lb && first.empty()) first = "line " + std::to_string(line) + ": got '" + la + "' want '" + lb + "'";
  }
  return {false, first.empty() ? "length differs" : first};
}

Outcome worked_example() {
  GroupSpec spec = parse_group_spec("g15");
  ReflectionGroup G = resolve_group(spec);
  NormalPair P(G, select_normal(G, spec, "g12"));
  std::vector<std::string> bad;
  InvariantCache &inv = P.invariants();
  if (inv.at(6).dim() != 1 || render_poly(inv.at(6).basis()[0], 2, 6) != "x^5y - xy^5") bad.push_back("degree-6 invariant");
  if (inv.at(8).dim() != 1 || render_poly(inv.at(8).basis()[0], 2, 8) != "x^8 + 14x^4y^4 + y^8")
    bad.push_back("degree-8 invariant");

  OSSpace const &U = P.U(P.sigma(13));
  bool found = false;
  for (auto const &pc : U.space.pieces) {
    if (pc.degree != 1 || pc.space.dim() != 1) continue;
    // y (x) x^s - x (x) y^s; ambient index = monomial * 2 + j, x before y
    CycVector v = pc.space.basis()[0];
    Cyclotomic k = v[2];
    found = !k.is_zero() && v == CycVector{Cyclotomic(0), -k, k, Cyclotomic(0)};
  }
  if (!found) bad.push_back("sigma13 degree-1 vector");

  // generators s, t, u in file order
  Cyclotomic one(1), minus(-1), z3sq = cyc_root(3, 2);
  std::vector<std::pair<Cyclotomic, Cyclotomic>> E_table = {{minus, one}, {one, z3sq}, {one, one}};
  QuotientModule const &E = P.E();
  for (int k = 0; k < 3; ++k)
    if (!(E.space.generator_matrix(k) == CycMatrix::diag({E_table[k].first, E_table[k].second})))
      bad.push_back("E* action of generator " + std::to_string(k));
  // u1 (degree 11) is fixed by everything; u2 (degree 1) moves like the
  // degree-8 line of E*
  std::vector<Cyclotomic> u2 = {minus, z3sq, one};
  std::vector<int> deg = U.space.grading();
  for (int k = 0; k < 3; ++k) {
    CycMatrix M = U.space.generator_matrix(k);
    if (!(M == CycMatrix::diag({M(0, 0), M(1, 1)}))) bad.push_back("U* action not diagonal");
    for (int i = 0; i < int(deg.size()); ++i)
      if (!(M(i, i) == (deg[i] == 11 ? one : u2[k]))) bad.push_back("U* action of generator " + std::to_string(k));
  }
  if (!bad.empty()) {
    std::string d = "mismatch:";
    for (auto const &b : bad) d += " " + b + ";";
    return {false, d};
  }
  return {true, "invariants x^5y - xy^5 and x^8 + 14x^4y^4 + y^8, sigma13 OS vector, E* and U* generator tables exact"};
}

struct SweepTally {
  std::size_t reports = 0, passed = 0;
  std::map<std::string, int> by_identity;
  std::vector<VerificationReport> failures;
  std::set<std::string> passed_keys; // identity|group|subgroup|s
};

SweepTally tally(std::vector<std::vector<VerificationReport>> const &all) {
  SweepTally t;
  for (auto const &task : all)
    for (auto const &r : task) {
      ++t.reports;
      ++t.by_identity[r.identity];
      if (r.pass) {
        ++t.passed;
        t.passed_keys.insert(r.identity + "|" + r.group + "|" + r.subgroup + "|" + std::to_string(r.sigma));
      } else {
        t.failures.push_back(r);
      }
    }
  return t;
}

std::string counts(SweepTally const &t) {
  std::ostringstream os;
  os << t.passed << "/" << t.reports << " reports pass";
  return os.str();
}

// Element-by-element display for C6 over C2 at s = 5.
std::string cyclic_display_problems() {
  GroupSpec spec = parse_group_spec("C6");
  ReflectionGroup G = resolve_group(spec);
  NormalPair P(G, select_normal(G, spec, "C_2"));
  GaloisAuto s5 = resolve_sigma(G, spec, 5);
  auto contrib = element_contributions(P, s5);
  // c acts on V* by zeta_6; c^k by zeta_6^k
  auto power_of = [&](int g) {
    for (int k = 0; k < 6; ++k)
      if (G.element(g)(0, 0) == cyc_root(6, k)) return k;
    return -1;
  };
  auto frac = [](int num, int den) {
    return (Cyclotomic(1) - cyc_root(6, num)) / (Cyclotomic(1) - cyc_root(6, den));
  };
  // OS ratio per c^k: id gives q (ratio 1, fix 1); the others from the display
  std::map<int, Cyclotomic> want_ratio = {{0, Cyclotomic(1)}, {3, frac(3, 3)}, {1, frac(5, 1)},
                                          {4, frac(2, 4)},    {2, frac(4, 2)}, {5, frac(1, 5)}};
  std::string bad;
  std::vector<CycBivar> os(3), main(3);
  for (auto const &c : contrib) {
    int k = power_of(c.element);
    if (k < 0) return "element outside C6";
    if (!(c.ratio == want_ratio[k])) bad += " ratio c^" + std::to_string(k) + ";";
    os[k % 3].add_term(c.fix_V, 0, c.ratio);
    if (!c.limit) {
      bad += " divergent limit at c^" + std::to_string(k) + ";";
      continue;
    }
    CycBivar want;
    if (k == 0) {
      want.add_term(1, 1, Cyclotomic(1));
      want.add_term(0, 1, Cyclotomic(1));
    }
    if (!(*c.limit == want)) bad += " main limit c^" + std::to_string(k) + " is " + c.limit->str() + ";";
    main[k % 3] += *c.limit;
  }
  CycBivar q_plus_1;
  q_plus_1.add_term(1, 0, Cyclotomic(1));
  q_plus_1.add_term(0, 0, Cyclotomic(1));
  if (!(os[0] == q_plus_1) || !os[1].is_zero() || !os[2].is_zero()) bad += " OS coset sums;";
  // whole qt+t sits on the identity coset, and it equals the coset slice
  for (int c = 0; c < 3; ++c) {
    int rep = 0;
    for (int g = 0; g < G.order(); ++g)
      if (power_of(g) == c) rep = g;
    if (!(coset_slice(P, s5, P.N().coset_of[rep]) == main[c])) bad += " coset slice " + std::to_string(c) + ";";
  }
  if (!(to_rational(main[0]) == linear_factor_product({{1, 0}}))) bad += " identity coset is not qt+t;";
  return bad;
}

Outcome cyclic_sweep() {
  auto t0 = Clock::now();
  auto plan = cli::cyclic_plan(12);
  SweepTally t = tally(cli::run_plan(plan));
  double secs = seconds_since(t0);
  std::string display = cyclic_display_problems();
  bool have = t.by_identity.count("main") && t.by_identity.count("cyclic-closed-form") &&
              t.by_identity.count("numerology") && t.by_identity.count("coset");
  std::ostringstream os;
  os << plan.tasks.size() << " (C_a, C_d) pairs, " << counts(t) << ", " << secs << " s";
  if (!display.empty()) os << "; display:" << display;
  if (secs > 30) os << "; over the 30 s budget";
  return {t.failures.empty() && display.empty() && have && secs <= 30, os.str()};
}

// case (d): G(2a,2,2) over G(a,d,2) or its primed copy, literal form, s > a
bool documented_erratum(VerificationReport const &r, SweepTally const &t) {
  if (r.identity != "fake-tensor") return false;
  int ab = 0, b = 0, rank = 0;
  if (std::sscanf(r.group.c_str(), "G(%d,%d,%d)", &ab, &b, &rank) != 3) return false;
  if (b != 2 || rank != 2) return false;
  int a = ab / 2;
  if (r.subgroup.rfind("G(" + std::to_string(a) + ",", 0) != 0) return false;
  if (r.sigma <= a) return false;
  return t.passed_keys.count("fake-tensor-corrected|" + r.group + "|" + r.subgroup + "|" + std::to_string(r.sigma));
}

Outcome imprimitive_sweep() {
  auto t0 = Clock::now();
  auto plan = cli::imprimitive_plan(6, 3);
  SweepTally t = tally(cli::run_plan(plan));
  double secs = seconds_since(t0);
  bool have = t.by_identity.count("main") && t.by_identity.count("numerology") &&
              t.by_identity.count("infinite-exponents") && t.by_identity.count("fake-tensor");
  int erratum = 0;
  std::vector<std::string> other;
  for (auto const &r : t.failures) {
    if (documented_erratum(r, t))
      ++erratum;
    else
      other.push_back(r.identity + " " + r.group + " " + r.subgroup + " s=" + std::to_string(r.sigma));
  }
  std::ostringstream os;
  os << plan.groups.size() << " groups, " << plan.tasks.size() << " (G, N) pairs, " << counts(t) << ", " << secs
     << " s";
  if (erratum)
    os << "; " << erratum
       << " literal fake-tensor reports fail for G(2a,2,2) over G(a,d,2) with s > a (the corrected form passes on "
          "each)";
  for (auto const &o : other) os << "; FAIL " << o;
  Outcome out;
  out.pass = t.failures.empty() && have && secs <= 600;
  out.tolerated = !out.pass && other.empty() && have && secs <= 600;
  out.detail = os.str();
  return out;
}

Outcome f4() {
  GroupSpec spec = parse_group_spec("g28");
  ReflectionGroup G = resolve_group(spec);
  NormalPair P(G, select_normal(G, spec, "short-roots"));
  GaloisAuto one = resolve_sigma(G, spec, 1);
  Numerology n = numerology(P, one);
  std::string l1 = n.line_exponents(), l2 = n.line_E(), l3 = n.line_degrees();
  bool lines = l1 == "(1,5,3,3)+(0,0,4,8)=(1,5,7,11)" && l2 == "(2,6,4,4)*(0,0,1,2)=(0,0,4,8)" &&
               l3 == "(2,6,4,4)*(1,1,2,3)=(2,6,8,12)";
  bool hold = n.exponents_hold() && n.E_holds() && n.degrees_hold();
  VerificationReport m = verify_main(P, one);
  std::string detail = l1 + "; " + l2 + "; " + l3 + "; main " + (m.pass ? "holds" : "fails: " + m.lhs + " vs " + m.rhs);
  return {lines && hold && m.pass, detail};
}

Outcome classification() {
  std::vector<std::string> bad;
  auto proper = [](ReflectionGroup const &G) {
    std::vector<NormalSubgroupHandle> out;
    for (auto &N : normal_reflection_subgroups(G))
      if (!N.is_whole() && !N.is_trivial()) out.push_back(std::move(N));
    return out;
  };
  auto g422 = proper(make_imprimitive(4, 2, 2));
  int o8 = 0, o4 = 0;
  for (auto const &N : g422) {
    o8 += N.order() == 8;
    o4 += N.order() == 4;
  }
  if (!(o8 == 3 && o4 == 3 && g422.size() == 6)) bad.push_back("G(4,2,2)");

  GroupSpec spec = parse_group_spec("g15");
  ReflectionGroup G15 = resolve_group(spec);
  auto g15 = proper(G15);
  auto N12 = select_normal(G15, spec, "g12");
  bool has12 = false;
  for (auto const &N : g15) has12 = has12 || N.members == N12.members;
  if (!(g15.size() == 6 && has12)) bad.push_back("G15");

  for (int a = 1; a <= 12; ++a) {
    int divisors = 0;
    for (int d = 2; d <= a; ++d) divisors += a % d == 0;
    if (int(normal_reflection_subgroups(make_cyclic(a)).size()) != divisors) bad.push_back("C" + std::to_string(a));
  }
  std::ostringstream os;
  os << "G(4,2,2): " << o8 << " of order 8, " << o4 << " of order 4; G15: " << g15.size()
     << " proper, G12 " << (has12 ? "among them" : "missing") << "; C_a for a <= 12: one per divisor d > 1";
  for (auto const &b : bad) os << "; mismatch " << b;
  return {bad.empty(), os.str()};
}

// counts test cases that actually start, so an empty filter cannot pass
struct StartCounter : doctest::IReporter {
  static inline int started = 0;
  explicit StartCounter(doctest::ContextOptions const &) {}
  void report_query(doctest::QueryData const &) override {}
  void test_run_start() override {}
  void test_run_end(doctest::TestRunStats const &) override {}
  void test_case_start(doctest::TestCaseData const &) override { ++started; }
  void test_case_reenter(doctest::TestCaseData const &) override {}
  void test_case_end(doctest::CurrentTestCaseStats const &) override {}
  void test_case_exception(doctest::TestCaseException const &) override {}
  void subcase_start(doctest::SubcaseSignature const &) override {}
  void subcase_end() override {}
  void log_assert(doctest::AssertData const &) override {}
  void log_message(doctest::MessageData const &) override {}
  void test_case_skipped(doctest::TestCaseData const &) override {}
};
REGISTER_LISTENER("start-counter", 1, StartCounter);

Outcome properties() {
  std::vector<std::string> cases = {"field laws on random elements",
                                    "eigen multisets and characteristic polynomials reconstruct",
                                    "degree deconvolution round-trips",
                                    "|G| is the product of the degrees for every bundled group",
                                    "fix_U >= fix_E on every element",
                                    "coset slices reassemble the sum side",
                                    "t = 1 and the r-th t-derivative",
                                    "amenability"};
  std::string filter;
  for (auto const &c : cases) filter += (filter.empty() ? "" : ",") + c;
  doctest::Context ctx;
  ctx.setOption("test-case", filter.c_str());
  ctx.setOption("out", "/dev/null");
  ctx.setOption("no-version", true);
  StartCounter::started = 0;
  int rc = ctx.run();
  std::ostringstream os;
  os << StartCounter::started << "/" << cases.size() << " property cases ran, seed " << reflekt::test::seed();
  return {rc == 0 && StartCounter::started == int(cases.size()), os.str() + (rc ? ", with failures" : "")};
}

} // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"g15 over g12 table golden reproduction", table2},
      {"worked example (G15 over G12, sigma13)", worked_example},
      {"cyclic sweep a <= 12", cyclic_sweep},
      {"imprimitive sweep ab <= 6, r <= 3", imprimitive_sweep},
      {"F4 example (G28 over short-root D4)", f4},
      {"classification counts", classification},
      {"property suites", properties},
  };
  int failed = 0, tolerated = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.detail << " ["
              << seconds_since(t0) << " s]" << std::endl;
    if (!o.pass) (o.tolerated ? tolerated : failed)++;
  }
  std::cout << "acceptance: " << criteria.size() - failed - tolerated << "/" << criteria.size() << " pass";
  if (tolerated) std::cout << "; " << tolerated << " red through the documented case (d) erratum only";
  std::cout << std::endl;
  return failed ? 1 : 0;
}
