#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "reflekt/catalog.hpp"
#include "reflekt/invariants.hpp"
#include "support.hpp"

using namespace reflekt;

namespace {

bool same_elements(ReflectionGroup const &a, ReflectionGroup const &b) {
  if (a.order() != b.order()) return false;
  for (int g = 0; g < a.order(); ++g)
    if (b.index_of(a.element(g)) < 0) return false;
  return true;
}

} // namespace

TEST_SUITE("catalog") {

TEST_CASE("group specs") {
  CHECK(parse_group_spec("C6").family == GroupSpec::Family::cyclic);
  CHECK(parse_group_spec("c_12").ab == 12);
  GroupSpec g = parse_group_spec("G(6, 2, 3)");
  CHECK(g.family == GroupSpec::Family::imprimitive);
  CHECK((g.ab == 6 && g.b == 2 && g.r == 3));
  CHECK(parse_group_spec("g15").family == GroupSpec::Family::file);
  CHECK_THROWS_AS(parse_group_spec("G(6,4,2)"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("C0"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("nonesuch"), ParseError);
}

TEST_CASE("file round trip") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / ("reflekt_rt_" + std::to_string(test::seed() % 1000000) + ".json");
  for (std::string name : {"G(4,2,2)", "C6", "g12", "G(3,1,3)"}) {
    ReflectionGroup G = resolve_group(parse_group_spec(name));
    ReflectionGroup H = group_from_text(group_to_text(G, "round trip"));
    CHECK(same_elements(G, H));
    save_group(G, tmp.string(), "round trip");
    ReflectionGroup K = load_group(tmp.string());
    CHECK(same_elements(G, K));
    CHECK(degrees(K) == degrees(G));
  }
  fs::remove(tmp);
}

TEST_CASE("malformed group files") {
  CHECK_THROWS_AS(group_from_text("{"), ParseError);
  CHECK_THROWS_AS(group_from_text(R"({"name":"x","conductor":1,"rank":1,"acts_on":"W","generators":[]})"), ParseError);
  // 2 is not unitary
  CHECK_THROWS_AS(
      group_from_text(R"({"name":"x","conductor":1,"rank":1,"acts_on":"V","generators":[[[[[0,2,1]]]]]})"),
      ParseError);
  CHECK_THROWS_AS(load_group("/nonexistent/file.json"), ParseError);
}

TEST_CASE("V-side files agree with V*-side files") {
  // the same C4 written both ways
  ReflectionGroup a = group_from_text(R"({"name":"a","conductor":4,"rank":1,"acts_on":"V","generators":[[[[[1,1,1]]]]]})");
  ReflectionGroup b =
      group_from_text(R"({"name":"b","conductor":4,"rank":1,"acts_on":"V_dual","generators":[[[[[3,1,1]]]]]})");
  CHECK(same_elements(a, b));
  CHECK(a.element(a.generators()[0]) == b.element(b.generators()[0]));
}

TEST_CASE("data directory override") {
  char const *old = std::getenv("REFLEKT_DATA_DIR");
  std::string keep = old ? old : "";
  setenv("REFLEKT_DATA_DIR", "/nonexistent", 1);
  CHECK(data_dir() == "/nonexistent");
  CHECK_THROWS_AS(resolve_group(parse_group_spec("g15")), ParseError);
  if (old)
    setenv("REFLEKT_DATA_DIR", keep.c_str(), 1);
  else
    unsetenv("REFLEKT_DATA_DIR");
  CHECK(resolve_group(parse_group_spec("g12")).order() == 48);
}

TEST_CASE("selectors") {
  GroupSpec spec = parse_group_spec("G(4,2,2)");
  ReflectionGroup G = resolve_group(spec);
  CHECK(select_normal(G, spec, "trivial").order() == 1);
  CHECK(select_normal(G, spec, "whole").order() == 16);
  CHECK(select_normal(G, spec, "(C_2)^2").order() == 4);
  auto plain = select_normal(G, spec, "G(2,1,2)"), primed = select_normal(G, spec, "G(2,1,2)'");
  CHECK(plain.order() == 8);
  CHECK(primed.order() == 8);
  CHECK(plain.members != primed.members);
  CHECK(select_normal(G, spec, "classes:0").order() == 4);
  CHECK_THROWS_AS(select_normal(G, spec, "classes:9"), ParseError);
  CHECK_THROWS_AS(select_normal(G, spec, "(C_2)^3"), ParseError);
  CHECK_THROWS_AS(select_normal(G, spec, "bogus"), ParseError);

  GroupSpec f4 = parse_group_spec("g28");
  ReflectionGroup F4 = resolve_group(f4);
  auto s = select_normal(F4, f4, "short-roots"), l = select_normal(F4, f4, "long-roots");
  CHECK(s.order() == 192);
  CHECK(l.order() == 192);
  CHECK(s.members != l.members);
}

TEST_CASE("classification against the references") {
  for (std::string name : {"g15", "g12", "g28", "G(4,2,2)", "G(6,1,3)", "G(6,3,2)", "C12"}) {
    GroupSpec spec = parse_group_spec(name);
    ClassificationReport c = classify(resolve_group(spec), spec);
    CAPTURE(name);
    CHECK(c.has_reference);
    CHECK(c.complete());
  }
  CHECK(predicted_normals(parse_group_spec("C12")).size() == 5);
  ClassificationReport g15 = classify(resolve_group(parse_group_spec("g15")), parse_group_spec("g15"));
  CHECK(g15.found.size() == 7);
  CHECK(g15.unexpected.empty());
}

}
