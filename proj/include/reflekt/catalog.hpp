#pragma once

#include <string>
#include <vector>

#include "reflekt/group.hpp"
#include "reflekt/series.hpp"

namespace reflekt {

struct GroupSpec {
  enum class Family { cyclic, imprimitive, file };
  Family family = Family::cyclic;
  std::string name;
  int ab = 1, b = 1, r = 1; // cyclic: ab = a
  std::string path;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// REFLEKT_DATA_DIR or the compiled-in default
std::string data_dir();

// "C6", "G(6,1,2)", a bundled name such as "g15", or a path to a .json file
GroupSpec parse_group_spec(std::string const &text);
ReflectionGroup resolve_group(GroupSpec const &spec);

ReflectionGroup make_cyclic(int a);
ReflectionGroup make_imprimitive(int ab, int b, int r);
// generators on V of the standard G(ab,b,r)
std::vector<CycMatrix> imprimitive_generators(int ab, int b, int r);

ReflectionGroup load_group(std::string const &path);
void save_group(ReflectionGroup const &G, std::string const &path, std::string const &provenance);
std::string group_to_text(ReflectionGroup const &G, std::string const &provenance);
ReflectionGroup group_from_text(std::string const &text, std::string const &origin = "<string>");

// index in G of the element acting on V by A, or -1
int index_of_V(ReflectionGroup const &G, CycMatrix const &A);

// "trivial", "whole", "classes:i,j", "(C_d)^r", "C_d", "G(m,p,r)", "G(m,p,2)'"
// (the conjugate copy by diag(1, zeta_2a)), "short-roots", "long-roots",
// or a bundled group name whose generators lie in G
NormalSubgroupHandle select_normal(ReflectionGroup const &G, GroupSpec const &spec, std::string const &selector);

struct Fingerprint {
  std::string label;
  int order = 0;
  DegreeMultiset degrees;
  int reflections = 0;
  bool operator<(Fingerprint const &o) const;
  bool same_shape(Fingerprint const &o) const { return order == o.order && degrees == o.degrees; }
};

struct ClassificationReport {
  std::string group;
  std::vector<Fingerprint> found;    // every normal reflection subgroup, G included
  std::vector<Fingerprint> expected; // empty when there is no reference list
  std::vector<Fingerprint> missing;
  std::vector<Fingerprint> unexpected;
  bool has_reference = false;
  bool complete() const { return has_reference && missing.empty(); }
};

DegreeMultiset imprimitive_degrees(int m, int p, int r);
std::vector<Fingerprint> predicted_normals(GroupSpec const &spec);
ClassificationReport classify(ReflectionGroup const &G, GroupSpec const &spec);

} // namespace reflekt
