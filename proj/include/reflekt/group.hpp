#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "reflekt/kernels.hpp"
#include "reflekt/matrix.hpp"

namespace reflekt {

struct NotNormal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Finite matrix group, stored as its action on V* (column convention:
// g(x_j) = sum_i P(i,j) x_i, so P(gh) = P(g) P(h)).
class ReflectionGroup {
public:
  ReflectionGroup() = default;

  // gens act on V* when on_dual is true, on V otherwise
  static ReflectionGroup generate(std::vector<CycMatrix> const &gens, bool on_dual, int cap = 200000,
                                  std::string name = "");

  std::string const &name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  int rank() const { return rank_; }
  int order() const { return int(elems_.size()); }
  // field generated by the matrix entries
  int conductor() const { return conductor_; }
  // lcm of element orders
  int exponent() const { return exponent_; }
  // field holding entries and eigenvalues; Galois exponents live mod this
  int working_conductor() const { return int(lcm_int(conductor_, exponent_)); }

  CycMatrix const &element(int i) const { return elems_[i]; }
  CycMatrix on_V(int i) const;
  std::vector<int> const &generators() const { return gens_; }
  int index_of(CycMatrix const &m) const;
  int mul(int i, int j) const;
  int inv(int i) const { return inv_[i]; }
  int conjugate(int g, int x) const { return mul(mul(g, x), inv(g)); }
  std::vector<std::uint8_t> const &word(int i) const { return word_[i]; }

  // eigenvalues on V*
  EigenMultiset const &eigen(int i) const { return eigen_[i]; }
  int element_order(int i) const { return eigen_[i].order; }
  int fix(int i) const { return eigen_[i].fixed(); }
  bool is_reflection(int i) const { return i != 0 && fix(i) == rank_ - 1; }

  std::vector<int> const &reflections() const { return reflections_; }
  std::vector<std::vector<int>> const &reflection_classes() const { return classes_; }
  int class_of_reflection(int i) const;

  // BFS closure of the given element indices inside this group
  std::vector<int> closure(std::vector<int> const &gens) const;
  bool all_unitary() const;

private:
  void finish(kernels::Exec exec);

  std::string name_;
  int rank_ = 0;
  int conductor_ = 1;
  int exponent_ = 1;
  std::vector<CycMatrix> elems_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> gens_;
  std::vector<std::vector<int>> rmul_; // rmul_[i][k] = i * gens_[k]
  std::vector<std::vector<std::uint8_t>> word_;
  std::vector<int> inv_;
  std::vector<EigenMultiset> eigen_;
  std::vector<int> reflections_;
  std::vector<std::vector<int>> classes_;
};

struct HyperplaneOrbit {
  std::vector<int> reflections;
};

std::vector<HyperplaneOrbit> hyperplane_orbits(ReflectionGroup const &G);

struct NormalSubgroupHandle {
  ReflectionGroup const *parent = nullptr;
  std::vector<char> member;
  std::vector<int> members;
  std::vector<int> generators; // element indices of parent
  std::vector<int> classes;    // reflection classes of parent contained in it
  std::vector<int> coset_reps; // least index in each coset, ascending
  std::vector<int> coset_of;   // element -> position in coset_reps
  std::string label;

  int order() const { return int(members.size()); }
  int quotient_order() const { return int(coset_reps.size()); }
  bool contains(int g) const { return member[g] != 0; }
  bool is_trivial() const { return members.size() == 1; }
  bool is_whole() const { return int(members.size()) == parent->order(); }
  // elements of the coset of g, ascending
  std::vector<int> coset(int coset_id) const;
};

// closes <gens>, checks normality, builds the coset table
NormalSubgroupHandle make_normal_subgroup(ReflectionGroup const &G, std::vector<int> const &gens, std::string label = "");
// exhaustive g n g^-1 check over all pairs
bool normality_exhaustive(NormalSubgroupHandle const &N);
std::vector<NormalSubgroupHandle> normal_reflection_subgroups(ReflectionGroup const &G, int max_classes = 16);
// standalone group made of N's elements; to_parent maps its indices to G's
ReflectionGroup subgroup_as_group(NormalSubgroupHandle const &N, std::vector<int> *to_parent = nullptr);

} // namespace reflekt
