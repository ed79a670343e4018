#include "reflekt/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace reflekt {

namespace {

CycMatrix invert_element(CycMatrix const &P) {
  CycMatrix c = P.conj_transpose();
  if (mat_mul(P, c).is_identity()) return c;
  return mat_inverse(P);
}

} // namespace

ReflectionGroup ReflectionGroup::generate(std::vector<CycMatrix> const &gens, bool on_dual, int cap,
                                          std::string name) {
  if (gens.empty()) throw std::invalid_argument("generate: need at least one generator");
  ReflectionGroup G;
  G.name_ = std::move(name);
  G.rank_ = gens[0].rows();
  std::vector<CycMatrix> P;
  std::int64_t m = 1;
  for (auto const &g : gens) {
    if (!g.is_square() || g.rows() != G.rank_) throw SizeMismatch("generators must be square of equal size");
    P.push_back(on_dual ? g : mat_inverse(g).transpose());
    m = lcm_int(m, P.back().conductor());
  }
  G.conductor_ = int(m);
  for (auto const &p : P) reflekt::element_order(p, 10000); // finite order or CapExceeded

  G.elems_.push_back(CycMatrix::identity(G.rank_));
  G.index_[G.elems_[0].key(G.conductor_)] = 0;
  G.word_.push_back({});
  for (std::size_t head = 0; head < G.elems_.size(); ++head) {
    std::vector<int> row(P.size());
    for (std::size_t k = 0; k < P.size(); ++k) {
      CycMatrix prod = mat_mul(G.elems_[head], P[k]);
      std::string key = prod.key(G.conductor_);
      auto it = G.index_.find(key);
      if (it != G.index_.end()) {
        row[k] = it->second;
        continue;
      }
      if (int(G.elems_.size()) >= cap) throw CapExceeded("group order exceeds cap " + std::to_string(cap));
      int idx = int(G.elems_.size());
      G.index_.emplace(std::move(key), idx);
      G.elems_.push_back(std::move(prod));
      auto w = G.word_[head];
      w.push_back(std::uint8_t(k));
      G.word_.push_back(std::move(w));
      row[k] = idx;
    }
    G.rmul_.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < P.size(); ++k) G.gens_.push_back(G.index_of(P[k]));
  G.finish(kernels::Exec::parallel);
  return G;
}

void ReflectionGroup::finish(kernels::Exec exec) {
  int n = order();
  inv_ = kernels::map<int>(
      std::size_t(n), [&](std::size_t i) { return index_of(invert_element(elems_[i])); }, exec);
  for (int i = 0; i < n; ++i)
    if (inv_[i] < 0) throw ArithmeticInvariantError("group not closed under inverses");
  eigen_ = kernels::map<EigenMultiset>(
      std::size_t(n), [&](std::size_t i) { return eigen_multiset(elems_[i]); }, exec);
  std::int64_t e = 1;
  for (auto const &em : eigen_) e = lcm_int(e, em.order);
  exponent_ = int(e);
  reflections_.clear();
  for (int i = 1; i < n; ++i)
    if (is_reflection(i)) reflections_.push_back(i);

  classes_.clear();
  std::vector<int> cls(n, -1);
  for (int r : reflections_) {
    if (cls[r] >= 0) continue;
    int id = int(classes_.size());
    std::vector<int> orbit{r};
    cls[r] = id;
    for (std::size_t h = 0; h < orbit.size(); ++h)
      for (int g : gens_) {
        int y = conjugate(g, orbit[h]);
        if (cls[y] < 0) {
          cls[y] = id;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes_.push_back(std::move(orbit));
  }
}

CycMatrix ReflectionGroup::on_V(int i) const { return elems_[inv_[i]].transpose(); }

int ReflectionGroup::index_of(CycMatrix const &m) const {
  if (m.rows() != rank_) return -1;
  auto it = index_.find(m.key(conductor_));
  return it == index_.end() ? -1 : it->second;
}

int ReflectionGroup::mul(int i, int j) const {
  int r = i;
  for (std::uint8_t k : word_[j]) r = rmul_[r][k];
  return r;
}

int ReflectionGroup::class_of_reflection(int i) const {
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (std::binary_search(classes_[c].begin(), classes_[c].end(), i)) return int(c);
  return -1;
}

std::vector<int> ReflectionGroup::closure(std::vector<int> const &gens) const {
  std::vector<char> seen(order(), 0);
  std::vector<int> out{0};
  seen[0] = 1;
  for (std::size_t h = 0; h < out.size(); ++h)
    for (int g : gens) {
      int y = mul(out[h], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool ReflectionGroup::all_unitary() const {
  for (int g : gens_)
    if (!is_unitary(elems_[g])) return false;
  return true;
}

std::vector<HyperplaneOrbit> hyperplane_orbits(ReflectionGroup const &G) {
  auto const &refl = G.reflections();
  std::map<int, int> pos;
  for (std::size_t i = 0; i < refl.size(); ++i) pos[refl[i]] = int(i);
  std::vector<int> parent(refl.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  int r = G.rank();
  std::map<std::string, int> by_plane;
  for (std::size_t i = 0; i < refl.size(); ++i) {
    CycMatrix A = G.on_V(refl[i]) - CycMatrix::identity(r);
    Subspace h(r, kernel(A));
    std::string key;
    for (auto const &v : h.basis())
      for (auto const &c : v) key += c.key(G.working_conductor()) + ";";
    auto [it, fresh] = by_plane.try_emplace(key, int(i));
    if (!fresh) unite(int(i), it->second);
  }
  for (auto const &cls : G.reflection_classes())
    for (std::size_t k = 1; k < cls.size(); ++k) unite(pos[cls[k]], pos[cls[0]]);
  std::map<int, HyperplaneOrbit> orbits;
  for (std::size_t i = 0; i < refl.size(); ++i) orbits[find(int(i))].reflections.push_back(refl[i]);
  std::vector<HyperplaneOrbit> out;
  for (auto &[k, o] : orbits) out.push_back(std::move(o));
  std::sort(out.begin(), out.end(),
            [](HyperplaneOrbit const &a, HyperplaneOrbit const &b) { return a.reflections[0] < b.reflections[0]; });
  return out;
}

std::vector<int> NormalSubgroupHandle::coset(int coset_id) const {
  std::vector<int> out;
  for (int g = 0; g < parent->order(); ++g)
    if (coset_of[g] == coset_id) out.push_back(g);
  return out;
}

NormalSubgroupHandle make_normal_subgroup(ReflectionGroup const &G, std::vector<int> const &gens, std::string label) {
  NormalSubgroupHandle N;
  N.parent = &G;
  N.label = std::move(label);
  N.generators = gens;
  N.members = G.closure(gens);
  N.member.assign(G.order(), 0);
  for (int m : N.members) N.member[m] = 1;
  for (int g : G.generators())
    for (int n : N.members)
      if (!N.member[G.conjugate(g, n)]) throw NotNormal("subgroup is not normal");
  auto const &classes = G.reflection_classes();
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (N.member[classes[c][0]]) N.classes.push_back(int(c));
  N.coset_of.assign(G.order(), -1);
  for (int g = 0; g < G.order(); ++g) {
    if (N.coset_of[g] >= 0) continue;
    int id = int(N.coset_reps.size());
    N.coset_reps.push_back(g);
    for (int n : N.members) N.coset_of[G.mul(g, n)] = id;
  }
  return N;
}

bool normality_exhaustive(NormalSubgroupHandle const &N) {
  ReflectionGroup const &G = *N.parent;
  for (int g = 0; g < G.order(); ++g)
    for (int n : N.members)
      if (!N.member[G.conjugate(g, n)]) return false;
  return true;
}

std::vector<NormalSubgroupHandle> normal_reflection_subgroups(ReflectionGroup const &G, int max_classes) {
  auto const &classes = G.reflection_classes();
  int k = int(classes.size());
  if (k > max_classes) throw CapExceeded(std::to_string(k) + " reflection classes exceed the cap");
  std::vector<NormalSubgroupHandle> out;
  std::set<std::vector<int>> seen;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> refl;
    for (int c = 0; c < k; ++c)
      if (mask & (1u << c)) refl.insert(refl.end(), classes[c].begin(), classes[c].end());
    std::sort(refl.begin(), refl.end());
    std::vector<int> gens;
    std::vector<char> in(G.order(), 0);
    in[0] = 1;
    for (int r : refl) {
      if (in[r]) continue;
      gens.push_back(r);
      for (int m : G.closure(gens)) in[m] = 1;
    }
    std::vector<int> members;
    for (int g = 0; g < G.order(); ++g)
      if (in[g]) members.push_back(g);
    if (!seen.insert(members).second) continue;
    out.push_back(make_normal_subgroup(G, gens));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::string cl;
    for (int c : out[i].classes) cl += (cl.empty() ? "" : ",") + std::to_string(c);
    out[i].label = "classes:" + cl;
  }
  return out;
}

ReflectionGroup subgroup_as_group(NormalSubgroupHandle const &N, std::vector<int> *to_parent) {
  ReflectionGroup const &G = *N.parent;
  std::vector<CycMatrix> gens;
  for (int g : N.generators) gens.push_back(G.element(g));
  if (gens.empty()) gens.push_back(CycMatrix::identity(G.rank()));
  ReflectionGroup H = ReflectionGroup::generate(gens, true, G.order() + 1, N.label);
  if (H.order() != N.order()) throw ArithmeticInvariantError("subgroup regeneration changed the order");
  if (to_parent) {
    to_parent->resize(H.order());
    for (int i = 0; i < H.order(); ++i) (*to_parent)[i] = G.index_of(H.element(i));
  }
  return H;
}

} // namespace reflekt
