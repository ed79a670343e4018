#include "reflekt/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace reflekt {

TruncSeries inverse_det_series(EigenMultiset const &e, int T) {
  return TruncSeries::from_poly(det_one_minus_xg(e), T).inverse();
}

TruncSeries averaged_molien(std::vector<EigenMultiset> const &eig, std::vector<Cyclotomic> const *w, int T,
                            kernels::Exec exec) {
  if (eig.empty()) throw std::invalid_argument("averaged_molien over an empty set");
  Cyclotomic scale(Rational(1, std::int64_t(eig.size())));
  if (exec == kernels::Exec::serial) {
    TruncSeries acc(T);
    for (std::size_t i = 0; i < eig.size(); ++i) {
      TruncSeries s = inverse_det_series(eig[i], T);
      acc += w ? s.scaled((*w)[i]) : s;
    }
    return acc.scaled(scale);
  }
  std::vector<std::size_t> first;
  std::vector<Cyclotomic> weight;
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < eig.size(); ++i) {
    auto [it, fresh] = slot.try_emplace(eig[i].key(), first.size());
    if (fresh) {
      first.push_back(i);
      weight.push_back(Cyclotomic());
    }
    weight[it->second] += w ? (*w)[i] : Cyclotomic(1);
  }
  TruncSeries acc = kernels::reduce(
      first.size(), TruncSeries(T),
      [&](TruncSeries &a, std::size_t b) {
        if (!weight[b].is_zero()) a += inverse_det_series(eig[first[b]], T).scaled(weight[b]);
      },
      [](TruncSeries &a, TruncSeries &&b) { a += b; }, exec);
  return acc.scaled(scale);
}

int molien_truncation(std::int64_t n, int r) {
  std::vector<std::int64_t> div;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) div.push_back(d);
  std::sort(div.rbegin(), div.rend());
  std::int64_t T = 0;
  for (int i = 0; i < r && i < int(div.size()); ++i) T += div[i];
  return int(std::max<std::int64_t>(T, 1));
}

DegreeMultiset degrees_of(std::vector<EigenMultiset> const &eig, int r) {
  std::int64_t n = std::int64_t(eig.size());
  try {
    return deconvolve_degrees(averaged_molien(eig, nullptr, molien_truncation(n, r)), r);
  } catch (DeconvolutionError const &) {
    return deconvolve_degrees(averaged_molien(eig, nullptr, int(r * n)), r);
  }
}

TruncSeries molien(ReflectionGroup const &G, int T) {
  std::vector<EigenMultiset> eig;
  for (int i = 0; i < G.order(); ++i) eig.push_back(G.eigen(i));
  if (T < 0) T = molien_truncation(G.order(), G.rank());
  return averaged_molien(eig, nullptr, T);
}

DegreeMultiset degrees(ReflectionGroup const &G) {
  std::vector<EigenMultiset> eig;
  for (int i = 0; i < G.order(); ++i) eig.push_back(G.eigen(i));
  DegreeMultiset d = degrees_of(eig, G.rank());
  std::int64_t prod = 1;
  for (int x : d) prod *= x;
  if (prod != G.order())
    throw ArithmeticInvariantError("degrees " + join_ints(d) + " do not multiply to |G| = " + std::to_string(G.order()));
  return d;
}

ExponentMultiset fake_degree_dual(std::vector<EigenMultiset> const &eig, DegreeMultiset const &d,
                                  std::vector<Cyclotomic> const &chi_dual) {
  int T = 0;
  for (int x : d) T += x - 1;
  TruncSeries f = averaged_molien(eig, &chi_dual, T);
  for (int x : d) f = f - f.shifted(x);
  ExponentMultiset out;
  for (int k = 0; k <= T; ++k) {
    if (f[k].is_zero()) continue;
    if (!f[k].is_rational() || !f[k].rational().is_integer() || f[k].rational().sign() < 0)
      throw ArithmeticInvariantError("fake degree coefficient " + f[k].str() + " at q^" + std::to_string(k) +
                                     " is not a nonnegative integer");
    for (std::int64_t i = 0; i < f[k].rational().to_int64(); ++i) out.push_back(k);
  }
  if (!chi_dual[0].is_rational() || chi_dual[0].rational().to_int64() != std::int64_t(out.size()))
    throw ArithmeticInvariantError("fake degree has " + std::to_string(out.size()) + " terms for a module of dimension " +
                                   chi_dual[0].str());
  return out;
}

ExponentMultiset fake_degree(ReflectionGroup const &G, DegreeMultiset const &d, CharacterTable const &chi) {
  std::vector<EigenMultiset> eig;
  std::vector<Cyclotomic> dual;
  for (int i = 0; i < G.order(); ++i) {
    eig.push_back(G.eigen(i));
    dual.push_back(chi.values.at(i).conj());
  }
  return fake_degree_dual(eig, d, dual);
}

int amenability_defect(std::vector<EigenMultiset> const &eig, DegreeMultiset const &d,
                       std::vector<Cyclotomic> const &chi_dual, std::vector<Cyclotomic> const &det_dual) {
  ExponentMultiset e = fake_degree_dual(eig, d, chi_dual);
  ExponentMultiset top = fake_degree_dual(eig, d, det_dual);
  int defect = std::accumulate(e.begin(), e.end(), 0) - top.at(0);
  if (defect < 0) throw ArithmeticInvariantError("negative amenability defect " + std::to_string(defect));
  return defect;
}

Cyclotomic sigma_trace(EigenMultiset const &e, std::int64_t s) {
  std::vector<std::pair<std::int64_t, Rational>> terms;
  for (int j = 0; j < int(e.mult.size()); ++j)
    if (e.mult[j]) terms.push_back({std::int64_t(j) * s, Rational(e.mult[j])});
  return Cyclotomic::from_terms(e.order, terms);
}

Cyclotomic sigma_det(EigenMultiset const &e, std::int64_t s) {
  std::int64_t k = 0;
  for (int j = 0; j < int(e.mult.size()); ++j) k += std::int64_t(j) * e.mult[j];
  return Cyclotomic::root(e.order, ((k % e.order) * (s % e.order)) % e.order);
}

GaloisAuto lift_sigma(int m, std::int64_t s, std::int64_t base) {
  if (std::gcd(s, base) != 1) throw std::invalid_argument("sigma exponent " + std::to_string(s) + " not coprime to " + std::to_string(base));
  std::int64_t t = s;
  while (std::gcd(t, std::int64_t(m)) != 1) t += base;
  return GaloisAuto(m, t);
}

std::vector<std::int64_t> valid_sigmas(int m) {
  if (m <= 2) return {1};
  std::vector<std::int64_t> out;
  for (std::int64_t s = 1; s < m; ++s)
    if (std::gcd(s, std::int64_t(m)) == 1) out.push_back(s);
  return out;
}

NormalPair::NormalPair(ReflectionGroup const &G, NormalSubgroupHandle N) : G_(G), N_(std::move(N)) {
  for (int i = 0; i < G.order(); ++i) eig_G_.push_back(G.eigen(i));
  for (int n : N_.members) eig_N_.push_back(G.eigen(n));
  inv_ = std::make_unique<InvariantCache>(G_, N_);
}

GaloisAuto NormalPair::sigma(std::int64_t s) const {
  int m = working_conductor();
  return lift_sigma(m, s, m);
}

DegreeMultiset const &NormalPair::degrees_G() {
  if (!dG_) dG_ = degrees(G_);
  return *dG_;
}

DegreeMultiset const &NormalPair::degrees_N() {
  if (!dN_) {
    DegreeMultiset d = degrees_of(eig_N_, rank());
    std::int64_t prod = 1;
    for (int x : d) prod *= x;
    if (prod != N_.order()) throw ArithmeticInvariantError("degrees of N do not multiply to |N|");
    dN_ = d;
  }
  return *dN_;
}

QuotientModule const &NormalPair::E() {
  if (!E_) {
    E_ = std::make_unique<QuotientModule>(build_E(G_, N_, degrees_N(), *inv_));
    for (auto const &piece : E_->space.pieces) {
      std::vector<EigenMultiset> per;
      for (auto const &m : piece.coset_action) per.push_back(eigen_multiset(m));
      eig_E_piece_.push_back(std::move(per));
    }
  }
  return *E_;
}

CoinvariantCache &NormalPair::coinvariants() {
  if (!coinv_) coinv_ = std::make_unique<CoinvariantCache>(E(), rank());
  return *coinv_;
}

OSSpace const &NormalPair::U(GaloisAuto const &sigma) {
  auto &slot = U_[sigma.exponent];
  if (!slot) {
    slot = std::make_unique<OSSpace>(build_UNsigma(G_, N_, E(), sigma, coinvariants()));
    std::vector<std::vector<EigenMultiset>> per_piece;
    for (auto const &piece : slot->space.pieces) {
      std::vector<EigenMultiset> per;
      for (auto const &m : piece.coset_action) per.push_back(eigen_multiset(m));
      per_piece.push_back(std::move(per));
    }
    eig_U_piece_[sigma.exponent] = std::move(per_piece);
  }
  return *slot;
}

std::vector<int> NormalPair::coset_elements(int coset) const {
  std::vector<int> out;
  int g = N_.coset_reps.at(coset);
  for (int n : N_.members) out.push_back(G_.mul(n, g));
  return out;
}

std::vector<Cyclotomic> NormalPair::U_character_route(GaloisAuto const &sigma, int coset) {
  int bound = 0, dmax = 1;
  for (int d : degrees_N()) {
    bound += d - 1;
    dmax = std::max(dmax, d);
  }
  int T = bound + dmax;
  std::vector<EigenMultiset> eig;
  std::vector<Cyclotomic> w;
  for (int g : coset_elements(coset)) {
    eig.push_back(G_.eigen(g));
    w.push_back(sigma_trace(G_.eigen(g), sigma.exponent));
  }
  TruncSeries num = averaged_molien(eig, &w, T);
  TruncSeries den = averaged_molien(eig, nullptr, T);
  TruncSeries chi = num * den.inverse();
  for (int k = bound + 1; k <= T; ++k)
    if (!chi[k].is_zero()) throw ArithmeticInvariantError("U character route is not a polynomial of degree <= " + std::to_string(bound));
  return std::vector<Cyclotomic>(chi.coeffs().begin(), chi.coeffs().begin() + bound + 1);
}

ExponentMultiset NormalPair::twisted_exponents_of_N(GaloisAuto const &sigma) {
  OSSpace const &Us = U(sigma);
  for (int c = 0; c < N_.quotient_order(); ++c) {
    std::vector<Cyclotomic> chi = U_character_route(sigma, c);
    std::vector<Cyclotomic> expl(chi.size());
    for (auto const &piece : Us.space.pieces) expl.at(piece.degree) += piece.coset_action[c].trace();
    if (chi != expl)
      throw ArithmeticInvariantError("U^N_sigma: explicit and character routes disagree on coset " + std::to_string(c));
  }
  return Us.exponents;
}

int NormalPair::fix_E(int g) {
  E();
  int c = N_.coset_of[g], f = 0;
  for (auto const &per : eig_E_piece_) f += per[c].fixed();
  return f;
}

int NormalPair::fix_U(GaloisAuto const &sigma, int g) {
  U(sigma);
  int c = N_.coset_of[g], f = 0;
  for (auto const &per : eig_U_piece_[sigma.exponent]) f += per[c].fixed();
  return f;
}

CosetSpectrum NormalPair::coset_spectrum(GaloisAuto const &sigma, int coset) {
  QuotientModule const &Em = E();
  OSSpace const &Us = U(sigma);
  CosetSpectrum cs;
  cs.coset = coset;
  for (std::size_t p = 0; p < Em.space.pieces.size(); ++p)
    for (auto [o, j] : eig_E_piece_[p][coset].eigenvalues()) cs.E.push_back({o, j, Em.space.pieces[p].degree});
  auto const &per = eig_U_piece_[sigma.exponent];
  for (std::size_t p = 0; p < Us.space.pieces.size(); ++p)
    for (auto [o, j] : per[p][coset].eigenvalues()) cs.U.push_back({o, j, Us.space.pieces[p].degree});
  return cs;
}

namespace {

using UKey = std::pair<int, int>;

std::map<UKey, Cyclotomic> upoly_mul(std::map<UKey, Cyclotomic> const &a, std::map<UKey, Cyclotomic> const &b) {
  std::map<UKey, Cyclotomic> c;
  for (auto const &[ka, va] : a)
    for (auto const &[kb, vb] : b) c[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
  return c;
}

// det(1 + u y^e M) from the coefficients of det(1 - x M)
std::map<UKey, Cyclotomic> det_one_plus(std::vector<Cyclotomic> const &c, int e) {
  std::map<UKey, Cyclotomic> out;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) out[{int(k), int(k) * e}] = (k % 2 ? -c[k] : c[k]);
  return out;
}

} // namespace

UPolyU NormalPair::twisted_poincare(GaloisAuto const &sigma, int coset, int T) {
  OSSpace const &Us = U(sigma);
  std::map<UKey, Cyclotomic> num{{{0, 0}, Cyclotomic(1)}};
  for (auto const &piece : Us.space.pieces)
    num = upoly_mul(num, det_one_plus(det_one_minus_xg(piece.coset_action[coset]), piece.degree));
  std::vector<EigenMultiset> eig;
  for (int g : coset_elements(coset)) eig.push_back(G_.eigen(g));
  return UPolyU::times(num, averaged_molien(eig, nullptr, T));
}

UPolyU NormalPair::twisted_poincare_closed(GaloisAuto const &sigma, int coset, int T) {
  CosetSpectrum cs = coset_spectrum(sigma, coset);
  std::map<UKey, Cyclotomic> num{{{0, 0}, Cyclotomic(1)}};
  for (auto const &u : cs.U)
    num = upoly_mul(num, {{{0, 0}, Cyclotomic(1)}, {{1, u.degree}, Cyclotomic::root(u.order, u.residue)}});
  TruncSeries den = TruncSeries::one(T);
  for (auto const &e : cs.E) {
    std::vector<Cyclotomic> p(e.degree + 1);
    p[0] = Cyclotomic(1);
    p[e.degree] = -Cyclotomic::root(e.order, e.residue);
    den = den * TruncSeries::from_poly(p, T).inverse();
  }
  return UPolyU::times(num, den);
}

UPolyU NormalPair::twisted_os_series(GaloisAuto const &sigma, int coset, int T) {
  std::map<std::string, std::pair<EigenMultiset, int>> buckets;
  for (int g : coset_elements(coset)) {
    auto [it, fresh] = buckets.try_emplace(G_.eigen(g).key(), G_.eigen(g), 0);
    it->second.second += 1;
  }
  UPolyU out(T);
  Cyclotomic scale(Rational(1, N_.order()));
  for (auto const &[k, b] : buckets) {
    std::vector<Cyclotomic> c = det_one_minus_xg(b.first);
    for (auto &x : c) x = x.galois(sigma.exponent);
    out += UPolyU::times(det_one_plus(c, 0), inverse_det_series(b.first, T)).scaled(scale * Cyclotomic(b.second));
  }
  return out;
}

std::vector<EigenMultiset> const &NormalPair::eigen_H() {
  if (eig_H_.empty()) {
    QuotientModule const &Em = E();
    for (int c = 0; c < N_.quotient_order(); ++c) eig_H_.push_back(eigen_multiset(Em.space.coset_matrix(c)));
  }
  return eig_H_;
}

std::vector<Cyclotomic> NormalPair::coset_chars(GaloisAuto const &sigma, int piece, bool of_U) {
  std::vector<Cyclotomic> out;
  if (of_U) {
    auto const &p = U(sigma).space.pieces.at(piece);
    for (auto const &m : p.coset_action) out.push_back(m.trace());
  } else {
    auto const &p = E().space.pieces.at(piece);
    for (auto const &m : p.coset_action) out.push_back(m.trace().galois(sigma.exponent));
  }
  return out;
}

QuotientInvariants NormalPair::quotient_invariants(GaloisAuto const &sigma) {
  QuotientModule const &Em = E();
  auto const &eH = eigen_H();
  QuotientInvariants q;
  q.degrees_H = degrees_of(eH, rank());
  std::int64_t prod = 1;
  for (int x : q.degrees_H) prod *= x;
  if (prod != N_.quotient_order()) throw ArithmeticInvariantError("degrees of H do not multiply to |G/N|");
  DegreeMultiset joined;
  for (std::size_t p = 0; p < Em.space.pieces.size(); ++p) {
    auto const &piece = Em.space.pieces[p];
    q.block_degree.push_back(piece.degree);
    DegreeMultiset bh = degrees_of(eig_E_piece_[p], piece.space.dim());
    joined.insert(joined.end(), bh.begin(), bh.end());
    q.block_H.push_back(bh);
    std::vector<Cyclotomic> chi_c = coset_chars(sigma, int(p), false);
    q.e_H.push_back(fake_degree_dual(eH, q.degrees_H, chi_c));
    std::vector<Cyclotomic> chi_g(G_.order());
    for (int g = 0; g < G_.order(); ++g) chi_g[g] = chi_c[N_.coset_of[g]];
    q.e_G.push_back(fake_degree_dual(eig_G_, degrees_G(), chi_g));
  }
  std::sort(joined.begin(), joined.end());
  q.square_diagonal = joined == q.degrees_H;
  return q;
}

std::vector<ExponentMultiset> NormalPair::U_block_exponents(GaloisAuto const &sigma) {
  OSSpace const &Us = U(sigma);
  std::vector<ExponentMultiset> out;
  for (std::size_t p = 0; p < Us.space.pieces.size(); ++p) {
    std::vector<Cyclotomic> chi_c = coset_chars(sigma, int(p), true);
    std::vector<Cyclotomic> chi_g(G_.order());
    for (int g = 0; g < G_.order(); ++g) chi_g[g] = chi_c[N_.coset_of[g]];
    out.push_back(fake_degree_dual(eig_G_, degrees_G(), chi_g));
  }
  return out;
}

ExponentMultiset NormalPair::exponents_G(GaloisAuto const &sigma) {
  std::vector<Cyclotomic> chi(G_.order());
  for (int g = 0; g < G_.order(); ++g) chi[g] = sigma_trace(eig_G_[g], sigma.exponent);
  return fake_degree_dual(eig_G_, degrees_G(), chi);
}

std::vector<std::pair<int, int>> NormalPair::canonical_pairs(GaloisAuto const &sigma) {
  OSSpace const &Us = U(sigma);
  auto blocks = U_block_exponents(sigma);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t p = 0; p < blocks.size(); ++p)
    for (int f : blocks[p]) pairs.push_back({Us.space.pieces[p].degree, f});
  std::sort(pairs.begin(), pairs.end(), [](auto const &a, auto const &b) {
    return std::pair(a.second, a.first) < std::pair(b.second, b.first);
  });
  return pairs;
}

} // namespace reflekt
