#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kappa/series.hpp"
#include "kappa/weyl.hpp"

namespace kappa {

// Lorentz generators in PBW order. A word is a sorted string of these letters.
enum LorentzGen : char { kM1 = 0, kM2, kM3, kN1, kN2, kN3 };
using LWord = std::string;
std::string lorentz_name(char g);
// Straightened product of two sorted words in U(so(1,3)).
std::vector<std::pair<LWord, Scalar>> lorentz_product(const LWord& a, const LWord& b);

// Commutative momentum sector: symbol names, which one is Laurent, and the adjoint action
// of each Lorentz generator on each momentum symbol (a series in leg-0 symbols).
struct MomentumAlgebra {
  std::vector<std::string> base;
  std::vector<bool> laurent;
  int order = kDefaultOrder;
  int deg_cap = -1;
  std::array<std::vector<TruncSeries>, 6> ad;
  std::array<std::array<std::vector<TruncSeries>, 6>, 3> ad_leg;  // ad moved to legs 0..2

  void finalize();  // fills ad_leg

  int size() const { return static_cast<int>(base.size()); }
  std::string sym(int m, int leg) const { return base[m] + std::string(leg, '\''); }
  RingPtr ring(int legs) const;
  // Renames leg `from` symbols to leg `to` (all momentum symbols).
  TruncSeries move_leg(const TruncSeries& s, int from, int to) const;
  TruncSeries var(int m, int leg = 0) const;
};
using MomAlgPtr = std::shared_ptr<const MomentumAlgebra>;

// Sum of F(P legs) * (w_0 (x) ... (x) w_{L-1}) with Lorentz words w_l standing to the right
// of the momentum series on their leg.
template <int L>
class HopfTensor {
 public:
  using Key = std::array<LWord, L>;

  HopfTensor() = default;
  explicit HopfTensor(MomAlgPtr alg) : alg_(std::move(alg)) {}
  static HopfTensor series(MomAlgPtr alg, const TruncSeries& s);
  static HopfTensor word(MomAlgPtr alg, const Key& k, const TruncSeries& s);
  static HopfTensor one(MomAlgPtr alg) { return series(alg, TruncSeries::constant(alg->ring(L), Scalar(1))); }

  const MomAlgPtr& alg() const { return alg_; }
  const std::map<Key, TruncSeries>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int h_valuation() const;
  mpq_class ultra_norm() const;

  HopfTensor& operator+=(const HopfTensor& o);
  HopfTensor& operator-=(const HopfTensor& o);
  friend HopfTensor operator+(HopfTensor a, const HopfTensor& b) { return a += b; }
  friend HopfTensor operator-(HopfTensor a, const HopfTensor& b) { return a -= b; }
  HopfTensor operator-() const { return scaled(Scalar(-1)); }
  HopfTensor scaled(const Scalar& c) const;
  friend bool operator==(const HopfTensor& a, const HopfTensor& b) { return (a - b).is_zero(); }
  template <int M>
  friend HopfTensor<M> operator*(const HopfTensor<M>& a, const HopfTensor<M>& b);

  void add_term(const Key& k, const TruncSeries& s);
  std::string to_string() const;

 private:
  MomAlgPtr alg_;
  std::map<Key, TruncSeries> terms_;
};
using HopfElement = HopfTensor<1>;

template <int L>
HopfTensor<L> operator*(const HopfTensor<L>& a, const HopfTensor<L>& b);
HopfElement commutator(const HopfElement& a, const HopfElement& b);
template <int L>
HopfTensor<L> commutator(const HopfTensor<L>& a, const HopfTensor<L>& b) {
  return a * b - b * a;
}
// a (x) b
HopfTensor<2> hopf_pure(const HopfElement& a, const HopfElement& b);
// ad_g on a momentum series living on leg `leg`.
TruncSeries lorentz_ad(const MomentumAlgebra& alg, char g, const TruncSeries& f, int leg = 0);

struct HopfSpec {
  std::string name;
  MomAlgPtr alg;
  bool q_analog = false;
  mpq_class kappa = 1;  // q-analog only
  int order = kDefaultOrder;
  std::vector<TruncSeries> mom_coproduct;  // legs 0, 1
  std::vector<TruncSeries> mom_antipode;
  std::vector<Scalar> mom_counit;
  std::array<HopfTensor<2>, 6> lorentz_coproduct;
  std::array<HopfElement, 6> lorentz_antipode;
  TruncSeries xi, xi_inv;  // group-like element (Xi or Pi0) and inverse

  // "M1".."M3", "N1".."N3", momentum names; "Xi", "Xi^-1" (classical), "Pi0^-1" (q-analog).
  std::vector<std::string> generators() const;
  HopfElement generator(const std::string& name) const;
  HopfElement element(const TruncSeries& s) const { return HopfElement::series(alg, s); }
};

HopfSpec build_kappa_classical(int order = kDefaultOrder);
HopfSpec build_kappa_qanalog(const mpq_class& kappa, int deg_cap = 10);

template <int L>
HopfTensor<L + 1> coproduct_at(const HopfSpec& spec, const HopfTensor<L>& t, int leg);
template <int L>
HopfTensor<L - 1> counit_at(const HopfSpec& spec, const HopfTensor<L>& t, int leg);
HopfElement antipode(const HopfSpec& spec, const HopfElement& a);
inline HopfTensor<2> coproduct(const HopfSpec& spec, const HopfElement& a) { return coproduct_at<1>(spec, a, 0); }
// m (S (x) id) and m (id (x) S) of a two-tensor.
HopfElement antipode_left_contract(const HopfSpec& spec, const HopfTensor<2>& t);
HopfElement antipode_right_contract(const HopfSpec& spec, const HopfTensor<2>& t);
TruncSeries counit(const HopfSpec& spec, const HopfElement& a);

struct AxiomResult {
  std::string axiom;
  std::string generators;
  int order = 0;
  mpq_class residual_norm = 0;
  bool pass = false;
};
// Coassociativity, counit, antipode axiom, S^2 = Ad_xi on every generator, the homomorphism
// property on every generator pair, and group-likeness of xi. Checks run in parallel.
std::vector<AxiomResult> check_hopf_axioms(const HopfSpec& spec, bool parallel = true);

// S^2(X) - xi^power X xi^-power for every generator.
std::vector<AxiomResult> check_antipode_square(const HopfSpec& spec, int power);

// Bicrossproduct generators P0 = h^-1 ln Xi, P_i = P_i Xi^-1 and the derived structure.
struct BicrossReport {
  TruncSeries cal_p0;                   // h^-1 ln Xi (leg 0)
  std::array<TruncSeries, 3> cal_p;     // P_i Xi^-1
  std::vector<AxiomResult> results;
  bool pass() const;
};
// Works at order + 1 internally so h^-1 ln Xi is exact to `order`.
BicrossReport to_bicrossproduct(int order = kDefaultOrder);

struct CasimirReport {
  TruncSeries undeformed;  // C = P0^2 - P^2 (q-analog: with P0(kappa))
  TruncSeries deformed;    // C_h or C_kappa
  std::vector<AxiomResult> results;
  bool pass() const;
};
CasimirReport casimirs(const HopfSpec& spec);
// Structure tables at kappa equal those at 1 after P_i -> kappa P_i.
std::vector<AxiomResult> check_rescaling(const mpq_class& kappa);
// P0(kappa) = kappa/2 (Pi0 - Pi0^-1 (1 - P^2/kappa^2))
TruncSeries q_p0(const HopfSpec& spec);

// C_h = 2h^-2(sqrt(1 + h^2 P^2) - 1), or 2h^-2(1 - sqrt(1 - h^2 P^2)) sharing the root of Xi,
// with P^2 fixed by xi = h P0 + sqrt(1 - h^2 P^2).
enum class CasimirRoot { printed, xi_compatible };
WeylElement casimir_h(const DsrRealization& r, CasimirRoot root);

// Poincare relations, kappa-Minkowski, cross relations, optional Snyder and Casimir checks.
struct DsrOptions {
  bool snyder = false;
  bool casimir = false;     // [C_h, X_mu] = -2i P_mu for the Xi-compatible root
  bool q_analog = false;    // q-analog relations with Pi0 = xi, kappa = 1/h
};
std::vector<AxiomResult> verify_dsr(const DsrRealization& r, const DsrOptions& opt = {});

// Compatibility conditions of the kappa-Poincare coaction on the translation Hopf algebra.
std::vector<AxiomResult> verify_bicross_coaction(int order = 6);

bool all_pass(const std::vector<AxiomResult>& v);

extern template class HopfTensor<1>;
extern template class HopfTensor<2>;
extern template class HopfTensor<3>;

}  // namespace kappa
