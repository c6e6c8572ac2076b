#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kappa/tensor.hpp"
#include "kappa/weyl.hpp"

namespace kappa {

// Enveloping algebra of span{E, P_0..P_3} with [E, P_mu] = -w_mu P_mu, where E acts on
// monomials diagonally: E |> x^a = (w . a) x^a. PBW monomials are P^alpha E^m.
// Covers D (w = (0,-i,-i,-i)), the Jordanian J_r (w = (-1,1/r,1/r,1/r)) and pure momenta.
struct BorelAlg {
  std::array<Scalar, 4> w;
  std::string e_name = "E";
  WeylElement e_image;  // E in the Heisenberg realization (order fixed at construction)

  static constexpr int kBits = 8;
  static int p(std::uint64_t k, int mu) { return static_cast<int>((k >> (kBits * mu)) & 0xFF); }
  static int e(std::uint64_t k) { return static_cast<int>((k >> 32) & 0xFF); }
  static std::uint64_t make(const std::array<int, 4>& a, int m, int hp = 0);

  Scalar lambda(int mu) const { return -w[mu]; }
  void product(std::uint64_t a, std::uint64_t b, std::vector<std::pair<std::uint64_t, Scalar>>& out) const;
  std::string mono_string(std::uint64_t k) const;
};

using BorelPtr = std::shared_ptr<const BorelAlg>;
template <int L>
using BorelTensor = Tensor<BorelAlg, L>;
using BorelElement = BorelTensor<1>;

// E = sum_mu c_mu x^mu p_mu with c_mu = i w_mu.
BorelPtr make_borel(const std::array<Scalar, 4>& w, const std::string& name, int order,
                    MetricSig metric = MetricSig::mostly_plus());
BorelPtr borel_dilatation(int order);                        // E = D
BorelPtr borel_jordanian(const mpq_class& r, int order);     // E = J_r = i(D/r - L^0_0)

BorelElement borel_P(const BorelPtr& alg, int mu, int order);
BorelElement borel_E(const BorelPtr& alg, int order);
BorelElement borel_h(const BorelPtr& alg, int k, int order);
// Momentum series in P_0..P_3 (ring symbols p0..p3) as a Borel element.
BorelElement borel_from_momentum(const BorelPtr& alg, const TruncSeries& s);

// Primitive coproduct applied to leg `leg`.
template <int L>
BorelTensor<L + 1> coproduct_on_leg(const BorelTensor<L>& t, int leg);
// Counit applied to leg `leg`.
template <int L>
BorelTensor<L - 1> counit_on_leg(const BorelTensor<L>& t, int leg);
// Undeformed antipode S(P) = -P, S(E) = -E (anti-homomorphism).
BorelElement antipode0(const BorelElement& a);
// m(id (x) S0)(F) and m(S0 (x) id)(F).
BorelElement multiply_id_antipode(const BorelTensor<2>& F);

// Heisenberg action on position polynomials.
PolyState borel_act(const BorelAlg& alg, std::uint64_t mono, const PolyState& f);
// Image of a Borel element / tensor in the Weyl algebra.
WeylElement borel_realize(const BorelAlg& alg, std::uint64_t mono, int order);
WeylElement borel_realize(const BorelElement& a);

extern template BorelTensor<2> coproduct_on_leg<1>(const BorelTensor<1>&, int);
extern template BorelTensor<3> coproduct_on_leg<2>(const BorelTensor<2>&, int);
extern template BorelTensor<1> counit_on_leg<2>(const BorelTensor<2>&, int);
extern template BorelTensor<2> counit_on_leg<3>(const BorelTensor<3>&, int);

}  // namespace kappa
