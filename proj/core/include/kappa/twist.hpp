#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kappa/borel.hpp"
#include "kappa/tensor.hpp"
#include "kappa/weyl.hpp"

namespace kappa {

struct WeylAlg {
  MetricSig metric;
  void product(std::uint64_t a, std::uint64_t b, std::vector<std::pair<std::uint64_t, Scalar>>& out) const {
    wmono::product(a, b, out);
  }
  std::string mono_string(std::uint64_t k) const;
};

using WeylAlgPtr = std::shared_ptr<const WeylAlg>;
template <int L>
using WeylTensor = Tensor<WeylAlg, L>;

WeylAlgPtr weyl_alg(MetricSig metric = MetricSig::mostly_plus());
WeylTensor<1> to_tensor(const WeylElement& a);
WeylElement to_element(const WeylTensor<1>& t);
WeylTensor<2> tensor2(const WeylElement& a, const WeylElement& b);
WeylTensor<2> primitive_coproduct(const WeylElement& X);
template <int L>
WeylTensor<L> realize_tensor(const BorelTensor<L>& t);

using ThetaMatrix = std::array<std::array<mpq_class, 4>, 4>;

struct Twist {
  TwistFamily family = TwistFamily::abelian;
  mpq_class param = 0;
  ThetaMatrix theta{};
  int order = kDefaultOrder;
  BorelPtr alg;
  BorelTensor<2> F, F_inv;
  // F = exp(log_factors[0]) exp(log_factors[1]) ...
  std::vector<BorelTensor<2>> log_factors;

  std::string label() const;
};

// abelian: F = exp[i h (s P0 (x) D - (1-s) D (x) P0)]
// jordanian: F = exp(J_r (x) sigma_r), sigma_r = ln(1 - h r P0)
Twist build_twist(TwistFamily family, const mpq_class& param, int order = kDefaultOrder);
// F = exp((i/2) h Theta^{mu nu} P_mu (x) P_nu); star commutators [x^mu, x^nu] = i h Theta^{mu nu}.
Twist build_theta_twist(const ThetaMatrix& theta, int order = kDefaultOrder);
// W = exp(u), u = c h D P0^k; F_W = exp(-u (x) 1 - 1 (x) u) exp(Delta(u)).
Twist build_coboundary_twist(const Scalar& c, int p0_power, int order = kDefaultOrder);
ThetaMatrix parse_theta(const std::string& rows);  // "0,1;-1,0" (rows separated by ';')

// Removes the first coefficient of F at h^k (test hook for corruption detection).
Twist corrupt_twist(const Twist& t, int h_power);

struct CocycleReport {
  BorelTensor<3> residual;          // F12 (Delta (x) id)F - F23 (id (x) Delta)F
  BorelElement counit_left, counit_right;  // (eps (x) id)F - 1, (id (x) eps)F - 1
  BorelTensor<2> inverse_residual;  // F F^{-1} - 1
  bool pass() const {
    return residual.is_zero() && counit_left.is_zero() && counit_right.is_zero() && inverse_residual.is_zero();
  }
  int failing_order() const;  // lowest h power with a nonzero residual, -1 if none
};
CocycleReport check_cocycle(const Twist& t);

PolyState star_product(const Twist& t, const PolyState& f, const PolyState& g);
PolyState star_commutator(const Twist& t, const PolyState& f, const PolyState& g);
// x^mu_L = (fbar^a |> x^mu) fbar_a and x^mu_R = (fbar_a |> x^mu) fbar^a.
std::array<WeylElement, 4> realization_from_twist(const Twist& t, Side side);
// [x^mu, f]_star = x_L^mu(f) - x_R^mu(f)
PolyState star_commutator_with_function(const Twist& t, int mu, const PolyState& f);

// F Delta0(X) F^{-1} for an igl generator X (primitive Delta0).
WeylTensor<2> twisted_coproduct(const Twist& t, const WeylElement& X);
// u S0(X) u^{-1}, u = f^a S0(f_a), S0(X) = -X.
WeylElement twisted_antipode(const Twist& t, const WeylElement& X);
BorelElement twist_u(const Twist& t);

BorelTensor<2> universal_r_matrix(const Twist& t);
BorelTensor<2> classical_r_matrix(const BorelTensor<2>& R);  // coefficient of h^1
BorelTensor<3> qybe_residual(const BorelTensor<2>& R);       // R12 R13 R23 - R23 R13 R12

// Closed-form coproduct/antipode lists.
enum class FormVariant { printed, corrected };
struct ClosedForm {
  std::string generator;  // "P0", "Pk", "L^m_k", "L^k_0", "L^0_k", "L^0_0"
  WeylElement X;
  WeylTensor<2> coproduct;
  WeylElement antipode;
};
std::vector<ClosedForm> closed_forms(TwistFamily family, const mpq_class& param, int order, FormVariant v);

struct FormCheck {
  std::string generator;
  std::string kind;        // "coproduct" | "antipode"
  bool printed_match = false;
  int failing_order = -1;  // lowest h order of the printed mismatch
  bool corrected_match = false;
  std::string note;
};
std::vector<FormCheck> check_closed_forms(const Twist& t);

struct HomomorphismCheck {
  std::string a, b;
  bool pass = false;
};
std::vector<HomomorphismCheck> check_twisted_homomorphism(const Twist& t);

// Coboundary check: Delta^{F_W}(X) = (W (x) W)^{-1} Delta(W X W^{-1}) (W (x) W).
bool check_coboundary_coproduct(const Twist& t, const Scalar& c, int p0_power, const WeylElement& X);

}  // namespace kappa
