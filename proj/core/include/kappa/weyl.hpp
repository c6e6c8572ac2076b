#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kappa/series.hpp"

namespace kappa {

// Diagonal metric, dimension 2..4.
struct MetricSig {
  int n = 4;
  std::array<int, 4> sig{-1, 1, 1, 1};

  static MetricSig mostly_plus(int n = 4);   // (-,+,+,+)
  static MetricSig mostly_minus(int n = 4);  // (+,-,-,-)
  static MetricSig parse(const std::string& s);
  int eta(int mu) const { return sig[mu]; }
  std::string to_string() const;
  bool operator==(const MetricSig& o) const { return n == o.n && sig == o.sig; }
};

// Packed monomial: x^a p^b h^k, 7 bits per exponent, h in the top byte.
namespace wmono {
inline constexpr int kBits = 7;
inline constexpr std::uint64_t kMask = (1u << kBits) - 1;
inline int x(std::uint64_t m, int mu) { return static_cast<int>((m >> (kBits * mu)) & kMask); }
inline int p(std::uint64_t m, int mu) { return static_cast<int>((m >> (kBits * (4 + mu))) & kMask); }
inline int h(std::uint64_t m) { return static_cast<int>(m >> 56); }
std::uint64_t make(const std::array<int, 4>& xe, const std::array<int, 4>& pe, int hp = 0);
inline std::uint64_t strip_h(std::uint64_t m) { return m & ((std::uint64_t{1} << 56) - 1); }
inline std::uint64_t with_h(std::uint64_t m, int hp) { return strip_h(m) | (static_cast<std::uint64_t>(hp) << 56); }
// Expands the normal-ordered product of two monomials (h bits ignored).
void product(std::uint64_t a, std::uint64_t b, std::vector<std::pair<std::uint64_t, Scalar>>& out);
}  // namespace wmono

struct U64Hash {
  std::size_t operator()(std::uint64_t x) const noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

class WeylElement {
 public:
  using Term = std::pair<std::uint64_t, Scalar>;

  WeylElement() = default;
  explicit WeylElement(int h_order, MetricSig metric = {}) : h_order_(h_order), metric_(metric) {}

  static WeylElement constant(int h_order, const Scalar& c, MetricSig metric = {});
  static WeylElement x(int mu, int h_order = kDefaultOrder, MetricSig metric = {});
  static WeylElement p(int mu, int h_order = kDefaultOrder, MetricSig metric = {});
  static WeylElement h_power(int k, int h_order = kDefaultOrder, MetricSig metric = {});
  // x_mu = eta_{mu mu} x^mu, p^mu = eta^{mu mu} p_mu.
  static WeylElement x_lower(int mu, int h_order = kDefaultOrder, MetricSig metric = {});
  static WeylElement p_upper(int mu, int h_order = kDefaultOrder, MetricSig metric = {});
  // Series over h and symbols p0..p3 mapped to a momentum-only element.
  static WeylElement from_momentum_series(const TruncSeries& s, MetricSig metric = {});
  static WeylElement from_terms(int h_order, MetricSig metric, std::vector<Term> raw);

  int h_order() const { return h_order_; }
  const MetricSig& metric() const { return metric_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int h_valuation() const { return terms_.empty() ? -1 : lowest_h(); }
  mpq_class ultra_norm() const;
  bool has_momenta() const;
  bool has_positions() const;

  // Coefficient of x^a p^b as a series in h.
  TruncSeries coefficient(const std::array<int, 4>& xe, const std::array<int, 4>& pe) const;
  // Inverse of from_momentum_series; throws if any x is present.
  TruncSeries to_momentum_series() const;

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  WeylElement operator-() const;
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  friend WeylElement operator*(const Scalar& c, const WeylElement& a) { return a.scaled(c); }
  WeylElement scaled(const Scalar& c) const;
  friend bool operator==(const WeylElement& a, const WeylElement& b);
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }

  WeylElement shift_h(int k) const;
  WeylElement truncated(int order) const;
  // Formal adjoint: x, p self-adjoint, products reversed, scalars conjugated.
  WeylElement adjoint() const;

  std::string to_string() const;

 private:
  int lowest_h() const;
  void canonicalize(std::vector<Term>&& raw);

  int h_order_ = kDefaultOrder;
  MetricSig metric_{};
  std::vector<Term> terms_;  // sorted by packed key
};

using PolyState = WeylElement;  // invariant: no momenta

WeylElement normal_product(const WeylElement& u, const WeylElement& v);
WeylElement commutator(const WeylElement& u, const WeylElement& v);
// p_mu acts as -i d/dx^mu; f must be a polynomial in x.
PolyState act(const WeylElement& op, const PolyState& f);
// Power series sum_k c_k u^k in the Weyl algebra for u of positive h valuation.
WeylElement weyl_power_series(const WeylElement& u, const std::function<Scalar(int)>& coeff);
WeylElement weyl_exp(const WeylElement& u);
WeylElement weyl_inverse(const WeylElement& a);

// igl(n) and Poincare generators in the Heisenberg realization:
// "L^nu_mu", "M_munu", "M1".."M3", "N1".."N3", "D", "P0".."P3".
WeylElement igl_realize(const std::string& generator, int h_order = kDefaultOrder, MetricSig metric = {});

enum class TwistFamily { abelian, jordanian, theta, coboundary };
enum class Side { left, right };

// Closed-form coordinate realizations x^mu of the Abelian and Jordanian families.
std::array<WeylElement, 4> realize_coordinates(TwistFamily family, const mpq_class& param, Side side,
                                               int h_order = kDefaultOrder, MetricSig metric = {});

// Hermiticity constraints on the noncovariant family.
enum class HermiticityRule { psi_prime_plus_3gamma, psi_prime_minus_gamma_over_3 };

// Generators of a DSR realization, all as Weyl elements.
struct DsrRealization {
  std::string name;
  int order = kDefaultOrder;
  MetricSig metric{};
  std::array<WeylElement, 4> X;  // X^mu
  std::array<WeylElement, 4> P;  // P_mu
  std::array<WeylElement, 3> M;  // rotations
  std::array<WeylElement, 3> N;  // boosts
  WeylElement xi;                // hP0 + sqrt(1 - h^2 P^2)
  WeylElement casimir;           // realization Casimir (when defined)
  TruncSeries psi_t, gamma_t;    // defining functions in t (noncovariant family only)

  WeylElement X_lower(int mu) const;
};

// psi = 1 + psi[1] t + ..., gamma = gamma[0] + gamma[1] t + ..., t = -h p0.
DsrRealization realize_noncovariant(const std::vector<mpq_class>& psi, const std::vector<mpq_class>& gamma,
                                    int order = kDefaultOrder);
DsrRealization realize_natural(int order = kDefaultOrder);

// Checks the chosen Hermiticity constraint on (psi, gamma) coefficient lists.
bool satisfies_hermiticity(const std::vector<mpq_class>& psi, const std::vector<mpq_class>& gamma,
                           HermiticityRule rule, int order);
// True when every coordinate of the realization equals its formal adjoint.
bool coordinates_self_adjoint(const std::array<WeylElement, 4>& X);

RingPtr momentum_ring(int h_order);

}  // namespace kappa
