#pragma once

#include <map>
#include <string>
#include <vector>

#include "kappa/scalar.hpp"
#include "kappa/weyl.hpp"

namespace kappa {

// Finite-dimensional Lie algebra given by structure constants in a named basis.
class LieAlgebra {
 public:
  using Vec = std::map<int, Scalar>;

  LieAlgebra() = default;
  explicit LieAlgebra(std::vector<std::string> names);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;  // throws if unknown
  const Vec& bracket(int a, int b) const { return table_[a * dim() + b]; }
  void set_bracket(int a, int b, const Vec& v);  // also sets [b, a] = -v
  Vec bracket(const Vec& u, const Vec& v) const;

  bool antisymmetric() const;
  bool jacobi() const;

 private:
  std::vector<std::string> names_;
  std::vector<Vec> table_;
};

// Structure constants of the span of `ops` under the Weyl commutator, in the basis
// unit * ops[a]. Throws when the span is not closed.
LieAlgebra lie_from_realization(const std::vector<std::string>& names, const std::vector<WeylElement>& ops,
                                const Scalar& unit);
// Poincare algebra P0..P3, M1..M3, N1..N3 (N_i = M_{0i}), optionally with the dilatation
// D = x^mu p_mu.
// Basis elements are i times the Heisenberg operators, so the constants are real.
LieAlgebra poincare_algebra(bool with_dilatation = true, MetricSig metric = MetricSig::mostly_plus());

// Element of the exterior algebra: sorted index sets with coefficients.
class Multivector {
 public:
  using Key = std::vector<int>;

  Multivector() = default;
  static Multivector generator(int a);
  static Multivector from_vec(const LieAlgebra::Vec& v);

  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for zero or mixed degree

  void add(Key k, const Scalar& c);  // k need not be sorted; sign from sorting
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  Multivector scaled(const Scalar& c) const;
  friend bool operator==(const Multivector& a, const Multivector& b) { return (a - b).is_zero(); }

  std::string to_string(const LieAlgebra& g) const;

 private:
  std::map<Key, Scalar> terms_;
};

Multivector wedge(const Multivector& a, const Multivector& b);
// [[r, s]] for bivectors r, s:
// [[a^b, c^d]] = [a,d]^b^c - [a,c]^b^d + [b,c]^a^d - [b,d]^a^c
Multivector schouten_bracket(const LieAlgebra& g, const Multivector& r, const Multivector& s);
// "N1^P1 + N2^P2 - 1/2*D^P0"
Multivector parse_multivector(const LieAlgebra& g, const std::string& text);

// M_{mu nu} ^ P^mu ^ P^nu summed over all mu, nu.
Multivector poincare_mpp(const LieAlgebra& g, MetricSig metric = MetricSig::mostly_plus());

}  // namespace kappa
