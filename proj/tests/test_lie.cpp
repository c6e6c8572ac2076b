#include "doctest.h"
#include "kappa/lie.hpp"

using namespace kappa;

TEST_CASE("Poincare algebra with dilatation") {
  for (auto g : {MetricSig::mostly_plus(), MetricSig::mostly_minus()}) {
    LieAlgebra a = poincare_algebra(true, g);
    CHECK(a.dim() == 11);
    CHECK(a.antisymmetric());
    CHECK(a.jacobi());
    CHECK(poincare_algebra(false, g).dim() == 10);
  }
  LieAlgebra a = poincare_algebra(true, MetricSig::mostly_minus());
  // momenta commute; D scales them
  CHECK(a.bracket(a.index("P1"), a.index("P2")).empty());
  auto dp = a.bracket(a.index("D"), a.index("P0"));
  REQUIRE(dp.size() == 1);
  CHECK(dp.begin()->first == a.index("P0"));
  CHECK_THROWS(a.index("Q"));
}

TEST_CASE("structure constants from a realization") {
  const int N = 2;
  // sl(2): e = x0 p1, f = x1 p0, k = x0 p0 - x1 p1
  auto e = WeylElement::x(0, N) * WeylElement::p(1, N), f = WeylElement::x(1, N) * WeylElement::p(0, N);
  auto k = WeylElement::x(0, N) * WeylElement::p(0, N) - WeylElement::x(1, N) * WeylElement::p(1, N);
  LieAlgebra a = lie_from_realization({"e", "f", "k"}, {e, f, k}, Scalar::i());
  CHECK(a.jacobi());
  // [ie, if] = i k in units of i: [e, f] = -i k
  auto ef = a.bracket(0, 1);
  REQUIRE(ef.size() == 1);
  CHECK(ef.at(2) == Scalar(1));
  CHECK_THROWS(lie_from_realization({"e", "x"}, {e, WeylElement::x(1, N)}, Scalar(1)));
}

TEST_CASE("wedge and multivector arithmetic") {
  auto a = Multivector::generator(0), b = Multivector::generator(1);
  CHECK(wedge(a, b) == wedge(b, a).scaled(Scalar(-1)));
  CHECK(wedge(a, a).is_zero());
  CHECK(wedge(a, b).degree() == 2);
  CHECK((wedge(a, b) + a).degree() == -1);
}

TEST_CASE("Schouten bracket identities") {
  LieAlgebra g = poincare_algebra(true, MetricSig::mostly_minus());
  auto dp = parse_multivector(g, "D^P0");
  CHECK(schouten_bracket(g, dp, dp).is_zero());
  auto np = parse_multivector(g, "N1^P1 + N2^P2 + N3^P3");
  CHECK(schouten_bracket(g, np, np) == poincare_mpp(g, MetricSig::mostly_minus()));
  CHECK_FALSE(poincare_mpp(g, MetricSig::mostly_minus()).is_zero());
  // abelian bivectors of momenta are classical r-matrices
  auto pp = parse_multivector(g, "P0^P1 - 1/2*P2^P3");
  CHECK(schouten_bracket(g, pp, pp).is_zero());
}

TEST_CASE("Schouten bracket is symmetric on bivectors (property)") {
  LieAlgebra g = poincare_algebra(true, MetricSig::mostly_minus());
  std::vector<std::string> rs{"D^P0", "N1^P1", "M3^P0 + N2^P2", "D^N1 - P1^P2", "M1^M2"};
  for (const auto& a : rs)
    for (const auto& b : rs) {
      auto r = parse_multivector(g, a), s = parse_multivector(g, b);
      CHECK(schouten_bracket(g, r, s) == schouten_bracket(g, s, r));
      CHECK(schouten_bracket(g, r, s).degree() != 2);
    }
}

TEST_CASE("multivector parser errors") {
  LieAlgebra g = poincare_algebra();
  CHECK_THROWS(parse_multivector(g, "N1^Q2"));
  CHECK_THROWS(parse_multivector(g, "N1^^P1"));
  CHECK(parse_multivector(g, "P1^P0") == parse_multivector(g, "-P0^P1"));
}
