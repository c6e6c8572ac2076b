#include <random>

#include "doctest.h"
#include "kappa/weyl.hpp"
#include "support.hpp"

using namespace kappa;

namespace {

WeylElement random_weyl(std::mt19937_64& rng, int order, int terms = 3) {
  std::uniform_int_distribution<int> e(0, 1), hp(0, 2);
  std::vector<WeylElement::Term> raw;
  for (int t = 0; t < terms; ++t) {
    std::array<int, 4> x{}, p{};
    for (auto& v : x) v = e(rng);
    for (auto& v : p) v = e(rng);
    raw.emplace_back(wmono::make(x, p, hp(rng)), testing::small_scalar(rng));
  }
  return WeylElement::from_terms(order, MetricSig::mostly_plus(), std::move(raw));
}

WeylElement ih(int order) { return WeylElement::h_power(1, order).scaled(Scalar::i()); }

}  // namespace

TEST_CASE("canonical commutation relations") {
  const int N = 3;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      WeylElement c = commutator(WeylElement::p(mu, N), WeylElement::x(nu, N));
      CHECK(c == WeylElement::constant(N, mu == nu ? -Scalar::i() : Scalar(0)));
      CHECK(commutator(WeylElement::x(mu, N), WeylElement::x(nu, N)).is_zero());
    }
}

TEST_CASE("momenta act as -i d/dx") {
  const int N = 3;
  auto x1 = WeylElement::x(1, N);
  CHECK(act(WeylElement::p(1, N), x1 * x1) == x1.scaled(Scalar(0, -2)));
  CHECK(act(WeylElement::p(2, N), x1).is_zero());
}

TEST_CASE("product is a representation on polynomials (property)") {
  std::mt19937_64 rng(23);
  const int N = 4;
  for (int i = 0; i < 25; ++i) {
    auto u = random_weyl(rng, N), v = random_weyl(rng, N);
    auto f = testing::random_poly(rng, N);
    CHECK(act(u * v, f) == act(u, act(v, f)));
  }
}

TEST_CASE("associativity, Jacobi and adjoint (property)") {
  std::mt19937_64 rng(29);
  const int N = 4;
  for (int i = 0; i < 20; ++i) {
    auto a = random_weyl(rng, N), b = random_weyl(rng, N), c = random_weyl(rng, N);
    CHECK((a * b) * c == a * (b * c));
    CHECK((commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b)))
              .is_zero());
    CHECK((a * b).adjoint() == b.adjoint() * a.adjoint());
  }
}

TEST_CASE("igl(4) relations in the Heisenberg realization") {
  const int N = 2;
  auto L = [&](int mu, int nu) {
    return igl_realize("L^" + std::to_string(mu) + "_" + std::to_string(nu), N);
  };
  auto xp = [&](int mu, int nu) { return WeylElement::x(mu, N) * WeylElement::p(nu, N); };
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) CHECK(L(mu, nu) == xp(mu, nu));
  // [x^m p_n, x^a p_b] = -i (delta^a_n x^m p_b - delta^m_b x^a p_n)
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          WeylElement want(N);
          if (a == n) want += xp(m, b);
          if (m == b) want -= xp(a, n);
          CHECK(commutator(L(m, n), L(a, b)) == want.scaled(-Scalar::i()));
        }
}

TEST_CASE("exponential and inverse") {
  const int N = 5;
  auto u = WeylElement::h_power(1, N) * WeylElement::p(0, N);
  auto e = weyl_exp(u);
  CHECK(e * weyl_exp(-u) == WeylElement::constant(N, Scalar(1)));
  auto one = WeylElement::constant(N, Scalar(1));
  CHECK(weyl_inverse(one + u) * (one + u) == one);
  mpq_class fact = 1;
  for (int k = 0; k <= N; ++k) {
    if (k) fact *= k;
    CHECK(e.coefficient({0, 0, 0, 0}, {k, 0, 0, 0}).coeff([&] {
      Mono m;
      m.e[0] = static_cast<std::int8_t>(k);
      return m;
    }()) == Scalar(1 / fact));
  }
}

TEST_CASE("twist realizations close kappa-Minkowski") {
  const int N = 6;
  for (auto fam : {TwistFamily::abelian, TwistFamily::jordanian}) {
    for (mpq_class par : {mpq_class(-1), mpq_class(1, 2), mpq_class(1), mpq_class(3)}) {
      for (auto side : {Side::left, Side::right}) {
        auto X = realize_coordinates(fam, par, side, N);
        // right realizations give the opposite algebra
        WeylElement s = side == Side::left ? ih(N) : -ih(N);
        for (int k = 1; k < 4; ++k) CHECK(commutator(X[0], X[k]) == s * X[k]);
        for (int j = 1; j < 4; ++j)
          for (int k = j + 1; k < 4; ++k) CHECK(commutator(X[j], X[k]).is_zero());
      }
    }
  }
}

TEST_CASE("natural realization closes kappa-Minkowski") {
  const int N = 6;
  auto r = realize_natural(N);
  for (int k = 1; k < 4; ++k) CHECK(commutator(r.X[0], r.X[k]) == ih(N) * r.X[k]);
  CHECK(commutator(r.X[1], r.X[2]).is_zero());
  // xi = h P0 + sqrt(1 - h^2 P^2) is group-like: its commutator with X^k scales X^k
  CHECK(r.xi.h_valuation() == 0);
}

TEST_CASE("noncovariant family closes kappa-Minkowski (property)") {
  std::mt19937_64 rng(31);
  const int N = 5;
  for (int i = 0; i < 8; ++i) {
    auto r = realize_noncovariant({1, testing::small_rational(rng), testing::small_rational(rng)},
                                  {testing::small_rational(rng), testing::small_rational(rng)}, N);
    for (int k = 1; k < 4; ++k) CHECK(commutator(r.X[0], r.X[k]) == ih(N) * r.X[k]);
    CHECK(commutator(r.X[1], r.X[3]).is_zero());
  }
}

TEST_CASE("Hermiticity rules") {
  const int N = 4;
  mpq_class g0(1, 3), g1(-2, 5);
  CHECK(satisfies_hermiticity({1, -3 * g0, mpq_class(-3, 2) * g1}, {g0, g1},
                              HermiticityRule::psi_prime_plus_3gamma, N));
  CHECK_FALSE(satisfies_hermiticity({1, -3 * g0 + 1, mpq_class(-3, 2) * g1}, {g0, g1},
                                    HermiticityRule::psi_prime_plus_3gamma, N));
  CHECK(satisfies_hermiticity({1, -g0 / 3, -g1 / 6}, {g0, g1}, HermiticityRule::psi_prime_minus_gamma_over_3, N));
  CHECK_FALSE(satisfies_hermiticity({1, -g0 / 3, g1}, {g0, g1}, HermiticityRule::psi_prime_minus_gamma_over_3, N));
}

TEST_CASE("metric signatures") {
  CHECK(MetricSig::parse("-+++") == MetricSig::mostly_plus());
  CHECK(MetricSig::parse("+---") == MetricSig::mostly_minus());
  CHECK(MetricSig::mostly_minus().to_string() == "+---");
  CHECK(MetricSig::parse("-+").n == 2);
  CHECK_THROWS(MetricSig::parse("-+x+"));
  CHECK_THROWS(MetricSig::parse("-++++"));
}
