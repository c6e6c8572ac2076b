#include <random>

#include "doctest.h"
#include "kappa/series.hpp"
#include "support.hpp"

using namespace kappa;

namespace {

// Coefficients of (1 + u)^beta from the product formula, independent of the library.
mpq_class binom_oracle(const mpq_class& beta, int k) {
  mpq_class c = 1;
  for (int j = 0; j < k; ++j) c = c * (beta - j) / (j + 1);
  return c;
}

Mono mono(std::initializer_list<int> e) {
  Mono m;
  int i = 0;
  for (int v : e) m.e[i++] = static_cast<std::int8_t>(v);
  return m;
}

}  // namespace

TEST_CASE("scalars are exact Gaussian rationals") {
  Scalar a(mpq_class(1, 2), mpq_class(-3, 4));
  CHECK(a * a.inverse() == Scalar(1));
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK(a.conj().conj() == a);
  CHECK(Scalar::parse("6/4") == Scalar(mpq_class(3, 2)));
  CHECK(i_pow(4) == Scalar(1));
  CHECK(binomial(mpq_class(1, 2), 2) == mpq_class(-1, 8));
  CHECK_THROWS(Scalar(0).inverse());
}

TEST_CASE("rings are interned") {
  auto a = make_ring({"P0", "P1"}, 5), b = make_ring({"P0", "P1"}, 5);
  CHECK(a.get() == b.get());
  CHECK(make_ring({"P0"}, 5).get() != make_ring({"P0"}, 6).get());
  CHECK(a->index("P1") == 2);
  CHECK(a->index("Q") == -1);
}

TEST_CASE("truncation drops powers above the order") {
  auto R = make_ring({"x"}, 3);
  auto h = TruncSeries::h(R);
  CHECK((h * h * h).h_valuation() == 3);
  CHECK((h * h * h * h).is_zero());
  CHECK(TruncSeries::h(R, 3).ultra_norm() == mpq_class(1, 8));
  CHECK(TruncSeries(R).ultra_norm() == 0);
}

TEST_CASE("degree cap truncates momentum degree") {
  auto R = make_ring({"P0", "P1"}, 4, 2);
  auto P0 = TruncSeries::var(R, "P0"), P1 = TruncSeries::var(R, "P1");
  CHECK((P0 * P1).size() == 1);
  CHECK((P0 * P1 * P0).is_zero());
}

TEST_CASE("mixing orders is an error") {
  auto a = TruncSeries::h(make_ring({"x"}, 3)), b = TruncSeries::h(make_ring({"x"}, 4));
  CHECK_THROWS_AS(a + b, OrderMismatch);
}

TEST_CASE("geometric series inverse") {
  const int N = 7;
  auto R = make_ring({"P0"}, N);
  auto one = TruncSeries::constant(R, Scalar(1));
  auto hp = TruncSeries::h(R) * TruncSeries::var(R, "P0");
  TruncSeries oracle(R), power = one;
  for (int k = 0; k <= N; ++k) {
    oracle += power;
    power = power * hp;
  }
  CHECK(invert(one - hp) == oracle);
  CHECK_THROWS_AS(invert(hp), NonUnit);
}

TEST_CASE("fractional powers match the binomial product formula") {
  const int N = 6;
  auto R = make_ring({"x"}, N);
  auto u = TruncSeries::h(R) * TruncSeries::var(R, "x");
  auto one = TruncSeries::constant(R, Scalar(1));
  for (mpq_class beta : {mpq_class(1, 2), mpq_class(-1, 2), mpq_class(2, 3), mpq_class(-3)}) {
    auto s = pow_fractional(one + u, beta);
    for (int k = 0; k <= N; ++k) CHECK(s.coeff(mono({k, k})) == Scalar(binom_oracle(beta, k)));
  }
  auto r = pow_fractional(one + u, mpq_class(1, 2));
  CHECK(r * r == one + u);
}

TEST_CASE("exp and log1p are inverse (property)") {
  std::mt19937_64 rng(11);
  auto R = make_ring({"a", "b"}, 5);
  auto one = TruncSeries::constant(R, Scalar(1));
  for (int i = 0; i < 15; ++i) {
    auto u = testing::random_series(rng, R, 4, 1);
    CHECK(log1p(exp(u) - one) == u);
    CHECK(exp(u) * exp(-u) == one);
  }
}

TEST_CASE("ultra-norm is multiplicative and ultrametric (property)") {
  std::mt19937_64 rng(5);
  auto R = make_ring({"a"}, 10);
  for (int i = 0; i < 40; ++i) {
    auto a = testing::random_series(rng, R, 3), b = testing::random_series(rng, R, 3);
    CHECK(ultra_norm(a + b) <= std::max(ultra_norm(a), ultra_norm(b)));
    if (a.h_valuation() + b.h_valuation() <= 10) CHECK(ultra_norm(a * b) == ultra_norm(a) * ultra_norm(b));
  }
}

TEST_CASE("ring laws hold (property)") {
  std::mt19937_64 rng(17);
  auto R = make_ring({"a", "b"}, 4);
  for (int i = 0; i < 20; ++i) {
    auto a = testing::random_series(rng, R, 4), b = testing::random_series(rng, R, 4),
         c = testing::random_series(rng, R, 4);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a - a == TruncSeries(R));
  }
}

TEST_CASE("Laurent symbol inverts") {
  auto R = make_ring({"Pi0", "P1"}, 4, 4, {"Pi0"});
  auto p = TruncSeries::var(R, "Pi0"), pinv = TruncSeries::var(R, "Pi0", -1);
  CHECK(p * pinv == TruncSeries::constant(R, Scalar(1)));
  CHECK(invert(p) == pinv);
}

TEST_CASE("calculus and substitution") {
  auto R = make_ring({"x", "y"}, 4);
  auto x = TruncSeries::var(R, "x"), y = TruncSeries::var(R, "y");
  auto f = x * x * y + x.scaled(Scalar(3));
  CHECK(f.derivative("x") == (x * y).scaled(Scalar(2)) + TruncSeries::constant(R, Scalar(3)));
  CHECK(f.derivative("x").integral("x") == f);
  auto g = substitute(x * x, {{"x", x + y}});
  CHECK(g == x * x + (x * y).scaled(Scalar(2)) + y * y);
  CHECK(std::abs(f.evaluate({{"x", 2.0}, {"y", 0.5}, {"h", 0.0}}) - std::complex<double>(8.0)) < 1e-12);
}
