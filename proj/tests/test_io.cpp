#include <random>

#include "doctest.h"
#include "kappa/hopf.hpp"
#include "kappa/io.hpp"
#include "support.hpp"

using namespace kappa;

TEST_CASE("series JSON round-trips bit-exactly (property)") {
  std::mt19937_64 rng(37);
  auto R = make_ring({"P0", "P1", "Pi0"}, 6, 8, {"Pi0"});
  for (int i = 0; i < 30; ++i) {
    auto s = testing::random_series(rng, R, 6);
    std::string j = series_to_json(s);
    auto back = series_from_json(j);
    CHECK(back == s);
    CHECK(back.ring().get() == s.ring().get());
    CHECK(series_to_json(back) == j);
  }
}

TEST_CASE("Weyl JSON round-trips bit-exactly (property)") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 30; ++i) {
    auto w = testing::random_poly(rng, 5, 6) * WeylElement::p(i % 4, 5);
    std::string j = weyl_to_json(w);
    CHECK(weyl_from_json(j) == w);
    CHECK(weyl_to_json(weyl_from_json(j)) == j);
  }
  auto g = WeylElement::x(1, 3, MetricSig::mostly_minus());
  CHECK(weyl_from_json(weyl_to_json(g)).metric() == MetricSig::mostly_minus());
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS(series_from_json("{"));
  CHECK_THROWS(series_from_json(R"({"vars":["a"],"h_order":2,"terms":[{"exponents":[0],"re":"1","im":"0"}]})"));
  CHECK_THROWS(weyl_from_json(R"({"h_order":2,"metric":"-+++","terms":[{"x":[0,0,0,0],"p":[0,0,0,0],"h":0,"re":"x","im":"0"}]})"));
}

TEST_CASE("polynomial parser") {
  const int N = 4;
  auto x = [&](int mu) { return WeylElement::x(mu, N); };
  auto h = WeylElement::h_power(1, N);
  auto p = parse_polynomial("x0*x1 - 1/2*i*h*x1^2 + (x2 + 3)^2", N);
  auto want = x(0) * x(1) - (h * x(1) * x(1)).scaled(Scalar(0, mpq_class(1, 2))) + x(2) * x(2) +
              x(2).scaled(Scalar(6)) + WeylElement::constant(N, Scalar(9));
  CHECK(p == want);
  CHECK(parse_polynomial("  -x3 ", N) == -x(3));
  CHECK(parse_polynomial("1", N) == WeylElement::constant(N, Scalar(1)));
  CHECK(parse_polynomial("x1^0", N) == WeylElement::constant(N, Scalar(1)));
}

TEST_CASE("parse errors carry the position") {
  auto pos = [](const std::string& s) -> long {
    try {
      parse_polynomial(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position);
    }
    return -1;
  };
  CHECK(pos("x0 + * x1") == 5);
  CHECK(pos("x7") == 1);
  CHECK(pos("(x0 + x1") == 8);
  CHECK(pos("x0 ^") == 4);
  CHECK(pos("x0 $") == 3);
  CHECK(pos("1/0") == 0);
}

TEST_CASE("result JSON") {
  AxiomResult r{"counit", "P0", 4, mpq_class(1, 4), false};
  CHECK(results_to_json({r}) ==
        R"([{"axiom":"counit","generators":"P0","order":4,"pass":false,"residual_ultra_norm":"1/4"}])");
}
