#pragma once

#include <random>
#include <string>
#include <vector>

#include "kappa/series.hpp"
#include "kappa/weyl.hpp"

namespace testing {

inline mpq_class small_rational(std::mt19937_64& rng, int span = 5, int den = 4) {
  std::uniform_int_distribution<int> n(-span, span), d(1, den);
  mpq_class q(n(rng), d(rng));
  q.canonicalize();
  return q;
}

inline kappa::Scalar small_scalar(std::mt19937_64& rng) {
  std::bernoulli_distribution complex(0.3);
  return complex(rng) ? kappa::Scalar(small_rational(rng), small_rational(rng)) : kappa::Scalar(small_rational(rng));
}

// Random series with `terms` monomials of total exponent <= 3 in each variable.
inline kappa::TruncSeries random_series(std::mt19937_64& rng, const kappa::RingPtr& R, int terms, int min_h = 0) {
  std::uniform_int_distribution<int> e(0, 2), hp(min_h, std::max(min_h, R->h_order));
  std::vector<kappa::TruncSeries::Term> raw;
  for (int t = 0; t < terms; ++t) {
    kappa::Mono m;
    m.e[0] = static_cast<std::int8_t>(hp(rng));
    for (std::size_t v = 1; v < R->vars.size(); ++v) m.e[v] = static_cast<std::int8_t>(e(rng));
    raw.emplace_back(m, small_scalar(rng));
  }
  return kappa::TruncSeries::from_terms(R, std::move(raw));
}

// Random polynomial in x0..x3 of degree <= 3 with rational coefficients.
inline kappa::PolyState random_poly(std::mt19937_64& rng, int order, int terms = 4) {
  std::uniform_int_distribution<int> e(0, 1), hp(0, 1);
  std::vector<kappa::WeylElement::Term> raw;
  for (int t = 0; t < terms; ++t) {
    std::array<int, 4> x{};
    for (auto& v : x) v = e(rng);
    raw.emplace_back(kappa::wmono::make(x, {0, 0, 0, 0}, hp(rng)), kappa::Scalar(small_rational(rng)));
  }
  return kappa::WeylElement::from_terms(order, kappa::MetricSig::mostly_plus(), std::move(raw));
}

}  // namespace testing
