#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kappa/hopf.hpp"
#include "kappa/pheno.hpp"
#include "kappa/series.hpp"
#include "kappa/weyl.hpp"

namespace kappa {

// {"vars": [...], "laurent": [...], "h_order": n, "deg_cap": c,
//  "terms": [{"exponents": [...], "re": "p/q", "im": "p/q"}]}
std::string series_to_json(const TruncSeries& s);
TruncSeries series_from_json(const std::string& text);

// {"h_order": n, "metric": "-+++", "terms": [{"x": [..4], "p": [..4], "h": k, "re": "p/q", "im": "p/q"}]}
std::string weyl_to_json(const WeylElement& w);
WeylElement weyl_from_json(const std::string& text);

std::string results_to_json(const std::vector<AxiomResult>& v);
std::string delay_model_to_json(const DelayModel& d);

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

// Polynomial in x0..x3 (and h) with rational or imaginary coefficients:
// "x0*x1 - 1/2*i*h*x1^2 + (x2 + 3)^2". Whitespace is ignored.
PolyState parse_polynomial(const std::string& text, int h_order = kDefaultOrder, MetricSig metric = {});

}  // namespace kappa
