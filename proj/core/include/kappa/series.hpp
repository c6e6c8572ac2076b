#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kappa/scalar.hpp"

namespace kappa {

inline constexpr int kMaxVars = 24;
inline constexpr int kDefaultOrder = 8;

struct OrderMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonUnit : std::domain_error {
  using std::domain_error::domain_error;
};

// Exponent vector; slot 0 is always h.
struct Mono {
  std::array<std::int8_t, kMaxVars> e{};

  friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
  friend bool operator<(const Mono& a, const Mono& b) { return a.e < b.e; }
  int h() const { return e[0]; }
};

struct MonoHash {
  std::size_t operator()(const Mono& m) const noexcept {
    std::uint64_t w[3] = {};
    static_assert(sizeof(m.e) == sizeof(w));
    std::memcpy(w, m.e.data(), sizeof(w));
    std::uint64_t x = w[0] * 0x9E3779B97F4A7C15ULL;
    x ^= (w[1] + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
    x ^= (w[2] + 0x165667B19E3779F9ULL) * 0x94D049BB133111EBULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

// Variable layout and truncation rules shared by a family of series.
struct SeriesRing {
  std::vector<std::string> vars;  // vars[0] == "h"
  std::vector<bool> laurent;
  int h_order = kDefaultOrder;
  int deg_cap = -1;  // total degree cap over non-h, non-Laurent symbols

  int index(const std::string& name) const;  // -1 if absent
  bool operator==(const SeriesRing& o) const {
    return vars == o.vars && laurent == o.laurent && h_order == o.h_order && deg_cap == o.deg_cap;
  }
};
using RingPtr = std::shared_ptr<const SeriesRing>;

// Returns the canonical shared instance; rings that compare equal share a pointer.
RingPtr make_ring(const std::vector<std::string>& symbols, int h_order = kDefaultOrder, int deg_cap = -1,
                  const std::vector<std::string>& laurent_symbols = {});
RingPtr ring_union(const RingPtr& a, const RingPtr& b);
RingPtr ring_with_order(const RingPtr& r, int h_order);

class TruncSeries {
 public:
  using Term = std::pair<Mono, Scalar>;

  TruncSeries() : TruncSeries(make_ring({})) {}
  explicit TruncSeries(RingPtr ring) : ring_(std::move(ring)) {}

  static TruncSeries constant(const RingPtr& ring, const Scalar& c);
  static TruncSeries var(const RingPtr& ring, const std::string& name, int power = 1);
  static TruncSeries h(const RingPtr& ring, int power = 1) { return var(ring, "h", power); }
  static TruncSeries monomial(const RingPtr& ring, const Mono& m, const Scalar& c);
  // Builds from raw terms; truncates and merges.
  static TruncSeries from_terms(const RingPtr& ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  int h_order() const { return ring_->h_order; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coeff(const Mono& m) const;
  Scalar constant_term() const { return coeff(Mono{}); }
  // Lowest h power present; -1 for the zero series.
  int h_valuation() const;
  // 2^{-n} with n the lowest h power, 0 for the zero series.
  mpq_class ultra_norm() const;

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  TruncSeries& operator*=(const TruncSeries& o) { return *this = mul(*this, o); }
  TruncSeries operator-() const;
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul(a, b); }
  TruncSeries scaled(const Scalar& c) const;
  friend TruncSeries operator*(const Scalar& c, const TruncSeries& a) { return a.scaled(c); }
  friend TruncSeries operator*(const TruncSeries& a, const Scalar& c) { return a.scaled(c); }

  // Structural equality after embedding both into the union ring.
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

  static TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
  // Product keeping only h powers <= limit.
  static TruncSeries mul_limited(const TruncSeries& a, const TruncSeries& b, int limit);

  // Multiplies by h^k; negative k requires divisibility.
  TruncSeries shift_h(int k) const;
  TruncSeries embed(const RingPtr& target) const;
  TruncSeries truncated(int order) const;
  TruncSeries truncated_to(int hmax) const;  // drops h powers above hmax, keeps the ring
  TruncSeries with_order(int order) const;  // same symbols, new h_order
  TruncSeries derivative(const std::string& var) const;
  // Antiderivative with zero constant of integration.
  TruncSeries integral(const std::string& var) const;
  TruncSeries rename(const std::map<std::string, std::string>& names) const;
  TruncSeries conj() const;

  // Every term carries positive h power or positive capped degree.
  bool is_topologically_nilpotent() const;

  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& values) const;

  std::string to_string() const;

 private:
  void canonicalize(std::vector<Term>&& raw);
  bool keep(const Mono& m) const;

  RingPtr ring_;
  std::vector<Term> terms_;  // sorted, zero-free
};

TruncSeries invert(const TruncSeries& a);
TruncSeries pow_fractional(const TruncSeries& a, const mpq_class& beta);
TruncSeries exp(const TruncSeries& a);
TruncSeries log1p(const TruncSeries& u);
// Applies sum_k c_k u^k for nilpotent u; coefficients provided lazily.
TruncSeries apply_power_series(const TruncSeries& u, const std::function<Scalar(int)>& coeff);
TruncSeries substitute(const TruncSeries& a, const std::map<std::string, TruncSeries>& bindings);
mpq_class ultra_norm(const TruncSeries& a);

std::ostream& operator<<(std::ostream& os, const TruncSeries& s);

}  // namespace kappa
