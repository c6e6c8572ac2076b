#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kappa/scalar.hpp"
#include "kappa/series.hpp"

namespace kappa {

// Every monomial algebra used in tensors keeps the h exponent in the top byte of its key.
namespace key {
inline int h(std::uint64_t k) { return static_cast<int>(k >> 56); }
inline std::uint64_t strip(std::uint64_t k) { return k & ((std::uint64_t{1} << 56) - 1); }
inline std::uint64_t with_h(std::uint64_t k, int hp) {
  if (hp < 0 || hp > 255) throw std::overflow_error("h exponent out of range");
  return strip(k) | (static_cast<std::uint64_t>(hp) << 56);
}
}  // namespace key

template <int L>
struct TKeyHash {
  std::size_t operator()(const std::array<std::uint64_t, L>& k) const noexcept {
    std::uint64_t x = 0x9E3779B97F4A7C15ULL;
    for (auto v : k) {
      x ^= v + 0x9E3779B97F4A7C15ULL + (x << 6) + (x >> 2);
      x = (x ^ (x >> 31)) * 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(x ^ (x >> 29));
  }
};

// Finite sum of pure tensors of monomials of Alg with the total h power on leg 0.
// Alg provides product(a, b, out) on h-free keys and mono_string(k).
template <class Alg, int L>
class Tensor {
 public:
  using Key = std::array<std::uint64_t, L>;
  using Term = std::pair<Key, Scalar>;
  using AlgPtr = std::shared_ptr<const Alg>;

  Tensor() = default;
  Tensor(AlgPtr alg, int order) : alg_(std::move(alg)), order_(order) {}

  static Tensor one(AlgPtr alg, int order) {
    Tensor t(std::move(alg), order);
    t.terms_.emplace_back(Key{}, Scalar(1));
    return t;
  }

  static Tensor from_terms(AlgPtr alg, int order, std::vector<Term> raw) {
    Tensor t(std::move(alg), order);
    t.canonicalize(std::move(raw));
    return t;
  }

  // Pure tensor a_0 (x) ... (x) a_{L-1} of one-leg elements.
  static Tensor pure(const std::array<Tensor<Alg, 1>, L>& legs) {
    Tensor t(legs[0].alg(), legs[0].order());
    std::vector<Term> acc{{Key{}, Scalar(1)}};
    for (int l = 0; l < L; ++l) {
      std::vector<Term> next;
      for (const auto& [k, c] : acc)
        for (const auto& [lk, lc] : legs[l].terms()) {
          int hs = key::h(k[0]) + key::h(lk[0]);
          if (hs > t.order_) continue;
          Key nk = k;
          nk[l] = key::strip(lk[0]);
          nk[0] = key::with_h(nk[0], hs);
          next.emplace_back(nk, c * lc);
        }
      acc = std::move(next);
    }
    t.canonicalize(std::move(acc));
    return t;
  }

  const AlgPtr& alg() const { return alg_; }
  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  static int h_of(const Key& k) { return key::h(k[0]); }

  int h_valuation() const {
    if (terms_.empty()) return -1;
    int lo = 255;
    for (const auto& t : terms_) lo = std::min(lo, h_of(t.first));
    return lo;
  }
  mpq_class ultra_norm() const {
    if (terms_.empty()) return 0;
    mpz_class d = 1;
    d <<= h_valuation();
    return mpq_class(1) / mpq_class(d);
  }

  Tensor& operator+=(const Tensor& o) { return merge(o, false); }
  Tensor& operator-=(const Tensor& o) { return merge(o, true); }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  Tensor operator-() const { return scaled(Scalar(-1)); }
  Tensor scaled(const Scalar& c) const {
    Tensor t(alg_, order_);
    if (c.is_zero()) return t;
    t.terms_ = terms_;
    for (auto& x : t.terms_) x.second *= c;
    return t;
  }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
    return true;
  }
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

  friend Tensor operator*(const Tensor& a, const Tensor& b) {
    if (a.order_ != b.order_) throw OrderMismatch("tensor order mismatch");
    Tensor out(a.alg_ ? a.alg_ : b.alg_, a.order_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    const Alg& alg = *out.alg_;
    std::unordered_map<Key, Scalar, TKeyHash<L>> acc;
    std::array<std::vector<std::pair<std::uint64_t, Scalar>>, L> ex;
    for (const auto& [ka, ca] : a.terms_) {
      int ha = h_of(ka);
      for (const auto& [kb, cb] : b.terms_) {
        int hs = ha + h_of(kb);
        if (hs > a.order_) continue;
        for (int l = 0; l < L; ++l) alg.product(key::strip(ka[l]), key::strip(kb[l]), ex[l]);
        Scalar cab = ca * cb;
        // Cartesian product over legs.
        std::array<std::size_t, L> idx{};
        while (true) {
          Key k;
          Scalar c = cab;
          for (int l = 0; l < L; ++l) {
            k[l] = ex[l][idx[l]].first;
            c *= ex[l][idx[l]].second;
          }
          k[0] = key::with_h(k[0], hs);
          auto [it, ins] = acc.try_emplace(k, c);
          if (!ins) it->second += c;
          int l = 0;
          while (l < L && ++idx[l] == ex[l].size()) idx[l++] = 0;
          if (l == L) break;
        }
      }
    }
    std::vector<Term> raw;
    raw.reserve(acc.size());
    for (auto& kv : acc)
      if (!kv.second.is_zero()) raw.emplace_back(kv.first, std::move(kv.second));
    std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    out.terms_ = std::move(raw);
    return out;
  }

  Tensor truncated(int order) const {
    std::vector<Term> raw = terms_;
    return from_terms(alg_, order, std::move(raw));
  }

  // Result leg i is source leg perm[i].
  Tensor permuted(const std::array<int, L>& perm) const {
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (const auto& [k, c] : terms_) {
      Key nk;
      for (int i = 0; i < L; ++i) nk[i] = key::strip(k[perm[i]]);
      nk[0] = key::with_h(nk[0], h_of(k));
      raw.emplace_back(nk, c);
    }
    return from_terms(alg_, order_, std::move(raw));
  }

  // Places leg i at position pos[i] of an M-leg tensor; remaining legs carry the unit.
  template <int M>
  Tensor<Alg, M> embed(const std::array<int, L>& pos) const {
    std::vector<typename Tensor<Alg, M>::Term> raw;
    raw.reserve(terms_.size());
    for (const auto& [k, c] : terms_) {
      typename Tensor<Alg, M>::Key nk{};
      for (int i = 0; i < L; ++i) nk[pos[i]] = key::strip(k[i]);
      nk[0] = key::with_h(nk[0], h_of(k));
      raw.emplace_back(nk, c);
    }
    return Tensor<Alg, M>::from_terms(alg_, order_, std::move(raw));
  }

  // Terms at exactly h^k, with h removed.
  Tensor h_component(int k) const {
    std::vector<Term> raw;
    for (const auto& [key_, c] : terms_)
      if (h_of(key_) == k) {
        Key nk = key_;
        nk[0] = key::strip(nk[0]);
        raw.emplace_back(nk, c);
      }
    return from_terms(alg_, order_, std::move(raw));
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.to_string();
      if (h_of(k)) os << "*h^" << h_of(k);
      os << "*[";
      for (int l = 0; l < L; ++l) {
        if (l) os << " (x) ";
        os << alg_->mono_string(key::strip(k[l]));
      }
      os << "]";
    }
    return os.str();
  }

 private:
  void canonicalize(std::vector<Term>&& raw) {
    std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    terms_.clear();
    for (auto& t : raw) {
      if (h_of(t.first) > order_) continue;
      if (!terms_.empty() && terms_.back().first == t.first) {
        terms_.back().second += t.second;
        if (terms_.back().second.is_zero()) terms_.pop_back();
      } else if (!t.second.is_zero()) {
        terms_.push_back(std::move(t));
      }
    }
  }

  Tensor& merge(const Tensor& o, bool subtract) {
    if (!alg_) alg_ = o.alg_;
    if (order_ != o.order_) throw OrderMismatch("tensor order mismatch");
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    const auto& a = terms_;
    const auto& b = o.terms_;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
        ++j;
      } else {
        Scalar c = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
        if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  AlgPtr alg_;
  int order_ = kDefaultOrder;
  std::vector<Term> terms_;
};

// exp(u) for u of positive h valuation (terminates by truncation).
template <class Alg, int L>
Tensor<Alg, L> tensor_exp(const Tensor<Alg, L>& u) {
  if (!u.is_zero() && u.h_valuation() < 1) throw std::domain_error("tensor exp requires positive h valuation");
  Tensor<Alg, L> sum = Tensor<Alg, L>::one(u.alg(), u.order());
  Tensor<Alg, L> pw = sum;
  for (int k = 1;; ++k) {
    pw = (pw * u).scaled(Scalar(mpq_class(1, k)));
    if (pw.is_zero()) break;
    sum += pw;
  }
  return sum;
}

// Inverse of 1 + u with u of positive h valuation.
template <class Alg, int L>
Tensor<Alg, L> tensor_inverse(const Tensor<Alg, L>& a) {
  Tensor<Alg, L> one = Tensor<Alg, L>::one(a.alg(), a.order());
  Tensor<Alg, L> u = one - a;
  if (!u.is_zero() && u.h_valuation() < 1) throw NonUnit("tensor inverse requires 1 + O(h)");
  Tensor<Alg, L> sum = one, pw = one;
  while (true) {
    pw = pw * u;
    if (pw.is_zero()) break;
    sum += pw;
  }
  return sum;
}

// e^{ad u}(x) = sum_k ad_u^k(x)/k!.
template <class Alg, int L>
Tensor<Alg, L> tensor_exp_ad(const Tensor<Alg, L>& u, const Tensor<Alg, L>& x) {
  Tensor<Alg, L> sum = x, cur = x;
  for (int k = 1;; ++k) {
    cur = (u * cur - cur * u).scaled(Scalar(mpq_class(1, k)));
    if (cur.is_zero()) break;
    sum += cur;
  }
  return sum;
}

}  // namespace kappa
