#include "kappa/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace kappa {

namespace {

std::mutex& ring_mutex() {
  static std::mutex m;
  return m;
}

std::vector<RingPtr>& ring_pool() {
  static std::vector<RingPtr> pool;
  return pool;
}

RingPtr intern(SeriesRing r) {
  std::lock_guard<std::mutex> lock(ring_mutex());
  for (const auto& p : ring_pool())
    if (*p == r) return p;
  auto p = std::make_shared<const SeriesRing>(std::move(r));
  ring_pool().push_back(p);
  return p;
}

using Accum = std::unordered_map<Mono, Scalar, MonoHash>;

int capped_degree(const SeriesRing& r, const Mono& m) {
  int d = 0;
  for (std::size_t i = 1; i < r.vars.size(); ++i)
    if (!r.laurent[i]) d += m.e[i];
  return d;
}

// Index map from ring a into ring b.
std::vector<int> index_map(const SeriesRing& a, const SeriesRing& b) {
  std::vector<int> map(a.vars.size());
  for (std::size_t i = 0; i < a.vars.size(); ++i) {
    map[i] = b.index(a.vars[i]);
    if (map[i] < 0) throw std::invalid_argument("symbol not in target ring: " + a.vars[i]);
  }
  return map;
}

}  // namespace

int SeriesRing::index(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

RingPtr make_ring(const std::vector<std::string>& symbols, int h_order, int deg_cap,
                  const std::vector<std::string>& laurent_symbols) {
  if (h_order < 0) throw std::invalid_argument("negative h_order");
  SeriesRing r;
  r.vars.push_back("h");
  r.laurent.push_back(false);
  for (const auto& s : symbols) {
    if (s == "h") continue;
    if (r.index(s) >= 0) continue;
    r.vars.push_back(s);
    r.laurent.push_back(std::find(laurent_symbols.begin(), laurent_symbols.end(), s) != laurent_symbols.end());
  }
  if (static_cast<int>(r.vars.size()) > kMaxVars) throw std::length_error("too many series symbols");
  r.h_order = h_order;
  r.deg_cap = deg_cap;
  return intern(std::move(r));
}

RingPtr ring_union(const RingPtr& a, const RingPtr& b) {
  if (a == b) return a;
  if (a->h_order != b->h_order)
    throw OrderMismatch("h_order mismatch: " + std::to_string(a->h_order) + " vs " + std::to_string(b->h_order));
  if (a->deg_cap != b->deg_cap && a->deg_cap >= 0 && b->deg_cap >= 0)
    throw OrderMismatch("degree cap mismatch");
  SeriesRing r = *a;
  r.deg_cap = std::max(a->deg_cap, b->deg_cap) < 0 ? -1 : (a->deg_cap >= 0 ? a->deg_cap : b->deg_cap);
  for (std::size_t i = 1; i < b->vars.size(); ++i) {
    int k = r.index(b->vars[i]);
    if (k < 0) {
      r.vars.push_back(b->vars[i]);
      r.laurent.push_back(b->laurent[i]);
    } else if (b->laurent[i]) {
      r.laurent[k] = true;
    }
  }
  if (static_cast<int>(r.vars.size()) > kMaxVars) throw std::length_error("too many series symbols");
  return intern(std::move(r));
}

RingPtr ring_with_order(const RingPtr& r, int h_order) {
  if (r->h_order == h_order) return r;
  SeriesRing c = *r;
  c.h_order = h_order;
  return intern(std::move(c));
}

// ---------------------------------------------------------------------------

bool TruncSeries::keep(const Mono& m) const {
  if (m.e[0] > ring_->h_order) return false;
  if (ring_->deg_cap >= 0 && capped_degree(*ring_, m) > ring_->deg_cap) return false;
  return true;
}

void TruncSeries::canonicalize(std::vector<Term>&& raw) {
  std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  terms_.clear();
  for (auto& t : raw) {
    if (!keep(t.first)) continue;
    if (!terms_.empty() && terms_.back().first == t.first) {
      terms_.back().second += t.second;
      if (terms_.back().second.is_zero()) terms_.pop_back();
    } else if (!t.second.is_zero()) {
      terms_.push_back(std::move(t));
    }
  }
}

TruncSeries TruncSeries::from_terms(const RingPtr& ring, std::vector<Term> terms) {
  TruncSeries s(ring);
  for (const auto& t : terms)
    for (std::size_t i = 0; i < ring->vars.size(); ++i)
      if (t.first.e[i] < 0 && !ring->laurent[i])
        throw std::invalid_argument("negative exponent on non-Laurent symbol " + ring->vars[i]);
  s.canonicalize(std::move(terms));
  return s;
}

TruncSeries TruncSeries::constant(const RingPtr& ring, const Scalar& c) {
  return monomial(ring, Mono{}, c);
}

TruncSeries TruncSeries::var(const RingPtr& ring, const std::string& name, int power) {
  int k = ring->index(name);
  if (k < 0) throw std::invalid_argument("unknown symbol: " + name);
  Mono m;
  m.e[k] = static_cast<std::int8_t>(power);
  return monomial(ring, m, Scalar(1));
}

TruncSeries TruncSeries::monomial(const RingPtr& ring, const Mono& m, const Scalar& c) {
  return from_terms(ring, {{m, c}});
}

Scalar TruncSeries::coeff(const Mono& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Mono& k) { return t.first < k; });
  if (it != terms_.end() && it->first == m) return it->second;
  return Scalar(0);
}

int TruncSeries::h_valuation() const { return terms_.empty() ? -1 : terms_.front().first.e[0]; }

mpq_class TruncSeries::ultra_norm() const {
  if (terms_.empty()) return 0;
  mpq_class r(1);
  mpz_class den = 1;
  den <<= h_valuation();
  r /= den;
  return r;
}

TruncSeries TruncSeries::embed(const RingPtr& target) const {
  if (target == ring_) return *this;
  auto map = index_map(*ring_, *target);
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Mono n;
    for (std::size_t i = 0; i < ring_->vars.size(); ++i) n.e[map[i]] = m.e[i];
    raw.emplace_back(n, c);
  }
  TruncSeries s(target);
  s.canonicalize(std::move(raw));
  return s;
}

namespace {

std::vector<TruncSeries::Term> merge(const std::vector<TruncSeries::Term>& a, const std::vector<TruncSeries::Term>& b,
                                     bool subtract) {
  std::vector<TruncSeries::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
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
  return out;
}

}  // namespace

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  if (o.ring_ != ring_) {
    RingPtr u = ring_union(ring_, o.ring_);
    *this = embed(u);
    return *this += o.embed(u);
  }
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  if (o.ring_ != ring_) {
    RingPtr u = ring_union(ring_, o.ring_);
    *this = embed(u);
    return *this -= o.embed(u);
  }
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries s(*this);
  for (auto& t : s.terms_) t.second = -t.second;
  return s;
}

TruncSeries TruncSeries::scaled(const Scalar& c) const {
  if (c.is_zero()) return TruncSeries(ring_);
  TruncSeries s(*this);
  for (auto& t : s.terms_) t.second *= c;
  return s;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  if (a.ring_ == b.ring_) return a.terms_.size() == b.terms_.size() &&
                                 std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                                            [](const auto& x, const auto& y) {
                                              return x.first == y.first && x.second == y.second;
                                            });
  return (a - b).is_zero();
}

TruncSeries TruncSeries::mul(const TruncSeries& a, const TruncSeries& b) {
  return mul_limited(a, b, std::numeric_limits<int>::max());
}

TruncSeries TruncSeries::mul_limited(const TruncSeries& a, const TruncSeries& b, int limit) {
  if (a.ring_ != b.ring_) {
    RingPtr u = ring_union(a.ring_, b.ring_);
    return mul_limited(a.embed(u), b.embed(u), limit);
  }
  const SeriesRing& r = *a.ring_;
  int hmax = std::min(limit, r.h_order);
  std::size_t nv = r.vars.size();
  TruncSeries out(a.ring_);
  if (a.terms_.empty() || b.terms_.empty()) return out;
  if (a.terms_.size() == 1 && a.terms_[0].first == Mono{}) return b.scaled(a.terms_[0].second).truncated_to(hmax);
  if (b.terms_.size() == 1 && b.terms_[0].first == Mono{}) return a.scaled(b.terms_[0].second).truncated_to(hmax);
  Accum acc;
  acc.reserve(a.terms_.size() + b.terms_.size());
  bool cap = r.deg_cap >= 0;
  std::vector<int> degb;
  if (cap) {
    degb.reserve(b.terms_.size());
    for (const auto& t : b.terms_) degb.push_back(capped_degree(r, t.first));
  }
  Scalar tmp;
  for (const auto& [ma, ca] : a.terms_) {
    int ha = ma.e[0];
    if (ha > hmax) break;
    int da = cap ? capped_degree(r, ma) : 0;
    for (std::size_t j = 0; j < b.terms_.size(); ++j) {
      const auto& [mb, cb] = b.terms_[j];
      if (ha + mb.e[0] > hmax) break;
      if (cap && da + degb[j] > r.deg_cap) continue;
      Mono m;
      for (std::size_t k = 0; k < nv; ++k) m.e[k] = static_cast<std::int8_t>(ma.e[k] + mb.e[k]);
      tmp = ca;
      tmp *= cb;
      auto [it, inserted] = acc.try_emplace(m, tmp);
      if (!inserted) it->second += tmp;
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

TruncSeries TruncSeries::truncated_to(int hmax) const {
  if (hmax >= ring_->h_order) return *this;
  TruncSeries s(ring_);
  for (const auto& t : terms_)
    if (t.first.e[0] <= hmax) s.terms_.push_back(t);
  return s;
}

TruncSeries TruncSeries::shift_h(int k) const {
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    int e = m.e[0] + k;
    if (e < 0) throw std::domain_error("series not divisible by h^" + std::to_string(-k));
    Mono n = m;
    n.e[0] = static_cast<std::int8_t>(e);
    raw.emplace_back(n, c);
  }
  TruncSeries s(ring_);
  s.canonicalize(std::move(raw));
  return s;
}

TruncSeries TruncSeries::truncated(int order) const { return truncated_to(order).with_order(std::min(order, h_order())); }

TruncSeries TruncSeries::with_order(int order) const {
  TruncSeries s(ring_with_order(ring_, order));
  std::vector<Term> raw = terms_;
  s.canonicalize(std::move(raw));
  return s;
}

TruncSeries TruncSeries::derivative(const std::string& var) const {
  int k = ring_->index(var);
  TruncSeries s(ring_);
  if (k < 0) return s;
  std::vector<Term> raw;
  for (const auto& [m, c] : terms_) {
    if (m.e[k] == 0) continue;
    Mono n = m;
    n.e[k] = static_cast<std::int8_t>(m.e[k] - 1);
    raw.emplace_back(n, c * Scalar(static_cast<long>(m.e[k])));
  }
  s.canonicalize(std::move(raw));
  return s;
}

TruncSeries TruncSeries::integral(const std::string& var) const {
  int k = ring_->index(var);
  if (k < 0) throw std::invalid_argument("unknown symbol: " + var);
  std::vector<Term> raw;
  for (const auto& [m, c] : terms_) {
    if (m.e[k] == -1) throw std::domain_error("logarithmic antiderivative");
    Mono n = m;
    n.e[k] = static_cast<std::int8_t>(m.e[k] + 1);
    raw.emplace_back(n, c / Scalar(static_cast<long>(n.e[k])));
  }
  TruncSeries s(ring_);
  s.canonicalize(std::move(raw));
  return s;
}

TruncSeries TruncSeries::rename(const std::map<std::string, std::string>& names) const {
  std::vector<std::string> syms;
  std::vector<std::string> laur;
  for (std::size_t i = 1; i < ring_->vars.size(); ++i) {
    auto it = names.find(ring_->vars[i]);
    std::string n = it == names.end() ? ring_->vars[i] : it->second;
    syms.push_back(n);
    if (ring_->laurent[i]) laur.push_back(n);
  }
  RingPtr target = make_ring(syms, ring_->h_order, ring_->deg_cap, laur);
  std::vector<int> map(ring_->vars.size());
  map[0] = 0;
  for (std::size_t i = 1; i < ring_->vars.size(); ++i) map[i] = target->index(syms[i - 1]);
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Mono n;
    for (std::size_t i = 0; i < ring_->vars.size(); ++i) n.e[map[i]] = static_cast<std::int8_t>(n.e[map[i]] + m.e[i]);
    raw.emplace_back(n, c);
  }
  TruncSeries s(target);
  s.canonicalize(std::move(raw));
  return s;
}

TruncSeries TruncSeries::conj() const {
  TruncSeries s(*this);
  for (auto& t : s.terms_) t.second = t.second.conj();
  return s;
}

bool TruncSeries::is_topologically_nilpotent() const {
  for (const auto& [m, c] : terms_) {
    if (m.e[0] > 0) continue;
    if (ring_->deg_cap >= 0 && capped_degree(*ring_, m) > 0) continue;
    return false;
  }
  return true;
}

std::complex<double> TruncSeries::evaluate(const std::map<std::string, std::complex<double>>& values) const {
  std::vector<std::complex<double>> v(ring_->vars.size());
  for (std::size_t i = 0; i < ring_->vars.size(); ++i) {
    auto it = values.find(ring_->vars[i]);
    bool used = std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.first.e[i] != 0; });
    if (it == values.end()) {
      if (used) throw std::invalid_argument("no value for symbol " + ring_->vars[i]);
      continue;
    }
    v[i] = it->second;
  }
  std::complex<double> sum = 0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (std::size_t i = 0; i < ring_->vars.size(); ++i)
      if (m.e[i] != 0) t *= std::pow(v[i], static_cast<double>(m.e[i]));
    sum += t;
  }
  return sum;
}

std::string TruncSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.to_string();
    bool unit = c.is_one();
    bool neg_unit = c == Scalar(-1);
    bool any_var = false;
    for (std::size_t i = 0; i < ring_->vars.size(); ++i) any_var |= m.e[i] != 0;
    if (!first) os << (cs[0] == '-' && !neg_unit ? " - " : (neg_unit ? " - " : " + "));
    else if (neg_unit) os << "-";
    if (!any_var) {
      os << (first ? cs : (cs[0] == '-' ? cs.substr(1) : cs));
    } else {
      bool wrote = false;
      if (!unit && !neg_unit) {
        os << (first || cs[0] != '-' ? cs : cs.substr(1));
        wrote = true;
      }
      for (std::size_t i = 0; i < ring_->vars.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (wrote) os << "*";
        os << ring_->vars[i];
        if (m.e[i] != 1) os << "^" << static_cast<int>(m.e[i]);
        wrote = true;
      }
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const TruncSeries& s) { return os << s.to_string(); }

// ---------------------------------------------------------------------------

TruncSeries apply_power_series(const TruncSeries& u, const std::function<Scalar(int)>& coeff) {
  if (!u.is_topologically_nilpotent())
    throw std::domain_error("power series argument must be nilpotent under truncation");
  TruncSeries sum = TruncSeries::constant(u.ring(), coeff(0));
  TruncSeries pw = TruncSeries::constant(u.ring(), Scalar(1));
  for (int k = 1;; ++k) {
    pw = pw * u;
    if (pw.is_zero()) break;
    Scalar c = coeff(k);
    if (!c.is_zero()) sum += pw.scaled(c);
  }
  return sum;
}

namespace {

// Single monomial with only Laurent symbols: a unit with an exact inverse.
bool laurent_unit(const TruncSeries& a) {
  if (a.size() != 1) return false;
  const auto& [m, c] = a.terms()[0];
  const SeriesRing& r = *a.ring();
  for (std::size_t i = 0; i < r.vars.size(); ++i)
    if (m.e[i] != 0 && !r.laurent[i]) return false;
  return !c.is_zero();
}

}  // namespace

TruncSeries invert(const TruncSeries& a) {
  if (laurent_unit(a)) {
    const auto& [m, c] = a.terms()[0];
    Mono n;
    for (int i = 0; i < kMaxVars; ++i) n.e[i] = static_cast<std::int8_t>(-m.e[i]);
    return TruncSeries::monomial(a.ring(), n, c.inverse());
  }
  Scalar c0 = a.constant_term();
  if (c0.is_zero()) throw NonUnit("series has zero constant term");
  Scalar ic = c0.inverse();
  TruncSeries u = (a - TruncSeries::constant(a.ring(), c0)).scaled(-ic);
  if (!u.is_topologically_nilpotent()) throw NonUnit("series is not invertible under truncation");
  return apply_power_series(u, [](int) { return Scalar(1); }).scaled(ic);
}

TruncSeries pow_fractional(const TruncSeries& a, const mpq_class& beta) {
  if (!a.constant_term().is_one()) throw std::domain_error("pow_fractional requires constant term 1");
  TruncSeries u = a - TruncSeries::constant(a.ring(), Scalar(1));
  return apply_power_series(u, [&](int k) { return Scalar(binomial(beta, k)); });
}

TruncSeries exp(const TruncSeries& a) {
  if (!a.constant_term().is_zero()) throw std::domain_error("exp requires zero constant term");
  mpz_class fact = 1;
  return apply_power_series(a, [&](int k) {
    if (k > 0) fact *= k;
    return Scalar(mpq_class(1, 1) / mpq_class(fact));
  });
}

TruncSeries log1p(const TruncSeries& u) {
  if (!u.constant_term().is_zero()) throw std::domain_error("log1p requires zero constant term");
  return apply_power_series(u, [](int k) {
    if (k == 0) return Scalar(0);
    return Scalar(mpq_class(k % 2 == 1 ? 1 : -1, k));
  });
}

mpq_class ultra_norm(const TruncSeries& a) { return a.ultra_norm(); }

// ---------------------------------------------------------------------------

namespace {

struct SubstItem {
  std::vector<int> exps;  // exponents of substituted symbols
  TruncSeries rest;       // coefficient monomial in the target ring
};

struct Horner {
  const std::vector<TruncSeries>& binding;
  const std::vector<TruncSeries>& inverse;
  RingPtr target;

  TruncSeries eval(std::vector<SubstItem*>& items, std::size_t level) const {
    TruncSeries out(target);
    if (items.empty()) return out;
    if (level == binding.size()) {
      for (auto* it : items) out += it->rest;
      return out;
    }
    std::map<int, std::vector<SubstItem*>> groups;
    for (auto* it : items) groups[it->exps[level]].push_back(it);
    int kmax = groups.rbegin()->first;
    int kmin = groups.begin()->first;
    if (kmax > 0) {
      TruncSeries acc(target);
      for (int k = kmax; k >= 1; --k) {
        auto g = groups.find(k);
        if (g != groups.end()) acc += eval(g->second, level + 1);
        if (!acc.is_zero()) acc = acc * binding[level];
      }
      out += acc;
    }
    if (auto g = groups.find(0); g != groups.end()) out += eval(g->second, level + 1);
    if (kmin < 0) {
      TruncSeries acc(target);
      for (int j = -kmin; j >= 1; --j) {
        auto g = groups.find(-j);
        if (g != groups.end()) acc += eval(g->second, level + 1);
        if (!acc.is_zero()) acc = acc * inverse[level];
      }
      out += acc;
    }
    return out;
  }
};

}  // namespace

TruncSeries substitute(const TruncSeries& a, const std::map<std::string, TruncSeries>& bindings) {
  const SeriesRing& ra = *a.ring();
  std::vector<int> slots;
  std::vector<TruncSeries> bind;
  RingPtr target = a.ring();
  for (const auto& [name, series] : bindings) {
    if (name == "h") throw std::invalid_argument("cannot substitute the truncation symbol h");
    int k = ra.index(name);
    if (k < 0) continue;
    slots.push_back(k);
    bind.push_back(series);
    target = ring_union(target, series.ring());
  }
  for (auto& b : bind) b = b.embed(target);
  std::vector<TruncSeries> inv(bind.size(), TruncSeries(target));
  std::vector<SubstItem> items;
  items.reserve(a.size());
  auto map = index_map(ra, *target);
  for (const auto& [m, c] : a.terms()) {
    SubstItem it{std::vector<int>(slots.size()), TruncSeries(target)};
    Mono n;
    for (std::size_t i = 0; i < ra.vars.size(); ++i) n.e[map[i]] = m.e[i];
    for (std::size_t s = 0; s < slots.size(); ++s) {
      it.exps[s] = m.e[slots[s]];
      n.e[map[slots[s]]] = 0;
    }
    it.rest = TruncSeries::monomial(target, n, c);
    items.push_back(std::move(it));
  }
  for (std::size_t s = 0; s < slots.size(); ++s) {
    bool negative = std::any_of(items.begin(), items.end(), [&](const SubstItem& it) { return it.exps[s] < 0; });
    if (negative) {
      try {
        inv[s] = invert(bind[s]);
      } catch (const std::domain_error&) {
        throw NonUnit("non-unit bound to Laurent symbol " + ra.vars[slots[s]]);
      }
    }
  }
  std::vector<SubstItem*> ptrs;
  for (auto& it : items) ptrs.push_back(&it);
  Horner h{bind, inv, target};
  return h.eval(ptrs, 0);
}

}  // namespace kappa
