#include "kappa/weyl.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace kappa {

MetricSig MetricSig::mostly_plus(int n) {
  MetricSig m;
  m.n = n;
  m.sig = {-1, 1, 1, 1};
  return m;
}

MetricSig MetricSig::mostly_minus(int n) {
  MetricSig m;
  m.n = n;
  m.sig = {1, -1, -1, -1};
  return m;
}

MetricSig MetricSig::parse(const std::string& s) {
  if (s == "-+++" || s == "mostly-plus" || s == "(-,+,+,+)") return mostly_plus();
  if (s == "+---" || s == "mostly-minus" || s == "(+,-,-,-)") return mostly_minus();
  if (s.size() >= 2 && s.size() <= 4 && s.find_first_not_of("+-") == std::string::npos) {
    MetricSig m;
    m.n = static_cast<int>(s.size());
    m.sig = {1, 1, 1, 1};
    for (int i = 0; i < m.n; ++i) m.sig[i] = s[i] == '+' ? 1 : -1;
    return m;
  }
  throw std::invalid_argument("unknown metric signature: " + s);
}

std::string MetricSig::to_string() const {
  std::string s;
  for (int i = 0; i < n; ++i) s += sig[i] > 0 ? '+' : '-';
  return s;
}

namespace wmono {

std::uint64_t make(const std::array<int, 4>& xe, const std::array<int, 4>& pe, int hp) {
  std::uint64_t m = 0;
  for (int mu = 0; mu < 4; ++mu) {
    if (xe[mu] < 0 || pe[mu] < 0 || xe[mu] > static_cast<int>(kMask) || pe[mu] > static_cast<int>(kMask))
      throw std::overflow_error("Weyl exponent out of range");
    m |= static_cast<std::uint64_t>(xe[mu]) << (kBits * mu);
    m |= static_cast<std::uint64_t>(pe[mu]) << (kBits * (4 + mu));
  }
  if (hp < 0 || hp > 255) throw std::overflow_error("h exponent out of range");
  return with_h(m, hp);
}

namespace {

constexpr int kTable = 40;

// C(b,k) * c!/(c-k)!: coefficient of x^{c-k} p^{b-k} in p^b x^c (before the (-i)^k phase).
struct OrderingTable {
  std::vector<mpz_class> v;
  OrderingTable() : v(kTable * kTable * kTable) {
    for (int b = 0; b < kTable; ++b)
      for (int c = 0; c < kTable; ++c) {
        mpz_class binom = 1, fall = 1;
        for (int k = 0; k <= std::min(b, c); ++k) {
          if (k > 0) {
            binom = binom * (b - k + 1) / k;
            fall *= (c - k + 1);
          }
          v[(b * kTable + c) * kTable + k] = binom * fall;
        }
      }
  }
  const mpz_class& at(int b, int c, int k) const {
    if (b >= kTable || c >= kTable) throw std::overflow_error("ordering table exceeded");
    return v[(b * kTable + c) * kTable + k];
  }
};

const OrderingTable& table() {
  static const OrderingTable t;
  return t;
}

}  // namespace

void product(std::uint64_t a, std::uint64_t b, std::vector<std::pair<std::uint64_t, Scalar>>& out) {
  out.clear();
  std::array<int, 4> xe{}, pe{};
  int idx[4], kmax[4], nover = 0;
  for (int mu = 0; mu < 4; ++mu) {
    int pa = p(a, mu), xb = x(b, mu);
    xe[mu] = x(a, mu) + xb;
    pe[mu] = pa + p(b, mu);
    if (pa > 0 && xb > 0) {
      idx[nover] = mu;
      kmax[nover] = std::min(pa, xb);
      ++nover;
    }
  }
  if (nover == 0) {
    out.emplace_back(make(xe, pe), Scalar(1));
    return;
  }
  const auto& tab = table();
  int k[4] = {0, 0, 0, 0};
  while (true) {
    mpz_class c = 1;
    int ksum = 0;
    std::array<int, 4> x2 = xe, p2 = pe;
    for (int j = 0; j < nover; ++j) {
      int mu = idx[j];
      c *= tab.at(p(a, mu), x(b, mu), k[j]);
      x2[mu] -= k[j];
      p2[mu] -= k[j];
      ksum += k[j];
    }
    out.emplace_back(make(x2, p2), i_pow(-ksum) * Scalar(mpq_class(c)));
    int j = 0;
    while (j < nover && ++k[j] > kmax[j]) k[j++] = 0;
    if (j == nover) break;
  }
}

}  // namespace wmono

// ---------------------------------------------------------------------------

void WeylElement::canonicalize(std::vector<Term>&& raw) {
  std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  terms_.clear();
  for (auto& t : raw) {
    if (wmono::h(t.first) > h_order_) continue;
    if (!terms_.empty() && terms_.back().first == t.first) {
      terms_.back().second += t.second;
      if (terms_.back().second.is_zero()) terms_.pop_back();
    } else if (!t.second.is_zero()) {
      terms_.push_back(std::move(t));
    }
  }
}

WeylElement WeylElement::from_terms(int h_order, MetricSig metric, std::vector<Term> raw) {
  WeylElement w(h_order, metric);
  w.canonicalize(std::move(raw));
  return w;
}

WeylElement WeylElement::constant(int h_order, const Scalar& c, MetricSig metric) {
  return from_terms(h_order, metric, {{0, c}});
}

WeylElement WeylElement::x(int mu, int h_order, MetricSig metric) {
  std::array<int, 4> xe{}, pe{};
  xe.at(mu) = 1;
  return from_terms(h_order, metric, {{wmono::make(xe, pe), Scalar(1)}});
}

WeylElement WeylElement::p(int mu, int h_order, MetricSig metric) {
  std::array<int, 4> xe{}, pe{};
  pe.at(mu) = 1;
  return from_terms(h_order, metric, {{wmono::make(xe, pe), Scalar(1)}});
}

WeylElement WeylElement::h_power(int k, int h_order, MetricSig metric) {
  return from_terms(h_order, metric, {{wmono::make({}, {}, k), Scalar(1)}});
}

WeylElement WeylElement::x_lower(int mu, int h_order, MetricSig metric) {
  return x(mu, h_order, metric).scaled(Scalar(metric.eta(mu)));
}

WeylElement WeylElement::p_upper(int mu, int h_order, MetricSig metric) {
  return p(mu, h_order, metric).scaled(Scalar(metric.eta(mu)));
}

RingPtr momentum_ring(int h_order) { return make_ring({"p0", "p1", "p2", "p3"}, h_order); }

WeylElement WeylElement::from_momentum_series(const TruncSeries& s, MetricSig metric) {
  const SeriesRing& r = *s.ring();
  std::array<int, 4> slot{-1, -1, -1, -1};
  for (int mu = 0; mu < 4; ++mu) slot[mu] = r.index("p" + std::to_string(mu));
  std::vector<Term> raw;
  raw.reserve(s.size());
  for (const auto& [m, c] : s.terms()) {
    std::array<int, 4> pe{};
    int used = 0;
    for (int mu = 0; mu < 4; ++mu)
      if (slot[mu] >= 0) {
        pe[mu] = m.e[slot[mu]];
        used += pe[mu] != 0;
      }
    int other = 0;
    for (std::size_t i = 1; i < r.vars.size(); ++i) other += m.e[i] != 0;
    if (other != used) throw std::invalid_argument("momentum series contains non-momentum symbols");
    raw.emplace_back(wmono::make({}, pe, m.e[0]), c);
  }
  return from_terms(s.h_order(), metric, std::move(raw));
}

TruncSeries WeylElement::to_momentum_series() const {
  RingPtr r = momentum_ring(h_order_);
  std::vector<TruncSeries::Term> raw;
  for (const auto& [m, c] : terms_) {
    Mono mono;
    mono.e[0] = static_cast<std::int8_t>(wmono::h(m));
    for (int mu = 0; mu < 4; ++mu) {
      if (wmono::x(m, mu) != 0) throw std::invalid_argument("element contains positions");
      mono.e[1 + mu] = static_cast<std::int8_t>(wmono::p(m, mu));
    }
    raw.emplace_back(mono, c);
  }
  return TruncSeries::from_terms(r, std::move(raw));
}

int WeylElement::lowest_h() const {
  int lo = 255;
  for (const auto& t : terms_) lo = std::min(lo, wmono::h(t.first));
  return lo;
}

mpq_class WeylElement::ultra_norm() const {
  if (terms_.empty()) return 0;
  mpz_class den = 1;
  den <<= lowest_h();
  return mpq_class(1) / mpq_class(den);
}

bool WeylElement::has_momenta() const {
  for (const auto& t : terms_)
    for (int mu = 0; mu < 4; ++mu)
      if (wmono::p(t.first, mu)) return true;
  return false;
}

bool WeylElement::has_positions() const {
  for (const auto& t : terms_)
    for (int mu = 0; mu < 4; ++mu)
      if (wmono::x(t.first, mu)) return true;
  return false;
}

TruncSeries WeylElement::coefficient(const std::array<int, 4>& xe, const std::array<int, 4>& pe) const {
  RingPtr r = make_ring({}, h_order_);
  std::uint64_t key = wmono::make(xe, pe);
  std::vector<TruncSeries::Term> raw;
  for (const auto& [m, c] : terms_)
    if (wmono::strip_h(m) == key) {
      Mono mono;
      mono.e[0] = static_cast<std::int8_t>(wmono::h(m));
      raw.emplace_back(mono, c);
    }
  return TruncSeries::from_terms(r, std::move(raw));
}

namespace {

void check_compatible(const WeylElement& a, const WeylElement& b) {
  if (!(a.metric() == b.metric())) throw std::invalid_argument("metric mismatch");
  if (a.h_order() != b.h_order())
    throw OrderMismatch("Weyl h_order mismatch: " + std::to_string(a.h_order()) + " vs " +
                        std::to_string(b.h_order()));
}

std::vector<WeylElement::Term> merge_terms(const std::vector<WeylElement::Term>& a,
                                           const std::vector<WeylElement::Term>& b, bool subtract) {
  std::vector<WeylElement::Term> out;
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

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  check_compatible(*this, o);
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  check_compatible(*this, o);
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

WeylElement WeylElement::operator-() const { return scaled(Scalar(-1)); }

WeylElement WeylElement::scaled(const Scalar& c) const {
  WeylElement w(h_order_, metric_);
  if (c.is_zero()) return w;
  w.terms_ = terms_;
  for (auto& t : w.terms_) t.second *= c;
  return w;
}

bool operator==(const WeylElement& a, const WeylElement& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  check_compatible(a, b);
  WeylElement out(a.h_order_, a.metric_);
  if (a.terms_.empty() || b.terms_.empty()) return out;
  std::unordered_map<std::uint64_t, Scalar, U64Hash> acc;
  acc.reserve(a.terms_.size() * 2 + b.terms_.size() * 2);
  std::vector<std::pair<std::uint64_t, Scalar>> prod;
  Scalar cab, tmp;
  for (const auto& [ma, ca] : a.terms_) {
    int ha = wmono::h(ma);
    for (const auto& [mb, cb] : b.terms_) {
      int hsum = ha + wmono::h(mb);
      if (hsum > a.h_order_) continue;
      wmono::product(ma, mb, prod);
      cab = ca;
      cab *= cb;
      for (auto& [m, c] : prod) {
        tmp = cab;
        tmp *= c;
        auto [it, ins] = acc.try_emplace(wmono::with_h(m, hsum), tmp);
        if (!ins) it->second += tmp;
      }
    }
  }
  std::vector<WeylElement::Term> raw;
  raw.reserve(acc.size());
  for (auto& kv : acc)
    if (!kv.second.is_zero()) raw.emplace_back(kv.first, std::move(kv.second));
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  out.terms_ = std::move(raw);
  return out;
}

WeylElement WeylElement::shift_h(int k) const {
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    int e = wmono::h(m) + k;
    if (e < 0) throw std::domain_error("Weyl element not divisible by h");
    raw.emplace_back(wmono::with_h(m, e), c);
  }
  return from_terms(h_order_, metric_, std::move(raw));
}

WeylElement WeylElement::truncated(int order) const {
  std::vector<Term> raw = terms_;
  return from_terms(order, metric_, std::move(raw));
}

WeylElement WeylElement::adjoint() const {
  WeylElement out(h_order_, metric_);
  std::vector<std::pair<std::uint64_t, Scalar>> prod;
  std::vector<Term> raw;
  for (const auto& [m, c] : terms_) {
    std::array<int, 4> xe{}, pe{};
    for (int mu = 0; mu < 4; ++mu) {
      xe[mu] = wmono::x(m, mu);
      pe[mu] = wmono::p(m, mu);
    }
    wmono::product(wmono::make({}, pe), wmono::make(xe, {}), prod);
    Scalar cc = c.conj();
    for (auto& [pm, pc] : prod) raw.emplace_back(wmono::with_h(pm, wmono::h(m)), cc * pc);
  }
  return from_terms(h_order_, metric_, std::move(raw));
}

std::string WeylElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string factors;
    auto add = [&](const std::string& f, int e) {
      if (e == 0) return;
      if (!factors.empty()) factors += "*";
      factors += f;
      if (e != 1) factors += "^" + std::to_string(e);
    };
    add("h", wmono::h(m));
    for (int mu = 0; mu < 4; ++mu) add("x" + std::to_string(mu), wmono::x(m, mu));
    for (int mu = 0; mu < 4; ++mu) add("p" + std::to_string(mu), wmono::p(m, mu));
    std::string cs = c.to_string();
    bool neg = cs[0] == '-';
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    std::string mag = neg ? cs.substr(1) : cs;
    if (factors.empty()) os << mag;
    else if (mag == "1") os << factors;
    else os << mag << "*" << factors;
    first = false;
  }
  return os.str();
}

WeylElement normal_product(const WeylElement& u, const WeylElement& v) { return u * v; }

WeylElement commutator(const WeylElement& u, const WeylElement& v) { return u * v - v * u; }

PolyState act(const WeylElement& op, const PolyState& f) {
  check_compatible(op, f);
  if (f.has_momenta()) throw std::invalid_argument("act() target must be a polynomial in x");
  std::vector<WeylElement::Term> raw;
  for (const auto& [mo, co] : op.terms()) {
    int ho = wmono::h(mo);
    for (const auto& [mf, cf] : f.terms()) {
      int hs = ho + wmono::h(mf);
      if (hs > op.h_order()) continue;
      std::array<int, 4> xe{};
      mpz_class num = 1;
      int deg = 0;
      bool zero = false;
      for (int mu = 0; mu < 4 && !zero; ++mu) {
        int b = wmono::p(mo, mu), c = wmono::x(mf, mu);
        if (b > c) {
          zero = true;
          break;
        }
        for (int j = 0; j < b; ++j) num *= (c - j);
        deg += b;
        xe[mu] = wmono::x(mo, mu) + c - b;
      }
      if (zero) continue;
      raw.emplace_back(wmono::make(xe, {}, hs), co * cf * Scalar(mpq_class(num)) * i_pow(-deg));
    }
  }
  return WeylElement::from_terms(op.h_order(), op.metric(), std::move(raw));
}

WeylElement weyl_power_series(const WeylElement& u, const std::function<Scalar(int)>& coeff) {
  if (!u.is_zero() && u.h_valuation() < 1)
    throw std::domain_error("Weyl power series requires positive h valuation");
  WeylElement sum = WeylElement::constant(u.h_order(), coeff(0), u.metric());
  WeylElement pw = WeylElement::constant(u.h_order(), Scalar(1), u.metric());
  for (int k = 1;; ++k) {
    pw = pw * u;
    if (pw.is_zero()) break;
    Scalar c = coeff(k);
    if (!c.is_zero()) sum += pw.scaled(c);
  }
  return sum;
}

WeylElement weyl_exp(const WeylElement& u) {
  mpz_class fact = 1;
  return weyl_power_series(u, [&](int k) {
    if (k > 0) fact *= k;
    return Scalar(mpq_class(1) / mpq_class(fact));
  });
}

WeylElement weyl_inverse(const WeylElement& a) {
  Scalar c0;
  for (const auto& t : a.terms())
    if (t.first == 0) c0 = t.second;
  if (c0.is_zero()) throw NonUnit("Weyl element has zero constant term");
  Scalar ic = c0.inverse();
  WeylElement u = (WeylElement::constant(a.h_order(), Scalar(1), a.metric()) - a.scaled(ic));
  return weyl_power_series(u, [](int) { return Scalar(1); }).scaled(ic);
}

// ---------------------------------------------------------------------------

namespace {

int parse_index(char c) {
  if (c < '0' || c > '3') throw std::invalid_argument(std::string("bad index: ") + c);
  return c - '0';
}

int levi(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // indices 1..3
  int p = (i - 1) * 9 + (j - 1) * 3 + (k - 1);
  switch (p) {
    case 0 * 9 + 1 * 3 + 2: case 1 * 9 + 2 * 3 + 0: case 2 * 9 + 0 * 3 + 1: return 1;
    default: return -1;
  }
}

}  // namespace

WeylElement igl_realize(const std::string& g, int h_order, MetricSig metric) {
  auto X = [&](int mu) { return WeylElement::x(mu, h_order, metric); };
  auto Xl = [&](int mu) { return WeylElement::x_lower(mu, h_order, metric); };
  auto Pp = [&](int mu) { return WeylElement::p(mu, h_order, metric); };
  if (g == "D") {
    WeylElement d(h_order, metric);
    for (int k = 1; k < metric.n; ++k) d += X(k) * Pp(k);
    return d;
  }
  if (g.size() == 2 && g[0] == 'P') return Pp(parse_index(g[1]));
  if (g.size() == 5 && g[0] == 'L' && g[1] == '^' && g[3] == '_')
    return X(parse_index(g[2])) * Pp(parse_index(g[4]));
  if (g.size() == 4 && g[0] == 'M' && g[1] == '_') {
    int mu = parse_index(g[2]), nu = parse_index(g[3]);
    return Xl(mu) * Pp(nu) - Xl(nu) * Pp(mu);
  }
  if (g.size() == 2 && (g[0] == 'M' || g[0] == 'N')) {
    int i = parse_index(g[1]);
    if (i < 1) throw std::invalid_argument("spatial index expected: " + g);
    if (g[0] == 'N') return Xl(0) * Pp(i) - Xl(i) * Pp(0);
    WeylElement m(h_order, metric);
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        int e = levi(i, j, k);
        if (e) m += (Xl(j) * Pp(k)).scaled(Scalar(e));
      }
    return m;
  }
  throw std::invalid_argument("unknown generator: " + g);
}

std::array<WeylElement, 4> realize_coordinates(TwistFamily family, const mpq_class& s, Side side, int N,
                                               MetricSig metric) {
  RingPtr R = momentum_ring(N);
  TruncSeries h = TruncSeries::h(R), p0 = TruncSeries::var(R, "p0");
  TruncSeries one = TruncSeries::constant(R, Scalar(1));
  WeylElement D = igl_realize("D", N, metric);
  WeylElement hW = WeylElement::h_power(1, N, metric);
  auto mom = [&](const TruncSeries& t) { return WeylElement::from_momentum_series(t, metric); };
  std::array<WeylElement, 4> out;
  WeylElement spatial_factor, x0;
  WeylElement X0 = WeylElement::x(0, N, metric);
  if (family == TwistFamily::abelian) {
    if (side == Side::left) {
      spatial_factor = mom(exp(h * p0 * Scalar(1 - s)));
      x0 = X0 - (hW * D).scaled(Scalar(s));
    } else {
      spatial_factor = mom(exp(-(h * p0 * Scalar(s))));
      x0 = X0 + (hW * D).scaled(Scalar(1 - s));
    }
  } else if (family == TwistFamily::jordanian) {
    if (s == 0) throw std::invalid_argument("Jordanian parameter r must be nonzero");
    TruncSeries base = one - h * p0 * Scalar(s);
    if (side == Side::left) {
      spatial_factor = mom(pow_fractional(base, -1 / s));
      x0 = X0 * mom(base);
    } else {
      spatial_factor = WeylElement::constant(N, Scalar(1), metric);
      x0 = X0 * mom(base) + hW * D;
    }
  } else {
    throw std::invalid_argument("closed-form coordinates exist for abelian and jordanian families only");
  }
  out[0] = x0;
  for (int k = 1; k < 4; ++k)
    out[k] = k < metric.n ? WeylElement::x(k, N, metric) * spatial_factor : WeylElement(N, metric);
  return out;
}

WeylElement DsrRealization::X_lower(int mu) const { return X[mu].scaled(Scalar(metric.eta(mu))); }

namespace {

// Series in t (capped degree) mapped to t = -h p0.
TruncSeries t_to_momentum(const TruncSeries& f, const RingPtr& R) {
  int k = f.ring()->index("t");
  std::vector<TruncSeries::Term> raw;
  for (const auto& [m, c] : f.terms()) {
    int e = k >= 0 ? m.e[k] : 0;
    Mono n;
    n.e[0] = static_cast<std::int8_t>(e);
    n.e[R->index("p0")] = static_cast<std::int8_t>(e);
    raw.emplace_back(n, e % 2 ? -c : c);
  }
  return TruncSeries::from_terms(R, std::move(raw));
}

TruncSeries t_series(const std::vector<mpq_class>& coeffs, const RingPtr& T) {
  TruncSeries s(T);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0) s += TruncSeries::var(T, "t", static_cast<int>(k)).scaled(Scalar(coeffs[k]));
  return s;
}

TruncSeries spatial_square(const RingPtr& R, const std::array<TruncSeries, 4>& P) {
  TruncSeries s(R);
  for (int k = 1; k < 4; ++k) s += P[k] * P[k];
  return s;
}

}  // namespace

DsrRealization realize_noncovariant(const std::vector<mpq_class>& psi, const std::vector<mpq_class>& gamma,
                                    int N) {
  if (psi.empty() || psi[0] != 1) throw std::invalid_argument("psi must have leading coefficient 1");
  const int W = N + 2;
  MetricSig g = MetricSig::mostly_plus();
  RingPtr T = make_ring({"t"}, W, W);
  TruncSeries psiT = t_series(psi, T), gamT = t_series(gamma, T);
  TruncSeries inv_psi = invert(psiT);
  TruncSeries Psi = exp(inv_psi.integral("t"));
  TruncSeries Gam = exp((gamT * inv_psi).integral("t"));

  RingPtr R = momentum_ring(W);
  TruncSeries psi_h = t_to_momentum(psiT, R), gam_h = t_to_momentum(gamT, R);
  TruncSeries Psi_h = t_to_momentum(Psi, R), Gam_h = t_to_momentum(Gam, R);
  TruncSeries iPsi = invert(Psi_h), iGam = invert(Gam_h);
  TruncSeries h = TruncSeries::h(R);
  std::array<TruncSeries, 4> p;
  for (int mu = 0; mu < 4; ++mu) p[mu] = TruncSeries::var(R, "p" + std::to_string(mu));
  TruncSeries pvec2 = spatial_square(R, p);
  TruncSeries two = TruncSeries::constant(R, Scalar(2));

  std::array<TruncSeries, 4> Pm;
  Pm[0] = ((iPsi - Psi_h).scaled(Scalar::rational(1, 2))).shift_h(-1) +
          (h * pvec2 * Psi_h * iGam * iGam).scaled(Scalar::rational(1, 2));
  for (int k = 1; k < 4; ++k) Pm[k] = p[k] * iGam;
  TruncSeries C = (iPsi + Psi_h - two).shift_h(-2) - pvec2 * Psi_h * iGam * iGam;

  RingPtr RN = momentum_ring(N);
  auto mom = [&](const TruncSeries& t) { return WeylElement::from_momentum_series(t.truncated(N), g); };
  DsrRealization r;
  r.name = "noncovariant";
  r.order = N;
  r.metric = g;
  r.psi_t = psiT.truncated(N);
  r.gamma_t = gamT.truncated(N);
  WeylElement D = igl_realize("D", N, g);
  WeylElement hW = WeylElement::h_power(1, N, g);
  r.X[0] = WeylElement::x(0, N, g) * mom(psi_h) - hW * D * mom(gam_h);
  WeylElement sf = mom(Gam_h * iPsi);
  for (int k = 1; k < 4; ++k) r.X[k] = WeylElement::x(k, N, g) * sf;
  for (int mu = 0; mu < 4; ++mu) r.P[mu] = mom(Pm[mu]);
  r.casimir = mom(C);

  std::array<TruncSeries, 4> PN;
  for (int mu = 0; mu < 4; ++mu) PN[mu] = Pm[mu].truncated(N);
  TruncSeries hN = TruncSeries::h(RN);
  TruncSeries P2 = spatial_square(RN, PN) - PN[0] * PN[0];
  TruncSeries xi = hN * PN[0] + pow_fractional(TruncSeries::constant(RN, Scalar(1)) - hN * hN * P2, mpq_class(1, 2));
  r.xi = WeylElement::from_momentum_series(xi, g);

  WeylElement PsiW = mom(Psi_h);
  for (int i = 1; i <= 3; ++i) {
    r.N[i - 1] = (r.X_lower(0) * r.P[i] - r.X_lower(i) * r.P[0]) * PsiW;
    WeylElement m(N, g);
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k)
        if (int e = levi(i, j, k)) m += (r.X_lower(j) * r.P[k] * PsiW).scaled(Scalar(e));
    r.M[i - 1] = m;
  }
  return r;
}

DsrRealization realize_natural(int N) {
  MetricSig g = MetricSig::mostly_plus();
  RingPtr R = momentum_ring(N);
  TruncSeries h = TruncSeries::h(R);
  std::array<TruncSeries, 4> p;
  for (int mu = 0; mu < 4; ++mu) p[mu] = TruncSeries::var(R, "p" + std::to_string(mu));
  TruncSeries p2 = spatial_square(R, p) - p[0] * p[0];
  TruncSeries xi = h * p[0] + pow_fractional(TruncSeries::constant(R, Scalar(1)) - h * h * p2, mpq_class(1, 2));
  DsrRealization r;
  r.name = "natural";
  r.order = N;
  r.metric = g;
  r.xi = WeylElement::from_momentum_series(xi, g);
  WeylElement hW = WeylElement::h_power(1, N, g);
  WeylElement x0 = WeylElement::x(0, N, g);
  for (int mu = 0; mu < 4; ++mu) {
    // + h x^0 p^mu: with eta = (-,+,+,+) this sign reproduces [X^0, X^k] = i h X^k.
    r.X[mu] = WeylElement::x(mu, N, g) * r.xi + hW * x0 * WeylElement::p_upper(mu, N, g);
    r.P[mu] = WeylElement::p(mu, N, g);
  }
  for (int i = 1; i <= 3; ++i) {
    r.M[i - 1] = igl_realize("M" + std::to_string(i), N, g);
    r.N[i - 1] = igl_realize("N" + std::to_string(i), N, g);
  }
  return r;
}

bool satisfies_hermiticity(const std::vector<mpq_class>& psi, const std::vector<mpq_class>& gamma,
                           HermiticityRule rule, int order) {
  RingPtr T = make_ring({"t"}, order, order);
  TruncSeries dpsi = t_series(psi, T).derivative("t");
  TruncSeries gam = t_series(gamma, T);
  // Compare below the top order, where the derivative is fully determined.
  TruncSeries lhs = rule == HermiticityRule::psi_prime_plus_3gamma ? dpsi + gam.scaled(Scalar(3))
                                                                    : dpsi + gam.scaled(Scalar::rational(1, 3));
  return lhs.is_zero();
}

bool coordinates_self_adjoint(const std::array<WeylElement, 4>& X) {
  for (const auto& x : X)
    if (x.adjoint() != x) return false;
  return true;
}

}  // namespace kappa
