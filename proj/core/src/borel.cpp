#include "kappa/borel.hpp"

#include <map>

namespace kappa {

std::uint64_t BorelAlg::make(const std::array<int, 4>& a, int m, int hp) {
  std::uint64_t k = 0;
  for (int mu = 0; mu < 4; ++mu) {
    if (a[mu] < 0 || a[mu] > 255) throw std::overflow_error("Borel exponent out of range");
    k |= static_cast<std::uint64_t>(a[mu]) << (kBits * mu);
  }
  if (m < 0 || m > 255) throw std::overflow_error("Borel exponent out of range");
  k |= static_cast<std::uint64_t>(m) << 32;
  return key::with_h(k, hp);
}

void BorelAlg::product(std::uint64_t a, std::uint64_t b, std::vector<std::pair<std::uint64_t, Scalar>>& out) const {
  out.clear();
  std::array<int, 4> al{};
  Scalar lb;  // lambda . beta
  for (int mu = 0; mu < 4; ++mu) {
    al[mu] = p(a, mu) + p(b, mu);
    if (p(b, mu)) lb += lambda(mu) * Scalar(p(b, mu));
  }
  int m = e(a), n = e(b);
  if (m == 0 || lb.is_zero()) {
    out.emplace_back(make(al, m + n), Scalar(1));
    return;
  }
  // E^m P^beta = P^beta (E + lambda.beta)^m
  mpz_class binom = 1;
  Scalar pw(1);
  std::vector<Scalar> powers(m + 1);
  for (int j = 0; j <= m; ++j) {
    powers[j] = pw;
    pw *= lb;
  }
  for (int k = 0; k <= m; ++k) {
    if (k > 0) binom = binom * (m - k + 1) / k;
    out.emplace_back(make(al, k + n), Scalar(mpq_class(binom)) * powers[m - k]);
  }
}

std::string BorelAlg::mono_string(std::uint64_t k) const {
  std::string s;
  auto add = [&](const std::string& f, int ex) {
    if (!ex) return;
    if (!s.empty()) s += "*";
    s += f;
    if (ex != 1) s += "^" + std::to_string(ex);
  };
  for (int mu = 0; mu < 4; ++mu) add("P" + std::to_string(mu), p(k, mu));
  add(e_name, e(k));
  return s.empty() ? "1" : s;
}

BorelPtr make_borel(const std::array<Scalar, 4>& w, const std::string& name, int order, MetricSig metric) {
  auto alg = std::make_shared<BorelAlg>();
  alg->w = w;
  alg->e_name = name;
  WeylElement e(order, metric);
  for (int mu = 0; mu < 4; ++mu)
    if (!w[mu].is_zero())
      e += (WeylElement::x(mu, order, metric) * WeylElement::p(mu, order, metric)).scaled(Scalar::i() * w[mu]);
  alg->e_image = e;
  return alg;
}

BorelPtr borel_dilatation(int order) {
  Scalar mi(0, -1);
  return make_borel({Scalar(0), mi, mi, mi}, "D", order);
}

BorelPtr borel_jordanian(const mpq_class& r, int order) {
  if (r == 0) throw std::invalid_argument("Jordanian parameter r must be nonzero");
  Scalar ir(mpq_class(1) / r);
  return make_borel({Scalar(-1), ir, ir, ir}, "J", order);
}

BorelElement borel_P(const BorelPtr& alg, int mu, int order) {
  std::array<int, 4> a{};
  a.at(mu) = 1;
  return BorelElement::from_terms(alg, order, {{{BorelAlg::make(a, 0)}, Scalar(1)}});
}

BorelElement borel_E(const BorelPtr& alg, int order) {
  return BorelElement::from_terms(alg, order, {{{BorelAlg::make({}, 1)}, Scalar(1)}});
}

BorelElement borel_h(const BorelPtr& alg, int k, int order) {
  return BorelElement::from_terms(alg, order, {{{BorelAlg::make({}, 0, k)}, Scalar(1)}});
}

BorelElement borel_from_momentum(const BorelPtr& alg, const TruncSeries& s) {
  const SeriesRing& r = *s.ring();
  std::array<int, 4> slot;
  for (int mu = 0; mu < 4; ++mu) slot[mu] = r.index("p" + std::to_string(mu));
  std::vector<BorelElement::Term> raw;
  for (const auto& [m, c] : s.terms()) {
    std::array<int, 4> a{};
    int used = 0, other = 0;
    for (int mu = 0; mu < 4; ++mu)
      if (slot[mu] >= 0) {
        a[mu] = m.e[slot[mu]];
        used += a[mu] != 0;
      }
    for (std::size_t i = 1; i < r.vars.size(); ++i) other += m.e[i] != 0;
    if (used != other) throw std::invalid_argument("series contains non-momentum symbols");
    raw.push_back({{BorelAlg::make(a, 0, m.e[0])}, c});
  }
  return BorelElement::from_terms(alg, s.h_order(), std::move(raw));
}

namespace {

struct DeltaTerm {
  std::uint64_t a, b;
  Scalar c;
};

// Delta(P^alpha E^m) = sum prod_mu C(alpha_mu, j_mu) C(m, i) P^j E^i (x) P^{alpha-j} E^{m-i}
std::vector<DeltaTerm> delta_mono(std::uint64_t mono) {
  std::array<int, 4> al;
  for (int mu = 0; mu < 4; ++mu) al[mu] = BorelAlg::p(mono, mu);
  int m = BorelAlg::e(mono);
  std::vector<DeltaTerm> out;
  std::array<int, 4> j{};
  auto binom = [](int n, int k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
  };
  while (true) {
    for (int i = 0; i <= m; ++i) {
      mpz_class c = binom(m, i);
      std::array<int, 4> rest;
      for (int mu = 0; mu < 4; ++mu) {
        c *= binom(al[mu], j[mu]);
        rest[mu] = al[mu] - j[mu];
      }
      out.push_back({BorelAlg::make(j, i), BorelAlg::make(rest, m - i), Scalar(mpq_class(c))});
    }
    int mu = 0;
    while (mu < 4 && ++j[mu] > al[mu]) j[mu++] = 0;
    if (mu == 4) break;
  }
  return out;
}

}  // namespace

template <int L>
BorelTensor<L + 1> coproduct_on_leg(const BorelTensor<L>& t, int leg) {
  std::map<std::uint64_t, std::vector<DeltaTerm>> cache;
  std::vector<typename BorelTensor<L + 1>::Term> raw;
  for (const auto& [k, c] : t.terms()) {
    std::uint64_t mono = key::strip(k[leg]);
    auto it = cache.find(mono);
    if (it == cache.end()) it = cache.emplace(mono, delta_mono(mono)).first;
    for (const auto& d : it->second) {
      typename BorelTensor<L + 1>::Key nk{};
      int o = 0;
      for (int l = 0; l < L; ++l) {
        if (l == leg) {
          nk[o++] = d.a;
          nk[o++] = d.b;
        } else {
          nk[o++] = key::strip(k[l]);
        }
      }
      nk[0] = key::with_h(nk[0], BorelTensor<L>::h_of(k));
      raw.emplace_back(nk, c * d.c);
    }
  }
  return BorelTensor<L + 1>::from_terms(t.alg(), t.order(), std::move(raw));
}

template <int L>
BorelTensor<L - 1> counit_on_leg(const BorelTensor<L>& t, int leg) {
  std::vector<typename BorelTensor<L - 1>::Term> raw;
  for (const auto& [k, c] : t.terms()) {
    if (key::strip(k[leg]) != 0) continue;
    typename BorelTensor<L - 1>::Key nk{};
    int o = 0;
    for (int l = 0; l < L; ++l)
      if (l != leg) nk[o++] = key::strip(k[l]);
    nk[0] = key::with_h(nk[0], BorelTensor<L>::h_of(k));
    raw.emplace_back(nk, c);
  }
  return BorelTensor<L - 1>::from_terms(t.alg(), t.order(), std::move(raw));
}

template BorelTensor<2> coproduct_on_leg<1>(const BorelTensor<1>&, int);
template BorelTensor<3> coproduct_on_leg<2>(const BorelTensor<2>&, int);
template BorelTensor<1> counit_on_leg<2>(const BorelTensor<2>&, int);
template BorelTensor<2> counit_on_leg<3>(const BorelTensor<3>&, int);

BorelElement antipode0(const BorelElement& a) {
  const BorelAlg& alg = *a.alg();
  std::vector<BorelElement::Term> raw;
  std::vector<std::pair<std::uint64_t, Scalar>> ex;
  for (const auto& [k, c] : a.terms()) {
    std::uint64_t mono = key::strip(k[0]);
    std::array<int, 4> al;
    int deg = BorelAlg::e(mono);
    for (int mu = 0; mu < 4; ++mu) {
      al[mu] = BorelAlg::p(mono, mu);
      deg += al[mu];
    }
    // (-1)^deg E^m P^alpha
    alg.product(BorelAlg::make({}, BorelAlg::e(mono)), BorelAlg::make(al, 0), ex);
    Scalar sign = deg % 2 ? Scalar(-1) : Scalar(1);
    for (auto& [m, ec] : ex) raw.push_back({{key::with_h(m, BorelElement::h_of(k))}, c * ec * sign});
  }
  return BorelElement::from_terms(a.alg(), a.order(), std::move(raw));
}

BorelElement multiply_id_antipode(const BorelTensor<2>& F) {
  BorelElement u(F.alg(), F.order());
  for (const auto& [k, c] : F.terms()) {
    BorelElement left = BorelElement::from_terms(F.alg(), F.order(), {{{k[0]}, c}});
    BorelElement right = BorelElement::from_terms(F.alg(), F.order(), {{{key::strip(k[1])}, Scalar(1)}});
    u += left * antipode0(right);
  }
  return u;
}

PolyState borel_act(const BorelAlg& alg, std::uint64_t mono, const PolyState& f) {
  int m = BorelAlg::e(mono);
  std::vector<WeylElement::Term> raw;
  for (const auto& [fk, fc] : f.terms()) {
    Scalar ev;
    for (int mu = 0; mu < 4; ++mu)
      if (int a = wmono::x(fk, mu)) ev += alg.w[mu] * Scalar(a);
    Scalar c = fc;
    for (int j = 0; j < m; ++j) c *= ev;
    if (!c.is_zero()) raw.emplace_back(fk, c);
  }
  PolyState g = WeylElement::from_terms(f.h_order(), f.metric(), std::move(raw));
  std::array<int, 4> pe;
  bool any = false;
  for (int mu = 0; mu < 4; ++mu) {
    pe[mu] = BorelAlg::p(mono, mu);
    any |= pe[mu] != 0;
  }
  if (!any) return g;
  WeylElement op = WeylElement::from_terms(f.h_order(), f.metric(), {{wmono::make({}, pe), Scalar(1)}});
  return act(op, g);
}

WeylElement borel_realize(const BorelAlg& alg, std::uint64_t mono, int order) {
  std::array<int, 4> pe;
  for (int mu = 0; mu < 4; ++mu) pe[mu] = BorelAlg::p(mono, mu);
  const MetricSig& g = alg.e_image.metric();
  WeylElement r = WeylElement::from_terms(order, g, {{wmono::make({}, pe, key::h(mono)), Scalar(1)}});
  WeylElement e = alg.e_image.truncated(order);
  for (int j = 0; j < BorelAlg::e(mono); ++j) r = r * e;
  return r;
}

WeylElement borel_realize(const BorelElement& a) {
  const BorelAlg& alg = *a.alg();
  std::map<int, WeylElement> epow;
  const MetricSig& g = alg.e_image.metric();
  int N = a.order();
  epow[0] = WeylElement::constant(N, Scalar(1), g);
  WeylElement e = alg.e_image.truncated(N);
  WeylElement out(N, g);
  for (const auto& [k, c] : a.terms()) {
    std::uint64_t mono = key::strip(k[0]);
    int m = BorelAlg::e(mono);
    for (int j = static_cast<int>(epow.rbegin()->first) + 1; j <= m; ++j) epow[j] = epow[j - 1] * e;
    std::array<int, 4> pe;
    for (int mu = 0; mu < 4; ++mu) pe[mu] = BorelAlg::p(mono, mu);
    WeylElement pm = WeylElement::from_terms(N, g, {{wmono::make({}, pe, BorelElement::h_of(k)), c}});
    out += pm * epow[m];
  }
  return out;
}

}  // namespace kappa
