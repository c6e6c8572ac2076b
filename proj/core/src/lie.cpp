#include "kappa/lie.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kappa {

namespace {

void add_to(LieAlgebra::Vec& v, int k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, ins] = v.try_emplace(k, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

LieAlgebra::LieAlgebra(std::vector<std::string> names) : names_(std::move(names)), table_(names_.size() * names_.size()) {}

int LieAlgebra::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("unknown Lie algebra generator: " + name);
  return static_cast<int>(it - names_.begin());
}

void LieAlgebra::set_bracket(int a, int b, const Vec& v) {
  table_[a * dim() + b] = v;
  Vec neg;
  for (const auto& [k, c] : v) neg[k] = -c;
  table_[b * dim() + a] = neg;
}

LieAlgebra::Vec LieAlgebra::bracket(const Vec& u, const Vec& v) const {
  Vec out;
  for (const auto& [a, ca] : u)
    for (const auto& [b, cb] : v)
      for (const auto& [k, c] : bracket(a, b)) add_to(out, k, ca * cb * c);
  return out;
}

bool LieAlgebra::antisymmetric() const {
  for (int a = 0; a < dim(); ++a) {
    if (!bracket(a, a).empty()) return false;
    for (int b = 0; b < a; ++b) {
      Vec s = bracket(a, b);
      for (const auto& [k, c] : bracket(b, a)) add_to(s, k, c);
      if (!s.empty()) return false;
    }
  }
  return true;
}

bool LieAlgebra::jacobi() const {
  for (int a = 0; a < dim(); ++a)
    for (int b = a + 1; b < dim(); ++b)
      for (int c = b + 1; c < dim(); ++c) {
        Vec ea{{a, Scalar(1)}}, eb{{b, Scalar(1)}}, ec{{c, Scalar(1)}};
        Vec s = bracket(ea, bracket(eb, ec));
        for (const auto& [k, x] : bracket(eb, bracket(ec, ea))) add_to(s, k, x);
        for (const auto& [k, x] : bracket(ec, bracket(ea, eb))) add_to(s, k, x);
        if (!s.empty()) return false;
      }
  return true;
}

LieAlgebra lie_from_realization(const std::vector<std::string>& names, const std::vector<WeylElement>& ops,
                                const Scalar& unit) {
  if (names.size() != ops.size()) throw std::invalid_argument("names and operators differ in length");
  int n = static_cast<int>(ops.size());
  // Row-reduce the coefficient vectors once, remembering how each pivot row combines the basis.
  struct Row {
    std::map<std::uint64_t, Scalar> v;
    LieAlgebra::Vec combo;
    std::uint64_t pivot;
  };
  std::vector<Row> rows;
  auto reduce = [&](std::map<std::uint64_t, Scalar>& v, LieAlgebra::Vec& combo) {
    for (const auto& r : rows) {
      auto it = v.find(r.pivot);
      if (it == v.end()) continue;
      Scalar f = it->second;
      for (const auto& [k, c] : r.v) {
        auto [jt, ins] = v.try_emplace(k, -f * c);
        if (!ins) {
          jt->second -= f * c;
          if (jt->second.is_zero()) v.erase(jt);
        }
      }
      for (const auto& [k, c] : r.combo) add_to(combo, k, -f * c);
    }
  };
  auto coeffs = [](const WeylElement& w) {
    std::map<std::uint64_t, Scalar> v;
    for (const auto& [k, c] : w.terms()) v[k] = c;
    return v;
  };
  for (int a = 0; a < n; ++a) {
    auto v = coeffs(ops[a].scaled(unit));
    LieAlgebra::Vec combo{{a, Scalar(1)}};
    reduce(v, combo);
    if (v.empty()) throw std::invalid_argument("operators are linearly dependent: " + names[a]);
    std::uint64_t piv = v.begin()->first;
    Scalar inv = v.begin()->second.inverse();
    for (auto& [k, c] : v) c *= inv;
    for (auto& [k, c] : combo) c *= inv;
    rows.push_back({std::move(v), std::move(combo), piv});
  }
  LieAlgebra g(names);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto v = coeffs(commutator(ops[a].scaled(unit), ops[b].scaled(unit)));
      // Express v = sum_c x_c e_c: eliminate with the pivot rows and collect the combination.
      LieAlgebra::Vec res;
      for (const auto& r : rows) {
        auto it = v.find(r.pivot);
        if (it == v.end()) continue;
        Scalar f = it->second;
        for (const auto& [k, c] : r.v) {
          auto [jt, ins] = v.try_emplace(k, -f * c);
          if (!ins) {
            jt->second -= f * c;
            if (jt->second.is_zero()) v.erase(jt);
          }
        }
        for (const auto& [k, c] : r.combo) add_to(res, k, f * c);
      }
      if (!v.empty()) throw std::invalid_argument("span not closed under [" + names[a] + ", " + names[b] + "]");
      g.set_bracket(a, b, res);
    }
  return g;
}

LieAlgebra poincare_algebra(bool with_dilatation, MetricSig metric) {
  std::vector<std::string> names{"P0", "P1", "P2", "P3", "M1", "M2", "M3", "N1", "N2", "N3"};
  if (with_dilatation) names.push_back("D");
  std::vector<WeylElement> ops;
  for (const auto& n : names) {
    if (n != "D") {
      ops.push_back(igl_realize(n, 1, metric));
      continue;
    }
    // full dilatation x^mu p_mu; the spatial one does not close with the boosts
    WeylElement d(1, metric);
    for (int mu = 0; mu < metric.n; ++mu) d += igl_realize("L^" + std::to_string(mu) + "_" + std::to_string(mu), 1, metric);
    ops.push_back(d);
  }
  return lie_from_realization(names, ops, Scalar::i());
}

// ---------------------------------------------------------------------------

Multivector Multivector::generator(int a) {
  Multivector m;
  m.terms_[{a}] = Scalar(1);
  return m;
}

Multivector Multivector::from_vec(const LieAlgebra::Vec& v) {
  Multivector m;
  for (const auto& [k, c] : v) m.add({k}, c);
  return m;
}

int Multivector::degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) {
    int kd = static_cast<int>(k.size());
    if (d >= 0 && d != kd) return -1;
    d = kd;
  }
  return d;
}

void Multivector::add(Key k, const Scalar& c) {
  if (c.is_zero()) return;
  // bubble sort tracks the permutation sign
  bool neg = false;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j + 1 < k.size() - i; ++j)
      if (k[j] > k[j + 1]) {
        std::swap(k[j], k[j + 1]);
        neg = !neg;
      }
  for (std::size_t i = 0; i + 1 < k.size(); ++i)
    if (k[i] == k[i + 1]) return;
  Scalar v = neg ? -c : c;
  auto [it, ins] = terms_.try_emplace(std::move(k), v);
  if (!ins) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Multivector& Multivector::operator+=(const Multivector& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

Multivector Multivector::scaled(const Scalar& c) const {
  Multivector m;
  if (c.is_zero()) return m;
  for (const auto& [k, v] : terms_) m.terms_[k] = v * c;
  return m;
}

std::string Multivector::to_string(const LieAlgebra& g) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (!c.is_one()) os << "(" << c.to_string() << ")*";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "^" : "") << g.names()[k[i]];
  }
  return os.str();
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  Multivector out;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      Multivector::Key k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      out.add(std::move(k), ca * cb);
    }
  return out;
}

Multivector schouten_bracket(const LieAlgebra& g, const Multivector& r, const Multivector& s) {
  if ((!r.is_zero() && r.degree() != 2) || (!s.is_zero() && s.degree() != 2))
    throw std::invalid_argument("schouten_bracket expects bivectors");
  Multivector out;
  auto gen = [](int i) { return Multivector::generator(i); };
  auto br = [&](int x, int y) { return Multivector::from_vec(g.bracket(x, y)); };
  for (const auto& [kr, cr] : r.terms())
    for (const auto& [ks, cs] : s.terms()) {
      int a = kr[0], b = kr[1], c = ks[0], d = ks[1];
      Multivector t = wedge(wedge(br(a, d), gen(b)), gen(c)) - wedge(wedge(br(a, c), gen(b)), gen(d)) +
                      wedge(wedge(br(b, c), gen(a)), gen(d)) - wedge(wedge(br(b, d), gen(a)), gen(c));
      out += t.scaled(cr * cs);
    }
  return out;
}

Multivector parse_multivector(const LieAlgebra& g, const std::string& text) {
  Multivector out;
  std::size_t i = 0;
  std::string s = text;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size()) break;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = trim(s.substr(i, j - i));
    i = j;
    if (term.empty()) throw std::invalid_argument("empty term in multivector: " + text);
    Scalar coef(1);
    auto star = term.find('*');
    if (star != std::string::npos) {
      coef = Scalar::parse(trim(term.substr(0, star)));
      term = trim(term.substr(star + 1));
    }
    Multivector::Key k;
    std::stringstream ss(term);
    std::string name;
    while (std::getline(ss, name, '^')) k.push_back(g.index(trim(name)));
    out.add(std::move(k), neg ? -coef : coef);
  }
  return out;
}

Multivector poincare_mpp(const LieAlgebra& g, MetricSig metric) {
  // M_{0i} = N_i, M_{jk} = eps_jkl M_l
  auto M = [&](int mu, int nu) {
    Multivector m;
    if (mu == nu) return m;
    if (mu == 0) return Multivector::generator(g.index("N" + std::to_string(nu)));
    if (nu == 0) return Multivector::generator(g.index("N" + std::to_string(mu))).scaled(Scalar(-1));
    for (int l = 1; l <= 3; ++l) {
      int e = (mu == l || nu == l) ? 0 : (((nu - mu + 3) % 3 == 1) ? 1 : -1);
      if (e) m += Multivector::generator(g.index("M" + std::to_string(l))).scaled(Scalar(e));
    }
    return m;
  };
  Multivector out;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Multivector pu = Multivector::generator(g.index("P" + std::to_string(mu))).scaled(Scalar(metric.eta(mu)));
      Multivector pv = Multivector::generator(g.index("P" + std::to_string(nu))).scaled(Scalar(metric.eta(nu)));
      out += wedge(wedge(M(mu, nu), pu), pv);
    }
  return out;
}

}  // namespace kappa
