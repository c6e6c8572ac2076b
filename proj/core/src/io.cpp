#include "kappa/io.hpp"

#include <cctype>

#include "json.hpp"

namespace kappa {

using nlohmann::json;

namespace {

std::string q_str(const mpq_class& q) { return q.get_str(); }

mpq_class q_parse(const json& j) {
  mpq_class q;
  if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0) throw std::invalid_argument("bad rational in JSON");
  q.canonicalize();
  return q;
}

json scalar_json(const Scalar& c) { return {{"re", q_str(c.re())}, {"im", q_str(c.im())}}; }

}  // namespace

std::string series_to_json(const TruncSeries& s) {
  const SeriesRing& r = *s.ring();
  json vars = json::array(), laur = json::array();
  for (std::size_t i = 1; i < r.vars.size(); ++i) {
    vars.push_back(r.vars[i]);
    if (r.laurent[i]) laur.push_back(r.vars[i]);
  }
  json terms = json::array();
  for (const auto& [m, c] : s.terms()) {
    json e = json::array();
    for (std::size_t i = 0; i < r.vars.size(); ++i) e.push_back(static_cast<int>(m.e[i]));
    json t = scalar_json(c);
    t["exponents"] = e;
    terms.push_back(t);
  }
  json j{{"vars", vars}, {"laurent", laur}, {"h_order", r.h_order}, {"deg_cap", r.deg_cap}, {"terms", terms}};
  return j.dump();
}

TruncSeries series_from_json(const std::string& text) {
  json j = json::parse(text);
  std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
  std::vector<std::string> laur = j.value("laurent", std::vector<std::string>{});
  RingPtr R = make_ring(vars, j.at("h_order").get<int>(), j.value("deg_cap", -1), laur);
  std::vector<TruncSeries::Term> raw;
  for (const auto& t : j.at("terms")) {
    Mono m;
    const auto& e = t.at("exponents");
    if (e.size() != vars.size() + 1) throw std::invalid_argument("exponent vector length mismatch");
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = static_cast<std::int8_t>(e[i].get<int>());
    raw.emplace_back(m, Scalar(q_parse(t.at("re")), q_parse(t.at("im"))));
  }
  return TruncSeries::from_terms(R, std::move(raw));
}

std::string weyl_to_json(const WeylElement& w) {
  json terms = json::array();
  for (const auto& [k, c] : w.terms()) {
    json x = json::array(), p = json::array();
    for (int mu = 0; mu < 4; ++mu) {
      x.push_back(wmono::x(k, mu));
      p.push_back(wmono::p(k, mu));
    }
    json t = scalar_json(c);
    t["x"] = x;
    t["p"] = p;
    t["h"] = wmono::h(k);
    terms.push_back(t);
  }
  json j{{"h_order", w.h_order()}, {"metric", w.metric().to_string()}, {"terms", terms}};
  return j.dump();
}

WeylElement weyl_from_json(const std::string& text) {
  json j = json::parse(text);
  MetricSig g = MetricSig::parse(j.at("metric").get<std::string>());
  std::vector<WeylElement::Term> raw;
  for (const auto& t : j.at("terms")) {
    std::array<int, 4> x{}, p{};
    for (int mu = 0; mu < 4; ++mu) {
      x[mu] = t.at("x").at(mu).get<int>();
      p[mu] = t.at("p").at(mu).get<int>();
    }
    raw.emplace_back(wmono::make(x, p, t.at("h").get<int>()), Scalar(q_parse(t.at("re")), q_parse(t.at("im"))));
  }
  return WeylElement::from_terms(j.at("h_order").get<int>(), g, std::move(raw));
}

std::string results_to_json(const std::vector<AxiomResult>& v) {
  json a = json::array();
  for (const auto& r : v)
    a.push_back({{"axiom", r.axiom},
                 {"generators", r.generators},
                 {"order", r.order},
                 {"residual_ultra_norm", q_str(r.residual_norm)},
                 {"pass", r.pass}});
  return a.dump();
}

std::string delay_model_to_json(const DelayModel& d) {
  json j{{"family", d.family}, {"param", d.param}, {"b1", q_str(d.b1)}, {"b2", q_str(d.b2)},
         {"B1", q_str(d.B1)},  {"B2", q_str(d.B2)},   {"c1", q_str(d.c1)}, {"c2", q_str(d.c2)}};
  return j.dump();
}

// ---------------------------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& s, int order, MetricSig g) : s_(s), order_(order), g_(g) {}

  PolyState parse() {
    PolyState v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    if (v.has_momenta()) throw ParseError("momenta are not allowed", 0);
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  WeylElement constant(const Scalar& c) { return WeylElement::constant(order_, c, g_); }

  WeylElement expr() {
    WeylElement v(order_, g_);
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      else if (!first && !eat('+')) break;
      else if (first) eat('+');
      WeylElement t = term();
      v += neg ? -t : t;
      first = false;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return v;
  }

  WeylElement term() {
    WeylElement v = power();
    while (eat('*')) v = v * power();
    return v;
  }

  int exponent() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) throw ParseError("exponent expected", pos_);
    return std::stoi(s_.substr(b, pos_ - b));
  }

  WeylElement power() {
    WeylElement base = atom();
    if (!eat('^')) return base;
    int n = exponent();
    WeylElement v = constant(Scalar(1));
    for (int k = 0; k < n; ++k) v = v * base;
    return v;
  }

  WeylElement atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      WeylElement v = expr();
      if (!eat(')')) throw ParseError("')' expected", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      mpq_class q;
      if (q.set_str(s_.substr(b, pos_ - b), 10) != 0 || q.get_den() == 0) throw ParseError("bad rational literal", b);
      q.canonicalize();
      return constant(Scalar(q));
    }
    if (c == 'i' || c == 'I') {
      ++pos_;
      return constant(Scalar::i());
    }
    if (c == 'h') {
      ++pos_;
      return WeylElement::h_power(1, order_, g_);
    }
    if (c == 'x') {
      ++pos_;
      if (pos_ >= s_.size() || s_[pos_] < '0' || s_[pos_] - '0' >= g_.n) throw ParseError("coordinate index expected", pos_);
      int mu = s_[pos_++] - '0';
      return WeylElement::x(mu, order_, g_);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int order_;
  MetricSig g_;
};

}  // namespace

PolyState parse_polynomial(const std::string& text, int h_order, MetricSig metric) {
  return PolyParser(text, h_order, metric).parse();
}

}  // namespace kappa
