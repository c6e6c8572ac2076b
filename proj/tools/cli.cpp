#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "kappa/hopf.hpp"
#include "kappa/io.hpp"
#include "kappa/lie.hpp"
#include "kappa/pheno.hpp"
#include "kappa/twist.hpp"

namespace kappa::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int order = kDefaultOrder;
  std::string metric = "-+++";
  std::string format = "table";
  std::uint64_t seed = 1;
};

// ---------------------------------------------------------------------------
// Output tables

using Cell = std::variant<std::monostate, std::string, double, bool>;

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<Cell>> rows;
  // Extra JSON payload per row (symbolic results), emitted only in JSON.
  std::vector<json> payload;
};

std::string fmt12(double v) {
  if (v == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<double>(c)) return fmt12(std::get<double>(c));
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "pass" : "FAIL";
  return "";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) {
    if (ch == '"') o += '"';
    o += ch;
  }
  return o + "\"";
}

void emit(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json a = json::array();
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      json o = json::object();
      for (std::size_t c = 0; c < t.cols.size(); ++c) {
        const Cell& v = t.rows[r][c];
        if (std::holds_alternative<std::string>(v)) o[t.cols[c]] = std::get<std::string>(v);
        else if (std::holds_alternative<double>(v)) o[t.cols[c]] = std::get<double>(v);
        else if (std::holds_alternative<bool>(v)) o[t.cols[c]] = std::get<bool>(v);
        else o[t.cols[c]] = nullptr;
      }
      if (r < t.payload.size() && !t.payload[r].is_null()) o.update(t.payload[r]);
      a.push_back(o);
    }
    out << a.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    for (std::size_t c = 0; c < t.cols.size(); ++c) out << (c ? "," : "") << t.cols[c];
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(cell_text(row[c]));
      out << "\n";
    }
    return;
  }
  std::vector<std::size_t> w(t.cols.size());
  for (std::size_t c = 0; c < t.cols.size(); ++c) w[c] = t.cols[c].size();
  for (const auto& row : t.rows)
    for (std::size_t c = 0; c < row.size(); ++c) w[c] = std::max(w[c], cell_text(row[c]).size());
  auto line = [&](const std::vector<std::string>& v) {
    for (std::size_t c = 0; c < v.size(); ++c) {
      out << v[c];
      if (c + 1 < v.size()) out << std::string(w[c] - v[c].size() + 2, ' ');
    }
    out << "\n";
  };
  line(t.cols);
  for (const auto& row : t.rows) {
    std::vector<std::string> v;
    for (const auto& c : row) v.push_back(cell_text(c));
    line(v);
  }
}

// ---------------------------------------------------------------------------
// Argument helpers

mpq_class rational(const std::string& s, const char* what) {
  mpq_class q;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || q.set_str(t, 10) != 0 || q.get_den() == 0) throw UsageError(std::string("bad rational for ") + what + ": '" + s + "'");
  q.canonicalize();
  return q;
}

std::vector<mpq_class> rational_list(const std::string& s, const char* what) {
  std::vector<mpq_class> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(rational(item, what));
  return v;
}

TwistFamily family_of(const std::string& f) {
  if (f == "abelian") return TwistFamily::abelian;
  if (f == "jordanian") return TwistFamily::jordanian;
  if (f == "theta") return TwistFamily::theta;
  throw UsageError("unknown twist family '" + f + "' (abelian, jordanian, theta)");
}

struct TwistArgs {
  std::string family = "abelian";
  std::string param = "0";
  std::string theta = "0,1;-1,0";

  void add(CLI::App* sub) {
    sub->add_option("--family", family, "abelian | jordanian | theta");
    sub->add_option("--param", param, "s (abelian) or r (jordanian), rational");
    sub->add_option("--theta", theta, "theta matrix rows, e.g. \"0,1;-1,0\"");
  }
  Twist build(int order) const {
    TwistFamily f = family_of(family);
    if (f == TwistFamily::theta) {
      ThetaMatrix th;
      try {
        th = parse_theta(theta);
      } catch (const std::exception& e) {
        throw UsageError(std::string("bad --theta: ") + e.what());
      }
      return build_theta_twist(th, order);
    }
    return build_twist(f, rational(param, "--param"), order);
  }
};

void require_default_metric(const RunConfig& cfg) {
  if (!(MetricSig::parse(cfg.metric) == MetricSig::mostly_plus()))
    throw UsageError("this command works in the -+++ signature");
}

std::string pow2_norm(int failing_order) {
  if (failing_order < 0) return "0";
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(failing_order));
  return mpq_class(1, d).get_str();
}

// ---------------------------------------------------------------------------
// verify

Table verify_table() { return {{"suite", "subject", "check", "generators", "order", "residual", "pass", "note"}, {}, {}}; }

void add_row(Table& t, const std::string& suite, const std::string& subject, const std::string& check,
             const std::string& gens, int order, const std::string& residual, bool pass, const std::string& note = "") {
  t.rows.push_back({suite, subject, check, gens, static_cast<double>(order), residual, pass, note});
}

void add_results(Table& t, const std::string& suite, const std::string& subject, const std::vector<AxiomResult>& v) {
  for (const auto& r : v) add_row(t, suite, subject, r.axiom, r.generators, r.order, r.residual_norm.get_str(), r.pass);
}

void verify_one_twist(Table& t, const Twist& tw, int order) {
  const std::string who = tw.label();
  CocycleReport rep = check_cocycle(tw);
  add_row(t, "twists", who, "cocycle and normalization", "F", order, pow2_norm(rep.failing_order()), rep.pass());
  if (order >= 2) {
    CocycleReport bad = check_cocycle(corrupt_twist(tw, 2));
    add_row(t, "twists", who, "corruption detected", "F", order, pow2_norm(bad.failing_order()), !bad.pass(),
            "failing order " + std::to_string(bad.failing_order()));
  }
  auto x = [&](int mu) { return WeylElement::x(mu, order); };
  WeylElement ih = WeylElement::h_power(1, order).scaled(Scalar::i());
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) {
      WeylElement want(order);
      if (tw.family == TwistFamily::theta) want = ih.scaled(Scalar(tw.theta[mu][nu]));
      else if (mu == 0) want = ih * x(nu);
      WeylElement d = star_commutator(tw, x(mu), x(nu)) - want;
      add_row(t, "twists", who, "star commutator", "x" + std::to_string(mu) + ",x" + std::to_string(nu), order,
              d.ultra_norm().get_str(), d.is_zero());
    }
  if (tw.family == TwistFamily::theta) return;
  for (const auto& fc : check_closed_forms(tw)) {
    std::string note = fc.printed_match ? "printed form matches"
                                        : "printed form differs from h^" + std::to_string(fc.failing_order);
    add_row(t, "twists", who, "closed-form " + fc.kind, fc.generator, order, fc.corrected_match ? "0" : "nonzero",
            fc.corrected_match, note);
  }
  for (const auto& hc : check_twisted_homomorphism(tw))
    add_row(t, "twists", who, "coproduct homomorphism", hc.a + "," + hc.b, order, hc.pass ? "0" : "nonzero", hc.pass);
}

void verify_twists(Table& t, const TwistArgs& ta, bool family_given, const RunConfig& cfg) {
  require_default_metric(cfg);
  if (family_given) {
    Twist tw = ta.build(cfg.order);
    verify_one_twist(t, tw, cfg.order);
    if (tw.family != TwistFamily::theta) {
      Twist t4 = ta.build(std::min(cfg.order, 4));
      BorelTensor<3> q = qybe_residual(universal_r_matrix(t4));
      add_row(t, "twists", tw.label(), "quantum Yang-Baxter", "R", t4.order, q.ultra_norm().get_str(), q.is_zero());
    }
    return;
  }
  for (const char* s : {"0", "1/2", "1"}) verify_twists(t, {"abelian", s, ta.theta}, true, cfg);
  for (const char* r : {"-1", "1", "3"}) verify_twists(t, {"jordanian", r, ta.theta}, true, cfg);
  verify_twists(t, {"theta", "0", ta.theta}, true, cfg);
}

void verify_hopf(Table& t, const std::string& basis, const std::string& kappa_str, const RunConfig& cfg) {
  if (basis != "classical" && basis != "qanalog" && basis != "bicross" && basis != "all")
    throw UsageError("unknown basis '" + basis + "' (classical, qanalog, bicross, all)");
  if (basis == "classical" || basis == "all") {
    HopfSpec s = build_kappa_classical(cfg.order);
    add_results(t, "hopf", "classical", check_hopf_axioms(s));
    add_results(t, "hopf", "classical", casimirs(s).results);
  }
  if (basis == "bicross" || basis == "all") {
    add_results(t, "hopf", "bicrossproduct", to_bicrossproduct(cfg.order).results);
    add_results(t, "hopf", "bicrossproduct", verify_bicross_coaction(std::min(cfg.order, 6)));
  }
  if (basis == "qanalog" || basis == "all") {
    mpq_class k = rational(kappa_str, "--kappa");
    if (k <= 0) throw UsageError("--kappa must be positive");
    HopfSpec q = build_kappa_qanalog(k);
    add_results(t, "hopf", "q-analog", check_hopf_axioms(q));
    add_results(t, "hopf", "q-analog", casimirs(q).results);
    add_results(t, "hopf", "q-analog", check_rescaling(k));
  }
}

DsrRealization realization_by_name(const std::string& name, const std::string& psi, const std::string& gamma, int order) {
  if (name == "natural") return realize_natural(order);
  if (name == "bicross") return realize_noncovariant({1}, {1}, order);
  if (name == "noncovariant") {
    std::vector<mpq_class> p = rational_list(psi, "--psi"), g = rational_list(gamma, "--gamma");
    if (p.empty() || p[0] != 1) throw UsageError("--psi must start with 1");
    if (g.empty()) throw UsageError("--gamma needs at least one coefficient");
    return realize_noncovariant(p, g, order);
  }
  throw UsageError("unknown realization '" + name + "' (natural, bicross, noncovariant)");
}

void verify_dsr_suite(Table& t, const std::string& name, const std::string& psi, const std::string& gamma, int samples,
                      const RunConfig& cfg) {
  require_default_metric(cfg);
  if (name == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    auto q = [&] { return mpq_class(num(rng), den(rng)); };
    int order = std::min(cfg.order, 6);
    for (int i = 0; i < samples; ++i) {
      std::vector<mpq_class> p{1, q(), q()}, g{q(), q()};
      for (auto& v : p) v.canonicalize();
      for (auto& v : g) v.canonicalize();
      std::string who = "psi=" + p[1].get_str() + "," + p[2].get_str() + " gamma=" + g[0].get_str() + "," + g[1].get_str();
      add_results(t, "dsr", who, verify_dsr(realize_noncovariant(p, g, order), {true, true, false}));
    }
    return;
  }
  DsrRealization r = realization_by_name(name, psi, gamma, cfg.order);
  add_results(t, "dsr", r.name, verify_dsr(r, {true, true, name == "bicross"}));
}

// ---------------------------------------------------------------------------
// phenomenology

DelayModel resolve_model(const std::string& model, const std::string& param, const std::string& b1,
                         const std::string& b2) {
  if (model == "custom") return make_delay_model(rational(b1, "--b1"), rational(b2, "--b2"), "custom");
  try {
    return named_delay_model(model, rational(param, "--param"));
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const UsageError*>(&e)) throw;
    throw UsageError(e.what());
  }
}

const std::vector<std::string> kDelayCols{"model", "param", "b1", "b2", "B1", "B2", "E_GeV", "z", "delay_s", "bound_GeV"};

std::vector<Cell> model_cells(const DelayModel& d) {
  return {d.family, d.param, d.b1.get_d(), d.b2.get_d(), d.B1.get_d(), d.B2.get_d()};
}

json weyl_payload(const WeylElement& w) { return {{"element", json::parse(weyl_to_json(w))}}; }

}  // namespace

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twist-deformed kappa-Minkowski and kappa-Poincare toolkit", "kappa"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file (flags override it)");
  RunConfig cfg;
  app.add_option("--order", cfg.order, "truncation order in h")->check(CLI::Range(2, 16))->envname("KAPPA_ORDER");
  app.add_option("--metric", cfg.metric, "signature, e.g. -+++ or +---");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--seed", cfg.seed, "seed for sampled checks");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite")->fallthrough();
  std::string suite;
  TwistArgs vtw;
  std::string basis = "all", kappa_str = "1", real = "natural", psi = "1", gamma = "0";
  int samples = 20;
  verify->add_option("suite", suite, "twists | hopf | dsr | all")->required();
  vtw.add(verify);
  verify->add_option("--basis", basis, "classical | qanalog | bicross | all");
  verify->add_option("--kappa", kappa_str, "q-analog deformation parameter");
  verify->add_option("--realization", real, "natural | bicross | noncovariant | random");
  verify->add_option("--psi", psi, "psi coefficients 1,psi1,psi2,...");
  verify->add_option("--gamma", gamma, "gamma coefficients gamma0,gamma1,...");
  verify->add_option("--samples", samples, "random samples for --realization random")->check(CLI::PositiveNumber);

  // star
  auto* star = app.add_subcommand("star", "star product of two polynomials")->fallthrough();
  TwistArgs stw;
  std::string f_expr, g_expr;
  stw.add(star);
  star->add_option("f", f_expr)->required();
  star->add_option("g", g_expr)->required();

  // coproduct
  auto* cop = app.add_subcommand("coproduct", "twisted or kappa-Poincare coproduct of a generator")->fallthrough();
  TwistArgs ctw;
  std::string generator, hbasis;
  ctw.add(cop);
  cop->add_option("--generator", generator, "P0..P3, L^nu_mu, D, M1..M3, N1..N3, Xi")->required();
  cop->add_option("--basis", hbasis, "classical | qanalog (kappa-Poincare instead of a twist)");
  cop->add_option("--kappa", kappa_str, "q-analog deformation parameter");

  // rmatrix
  auto* rmat = app.add_subcommand("rmatrix", "universal and classical r-matrix of a twist")->fallthrough();
  TwistArgs rtw;
  rtw.add(rmat);

  // realization
  auto* realc = app.add_subcommand("realization", "Heisenberg realization of the coordinates")->fallthrough();
  std::string rfam = "natural", rparam = "0", side = "left";
  realc->add_option("--family", rfam, "abelian | jordanian | natural | bicross | noncovariant");
  realc->add_option("--param", rparam, "s or r");
  realc->add_option("--side", side, "left | right")->check(CLI::IsMember({"left", "right"}));
  realc->add_option("--psi", psi, "psi coefficients 1,psi1,...");
  realc->add_option("--gamma", gamma, "gamma coefficients gamma0,...");

  // dispersion
  auto* disp = app.add_subcommand("dispersion", "dispersion and delay coefficients")->fallthrough();
  std::string model = "abelian", mparam = "0", b1 = "0", b2 = "0";
  std::string psi1, psi2 = "0", gamma0 = "0", gamma1 = "0";
  disp->add_option("--model", model, "abelian | jordanian | abelian-hermitian | jordanian-hermitian | magueijo-smolin");
  disp->add_option("--param", mparam, "s or r");
  disp->add_option("--psi1", psi1, "explicit realization coefficients instead of --model");
  disp->add_option("--psi2", psi2);
  disp->add_option("--gamma0", gamma0);
  disp->add_option("--gamma1", gamma1);

  // delay
  auto* delay = app.add_subcommand("delay", "photon time delay")->fallthrough();
  std::vector<double> energies;
  double l_mpc = 0, MQ = kPlanckMassGeV, z = -1;
  std::string form = "energy";
  delay->add_option("--model", model, "model name or custom");
  delay->add_option("--param", mparam, "s or r");
  delay->add_option("--b1", b1, "custom b1");
  delay->add_option("--b2", b2, "custom b2");
  delay->add_option("--E", energies, "photon energies in GeV")->required();
  delay->add_option("--l-mpc", l_mpc, "flat-space distance in Mpc");
  delay->add_option("--z", z, "redshift (cosmological delay)");
  delay->add_option("--MQ", MQ, "quantum gravity scale in GeV");
  delay->add_option("--form", form, "energy | momentum")->check(CLI::IsMember({"energy", "momentum"}));

  // bounds
  auto* bounds = app.add_subcommand("bounds", "quantum gravity scale and parameter bounds")->fallthrough();
  std::string baseline = "mccf", kind = "linear";
  double beta = kBetaCal;
  bool params = false;
  bounds->add_option("--baseline", baseline, "mccf | wavelet | value in GeV");
  bounds->add_option("--kind", kind, "linear | quadratic")->check(CLI::IsMember({"linear", "quadratic"}));
  bounds->add_option("--model", model, "model name or custom");
  bounds->add_option("--param", mparam, "s or r");
  bounds->add_option("--b1", b1, "custom b1");
  bounds->add_option("--b2", b2, "custom b2");
  bounds->add_flag("--parameters", params, "print parameter bounds from the |B1| cap instead");
  bounds->add_option("--beta", beta, "|B1| cap for --parameters");

  // schouten
  auto* sch = app.add_subcommand("schouten", "Schouten bracket of Poincare bivectors")->fallthrough();
  std::string r_expr, s_expr;
  sch->add_option("r", r_expr, "bivector, e.g. \"N1^P1 + N2^P2 + N3^P3\"")->required();
  sch->add_option("s", s_expr, "second bivector (defaults to r)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    MetricSig metric;
    try {
      metric = MetricSig::parse(cfg.metric);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad --metric: ") + e.what());
    }
    Table t;
    bool checks = false;

    if (*verify) {
      if (suite != "twists" && suite != "hopf" && suite != "dsr" && suite != "all")
        throw UsageError("unknown suite '" + suite + "' (twists, hopf, dsr, all)");
      t = verify_table();
      bool fam = verify->count("--family") > 0;
      if (suite == "twists" || suite == "all") verify_twists(t, vtw, fam, cfg);
      if (suite == "hopf" || suite == "all") verify_hopf(t, basis, kappa_str, cfg);
      if (suite == "dsr" || suite == "all") {
        if (suite == "all" && verify->count("--realization") == 0) {
          verify_dsr_suite(t, "natural", psi, gamma, samples, cfg);
          verify_dsr_suite(t, "bicross", psi, gamma, samples, cfg);
        } else {
          verify_dsr_suite(t, real, psi, gamma, samples, cfg);
        }
      }
      checks = true;
    } else if (*star) {
      require_default_metric(cfg);
      Twist tw = stw.build(cfg.order);
      PolyState f = parse_polynomial(f_expr, cfg.order, metric), g = parse_polynomial(g_expr, cfg.order, metric);
      PolyState r = star_product(tw, f, g);
      t = {{"twist", "f", "g", "result"}, {{tw.label(), f_expr, g_expr, r.to_string()}}, {weyl_payload(r)}};
    } else if (*cop) {
      if (!hbasis.empty()) {
        HopfSpec s;
        if (hbasis == "classical") s = build_kappa_classical(cfg.order);
        else if (hbasis == "qanalog") s = build_kappa_qanalog(rational(kappa_str, "--kappa"));
        else throw UsageError("unknown basis '" + hbasis + "' (classical, qanalog)");
        HopfElement X;
        try {
          X = s.generator(generator);
        } catch (const std::exception& e) {
          throw UsageError(e.what());
        }
        t = {{"basis", "generator", "coproduct", "antipode"},
             {{s.name, generator, coproduct(s, X).to_string(), antipode(s, X).to_string()}},
             {}};
      } else {
        require_default_metric(cfg);
        Twist tw = ctw.build(cfg.order);
        WeylElement X;
        try {
          X = igl_realize(generator, cfg.order);
        } catch (const std::exception& e) {
          throw UsageError(e.what());
        }
        WeylElement S = twisted_antipode(tw, X);
        t = {{"twist", "generator", "coproduct", "antipode"},
             {{tw.label(), generator, twisted_coproduct(tw, X).to_string(), S.to_string()}},
             {json{{"antipode_element", json::parse(weyl_to_json(S))}}}};
      }
    } else if (*rmat) {
      require_default_metric(cfg);
      Twist tw = rtw.build(cfg.order);
      BorelTensor<2> R = universal_r_matrix(tw);
      t = {{"twist", "classical_r", "R"}, {{tw.label(), classical_r_matrix(R).to_string(), R.to_string()}}, {}};
    } else if (*realc) {
      require_default_metric(cfg);
      t = {{"realization", "generator", "expression"}, {}, {}};
      auto put = [&](const std::string& who, const std::string& g, const WeylElement& w) {
        t.rows.push_back({who, g, w.to_string()});
        t.payload.push_back(weyl_payload(w));
      };
      if (rfam == "abelian" || rfam == "jordanian") {
        auto X = realize_coordinates(family_of(rfam), rational(rparam, "--param"),
                                     side == "left" ? Side::left : Side::right, cfg.order);
        for (int mu = 0; mu < 4; ++mu) put(rfam + " " + side, "x" + std::to_string(mu), X[mu]);
      } else {
        DsrRealization r = realization_by_name(rfam, psi, gamma, cfg.order);
        for (int mu = 0; mu < 4; ++mu) put(r.name, "X" + std::to_string(mu), r.X[mu]);
        for (int mu = 0; mu < 4; ++mu) put(r.name, "P" + std::to_string(mu), r.P[mu]);
        for (int i = 0; i < 3; ++i) put(r.name, "M" + std::to_string(i + 1), r.M[i]);
        for (int i = 0; i < 3; ++i) put(r.name, "N" + std::to_string(i + 1), r.N[i]);
      }
    } else if (*disp) {
      DelayModel d, s;
      if (!psi1.empty()) {
        RealizationCoeffs rc{rational(psi1, "--psi1"), rational(psi2, "--psi2"), rational(gamma0, "--gamma0"),
                             rational(gamma1, "--gamma1")};
        d = delay_coeffs(rc, "realization", psi1 + "," + psi2 + "," + gamma0 + "," + gamma1);
        s = dispersion_series(rc);
      } else {
        d = resolve_model(model, mparam, b1, b2);
        s = d;
      }
      bool agree = s.b1 == d.b1 && s.b2 == d.b2;
      t = {{"model", "param", "b1", "b2", "B1", "B2", "c1", "c2", "xi", "zeta", "series_agrees"},
           {{d.family, d.param, d.b1.get_str(), d.b2.get_str(), d.B1.get_str(), d.B2.get_str(), d.c1.get_str(),
             d.c2.get_str(), d.xi().get_str(), d.zeta().get_str(), agree}},
           {}};
      checks = true;
    } else if (*delay) {
      DelayModel d = resolve_model(model, mparam, b1, b2);
      bool cosmo = delay->count("--z") > 0;
      if (!cosmo && !(l_mpc > 0)) throw UsageError("need --l-mpc > 0 or --z");
      if (cosmo && z < 0) throw UsageError("--z must be non-negative");
      t.cols = kDelayCols;
      for (double E : energies) {
        if (!(E > 0)) throw UsageError("energies must be positive");
        double dt = cosmo ? cosmological_delay(z, E, MQ, d)
                          : time_delay(E, l_mpc, MQ, d, form == "energy" ? DelayForm::energy : DelayForm::momentum);
        auto row = model_cells(d);
        row.insert(row.end(), {E, cosmo ? Cell(z) : Cell(), dt, Cell()});
        t.rows.push_back(row);
      }
    } else if (*bounds) {
      if (params) {
        t = {{"model", "parameter", "bound"},
             {{std::string("jordanian"), std::string("r >"), jordanian_r_lower_bound(beta)},
              {std::string("abelian"), std::string("s <"), abelian_s_upper_bound(beta)}},
             {}};
      } else {
        DelayModel d = resolve_model(model, mparam, b1, b2);
        BoundInput in;
        in.kind = kind == "linear" ? BoundKind::linear : BoundKind::quadratic;
        if (baseline == "mccf") in.baseline_GeV = in.kind == BoundKind::linear ? kMccfLinearGeV : mccf_quadratic_baseline();
        else if (baseline == "wavelet") {
          if (in.kind != BoundKind::linear) throw UsageError("the wavelet baseline is linear only");
          in.baseline_GeV = kWaveletLinearGeV;
        } else {
          try {
            in.baseline_GeV = std::stod(baseline);
          } catch (const std::exception&) {
            throw UsageError("bad --baseline '" + baseline + "'");
          }
        }
        if (!(in.baseline_GeV > 0)) throw UsageError("--baseline must be positive");
        BoundResult b = bound_MQ(in, d, mccf_quadratic_baseline());
        t.cols = kDelayCols;
        auto row = model_cells(d);
        row.insert(row.end(), {Cell(), Cell(), Cell(), b.none ? Cell() : Cell(b.M_Q_GeV)});
        t.rows.push_back(row);
      }
    } else if (*sch) {
      LieAlgebra g = poincare_algebra(true, metric);
      Multivector r, s;
      try {
        r = parse_multivector(g, r_expr);
        s = s_expr.empty() ? r : parse_multivector(g, s_expr);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      Multivector v = schouten_bracket(g, r, s);
      t = {{"r", "s", "bracket", "zero"}, {{r_expr, s_expr.empty() ? r_expr : s_expr, v.to_string(g), std::string(v.is_zero() ? "yes" : "no")}}, {}};
    }

    emit(t, cfg.format, out);
    if (checks && !t.rows.empty()) {
      int pass_col = -1;
      for (std::size_t c = 0; c < t.cols.size(); ++c)
        if (t.cols[c] == "pass" || t.cols[c] == "series_agrees") pass_col = static_cast<int>(c);
      for (const auto& row : t.rows)
        if (pass_col >= 0 && std::holds_alternative<bool>(row[pass_col]) && !std::get<bool>(row[pass_col]))
          return kExitFail;
    }
    return kExitPass;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace kappa::cli
