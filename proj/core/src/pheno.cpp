#include "kappa/pheno.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "kappa/series.hpp"

namespace kappa {

RealizationCoeffs RealizationCoeffs::abelian(const mpq_class& s) { return {0, 0, s, 0}; }
RealizationCoeffs RealizationCoeffs::jordanian(const mpq_class& r) { return {r, 0, 0, 0}; }
RealizationCoeffs RealizationCoeffs::hermitian(const mpq_class& g0, const mpq_class& g1) {
  return {-3 * g0, mpq_class(-3, 2) * g1, g0, g1};
}
bool RealizationCoeffs::is_hermitian() const { return psi1 == -3 * gamma0 && psi2 == mpq_class(-3, 2) * gamma1; }

bool DelayModel::consistent() const {
  return c1 == b1 && c2 == 2 * b1 * b1 - b2 && B1 == 2 * b1 && B2 == 2 * b1 * b1 - 3 * b2;
}

DelayModel make_delay_model(const mpq_class& b1, const mpq_class& b2, std::string family, std::string param) {
  DelayModel d;
  d.b1 = b1;
  d.b2 = b2;
  d.b1.canonicalize();
  d.b2.canonicalize();
  d.c1 = b1;
  d.c2 = 2 * b1 * b1 - b2;
  d.B1 = 2 * b1;
  d.B2 = 2 * b1 * b1 - 3 * b2;
  d.family = std::move(family);
  d.param = std::move(param);
  return d;
}

DelayModel delay_coeffs(const RealizationCoeffs& rc_in, std::string family, std::string param) {
  RealizationCoeffs rc = rc_in;
  for (auto* q : {&rc.psi1, &rc.psi2, &rc.gamma0, &rc.gamma1}) q->canonicalize();
  const auto &p1 = rc.psi1, &p2 = rc.psi2, &g0 = rc.gamma0, &g1 = rc.gamma1;
  mpq_class b1 = mpq_class(1, 2) * (2 * g0 - 1 - p1);
  // the psi2 coefficient is -2 (the series expansion fixes it)
  mpq_class b2 = mpq_class(1, 6) * (1 + 3 * p1 + 2 * p1 * p1 - 2 * p2 + 3 * g0 * g0 - 3 * g0 + 3 * g1 - 6 * g0 * p1);
  DelayModel d = make_delay_model(b1, b2, std::move(family), std::move(param));
  // closed form of B2, cross-checked against 2b1^2 - 3b2
  mpq_class B2 = mpq_class(1, 2) * (g0 * g0 - p1 * p1 - g0 + 2 * p1 * g0 - p1 + 2 * p2 - 3 * g1);
  if (B2 != d.B2) throw std::logic_error("delay coefficient identities disagree");
  return d;
}

DelayModel dispersion_series(const RealizationCoeffs& rc_in, int order) {
  RealizationCoeffs rc = rc_in;
  for (auto* q : {&rc.psi1, &rc.psi2, &rc.gamma0, &rc.gamma1}) q->canonicalize();
  if (order < 2) throw std::invalid_argument("dispersion_series needs order >= 2");
  // A plays the role of the formal parameter; one order is lost dividing by A.
  RingPtr R = make_ring({}, order + 1);
  TruncSeries A = TruncSeries::h(R), one = TruncSeries::constant(R, Scalar(1));
  TruncSeries psi = one + A.scaled(Scalar(rc.psi1)) + (A * A).scaled(Scalar(rc.psi2));
  TruncSeries gamma = TruncSeries::constant(R, Scalar(rc.gamma0)) + A.scaled(Scalar(rc.gamma1));
  TruncSeries inv = invert(psi);
  TruncSeries I = inv.integral("h"), J = (gamma * inv).integral("h");
  TruncSeries ratio = (one - exp(-I)).shift_h(-1) * exp(J);
  // |p|/E = 1 + b1 A + b2 A^2 with A = -E/M
  Mono m1, m2;
  m1.e[0] = 1;
  m2.e[0] = 2;
  if (ratio.constant_term() != Scalar(1)) throw std::logic_error("dispersion series has wrong classical limit");
  return make_delay_model(ratio.coeff(m1).re(), ratio.coeff(m2).re(), "series");
}

// ---------------------------------------------------------------------------

namespace {

double mpq(const mpq_class& q) { return q.get_d(); }
double seconds_per_mpc_over_c() { return kMpcKm / kSpeedOfLightKmS; }

void check_regime(double E, double M_Q) {
  if (!(M_Q > 0)) throw DomainError("M_Q must be positive");
  if (std::abs(E) >= M_Q) throw DomainError("energy at or above M_Q is outside the expansion");
}

}  // namespace

double time_delay(double E, double l_mpc, double M_Q, const DelayModel& dm, DelayForm form) {
  check_regime(E, M_Q);
  double t = l_mpc * seconds_per_mpc_over_c();
  double x = E / M_Q;
  if (form == DelayForm::energy) return -t * x * (2 * mpq(dm.b1) - 3 * mpq(dm.b2) * x);
  return -t * x * (mpq(dm.B1) + mpq(dm.B2) * x);
}

double relative_delay(double E_low, double E_high, double l_mpc, double M_Q, const DelayModel& dm) {
  check_regime(E_low, M_Q);
  check_regime(E_high, M_Q);
  double t = l_mpc * seconds_per_mpc_over_c();
  double dE = (E_low - E_high) / M_Q, dE2 = (E_low * E_low - E_high * E_high) / (M_Q * M_Q);
  return -t * (2 * mpq(dm.b1) * dE - 3 * mpq(dm.b2) * dE2);
}

bool Cosmology::flat() const { return std::abs(omega_m + omega_l - 1) < 1e-6; }

double cosmo_integral(int k, double z, const Cosmology& cos, double rel_tol) {
  if (z < 0) throw DomainError("redshift must be non-negative");
  if (z == 0) return 0;
  double hubble_time = kMpcKm / cos.H0;  // seconds
  auto f = [&](double zp) {
    double a = 1 + zp;
    return std::pow(a, k) / std::sqrt(cos.omega_l + cos.omega_m * a * a * a);
  };
  double err = 0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, z, 20, rel_tol, &err);
  return v * hubble_time;
}

double cosmological_delay(double z, double E_low, double E_high, double M_Q, const DelayModel& dm,
                          const Cosmology& cos) {
  check_regime(E_low, M_Q);
  check_regime(E_high, M_Q);
  double dE = (E_low - E_high) / M_Q, dE2 = (E_low * E_low - E_high * E_high) / (M_Q * M_Q);
  return -2 * mpq(dm.b1) * dE * cosmo_integral(1, z, cos) + 3 * mpq(dm.b2) * dE2 * cosmo_integral(2, z, cos);
}

double cosmological_delay(double z, double dE, double M_Q, const DelayModel& dm, const Cosmology& cos) {
  check_regime(dE, M_Q);
  double x = dE / M_Q;
  return -2 * mpq(dm.b1) * x * cosmo_integral(1, z, cos) + 3 * mpq(dm.b2) * x * x * cosmo_integral(2, z, cos);
}

BoundResult bound_MQ(const BoundInput& in, const DelayModel& dm, double quadratic_baseline_GeV) {
  if (!(in.baseline_GeV > 0)) throw std::invalid_argument("bound baseline must be positive");
  BoundResult r;
  r.kind = in.kind;
  double qb = in.kind == BoundKind::quadratic ? in.baseline_GeV : quadratic_baseline_GeV;
  if (in.kind == BoundKind::linear) {
    if (dm.B1 != 0) {
      r.M_Q_GeV = std::abs(mpq(dm.B1)) * in.baseline_GeV;
      return r;
    }
    r.degenerate = true;
    r.kind = BoundKind::quadratic;
  }
  if (dm.B2 == 0 || !(qb > 0)) {
    r.none = true;
    return r;
  }
  r.M_Q_GeV = std::sqrt(std::abs(mpq(dm.B2))) * qb;
  return r;
}

double mccf_quadratic_baseline() { return 1.31e9 * std::sqrt(8.0); }

DelayModel named_delay_model(const std::string& name, const mpq_class& param) {
  if (name == "abelian") return delay_coeffs(RealizationCoeffs::abelian(param), name, param.get_str());
  if (name == "jordanian") return delay_coeffs(RealizationCoeffs::jordanian(param), name, param.get_str());
  if (name == "abelian-hermitian") return delay_coeffs(RealizationCoeffs::abelian(0), name, "0");
  if (name == "jordanian-hermitian") return delay_coeffs(RealizationCoeffs::jordanian(3), name, "3");
  if (name == "magueijo-smolin") return delay_coeffs({-3, 2, 0, 0}, name, "");
  throw std::invalid_argument("unknown delay model '" + name + "'");
}

double jordanian_r_lower_bound(double beta) { return -1 - beta; }
double abelian_s_upper_bound(double beta) { return (1 + beta) / 2; }

double covariant_dispersion(double phi, double E, double p, double M_Q) {
  if (!(M_Q > 0)) throw DomainError("M_Q must be positive");
  double a = phi - E / M_Q;
  double den = a * a - p * p / (M_Q * M_Q);
  if (std::abs(den) < 1e-300) throw DomainError("singular covariant dispersion denominator");
  return (E * E - p * p) / den;
}

}  // namespace kappa
