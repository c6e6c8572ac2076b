#include <cmath>
#include <random>

#include "doctest.h"
#include "kappa/pheno.hpp"
#include "support.hpp"

using namespace kappa;

namespace {

// Plain univariate series over Q truncated at A^3, independent of the library.
using Ser = std::vector<mpq_class>;
constexpr int kTerms = 4;

Ser mul(const Ser& a, const Ser& b) {
  Ser c(kTerms, 0);
  for (int i = 0; i < kTerms; ++i)
    for (int j = 0; i + j < kTerms; ++j) c[i + j] += a[i] * b[j];
  return c;
}
Ser inv(const Ser& a) {
  Ser c(kTerms, 0);
  c[0] = 1 / a[0];
  for (int n = 1; n < kTerms; ++n) {
    mpq_class s = 0;
    for (int k = 1; k <= n; ++k) s += a[k] * c[n - k];
    c[n] = -s / a[0];
  }
  return c;
}
Ser integ(const Ser& a) {
  Ser c(kTerms, 0);
  for (int i = 0; i + 1 < kTerms; ++i) c[i + 1] = a[i] / (i + 1);
  return c;
}
Ser exps(const Ser& u) {  // u[0] == 0
  Ser r(kTerms, 0), term(kTerms, 0);
  r[0] = term[0] = 1;
  for (int n = 1; n < kTerms; ++n) {
    term = mul(term, u);
    for (int i = 0; i < kTerms; ++i) r[i] += term[i] / [&] {
      mpq_class f = 1;
      for (int k = 2; k <= n; ++k) f *= k;
      return f;
    }();
  }
  return r;
}

// |p|/E = (1 - exp(-int dA/psi))/A * exp(int gamma dA/psi) = 1 + b1 A + b2 A^2
std::pair<mpq_class, mpq_class> oracle_b(const RealizationCoeffs& rc) {
  Ser psi{1, rc.psi1, rc.psi2, 0}, gamma{rc.gamma0, rc.gamma1, 0, 0};
  Ser ip = inv(psi);
  Ser I = integ(ip), J = integ(mul(gamma, ip));
  Ser mI(kTerms);
  for (int i = 0; i < kTerms; ++i) mI[i] = -I[i];
  Ser e = exps(mI);
  Ser num(kTerms, 0);
  for (int i = 1; i < kTerms; ++i) num[i - 1] = -e[i];  // (1 - e)/A
  Ser r = mul(num, exps(J));
  return {r[1], r[2]};
}

RealizationCoeffs random_rc(std::mt19937_64& rng) {
  return {testing::small_rational(rng, 9, 7), testing::small_rational(rng, 9, 7), testing::small_rational(rng, 9, 7),
          testing::small_rational(rng, 9, 7)};
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  double hs = (b - a) / n, s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * hs) * (i % 2 ? 4 : 2);
  return s * hs / 3;
}

constexpr double kSecondsPerHubble = kMpcKm / 71.0;

}  // namespace

TEST_CASE("delay coefficients agree with an independent series oracle (property)") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 50; ++i) {
    auto rc = random_rc(rng);
    auto [b1, b2] = oracle_b(rc);
    auto d = delay_coeffs(rc);
    CHECK(d.b1 == b1);
    CHECK(d.b2 == b2);
    auto s = dispersion_series(rc);
    CHECK(s.b1 == b1);
    CHECK(s.b2 == b2);
    CHECK(d.consistent());
  }
}

TEST_CASE("quoted model values") {
  auto j = delay_coeffs(RealizationCoeffs::jordanian(-1));
  CHECK(j.b1 == 0);
  CHECK(j.b2 == 0);
  auto ms = named_delay_model("magueijo-smolin");
  CHECK(ms.b1 == 1);
  CHECK(ms.b2 == 1);
  // s = 1: Delta t = -(l/c)(E/M)(1 - E/2M) = -(l/c)|p|/M
  auto a1 = named_delay_model("abelian", 1);
  CHECK(2 * a1.b1 == 1);
  CHECK(3 * a1.b2 == mpq_class(1, 2));
  CHECK(a1.B1 == 1);
  CHECK(a1.B2 == 0);
  // Hermitian s = 0: time advance +(l/c)|p|/M
  auto a0 = named_delay_model("abelian-hermitian");
  CHECK(a0.B1 == -1);
  CHECK(a0.B2 == 0);
  auto jh = named_delay_model("jordanian-hermitian");
  CHECK(jh.B1 == -4);
  CHECK(jh.B2 == -6);
  CHECK_THROWS_AS(named_delay_model("nope"), std::invalid_argument);
}

TEST_CASE("range statements") {
  auto jb2 = [](const mpq_class& r) { return named_delay_model("jordanian", r).b2; };
  // b2 = (1 + 3r + 2r^2)/6 is smallest at r = -3/4
  CHECK(jb2(mpq_class(-3, 4)) == mpq_class(-1, 48));
  for (int k = -40; k <= 40; ++k) CHECK(jb2(mpq_class(k, 8)) >= mpq_class(-1, 48));
  CHECK(jb2(mpq_class(-3, 4)) >= mpq_class(-1, 4));
  auto ab2 = [](const mpq_class& s) { return named_delay_model("abelian", s).b2; };
  CHECK(ab2(0) == mpq_class(1, 6));
  CHECK(ab2(1) == mpq_class(1, 6));
  for (int k = 0; k <= 16; ++k) CHECK(ab2(mpq_class(k, 16)) <= mpq_class(1, 6));
  // Abelian B2 = s(s-1)/2
  for (int k = -8; k <= 8; ++k) {
    mpq_class s(k, 4);
    CHECK(named_delay_model("abelian", s).B2 == s * (s - 1) / 2);
  }
}

TEST_CASE("flat delay forms agree to second order") {
  auto d = named_delay_model("abelian", mpq_class(1, 3));
  double M = 1e4, E = 1, l = 1000, x = E / M;
  // p = E(1 - b1 E/M + b2 E^2/M^2): the two forms then differ at third order only
  double p = E * (1 - d.b1.get_d() * x + d.b2.get_d() * x * x);
  double te = time_delay(E, l, M, d, DelayForm::energy), tp = time_delay(p, l, M, d, DelayForm::momentum);
  // b1 < 0 here: a time advance
  CHECK(te > 0);
  CHECK(std::abs(te - tp) <= 10 * x * x * std::abs(te));
  CHECK(std::abs(te - time_delay(E, l, M, d, DelayForm::momentum)) > 0.1 * x * std::abs(te));
  CHECK(time_delay(10, 1, 1e19, make_delay_model(0, 0)) == 0);
  CHECK(relative_delay(10, 10, 1, 1e19, d) == 0);
  CHECK_THROWS_AS(time_delay(2e19, 1, 1e19, d), DomainError);
  CHECK_THROWS_AS(time_delay(1, 1, -1, d), DomainError);
  // first-order dominated
  auto a1 = named_delay_model("abelian", 1);
  double t = time_delay(10, 1000, kPlanckMassGeV, a1);
  double lead = -1000 * kMpcKm / kSpeedOfLightKmS * 10 / kPlanckMassGeV;
  CHECK(t == doctest::Approx(lead).epsilon(1e-15));
}

TEST_CASE("cosmological integrals against closed forms and Simpson") {
  double z = 2.5;
  Cosmology empty{71, 0, 1};
  for (int k = 0; k <= 2; ++k)
    CHECK(cosmo_integral(k, z, empty) ==
          doctest::Approx((std::pow(1 + z, k + 1) - 1) / (k + 1) * kSecondsPerHubble).epsilon(1e-12));
  Cosmology matter{71, 1, 0};
  CHECK(cosmo_integral(1, z, matter) == doctest::Approx(2 * (std::sqrt(1 + z) - 1) * kSecondsPerHubble).epsilon(1e-12));
  Cosmology c;
  for (int k = 1; k <= 2; ++k) {
    auto f = [&](double zp) {
      double a = 1 + zp;
      return std::pow(a, k) / std::sqrt(c.omega_l + c.omega_m * a * a * a);
    };
    CHECK(cosmo_integral(k, 1.3, c) == doctest::Approx(simpson(f, 0, 1.3, 2000) * kSecondsPerHubble).epsilon(1e-10));
  }
  CHECK(cosmo_integral(1, 0, c) == 0);
  CHECK_THROWS_AS(cosmo_integral(1, -1, c), DomainError);
  CHECK(c.flat());
}

TEST_CASE("small-redshift expansion") {
  Cosmology c;
  double z = 1e-4;
  double I = cosmo_integral(1, z, c) / kSecondsPerHubble;
  // (1+z)/h(z) = 1 + (1 - 3 Om/2) z + O(z^2)
  double second = z + (1 - 1.5 * c.omega_m) * z * z / 2;
  CHECK(std::abs(I / second - 1) < 1e-8);
  CHECK(std::abs(I / z - 1) == doctest::Approx((1 - 1.5 * c.omega_m) * z / 2).epsilon(1e-3));
}

TEST_CASE("cosmological delay is linear in the model") {
  auto d = named_delay_model("abelian", 1);
  double t1 = cosmological_delay(1, 10, kPlanckMassGeV, d);
  DelayModel d2 = make_delay_model(2 * d.b1, 2 * d.b2);
  CHECK(cosmological_delay(1, 10, kPlanckMassGeV, d2) == doctest::Approx(2 * t1));
  CHECK(t1 < 0);
  CHECK(cosmological_delay(1, 1, 11, kPlanckMassGeV, d) ==
        doctest::Approx(-2 * 0.5 * (-10 / kPlanckMassGeV) * cosmo_integral(1, 1) +
                        3 * (1.0 / 6) * ((1 - 121) / (kPlanckMassGeV * kPlanckMassGeV)) * cosmo_integral(2, 1)));
}

TEST_CASE("quantum gravity scale bounds") {
  BoundInput mccf{kMccfLinearGeV, BoundKind::linear}, wav{kWaveletLinearGeV, BoundKind::linear};
  auto jh = named_delay_model("jordanian-hermitian");
  CHECK(bound_MQ(mccf, jh).M_Q_GeV == doctest::Approx(2.88e18));
  CHECK(bound_MQ(wav, jh).M_Q_GeV == doctest::Approx(2.08e18));
  CHECK(bound_MQ(mccf, named_delay_model("abelian-hermitian")).M_Q_GeV == doctest::Approx(7.2e17));
  // scaling law (property)
  std::mt19937_64 rng(67);
  for (int i = 0; i < 20; ++i) {
    auto a = named_delay_model("jordanian", testing::small_rational(rng));
    auto b = named_delay_model("abelian", testing::small_rational(rng));
    if (a.B1 == 0 || b.B1 == 0) continue;
    CHECK(bound_MQ(mccf, a).M_Q_GeV / bound_MQ(mccf, b).M_Q_GeV == doctest::Approx(mpq_class(abs(a.B1 / b.B1)).get_d()));
  }
  // b1 = 0 falls through to the quadratic bound
  auto half = named_delay_model("abelian", mpq_class(1, 2));
  auto q = bound_MQ(mccf, half, mccf_quadratic_baseline());
  CHECK(q.degenerate);
  CHECK(q.kind == BoundKind::quadratic);
  CHECK(q.M_Q_GeV == doctest::Approx(1.31e9));
  CHECK(bound_MQ(mccf, make_delay_model(0, 0), 1e9).none);
  CHECK_THROWS(bound_MQ({0, BoundKind::linear}, jh));
}

TEST_CASE("parameter bounds from the |B1| cap") {
  CHECK(jordanian_r_lower_bound() == doctest::Approx(-1.208).epsilon(1e-3));
  CHECK(abelian_s_upper_bound() == doctest::Approx(0.604).epsilon(1e-3));
  // at the bound |B1| equals the cap
  double r = jordanian_r_lower_bound(), s = abelian_s_upper_bound();
  CHECK(std::abs(named_delay_model("jordanian", mpq_class(r)).B1.get_d()) == doctest::Approx(kBetaCal));
  CHECK(std::abs(named_delay_model("abelian", mpq_class(s)).B1.get_d()) == doctest::Approx(kBetaCal));
}

TEST_CASE("covariant dispersion") {
  CHECK(covariant_dispersion(1, 5, 3, 1e30) == doctest::Approx(16));
  // m^2 = (E^2 - p^2)/((1 - E/M)^2 - p^2/M^2)
  CHECK(covariant_dispersion(1, 2, 1, 10) == doctest::Approx(3 / (0.64 - 0.01)));
  CHECK_THROWS_AS(covariant_dispersion(1, 1, 1, 0), DomainError);
}

TEST_CASE("Hermitian coefficients") {
  auto rc = RealizationCoeffs::hermitian(mpq_class(1, 3), mpq_class(2, 5));
  CHECK(rc.is_hermitian());
  CHECK_FALSE(RealizationCoeffs::jordanian(1).is_hermitian());
  CHECK(RealizationCoeffs::abelian(0).is_hermitian());
}
