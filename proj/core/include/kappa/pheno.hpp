#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace kappa {

// psi(A) = 1 + psi1 A + psi2 A^2 + ..., gamma(A) = gamma0 + gamma1 A + ..., A = -E/M_Q.
struct RealizationCoeffs {
  mpq_class psi1 = 0, psi2 = 0, gamma0 = 0, gamma1 = 0;

  static RealizationCoeffs abelian(const mpq_class& s);
  static RealizationCoeffs jordanian(const mpq_class& r);
  // psi' + 3 gamma = 0: psi1 = -3 gamma0, psi2 = -3/2 gamma1
  static RealizationCoeffs hermitian(const mpq_class& gamma0, const mpq_class& gamma1);
  bool is_hermitian() const;
};

// |p| = E (1 - b1 E/M + b2 E^2/M^2); Delta t = -(l/c)(p/M)(B1 + B2 p/M).
struct DelayModel {
  mpq_class b1, b2, B1, B2, c1, c2;
  std::string family = "custom";
  std::string param;

  bool consistent() const;  // c1 = b1, c2 = 2b1^2 - b2, B1 = 2b1, B2 = 2b1^2 - 3b2
  // Speed of light c' = c(1 + xi E/M + zeta E^2/M^2)
  mpq_class xi() const { return 2 * b1; }
  mpq_class zeta() const { return 4 * b1 * b1 - 3 * b2; }
};

DelayModel make_delay_model(const mpq_class& b1, const mpq_class& b2, std::string family = "custom",
                            std::string param = "");
// Closed formulas in the realization coefficients.
DelayModel delay_coeffs(const RealizationCoeffs& rc, std::string family = "custom", std::string param = "");
// Expands |p| = E (1 - exp(-int dA/psi))/A exp(int gamma dA/psi) as a series in A and reads off b1, b2.
DelayModel dispersion_series(const RealizationCoeffs& rc, int order = 2);

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Unit conversions (exact by definition of the units involved).
inline constexpr double kSpeedOfLightKmS = 299792.458;
inline constexpr double kMpcKm = 3.0856775814913673e19;
inline constexpr double kPlanckMassGeV = 1.22e19;

enum class DelayForm { energy, momentum };
// Flat-space delay in seconds; l in Mpc, energies in GeV. Negative means later arrival.
// energy form: -(l/c)(E/M)(2b1 - 3b2 E/M); momentum form: -(l/c)(p/M)(B1 + B2 p/M).
double time_delay(double E, double l_mpc, double M_Q, const DelayModel& dm, DelayForm form = DelayForm::energy);
// Time lag between photons E_low < E_high: -(l/c)(2b1 dE/M - 3b2 dE2/M^2), dE = E_low - E_high.
double relative_delay(double E_low, double E_high, double l_mpc, double M_Q, const DelayModel& dm);

struct Cosmology {
  double H0 = 71.0;  // km/s/Mpc
  double omega_m = 0.27;
  double omega_l = 0.73;
  bool flat() const;  // omega_m + omega_l within 1e-6 of 1
};
// int_0^z (1+z')^k / h(z') dz' in seconds, h = H0 sqrt(omega_l + omega_m (1+z)^3).
double cosmo_integral(int k, double z, const Cosmology& cos = {}, double rel_tol = 1e-10);
// -2b1 (dE/M) I_1 + 3b2 (dE^2/M^2) I_2 in seconds, dE = E_low - E_high, dE2 = E_low^2 - E_high^2.
double cosmological_delay(double z, double E_low, double E_high, double M_Q, const DelayModel& dm,
                          const Cosmology& cos = {});
// Single observed energy difference dE against a reference photon of negligible energy.
double cosmological_delay(double z, double dE, double M_Q, const DelayModel& dm, const Cosmology& cos = {});

enum class BoundKind { linear, quadratic };
struct BoundInput {
  double baseline_GeV = 0;  // bound for |B1| = 1 (linear) or |B2| = 1 (quadratic)
  BoundKind kind = BoundKind::linear;
};
struct BoundResult {
  double M_Q_GeV = 0;
  BoundKind kind = BoundKind::linear;
  bool degenerate = false;  // linear requested with B1 = 0 and fell through to quadratic
  bool none = false;        // no bound (B1 = B2 = 0)
};
// Linear: M_Q >= |B1| baseline; quadratic: M_Q >= sqrt(|B2|) baseline.
BoundResult bound_MQ(const BoundInput& in, const DelayModel& dm, double quadratic_baseline_GeV = 0);

// Quoted linear baselines at |B1| = 1 (Abelian Hermitian model).
inline constexpr double kMccfLinearGeV = 7.2e17;
inline constexpr double kWaveletLinearGeV = 5.2e17;
// Quadratic baseline at |B2| = 1, rescaled from 1.31e9 GeV at |B2| = 1/8 (Abelian s = 1/2).
double mccf_quadratic_baseline();

// "abelian" (param s), "jordanian" (param r), "abelian-hermitian" (s = 0),
// "jordanian-hermitian" (r = 3), "magueijo-smolin". Throws std::invalid_argument otherwise.
DelayModel named_delay_model(const std::string& name, const mpq_class& param = 0);

// Cap on |B1| that reproduces the quoted parameter bounds.
inline constexpr double kBetaCal = 0.2085;
// Jordanian r > -1 - beta, Abelian s < (1 + beta)/2, from |B1| <= beta.
double jordanian_r_lower_bound(double beta = kBetaCal);
double abelian_s_upper_bound(double beta = kBetaCal);

// m^2 = (E^2 - p^2)/((phi - E/M)^2 - p^2/M^2)
double covariant_dispersion(double phi, double E, double p, double M_Q);

}  // namespace kappa
