#include "lcap/lambda_model.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "lcap/errors.hpp"

namespace lcap::lambda {

namespace {

constexpr double kAlphaTol = 1e-12;
const cplx kI{0.0, 1.0};

const std::vector<std::string> kAtomLabels{"1", "2", "3"};
const std::vector<std::string> kGroundLabels{"1", "2"};
const std::vector<std::string> kFieldLabels{"0", "psi13", "psi23"};

std::vector<std::string> joint_labels() {
  std::vector<std::string> out;
  for (const auto& k : kAtomLabels)
    for (const auto& f : kFieldLabels) out.push_back(k + "," + f);
  return out;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw Error(ErrorKind::InvalidParams, fmt::format("{} must be finite", name));
}

void check_alphas(double alpha1, double alpha2) {
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0) ||
      std::abs(alpha1 + alpha2 - 1.0) > kAlphaTol)
    throw Error(ErrorKind::InvalidAlphas,
                fmt::format("alpha1={} alpha2={} must be non-negative and sum to 1",
                            alpha1, alpha2));
}

void check_gamma_t(double gamma_t) {
  if (std::isnan(gamma_t) || gamma_t < 0.0)
    throw Error(ErrorKind::InvalidParams,
                fmt::format("gamma_t={} must be >= 0 or inf", gamma_t));
}

}  // namespace

LambdaParams LambdaParams::with_asymmetry(double ratio) {
  LambdaParams p;
  p.gamma13 = 1.0;
  p.gamma23 = ratio;
  return p;
}

void validate(const LambdaParams& p) {
  require_finite(p.gamma13, "gamma13");
  require_finite(p.gamma23, "gamma23");
  if (p.gamma13 < 0.0 || p.gamma23 < 0.0 || p.gamma13 + p.gamma23 <= 0.0)
    throw Error(ErrorKind::InvalidParams,
                fmt::format("gamma13={} gamma23={}: rates must be >= 0 with a "
                            "positive sum",
                            p.gamma13, p.gamma23));
  require_finite(p.theta, "theta");
  require_finite(p.phi, "phi");
  if (!std::isfinite(p.chi) || p.chi < 0.0 || p.chi > std::numbers::pi / 2)
    throw Error(ErrorKind::InvalidAngle,
                fmt::format("chi={} outside [0, pi/2]", p.chi));
  check_gamma_t(p.gamma_t);
  if (p.delta_raman != 0.0)
    throw Error(ErrorKind::InvalidParams, "delta_raman must be 0");
}

double survival(double gamma_t) {
  return std::isinf(gamma_t) ? 0.0 : std::exp(-gamma_t);
}

Isometry pulse_propagator(double theta, double chi, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw Error(ErrorKind::InvalidAngle, "theta and phi must be finite");
  if (!std::isfinite(chi) || chi < 0.0 || chi > std::numbers::pi / 2)
    throw Error(ErrorKind::InvalidAngle,
                fmt::format("chi={} outside [0, pi/2]", chi));

  // The pulse rotates the bright state b = cos χ|1> + sin χ e^{-iφ}|2> into
  // |3>; the orthogonal dark state is untouched.
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const cplx b1 = std::cos(chi);
  const cplx b2 = std::sin(chi) * std::exp(-kI * phi);
  const cplx overlap[2] = {std::conj(b1), std::conj(b2)};  // <b|g>
  const cplx bright[2] = {b1, b2};

  ComplexMatrix u(3, 2);
  for (std::size_t g = 0; g < 2; ++g) {
    for (std::size_t k = 0; k < 2; ++k)
      u(k, g) = (k == g ? 1.0 : 0.0) + (c - 1.0) * bright[k] * overlap[g];
    u(2, g) = -kI * s * overlap[g];
  }
  return {std::move(u), kAtomLabels, kGroundLabels};
}

Isometry decay_isometry(double alpha1, double alpha2, double gamma_t) {
  check_alphas(alpha1, alpha2);
  check_gamma_t(gamma_t);
  const double e = survival(gamma_t);
  const double emitted = std::sqrt(1.0 - e);

  ComplexMatrix v(9, 3);
  v(0 * 3 + 0, 0) = 1.0;
  v(1 * 3 + 0, 1) = 1.0;
  v(2 * 3 + 0, 2) = std::sqrt(e);
  v(0 * 3 + 1, 2) = emitted * std::sqrt(alpha1);
  v(1 * 3 + 2, 2) = emitted * std::sqrt(alpha2);
  return {std::move(v), joint_labels(), kAtomLabels};
}

ChannelMap channel_map(const LambdaParams& params) {
  validate(params);
  const ComplexMatrix w =
      decay_isometry(params.alpha1(), params.alpha2(), params.gamma_t).matrix *
      pulse_propagator(params.theta, params.chi, params.phi).matrix;

  std::vector<ComplexMatrix> s;
  s.reserve(4);
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t n = 0; n < 2; ++n) {
      ComplexMatrix op(3, 3);
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t a = 0; a < 3; ++a)
          for (std::size_t b = 0; b < 3; ++b)
            op(a, b) += w(3 * k + a, m) * std::conj(w(3 * k + b, n));
      s.push_back(std::move(op));
    }
  return ChannelMap(2, 3, std::move(s));
}

ChannelMap closed_form_channel(double theta, double gamma_t, double alpha1,
                               double alpha2) {
  check_alphas(alpha1, alpha2);
  check_gamma_t(gamma_t);
  require_finite(theta, "theta");
  const double e = survival(gamma_t);
  const double emitted = std::sqrt(1.0 - e);
  const double c2 = std::pow(std::cos(theta / 2), 2);
  const double s2 = std::pow(std::sin(theta / 2), 2);
  const cplx coherence = 0.5 * kI * std::sqrt(alpha1) * emitted * std::sin(theta);
  const cplx cross = kI * std::sqrt(alpha2) * emitted * std::sin(theta / 2);

  ComplexMatrix s11{{c2 + e * s2, -coherence, 0.0},
                    {coherence, alpha1 * (1.0 - e) * s2, 0.0},
                    {0.0, 0.0, alpha2 * (1.0 - e) * s2}};
  ComplexMatrix s12{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {cross, 0.0, 0.0}};
  ComplexMatrix s21{{0.0, 0.0, -cross}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
  ComplexMatrix s22{{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
  return ChannelMap(2, 3, {s11, s12, s21, s22});
}

ComplexMatrix atom_state(const LambdaParams& params, cplx c1, cplx c2) {
  validate(params);
  const ComplexMatrix w =
      decay_isometry(params.alpha1(), params.alpha2(), params.gamma_t).matrix *
      pulse_propagator(params.theta, params.chi, params.phi).matrix;
  std::vector<cplx> psi(9);
  for (std::size_t r = 0; r < 9; ++r) psi[r] = w(r, 0) * c1 + w(r, 1) * c2;
  ComplexMatrix rho(3, 3);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l)
      for (std::size_t f = 0; f < 3; ++f)
        rho(k, l) += psi[3 * k + f] * std::conj(psi[3 * l + f]);
  return rho;
}

}  // namespace lcap::lambda
