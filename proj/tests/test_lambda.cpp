#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lcap/channel.hpp"
#include "lcap/errors.hpp"
#include "lcap/lambda_model.hpp"
#include "test_support.hpp"

using namespace lcap;
using namespace lcap::lambda;
using lcap::testing::random_density;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = kInfiniteTime;
const cplx kI{0.0, 1.0};

// exp(-i H) for the driven Λ Hamiltonian with Ωτ = θ, via eigendecomposition.
ComplexMatrix propagator_oracle(double theta, double chi, double phi) {
  ComplexMatrix h(3, 3);
  h(2, 0) = 0.5 * theta * std::cos(chi);
  h(2, 1) = 0.5 * theta * std::sin(chi) * std::exp(kI * phi);
  h(0, 2) = std::conj(h(2, 0));
  h(1, 2) = std::conj(h(2, 1));
  const Spectrum s = hermitian_eigensystem(h);
  ComplexMatrix phase(3, 3);
  for (std::size_t k = 0; k < 3; ++k) phase(k, k) = std::exp(-kI * s.eigenvalues[k]);
  const ComplexMatrix full = s.eigenvectors * phase * s.eigenvectors.adjoint();
  ComplexMatrix u(3, 2);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 2; ++c) u(r, c) = full(r, c);
  return u;
}

double isometry_defect(const ComplexMatrix& m) {
  return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.cols()));
}

LambdaParams params(double theta, double chi, double phi, double gamma_t,
                    double gamma13 = 1.0, double gamma23 = 1.0) {
  LambdaParams p;
  p.theta = theta;
  p.chi = chi;
  p.phi = phi;
  p.gamma_t = gamma_t;
  p.gamma13 = gamma13;
  p.gamma23 = gamma23;
  return p;
}

}  // namespace

TEST_CASE("pulse propagator without a pulse is the identity embedding") {
  const ComplexMatrix u = pulse_propagator(0.0, 0.3, 1.1).matrix;
  const ComplexMatrix expected{{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}};
  CHECK(max_abs_diff(u, expected) < 1e-15);
}

TEST_CASE("pulse propagator pi pulses") {
  // chi = 0: only 1<->3 is driven.
  const ComplexMatrix u0 = pulse_propagator(kPi, 0.0, 0.0).matrix;
  CHECK(max_abs_diff(u0, ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}, {-kI, 0.0}}) < 1e-15);
  // chi = pi/2: only 2<->3 is driven.
  const ComplexMatrix u1 = pulse_propagator(kPi, kPi / 2, 0.0).matrix;
  CHECK(max_abs_diff(u1, ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}, {0.0, -kI}}) < 1e-15);
  // chi = pi/4: bright state fully excited, dark state kept.
  const ComplexMatrix u2 = pulse_propagator(kPi, kPi / 4, 0.0).matrix;
  CHECK(std::abs(u2(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(u2(1, 0) + 0.5) < 1e-15);
  CHECK(std::abs(u2(2, 0) + kI / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("pulse propagator matches the matrix exponential") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> theta(-7.0, 7.0), chi(0.0, kPi / 2), phi(0.0, 2 * kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = theta(rng), c = chi(rng), p = phi(rng);
    const ComplexMatrix u = pulse_propagator(t, c, p).matrix;
    CHECK(max_abs_diff(u, propagator_oracle(t, c, p)) < 1e-12);
    CHECK(isometry_defect(u) < 1e-14);
  }
  CHECK(max_abs_diff(pulse_propagator(kPi, kPi / 4, 0.0).matrix,
                     propagator_oracle(kPi, kPi / 4, 0.0)) < 1e-12);
}

TEST_CASE("pulse propagator rejects chi outside its range") {
  for (double bad : {-0.1, 2.0, std::nan("")}) {
    try {
      pulse_propagator(1.0, bad, 0.0);
      FAIL("expected InvalidAngle");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidAngle);
    }
  }
}

TEST_CASE("decay isometry limits") {
  const Isometry v0 = decay_isometry(0.5, 0.5, 0.0);
  CHECK(v0.matrix.rows() == 9);
  CHECK(v0.matrix.cols() == 3);
  CHECK(v0.row_labels[1] == "1,psi13");
  ComplexMatrix embed(9, 3);
  embed(0, 0) = embed(3, 1) = embed(6, 2) = 1.0;
  CHECK(max_abs_diff(v0.matrix, embed) < 1e-15);

  const Isometry vinf = decay_isometry(0.5, 0.5, kInf);
  CHECK(vinf.matrix(6, 2) == cplx(0.0));
  CHECK(std::abs(vinf.matrix(1, 2) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(vinf.matrix(5, 2) - 1 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("decay isometry is an isometry") {
  for (double a1 : {0.0, 0.2, 0.5, 1.0})
    for (double gt : {0.0, 0.1, 1.0, 5.0, 40.0, 800.0, kInf}) {
      const ComplexMatrix v = decay_isometry(a1, 1.0 - a1, gt).matrix;
      CHECK(isometry_defect(v) < 1e-12);
      const double e = survival(gt);
      CHECK(std::norm(v(6, 2)) + (1 - e) * (a1 + (1 - a1)) == doctest::Approx(1.0));
    }
  try {
    decay_isometry(0.6, 0.6, 1.0);
    FAIL("expected InvalidAlphas");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidAlphas);
  }
  CHECK_THROWS_AS(decay_isometry(0.5, 0.5, -1.0), Error);
}

TEST_CASE("composed isometry W = V U") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const LambdaParams p = params(7 * u(rng), kPi / 2 * u(rng), 6 * u(rng), 5 * u(rng),
                                  u(rng), u(rng) + 0.01);
    const ComplexMatrix w = decay_isometry(p.alpha1(), p.alpha2(), p.gamma_t).matrix *
                            pulse_propagator(p.theta, p.chi, p.phi).matrix;
    CHECK(isometry_defect(w) < 1e-12);
  }
}

TEST_CASE("channel_map without excitation") {
  const ChannelMap c = channel_map(params(0.0, 0.7, 0.3, 2.0));
  const std::vector<double> vac{1.0, 0.0, 0.0};
  CHECK(max_abs_diff(c.s(0, 0), ComplexMatrix::diagonal(vac)) < 1e-15);
  CHECK(max_abs_diff(c.s(1, 1), ComplexMatrix::diagonal(vac)) < 1e-15);
  CHECK(c.s(0, 1).max_abs() < 1e-15);
  CHECK(c.s(1, 0).max_abs() < 1e-15);
}

TEST_CASE("channel_map at the symmetric optimum") {
  // chi = 0 drives level 1 only, so s_11 carries the emitted photon.
  const ChannelMap c = channel_map(params(kPi, 0.0, 0.0, kInf));
  const auto ev = hermitian_eigenvalues(c.s(0, 0));
  CHECK(ev[0] == doctest::Approx(0.5));
  CHECK(ev[1] == doctest::Approx(0.5));
  CHECK(std::abs(ev[2]) < 1e-15);
}

TEST_CASE("closed form operators") {
  const ChannelMap c = closed_form_channel(kPi, kInf, 0.5, 0.5);
  const std::vector<double> d11{0.0, 0.5, 0.5}, d22{1.0, 0.0, 0.0};
  CHECK(max_abs_diff(c.s(0, 0), ComplexMatrix::diagonal(d11)) < 1e-15);
  CHECK(max_abs_diff(c.s(1, 1), ComplexMatrix::diagonal(d22)) < 1e-15);
  CHECK(std::abs(c.s(0, 1)(2, 0)) == doctest::Approx(1 / std::sqrt(2.0)));

  const ChannelMap off = closed_form_channel(0.0, 3.0, 0.5, 0.5);
  CHECK(max_abs_diff(off.s(0, 0), ComplexMatrix::diagonal(d22)) < 1e-15);

  for (int k = 0; k < 10; ++k) {
    const ChannelMap g = closed_form_channel(0.7 * k, 0.45 * k, 0.3, 0.7);
    CHECK(std::abs(g.s(0, 0).trace() - 1.0) < 1e-14);
    CHECK(std::abs(g.s(1, 1).trace() - 1.0) < 1e-14);
    CHECK(std::abs(g.s(0, 1).trace()) < 1e-14);
    CHECK(validate_channel(g).pass());
  }
}

TEST_CASE("closed form coherence element carries sin(theta)") {
  // Hermiticity pairing of s_11 holds for every theta only with the sin θ factor.
  for (double theta : {0.3, 1.9, 4.4}) {
    const ChannelMap c = closed_form_channel(theta, 1.2, 0.4, 0.6);
    CHECK(hermiticity_defect(c.s(0, 0)) < 1e-15);
    const ChannelMap direct = channel_map(params(theta, 0.0, 0.0, 1.2, 0.4, 0.6));
    CHECK(std::abs(std::abs(c.s(0, 0)(1, 0)) - std::abs(direct.s(0, 0)(1, 0))) < 1e-14);
  }
}

TEST_CASE("closed form and construction agree on spectra") {
  std::mt19937_64 rng(23);
  const auto mixed = DensityMatrix::maximally_mixed(2);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      const double theta = 2 * kPi * i / 6.0;
      const double gt = j == 6 ? kInf : 1.0 * j;
      const ChannelMap closed = closed_form_channel(theta, gt, 0.5, 0.5);
      // chi = pi/2 mirrors the closed form under 1<->2; equal for I/2.
      const ChannelMap mirrored = channel_map(params(theta, kPi / 2, 0.0, gt));
      CHECK(std::abs(coherent_information(mirrored, mixed) -
                     coherent_information(closed, mixed)) < 1e-10);
      // chi = 0 is the closed form up to output phases, for any input.
      const ChannelMap same = channel_map(params(theta, 0.0, 0.0, gt));
      const DensityMatrix rho = random_density(rng, 2);
      CHECK(lcap::testing::max_abs_diff(apply_channel(same, rho).eigenvalues(),
                                        apply_channel(closed, rho).eigenvalues()) < 1e-10);
      CHECK(lcap::testing::max_abs_diff(joint_output(same, rho).eigenvalues(),
                                        joint_output(closed, rho).eigenvalues()) < 1e-10);
    }
}

TEST_CASE("coherent information is independent of chi and phi for I/2") {
  const auto mixed = DensityMatrix::maximally_mixed(2);
  for (double theta : {kPi, 2.0})
    for (double gt : {kInf, 1.3}) {
      const double reference = coherent_information(channel_map(params(theta, 0, 0, gt)), mixed);
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
          const double chi = kPi / 2 * i / 8.0;
          const double phi = 2 * kPi * j / 8.0;
          CHECK(std::abs(coherent_information(channel_map(params(theta, chi, phi, gt)), mixed) -
                         reference) < 1e-9);
        }
    }
}

TEST_CASE("atom population of level 3 decays exponentially") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const LambdaParams p = params(6 * u(rng), kPi / 2 * u(rng), 6 * u(rng),
                                  trial == 0 ? kInf : 4 * u(rng), u(rng) + 0.1, u(rng));
    const cplx c1 = std::polar(std::sqrt(0.3), 0.4);
    const cplx c2 = std::polar(std::sqrt(0.7), -1.0);
    const ComplexMatrix u3 = pulse_propagator(p.theta, p.chi, p.phi).matrix;
    const double excited = std::norm(u3(2, 0) * c1 + u3(2, 1) * c2);
    const ComplexMatrix rho = atom_state(p, c1, c2);
    CHECK(std::abs(rho(2, 2).real() - excited * survival(p.gamma_t)) < 1e-12);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  }
}

TEST_CASE("two-level reduction") {
  const ChannelMap c = channel_map(params(kPi, kPi / 2, 0.0, kInf, 1.0, 0.0));
  for (const auto& op : c.operators())
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(op(2, k)) < 1e-15);
      CHECK(std::abs(op(k, 2)) < 1e-15);
    }
  CHECK(coherent_information(c, DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Driving the transition the atom decays back on keeps the information in
  // the atom.
  const ChannelMap back = channel_map(params(kPi, 0.0, 0.0, kInf, 1.0, 0.0));
  CHECK(std::abs(coherent_information(back, DensityMatrix::maximally_mixed(2))) < 1e-12);
}

TEST_CASE("random parameters give valid channels") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const LambdaParams p = params(8 * u(rng) - 1, kPi / 2 * u(rng), 7 * u(rng),
                                  trial % 5 == 0 ? kInf : 6 * u(rng), u(rng), u(rng) + 1e-3);
    CHECK(validate_channel(channel_map(p)).pass());
  }
}

TEST_CASE("parameter validation") {
  const auto kind_of = [](LambdaParams p) {
    try {
      validate(p);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::NoConvergence;
  };
  CHECK(kind_of(params(1, 2 * kPi, 0, 1)) == ErrorKind::InvalidAngle);
  CHECK(kind_of(params(1, 0, 0, -1)) == ErrorKind::InvalidParams);
  CHECK(kind_of(params(1, 0, 0, 1, 0.0, 0.0)) == ErrorKind::InvalidParams);
  CHECK(kind_of(params(1, 0, 0, 1, -1.0, 2.0)) == ErrorKind::InvalidParams);
  LambdaParams detuned = params(1, 0, 0, 1);
  detuned.delta_raman = 0.1;
  CHECK(kind_of(detuned) == ErrorKind::InvalidParams);
  const LambdaParams a = LambdaParams::with_asymmetry(0.25);
  CHECK(a.alpha1() + a.alpha2() == 1.0);
  CHECK(a.alpha2() == doctest::Approx(0.2));
}
