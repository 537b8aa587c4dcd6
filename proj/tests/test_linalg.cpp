#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "lcap/errors.hpp"
#include "lcap/linalg.hpp"
#include "test_support.hpp"

using namespace lcap;
using lcap::testing::random_hermitian;
using lcap::testing::random_matrix;

namespace {

double reconstruction_residual(const ComplexMatrix& m, const Spectrum& s) {
  const ComplexMatrix lambda = ComplexMatrix::diagonal(s.eigenvalues);
  return max_abs_diff(s.eigenvectors * lambda * s.eigenvectors.adjoint(), m);
}

double unitarity_defect(const ComplexMatrix& v) {
  return max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(v.cols()));
}

}  // namespace

TEST_CASE("identity has unit spectrum") {
  const Spectrum s = hermitian_eigensystem(ComplexMatrix::identity(3));
  for (double v : s.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(unitarity_defect(s.eigenvectors) < 1e-14);
}

TEST_CASE("pauli x eigenpairs") {
  const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const Spectrum s = hermitian_eigensystem(x);
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));
  // eigenvector for +1 is (1,1)/sqrt2 up to phase
  const cplx ratio = s.eigenvectors(1, 0) / s.eigenvectors(0, 0);
  CHECK(std::abs(ratio - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(s.eigenvectors(0, 0)) - 1 / std::sqrt(2.0)) < 1e-12);
  const cplx ratio_minus = s.eigenvectors(1, 1) / s.eigenvectors(0, 1);
  CHECK(std::abs(ratio_minus + 1.0) < 1e-12);
}

TEST_CASE("random hermitian matrices reconstruct") {
  std::mt19937_64 rng(20240611);
  for (std::size_t n : {1u, 2u, 3u, 6u, 9u, 18u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix h = random_hermitian(rng, n);
      const Spectrum s = hermitian_eigensystem(h);
      CAPTURE(n);
      CHECK(reconstruction_residual(h, s) < 1e-10);
      CHECK(unitarity_defect(s.eigenvectors) < 1e-10);
      CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
      // M v_k = λ_k v_k, column by column, relative to the matrix norm.
      const ComplexMatrix mv = h * s.eigenvectors;
      for (std::size_t k = 0; k < n; ++k) {
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          residual = std::max(residual,
                              std::abs(mv(i, k) - s.eigenvalues[k] * s.eigenvectors(i, k)));
        CHECK(residual / h.frobenius_norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("eigenvalues of hermitian matrices are real") {
  // Trace and Frobenius norm are basis invariants: Σλ = Tr H, Σλ² = ‖H‖_F².
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, 5);
    const auto ev = hermitian_eigenvalues(h);
    const double sum = std::accumulate(ev.begin(), ev.end(), 0.0);
    double sq = 0.0;
    for (double v : ev) sq += v * v;
    CHECK(std::abs(h.trace().imag()) < 1e-12);
    CHECK(std::abs(sum - h.trace().real()) < 1e-10);
    CHECK(std::abs(sq - std::pow(h.frobenius_norm(), 2)) < 1e-9);
  }
}

TEST_CASE("degenerate and diagonal inputs") {
  const std::vector<double> d{0.1, 0.7, 0.1, 0.1};
  const Spectrum s = hermitian_eigensystem(ComplexMatrix::diagonal(d));
  CHECK(s.eigenvalues == std::vector<double>{0.7, 0.1, 0.1, 0.1});
  // Ties keep their original order: column 1 is e_0, column 2 is e_2.
  CHECK(std::abs(s.eigenvectors(0, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(s.eigenvectors(2, 2)) == doctest::Approx(1.0));

  const Spectrum zero = hermitian_eigensystem(ComplexMatrix(3, 3));
  CHECK(zero.eigenvalues == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("eigensystem rejects bad input") {
  CHECK_THROWS_AS(hermitian_eigensystem(ComplexMatrix(2, 3)), Error);
  try {
    hermitian_eigensystem(ComplexMatrix(2, 3));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSquare);
  }
  const ComplexMatrix skew{{0.0, 1.0}, {0.0, 0.0}};
  try {
    hermitian_eigensystem(skew);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
  // Asymmetry inside the tolerance is accepted.
  const ComplexMatrix nearly{{1.0, 0.5}, {0.5 + 1e-12, 2.0}};
  CHECK_NOTHROW(hermitian_eigensystem(nearly));
}

TEST_CASE("entropy_bits closed forms") {
  CHECK(entropy_bits(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(entropy_bits(std::vector<double>{1.0, 0.0, 0.0}) == 0.0);
  // -(3/4)log2(3/4) - (1/4)log2(1/4)
  const double expected = -0.75 * std::log2(0.75) - 0.25 * std::log2(0.25);
  CHECK(expected == doctest::Approx(0.811278).epsilon(1e-6));
  CHECK(entropy_bits(std::vector<double>{0.75, 0.25}) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("entropy_bits clamp window and errors") {
  CHECK(entropy_bits(std::vector<double>{1.0 + 5e-11, -5e-11}) == doctest::Approx(0.0).epsilon(1e-9));
  try {
    entropy_bits(std::vector<double>{1.1, -0.1});
    FAIL("expected NegativeProbability");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeProbability);
  }
  try {
    entropy_bits(std::vector<double>{0.5, 0.4});
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormalized);
  }
}

TEST_CASE("entropy_bits is permutation invariant and bounded by log2 n") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 7;
    std::vector<double> p(n);
    for (auto& v : p) v = u(rng);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) v /= total;
    const double s = entropy_bits(p);
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(entropy_bits(p) == doctest::Approx(s).epsilon(1e-13));
    CHECK(s >= 0.0);
    CHECK(s <= std::log2(static_cast<double>(n)) + 1e-12);
  }
  // Spectrum of a random density matrix obeys the same bound.
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto rho = lcap::testing::random_density(rng, n);
    const double s = entropy_bits(rho.eigenvalues());
    CHECK(s >= 0.0);
    CHECK(s <= std::log2(static_cast<double>(n)) + 1e-12);
  }
}

TEST_CASE("kron shape and identity") {
  CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                     ComplexMatrix::identity(6)) == 0.0);
  const ComplexMatrix k = kron(ComplexMatrix(3, 2), ComplexMatrix(2, 2));
  CHECK(k.rows() == 6);
  CHECK(k.cols() == 4);
}

TEST_CASE("kron index law") {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = random_matrix(rng, 2, 3);
  const ComplexMatrix b = random_matrix(rng, 3, 2);
  const ComplexMatrix k = kron(a, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t l = 0; l < 2; ++l)
          CHECK(k(i * 3 + r, j * 2 + l) == a(i, j) * b(r, l));
}

TEST_CASE("kron mixed product and associativity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_matrix(rng, 2, 2);
    const auto b = random_matrix(rng, 2, 2);
    const auto c = random_matrix(rng, 2, 2);
    const auto d = random_matrix(rng, 2, 2);
    CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
  }
}

TEST_CASE("matrix construction guards") {
  CHECK_THROWS_AS(ComplexMatrix(0, 2), Error);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), Error);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, std::vector<cplx>{cplx(NAN, 0)}), Error);
  CHECK_THROWS_AS(ComplexMatrix(2, 2) * ComplexMatrix(3, 3), Error);
}
