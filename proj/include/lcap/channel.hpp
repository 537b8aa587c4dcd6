#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lcap/linalg.hpp"

namespace lcap {

// Hermitian, unit-trace, positive semidefinite matrix. Construction
// validates; an instance is always a legal quantum state.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix maximally_mixed(std::size_t dim);
  // 2x2 state [[rho11, rho12], [conj(rho12), 1 - rho11]].
  static DensityMatrix qubit(double rho11, double re_rho12, double im_rho12);
  static DensityMatrix pure(std::span<const cplx> amplitudes);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  double entropy() const;

 private:
  ComplexMatrix m_;
  std::vector<double> eigenvalues_;
};

// Transfer-operator representation of a channel: rho_out = sum_mn rho_mn s_mn,
// with rho_mn = <m|rho|n>.
class ChannelMap {
 public:
  ChannelMap(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> s);

  // s_mn = |m><n|.
  static ChannelMap identity(std::size_t dim);

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  const ComplexMatrix& s(std::size_t m, std::size_t n) const {
    return s_[m * dim_in_ + n];
  }
  const std::vector<ComplexMatrix>& operators() const noexcept { return s_; }

  // Block matrix with block (m,n) = s_mn, dimension dim_in*dim_out.
  ComplexMatrix choi() const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> s_;
};

struct PurifiedState {
  std::size_t dim;
  // Amplitude of |a>|b> at index a*dim + b; second factor is the mirror.
  std::vector<cplx> amplitudes;
};

// Rows index the input symbol x, columns the output symbol y.
class JointProbabilityTable {
 public:
  JointProbabilityTable(std::size_t rows, std::size_t cols, std::vector<double> p);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t x, std::size_t y) const { return p_[x * cols_ + y]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> p_;
};

struct ChannelDiagnostics {
  double trace_deviation = 0.0;
  double hermiticity_deviation = 0.0;
  double min_choi_eigenvalue = 0.0;
  std::vector<std::string> failures;  // "TraceDeviation", "HermiticityPairing", "ChoiNegative"
  bool pass() const noexcept { return failures.empty(); }
};

PurifiedState purify(const DensityMatrix& rho);

// Partial trace of |psi><psi| over the mirror factor.
ComplexMatrix reduce_to_system(const PurifiedState& psi);

DensityMatrix apply_channel(const ChannelMap& channel, const DensityMatrix& rho);

/// Joint output-mirror state (C ⊗ I)|Ψ_P><Ψ_P|, ordered output ⊗ mirror.
DensityMatrix joint_output(const ChannelMap& channel, const DensityMatrix& rho);

// Partial trace of an (a*b)-dimensional operator over its second factor.
ComplexMatrix trace_out_second(const ComplexMatrix& m, std::size_t dim_first,
                               std::size_t dim_second);

double entropy_exchange(const ChannelMap& channel, const DensityMatrix& rho);

struct CoherentInfo {
  double ic;
  double output_entropy;
  double exchange_entropy;
  std::vector<double> output_spectrum;
  std::vector<double> joint_spectrum;
};

// Full breakdown of S(rho_out) − S_e; the value is signed.
CoherentInfo coherent_information_report(const ChannelMap& channel,
                                         const DensityMatrix& rho);
double coherent_information(const ChannelMap& channel, const DensityMatrix& rho);

double shannon_mutual_information(const JointProbabilityTable& p);

ChannelDiagnostics validate_channel(const ChannelMap& channel);

}  // namespace lcap
