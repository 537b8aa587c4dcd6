#include "lcap/channel.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lcap/errors.hpp"

namespace lcap {

namespace {

constexpr double kStateTol = 1e-10;
constexpr double kChoiTol = 1e-8;
constexpr double kPurifyCutoff = 1e-12;
constexpr double kTableTol = 1e-10;

DensityMatrix as_output(ComplexMatrix m, const char* what) {
  try {
    return DensityMatrix(std::move(m));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidDensity) throw;
    throw Error(ErrorKind::OutputNotDensity, fmt::format("{}: {}", what, e.what()));
  }
}

void require_input_dim(const ChannelMap& channel, const DensityMatrix& rho) {
  if (rho.dim() != channel.dim_in())
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("state of dim {} fed to a channel with dim_in {}",
                            rho.dim(), channel.dim_in()));
}

double shannon_bits(const std::vector<double>& p) { return entropy_bits(p); }

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square())
    throw Error(ErrorKind::InvalidDensity,
                fmt::format("{}x{} is not square", m_.rows(), m_.cols()));
  const double defect = hermiticity_defect(m_);
  if (defect > kStateTol)
    throw Error(ErrorKind::InvalidDensity,
                fmt::format("not Hermitian (defect {:.3e})", defect));
  const cplx tr = m_.trace();
  if (std::abs(tr - 1.0) > kStateTol)
    throw Error(ErrorKind::InvalidDensity,
                fmt::format("trace {:.12g}{:+.3e}i is not 1", tr.real(), tr.imag()));
  eigenvalues_ = hermitian_eigenvalues(m_);
  if (eigenvalues_.back() < -kStateTol)
    throw Error(ErrorKind::InvalidDensity,
                fmt::format("negative eigenvalue {:.3e}", eigenvalues_.back()));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::qubit(double rho11, double re_rho12, double im_rho12) {
  if (!std::isfinite(rho11) || !std::isfinite(re_rho12) || !std::isfinite(im_rho12))
    throw Error(ErrorKind::InvalidDensity, "non-finite qubit parameter");
  const cplx rho12(re_rho12, im_rho12);
  return DensityMatrix(ComplexMatrix{{rho11, rho12}, {std::conj(rho12), 1.0 - rho11}});
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> amplitudes) {
  double norm = 0.0;
  for (const auto& a : amplitudes) norm += std::norm(a);
  if (amplitudes.empty() || norm == 0.0)
    throw Error(ErrorKind::InvalidDensity, "zero state vector");
  const double scale = 1.0 / norm;
  const std::size_t n = amplitudes.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = scale * amplitudes[i] * std::conj(amplitudes[j]);
  return DensityMatrix(std::move(m));
}

double DensityMatrix::entropy() const { return entropy_bits(eigenvalues_); }

ChannelMap::ChannelMap(std::size_t dim_in, std::size_t dim_out,
                       std::vector<ComplexMatrix> s)
    : dim_in_(dim_in), dim_out_(dim_out), s_(std::move(s)) {
  if (dim_in == 0 || dim_out == 0 || s_.size() != dim_in * dim_in)
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("{} operators for dim_in {}", s_.size(), dim_in));
  for (const auto& op : s_)
    if (op.rows() != dim_out || op.cols() != dim_out)
      throw Error(ErrorKind::DimensionMismatch,
                  fmt::format("operator is {}x{}, expected {}x{}", op.rows(),
                              op.cols(), dim_out, dim_out));
}

ChannelMap ChannelMap::identity(std::size_t dim) {
  std::vector<ComplexMatrix> s;
  s.reserve(dim * dim);
  for (std::size_t m = 0; m < dim; ++m)
    for (std::size_t n = 0; n < dim; ++n) {
      ComplexMatrix op(dim, dim);
      op(m, n) = 1.0;
      s.push_back(std::move(op));
    }
  return ChannelMap(dim, dim, std::move(s));
}

ComplexMatrix ChannelMap::choi() const {
  ComplexMatrix out(dim_in_ * dim_out_, dim_in_ * dim_out_);
  for (std::size_t m = 0; m < dim_in_; ++m)
    for (std::size_t n = 0; n < dim_in_; ++n) {
      const ComplexMatrix& op = s(m, n);
      for (std::size_t a = 0; a < dim_out_; ++a)
        for (std::size_t b = 0; b < dim_out_; ++b)
          out(m * dim_out_ + a, n * dim_out_ + b) = op(a, b);
    }
  return out;
}

JointProbabilityTable::JointProbabilityTable(std::size_t rows, std::size_t cols,
                                             std::vector<double> p)
    : rows_(rows), cols_(cols), p_(std::move(p)) {
  if (rows == 0 || cols == 0 || p_.size() != rows * cols)
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("{} entries for a {}x{} table", p_.size(), rows, cols));
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0))
      throw Error(ErrorKind::NegativeProbability,
                  fmt::format("table entry {:.3e}", v));
    total += v;
  }
  if (std::abs(total - 1.0) > kTableTol)
    throw Error(ErrorKind::NotNormalized,
                fmt::format("table sums to {:.12g}", total));
}

PurifiedState purify(const DensityMatrix& rho) {
  const Spectrum spec = hermitian_eigensystem(rho.matrix());
  const std::size_t n = rho.dim();
  PurifiedState psi{n, std::vector<cplx>(n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double p = spec.eigenvalues[i];
    if (p < kPurifyCutoff) continue;
    const double amp = std::sqrt(p);
    for (std::size_t a = 0; a < n; ++a) {
      const cplx va = spec.eigenvectors(a, i);
      if (va == cplx{}) continue;
      for (std::size_t b = 0; b < n; ++b)
        psi.amplitudes[a * n + b] += amp * va * std::conj(spec.eigenvectors(b, i));
    }
  }
  return psi;
}

ComplexMatrix reduce_to_system(const PurifiedState& psi) {
  const std::size_t n = psi.dim;
  ComplexMatrix out(n, n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t b = 0; b < n; ++b)
        out(m, k) += psi.amplitudes[m * n + b] * std::conj(psi.amplitudes[k * n + b]);
  return out;
}

DensityMatrix apply_channel(const ChannelMap& channel, const DensityMatrix& rho) {
  require_input_dim(channel, rho);
  ComplexMatrix out(channel.dim_out(), channel.dim_out());
  for (std::size_t m = 0; m < channel.dim_in(); ++m)
    for (std::size_t n = 0; n < channel.dim_in(); ++n) {
      const cplx weight = rho.matrix()(m, n);
      if (weight != cplx{}) out += weight * channel.s(m, n);
    }
  return as_output(std::move(out), "apply_channel");
}

DensityMatrix joint_output(const ChannelMap& channel, const DensityMatrix& rho) {
  require_input_dim(channel, rho);
  const PurifiedState psi = purify(rho);
  const std::size_t din = channel.dim_in();
  const std::size_t dout = channel.dim_out();
  ComplexMatrix out(dout * din, dout * din);
  // Block (a,b) of the mirror factor: sum_mn psi_ma conj(psi_nb) s_mn.
  for (std::size_t a = 0; a < din; ++a)
    for (std::size_t b = 0; b < din; ++b)
      for (std::size_t m = 0; m < din; ++m)
        for (std::size_t n = 0; n < din; ++n) {
          const cplx w = psi.amplitudes[m * din + a] * std::conj(psi.amplitudes[n * din + b]);
          if (w == cplx{}) continue;
          const ComplexMatrix& op = channel.s(m, n);
          for (std::size_t x = 0; x < dout; ++x)
            for (std::size_t y = 0; y < dout; ++y)
              out(x * din + a, y * din + b) += w * op(x, y);
        }
  return as_output(std::move(out), "joint_output");
}

ComplexMatrix trace_out_second(const ComplexMatrix& m, std::size_t dim_first,
                               std::size_t dim_second) {
  if (m.rows() != dim_first * dim_second || m.cols() != m.rows())
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("{}x{} is not a {}x{} bipartite operator", m.rows(),
                            m.cols(), dim_first, dim_second));
  ComplexMatrix out(dim_first, dim_first);
  for (std::size_t i = 0; i < dim_first; ++i)
    for (std::size_t j = 0; j < dim_first; ++j)
      for (std::size_t k = 0; k < dim_second; ++k)
        out(i, j) += m(i * dim_second + k, j * dim_second + k);
  return out;
}

double entropy_exchange(const ChannelMap& channel, const DensityMatrix& rho) {
  return joint_output(channel, rho).entropy();
}

CoherentInfo coherent_information_report(const ChannelMap& channel,
                                         const DensityMatrix& rho) {
  const DensityMatrix out = apply_channel(channel, rho);
  const DensityMatrix joint = joint_output(channel, rho);
  CoherentInfo info;
  info.output_entropy = out.entropy();
  info.exchange_entropy = joint.entropy();
  info.ic = info.output_entropy - info.exchange_entropy;
  info.output_spectrum = out.eigenvalues();
  info.joint_spectrum = joint.eigenvalues();
  return info;
}

double coherent_information(const ChannelMap& channel, const DensityMatrix& rho) {
  return coherent_information_report(channel, rho).ic;
}

double shannon_mutual_information(const JointProbabilityTable& p) {
  std::vector<double> px(p.rows(), 0.0);
  std::vector<double> py(p.cols(), 0.0);
  std::vector<double> pxy;
  pxy.reserve(p.rows() * p.cols());
  for (std::size_t x = 0; x < p.rows(); ++x)
    for (std::size_t y = 0; y < p.cols(); ++y) {
      px[x] += p(x, y);
      py[y] += p(x, y);
      pxy.push_back(p(x, y));
    }
  const double mi = shannon_bits(px) + shannon_bits(py) - shannon_bits(pxy);
  return std::max(mi, 0.0);
}

ChannelDiagnostics validate_channel(const ChannelMap& channel) {
  ChannelDiagnostics d;
  for (std::size_t m = 0; m < channel.dim_in(); ++m)
    for (std::size_t n = 0; n < channel.dim_in(); ++n) {
      const cplx expected = (m == n) ? 1.0 : 0.0;
      d.trace_deviation =
          std::max(d.trace_deviation, std::abs(channel.s(m, n).trace() - expected));
      d.hermiticity_deviation =
          std::max(d.hermiticity_deviation,
                   max_abs_diff(channel.s(n, m), channel.s(m, n).adjoint()));
    }
  const ComplexMatrix choi = channel.choi();
  if (d.hermiticity_deviation <= kStateTol) {
    d.min_choi_eigenvalue = hermitian_eigenvalues(choi).back();
  } else {
    // Not Hermitian: report the Hermitian part's spectrum instead.
    ComplexMatrix sym = 0.5 * (choi + choi.adjoint());
    d.min_choi_eigenvalue = hermitian_eigenvalues(sym).back();
  }
  if (d.trace_deviation > kStateTol) d.failures.emplace_back("TraceDeviation");
  if (d.hermiticity_deviation > kStateTol) d.failures.emplace_back("HermiticityPairing");
  if (d.min_choi_eigenvalue < -kChoiTol) d.failures.emplace_back("ChoiNegative");
  return d;
}

}  // namespace lcap
