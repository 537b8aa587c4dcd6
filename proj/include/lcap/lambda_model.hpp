#pragma once

#include <limits>
#include <string>
#include <vector>

#include "lcap/channel.hpp"
#include "lcap/linalg.hpp"

namespace lcap::lambda {

inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

// Control and decay parameters of the driven three-level Λ atom.
//
// Ground levels |1>, |2>, excited |3>. The pulse pair has total area theta
// and intensity split chi: the field of amplitude Ω·sin(chi) and phase phi
// drives 2↔3, the field of amplitude Ω·cos(chi) drives 1↔3. gamma_t is the
// dimensionless elapsed decay time; +inf means the photon is fully emitted.
struct LambdaParams {
  double gamma13 = 1.0;
  double gamma23 = 1.0;
  double theta = 0.0;
  double chi = 0.0;
  double phi = 0.0;
  double gamma_t = kInfiniteTime;
  double delta_raman = 0.0;  // two-photon resonance only

  double alpha1() const { return gamma13 / (gamma13 + gamma23); }
  double alpha2() const { return 1.0 - alpha1(); }

  // gamma13 = 1, gamma23 = ratio.
  static LambdaParams with_asymmetry(double ratio);
};

// Throws InvalidParams / InvalidAngle naming the offending field.
void validate(const LambdaParams& p);

struct Isometry {
  ComplexMatrix matrix;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
};

/// Ground-subspace block (3x2) of the resonant RWA pulse propagator
/// exp(-i H τ_p), H = ½[Ω cos χ |3><1| + Ω sin χ e^{iφ} |3><2| + h.c.],
/// Ωτ_p = θ. Rows are atom levels 1..3, columns ground levels 1..2.
Isometry pulse_propagator(double theta, double chi, double phi);

/// Free decay of the excited level, atom -> atom ⊗ field (9x3). Row index
/// is 3·k + f with atom level k and field state f ∈ {vacuum, ψ13, ψ23}.
Isometry decay_isometry(double alpha1, double alpha2, double gamma_t);

// e^{-γt}, exactly zero at infinity.
double survival(double gamma_t);

/// Channel from the ground qubit to the photon field, built from the
/// composed isometry W = V·U by tracing out the atom.
ChannelMap channel_map(const LambdaParams& params);

/// Closed-form transfer operators for the case where only 1↔3 is driven,
/// output basis (vacuum, ψ13, ψ23).
ChannelMap closed_form_channel(double theta, double gamma_t, double alpha1,
                               double alpha2);

// Atom-reduced state after pulse and decay for a pure ground input c.
ComplexMatrix atom_state(const LambdaParams& params, cplx c1, cplx c2);

}  // namespace lcap::lambda
