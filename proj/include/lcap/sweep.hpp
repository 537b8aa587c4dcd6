#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcap/channel.hpp"
#include "lcap/errors.hpp"
#include "lcap/lambda_model.hpp"

namespace lcap::sweep {

enum class Param { theta, chi, phi, gamma_t, rho11, re_rho12, im_rho12, asym };

std::string_view param_name(Param p) noexcept;
std::optional<Param> parse_param(std::string_view name) noexcept;
const std::vector<Param>& all_params();

// Ground-qubit input state as (rho11, Re rho12, Im rho12). The default is
// the maximally mixed state.
struct InputState {
  double rho11 = 0.5;
  double re_rho12 = 0.0;
  double im_rho12 = 0.0;

  bool is_maximally_mixed() const {
    return rho11 == 0.5 && re_rho12 == 0.0 && im_rho12 == 0.0;
  }
  DensityMatrix density() const {
    return DensityMatrix::qubit(rho11, re_rho12, im_rho12);
  }
  friend bool operator==(const InputState&, const InputState&) = default;
};

// Everything needed to evaluate I_c at one point.
struct EvalPoint {
  lambda::LambdaParams params;
  InputState input;

  double get(Param p) const;
  // asym sets gamma13 = 1, gamma23 = value.
  void set(Param p, double value);
};

// I_c at a point; an invalid input state throws InvalidStateAtPoint.
double evaluate(const EvalPoint& point);

struct Axis {
  Param param;
  double start;
  double stop;
  std::size_t points;

  // Evenly spaced samples. A gamma_t axis with stop = inf is sampled evenly
  // in the emitted fraction 1 - e^{-(γt - start)}, ending at inf.
  std::vector<double> samples() const;
};

struct SweepSpec {
  std::vector<Axis> axes;
  EvalPoint fixed;
};

void validate(const SweepSpec& spec);

struct SweepResult {
  SweepSpec spec;
  std::vector<std::vector<double>> axis_values;
  std::vector<double> values;  // row-major over axis order
  std::size_t argmax_index = 0;
  std::vector<double> argmax;  // coordinates along each axis
  double max_value = 0.0;

  double at(std::size_t i, std::size_t j = 0) const;
};

/// Evaluates I_c on every grid point. threads = 0 picks the hardware
/// concurrency. The result does not depend on the thread count.
SweepResult grid_sweep(const SweepSpec& spec, std::size_t threads = 1);

struct Bounds {
  double lower;
  double upper;
};

struct OptimizeResult {
  EvalPoint point;
  std::vector<double> argmax;  // free-parameter coordinates
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, OptimizeResult best)
      : Error(ErrorKind::NoConvergence, what), best_(std::move(best)) {}
  const OptimizeResult& best() const noexcept { return best_; }

 private:
  OptimizeResult best_;
};

struct OptimizeOptions {
  std::size_t seed_points_per_axis = 9;
  double diameter_tolerance = 1e-8;
  std::size_t max_iterations = 2000;
};

/// Maximizes I_c over the free parameters inside their bounds: best point of
/// a coarse grid, then Nelder-Mead. Throws NoConvergence carrying the best
/// point found when the iteration cap is reached.
OptimizeResult maximize_ic(const std::vector<Param>& free,
                           const std::vector<Bounds>& bounds,
                           const EvalPoint& fixed,
                           const OptimizeOptions& options = {});

enum class Figure { fig1a, fig1b, fig2a, fig2b };

std::optional<Figure> parse_figure(std::string_view id) noexcept;
std::string_view figure_name(Figure f) noexcept;

// Throws UnknownFigure.
SweepSpec figure_preset(std::string_view id, std::size_t points = 41);
SweepSpec figure_preset(Figure f, std::size_t points = 41);

}  // namespace lcap::sweep
