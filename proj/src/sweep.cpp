#include "lcap/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include <fmt/format.h>

namespace lcap::sweep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

constexpr std::array<std::pair<Param, std::string_view>, 8> kParamNames{{
    {Param::theta, "theta"},
    {Param::chi, "chi"},
    {Param::phi, "phi"},
    {Param::gamma_t, "gamma_t"},
    {Param::rho11, "rho11"},
    {Param::re_rho12, "re_rho12"},
    {Param::im_rho12, "im_rho12"},
    {Param::asym, "asym"},
}};

constexpr std::array<std::pair<Figure, std::string_view>, 4> kFigureNames{{
    {Figure::fig1a, "fig1a"},
    {Figure::fig1b, "fig1b"},
    {Figure::fig2a, "fig2a"},
    {Figure::fig2b, "fig2b"},
}};

std::vector<double> linspace(double start, double stop, std::size_t n) {
  std::vector<double> out(n);
  const double step = (stop - start) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) out[k] = start + step * static_cast<double>(k);
  out.back() = stop;
  return out;
}

void check_axis_range(const Axis& a) {
  const auto name = param_name(a.param);
  const auto outside = [&](double lo, double hi) {
    return std::min(a.start, a.stop) < lo || std::max(a.start, a.stop) > hi;
  };
  switch (a.param) {
    case Param::chi:
      if (outside(0.0, kPi / 2))
        throw Error(ErrorKind::InvalidSpec,
                    fmt::format("{} axis must lie in [0, pi/2]", name));
      break;
    case Param::gamma_t:
    case Param::asym:
      if (std::min(a.start, a.stop) < 0.0)
        throw Error(ErrorKind::InvalidSpec,
                    fmt::format("{} axis must be non-negative", name));
      break;
    default:
      break;
  }
}

// Lexicographic walk over a box grid with n points per axis.
template <class F>
void for_each_grid_point(const std::vector<std::vector<double>>& axes, F&& f) {
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size();
  std::vector<double> x(axes.size());
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t d = axes.size(); d-- > 0;) {
      x[d] = axes[d][rem % axes[d].size()];
      rem /= axes[d].size();
    }
    f(x);
  }
}

struct Simplex {
  std::vector<std::vector<double>> vertices;
  std::vector<double> cost;  // minimized, i.e. -I_c

  void sort() {
    std::vector<std::size_t> order(cost.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });
    Simplex sorted;
    for (auto i : order) {
      sorted.vertices.push_back(vertices[i]);
      sorted.cost.push_back(cost[i]);
    }
    *this = std::move(sorted);
  }

  double diameter() const {
    double best = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < vertices[0].size(); ++k)
        d2 += std::pow(vertices[i][k] - vertices[0][k], 2);
      best = std::max(best, std::sqrt(d2));
    }
    return best;
  }
};

std::vector<double> affine(const std::vector<double>& a, const std::vector<double>& b,
                           double t) {
  // a + t (b - a)
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + t * (b[k] - a[k]);
  return out;
}

}  // namespace

std::string_view param_name(Param p) noexcept {
  for (const auto& [param, name] : kParamNames)
    if (param == p) return name;
  return "?";
}

std::optional<Param> parse_param(std::string_view name) noexcept {
  for (const auto& [param, n] : kParamNames)
    if (n == name) return param;
  return std::nullopt;
}

const std::vector<Param>& all_params() {
  static const std::vector<Param> params = [] {
    std::vector<Param> out;
    for (const auto& entry : kParamNames) out.push_back(entry.first);
    return out;
  }();
  return params;
}

double EvalPoint::get(Param p) const {
  switch (p) {
    case Param::theta: return params.theta;
    case Param::chi: return params.chi;
    case Param::phi: return params.phi;
    case Param::gamma_t: return params.gamma_t;
    case Param::rho11: return input.rho11;
    case Param::re_rho12: return input.re_rho12;
    case Param::im_rho12: return input.im_rho12;
    case Param::asym: return params.gamma23 / params.gamma13;
  }
  return 0.0;
}

void EvalPoint::set(Param p, double value) {
  switch (p) {
    case Param::theta: params.theta = value; break;
    case Param::chi: params.chi = value; break;
    case Param::phi: params.phi = value; break;
    case Param::gamma_t: params.gamma_t = value; break;
    case Param::rho11: input.rho11 = value; break;
    case Param::re_rho12: input.re_rho12 = value; break;
    case Param::im_rho12: input.im_rho12 = value; break;
    case Param::asym:
      params.gamma13 = 1.0;
      params.gamma23 = value;
      break;
  }
}

double evaluate(const EvalPoint& point) {
  std::optional<DensityMatrix> rho;
  try {
    rho.emplace(point.input.density());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidDensity) throw;
    throw Error(ErrorKind::InvalidStateAtPoint,
                fmt::format("rho11={} rho12={}{:+}i: {}", point.input.rho11,
                            point.input.re_rho12, point.input.im_rho12, e.what()));
  }
  return coherent_information(lambda::channel_map(point.params), *rho);
}

std::vector<double> Axis::samples() const {
  if (param == Param::gamma_t && std::isinf(stop)) {
    std::vector<double> out(points);
    for (std::size_t k = 0; k + 1 < points; ++k) {
      const double emitted = static_cast<double>(k) / static_cast<double>(points - 1);
      out[k] = start - std::log1p(-emitted);
    }
    out.back() = lambda::kInfiniteTime;
    return out;
  }
  return linspace(start, stop, points);
}

void validate(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2)
    throw Error(ErrorKind::InvalidSpec,
                fmt::format("{} axes given, expected 1 or 2", spec.axes.size()));
  if (spec.axes.size() == 2 && spec.axes[0].param == spec.axes[1].param)
    throw Error(ErrorKind::InvalidSpec, "both axes sweep the same parameter");
  for (const auto& a : spec.axes) {
    const auto name = param_name(a.param);
    if (a.points < 2)
      throw Error(ErrorKind::InvalidSpec,
                  fmt::format("{} axis needs at least 2 points", name));
    const bool inf_stop_ok = a.param == Param::gamma_t && a.stop == lambda::kInfiniteTime;
    if (!std::isfinite(a.start) || !(std::isfinite(a.stop) || inf_stop_ok))
      throw Error(ErrorKind::InvalidSpec,
                  fmt::format("{} axis bounds must be finite", name));
    check_axis_range(a);
  }
  // Fixed parameters must be valid on their own; swept ones are overridden.
  EvalPoint probe = spec.fixed;
  for (const auto& a : spec.axes) probe.set(a.param, a.start);
  try {
    lambda::validate(probe.params);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidSpec, e.what());
  }
}

double SweepResult::at(std::size_t i, std::size_t j) const {
  const std::size_t cols = axis_values.size() > 1 ? axis_values[1].size() : 1;
  return values[i * cols + j];
}

SweepResult grid_sweep(const SweepSpec& spec, std::size_t threads) {
  validate(spec);
  SweepResult result;
  result.spec = spec;
  for (const auto& a : spec.axes) result.axis_values.push_back(a.samples());

  const std::size_t rows = result.axis_values[0].size();
  const std::size_t cols = result.axis_values.size() > 1 ? result.axis_values[1].size() : 1;
  const std::size_t total = rows * cols;
  result.values.assign(total, 0.0);

  const auto point_at = [&](std::size_t flat) {
    EvalPoint p = spec.fixed;
    p.set(spec.axes[0].param, result.axis_values[0][flat / cols]);
    if (spec.axes.size() > 1) p.set(spec.axes[1].param, result.axis_values[1][flat % cols]);
    return p;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, total);

  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        result.values[i] = evaluate(point_at(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  // First failure in grid order, independent of scheduling.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  result.argmax_index = static_cast<std::size_t>(
      std::max_element(result.values.begin(), result.values.end()) -
      result.values.begin());
  result.max_value = result.values[result.argmax_index];
  result.argmax.push_back(result.axis_values[0][result.argmax_index / cols]);
  if (spec.axes.size() > 1)
    result.argmax.push_back(result.axis_values[1][result.argmax_index % cols]);
  return result;
}

OptimizeResult maximize_ic(const std::vector<Param>& free,
                           const std::vector<Bounds>& bounds,
                           const EvalPoint& fixed, const OptimizeOptions& options) {
  if (free.empty() || free.size() > 4)
    throw Error(ErrorKind::InvalidSpec,
                fmt::format("{} free parameters, expected 1 to 4", free.size()));
  if (bounds.size() != free.size())
    throw Error(ErrorKind::InvalidSpec, "one bounds pair per free parameter");
  for (std::size_t i = 0; i < free.size(); ++i) {
    const auto name = param_name(free[i]);
    if (std::count(free.begin(), free.end(), free[i]) > 1)
      throw Error(ErrorKind::InvalidSpec, fmt::format("{} listed twice", name));
    if (!std::isfinite(bounds[i].lower) || !std::isfinite(bounds[i].upper) ||
        bounds[i].lower > bounds[i].upper)
      throw Error(ErrorKind::InvalidSpec,
                  fmt::format("{} bounds must be finite with lower <= upper", name));
    check_axis_range({free[i], bounds[i].lower, bounds[i].upper, 2});
  }
  {
    EvalPoint probe = fixed;
    for (std::size_t i = 0; i < free.size(); ++i) probe.set(free[i], bounds[i].lower);
    try {
      lambda::validate(probe.params);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidSpec, e.what());
    }
  }

  OptimizeResult best;
  best.value = kNegInf;

  const auto clamp_point = [&](const std::vector<double>& x) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = std::clamp(x[i], bounds[i].lower, bounds[i].upper);
    return y;
  };
  const auto point_for = [&](const std::vector<double>& x) {
    EvalPoint p = fixed;
    for (std::size_t i = 0; i < x.size(); ++i) p.set(free[i], x[i]);
    return p;
  };
  // I_c at the projection onto the box, minus the distance to the box so the
  // exterior has no plateaus. Non-physical input states score -inf.
  const auto objective = [&](const std::vector<double>& x) {
    const std::vector<double> y = clamp_point(x);
    double value = kNegInf;
    try {
      value = evaluate(point_for(y));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidStateAtPoint) throw;
    }
    ++best.evaluations;
    double outside = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) outside += std::pow(x[i] - y[i], 2);
    if (value > best.value || (best.argmax.empty() && value == kNegInf)) {
      best.value = value;
      best.argmax = y;
      best.point = point_for(y);
    }
    return value - std::sqrt(outside);
  };

  // Coarse grid seed.
  std::vector<std::vector<double>> grid;
  for (const auto& b : bounds)
    grid.push_back(b.lower == b.upper
                       ? std::vector<double>{b.lower}
                       : linspace(b.lower, b.upper, options.seed_points_per_axis));
  std::vector<double> seed;
  double seed_value = kNegInf;
  for_each_grid_point(grid, [&](const std::vector<double>& x) {
    const double v = objective(x);
    if (seed.empty() || v > seed_value) {
      seed = x;
      seed_value = v;
    }
  });
  if (seed_value == kNegInf)
    throw Error(ErrorKind::InvalidStateAtPoint,
                "no valid input state on the seeding grid");

  // Only non-degenerate directions take part in the simplex.
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < bounds.size(); ++i)
    if (bounds[i].upper > bounds[i].lower) active.push_back(i);
  if (active.empty()) return best;

  const auto embed = [&](const std::vector<double>& z) {
    std::vector<double> x = seed;
    for (std::size_t k = 0; k < active.size(); ++k) x[active[k]] = z[k];
    return x;
  };
  const auto cost = [&](const std::vector<double>& z) { return -objective(embed(z)); };

  Simplex simplex;
  std::vector<double> z0;
  for (auto i : active) z0.push_back(seed[i]);
  simplex.vertices.push_back(z0);
  simplex.cost.push_back(-seed_value);
  for (std::size_t k = 0; k < active.size(); ++k) {
    const Bounds& b = bounds[active[k]];
    const double step = 0.1 * (b.upper - b.lower);
    std::vector<double> z = z0;
    z[k] += (z[k] + step <= b.upper) ? step : -step;
    simplex.vertices.push_back(z);
    simplex.cost.push_back(cost(z));
  }

  const std::size_t n = active.size();
  std::size_t iter = 0;
  simplex.sort();
  while (simplex.diameter() >= options.diameter_tolerance) {
    if (iter == options.max_iterations) {
      best.iterations = iter;
      throw NoConvergence(
          fmt::format("simplex diameter {:.3e} after {} iterations",
                      simplex.diameter(), iter),
          best);
    }
    ++iter;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex.vertices[v][k] / n;
    const auto& worst = simplex.vertices[n];
    const double f_best = simplex.cost[0];
    const double f_second = simplex.cost[n - 1];
    const double f_worst = simplex.cost[n];

    const auto reflected = affine(centroid, worst, -1.0);
    const double fr = cost(reflected);
    if (fr < f_best) {
      const auto expanded = affine(centroid, worst, -2.0);
      const double fe = cost(expanded);
      if (fe < fr) {
        simplex.vertices[n] = expanded;
        simplex.cost[n] = fe;
      } else {
        simplex.vertices[n] = reflected;
        simplex.cost[n] = fr;
      }
    } else if (fr < f_second) {
      simplex.vertices[n] = reflected;
      simplex.cost[n] = fr;
    } else {
      const bool outside = fr < f_worst;
      const auto contracted =
          outside ? affine(centroid, reflected, 0.5) : affine(centroid, worst, 0.5);
      const double fc = cost(contracted);
      if (fc < (outside ? fr : f_worst)) {
        simplex.vertices[n] = contracted;
        simplex.cost[n] = fc;
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          simplex.vertices[v] = affine(simplex.vertices[0], simplex.vertices[v], 0.5);
          simplex.cost[v] = cost(simplex.vertices[v]);
        }
      }
    }
    simplex.sort();
  }
  best.iterations = iter;
  return best;
}

std::optional<Figure> parse_figure(std::string_view id) noexcept {
  for (const auto& [fig, name] : kFigureNames)
    if (name == id) return fig;
  return std::nullopt;
}

std::string_view figure_name(Figure f) noexcept {
  for (const auto& [fig, name] : kFigureNames)
    if (fig == f) return name;
  return "?";
}

SweepSpec figure_preset(std::string_view id, std::size_t points) {
  const auto fig = parse_figure(id);
  if (!fig)
    throw Error(ErrorKind::UnknownFigure,
                fmt::format("'{}' (known: fig1a, fig1b, fig2a, fig2b)", id));
  return figure_preset(*fig, points);
}

SweepSpec figure_preset(Figure f, std::size_t points) {
  SweepSpec spec;
  spec.fixed.params.gamma13 = 1.0;
  spec.fixed.params.gamma23 = 1.0;
  spec.fixed.params.gamma_t = lambda::kInfiniteTime;
  const Axis theta{Param::theta, 0.0, 2 * kPi, points};
  const Axis chi{Param::chi, 0.0, kPi / 2, points};
  switch (f) {
    case Figure::fig1a:
      spec.axes = {theta, chi};
      spec.fixed.input = {0.25, 0.0, 0.0};
      break;
    case Figure::fig1b:
      spec.axes = {theta, {Param::gamma_t, 0.0, 8.0, points}};
      break;
    case Figure::fig2a:
      spec.axes = {theta, {Param::rho11, 0.0, 1.0, points}};
      break;
    case Figure::fig2b:
      spec.axes = {{Param::asym, 0.0, 1.0, points}, chi};
      spec.fixed.params.theta = kPi;
      break;
  }
  return spec;
}

}  // namespace lcap::sweep
