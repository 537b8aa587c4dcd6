#include "lcap/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "lcap/lambda_model.hpp"

namespace lcap::cli {

namespace {

using nlohmann::json;
using sweep::Param;

constexpr std::array<std::pair<Command, std::string_view>, 5> kCommands{{
    {Command::compute, "compute"},
    {Command::sweep, "sweep"},
    {Command::figure, "figure"},
    {Command::optimize, "optimize"},
    {Command::validate, "validate"},
}};

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "?";
}

Command parse_command(std::string_view name) {
  for (const auto& [cmd, n] : kCommands)
    if (n == name) return cmd;
  throw ConfigError(fmt::format("command: unknown command '{}'", name));
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ConfigError(fmt::format("format: expected csv or json, got '{}'", name));
}

std::string_view format_name(Format f) { return f == Format::csv ? "csv" : "json"; }

Param parse_param_or_throw(std::string_view name, std::string_view where) {
  if (auto p = sweep::parse_param(name)) return *p;
  throw ConfigError(fmt::format("{}: unknown parameter '{}'", where, name));
}

double parse_number(std::string_view text, std::string_view key) {
  if (text == "inf" || text == "+inf" || text == "infinity")
    return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
  return value;
}

// Numbers, or the string "inf" where infinity is admissible.
double number_from_json(const json& j, std::string_view key, bool allow_inf) {
  if (j.is_number()) return j.get<double>();
  if (allow_inf && j.is_string()) {
    const auto s = j.get<std::string>();
    const double v = parse_number(s, key);
    if (std::isinf(v)) return v;
  }
  throw ConfigError(fmt::format("{}: expected a number{}", key,
                                allow_inf ? " or \"inf\"" : ""));
}

json number_to_json(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  if (!j.is_object())
    throw ConfigError(fmt::format("{}: expected an object", where.empty() ? "config" : where));
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok)
      throw ConfigError(fmt::format("{}{}: unknown key", where.empty() ? "" : std::string(where) + ".", key));
  }
}

std::string write_report(const RunConfig& config, const std::string& text,
                         std::ostream& out) {
  if (!config.output_path) {
    out << text;
    return {};
  }
  std::ofstream file(*config.output_path, std::ios::binary);
  if (!file) return fmt::format("cannot open '{}' for writing", *config.output_path);
  file << text;
  file.close();
  if (!file) return fmt::format("write to '{}' failed", *config.output_path);
  return {};
}

int emit(const RunConfig& config, const std::string& text, std::ostream& out,
         std::ostream& err, int code) {
  if (auto problem = write_report(config, text, out); !problem.empty()) {
    err << "error: " << problem << '\n';
    return kNumericError;
  }
  return code;
}

std::size_t thread_budget() {
  const char* env = std::getenv("LAMBDA_CAPACITY_THREADS");
  if (!env || !*env) return 0;
  std::size_t n = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return 0;
  return n;
}

std::string spectrum_text(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += " " + format_fixed6(v);
  return out;
}

json spectrum_json(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(v);
  return arr;
}

std::string point_text(const std::vector<Param>& params, const std::vector<double>& coords) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ",";
    out += fmt::format("{}={}", sweep::param_name(params[i]), format_sig6(coords[i]));
  }
  return out;
}

std::vector<Param> axis_params(const sweep::SweepSpec& spec) {
  std::vector<Param> out;
  for (const auto& a : spec.axes) out.push_back(a.param);
  return out;
}

sweep::SweepSpec sweep_spec_for(const RunConfig& config) {
  if (config.command == Command::figure) {
    if (!config.figure) throw ConfigError("figure: no figure id given");
    try {
      return sweep::figure_preset(*config.figure, config.figure_points);
    } catch (const Error& e) {
      throw ConfigError(fmt::format("figure: {}", e.what()));
    }
  }
  return {config.axes, config.point};
}

int numeric_failure(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << '\n';
  return kNumericError;
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  return config_to_json(a) == config_to_json(b);
}

sweep::Bounds default_bounds(Param p) {
  constexpr double pi = std::numbers::pi;
  switch (p) {
    case Param::theta: return {0.0, 2 * pi};
    case Param::chi: return {0.0, pi / 2};
    case Param::phi: return {0.0, 2 * pi};
    case Param::gamma_t: return {0.0, 8.0};
    case Param::rho11: return {0.0, 1.0};
    case Param::re_rho12: return {-0.5, 0.5};
    case Param::im_rho12: return {-0.5, 0.5};
    case Param::asym: return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

RunConfig config_from_json(const json& j) {
  reject_unknown(j, {"command", "params", "input_state", "sweep", "figure",
                     "optimize", "output_path", "format"},
                 "");
  RunConfig c;
  try {
    if (j.contains("command")) c.command = parse_command(j.at("command").get<std::string>());
    if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
    if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
  } catch (const json::exception&) {
    throw ConfigError("command/format/output_path: expected strings");
  }

  if (j.contains("params")) {
    const json& p = j.at("params");
    reject_unknown(p, {"gamma13", "gamma23", "theta", "chi", "phi", "gamma_t"}, "params");
    auto& lp = c.point.params;
    if (p.contains("gamma13")) lp.gamma13 = number_from_json(p["gamma13"], "params.gamma13", false);
    if (p.contains("gamma23")) lp.gamma23 = number_from_json(p["gamma23"], "params.gamma23", false);
    if (p.contains("theta")) lp.theta = number_from_json(p["theta"], "params.theta", false);
    if (p.contains("chi")) lp.chi = number_from_json(p["chi"], "params.chi", false);
    if (p.contains("phi")) lp.phi = number_from_json(p["phi"], "params.phi", false);
    if (p.contains("gamma_t")) lp.gamma_t = number_from_json(p["gamma_t"], "params.gamma_t", true);
  }

  if (j.contains("input_state")) {
    const json& s = j.at("input_state");
    if (s.is_string()) {
      if (s.get<std::string>() != "maximally_mixed")
        throw ConfigError("input_state: expected \"maximally_mixed\" or an object");
      c.point.input = {};
    } else {
      reject_unknown(s, {"rho11", "re_rho12", "im_rho12"}, "input_state");
      c.point.input = {0.5, 0.0, 0.0};
      if (s.contains("rho11")) c.point.input.rho11 = number_from_json(s["rho11"], "input_state.rho11", false);
      if (s.contains("re_rho12")) c.point.input.re_rho12 = number_from_json(s["re_rho12"], "input_state.re_rho12", false);
      if (s.contains("im_rho12")) c.point.input.im_rho12 = number_from_json(s["im_rho12"], "input_state.im_rho12", false);
    }
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    reject_unknown(s, {"axes"}, "sweep");
    if (s.contains("axes")) {
      if (!s["axes"].is_array()) throw ConfigError("sweep.axes: expected an array");
      for (const auto& a : s["axes"]) {
        reject_unknown(a, {"param", "start", "stop", "points"}, "sweep.axes[]");
        if (!a.contains("param") || !a["param"].is_string())
          throw ConfigError("sweep.axes[].param: missing");
        sweep::Axis axis{parse_param_or_throw(a["param"].get<std::string>(), "sweep.axes[].param"),
                         0.0, 0.0, 0};
        if (!a.contains("start") || !a.contains("stop") || !a.contains("points"))
          throw ConfigError("sweep.axes[]: start, stop and points are required");
        axis.start = number_from_json(a["start"], "sweep.axes[].start", false);
        axis.stop = number_from_json(a["stop"], "sweep.axes[].stop", true);
        if (!a["points"].is_number_unsigned())
          throw ConfigError("sweep.axes[].points: expected a positive integer");
        axis.points = a["points"].get<std::size_t>();
        c.axes.push_back(axis);
      }
    }
  }

  if (j.contains("figure")) {
    const json& f = j.at("figure");
    if (f.is_string()) {
      c.figure = f.get<std::string>();
    } else {
      reject_unknown(f, {"id", "points"}, "figure");
      if (!f.contains("id") || !f["id"].is_string()) throw ConfigError("figure.id: missing");
      c.figure = f["id"].get<std::string>();
      if (f.contains("points")) {
        if (!f["points"].is_number_unsigned())
          throw ConfigError("figure.points: expected a positive integer");
        c.figure_points = f["points"].get<std::size_t>();
      }
    }
  }

  if (j.contains("optimize")) {
    const json& o = j.at("optimize");
    reject_unknown(o, {"free", "bounds", "max_iterations"}, "optimize");
    if (o.contains("max_iterations")) {
      if (!o["max_iterations"].is_number_unsigned())
        throw ConfigError("optimize.max_iterations: expected a positive integer");
      c.optimize.max_iterations = o["max_iterations"].get<std::size_t>();
    }
    if (o.contains("free")) {
      if (!o["free"].is_array()) throw ConfigError("optimize.free: expected an array");
      for (const auto& name : o["free"]) {
        if (!name.is_string()) throw ConfigError("optimize.free: expected names");
        c.optimize.free.push_back(parse_param_or_throw(name.get<std::string>(), "optimize.free"));
      }
    }
    for (auto p : c.optimize.free) c.optimize.bounds.push_back(default_bounds(p));
    if (o.contains("bounds")) {
      const json& b = o["bounds"];
      if (!b.is_object()) throw ConfigError("optimize.bounds: expected an object");
      for (const auto& [name, range] : b.items()) {
        const auto where = fmt::format("optimize.bounds.{}", name);
        const Param p = parse_param_or_throw(name, where);
        const auto it = std::find(c.optimize.free.begin(), c.optimize.free.end(), p);
        if (it == c.optimize.free.end())
          throw ConfigError(fmt::format("{}: parameter is not free", where));
        if (!range.is_array() || range.size() != 2)
          throw ConfigError(fmt::format("{}: expected [lower, upper]", where));
        c.optimize.bounds[it - c.optimize.free.begin()] = {
            number_from_json(range[0], where, false), number_from_json(range[1], where, false)};
      }
    }
  }
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["command"] = command_name(c.command);
  j["format"] = format_name(c.format);
  const auto& p = c.point.params;
  j["params"] = {{"gamma13", p.gamma13}, {"gamma23", p.gamma23}, {"theta", p.theta},
                 {"chi", p.chi},         {"phi", p.phi},         {"gamma_t", number_to_json(p.gamma_t)}};
  if (c.point.input.is_maximally_mixed()) {
    j["input_state"] = "maximally_mixed";
  } else {
    j["input_state"] = {{"rho11", c.point.input.rho11},
                        {"re_rho12", c.point.input.re_rho12},
                        {"im_rho12", c.point.input.im_rho12}};
  }
  if (!c.axes.empty()) {
    json axes = json::array();
    for (const auto& a : c.axes)
      axes.push_back({{"param", sweep::param_name(a.param)},
                      {"start", a.start},
                      {"stop", number_to_json(a.stop)},
                      {"points", a.points}});
    j["sweep"] = {{"axes", axes}};
  }
  if (c.figure) j["figure"] = {{"id", *c.figure}, {"points", c.figure_points}};
  if (!c.optimize.free.empty()) {
    json free = json::array();
    json bounds = json::object();
    for (std::size_t i = 0; i < c.optimize.free.size(); ++i) {
      const auto name = std::string(sweep::param_name(c.optimize.free[i]));
      free.push_back(name);
      bounds[name] = {c.optimize.bounds[i].lower, c.optimize.bounds[i].upper};
    }
    j["optimize"] = {{"free", free}, {"bounds", bounds}, {"max_iterations", c.optimize.max_iterations}};
  }
  if (c.output_path) j["output_path"] = *c.output_path;
  return j;
}

void validate_config(const RunConfig& c) {
  const auto& p = c.point.params;
  const auto check = [](bool ok, std::string_view key, double v, std::string_view rule) {
    if (!ok) throw ConfigError(fmt::format("params.{}: {} {}", key, v, rule));
  };
  check(std::isfinite(p.gamma13) && p.gamma13 >= 0, "gamma13", p.gamma13, "must be >= 0");
  check(std::isfinite(p.gamma23) && p.gamma23 >= 0, "gamma23", p.gamma23, "must be >= 0");
  check(p.gamma13 + p.gamma23 > 0, "gamma13", p.gamma13, "and gamma23 must not both be 0");
  check(std::isfinite(p.theta), "theta", p.theta, "must be finite");
  check(std::isfinite(p.chi) && p.chi >= 0 && p.chi <= std::numbers::pi / 2, "chi", p.chi,
        "must lie in [0, pi/2]");
  check(std::isfinite(p.phi), "phi", p.phi, "must be finite");
  check(p.gamma_t >= 0, "gamma_t", p.gamma_t, "must be >= 0 or inf");

  // The input state matters unless a sweep/optimization overrides all of it.
  const bool state_needed = c.command == Command::compute;
  if (state_needed) {
    try {
      (void)c.point.input.density();
    } catch (const Error& e) {
      throw ConfigError(fmt::format("input_state: {}", e.what()));
    }
  }

  switch (c.command) {
    case Command::sweep:
      if (c.axes.empty()) throw ConfigError("sweep.axes: at least one axis is required");
      try {
        sweep::validate({c.axes, c.point});
      } catch (const Error& e) {
        throw ConfigError(fmt::format("sweep.axes: {}", e.what()));
      }
      break;
    case Command::figure:
      if (!c.figure) throw ConfigError("figure: no figure id given");
      if (!sweep::parse_figure(*c.figure))
        throw ConfigError(fmt::format("figure: unknown figure '{}'", *c.figure));
      if (c.figure_points < 2) throw ConfigError("figure.points: must be >= 2");
      break;
    case Command::optimize:
      if (c.optimize.free.empty() || c.optimize.free.size() > 4)
        throw ConfigError(fmt::format("optimize.free: {} free parameters, expected 1 to 4",
                                      c.optimize.free.size()));
      for (std::size_t i = 0; i < c.optimize.free.size(); ++i) {
        const auto& b = c.optimize.bounds[i];
        if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || b.lower > b.upper)
          throw ConfigError(fmt::format("optimize.bounds.{}: need finite lower <= upper",
                                        sweep::param_name(c.optimize.free[i])));
      }
      break;
    default:
      break;
  }
}

std::string format_sig6(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::string s = fmt::format("{:.6g}", v);
  if (s == "-0") s = "0";
  return s;
}

std::string format_fixed6(double v) {
  std::string s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string sweep_csv(const sweep::SweepResult& r) {
  std::string out;
  for (const auto& a : r.spec.axes) out += fmt::format("{},", sweep::param_name(a.param));
  out += "Ic\n";
  const std::size_t rows = r.axis_values[0].size();
  const std::size_t cols = r.axis_values.size() > 1 ? r.axis_values[1].size() : 1;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      out += format_sig6(r.axis_values[0][i]) + ",";
      if (r.axis_values.size() > 1) out += format_sig6(r.axis_values[1][k]) + ",";
      out += format_sig6(r.at(i, k)) + "\n";
    }
  out += fmt::format("# max Ic={} at {}\n", format_sig6(r.max_value),
                     point_text(axis_params(r.spec), r.argmax));
  return out;
}

json sweep_json(const sweep::SweepResult& r) {
  json axes = json::array();
  for (std::size_t d = 0; d < r.spec.axes.size(); ++d) {
    json values = json::array();
    for (double v : r.axis_values[d]) values.push_back(number_to_json(v));
    axes.push_back({{"name", sweep::param_name(r.spec.axes[d].param)}, {"values", values}});
  }
  json values = json::array();
  const std::size_t cols = r.axis_values.size() > 1 ? r.axis_values[1].size() : 1;
  for (std::size_t i = 0; i < r.axis_values[0].size(); ++i) {
    if (r.axis_values.size() == 1) {
      values.push_back(r.at(i));
      continue;
    }
    json row = json::array();
    for (std::size_t k = 0; k < cols; ++k) row.push_back(r.at(i, k));
    values.push_back(row);
  }
  json at = json::object();
  for (std::size_t d = 0; d < r.argmax.size(); ++d)
    at[std::string(sweep::param_name(r.spec.axes[d].param))] = number_to_json(r.argmax[d]);
  return {{"axes", axes}, {"values", values}, {"max", {{"value", r.max_value}, {"at", at}}}};
}

int run_compute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  CoherentInfo info;
  try {
    info = coherent_information_report(lambda::channel_map(config.point.params),
                                       config.point.input.density());
  } catch (const std::exception& e) {
    return numeric_failure(err, e);
  }
  std::string text;
  if (config.format == Format::json) {
    const json j = {{"Ic", info.ic},
                    {"S_out", info.output_entropy},
                    {"S_e", info.exchange_entropy},
                    {"rho_out_spectrum", spectrum_json(info.output_spectrum)},
                    {"rho_alpha_spectrum", spectrum_json(info.joint_spectrum)}};
    text = j.dump(2) + "\n";
  } else {
    text = fmt::format("Ic {}\nS_out {}\nS_e {}\nrho_out_spectrum{}\nrho_alpha_spectrum{}\n",
                       format_fixed6(info.ic), format_fixed6(info.output_entropy),
                       format_fixed6(info.exchange_entropy),
                       spectrum_text(info.output_spectrum),
                       spectrum_text(info.joint_spectrum));
  }
  return emit(config, text, out, err, kOk);
}

int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  sweep::SweepResult result;
  try {
    result = sweep::grid_sweep(sweep_spec_for(config), thread_budget());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    return numeric_failure(err, e);
  }
  const std::string text = config.format == Format::json
                               ? sweep_json(result).dump(2) + "\n"
                               : sweep_csv(result);
  return emit(config, text, out, err, kOk);
}

int run_optimize(const RunConfig& config, std::ostream& out, std::ostream& err) {
  sweep::OptimizeResult result;
  int code = kOk;
  try {
    sweep::OptimizeOptions options;
    options.max_iterations = config.optimize.max_iterations;
    result = sweep::maximize_ic(config.optimize.free, config.optimize.bounds, config.point,
                                options);
  } catch (const sweep::NoConvergence& e) {
    err << "error: " << e.what() << " (reporting best point found)\n";
    result = e.best();
    code = kNoConvergence;
  } catch (const std::exception& e) {
    return numeric_failure(err, e);
  }
  std::string text;
  if (config.format == Format::json) {
    json at = json::object();
    for (std::size_t i = 0; i < config.optimize.free.size(); ++i)
      at[std::string(sweep::param_name(config.optimize.free[i]))] = result.argmax[i];
    const json j = {{"argmax", at},
                    {"Ic", result.value},
                    {"iterations", result.iterations},
                    {"converged", code == kOk}};
    text = j.dump(2) + "\n";
  } else {
    text = fmt::format("argmax {}\nIc {}\niterations {}\n",
                       point_text(config.optimize.free, result.argmax),
                       format_fixed6(result.value), result.iterations);
  }
  return emit(config, text, out, err, code);
}

int report_channel_validation(const ChannelMap& channel, std::ostream& out) {
  const ChannelDiagnostics d = validate_channel(channel);
  out << fmt::format("trace_deviation {:.6e}\nhermiticity_deviation {:.6e}\n"
                     "min_choi_eigenvalue {:.6e}\n",
                     d.trace_deviation, d.hermiticity_deviation, d.min_choi_eigenvalue);
  if (d.pass()) {
    out << "status pass\n";
    return kOk;
  }
  out << "status fail";
  for (const auto& f : d.failures) out << ' ' << f;
  out << '\n';
  return kValidationFailed;
}

int run_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream text;
  int code = kOk;
  try {
    code = report_channel_validation(lambda::channel_map(config.point.params), text);
  } catch (const std::exception& e) {
    return numeric_failure(err, e);
  }
  return emit(config, text.str(), out, err, code);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent information of the Lambda-atom to photon-field channel",
               "lambda_capacity"};
  std::string command;
  std::optional<std::string> config_path, out_path, format, figure, gamma_t;
  std::optional<double> theta, chi, phi, asym, rho11, re_rho12, im_rho12;
  std::vector<std::string> axes;
  std::optional<std::string> free;
  bool dump = false;

  app.add_option("command", command, "compute | sweep | figure | optimize | validate")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "write results to this file");
  app.add_option("--format", format, "csv or json");
  app.add_option("--theta", theta, "total pulse area");
  app.add_option("--chi", chi, "pulse intensity split angle in [0, pi/2]");
  app.add_option("--phi", phi, "relative pulse phase");
  app.add_option("--gamma-t", gamma_t, "elapsed decay time (number or inf)");
  app.add_option("--asym", asym, "decay asymmetry gamma23/gamma13");
  app.add_option("--rho11", rho11, "input population of level 1");
  app.add_option("--re-rho12", re_rho12, "real part of the input coherence");
  app.add_option("--im-rho12", im_rho12, "imaginary part of the input coherence");
  app.add_option("--figure", figure, "figure preset: fig1a fig1b fig2a fig2b");
  app.add_option("--axis", axes, "sweep axis name:start:stop:points (repeatable)");
  app.add_option("--free", free, "comma-separated free parameters for optimize");
  app.add_flag("--dump-config", dump, "print the effective configuration and exit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  RunConfig config;
  try {
    if (config_path) {
      std::ifstream file(*config_path);
      if (!file) throw ConfigError(fmt::format("--config: cannot read '{}'", *config_path));
      json j;
      try {
        j = json::parse(file);
      } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("--config: {}", e.what()));
      }
      config = config_from_json(j);
    }
    config.command = parse_command(command);
    if (out_path) config.output_path = *out_path;
    if (format) config.format = parse_format(*format);
    auto& p = config.point.params;
    if (theta) p.theta = *theta;
    if (chi) p.chi = *chi;
    if (phi) p.phi = *phi;
    if (gamma_t) p.gamma_t = parse_number(*gamma_t, "--gamma-t");
    if (asym) {
      p.gamma13 = 1.0;
      p.gamma23 = *asym;
    }
    if (rho11) config.point.input.rho11 = *rho11;
    if (re_rho12) config.point.input.re_rho12 = *re_rho12;
    if (im_rho12) config.point.input.im_rho12 = *im_rho12;
    if (figure) config.figure = *figure;
    if (!axes.empty()) {
      config.axes.clear();
      for (const auto& spec : axes) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() != 4)
          throw ConfigError(fmt::format("--axis: '{}' is not name:start:stop:points", spec));
        const double pts = parse_number(parts[3], "--axis points");
        if (pts < 0 || pts != std::floor(pts))
          throw ConfigError(fmt::format("--axis: '{}' points must be an integer", spec));
        config.axes.push_back({parse_param_or_throw(parts[0], "--axis"),
                               parse_number(parts[1], "--axis start"),
                               parse_number(parts[2], "--axis stop"),
                               static_cast<std::size_t>(pts)});
      }
    }
    if (free) {
      config.optimize.free.clear();
      config.optimize.bounds.clear();
      std::stringstream ss(*free);
      for (std::string name; std::getline(ss, name, ',');) {
        if (name.empty()) continue;
        const Param param = parse_param_or_throw(name, "--free");
        config.optimize.free.push_back(param);
        config.optimize.bounds.push_back(default_bounds(param));
      }
    }

    if (dump) {
      out << config_to_json(config).dump(2) << '\n';
      return kOk;
    }
    validate_config(config);

    switch (config.command) {
      case Command::compute: return run_compute(config, out, err);
      case Command::sweep:
      case Command::figure: return run_sweep(config, out, err);
      case Command::optimize: return run_optimize(config, out, err);
      case Command::validate: return run_validate(config, out, err);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

}  // namespace lcap::cli
