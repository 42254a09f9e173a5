// Copyright 2026 The ptdilate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ptdilate/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ptdilate/errors.hpp"
#include "ptdilate/solutions.hpp"

namespace ptdilate::cli {

namespace {

using nlohmann::json;
using solutions::SolutionBasis;

// Round-trips through the 12-digit text form so values match the tables.
double rounded(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header) : os_(os) {
    bool first = true;
    for (auto h : header) {
      if (!first) os_ << ',';
      os_ << h;
      first = false;
    }
    os_ << '\n';
  }

  CsvWriter& operator<<(double v) {
    sep();
    os_ << format_number(v);
    return *this;
  }
  CsvWriter& operator<<(Complex z) { return *this << z.real() << z.imag(); }
  CsvWriter& operator<<(std::string_view s) {
    sep();
    os_ << s;
    return *this;
  }
  CsvWriter& operator<<(bool b) {
    sep();
    os_ << (b ? '1' : '0');
    return *this;
  }
  void end_row() {
    os_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) os_ << ',';
    first_ = false;
  }

  std::ostream& os_;
  bool first_ = true;
};

void write_lambda_table(std::ostream& os, const std::vector<double>& times,
                        const std::vector<metric::MetricState>& states) {
  CsvWriter csv(os, {"t", "lambda_minus", "lambda_plus", "valid"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    csv << times[i] << states[i].lambda_minus << states[i].lambda_plus
        << metric::validity(states[i]);
    csv.end_row();
  }
}

json optional_number(const std::optional<double>& v) {
  return v ? json(rounded(*v)) : json(nullptr);
}

std::vector<double> uniform_grid(double begin, double end, double step) {
  Scenario s;
  s.t_start = begin;
  s.t_end = end;
  s.grid_step = step;
  return s.grid();
}

}  // namespace

std::string render_json(const json& j, int indent) {
  std::string out;
  const std::function<void(const json&, int)> walk = [&](const json& v, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    if (v.is_object() || v.is_array()) {
      const bool obj = v.is_object();
      if (v.empty()) {
        out += obj ? "{}" : "[]";
        return;
      }
      out += obj ? "{\n" : "[\n";
      std::size_t k = 0;
      for (auto it = v.begin(); it != v.end(); ++it, ++k) {
        out += pad;
        if (obj) out += json(it.key()).dump() + ": ";
        walk(*it, depth + 1);
        out += k + 1 < v.size() ? ",\n" : "\n";
      }
      out += close + (obj ? "}" : "]");
    } else if (v.is_number_float()) {
      const std::string num = format_number(v.get<double>());
      out += std::isfinite(v.get<double>()) ? num : "null";
    } else {
      out += v.dump();
    }
  };
  walk(j, 0);
  return out;
}

void cmd_spectrum(const Scenario& s, std::ostream& os) {
  const model::HamiltonianParams p = s.params();
  CsvWriter csv(os, {"t", "re_lambda_plus", "im_lambda_plus", "re_lambda_minus",
                     "im_lambda_minus", "phase"});
  for (double t : s.grid()) {
    const model::Spectrum sp = model::instantaneous_spectrum(p, t);
    csv << t << sp.upper << sp.lower << model::to_string(sp.phase);
    csv.end_row();
  }
}

void cmd_metric_scan(const Scenario& s, std::ostream& os) {
  const SolutionBasis basis(s.params());
  const std::vector<double> times = s.grid();
  write_lambda_table(os, times, metric::metric_scan(basis, s.dilation(), times));
}

json cmd_bounds(const Scenario& s) {
  const SolutionBasis basis(s.params());
  const metric::TimeInterval interval{s.t_start, s.t_end};
  const metric::ApproxBounds approx = metric::approx_bounds_interval(basis, interval);
  const double naive = basis.y(s.t_end).first.squaredNorm();
  bool naive_sufficient = false;
  try {
    naive_sufficient =
        !metric::breakdown_time(basis, {s.d0_sq, naive}, s.t_end, s.t_start).has_value();
  } catch (const InvalidMetricError&) {
    // Already invalid at t_start.
  }

  json refined;
  try {
    refined = {{"value", rounded(metric::refined_d1_bound(basis, s.d0_sq, s.t_end))},
               {"reason", nullptr}};
  } catch (const DegenerateError& e) {
    refined = {{"value", nullptr}, {"reason", e.what()}};
  }

  return json{{"interval", {rounded(s.t_start), rounded(s.t_end)}},
              {"d0_sq", rounded(s.d0_sq)},
              {"equal_d_bound", rounded(metric::equal_d_bound(basis, interval))},
              {"approx_d0_sq_min", rounded(approx.d0_min)},
              {"approx_d1_sq_min", rounded(approx.d1_min)},
              {"approx_y1_small", approx.y1_small},
              {"naive_d1_sq", rounded(naive)},
              {"naive_sufficient", naive_sufficient},
              {"refined_d1_sq", refined}};
}

json cmd_breakdown(const Scenario& s, double t_max) {
  const SolutionBasis basis(s.params());
  return json{{"d0_sq", rounded(s.d0_sq)},
              {"d1_sq", rounded(s.d1_sq)},
              {"t_start", rounded(s.t_start)},
              {"t_max", rounded(t_max)},
              {"breakdown_time",
               optional_number(metric::breakdown_time(basis, s.dilation(), t_max, s.t_start))}};
}

void cmd_dilate(const Scenario& s, std::ostream& os) {
  const SolutionBasis basis(s.params());
  const metric::DilationParams d = s.dilation();
  CsvWriter csv(os, {"t", "re_tau00", "im_tau00", "re_tau01", "im_tau01", "re_tau10", "im_tau10",
                     "re_tau11", "im_tau11", "hermiticity_residual", "upper_residual",
                     "lower_residual", "h4_hermiticity_residual"});
  for (double t : s.grid()) {
    const metric::MetricState ms = metric::metric(basis, d, t);
    if (!metric::validity(ms)) {
      throw BreakdownError("dilation is invalid at t = " + format_number(t), t);
    }
    const Matrix2c tau = dilation::tau_from_metric(ms).tau;
    const dilation::DilatedHamiltonian dh = dilation::assemble_dilated(basis, d, t, s.h4_mode);
    csv << t << tau(0, 0) << tau(0, 1) << tau(1, 0) << tau(1, 1) << dh.hermiticity_residual
        << dh.upper_residual << dh.lower_residual << dh.h4_hermiticity_residual;
    csv.end_row();
  }
}

json cmd_simulate(const Scenario& s, std::ostream& os) {
  const StateVec2 psi0 = s.psi0();
  if (psi0.norm() == 0.0) throw ValidationError("initial_state must be nonzero");
  const SolutionBasis basis(s.params());
  const metric::DilationParams d = s.dilation();
  evolve::EvolutionConfig cfg = s.tolerances;
  cfg.output_grid = s.grid();
  const evolve::Trajectory traj =
      evolve::simulate_dilated(basis, d, psi0, {s.t_start, s.t_end}, cfg, s.h4_mode);

  CsvWriter csv(os, {"t", "re_psi0", "im_psi0", "re_psi1", "im_psi1", "re_big0", "im_big0",
                     "re_big1", "im_big1", "re_big2", "im_big2", "re_big3", "im_big3", "norm",
                     "fidelity", "upper_deviation", "lower_consistency", "efficiency"});
  const double norm0 = traj.diagnostics.front().norm;
  double max_upper = 0.0;
  double max_lower = 0.0;
  double max_drift = 0.0;
  double min_fidelity = 1.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const StateVec2 psi = solutions::propagate_analytic(basis, psi0, s.t_start, t);
    const evolve::SampleDiagnostics& diag = traj.diagnostics[i];
    const Eigen::VectorXcd& big = traj.states[i];
    csv << t << psi(0) << psi(1) << big(0) << big(1) << big(2) << big(3) << diag.norm
        << diag.fidelity << diag.upper_deviation << diag.lower_consistency
        << evolve::dilation_efficiency(basis, d, psi, t);
    csv.end_row();
    max_upper = std::max(max_upper, diag.upper_deviation);
    max_lower = std::max(max_lower, diag.lower_consistency);
    max_drift = std::max(max_drift, std::abs(diag.norm - norm0) / norm0);
    min_fidelity = std::min(min_fidelity, diag.fidelity);
  }
  return json{{"scenario", to_json(s)},
              {"samples", traj.times.size()},
              {"max_upper_deviation", rounded(max_upper)},
              {"max_lower_consistency", rounded(max_lower)},
              {"max_norm_drift", rounded(max_drift)},
              {"min_fidelity", rounded(min_fidelity)}};
}

void cmd_efficiency(const Scenario& s, std::ostream& os) {
  const StateVec2 psi0 = s.psi0();
  if (psi0.norm() == 0.0) throw ValidationError("initial_state must be nonzero");
  const SolutionBasis basis(s.params());
  const metric::DilationParams d = s.dilation();
  CsvWriter csv(os, {"t", "efficiency"});
  for (double t : s.grid()) {
    const StateVec2 psi = solutions::propagate_analytic(basis, psi0, s.t_start, t);
    csv << t << evolve::dilation_efficiency(basis, d, psi, t);
    csv.end_row();
  }
}

json cmd_paper_figures(const std::filesystem::path& out_dir, double grid_step) {
  if (!(grid_step > 0.0)) throw ValidationError("grid_step must be positive");
  std::filesystem::create_directories(out_dir);
  const SolutionBasis basis(model::HamiltonianParams(1.0, 0.5));
  constexpr double kD0 = 3.5;

  struct Panel {
    const char* label;
    double d1_sq;
    double t_end;
  };
  const Panel panels[] = {{"238", 238.0, 5.0},
                          {"1474", 1474.0, 5.0},
                          {"4.13", 4.13, 2.5},
                          {"4.634", 4.634, 2.5}};

  std::vector<std::future<std::optional<double>>> breakdowns;
  for (const Panel& panel : panels) {
    breakdowns.push_back(std::async(std::launch::async, [&basis, panel] {
      return metric::breakdown_time(basis, {kD0, panel.d1_sq}, panel.t_end);
    }));
  }
  for (const Panel& panel : panels) {
    const std::vector<double> times = uniform_grid(0.0, panel.t_end, grid_step);
    std::ofstream os(out_dir / (std::string("lambda_minus_d1_") + panel.label + ".csv"));
    if (!os) throw ValidationError("cannot write into " + out_dir.string());
    write_lambda_table(os, times, metric::metric_scan(basis, {kD0, panel.d1_sq}, times));
  }

  const metric::ApproxBounds approx = metric::approx_bounds_interval(basis, {0.0, 4.0});
  json thresholds{
      {"E", 1.0},
      {"omega", 0.5},
      {"d0_sq", kD0},
      {"approx_d0_sq_min_0_4", rounded(approx.d0_min)},
      {"approx_d1_sq_min_0_4", rounded(approx.d1_min)},
      {"approx_d1_sq_min_0_4.5", rounded(metric::approx_bounds_interval(basis, {0.0, 4.5}).d1_min)},
      {"naive_d1_sq_2.1", rounded(basis.y(2.1).first.squaredNorm())},
      {"refined_d1_sq_2.1", rounded(metric::refined_d1_bound(basis, kD0, 2.1))},
      {"breakdown_238", optional_number(breakdowns[0].get())},
      {"breakdown_1474", optional_number(breakdowns[1].get())},
      {"breakdown_413", optional_number(breakdowns[2].get())},
      {"breakdown_4634", optional_number(breakdowns[3].get())}};
  std::ofstream os(out_dir / "thresholds.json");
  os << render_json(thresholds) << '\n';
  return thresholds;
}

namespace {

struct Flags {
  std::string scenario;
  std::string out;
  double grid_step = 0.0;
  double tmax = 0.0;
  std::string h4_mode;
};

Scenario resolve(const Flags& f, const CLI::App& sub) {
  Scenario s = f.scenario.empty() ? Scenario{} : load_scenario(f.scenario);
  if (sub.count("--grid-step") > 0) s.grid_step = f.grid_step;
  if (sub.count("--h4-mode") > 0) s.h4_mode = dilation::parse_h4_mode(f.h4_mode);
  s.validate();
  return s;
}

// Tables go to <out>/<name> when --out is given, otherwise to the console.
void emit_table(const Flags& f, const std::string& name, std::ostream& out,
                const std::function<void(std::ostream&)>& body) {
  if (f.out.empty()) {
    body(out);
    return;
  }
  std::filesystem::create_directories(f.out);
  const std::filesystem::path path = std::filesystem::path(f.out) / name;
  std::ostringstream buffer;
  body(buffer);
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot write " + path.string());
  os << buffer.str();
  out << path.string() << '\n';
}

void emit_json(const Flags& f, const std::string& name, std::ostream& out, const json& j) {
  if (!f.out.empty()) {
    std::filesystem::create_directories(f.out);
    std::ofstream os(std::filesystem::path(f.out) / name);
    if (!os) throw ValidationError("cannot write into " + f.out);
    os << render_json(j) << '\n';
  }
  out << render_json(j) << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-dependent PT-symmetric two-level system and its Hermitian dilation"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", flags.scenario, "Scenario JSON file");
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--grid-step", flags.grid_step, "Override the scenario grid step");
    sub->add_option("--h4-mode", flags.h4_mode, "hermitian_part or wu_choice");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "Instantaneous eigenvalues of H(t)");
  CLI::App* scan = app.add_subcommand("metric-scan", "Metric eigenvalues over the grid");
  CLI::App* bounds = app.add_subcommand("bounds", "Lower bounds on the dilation parameters");
  CLI::App* breakdown = app.add_subcommand("breakdown", "First time the dilation fails");
  CLI::App* dilate = app.add_subcommand("dilate", "tau and block residuals over the grid");
  CLI::App* simulate = app.add_subcommand("simulate", "Integrate the dilated Hermitian system");
  CLI::App* efficiency = app.add_subcommand("efficiency", "Dilation efficiency over the grid");
  CLI::App* figures = app.add_subcommand("paper-figures", "Reference datasets and thresholds");
  for (CLI::App* sub : {spectrum, scan, bounds, breakdown, dilate, simulate, efficiency, figures}) {
    add_common(sub);
  }
  breakdown->add_option("--tmax", flags.tmax, "Search horizon (default: scenario t_end)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (spectrum->parsed()) {
      const Scenario s = resolve(flags, *spectrum);
      emit_table(flags, "spectrum.csv", out, [&](std::ostream& os) { cmd_spectrum(s, os); });
    } else if (scan->parsed()) {
      const Scenario s = resolve(flags, *scan);
      emit_table(flags, "metric_scan.csv", out, [&](std::ostream& os) { cmd_metric_scan(s, os); });
    } else if (bounds->parsed()) {
      emit_json(flags, "bounds.json", out, cmd_bounds(resolve(flags, *bounds)));
    } else if (breakdown->parsed()) {
      const Scenario s = resolve(flags, *breakdown);
      const double t_max = breakdown->count("--tmax") > 0 ? flags.tmax : s.t_end;
      emit_json(flags, "breakdown.json", out, cmd_breakdown(s, t_max));
    } else if (dilate->parsed()) {
      const Scenario s = resolve(flags, *dilate);
      emit_table(flags, "dilate.csv", out, [&](std::ostream& os) { cmd_dilate(s, os); });
    } else if (simulate->parsed()) {
      const Scenario s = resolve(flags, *simulate);
      const std::filesystem::path dir = flags.out.empty() ? "." : flags.out;
      std::ostringstream table;
      const json summary = cmd_simulate(s, table);
      std::filesystem::create_directories(dir);
      std::ofstream(dir / "trajectory.csv") << table.str();
      std::ofstream(dir / "summary.json") << render_json(summary) << '\n';
      out << render_json(summary) << '\n';
    } else if (efficiency->parsed()) {
      const Scenario s = resolve(flags, *efficiency);
      emit_table(flags, "efficiency.csv", out, [&](std::ostream& os) { cmd_efficiency(s, os); });
    } else if (figures->parsed()) {
      const double step = figures->count("--grid-step") > 0 ? flags.grid_step : 1e-3;
      const json thresholds = cmd_paper_figures(flags.out.empty() ? "." : flags.out, step);
      out << render_json(thresholds) << '\n';
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace ptdilate::cli
