#include "stochoptics/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include "report.hpp"
#include "stochoptics/errors.hpp"
#include "stochoptics/fieldgen.hpp"
#include "stochoptics/parallel.hpp"
#include "stochoptics/photonics.hpp"
#include "stochoptics/radiometry.hpp"
#include "stochoptics/spectral.hpp"
#include "stochoptics/trace_io.hpp"
#include "stochoptics/version.hpp"

namespace stochoptics::cli {

namespace {

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  if (values.empty()) throw ConfigError(std::string(what) + " list is empty");
  return values;
}

struct Output {
  std::string path;
  std::string format = "csv";

  void add(CLI::App* app, OptionSet& opts) {
    app->add_option("--out", path, "Output file (default: standard output)");
    opts.add("format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  }

  void emit(const Report& r, std::ostream& fallback) const {
    if (path.empty()) {
      r.write(fallback, format);
      return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    r.write(f, format);
    if (!f) throw IoError("failed writing '" + path + "'");
  }
};

struct ModelOptions {
  std::string model = "thermal";
  double nu = 100.0;
  double gamma = 1.0;
  double jitter_band = 0.0;
  double jitter_time = 1.5;
  double dt = 0.01;
  double duration = 200.0;
  std::uint64_t traces = 100;
  std::uint64_t seed = kDefaultSeed;
  std::string in;

  void add(OptionSet& opts, bool with_input) {
    opts.add("model", model, "Model family: thermal, laser, jittered_laser, kspace_product, periodic_thermal");
    opts.add("nu", nu, "Photons per coherence time");
    opts.add("gamma", gamma, "Linewidth Gamma (1/s)");
    opts.add("jitter-band", jitter_band, "Jitter band Delta omega (rad/s), jittered_laser only");
    opts.add("jitter-time", jitter_time, "Jitter correlation time (s), jittered_laser only");
    opts.add("dt", dt, "Time step (s)");
    opts.add("duration", duration, "Trace duration (s)");
    opts.add("traces", traces, "Number of traces");
    opts.add("seed", seed, "Master seed");
    if (with_input) opts.add("in", in, "Read traces from this file instead of generating them");
  }

  BeamModelSpec spec() const {
    BeamModelSpec s{parse_family(model), nu, gamma, jitter_band, jitter_time};
    s.validate();
    return s;
  }

  std::size_t samples() const {
    detail::require_positive(dt, "dt");
    detail::require_positive(duration, "duration");
    const double n = std::round(duration / dt);
    if (n < 2 || n > 1e10) throw ConfigError("duration/dt gives an unusable sample count");
    return static_cast<std::size_t>(n);
  }

  TraceEnsemble ensemble() const {
    if (!in.empty()) return TraceEnsemble::from_traces(read_traces(in));
    if (traces == 0) throw ConfigError("--traces must be positive");
    return make_ensemble(spec(), dt, samples(), seed, traces);
  }
};

struct FilterOptions {
  double width = 0.0;
  double center = 0.0;

  void add(OptionSet& opts) {
    opts.add("filter-width", width, "Lorentzian filter FWHM (rad/s); 0 disables filtering");
    opts.add("filter-center", center, "Filter centre detuning (rad/s)");
  }

  TraceEnsemble apply(const TraceEnsemble& e) const {
    if (width == 0.0) return e;
    return filtered(e, FilterSpec{center, width});
  }
};

using Runner = std::function<void(std::ostream&)>;

Runner setup_blackbody(CLI::App* app, OptionSet& opts, Output& output) {
  struct Params {
    double power = 0.1;
    double linewidth = 1e7;
    double lambda0 = 1e-6;
    double area = 15e-6;
    double bulb_power = 60.0;
    double bulb_lambda_max = 1e-6;
    double bulb_temperature = 3000.0;
  };
  auto p = std::make_shared<Params>();
  opts.add("power", p->power, "Beam power P (W)");
  opts.add("linewidth", p->linewidth, "Linewidth Gamma (1/s)");
  opts.add("lambda0", p->lambda0, "Centre wavelength (m)");
  opts.add("area", p->area, "Source area A (m^2)");
  opts.add("bulb-power", p->bulb_power, "Light bulb power (W)");
  opts.add("bulb-lambda-max", p->bulb_lambda_max, "Light bulb peak wavelength (m)");
  opts.add("bulb-temperature", p->bulb_temperature, "Light bulb temperature (K)");
  output.add(app, opts);
  return [p, &opts, &output](std::ostream& out) {
    using namespace radiometry;
    BlackbodyScenario scenario{p->power, p->linewidth, p->lambda0, p->area, p->bulb_temperature};
    scenario.validate();
    const auto coll = collimation_efficiency(p->power, p->area);
    const auto filt = filtering_efficiency(p->power, p->area, p->linewidth, p->lambda0);
    Report r;
    r.command = "blackbody";
    r.config = opts.resolved();
    r.columns = {"quantity", "value", "unit", "formula"};
    auto row = [&](const char* q, double v, const char* unit, const char* formula) {
      r.rows.push_back({std::string(q), v, std::string(unit), std::string(formula)});
    };
    row("bulb_lambda_max", wien_peak(p->bulb_temperature), "m", "wien_peak");
    row("bulb_radiated_power", radiated_power(filament_area(p->bulb_power, p->bulb_lambda_max), p->bulb_temperature),
        "W", "stefan_boltzmann");
    row("filament_area", filament_area(p->bulb_power, p->bulb_lambda_max), "m^2", "filament_area");
    row("collimated_temperature", coll.temperature, "K", "collimated_power_inverse");
    row("collimated_lambda_max", coll.lambda_max, "m", "wien_peak");
    row("filtered_temperature", temperature_for_filtered_power(p->power, p->linewidth), "K",
        "filtered_power_inverse");
    row("nu", filt.nu, "1", "photons_per_coherence_time");
    row("filtered_power_check", filtered_power(filt.nu, scenario.omega0(), p->linewidth), "W", "filtered_power");
    row("collimation_efficiency", coll.approximate, "1", "lambda_max_squared_over_area");
    row("collimation_efficiency_exact", coll.exact, "1", "collimated_over_stefan_boltzmann");
    row("filtering_geometric_factor", filt.geometric, "1", "lambda0_squared_over_area");
    row("filtering_spectral_factor", filt.spectral, "1", "gamma_over_omega0");
    row("filtering_brightness_factor", filt.brightness, "1", "nu_inverse_cubed");
    row("filtering_efficiency", filt.total, "1", "geometric_spectral_brightness_product");
    row("filtering_efficiency_log10", filt.log10_total(), "1", "geometric_spectral_brightness_product");
    row("filtering_efficiency_via_temperature", filt.via_temperature, "1", "filtered_temperature_route");
    row("filtering_efficiency_via_temperature_log10", filt.log10_via_temperature(), "1",
        "filtered_temperature_route");
    output.emit(r, out);
  };
}

Runner setup_simulate(CLI::App* app, OptionSet& opts, std::string& out_path) {
  struct Params {
    ModelOptions model;
    std::string trace_format = "binary";
    std::string summary_format = "csv";
  };
  auto p = std::make_shared<Params>();
  p->model.add(opts, false);
  opts.add("trace-format", p->trace_format, "Trace file format")->check(CLI::IsMember({"binary", "csv"}));
  opts.add("format", p->summary_format, "Summary format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", out_path, "Trace output file")->required();
  return [p, &opts, &out_path](std::ostream& out) {
    const auto spec = p->model.spec();
    const auto ensemble = p->model.ensemble();
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + out_path + "' for writing");
    const auto config = opts.resolved();
    if (p->trace_format == "csv") {
      f << "# version=" << kVersion << '\n' << "# seed=" << p->model.seed << '\n';
      for (const auto& [k, v] : config) f << "# config." << k << '=' << v << '\n';
      f << "trace,t,re,im\n";
    }
    RunningMoments flux;
    map_reduce_ordered(
        ensemble.size(), [&](std::size_t i) { return ensemble[i]; },
        [&](std::size_t i, FieldTrace t) {
          flux.add(t.samples.cwiseAbs2().mean());
          if (p->trace_format == "binary") {
            write_trace(f, t);
          } else {
            for (std::size_t j = 0; j < t.size(); ++j) {
              const auto z = t.samples[static_cast<Eigen::Index>(j)];
              f << i << ',' << format_number(t.dt * static_cast<double>(j)) << ',' << format_number(z.real()) << ','
                << format_number(z.imag()) << '\n';
            }
          }
        });
    if (!f) throw IoError("failed writing '" + out_path + "'");
    Report r;
    r.command = "simulate";
    r.config = config;
    r.seed = p->model.seed;
    r.summary = {{"traces", static_cast<std::int64_t>(ensemble.size())},
                 {"samples_per_trace", static_cast<std::int64_t>(p->model.samples())},
                 {"mean_flux", flux.mean()},
                 {"mean_flux_std_error", flux.std_error()},
                 {"expected_flux", spec.mean_flux()},
                 {"degenerate", std::string(spec.nu == 0.0 ? "yes (nu = 0, all-zero traces)" : "no")}};
    r.write(out, p->summary_format);
  };
}

Runner setup_spectrum(CLI::App* app, OptionSet& opts, Output& output) {
  struct Params {
    ModelOptions model;
    FilterOptions filter;
  };
  auto p = std::make_shared<Params>();
  p->model.add(opts, true);
  p->filter.add(opts);
  output.add(app, opts);
  return [p, &opts, &output](std::ostream& out) {
    const auto s = spectrum(p->filter.apply(p->model.ensemble()));
    Report r;
    r.command = "spectrum";
    r.config = opts.resolved();
    r.seed = p->model.seed;
    const auto peak = s.nearest(0.0);
    r.summary = {{"ensemble_size", static_cast<std::int64_t>(s.ensemble_size)},
                 {"samples_per_trace", static_cast<std::int64_t>(s.n_samples)},
                 {"dt", s.dt},
                 {"zero_detuning_value", s.values[static_cast<Eigen::Index>(peak)]},
                 {"zero_detuning_std_error", s.std_errors[static_cast<Eigen::Index>(peak)]}};
    r.columns = {"grid", "value", "std_error"};
    for (Eigen::Index i = 0; i < s.grid.size(); ++i) r.rows.push_back({s.grid[i], s.values[i], s.std_errors[i]});
    output.emit(r, out);
  };
}

Runner setup_g2(CLI::App* app, OptionSet& opts, Output& output) {
  struct Params {
    ModelOptions model;
    FilterOptions filter;
    std::string taus = "0,0.5,1,2,5";
  };
  auto p = std::make_shared<Params>();
  p->model.model = "laser";
  p->model.duration = 1000.0;
  p->model.traces = 20;
  p->model.add(opts, true);
  p->filter.add(opts);
  opts.add("taus", p->taus, "Comma-separated lags (s), multiples of dt");
  output.add(app, opts);
  return [p, &opts, &output](std::ostream& out) {
    const auto taus = parse_list(p->taus, "taus");
    const auto g = g2(p->filter.apply(p->model.ensemble()), taus);
    Report r;
    r.command = "g2";
    r.config = opts.resolved();
    r.seed = p->model.seed;
    r.columns = {"tau", "value", "std_error", "ensemble_size"};
    for (Eigen::Index i = 0; i < g.tau.size(); ++i) {
      r.rows.push_back({g.tau[i], g.values[i], g.std_errors[i], static_cast<std::int64_t>(g.ensemble_size)});
    }
    output.emit(r, out);
  };
}

std::string regime_label(double width, double band, double gamma) {
  if (band > 0.0) {
    if (width >= 10.0 * band) return "near_shot_noise";
    if (width > band / 10.0) return "well_above_shot_noise";
    if (width > gamma) return "enormous_fluctuations";
    return "thermal_like";
  }
  if (width >= 10.0 * gamma) return "near_shot_noise";
  if (width > gamma / 10.0) return "crossover";
  return "thermal_like";
}

Runner setup_sweep(CLI::App* app, OptionSet& opts, Output& output) {
  struct Params {
    std::string model = "jittered_laser";
    double nu = 100.0;
    double gamma = 1.0;
    double jitter_band = 100.0;
    double jitter_time = 1.5;
    std::string widths = "10000,100,10,0.1";
    std::uint64_t traces = 8;
    std::uint64_t samples = std::uint64_t{1} << 20;
    double dt_max = 0.01;
    std::uint64_t seed = kDefaultSeed;
  };
  auto p = std::make_shared<Params>();
  opts.add("model", p->model, "Source model family");
  opts.add("nu", p->nu, "Photons per coherence time");
  opts.add("gamma", p->gamma, "Linewidth Gamma (1/s)");
  opts.add("jitter-band", p->jitter_band, "Jitter band Delta omega (rad/s)");
  opts.add("jitter-time", p->jitter_time, "Jitter correlation time (s)");
  opts.add("widths", p->widths, "Comma-separated filter widths delta omega (rad/s)");
  opts.add("traces", p->traces, "Traces per width");
  opts.add("samples", p->samples, "Samples per trace");
  opts.add("dt-max", p->dt_max, "Largest time step (s); narrower steps are used for wide filters");
  opts.add("seed", p->seed, "Master seed");
  output.add(app, opts);
  return [p, &opts, &output](std::ostream& out) {
    const BeamModelSpec spec{parse_family(p->model), p->nu, p->gamma, p->jitter_band, p->jitter_time};
    const auto widths = parse_list(p->widths, "widths");
    const SweepEnsemble params{p->traces, p->samples, p->dt_max, p->seed};
    const auto rows = filtered_laser_sweep(spec, widths, params);
    Report r;
    r.command = "sweep";
    r.config = opts.resolved();
    r.seed = p->seed;
    r.columns = {"delta_omega", "value", "std_error", "ensemble_size", "dt", "regime"};
    const double band = spec.family == BeamFamily::jittered_laser ? spec.jitter_band : 0.0;
    for (const auto& row : rows) {
      r.rows.push_back({row.delta_omega, row.g2, row.std_error, static_cast<std::int64_t>(row.ensemble_size), row.dt,
                        regime_label(row.delta_omega, band, spec.gamma)});
    }
    output.emit(r, out);
  };
}

Runner setup_qslb(CLI::App* app, OptionSet& opts, Output& output) {
  struct Params {
    double nu = 100.0;
    double gamma = 1.0;
    double dt = 0.01;
    double duration = 200.0;
    std::uint64_t traces = 1000;
    std::uint64_t windows = 16;
    std::uint64_t permutations = 4999;
    std::uint64_t seed = kDefaultSeed;
  };
  auto p = std::make_shared<Params>();
  opts.add("nu", p->nu, "Photons per coherence time");
  opts.add("gamma", p->gamma, "Linewidth Gamma (1/s)");
  opts.add("dt", p->dt, "Time step (s)");
  opts.add("duration", p->duration, "Trace duration (s)");
  opts.add("traces", p->traces, "Traces per model (at least 1000)");
  opts.add("windows", p->windows, "Stationarity test windows per trace");
  opts.add("permutations", p->permutations, "Stationarity test permutations");
  opts.add("seed", p->seed, "Master seed");
  output.add(app, opts);
  return [p, &opts, &output](std::ostream& out) {
    Report r;
    r.command = "qslb-demo";
    r.config = opts.resolved();
    r.seed = p->seed;
    r.columns = {"model", "test", "statistic", "p_value", "sample_size", "verdict"};
    const auto n = static_cast<std::size_t>(std::round(p->duration / p->dt));
    for (auto family : {BeamFamily::thermal, BeamFamily::laser, BeamFamily::kspace_product}) {
      const BeamModelSpec spec{family, p->nu, p->gamma};
      const auto ens = make_ensemble(spec, p->dt, n, p->seed, p->traces);
      const auto longer = make_ensemble(spec, p->dt, 2 * n, p->seed ^ 0x10A6, p->traces);
      const auto name = std::string(to_string(family));
      auto add = [&](const char* test, const TestReport& t) {
        r.rows.push_back({name, std::string(test), t.statistic, t.p_value, static_cast<std::int64_t>(t.sample_size),
                          std::string(t.pass ? "consistent" : "rejected")});
      };
      add("stationarity", stationarity_test(ens, p->windows, p->permutations, p->seed));
      add("periodogram_exponential_law", periodogram_distribution_test(ens, 0.0));
      add("length_consistency", length_consistency_test(ens, longer, 0.0));
    }
    output.emit(r, out);
  };
}

// Inserts config-file entries right after the subcommand name, ahead of the
// explicit flags, so that flags given on the command line win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> extra;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    std::string path;
    if (a == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file name");
      path = args[++i];
    } else if (a.starts_with("--config=")) {
      path = a.substr(9);
    } else {
      out.push_back(a);
      continue;
    }
    for (const auto& [k, v] : load_config(path)) {
      if (!v.empty()) extra.push_back("--" + k + "=" + v);
    }
  }
  if (!extra.empty() && out.size() >= 2) out.insert(out.begin() + 2, extra.begin(), extra.end());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic optics simulation and analysis toolkit", "stochoptics"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: OpenMP default); results do not depend on it");

  struct Command {
    CLI::App* app;
    std::unique_ptr<OptionSet> opts;
    Runner runner;
  };
  std::vector<Command> commands;
  Output output;
  std::string simulate_out;
  auto add_command = [&](const char* name, const char* help, auto setup) {
    auto* sub = app.add_subcommand(name, help);
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    auto opts = std::make_unique<OptionSet>(sub);
    Runner runner;
    if constexpr (std::is_invocable_v<decltype(setup), CLI::App*, OptionSet&, Output&>) {
      runner = setup(sub, *opts, output);
    } else {
      runner = setup(sub, *opts, simulate_out);
    }
    commands.push_back({sub, std::move(opts), std::move(runner)});
  };
  add_command("blackbody", "Closed-form radiometry of the light-bulb-to-laser comparison", setup_blackbody);
  add_command("simulate", "Generate and save field traces", setup_simulate);
  add_command("spectrum", "Ensemble power spectrum", setup_spectrum);
  add_command("g2", "Intensity correlation g2(tau)", setup_g2);
  add_command("sweep", "g2(0) of a filtered laser against filter width", setup_sweep);
  add_command("qslb-demo", "Stationarity and periodogram tests of the mode-product state", setup_qslb);

  try {
    auto args = expand_config(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  try {
    if (threads > 0) set_thread_count(threads);
    for (auto& c : commands) {
      if (c.app->parsed()) c.runner(out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitSuccess;
}

}  // namespace stochoptics::cli
