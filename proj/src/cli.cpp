#include "freewave/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "freewave/analysis.hpp"
#include "freewave/classical.hpp"
#include "freewave/errors.hpp"
#include "freewave/io.hpp"
#include "freewave/niederer.hpp"
#include "freewave/verify.hpp"

namespace freewave::cli {
namespace {

using json = nlohmann::ordered_json;
constexpr int kSchemaVersion = 1;

// Thrown for inconsistent configurations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return v;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// A destination that is either the caller's stream or a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// Tabular output in either CSV or a JSON {columns, rows} document.
class TableWriter {
 public:
  TableWriter(const RunConfig& cfg, std::ostream& out, std::vector<std::string> columns)
      : format_(cfg.format), out_(out), columns_(std::move(columns)) {
    if (format_ == Format::csv) io::write_csv_header(out_, columns_);
    else doc_ = json{{"schema_version", kSchemaVersion}, {"columns", columns_}, {"rows", json::array()}};
  }
  void row(const std::vector<double>& values) {
    if (format_ == Format::csv) io::write_csv_row(out_, values);
    else doc_["rows"].push_back(values);
  }
  void finish() {
    if (format_ == Format::json) out_ << doc_.dump(1) << '\n';
  }

 private:
  Format format_;
  std::ostream& out_;
  std::vector<std::string> columns_;
  json doc_;
};

OscillatorParams params_of(const RunConfig& cfg) {
  try {
    return OscillatorParams(cfg.mass, cfg.omega);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Grid1D grid_of(const GridSpec& spec) {
  try {
    return Grid1D(spec.min, spec.max, spec.count);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

void require_n(const RunConfig& cfg) {
  if (cfg.n < 0) throw UsageError("--n must be >= 0");
}

int run_gen1d(const RunConfig& cfg, std::ostream& out) {
  require_n(cfg);
  const auto params = params_of(cfg);
  const auto taus = cfg.taus.empty() ? std::vector<double>{0.0} : cfg.taus;
  const Grid1D grid = cfg.grid ? grid_of(*cfg.grid)
                               : analysis::auto_grid_1d(params, cfg.n, max_abs(taus),
                                                        cfg.count > 0 ? cfg.count : 2001);
  const niederer::LiftedState state(params, QuantumNumbers1D(cfg.n));
  const analysis::Evaluator1D chi = [&](double y, double tau) { return state(y, FreeTime{tau}); };
  TableWriter table(cfg, out, {"tau", "y", "re", "im", "density"});
  for (double tau : taus) {
    const auto field = analysis::sample_field(chi, grid, tau);
    for (int i = 0; i < grid.count(); ++i) {
      const cplx v = field.values[i];
      table.row({tau, grid.node(i), v.real(), v.imag(), std::norm(v)});
    }
  }
  table.finish();
  return kOk;
}

int run_gen2d(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n != 0) throw UsageError("gen2d evaluates the closed form for n_radial = 0 only");
  const auto params = params_of(cfg);
  const QuantumNumbers2D qn(0, cfg.l.value_or(0));
  const auto taus = cfg.taus.empty() ? std::vector<double>{0.0} : cfg.taus;
  Grid2D grid = analysis::auto_grid_2d(params, qn, max_abs(taus), cfg.count > 0 ? cfg.count : 101);
  if (cfg.grid) grid = {grid_of(*cfg.grid), grid_of(cfg.grid2 ? *cfg.grid2 : *cfg.grid)};
  const niederer::LiftedState state(params, qn);
  TableWriter table(cfg, out, {"tau", "y1", "y2", "re", "im", "density"});
  for (double tau : taus) {
    const auto values = kernels::parallel::sample_2d(
        [&](double y1, double y2) {
          const double y[2] = {y1, y2};
          return state(y, FreeTime{tau});
        },
        grid);
    const int n2 = grid.axis2.count();
    for (int i = 0; i < grid.axis1.count(); ++i) {
      for (int j = 0; j < n2; ++j) {
        const cplx v = values[static_cast<std::size_t>(i) * n2 + j];
        table.row({tau, grid.axis1.node(i), grid.axis2.node(j), v.real(), v.imag(), std::norm(v)});
      }
    }
  }
  table.finish();
  return kOk;
}

// Densities grouped by tau from a gen1d CSV; rows must be ordered by y on a uniform grid.
std::vector<std::pair<double, analysis::PeakRecord>> peaks_from_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  io::CsvTable table;
  try {
    table = io::read_csv(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("malformed CSV input: ") + e.what());
  }
  const auto c_tau = table.column("tau");
  const auto c_y = table.column("y");
  const auto c_density = table.column("density");
  std::vector<std::pair<double, analysis::PeakRecord>> out;
  std::size_t start = 0;
  while (start < table.rows.size()) {
    const double tau = table.rows[start][c_tau];
    std::size_t end = start;
    std::vector<double> density;
    while (end < table.rows.size() && table.rows[end][c_tau] == tau)
      density.push_back(table.rows[end++][c_density]);
    const Grid1D grid(table.rows[start][c_y], table.rows[end - 1][c_y],
                      static_cast<int>(density.size()));
    out.emplace_back(tau, analysis::find_density_maxima(grid, density, tau));
    start = end;
  }
  return out;
}

int run_peaks(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::pair<double, analysis::PeakRecord>> records;
  if (!cfg.input_path.empty()) {
    records = peaks_from_csv(cfg.input_path);
  } else {
    require_n(cfg);
    const auto params = params_of(cfg);
    const auto taus = cfg.taus.empty() ? std::vector<double>{0.0, 1.0, 2.0} : cfg.taus;
    const niederer::LiftedState state(params, QuantumNumbers1D(cfg.n));
    const analysis::Evaluator1D chi = [&](double y, double tau) { return state(y, FreeTime{tau}); };
    for (double tau : taus) {
      const Grid1D grid = cfg.grid ? grid_of(*cfg.grid)
                                   : analysis::auto_grid_1d(params, cfg.n, tau,
                                                            cfg.count > 0 ? cfg.count : 16001);
      records.emplace_back(tau, analysis::find_density_maxima(analysis::sample_field(chi, grid, tau)));
    }
  }
  TableWriter table(cfg, out, {"tau", "peak_index", "position", "height", "fwhm"});
  for (const auto& [tau, rec] : records)
    for (std::size_t k = 0; k < rec.positions.size(); ++k)
      table.row({tau, static_cast<double>(k), rec.positions[k], rec.heights[k], rec.fwhm[k]});
  table.finish();
  return kOk;
}

int run_envelope(const RunConfig& cfg, std::ostream& out) {
  const auto params = params_of(cfg);
  if (cfg.energy.has_value() == cfg.energy_from_n.has_value())
    throw UsageError("envelope needs exactly one of --energy or --energy-from-n");
  if (cfg.energy_from_n && *cfg.energy_from_n < 0) throw UsageError("--energy-from-n must be >= 0");
  if (cfg.energy && !(*cfg.energy > 0.0)) throw UsageError("--energy must be positive");
  const auto fam = cfg.energy ? classical::TrajectoryFamily(params, *cfg.energy)
                              : classical::TrajectoryFamily::for_eigenstate(
                                    params, QuantumNumbers1D(*cfg.energy_from_n));
  const auto taus = cfg.taus.empty() ? linspace(-5.0, 5.0, 101) : cfg.taus;
  if (cfg.alpha_count > 0) {
    TableWriter table(cfg, out, {"tau", "alpha", "y"});
    for (int k = 0; k < cfg.alpha_count; ++k) {
      const classical::PhaseAngle alpha(2.0 * std::numbers::pi * k / cfg.alpha_count);
      for (double tau : taus)
        table.row({tau, alpha.value(), classical::free_trajectory(fam, alpha, FreeTime{tau})});
    }
    table.finish();
    return kOk;
  }
  TableWriter table(cfg, out, {"tau", "y_plus", "y_minus"});
  for (double tau : taus) {
    const auto env = classical::envelope(fam, FreeTime{tau});
    table.row({tau, env.y_plus, env.y_minus});
  }
  table.finish();
  return kOk;
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int run_verify(const RunConfig& cfg, std::ostream& out) {
  require_n(cfg);
  const auto& names = verify::suite_names();
  if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
    throw UsageError("unknown suite '" + cfg.suite + "'");
  if (cfg.refinements < 2) throw UsageError("--refinements must be >= 2");
  verify::SuiteOptions opts;
  opts.params = params_of(cfg);
  opts.n = cfg.n;
  opts.l = cfg.l.value_or(1);
  opts.taus = cfg.taus;
  opts.refinements = cfg.refinements;
  opts.n_values = cfg.n_values;
  const auto outcome = verify::run_suite(cfg.suite, opts);

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["suite"] = outcome.suite;
  doc["params"] = {{"mass", cfg.mass}, {"omega", cfg.omega}, {"n", cfg.n}, {"l", opts.l}};
  const auto& r = outcome.residuals;
  doc["spacings"] = r ? json(r->spacings) : json::array();
  doc["linf"] = r ? json(r->linf_residuals) : json::array();
  doc["l2"] = r ? json(r->l2_residuals) : json::array();
  doc["fitted_order"] = r ? nullable(r->fitted_order) : json(nullptr);
  doc["pass"] = outcome.pass;
  doc["metric"] = nullable(outcome.metric);
  doc["threshold"] = outcome.threshold;
  json details = json::object();
  for (const auto& [k, v] : outcome.details) details[k] = nullable(v);
  doc["details"] = details;
  out << doc.dump(2) << '\n';
  return outcome.pass ? kOk : kVerificationFailed;
}

int run_propagate(const RunConfig& cfg, std::ostream& out) {
  require_n(cfg);
  const auto params = params_of(cfg);
  const auto taus = cfg.taus.empty() ? std::vector<double>{1.0} : cfg.taus;
  const Grid1D grid = cfg.grid ? grid_of(*cfg.grid)
                               : analysis::auto_grid_1d(params, cfg.n, max_abs(taus),
                                                        cfg.count > 0 ? cfg.count : 1024);
  if (cfg.fast && (grid.count() & (grid.count() - 1)) != 0)
    throw UsageError("--fast needs a power-of-two node count");
  const niederer::LiftedState state(params, QuantumNumbers1D(cfg.n));
  const auto initial = analysis::sample_field(
      [&](double y, double tau) { return state(y, FreeTime{tau}); }, grid, 0.0);
  const auto method = cfg.fast ? analysis::SpectralMethod::fast : analysis::SpectralMethod::direct;
  TableWriter table(cfg, out, {"tau", "y", "re", "im", "density"});
  for (double tau : taus) {
    const auto field = analysis::spectral_propagate_free(initial, tau, params.mass(), method);
    for (int i = 0; i < grid.count(); ++i) {
      const cplx v = field.values[i];
      table.row({tau, grid.node(i), v.real(), v.imag(), std::norm(v)});
    }
  }
  table.finish();
  return kOk;
}

int numerical_failure(std::ostream& err, const char* kind, const std::exception& e) {
  const json record = {{"schema_version", kSchemaVersion},
                       {"error", {{"kind", kind}, {"message", e.what()}}},
                       {"exit_code", static_cast<int>(kNumerical)}};
  err << record.dump() << '\n';
  return kNumerical;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("grid must be min:max:count, got '" + text + "'");
  GridSpec spec;
  spec.min = io::parse_double(parts[0]);
  spec.max = io::parse_double(parts[1]);
  const double count = io::parse_double(parts[2]);
  if (count != std::floor(count) || count < 1 || count > 1e9)
    throw std::invalid_argument("grid count must be a positive integer, got '" + parts[2] + "'");
  spec.count = static_cast<int>(count);
  return spec;
}

std::vector<double> parse_tau_list(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto spec = parse_grid(text);
    if (spec.count > 1 && !(spec.min < spec.max))
      throw std::invalid_argument("tau range needs min < max, got '" + text + "'");
    return linspace(spec.min, spec.max, spec.count);
  }
  std::vector<double> taus;
  for (const auto& part : split(text, ',')) taus.push_back(io::parse_double(part));
  if (taus.empty()) throw std::invalid_argument("empty tau list");
  return taus;
}

std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv,
                                                std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-particle wave packets obtained from oscillator eigenstates by Niederer's map",
               "freewave"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string tau_text;
  std::string grid_text;
  std::string grid2_text;
  std::string format_text = "csv";
  std::string n_list_text;
  int l_value = 0;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--mass", cfg.mass, "particle mass (hbar = 1)");
    sub->add_option("--omega", cfg.omega, "oscillator angular frequency");
    sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
  };
  const auto state = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "oscillator quantum number");
    sub->add_option("--tau", tau_text, "free times: a,b,c or min:max:count");
  };
  const auto tabular = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  const auto gridded = [&](CLI::App* sub) {
    sub->add_option("--grid", grid_text, "grid min:max:count (default: auto-sized)");
    sub->add_option("--count", cfg.count, "node count of the auto-sized grid");
  };

  auto* gen1d = app.add_subcommand("gen1d", "sample the lifted 1D eigenstate");
  common(gen1d); state(gen1d); tabular(gen1d); gridded(gen1d);

  auto* gen2d = app.add_subcommand("gen2d", "sample the lifted 2D state psi_{0,l}");
  common(gen2d); state(gen2d); tabular(gen2d); gridded(gen2d);
  gen2d->add_option("--l", l_value, "angular momentum");
  gen2d->add_option("--grid2", grid2_text, "second-axis grid (default: same as --grid)");

  auto* peaks = app.add_subcommand("peaks", "track density maxima of the lifted 1D eigenstate");
  common(peaks); state(peaks); tabular(peaks); gridded(peaks);
  peaks->add_option("--input", cfg.input_path, "read densities from a gen1d CSV instead");

  auto* envelope = app.add_subcommand("envelope", "envelope of the classical free-trajectory family");
  common(envelope); tabular(envelope);
  envelope->add_option("--tau", tau_text, "free times: a,b,c or min:max:count");
  auto* e_opt = envelope->add_option("--energy", "classical energy");
  auto* en_opt = envelope->add_option("--energy-from-n", "use E_n = omega (n + 1/2)");
  e_opt->excludes(en_opt);
  envelope->add_option("--alpha-count", cfg.alpha_count, "emit tau,alpha,y for this many orbits");

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite, print a JSON report");
  common(verify_cmd); state(verify_cmd);
  verify_cmd->add_option("--l", l_value, "angular momentum (2D suites)");
  verify_cmd->add_option("--suite", cfg.suite, "suite name")->required();
  verify_cmd->add_option("--refinements", cfg.refinements, "grid levels in residual studies");
  verify_cmd->add_option("--n-list", n_list_text, "semiclassical suite: comma-separated n values");

  auto* propagate = app.add_subcommand("propagate", "spectral free propagation of the tau = 0 state");
  common(propagate); state(propagate); tabular(propagate); gridded(propagate);
  propagate->add_flag("--fast", cfg.fast, "radix-2 FFT instead of the direct DFT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen1d->parsed()) cfg.command = Command::gen1d;
    if (gen2d->parsed()) cfg.command = Command::gen2d;
    if (peaks->parsed()) cfg.command = Command::peaks;
    if (envelope->parsed()) cfg.command = Command::envelope;
    if (verify_cmd->parsed()) cfg.command = Command::verify;
    if (propagate->parsed()) cfg.command = Command::propagate;
    if (gen2d->count("--l") || verify_cmd->count("--l")) cfg.l = l_value;
    if (!tau_text.empty()) cfg.taus = parse_tau_list(tau_text);
    if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
    if (!grid2_text.empty()) cfg.grid2 = parse_grid(grid2_text);
    cfg.format = format_text == "json" ? Format::json : Format::csv;
    if (e_opt->count()) cfg.energy = e_opt->as<double>();
    if (en_opt->count()) cfg.energy_from_n = en_opt->as<int>();
    if (!n_list_text.empty())
      for (const auto& part : split(n_list_text, ','))
        cfg.n_values.push_back(static_cast<int>(io::parse_double(part)));
  } catch (const std::exception& e) {
    err << "freewave: " << e.what() << '\n';
    return kUsage;
  }
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Sink sink(config.out_path, out);
    std::ostream& os = sink.get();
    switch (config.command) {
      case Command::gen1d: return run_gen1d(config, os);
      case Command::gen2d: return run_gen2d(config, os);
      case Command::peaks: return run_peaks(config, os);
      case Command::envelope: return run_envelope(config, os);
      case Command::verify: return run_verify(config, os);
      case Command::propagate: return run_propagate(config, os);
    }
    return kUsage;
  } catch (const UsageError& e) {
    err << "freewave: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    return numerical_failure(err, "domain", e);
  } catch (const QuadratureError& e) {
    return numerical_failure(err, "quadrature", e);
  } catch (const PeakDetectionError& e) {
    return numerical_failure(err, "peak_detection", e);
  } catch (const PreconditionError& e) {
    return numerical_failure(err, "precondition", e);
  } catch (const std::invalid_argument& e) {
    err << "freewave: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace freewave::cli
