// Experiment runner: exact/noisy subspace-expansion sweeps over the lattice
// Schwinger model, closed-form gate-cost tables, and convergence-law fits,
// all driven by one key = value config file.
//
// Subcommands:
//   model-info  print model dimensions, term counts, and oracle energies
//   sweep       (budget x D x instance) solver grid -> results.csv
//   resources   gate/qubit/runtime tables over an N grid -> resources.csv
//   fit         results.csv -> fitted law, requirements, campaign costs
//
// Exit codes: 0 success, 2 config error, 3 capacity error, 4 numerical
// failure in a mandatory computation.

#include "qk/analysis.hpp"
#include "qk/config.hpp"
#include "qk/csv.hpp"
#include "qk/krylov.hpp"
#include "qk/model.hpp"
#include "qk/noise.hpp"
#include "qk/resources.hpp"
#include "qk/solvers.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNumerical = 4;

constexpr const char* kResultsSchema = "results-v1";
constexpr const char* kResourcesSchema = "resources-v1";
constexpr const char* kRuntimesSchema = "runtimes-v1";
constexpr const char* kMomentsSchema = "moments-v1";
constexpr const char* kNoiseSchema = "noise-v1";
constexpr const char* kFitsSchema = "fits-v1";
constexpr const char* kCampaignSchema = "campaign-v1";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
  return buf;
}

std::string nan_cell() { return "nan"; }

std::string join_partitions(const std::vector<int>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ";";
    out += std::to_string(parts[i]);
  }
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os)
    throw std::runtime_error("cannot open output file: " + path.string());
  return os;
}

void write_manifest(const qk::ExperimentConfig& cfg, const std::string& command,
                    const std::vector<std::string>& files,
                    const std::vector<std::string>& sources = {}) {
  nlohmann::json manifest;
  manifest["command"] = command;
  manifest["digest"] = hex64(cfg.digest());
  manifest["seed"] = cfg.seed;
  manifest["files"] = files;
  if (!sources.empty()) manifest["sources"] = sources;
  manifest["config"] = cfg.raw;
  std::ofstream os =
      open_out(std::filesystem::path(cfg.out_dir) / "manifest.json");
  os << manifest.dump(2) << "\n";
}

double resolved_scale(const qk::ExperimentConfig& cfg) {
  return cfg.scale > 0 ? cfg.scale : double(cfg.model.n_sites);
}

// ---------------------------------------------------------------- model-info

int run_model_info(const qk::ExperimentConfig& cfg) {
  const qk::ModelParams& p = cfg.model;
  const int m = qk::resolved_field_qubits(p);
  std::cout << "n_sites: " << p.n_sites << "\n"
            << "mu: " << p.mu << "\n"
            << "x: " << p.x << "\n"
            << "field_qubits_per_link: " << m << "\n"
            << "field_levels: " << (1LL << m) << "\n"
            << "full_dimension: " << (1LL << p.n_sites) << "\n"
            << "sector_dimension: "
            << qk::balanced_sector_basis(p.n_sites).size() << "\n"
            << "explicit_qubits: " << qk::explicit_qubit_count(p) << "\n"
            << "neel_energy: "
            << qk::csv_double(
                   qk::diagonal_energy(p, qk::neel_config(p.n_sites)))
            << "\n";

  try {
    const qk::PauliOperator h = qk::build_pauli_hamiltonian(p);
    int max_w = 0;
    for (const qk::PauliTerm& t : h.terms)
      max_w = std::max(max_w, t.pauli_weight());
    std::cout << "pauli_terms: " << h.terms.size() << "\n"
              << "pauli_max_weight: " << max_w << "\n";
  } catch (const std::exception& e) {
    std::cout << "pauli_terms: unavailable (" << e.what() << ")\n";
  }

  try {
    const double e_gs = qk::exact_ground_energy(p);
    qk::ModelParams free_limit = p;
    free_limit.x = 0.0;
    const double e0 = qk::exact_ground_energy(free_limit);
    std::cout << "ground_energy: " << qk::csv_double(e_gs) << "\n"
              << "free_ground_energy: " << qk::csv_double(e0) << "\n"
              << "interaction_energy: "
              << qk::csv_double(qk::interaction_energy_scale(p)) << "\n";
  } catch (const std::exception& e) {
    std::cout << "ground_energy: unavailable (" << e.what() << ")\n";
  }
  return kExitOk;
}

// --------------------------------------------------------------------- sweep

struct SweepCell {
  double budget = 0.0;
  int subspace_dim = 0;
  int instance = 0;
};

int run_sweep(const qk::ExperimentConfig& cfg) {
  const qk::ModelParams& p = cfg.model;
  const double scale = resolved_scale(cfg);
  const qk::GaugedOperator op(p);
  const Eigen::VectorXd psi0 = qk::neel_state(p.n_sites);

  int max_d = 1;
  for (int d : cfg.subspace_dims) max_d = std::max(max_d, d);
  const bool noisy = !cfg.noiseless && !cfg.budgets.empty();
  const int k_max = noisy ? 4 * max_d + 2 : std::max(2 * max_d, 2);
  const qk::MomentVector moments =
      qk::compute_moments(op, psi0, k_max, scale);

  const double e_exact = qk::exact_ground_energy(p);
  const double e_int = qk::interaction_energy_scale(p);

  const std::vector<double> budgets =
      noisy ? cfg.budgets : std::vector<double>{0.0};
  const int instances = noisy ? cfg.instances : 1;

  std::vector<SweepCell> cells;
  for (double b : budgets)
    for (int d : cfg.subspace_dims)
      for (int i = 0; i < instances; ++i) cells.push_back({b, d, i});

  auto evaluate = [&](const SweepCell& cell) -> std::vector<std::string> {
    const std::uint64_t row_seed = cfg.seed + std::uint64_t(cell.instance);
    std::vector<std::string> row = {
        std::to_string(p.n_sites),          qk::csv_double(p.mu),
        qk::csv_double(p.x),                std::to_string(cell.subspace_dim),
        qk::csv_double(cell.budget),        std::to_string(row_seed),
        cfg.solver,                         nan_cell(),
        nan_cell(),                         "failed",
        ""};
    try {
      qk::NoiseSample noise;  // empty = exact moments
      if (cell.budget > 0) {
        const qk::ShotAllocation alloc =
            qk::allocate_shots(moments, cell.subspace_dim, cell.budget);
        if (!alloc.exact)
          noise = qk::sample_perturbation(moments, alloc, row_seed, 0);
      }
      qk::EnergyResult result;
      if (cfg.solver == "qse")
        result = qk::qse(qk::perturbed_moments(moments, noise),
                         cell.subspace_dim);
      else if (cfg.solver == "tqse")
        result = qk::tqse(moments, noise, cell.subspace_dim);
      else
        result = qk::pqse(moments, noise, cell.subspace_dim, cfg.d_cap);

      if (result.status != qk::SolveStatus::failed) {
        const double energy = result.energy * scale;
        row[7] = qk::csv_double(energy);
        row[8] = qk::csv_double(std::abs(energy - e_exact) / e_int);
      }
      row[9] = qk::to_string(result.status);
      row[10] = join_partitions(result.partitions);
    } catch (const std::exception&) {
      // per-cell failure: row already carries status "failed"
    }
    return row;
  };

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);

  {  // moments table
    std::ofstream os = open_out(dir / "moments.csv");
    qk::CsvWriter w(os, kMomentsSchema, cfg.digest(), cfg.seed,
                    {"k", "mu_k", "scale"});
    for (int k = 0; k <= moments.k_max(); ++k)
      w.row({std::to_string(k), qk::csv_double(moments.mu[k]),
             qk::csv_double(moments.scale)});
  }

  if (noisy) {  // one demonstration noise draw: first budget/D, instance 0
    const double b0 = budgets.front();
    const int d0 = cfg.subspace_dims.front();
    const qk::ShotAllocation alloc = qk::allocate_shots(moments, d0, b0);
    qk::NoiseSample noise;
    if (!alloc.exact)
      noise = qk::sample_perturbation(moments, alloc, cfg.seed, 0);
    std::ofstream os = open_out(dir / "noise.csv");
    qk::CsvWriter w(os, kNoiseSchema, cfg.digest(), cfg.seed,
                    {"k", "M_k", "sigma_k", "delta_k"});
    for (int i = 0; i < alloc.shots.size(); ++i)
      w.row({std::to_string(i + 1), qk::csv_double(alloc.shots[i]),
             qk::csv_double(noise.sigma.size() > i ? noise.sigma[i] : 0.0),
             qk::csv_double(noise.delta.size() > i ? noise.delta[i] : 0.0)});
  }

  std::ofstream os = open_out(dir / "results.csv");
  qk::CsvWriter writer(os, kResultsSchema, cfg.digest(), cfg.seed,
                       {"N", "mu", "x", "D_or_Dmax", "budget", "seed",
                        "solver", "energy", "frac_error", "status",
                        "partitions"});

  // Cells run on a small pool; rows are flushed strictly in grid order, so
  // the output is byte-identical no matter the worker count.
  std::vector<std::optional<std::vector<std::string>>> slots(cells.size());
  std::atomic<std::size_t> next_cell{0};
  std::mutex mtx;
  std::condition_variable ready;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next_cell.fetch_add(1);
      if (i >= cells.size()) return;
      std::vector<std::string> row = evaluate(cells[i]);
      {
        std::lock_guard<std::mutex> lock(mtx);
        slots[i] = std::move(row);
      }
      ready.notify_one();
    }
  };

  const int n_workers =
      std::max(1, std::min<int>(cfg.workers, int(cells.size())));
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(work);

  {
    std::unique_lock<std::mutex> lock(mtx);
    for (std::size_t next_write = 0; next_write < cells.size();) {
      ready.wait(lock, [&] { return slots[next_write].has_value(); });
      while (next_write < cells.size() && slots[next_write]) {
        writer.row(*slots[next_write]);
        os.flush();
        slots[next_write].reset();
        ++next_write;
      }
    }
  }
  for (std::thread& t : pool) t.join();

  write_manifest(cfg, "sweep",
                 noisy ? std::vector<std::string>{"results.csv", "moments.csv",
                                                  "noise.csv"}
                       : std::vector<std::string>{"results.csv",
                                                  "moments.csv"});
  std::cout << "wrote " << (dir / "results.csv").string() << " ("
            << cells.size() << " rows)\n";
  return kExitOk;
}

// ----------------------------------------------------------------- resources

int run_resources(const qk::ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);

  std::ofstream os = open_out(dir / "resources.csv");
  qk::CsvWriter writer(os, kResourcesSchema, cfg.digest(), cfg.seed,
                       {"N", "m", "construction", "policy", "t", "cnot", "rz",
                        "t_with_rot", "qubits"});

  auto put = [&](int n, int m, const std::string& construction,
                 const std::string& policy, const qk::GateCost& g) {
    writer.row({std::to_string(n), std::to_string(m), construction, policy,
                qk::csv_double(g.t), qk::csv_double(g.cnot),
                qk::csv_double(g.rz), qk::csv_double(g.t_with_rotations),
                std::to_string(g.qubits)});
  };
  auto put_violation = [&](int n, int m, const std::string& construction,
                           const std::string& policy) {
    writer.row({std::to_string(n), std::to_string(m), construction, policy,
                nan_cell(), nan_cell(), nan_cell(), nan_cell(), "0"});
  };
  auto guarded = [&](int n, int m, const std::string& construction,
                     const std::string& policy, auto&& make) {
    try {
      put(n, m, construction, policy, make());
    } catch (const std::invalid_argument&) {
      put_violation(n, m, construction, policy);
    }
  };

  std::ofstream rt_os = open_out(dir / "runtimes.csv");
  qk::CsvWriter rt(rt_os, kRuntimesSchema, cfg.digest(), cfg.seed,
                   {"N", "m", "construction", "processor", "seconds_serial",
                    "seconds_parallel", "fraction_t1", "fraction_t2"});

  for (int n : cfg.n_grid) {
    const int m = cfg.cost.sizing == qk::FieldSizing::compact
                      ? qk::compact_field_qubits(n)
                      : qk::padded_field_qubits(n);
    qk::CostOptions g_tilde = cfg.cost;
    g_tilde.phases_in = qk::PhasesIn::G_tilde;
    qk::CostOptions in_u = cfg.cost;
    in_u.phases_in = qk::PhasesIn::U;

    guarded(n, m, "G", "-", [&] { return qk::cost_G(n, m); });
    guarded(n, m, "G_summation", "-",
            [&] { return qk::cost_G_summation_form(n, m); });
    guarded(n, m, "U", "G_tilde", [&] { return qk::cost_U(n, m, g_tilde); });
    guarded(n, m, "U", "U", [&] { return qk::cost_U(n, m, in_u); });
    guarded(n, m, "projector_rotation", "-",
            [&] { return qk::cost_projector_rotation(n, m, cfg.cost); });

    // One block-encoding step U + projector under the configured options.
    bool have_step = false;
    qk::GateCost step;
    try {
      const qk::GateCost u = qk::cost_U(n, m, cfg.cost);
      const qk::GateCost proj = qk::cost_projector_rotation(n, m, cfg.cost);
      step.t = u.t + proj.t;
      step.cnot = u.cnot + proj.cnot;
      step.rz = u.rz + proj.rz;
      step.t_with_rotations = u.t_with_rotations + proj.t_with_rotations;
      step.qubits = 3LL * (n + (long long)m * (n - 1)) + m + 1;
      put(n, m, "step", qk::to_string(cfg.cost.phases_in), step);
      have_step = true;
    } catch (const std::invalid_argument&) {
      put_violation(n, m, "step", qk::to_string(cfg.cost.phases_in));
    }
    guarded(n, m, "algorithm_k" + std::to_string(cfg.k_steps), "-",
            [&] { return qk::algorithm_cost(n, cfg.k_steps, cfg.cost); });

    for (qk::ToffoliPolicy policy :
         {qk::ToffoliPolicy::all_to_all_multi_ancilla,
          qk::ToffoliPolicy::all_to_all_one_ancilla,
          qk::ToffoliPolicy::linear_nearest_neighbour}) {
      guarded(n, m, "toffoli_m_plus_2", qk::to_string(policy), [&] {
        return qk::toffoli_cost(m + 2, 2 * (m + 2), policy);
      });
    }

    if (have_step) {
      for (const qk::ProcessorSpec& proc : qk::reference_processors()) {
        const qk::RuntimeEstimate serial =
            qk::hardware_runtime(step, proc, false, step.qubits);
        const qk::RuntimeEstimate parallel =
            qk::hardware_runtime(step, proc, true, step.qubits);
        rt.row({std::to_string(n), std::to_string(m), "step", proc.name,
                qk::csv_double(serial.seconds),
                qk::csv_double(parallel.seconds),
                serial.fraction_t1 ? qk::csv_double(*serial.fraction_t1) : "",
                qk::csv_double(serial.fraction_t2)});
      }
    }
  }

  write_manifest(cfg, "resources", {"resources.csv", "runtimes.csv"});
  std::cout << "wrote " << (dir / "resources.csv").string() << " and "
            << (dir / "runtimes.csv").string() << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------------- fit

struct ResultRow {
  int n_sites = 0;
  int subspace_dim = 0;
  double budget = 0.0;
  double frac_error = 0.0;
  std::string status;
};

int run_fit(const qk::ExperimentConfig& cfg,
            const std::vector<std::string>& inputs) {
  if (inputs.empty())
    throw qk::ConfigError("fit: no input CSV files given");

  std::vector<ResultRow> rows;
  for (const std::string& path : inputs) {
    const qk::CsvTable table = qk::read_csv(path);
    if (table.rows.empty())
      throw std::runtime_error("fit: input has no data rows: " + path);
    const int c_n = table.column("N");
    const int c_d = table.column("D_or_Dmax");
    const int c_b = table.column("budget");
    const int c_f = table.column("frac_error");
    const int c_s = table.column("status");
    if (c_n < 0 || c_d < 0 || c_b < 0 || c_f < 0 || c_s < 0)
      throw std::runtime_error("fit: input missing results columns: " + path);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      ResultRow row;
      row.n_sites = int(table.number(r, c_n));
      row.subspace_dim = int(table.number(r, c_d));
      row.budget = table.number(r, c_b);
      row.frac_error = table.number(r, c_f);
      row.status = table.rows[r][c_s];
      rows.push_back(row);
    }
  }

  qk::FitKind kind = qk::FitKind::loglog_in_calls;
  if (cfg.fit_kind == "loglinear_in_D") kind = qk::FitKind::loglinear_in_D;
  else if (cfg.fit_kind == "linear") kind = qk::FitKind::linear;

  std::map<int, std::vector<ResultRow>> by_n;
  for (const ResultRow& r : rows) by_n[r.n_sites].push_back(r);

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  std::ofstream fits_os = open_out(dir / "fits.csv");
  qk::CsvWriter fits(fits_os, kFitsSchema, cfg.digest(), cfg.seed,
                     {"N", "kind", "chi", "lambda", "chi_se", "lambda_se",
                      "r_squared", "n_points", "target", "requirement",
                      "requirement_se"});
  std::ofstream camp_os = open_out(dir / "campaign.csv");
  qk::CsvWriter camp(camp_os, kCampaignSchema, cfg.digest(), cfg.seed,
                     {"N", "target", "required_calls", "required_calls_se",
                      "t", "cnot", "rz", "t_with_rot", "qubits"});

  for (const auto& [n, group] : by_n) {
    std::vector<qk::SweepPoint> points;
    if (kind == qk::FitKind::loglinear_in_D) {
      for (const ResultRow& r : group) {
        if (r.status != "ok" || !(r.frac_error > 0)) continue;
        qk::SweepPoint pt;
        pt.n_sites = n;
        pt.control = r.subspace_dim;
        pt.frac_error = r.frac_error;
        pt.subspace_dim = r.subspace_dim;
        points.push_back(pt);
      }
    } else {
      std::map<std::pair<double, int>, std::vector<double>> cells;
      for (const ResultRow& r : group) {
        if (r.status == "failed" || std::isnan(r.frac_error)) continue;
        cells[{r.budget, r.subspace_dim}].push_back(r.frac_error);
      }
      std::vector<qk::SweepPoint> medians;
      for (const auto& [key, errors] : cells) {
        qk::SweepPoint pt;
        pt.n_sites = n;
        pt.control = key.first;
        pt.subspace_dim = key.second;
        pt.frac_error = qk::median_of(errors);
        pt.quartiles = qk::quartiles_of(errors);
        medians.push_back(pt);
      }
      points = qk::best_median_curve(medians);
    }
    if (points.size() < 2)
      throw std::runtime_error("fit: insufficient points for N = " +
                               std::to_string(n));

    const qk::FitModel model = qk::fit(points, kind);
    std::cout << "N=" << n << " kind=" << qk::to_string(kind)
              << " chi=" << model.chi << " (se " << model.chi_se << ")"
              << " lambda=" << model.lambda << " (se " << model.lambda_se
              << ") R2=" << model.r_squared << " points=" << model.n_points
              << "\n";

    for (double target : cfg.target_errors) {
      const qk::Requirement req =
          qk::extrapolate_requirement(model, target);
      fits.row({std::to_string(n), qk::to_string(kind),
                qk::csv_double(model.chi), qk::csv_double(model.lambda),
                qk::csv_double(model.chi_se), qk::csv_double(model.lambda_se),
                qk::csv_double(model.r_squared),
                std::to_string(model.n_points), qk::csv_double(target),
                qk::csv_double(req.value), qk::csv_double(req.se)});
      std::cout << "  target " << target << " -> requirement " << req.value
                << " (se " << req.se << ")\n";
      if (kind == qk::FitKind::loglog_in_calls) {
        const qk::GateCost cost = qk::campaign_cost(n, req.value, cfg.cost);
        camp.row({std::to_string(n), qk::csv_double(target),
                  qk::csv_double(req.value), qk::csv_double(req.se),
                  qk::csv_double(cost.t), qk::csv_double(cost.cnot),
                  qk::csv_double(cost.rz),
                  qk::csv_double(cost.t_with_rotations),
                  std::to_string(cost.qubits)});
      }
    }
  }

  write_manifest(cfg, "fit", {"fits.csv", "campaign.csv"}, inputs);
  return kExitOk;
}

// ---------------------------------------------------------------------- main

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  int workers = 0;
  long long seed = -1;
  bool noiseless = false;
};

void add_common(CLI::App* sub, CommonFlags* flags) {
  sub->add_option("--config", flags->config_path,
                  "config file of key = value lines");
  sub->add_option("--out", flags->out_dir, "output directory");
  sub->add_option("--workers", flags->workers, "worker thread count");
  sub->add_option("--seed", flags->seed, "seed base");
  sub->add_flag("--noiseless", flags->noiseless,
                "zero-noise sweep (exact moments)");
}

qk::ExperimentConfig load_config(const CommonFlags& flags) {
  qk::ExperimentConfig cfg = flags.config_path.empty()
                                 ? qk::parse_config_text("")
                                 : qk::parse_config_file(flags.config_path);
  if (!flags.out_dir.empty()) {
    cfg.out_dir = flags.out_dir;
    cfg.raw["out_dir"] = flags.out_dir;
  }
  if (flags.workers > 0) {
    cfg.workers = flags.workers;
    cfg.raw["workers"] = std::to_string(flags.workers);
  }
  if (flags.seed >= 0) {
    cfg.seed = std::uint64_t(flags.seed);
    cfg.raw["seed"] = std::to_string(flags.seed);
  }
  if (flags.noiseless) {
    cfg.noiseless = true;
    cfg.raw["noiseless"] = "true";
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subspace-expansion emulator and fault-tolerant gate-cost "
               "calculator for the lattice Schwinger model"};
  app.require_subcommand(1);
  CommonFlags flags;

  CLI::App* cmd_info =
      app.add_subcommand("model-info", "print model dimensions and energies");
  add_common(cmd_info, &flags);
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "run the (budget x D x instance) grid");
  add_common(cmd_sweep, &flags);
  CLI::App* cmd_resources =
      app.add_subcommand("resources", "emit gate-cost and runtime tables");
  add_common(cmd_resources, &flags);
  CLI::App* cmd_fit =
      app.add_subcommand("fit", "fit sweep results and extrapolate");
  add_common(cmd_fit, &flags);
  std::vector<std::string> fit_inputs;
  cmd_fit->add_option("inputs", fit_inputs, "sweep results.csv files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const qk::ExperimentConfig cfg = load_config(flags);
    if (cmd_info->parsed()) return run_model_info(cfg);
    if (cmd_sweep->parsed()) return run_sweep(cfg);
    if (cmd_resources->parsed()) return run_resources(cfg);
    if (cmd_fit->parsed()) return run_fit(cfg, fit_inputs);
    std::cerr << "no subcommand selected\n";
    return kExitConfig;
  } catch (const qk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    const std::string what = e.what();
    if (what.find("cap") != std::string::npos) {
      std::cerr << "capacity error: " << what << "\n";
      return kExitCapacity;
    }
    std::cerr << "error: " << what << "\n";
    return kExitNumerical;
  }
}
