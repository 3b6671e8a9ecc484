// rpdepth: randomized halfspace/projection depth, uniform error bounds,
// direction-count planning and simulation protocols.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "rpdepth/bounds.hpp"
#include "rpdepth/depth.hpp"
#include "rpdepth/io.hpp"
#include "rpdepth/sim.hpp"

namespace {

using namespace rpdepth;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct OutputOptions {
  std::string format = "csv";
  std::string out_path = "-";
  int precision = 6;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", out.out_path, "Output path ('-' = stdout)");
  cmd->add_option("--precision", out.precision, "Significant digits for numbers")
      ->check(CLI::Range(1, 17));
}

void emit(const io::Table& table, const OutputOptions& out) {
  std::ostringstream buffer;
  if (out.format == "json") {
    io::write_json(buffer, table, out.precision);
  } else {
    io::write_csv(buffer, table, out.precision);
  }
  if (out.out_path == "-") {
    std::cout << buffer.str();
  } else {
    std::ofstream f(out.out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out.out_path);
    f << buffer.str();
  }
}

std::vector<long long> parse_ll_list(const std::string& text, const char* what) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      out.push_back(std::stoll(field));
    } catch (...) {
      throw std::runtime_error(std::string("invalid ") + what + " list entry: " + field);
    }
  }
  if (out.empty()) throw std::runtime_error(std::string("empty ") + what + " list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      out.push_back(std::stod(field));
    } catch (...) {
      throw std::runtime_error(std::string("invalid ") + what + " list entry: " + field);
    }
  }
  if (out.empty()) throw std::runtime_error(std::string("empty ") + what + " list");
  return out;
}

// Rebuild a model template for ambient dimension d (the uniform-ball marginal
// depends on d; the Gaussian and Student ones do not, but rebinding is cheap
// and uniform).
Model model_for_dimension(const Model& tmpl, int d) {
  switch (tmpl.family) {
    case Family::gaussian: return Model::gaussian_std(d);
    case Family::student_t: return Model::student_t(d, tmpl.nu);
    case Family::uniform_ball: return Model::uniform_ball(d);
    case Family::p_symmetric: return Model::p_symmetric(d, tmpl.p, tmpl.marginal);
    case Family::elliptical: break;
  }
  throw std::runtime_error("tight modulus needs a spherical model (gaussian, student_t, uniform_ball or 2-symmetric)");
}

Modulus make_modulus(const std::string& name, double p, int d,
                     const std::optional<Model>& model) {
  if (name == "ellipt1") return Modulus::elliptical1();
  if (name == "ellipt2") return Modulus::elliptical2();
  if (name == "psym1") return Modulus::psym1(p, d);
  if (name == "psym2") return Modulus::psym2(p, d);
  if (name == "tight") {
    if (!model) throw std::runtime_error("--modulus tight requires --model");
    return Modulus::tight(model_for_dimension(*model, d));
  }
  throw std::runtime_error("unknown modulus: " + name);
}

// ---- depth ----------------------------------------------------------------

struct DepthArgs {
  std::string data_path, model_path, query_path;
  long long n = 10000;
  std::uint64_t seed = 1;
  std::string kind = "halfspace";
  int k = 2;
  bool header = false;
  OutputOptions out;
};

int run_depth(const DepthArgs& a) {
  if (a.data_path.empty() == a.model_path.empty()) {
    throw std::runtime_error("depth: exactly one of --data / --model is required");
  }
  if (a.n < 1) throw std::runtime_error("depth: --n must be positive");

  std::optional<Dataset> data;
  std::optional<Model> model;
  if (!a.data_path.empty()) {
    data.emplace(io::load_dataset(a.data_path, a.header));
  } else {
    model = io::load_model(a.model_path);
  }
  const int d = data ? data->d() : model->d;

  const DirectionSet dirs = sample_directions(static_cast<int>(a.n), d, a.seed);
  const DepthTarget target = data ? DepthTarget::of(*data) : DepthTarget::of(*model);
  const ProjectionDepthSpec spec{a.k, std::nullopt, nullptr};

  io::Table table;
  table.meta = {{"command", "depth"}, {"kind", a.kind}, {"seed", std::to_string(a.seed)}};
  table.columns = {"index", "depth", "n_directions", "seed", "exact", "gap"};
  long long index = 0;
  auto process = [&](const Vec& x) {
    if (x.size() != d) throw std::runtime_error("depth: query dimension does not match the target");
    double value = 0.0, exact = kNaN;
    if (a.kind == "halfspace") {
      value = approx_halfspace_depth(target, x, dirs).value;
      if (model) exact = exact_halfspace_depth(*model, x);
    } else {
      value = approx_projection_depth(target, x, dirs, spec).value;
      if (model) {
        const double q = model->family == Family::p_symmetric
                             ? conjugate_index(model->p)
                             : 2.0;
        exact = c_transform(lq_norm(x, q) / marginal_mad(*model), a.k);
      }
    }
    table.rows.push_back({static_cast<double>(index++), value, static_cast<double>(a.n),
                          static_cast<double>(a.seed), exact,
                          model ? value - exact : kNaN});
  };

  // CSV query files (and stdin) stream row by row; JSON loads the array.
  const bool json_query = a.query_path.size() >= 5 &&
                          a.query_path.compare(a.query_path.size() - 5, 5, ".json") == 0;
  if (json_query) {
    const Mat queries = io::load_matrix(a.query_path, a.header);
    for (Eigen::Index i = 0; i < queries.rows(); ++i) process(queries.row(i).transpose());
  } else {
    auto row_fn = [&](const std::vector<double>& row) {
      process(Eigen::Map<const Vec>(row.data(), static_cast<Eigen::Index>(row.size())));
    };
    if (a.query_path == "-") {
      io::for_each_csv_row(std::cin, a.header, row_fn);
    } else {
      std::ifstream in(a.query_path);
      if (!in) throw std::runtime_error("cannot open file: " + a.query_path);
      io::for_each_csv_row(in, a.header, row_fn);
    }
  }
  emit(table, a.out);
  return 0;
}

// ---- bound ----------------------------------------------------------------

struct BoundArgs {
  std::string modulus, model_path;
  std::string n_list = "100,1000,10000,100000";
  std::string d_list = "2,3,5,10,20";
  double p = 2.0;
  bool table1 = false;
  OutputOptions out;
};

int run_bound(const BoundArgs& a) {
  io::Table table;
  table.columns = {"block", "n", "d", "value"};
  const auto n_values = parse_ll_list(a.n_list, "--n-list");
  const auto d_values = parse_ll_list(a.d_list, "--d-list");

  if (a.table1) {
    struct Block {
      std::string name;
      std::function<Modulus(int)> modulus;
      std::vector<int> dims;
    };
    const std::vector<int> all_dims = {2, 3, 5, 10, 20};
    const std::vector<Block> blocks = {
        {"Ellipt. 1", [](int) { return Modulus::elliptical1(); }, all_dims},
        {"Ellipt. 2", [](int) { return Modulus::elliptical2(); }, all_dims},
        {"2-sym.", [](int d) { return Modulus::psym1(2.0, d); }, all_dims},
        {"Gaussian", [](int d) { return Modulus::tight(Model::gaussian_std(d)); }, all_dims},
        {"Cauchy", [](int d) { return Modulus::tight(Model::student_t(d, 1)); }, all_dims},
        {"Uniform", [](int d) { return Modulus::tight(Model::uniform_ball(d)); }, {2, 3, 5}},
    };
    const std::vector<long long> table_n = {100, 1000, 10000, 100000};
    table.meta = {{"command", "bound"}, {"preset", "table1"}};
    for (const auto& block : blocks) {
      for (long long n : table_n) {
        for (int d : all_dims) {
          const bool present =
              std::find(block.dims.begin(), block.dims.end(), d) != block.dims.end();
          std::vector<io::Cell> row{block.name, static_cast<double>(n),
                                    static_cast<double>(d), std::string("---")};
          if (present) row[3] = error_bound(n, d, block.modulus(d)).bound;
          table.rows.push_back(std::move(row));
        }
      }
    }
    emit(table, a.out);
    return 0;
  }

  if (a.modulus.empty()) throw std::runtime_error("bound: --modulus (or --table1) is required");
  std::optional<Model> model;
  if (!a.model_path.empty()) model = io::load_model(a.model_path);
  table.meta = {{"command", "bound"}, {"modulus", a.modulus}};
  for (long long n : n_values) {
    for (long long d : d_values) {
      const Modulus m = make_modulus(a.modulus, a.p, static_cast<int>(d), model);
      table.rows.push_back({a.modulus, static_cast<double>(n), static_cast<double>(d),
                            error_bound(n, static_cast<int>(d), m).bound});
    }
  }
  emit(table, a.out);
  return 0;
}

// ---- plan -----------------------------------------------------------------

struct PlanArgs {
  double eps = 0.0;
  long long d = 2;
  std::string modulus = "ellipt1", model_path;
  double p = 2.0;
  long long n_max = 10000000;
  OutputOptions out;
};

int run_plan(const PlanArgs& a) {
  std::optional<Model> model;
  if (!a.model_path.empty()) model = io::load_model(a.model_path);
  const Modulus m = make_modulus(a.modulus, a.p, static_cast<int>(a.d), model);
  const PlanResult plan = plan_directions(a.eps, static_cast<int>(a.d), m, a.n_max);

  io::Table table;
  table.meta = {{"command", "plan"}, {"modulus", a.modulus}};
  table.columns = {"target_eps", "d", "n_required", "achieved_bound"};
  table.rows.push_back({plan.target_epsilon, static_cast<double>(a.d),
                        plan.achievable ? io::Cell{static_cast<double>(plan.n_required)}
                                        : io::Cell{std::string("unachievable")},
                        plan.achieved_bound});
  emit(table, a.out);
  return 0;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string protocol, model_path;
  int runs = 100;
  int points = 500;
  std::string n_grid;
  long long N = 0;
  std::uint64_t seed = 1;
  long long d = 3;
  std::string weights = "0.333333333333,0.333333333333,0.333333333334";
  double S = M_SQRT1_2;  // MAD of the arcsine projection of the uniform circle
  std::string x1_grid = "1,2,5,10,20,50,100";
  double slack = 0.0;
  int k = 2;
  int resolution = 400000;
  OutputOptions out;
};

int run_simulate(const SimulateArgs& a) {
  SimReport report;
  auto grid_or = [&](const char* fallback) {
    return parse_ll_list(a.n_grid.empty() ? fallback : a.n_grid, "--n-grid");
  };

  if (a.protocol == "figure4" || a.protocol == "figure6") {
    if (a.model_path.empty()) throw std::runtime_error("simulate: --model is required for this protocol");
    SimConfig cfg;
    cfg.model = io::load_model(a.model_path);
    cfg.runs = a.runs;
    cfg.points_per_run = a.points;
    cfg.master_seed = a.seed;
    cfg.slack_eps = a.slack;
    cfg.k = a.k;
    if (a.protocol == "figure4") {
      cfg.n_grid = grid_or("100,300,1000");
      report = estimate_sup_error(cfg);
    } else {
      if (a.N < 1) throw std::runtime_error("simulate: figure6 requires --N");
      cfg.N = a.N;
      cfg.n_grid = grid_or("50,100,200,300,500,700,1000");
      report = empirical_trajectory(cfg);
    }
  } else if (a.protocol == "spacing") {
    if (a.d != 2 && a.d != 3) {
      throw std::runtime_error("simulate: the spacing estimator is restricted to d in {2, 3}");
    }
    report = spacing_lil_diagnostic(static_cast<int>(a.d), grid_or("100000"), a.runs,
                                    a.seed, a.resolution);
  } else if (a.protocol == "atomic") {
    report = atomic_nonuniformity_demo(parse_double_list(a.weights, "--weights"),
                                       grid_or("100,1000,10000,100000"), a.seed);
  } else if (a.protocol == "outlyingness") {
    report = outlyingness_divergence_demo(a.S, grid_or("100,1000,10000"),
                                          parse_double_list(a.x1_grid, "--x1-grid"),
                                          a.seed, a.k);
  } else {
    throw std::runtime_error("unknown protocol: " + a.protocol);
  }
  emit(io::report_to_table(report), a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized halfspace/projection depth with uniform error bounds"};
  app.require_subcommand(1);

  DepthArgs depth_args;
  auto* depth_cmd = app.add_subcommand("depth", "Approximate depth of query points");
  depth_cmd->add_option("--data", depth_args.data_path, "Dataset (CSV or JSON array of arrays)");
  depth_cmd->add_option("--model", depth_args.model_path, "Model JSON");
  depth_cmd->add_option("--query", depth_args.query_path, "Query points (CSV/JSON)")->required();
  depth_cmd->add_option("--n", depth_args.n, "Number of random directions");
  depth_cmd->add_option("--seed", depth_args.seed, "Direction seed");
  depth_cmd->add_option("--kind", depth_args.kind, "Depth kind")
      ->check(CLI::IsMember({"halfspace", "projection"}));
  depth_cmd->add_option("--k", depth_args.k, "Exponent of the c_k transform");
  depth_cmd->add_flag("--header", depth_args.header, "Input CSV files carry a header row");
  add_output_options(depth_cmd, depth_args.out);

  BoundArgs bound_args;
  auto* bound_cmd = app.add_subcommand("bound", "Uniform error-bound tables");
  bound_cmd->add_option("--modulus", bound_args.modulus, "ellipt1|ellipt2|psym1|psym2|tight");
  bound_cmd->add_option("--model", bound_args.model_path, "Model JSON (tight modulus)");
  bound_cmd->add_option("--n-list", bound_args.n_list, "Comma list of direction counts");
  bound_cmd->add_option("--d-list", bound_args.d_list, "Comma list of dimensions");
  bound_cmd->add_option("--p", bound_args.p, "p for the p-symmetric moduli");
  bound_cmd->add_flag("--table1", bound_args.table1, "Emit the full preset bound table");
  add_output_options(bound_cmd, bound_args.out);

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "Minimal direction count for a target precision");
  plan_cmd->add_option("--eps", plan_args.eps, "Target precision in (0, 1/2)")->required();
  plan_cmd->add_option("--d", plan_args.d, "Dimension");
  plan_cmd->add_option("--modulus", plan_args.modulus, "ellipt1|ellipt2|psym1|psym2|tight");
  plan_cmd->add_option("--model", plan_args.model_path, "Model JSON (tight modulus)");
  plan_cmd->add_option("--p", plan_args.p, "p for the p-symmetric moduli");
  plan_cmd->add_option("--n-max", plan_args.n_max, "Search cap");
  add_output_options(plan_cmd, plan_args.out);

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo verification protocols");
  sim_cmd->add_option("--protocol", sim_args.protocol,
                      "figure4|figure6|spacing|atomic|outlyingness")->required();
  sim_cmd->add_option("--model", sim_args.model_path, "Model JSON");
  sim_cmd->add_option("--runs", sim_args.runs, "Independent runs");
  sim_cmd->add_option("--points", sim_args.points, "Test points per run");
  sim_cmd->add_option("--n-grid", sim_args.n_grid, "Comma list of direction counts");
  sim_cmd->add_option("--N", sim_args.N, "Empirical sample size (figure6)");
  sim_cmd->add_option("--seed", sim_args.seed, "Master seed");
  sim_cmd->add_option("--d", sim_args.d, "Dimension (spacing)");
  sim_cmd->add_option("--weights", sim_args.weights, "Atom weights (atomic)");
  sim_cmd->add_option("--S", sim_args.S, "Scale constant (outlyingness)");
  sim_cmd->add_option("--x1-grid", sim_args.x1_grid, "x1 grid (outlyingness)");
  sim_cmd->add_option("--slack", sim_args.slack, "Slack epsilon in the figure6 bound");
  sim_cmd->add_option("--k", sim_args.k, "Exponent of the c_k transform");
  sim_cmd->add_option("--resolution", sim_args.resolution, "Spacing probe count");
  add_output_options(sim_cmd, sim_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*depth_cmd) return run_depth(depth_args);
    if (*bound_cmd) return run_bound(bound_args);
    if (*plan_cmd) return run_plan(plan_args);
    if (*sim_cmd) return run_simulate(sim_args);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
