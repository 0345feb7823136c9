#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "critwalk/er.hpp"
#include "critwalk/errors.hpp"
#include "critwalk/intersection.hpp"
#include "critwalk/io.hpp"
#include "critwalk/oracle.hpp"
#include "critwalk/quantum.hpp"
#include "critwalk/regular.hpp"
#include "critwalk/stats.hpp"
#include "critwalk/walk.hpp"

namespace critwalk::cli {

namespace fs = std::filesystem;

namespace {

std::vector<std::uint32_t> random_order(std::uint32_t n, RngStream& stream) {
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t v = 0; v < n; ++v) order[v] = v;
  for (std::uint32_t i = n; i > 1; --i) std::swap(order[i - 1], order[stream.uniform_index(i)]);
  return order;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write to " + path.string() + " failed");
}

std::string join_sizes(const std::vector<std::uint64_t>& sizes) {
  std::string s = "[";
  for (std::size_t i = 0; i < sizes.size(); ++i) s += (i ? "," : "") + std::to_string(sizes[i]);
  return s + "]";
}

struct OracleCase {
  MaterializedInstance instance;
  std::vector<std::uint64_t> replay;
  std::vector<std::uint64_t> truth;
};

OracleCase oracle_case(const std::string& model, std::uint64_t seed, std::uint64_t index, bool inject_fault) {
  RngStream stream = derive_stream(seed, index);
  OracleCase c;
  if (model == "er") {
    const auto n = static_cast<std::uint32_t>(1 + stream.uniform_index(64));
    const er::ErParams params(n, 0.0, stream.uniform());
    SimpleGraph g = er::materialize(params, stream);
    const auto order = random_order(n, stream);
    c.replay = er::explore_on_graph(g, order).sorted_sizes();
    c.instance = std::move(g);
  } else if (model == "regular") {
    const auto d = static_cast<std::uint32_t>(3 + stream.uniform_index(3));
    auto n = static_cast<std::uint32_t>(2 + stream.uniform_index(63));
    if ((n * d) % 2 != 0) --n;
    ConfigurationInstance inst = regular::pair_full(n, d, stream);
    regular::percolate(inst, stream.uniform(), stream);
    const auto order = random_order(n, stream);
    std::vector<std::uint8_t> marks = inst.retained;
    if (inject_fault) {
      UnionFind uf(n);
      for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
        if (marks[i]) uf.unite(inst.vertex_of(inst.pairs[i].first), inst.vertex_of(inst.pairs[i].second));
      }
      std::size_t flip = 0;
      for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
        if (!marks[i] && uf.find(inst.vertex_of(inst.pairs[i].first)) != uf.find(inst.vertex_of(inst.pairs[i].second))) {
          flip = i;
          break;
        }
      }
      marks[flip] ^= 1;
    }
    c.replay = regular::explore_on_instance(inst, marks, order).sorted_sizes();
    c.instance = std::move(inst);
  } else if (model == "intersection") {
    const auto n = static_cast<std::uint32_t>(2 + stream.uniform_index(63));
    const double beta = 0.5 + 1.5 * stream.uniform();
    const double gamma = 0.5 + 1.5 * stream.uniform();
    BipartiteInstance b = intersection::materialize(intersection::IntersectionParams(n, beta, gamma), stream);
    const auto order = random_order(n, stream);
    c.replay = er::explore_on_graph(b.projection, order).sorted_sizes();
    c.instance = std::move(b);
  } else if (model == "quantum") {
    const auto n = static_cast<std::uint32_t>(1 + stream.uniform_index(24));
    const double beta = 0.5 + 2.5 * stream.uniform();
    const double lambda = 0.3 + 1.7 * stream.uniform();
    QuantumInstance q = quantum::materialize_quantum(quantum::QuantumParams(n, beta, lambda), stream);
    c.replay = quantum::full_explore(q).sorted_sizes();
    c.instance = std::move(q);
  } else {
    throw ParameterError("unknown model '" + model + "' (expected er, regular, intersection or quantum)");
  }
  c.truth = union_find_components(c.instance);
  return c;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParameterError("a-grid: '" + item + "' is not a number");
    }
    if (used != item.size()) throw ParameterError("a-grid: '" + item + "' is not a number");
    grid.push_back(v);
  }
  return grid;
}

harness::ModelSpec build_model(const ExperimentConfig& config) {
  if (config.n == 0) throw ParameterError("n must be positive");
  if (config.model == "er") return er::ErParams(config.n, config.lambda, config.p_override);
  if (config.model == "regular") return regular::RegParams(config.n, config.d, config.lambda, config.p_override);
  if (config.model == "intersection") {
    return intersection::IntersectionParams(config.n, config.beta, config.gamma);
  }
  if (config.model == "quantum") {
    double lambda = config.lambda;
    if (!config.lambda_given) {
      const auto point = quantum::solve_critical_lambda(config.beta);
      if (point.lambda_roots.empty()) {
        throw ParameterError("quantum: no critical lambda exists for this beta (need beta > 1); pass --lambda");
      }
      lambda = point.lambda_roots.back();
    }
    return quantum::QuantumParams(config.n, config.beta, lambda);
  }
  throw ParameterError("model must be one of er, regular, intersection, quantum");
}

void validate(const ExperimentConfig& config) {
  build_model(config);
  if (config.trials < 1) throw ParameterError("trials must be at least 1");
  if (config.workers < 1) throw ParameterError("workers must be at least 1");
  if (config.a_grid.empty()) throw ParameterError("a-grid must list at least one A value");
  for (double a : config.a_grid) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("every A in a-grid must be positive and finite");
  }
  if (config.direction != "lower" && config.direction != "upper" && config.direction != "both") {
    throw ParameterError("direction must be lower, upper or both");
  }
  if (config.format != "csv" && config.format != "json") throw ParameterError("format must be csv or json");
  if (config.simple_only && config.model != "regular") {
    throw ParameterError("simple-only applies to the regular model only");
  }
  if (config.out_dir.empty()) throw ParameterError("out must name a directory");
}

int cmd_tail(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  harness::ModelSpec spec = er::ErParams(1, 0.0);
  try {
    validate(config);
    spec = build_model(config);
  } catch (const std::exception& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  }
  try {
    harness::RunOptions options;
    options.regular_simple_only = config.simple_only;
    const auto summaries = harness::run(spec, config.trials, config.seed, config.workers, options);
    const std::uint64_t n = harness::vertex_count(spec);

    std::vector<harness::TailCurve> curves;
    if (config.direction != "upper") curves.push_back(harness::lower_tail(summaries, n, config.a_grid));
    if (config.direction != "lower") curves.push_back(harness::upper_tail(summaries, n, config.a_grid));

    std::vector<io::FitRecord> fits;
    for (const auto& curve : curves) {
      io::FitRecord record;
      record.direction = curve.direction;
      for (const auto& row : curve.rows) record.usable_rows += (row.phat > 0.0 && row.phat < 1.0) ? 1 : 0;
      try {
        record.fit = harness::fit_stretch_exponent(curve);
      } catch (const FitError& e) {
        record.error = e.what();
      }
      fits.push_back(std::move(record));
    }

    const fs::path dir(config.out_dir);
    fs::create_directories(dir);
    const std::string ext = config.format == "json" ? ".json" : ".csv";
    if (config.format == "json") {
      write_file(dir / "summaries.json", io::summaries_json(summaries));
      write_file(dir / "tail.json", io::tail_json(curves));
    } else {
      std::ostringstream s;
      io::write_summaries_csv(s, summaries);
      write_file(dir / "summaries.csv", s.str());
      std::ostringstream t;
      io::write_tail_csv(t, curves);
      write_file(dir / "tail.csv", t.str());
    }
    write_file(dir / "fit.json", io::fit_json(fits));
    if (config.plot) {
      std::ostringstream data;
      io::write_tail_csv(data, curves);
      write_file(dir / "plot_data.csv", data.str());
      std::ostringstream script;
      io::write_plot_script(script, "plot_data.csv", fits);
      write_file(dir / "plot_tail.py", script.str());
    }

    for (const auto& f : fits) {
      out << harness::direction_name(f.direction) << " tail: ";
      if (f.fit) {
        out << "slope " << io::format_double(f.fit->slope) << " CI [" << io::format_double(f.fit->ci_lo) << ", "
            << io::format_double(f.fit->ci_hi) << "] rows " << f.fit->rows_used << '\n';
      } else {
        out << "no fit (" << f.error << ")\n";
      }
    }
    out << "wrote summaries" << ext << ", tail" << ext << ", fit.json to " << dir.string() << '\n';
    return kSuccess;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

int cmd_oracle_check(const std::string& model, std::uint64_t count, std::uint64_t seed, bool inject_fault,
                     std::ostream& out, std::ostream& err) {
  if (count == 0) {
    err << "invalid configuration: count must be at least 1\n";
    return kInvalidConfig;
  }
  if (model != "er" && model != "regular" && model != "intersection" && model != "quantum") {
    err << "invalid configuration: model must be one of er, regular, intersection, quantum\n";
    return kInvalidConfig;
  }
  if (inject_fault && model != "regular") {
    err << "invalid configuration: fault injection flips a retention bit and needs the regular model\n";
    return kInvalidConfig;
  }
  try {
    for (std::uint64_t i = 0; i < count; ++i) {
      const OracleCase c = oracle_case(model, seed, i, inject_fault);
      if (c.replay != c.truth) {
        out << "mismatch at instance " << i << "\n"
            << "replay " << join_sizes(c.replay) << "\n"
            << "union-find " << join_sizes(c.truth) << "\n"
            << io::instance_to_json(c.instance);
        return kRuntimeFailure;
      }
    }
    out << "oracle-check " << model << ": " << count << " instances, all exact matches\n";
    return kSuccess;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

int cmd_critical(double beta, std::ostream& out, std::ostream& err) {
  quantum::CriticalPoint point;
  try {
    point = quantum::solve_critical_lambda(beta);
  } catch (const ParameterError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  }
  out << io::critical_point_json(point);
  return kSuccess;
}

int cmd_walk(const WalkConfig& c, std::ostream& out, std::ostream& err) {
  walk::IncrementLaw law;
  try {
    if (c.law == "poisson") {
      law = walk::PoissonMinusOne{};
    } else if (c.law == "binomial") {
      law = walk::BinomialMinusOne{c.count, c.prob};
    } else if (c.law == "regular") {
      law = walk::RegularStep{c.d, c.prob};
    } else if (c.law == "cutwalk") {
      law = walk::CutWalk{c.d};
    } else if (c.law == "rademacher") {
      law = walk::Rademacher{};
    } else {
      throw ParameterError("law must be poisson, binomial, regular, cutwalk or rademacher");
    }
    walk::validate(law);
    if (c.trials < 1) throw ParameterError("trials must be at least 1");
    if (c.mode == "stay-positive" || c.mode == "ballot") {
      if (c.horizon < 1) throw ParameterError("horizon must be at least 1");
    } else if (c.mode == "chernoff") {
      walk::chernoff_bound(c.count, c.prob, c.x);
    } else {
      throw ParameterError("mode must be stay-positive, ballot or chernoff");
    }
    if (c.mode == "ballot") {
      if (std::fabs(walk::law_mean(law)) > 1e-12) throw ParameterError("ballot mode needs a centred law");
      if (c.j < 0 && c.j_max < 0) throw ParameterError("ballot mode needs --j or --j-max");
    }
  } catch (const std::exception& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  }
  try {
    RngStream stream = derive_stream(c.seed, 0);
    std::vector<walk::Estimate> estimates;
    if (c.mode == "stay-positive") {
      estimates.push_back(walk::stay_positive_estimate(law, c.horizon, c.trials, stream, c.start));
    } else if (c.mode == "ballot") {
      if (c.j_max >= 0) {
        estimates = walk::ballot_estimates(law, c.horizon, c.j_max, c.trials, stream);
      } else {
        estimates.push_back(walk::ballot_estimate(law, c.horizon, c.j, c.trials, stream));
      }
      for (const auto& e : estimates) {
        if (!e.reachable) err << "note: j=" << e.j << " is unreachable in " << c.horizon << " steps\n";
      }
    } else {
      estimates.push_back(walk::chernoff_exceedance_estimate(c.count, c.prob, c.x, c.trials, stream));
      err << "chernoff bound " << io::format_double(walk::chernoff_bound(c.count, c.prob, c.x)) << '\n';
    }
    io::write_estimates_csv(out, estimates);
    return kSuccess;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

int cmd_simplicity(std::uint64_t n, std::uint32_t d, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                   std::ostream& out, std::ostream& err) {
  if (trials < 1 || n < 1 || d < 1 || workers < 1 || (n * d) % 2 != 0 ||
      n * d > std::numeric_limits<std::uint32_t>::max()) {
    err << "invalid configuration: need trials >= 1, n >= 1, d >= 1, workers >= 1 and d*n even\n";
    return kInvalidConfig;
  }
  try {
    std::vector<std::uint8_t> simple(trials, 0);
    harness::for_each_index(trials, workers, [&](std::uint64_t i) {
      RngStream stream = derive_stream(seed, i);
      simple[i] = regular::is_simple(regular::pair_full(static_cast<std::uint32_t>(n), d, stream)) ? 1 : 0;
    });
    std::uint64_t hits = 0;
    for (auto s : simple) hits += s;
    const Interval ci = wilson_interval(hits, trials);
    const double reference = std::exp((1.0 - static_cast<double>(d) * d) / 4.0);
    out << "n,d,trials,simple,frequency,ci_lo,ci_hi,reference\n"
        << n << ',' << d << ',' << trials << ',' << hits << ','
        << io::format_double(static_cast<double>(hits) / static_cast<double>(trials)) << ','
        << io::format_double(ci.lo) << ',' << io::format_double(ci.hi) << ',' << io::format_double(reference)
        << '\n';
    err << "reference " << (reference >= ci.lo && reference <= ci.hi ? "inside" : "outside") << " the Wilson CI\n";
    return kSuccess;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CRITWALK_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParameterError("CRITWALK_SEED is not an unsigned integer");
  }
  return 1;
}

// Fills every option the command line left unset from a JSON object whose
// keys mirror the long flag names.
void apply_config_file(const std::string& path, CLI::App& sub, ExperimentConfig& config, bool& seed_set) {
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot read config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ParameterError("config file must hold a JSON object");
  auto unset = [&](const char* flag) { return sub.count(std::string("--") + flag) == 0; };
  try {
    for (const auto& [key, value] : j.items()) {
      if (!unset(key.c_str())) continue;
      if (key == "model") config.model = value.get<std::string>();
      else if (key == "n") config.n = value.get<std::uint64_t>();
      else if (key == "lambda") config.lambda = value.get<double>(), config.lambda_given = true;
      else if (key == "d") config.d = value.get<std::uint32_t>();
      else if (key == "beta") config.beta = value.get<double>();
      else if (key == "gamma") config.gamma = value.get<double>();
      else if (key == "p-override") config.p_override = value.get<double>();
      else if (key == "simple-only") config.simple_only = value.get<bool>();
      else if (key == "trials") config.trials = value.get<std::uint64_t>();
      else if (key == "seed") config.seed = value.get<std::uint64_t>(), seed_set = true;
      else if (key == "workers") config.workers = value.get<unsigned>();
      else if (key == "a-grid") {
        config.a_grid = value.is_string() ? parse_grid(value.get<std::string>()) : value.get<std::vector<double>>();
      } else if (key == "direction") config.direction = value.get<std::string>();
      else if (key == "out") config.out_dir = value.get<std::string>();
      else if (key == "format") config.format = value.get<std::string>();
      else if (key == "plot") config.plot = value.get<bool>();
      else throw ParameterError("config file has unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("config file has a mistyped value: " + std::string(e.what()));
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"critwalk: critical random graph exploration and tail estimation"};
  app.require_subcommand(1);

  ExperimentConfig tail;
  std::string grid_text;
  std::string config_path;
  std::optional<double> p_override;
  auto* tail_cmd = app.add_subcommand("tail", "estimate lower/upper tail probabilities and fit the exponent");
  tail_cmd->add_option("--model", tail.model, "er | regular | intersection | quantum");
  tail_cmd->add_option("--n", tail.n, "vertex count");
  tail_cmd->add_option("--lambda", tail.lambda, "window parameter");
  tail_cmd->add_option("--d", tail.d, "degree (regular)");
  tail_cmd->add_option("--beta", tail.beta, "beta (intersection, quantum)");
  tail_cmd->add_option("--gamma", tail.gamma, "gamma (intersection)");
  tail_cmd->add_option("--p-override", p_override, "edge or percolation probability");
  tail_cmd->add_flag("--simple-only", tail.simple_only, "regular: condition on a simple pairing");
  tail_cmd->add_option("--trials", tail.trials, "trial count");
  tail_cmd->add_option("--seed", tail.seed, "master seed (default $CRITWALK_SEED)");
  tail_cmd->add_option("--workers", tail.workers, "worker threads");
  tail_cmd->add_option("--a-grid", grid_text, "comma-separated A values");
  tail_cmd->add_option("--direction", tail.direction, "lower | upper | both");
  tail_cmd->add_option("--out", tail.out_dir, "output directory");
  tail_cmd->add_option("--format", tail.format, "csv | json");
  tail_cmd->add_flag("--plot", tail.plot, "also write a plotting script");
  tail_cmd->add_option("--config", config_path, "JSON file mirroring the flag names");

  std::string oracle_model = "er";
  std::uint64_t oracle_count = 500;
  std::uint64_t oracle_seed = 1;
  bool inject_fault = false;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "replay explorations against union-find");
  oracle_cmd->add_option("--model", oracle_model, "er | regular | intersection | quantum");
  oracle_cmd->add_option("--count", oracle_count, "number of random instances");
  oracle_cmd->add_option("--seed", oracle_seed, "master seed");
  oracle_cmd->add_flag("--inject-fault", inject_fault, "test only: flip one retention bit before replay");

  double critical_beta = 2.0;
  auto* critical_cmd = app.add_subcommand("critical", "solve F(beta, lambda) = 1 for lambda");
  critical_cmd->add_option("--beta", critical_beta, "beta")->required();

  WalkConfig walk_config;
  auto* walk_cmd = app.add_subcommand("walk", "random-walk estimators");
  walk_cmd->add_option("--law", walk_config.law, "poisson | binomial | regular | cutwalk | rademacher");
  walk_cmd->add_option("--mode", walk_config.mode, "stay-positive | ballot | chernoff");
  walk_cmd->add_option("--horizon", walk_config.horizon, "steps T (or n for ballot)");
  walk_cmd->add_option("--j", walk_config.j, "ballot endpoint");
  walk_cmd->add_option("--j-max", walk_config.j_max, "ballot: report every endpoint 0..j-max");
  walk_cmd->add_option("--start", walk_config.start, "stay-positive starting height");
  walk_cmd->add_option("--trials", walk_config.trials, "trial count");
  walk_cmd->add_option("--seed", walk_config.seed, "master seed");
  walk_cmd->add_option("--count", walk_config.count, "binomial count (binomial law, chernoff N)");
  walk_cmd->add_option("--prob", walk_config.prob, "success probability");
  walk_cmd->add_option("--d", walk_config.d, "degree (regular, cutwalk)");
  walk_cmd->add_option("--x", walk_config.x, "chernoff deviation");

  std::uint64_t simp_n = 500;
  std::uint32_t simp_d = 3;
  std::uint64_t simp_trials = 100000;
  std::uint64_t simp_seed = 1;
  unsigned simp_workers = 1;
  auto* simp_cmd = app.add_subcommand("simplicity", "frequency of simple configuration-model pairings");
  simp_cmd->add_option("--n", simp_n, "vertex count");
  simp_cmd->add_option("--d", simp_d, "degree");
  simp_cmd->add_option("--trials", simp_trials, "pairing count");
  simp_cmd->add_option("--seed", simp_seed, "master seed");
  simp_cmd->add_option("--workers", simp_workers, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  }

  std::uint64_t env_seed = 1;
  try {
    env_seed = default_seed();
  } catch (const std::exception& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  }

  if (*tail_cmd) {
    bool seed_set = tail_cmd->count("--seed") > 0;
    tail.lambda_given = tail_cmd->count("--lambda") > 0;
    if (p_override) tail.p_override = p_override;
    try {
      if (!grid_text.empty() || tail_cmd->count("--a-grid")) tail.a_grid = parse_grid(grid_text);
      if (!config_path.empty()) apply_config_file(config_path, *tail_cmd, tail, seed_set);
    } catch (const std::exception& e) {
      err << "invalid configuration: " << e.what() << '\n';
      return kInvalidConfig;
    }
    if (!seed_set) tail.seed = env_seed;
    return cmd_tail(tail, out, err);
  }
  if (*oracle_cmd) {
    if (oracle_cmd->count("--seed") == 0) oracle_seed = env_seed;
    return cmd_oracle_check(oracle_model, oracle_count, oracle_seed, inject_fault, out, err);
  }
  if (*critical_cmd) return cmd_critical(critical_beta, out, err);
  if (*walk_cmd) {
    if (walk_cmd->count("--seed") == 0) walk_config.seed = env_seed;
    return cmd_walk(walk_config, out, err);
  }
  if (*simp_cmd) {
    if (simp_cmd->count("--seed") == 0) simp_seed = env_seed;
    return cmd_simplicity(simp_n, simp_d, simp_trials, simp_seed, simp_workers, out, err);
  }
  return kInvalidConfig;
}

}  // namespace critwalk::cli
