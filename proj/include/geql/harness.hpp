#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>

#include "geql/agents.hpp"
#include "geql/envs/blackjack.hpp"
#include "geql/envs/gridworld.hpp"
#include "geql/envs/nchain.hpp"
#include "geql/envs/terrain.hpp"

namespace geql {

enum class Task { blackjack, nchain, gridworld, hillclimb };

inline std::string task_name(Task task) {
  switch (task) {
    case Task::blackjack: return "blackjack";
    case Task::nchain: return "nchain";
    case Task::gridworld: return "gridworld";
    default: return "hillclimb";
  }
}

inline Task parse_task(const std::string& name) {
  if (name == "blackjack") return Task::blackjack;
  if (name == "nchain") return Task::nchain;
  if (name == "gridworld") return Task::gridworld;
  if (name == "hillclimb") return Task::hillclimb;
  throw std::invalid_argument("unknown task: " + name);
}

/// One cell of the experiment grid, parsed from names such as
/// "booster-iauu", "linear-uniform", "tabular-iauu-mix" or "rmax".
struct AgentSpec {
  std::string name;
  ApproxKind approx = ApproxKind::booster;
  ExploreKind explore = ExploreKind::uniform;
  bool is_tabular = false;
  TabularVariant tabular_variant = TabularVariant::uniform;
  bool is_rmax = false;

  std::string approx_label() const {
    if (is_rmax) return "rmax";
    if (is_tabular) return "tabular";
    switch (approx) {
      case ApproxKind::booster: return "booster";
      case ApproxKind::linear: return "linear";
      case ApproxKind::batchboost: return "batchboost";
      default: return "forest";
    }
  }

  std::string explore_label() const {
    if (is_rmax) return "none";
    if (is_tabular) {
      switch (tabular_variant) {
        case TabularVariant::uniform: return "uniform";
        case TabularVariant::iauu: return "iauu";
        case TabularVariant::iauu_mix: return "iauu-mix";
        default: return "iauu-explore-counts";
      }
    }
    return explore == ExploreKind::iauu ? "iauu" : "uniform";
  }
};

inline AgentSpec parse_agent(const std::string& name) {
  AgentSpec spec;
  spec.name = name;
  if (name == "rmax") {
    spec.is_rmax = true;
    return spec;
  }
  const auto dash = name.find('-');
  if (dash == std::string::npos) {
    throw std::invalid_argument("agent must be <approximator>-<exploration>: " + name);
  }
  const std::string head = name.substr(0, dash);
  const std::string tail = name.substr(dash + 1);
  if (head == "tabular") {
    spec.is_tabular = true;
    if (tail == "uniform") spec.tabular_variant = TabularVariant::uniform;
    else if (tail == "iauu") spec.tabular_variant = TabularVariant::iauu;
    else if (tail == "iauu-mix") spec.tabular_variant = TabularVariant::iauu_mix;
    else if (tail == "iauu-explore-counts")
      spec.tabular_variant = TabularVariant::iauu_explore_counts;
    else throw std::invalid_argument("unknown tabular variant: " + tail);
    return spec;
  }
  if (head == "booster") spec.approx = ApproxKind::booster;
  else if (head == "linear") spec.approx = ApproxKind::linear;
  else if (head == "batchboost") spec.approx = ApproxKind::batchboost;
  else if (head == "forest") spec.approx = ApproxKind::forest;
  else throw std::invalid_argument("unknown approximator: " + head);
  if (tail == "uniform") spec.explore = ExploreKind::uniform;
  else if (tail == "iauu") spec.explore = ExploreKind::iauu;
  else throw std::invalid_argument("unknown exploration: " + tail);
  return spec;
}

inline std::vector<AgentSpec> parse_agent_list(const std::string& csv) {
  std::vector<AgentSpec> agents;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string item =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) agents.push_back(parse_agent(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (agents.empty()) throw std::invalid_argument("empty agent list");
  return agents;
}

/// Every experiment hyperparameter. Zeros mean "use the task default"
/// (batch cadence, cluster count, episode caps).
struct HarnessConfig {
  double epsilon0 = 0.4;
  double alpha0 = 0.15;
  double decay = 0.04;
  double gamma = 0.95;
  double rho = 1.0;
  int clusters = 0;
  int tree_depth = 2;
  int batch_period = 0;
  int batch_window = 0;
  int max_steps = 0;
  IauuVariant iauu_variant = IauuVariant::plain;
  bool persist_counts = true;
  int chain_n = 5;
  double chain_slip = 0.2;
  int terrain_size = 64;
  TerrainParams terrain;
  int codebook_size = 10;
  long codebook_steps = 4000;
  long collapser_steps = 8000;
  int sample_every = 20;
  long collapser_samples = 5000;  // non-visual corpus size (every state kept)
  int rmax_known_threshold = 5;
  double rmax_r_max = 100.0;
  double rmax_tolerance = 1e-4;
};

struct ExperimentSpec {
  Task task = Task::nchain;
  std::vector<AgentSpec> agents;
  int trials = 1;
  int episodes = 0;  // 0: task default
  std::string out_dir;
  std::uint64_t master_seed = 1;
  HarnessConfig config;
  int threads = 0;  // 0: hardware concurrency
};

inline int default_episodes(Task task) {
  switch (task) {
    case Task::blackjack: return 500;
    default: return 100;
  }
}

inline int default_max_steps(Task task) {
  switch (task) {
    case Task::blackjack: return 25;  // hands end on their own well before this
    case Task::nchain: return 50;
    default: return 80;
  }
}

inline int default_clusters(Task task) {
  switch (task) {
    case Task::blackjack: return 16;
    case Task::nchain: return 0;  // phi is the identity on chain states
    default: return 64;
  }
}

inline int default_batch_period(Task task) {
  return task == Task::blackjack ? 50 : 5;
}

struct TrialSeries {
  std::vector<double> rewards;
  std::vector<double> running_avg;
  std::vector<std::vector<double>> elevations;  // hillclimb only, per episode
};

struct AgentResult {
  AgentSpec spec;
  std::vector<TrialSeries> trials;
};

struct ResultTable {
  Task task = Task::nchain;
  int trials = 0;
  int episodes = 0;
  std::vector<AgentResult> agents;
};

inline std::vector<double> running_average(const std::vector<double>& rewards) {
  std::vector<double> avg(rewards.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < rewards.size(); ++t) {
    sum += rewards[t];
    avg[t] = sum / static_cast<double>(t + 1);
  }
  return avg;
}

inline double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

inline double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double sum = 0.0;
  for (double x : xs) sum += (x - m) * (x - m);
  return sum / static_cast<double>(xs.size() - 1);
}

namespace detail {

// Regularized incomplete beta via the standard continued fraction.
inline double beta_continued_fraction(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-12) break;
  }
  return h;
}

inline double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

}  // namespace detail

/// Two-sided Welch's t-test p-value; NaN when both variances vanish.
inline double welch_p_value(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double va = sample_variance(a) / static_cast<double>(a.size());
  const double vb = sample_variance(b) / static_cast<double>(b.size());
  if (va + vb <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double t = (mean_of(a) - mean_of(b)) / std::sqrt(va + vb);
  const double df = (va + vb) * (va + vb) /
                    (va * va / (a.size() - 1.0) + vb * vb / (b.size() - 1.0));
  const double x = df / (df + t * t);
  return detail::regularized_incomplete_beta(df / 2.0, 0.5, x);
}

/// Records the relative elevation after every step of every episode of a
/// hill-climbing trial.
class ElevationRecorder : public Environment {
 public:
  explicit ElevationRecorder(HillClimbEnv& inner) : inner_(&inner) {}

  int observation_dim() const override { return inner_->observation_dim(); }
  int action_count() const override { return inner_->action_count(); }
  int state_count() const override { return inner_->state_count(); }
  int state_id() const override { return inner_->state_id(); }

  FeatureVector reset(Rng& rng) override {
    FeatureVector obs = inner_->reset(rng);
    start_elevation_ = inner_->elevation();
    episodes_.emplace_back();
    return obs;
  }

  StepResult step(ActionId action, Rng& rng) override {
    StepResult r = inner_->step(action, rng);
    episodes_.back().push_back(
        static_cast<double>(inner_->elevation() - start_elevation_));
    return r;
  }

  const std::vector<std::vector<double>>& episodes() const { return episodes_; }

 private:
  HillClimbEnv* inner_;
  int start_elevation_ = 0;
  std::vector<std::vector<double>> episodes_;
};

/// Mean relative elevation at each step index, per contiguous episode group
/// (quartiles in the paper's elevation-profile figure).
inline std::vector<std::vector<double>> elevation_profile(
    const std::vector<std::vector<double>>& episode_elevations, int groups = 4) {
  if (groups < 1) throw std::invalid_argument("elevation_profile: groups must be >= 1");
  const int episodes = static_cast<int>(episode_elevations.size());
  std::vector<std::vector<double>> profiles(groups);
  for (int g = 0; g < groups; ++g) {
    const int lo = episodes * g / groups;
    const int hi = episodes * (g + 1) / groups;
    if (lo >= hi) throw std::invalid_argument("elevation_profile: empty episode group");
    std::size_t steps = 0;
    for (int e = lo; e < hi; ++e) steps = std::max(steps, episode_elevations[e].size());
    std::vector<double> mean(steps, 0.0);
    std::vector<int> count(steps, 0);
    for (int e = lo; e < hi; ++e) {
      for (std::size_t s = 0; s < episode_elevations[e].size(); ++s) {
        mean[s] += episode_elevations[e][s];
        ++count[s];
      }
    }
    for (std::size_t s = 0; s < steps; ++s) mean[s] /= std::max(1, count[s]);
    profiles[g] = std::move(mean);
  }
  return profiles;
}

/// Shared per-task assets built once per experiment, before any trial runs.
struct TaskAssets {
  std::optional<HeightWorld> world;          // visual tasks
  std::optional<StateCollapser> codebook;    // visual tasks
  std::optional<StateCollapser> collapser;   // IAUU tasks with feature states
};

inline TaskAssets build_task_assets(const ExperimentSpec& spec) {
  const HarnessConfig& cfg = spec.config;
  TaskAssets assets;
  const int clusters =
      cfg.clusters > 0 ? cfg.clusters : default_clusters(spec.task);
  Rng codebook_rng(derive_seed(spec.master_seed, 0x636f6465));
  Rng collapser_rng(derive_seed(spec.master_seed, 0x636c7573));

  switch (spec.task) {
    case Task::nchain:
      break;  // tabular ids, no offline artifacts
    case Task::blackjack: {
      BlackjackEnv env;
      assets.collapser = build_collapser_from_random_policy(
          env, cfg.collapser_samples, 1, clusters, collapser_rng);
      break;
    }
    case Task::gridworld: {
      assets.codebook = GridWorldEnv::build_codebook(
          cfg.codebook_steps, cfg.sample_every, cfg.codebook_size, codebook_rng);
      GridWorldEnv env(*assets.codebook);
      assets.world = env.world();
      assets.collapser = build_collapser_from_random_policy(
          env, cfg.collapser_steps, cfg.sample_every, clusters, collapser_rng);
      break;
    }
    case Task::hillclimb: {
      assets.world = generate_terrain(derive_seed(spec.master_seed, 0x7465726e),
                                      cfg.terrain_size, cfg.terrain);
      assets.codebook = HillClimbEnv::build_codebook(
          *assets.world, cfg.codebook_steps, cfg.sample_every, cfg.codebook_size,
          codebook_rng);
      HillClimbEnv env(*assets.world, *assets.codebook);
      assets.collapser = build_collapser_from_random_policy(
          env, cfg.collapser_steps, cfg.sample_every, clusters, collapser_rng);
      break;
    }
  }
  return assets;
}

inline std::unique_ptr<Environment> make_environment(Task task,
                                                     const HarnessConfig& cfg,
                                                     const TaskAssets& assets) {
  switch (task) {
    case Task::blackjack: return std::make_unique<BlackjackEnv>();
    case Task::nchain: return std::make_unique<NChainEnv>(cfg.chain_n, cfg.chain_slip);
    case Task::gridworld: return std::make_unique<GridWorldEnv>(*assets.codebook);
    default: return std::make_unique<HillClimbEnv>(*assets.world, *assets.codebook);
  }
}

inline AgentConfig make_agent_config(const AgentSpec& agent, const ExperimentSpec& spec,
                                     int episodes, int max_steps, std::uint64_t seed) {
  const HarnessConfig& cfg = spec.config;
  AgentConfig out;
  out.approx = agent.approx;
  out.explore = agent.explore;
  out.schedule = {cfg.epsilon0, cfg.alpha0, cfg.decay};
  out.gamma = cfg.gamma;
  out.episodes = episodes;
  out.max_steps = max_steps;
  out.tree = {cfg.tree_depth, 1};
  out.batch_period = cfg.batch_period > 0 ? cfg.batch_period : default_batch_period(spec.task);
  out.batch_window = cfg.batch_window > 0 ? cfg.batch_window : out.batch_period;
  out.iauu = {cfg.rho, cfg.iauu_variant, !cfg.persist_counts};
  out.seed = seed;
  return out;
}

inline std::uint64_t trial_seed(const ExperimentSpec& spec, const AgentSpec& agent,
                                int trial) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : agent.name) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return derive_seed(spec.master_seed, h ^ (static_cast<std::uint64_t>(trial) << 32));
}

/// Runs one (agent, trial) cell and returns its reward series.
inline TrialSeries run_trial(const ExperimentSpec& spec, const TaskAssets& assets,
                             const AgentSpec& agent, int trial) {
  const int episodes =
      spec.episodes > 0 ? spec.episodes : default_episodes(spec.task);
  const int max_steps = spec.config.max_steps > 0 ? spec.config.max_steps
                                                  : default_max_steps(spec.task);
  const std::uint64_t seed = trial_seed(spec, agent, trial);

  TrialSeries series;
  std::unique_ptr<Environment> env = make_environment(spec.task, spec.config, assets);

  TrainResult result;
  if (agent.is_rmax) {
    RMaxConfig rmax{spec.config.rmax_known_threshold, spec.config.rmax_r_max,
                    spec.config.rmax_tolerance, spec.config.gamma};
    result = train_rmax(*env, rmax, episodes, max_steps, seed);
  } else if (agent.is_tabular) {
    AgentConfig cfg = make_agent_config(agent, spec, episodes, max_steps, seed);
    result = train_tabular(*env, cfg, agent.tabular_variant);
  } else {
    AgentConfig cfg = make_agent_config(agent, spec, episodes, max_steps, seed);
    cfg.approx = agent.approx;
    cfg.explore = agent.explore;
    const StateCollapser* collapser =
        assets.collapser ? &*assets.collapser : nullptr;
    if (spec.task == Task::hillclimb) {
      auto* hill = dynamic_cast<HillClimbEnv*>(env.get());
      ElevationRecorder recorder(*hill);
      result = train_approximator(recorder, cfg, collapser);
      series.elevations = recorder.episodes();
    } else {
      result = train_approximator(*env, cfg, collapser);
    }
  }
  series.rewards = std::move(result.episode_rewards);
  series.running_avg = running_average(series.rewards);
  return series;
}

/// Executes the full grid: agents x trials, dispatched to a small worker
/// pool. Results are deterministic for a fixed master seed regardless of
/// scheduling; any trial failure aborts the experiment with the trial's seed
/// in the error message.
inline ResultTable run_experiment(const ExperimentSpec& spec, const TaskAssets& assets) {
  if (spec.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (spec.agents.empty()) throw std::invalid_argument("run_experiment: no agents");
  for (const AgentSpec& agent : spec.agents) {
    if ((agent.is_tabular || agent.is_rmax) && spec.task != Task::nchain) {
      throw std::invalid_argument("agent " + agent.name +
                                  " requires a discrete-state task (nchain)");
    }
  }

  ResultTable table;
  table.task = spec.task;
  table.trials = spec.trials;
  table.episodes = spec.episodes > 0 ? spec.episodes : default_episodes(spec.task);
  table.agents.resize(spec.agents.size());
  for (std::size_t a = 0; a < spec.agents.size(); ++a) {
    table.agents[a].spec = spec.agents[a];
    table.agents[a].trials.resize(spec.trials);
  }

  const int total_jobs = static_cast<int>(spec.agents.size()) * spec.trials;
  const int workers = std::max(
      1, spec.threads > 0 ? spec.threads
                          : static_cast<int>(std::thread::hardware_concurrency()));
  std::atomic<int> next_job{0};
  std::vector<std::string> failures(total_jobs);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int job = next_job.fetch_add(1);
        if (job >= total_jobs) return;
        const int agent_index = job / spec.trials;
        const int trial = job % spec.trials;
        try {
          table.agents[agent_index].trials[trial] =
              run_trial(spec, assets, spec.agents[agent_index], trial);
        } catch (const std::exception& e) {
          failures[job] = "agent " + spec.agents[agent_index].name + " trial " +
                          std::to_string(trial) + " (seed " +
                          std::to_string(trial_seed(spec, spec.agents[agent_index], trial)) +
                          "): " + e.what();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::string& failure : failures) {
    if (!failure.empty()) throw std::runtime_error("trial failed: " + failure);
  }
  return table;
}

inline ResultTable run_experiment(const ExperimentSpec& spec) {
  return run_experiment(spec, build_task_assets(spec));
}

inline void write_results_csv(const ResultTable& table, std::ostream& os) {
  os << "agent,exploration,trial,episode,reward,running_avg\n";
  char line[160];
  for (const AgentResult& agent : table.agents) {
    const std::string approx = agent.spec.approx_label();
    const std::string explore = agent.spec.explore_label();
    for (int trial = 0; trial < static_cast<int>(agent.trials.size()); ++trial) {
      const TrialSeries& series = agent.trials[trial];
      for (std::size_t e = 0; e < series.rewards.size(); ++e) {
        std::snprintf(line, sizeof line, "%s,%s,%d,%zu,%.6f,%.6f\n", approx.c_str(),
                      explore.c_str(), trial, e + 1, series.rewards[e],
                      series.running_avg[e]);
        os << line;
      }
    }
  }
}

/// Final running-average reward per trial: the quantity the paper's learning
/// curves end at, and the sample the significance tests run on.
inline std::vector<double> final_running_averages(const AgentResult& agent) {
  std::vector<double> finals;
  finals.reserve(agent.trials.size());
  for (const TrialSeries& series : agent.trials) {
    finals.push_back(series.running_avg.empty() ? 0.0 : series.running_avg.back());
  }
  return finals;
}

inline std::string summarize(const ResultTable& table) {
  std::ostringstream os;
  os << "task: " << task_name(table.task) << "  trials: " << table.trials
     << "  episodes: " << table.episodes << "\n\n";
  os << "final running-average reward (mean over trials +/- 2 standard errors)\n";
  char line[160];
  for (const AgentResult& agent : table.agents) {
    const std::vector<double> finals = final_running_averages(agent);
    const double mean = mean_of(finals);
    const double se = finals.size() > 1
                          ? std::sqrt(sample_variance(finals) /
                                      static_cast<double>(finals.size()))
                          : 0.0;
    std::snprintf(line, sizeof line, "  %-28s %10.4f +/- %.4f\n", agent.spec.name.c_str(),
                  mean, 2.0 * se);
    os << line;
  }
  if (table.trials >= 2 && table.agents.size() >= 2) {
    os << "\npairwise Welch t-test p-values (final running averages)\n";
    for (std::size_t i = 0; i < table.agents.size(); ++i) {
      for (std::size_t j = i + 1; j < table.agents.size(); ++j) {
        const double p = welch_p_value(final_running_averages(table.agents[i]),
                                       final_running_averages(table.agents[j]));
        os << "  " << table.agents[i].spec.name << " vs "
           << table.agents[j].spec.name << ": ";
        if (std::isnan(p)) {
          os << "undefined (degenerate variance)\n";
        } else {
          std::snprintf(line, sizeof line, "p = %.6g%s\n", p,
                        p < 0.05 ? "  (significant at 0.05)" : "");
          os << line;
        }
      }
    }
  }
  return os.str();
}

/// Quartile elevation profiles for one agent, episodes grouped by index and
/// pooled across trials.
inline std::vector<std::vector<double>> agent_elevation_profiles(
    const AgentResult& agent, int episodes, int groups = 4) {
  std::vector<std::vector<double>> profiles(groups);
  for (int g = 0; g < groups; ++g) {
    const int lo = episodes * g / groups;
    const int hi = episodes * (g + 1) / groups;
    std::size_t steps = 0;
    for (const TrialSeries& series : agent.trials) {
      for (int e = lo; e < hi && e < static_cast<int>(series.elevations.size()); ++e) {
        steps = std::max(steps, series.elevations[e].size());
      }
    }
    std::vector<double> mean(steps, 0.0);
    std::vector<int> count(steps, 0);
    for (const TrialSeries& series : agent.trials) {
      for (int e = lo; e < hi && e < static_cast<int>(series.elevations.size()); ++e) {
        for (std::size_t s = 0; s < series.elevations[e].size(); ++s) {
          mean[s] += series.elevations[e][s];
          ++count[s];
        }
      }
    }
    for (std::size_t s = 0; s < steps; ++s) mean[s] /= std::max(1, count[s]);
    profiles[g] = std::move(mean);
  }
  return profiles;
}

/// Runs the experiment and writes results.csv, summary.txt and, when they
/// exist, elevation.csv / collapser.csv / codebook.csv to the output
/// directory.
inline ResultTable run_and_write(const ExperimentSpec& spec) {
  namespace fs = std::filesystem;
  const TaskAssets assets = build_task_assets(spec);
  ResultTable table = run_experiment(spec, assets);

  fs::create_directories(spec.out_dir);
  {
    std::ofstream out(fs::path(spec.out_dir) / "results.csv");
    write_results_csv(table, out);
  }
  {
    std::ofstream out(fs::path(spec.out_dir) / "summary.txt");
    out << summarize(table);
  }
  if (assets.collapser) {
    std::ofstream out(fs::path(spec.out_dir) / "collapser.csv");
    assets.collapser->save_csv(out);
  }
  if (assets.codebook) {
    std::ofstream out(fs::path(spec.out_dir) / "codebook.csv");
    assets.codebook->save_csv(out);
  }
  if (spec.task == Task::hillclimb) {
    std::ofstream out(fs::path(spec.out_dir) / "elevation.csv");
    out << "agent,quartile,step,mean_elevation\n";
    char line[160];
    for (const AgentResult& agent : table.agents) {
      const auto profiles = agent_elevation_profiles(agent, table.episodes);
      for (int g = 0; g < static_cast<int>(profiles.size()); ++g) {
        for (std::size_t s = 0; s < profiles[g].size(); ++s) {
          std::snprintf(line, sizeof line, "%s,%d,%zu,%.6f\n", agent.spec.name.c_str(),
                        g + 1, s + 1, profiles[g][s]);
          out << line;
        }
      }
    }
  }
  return table;
}

}  // namespace geql
