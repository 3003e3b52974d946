#include "gamedyn/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "gamedyn/analysis.hpp"
#include "gamedyn/rng.hpp"
#include "gamedyn/typed.hpp"

namespace gamedyn {

EtaSpec EtaSpec::list(std::vector<double> v) {
  EtaSpec s;
  s.values = std::move(v);
  return s;
}

EtaSpec EtaSpec::grid(double min, double max, int count, bool log_spacing) {
  EtaSpec s;
  s.grid_min = min;
  s.grid_max = max;
  s.grid_count = count;
  s.log_spacing = log_spacing;
  return s;
}

std::vector<double> EtaSpec::resolve() const {
  std::vector<double> etas;
  if (!values.empty()) {
    etas = values;
  } else {
    if (grid_count < 1) throw ParamError("eta grid count must be >= 1");
    if (!(grid_min > 0.0) || !(grid_max >= grid_min))
      throw ParamError("eta grid needs 0 < min <= max");
    if (grid_count == 1) {
      etas.push_back(grid_min);
    } else if (log_spacing) {
      const double lo = std::log(grid_min), hi = std::log(grid_max);
      for (int i = 0; i < grid_count; ++i)
        etas.push_back(std::exp(lo + (hi - lo) * i / (grid_count - 1)));
    } else {
      for (int i = 0; i < grid_count; ++i)
        etas.push_back(grid_min + (grid_max - grid_min) * i / (grid_count - 1));
    }
  }
  for (double e : etas)
    if (!(e > 0.0) || !std::isfinite(e)) throw ParamError("all etas must be positive");
  return etas;
}

W0Spec W0Spec::point(Vec w0) {
  W0Spec s;
  s.explicit_w0 = std::move(w0);
  return s;
}

W0Spec W0Spec::sampled_ball(Vec center, double radius, std::uint64_t seed, int trials) {
  W0Spec s;
  s.ball = true;
  s.center = std::move(center);
  s.radius = radius;
  s.seed = seed;
  s.trials = trials;
  return s;
}

std::vector<Vec> W0Spec::resolve(int d) const {
  if (!ball) {
    if (static_cast<int>(explicit_w0.size()) != d)
      throw DimensionError("w0 has length " + std::to_string(explicit_w0.size()) +
                           ", game dimension is " + std::to_string(d));
    return {explicit_w0};
  }
  if (trials < 1) throw ParamError("w0 ball trials must be >= 1");
  if (!(radius > 0.0)) throw ParamError("w0 ball radius must be positive");
  if (static_cast<int>(center.size()) != d)
    throw DimensionError("w0 ball center has length " + std::to_string(center.size()) +
                         ", game dimension is " + std::to_string(d));
  rng::Engine eng(seed);
  std::vector<Vec> points;
  points.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) points.push_back(rng::ball_point(eng, center, radius));
  return points;
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

double window_mean_abs_loss(const Trajectory& t) {
  const int window = std::min<int>(t.stopping.loss_window, static_cast<int>(t.states.size()));
  double acc = 0.0;
  for (int k = 0; k < window; ++k) {
    const auto& losses = t.states[t.states.size() - 1 - static_cast<std::size_t>(k)].losses;
    double mean = 0.0;
    for (double l : losses) mean += std::abs(l);
    acc += mean / static_cast<double>(losses.size());
  }
  return acc / window;
}

SweepRow make_row(const Game& game, const AlgorithmSpec& spec, int trial, const Vec& w0,
                  const StoppingRule& stopping) {
  const Trajectory t = simulate(game, w0, spec, stopping);
  SweepRow row;
  row.spec = spec;
  row.trial = trial;
  row.verdict = t.verdict;
  row.steps = t.verdict_step;
  double loss = window_mean_abs_loss(t);
  if (!std::isfinite(loss) || loss > kSweepLossCap) loss = kSweepLossCap;
  row.final_avg_abs_loss = loss;
  row.final_w_norm = la::nrm2(t.final_state().w);
  row.final_H = t.final_state().H;
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int workers) {
  if (spec.algorithms.empty()) throw ParamError("sweep needs at least one algorithm");
  spec.stopping.validate();
  const Game game = spec.game.build();
  const std::vector<double> etas = spec.etas.resolve();
  const std::vector<Vec> starts = spec.w0.resolve(game.dim());
  const int trials = static_cast<int>(starts.size());

  struct Cell {
    AlgorithmSpec spec;
    int trial;
  };
  std::vector<Cell> cells;
  for (const AlgorithmSpec& algo : spec.algorithms) {
    AlgorithmSpec a = algo;
    for (double eta : etas) {
      a.eta = eta;
      a.validate();
      for (int trial = 0; trial < trials; ++trial) cells.push_back({a, trial});
    }
  }

  SweepResult result;
  result.rows.resize(cells.size());
  const int pool = std::max(1, std::min<int>(workers, static_cast<int>(cells.size())));
  if (pool == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      result.rows[i] = make_row(game, cells[i].spec, cells[i].trial,
                                starts[static_cast<std::size_t>(cells[i].trial)], spec.stopping);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int p = 0; p < pool; ++p) {
      threads.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
          result.rows[i] =
              make_row(game, cells[i].spec, cells[i].trial,
                       starts[static_cast<std::size_t>(cells[i].trial)], spec.stopping);
      });
    }
    for (auto& th : threads) th.join();
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "algorithm,lambda,align,eta,trial,verdict,steps,final_avg_abs_loss,final_w_norm\n";
  for (const SweepRow& r : result.rows) {
    out += to_string(r.spec.kind);
    out += ',';
    out += format_double(r.spec.lambda);
    out += ',';
    out += r.spec.align ? '1' : '0';
    out += ',';
    out += format_double(r.spec.eta);
    out += ',';
    out += std::to_string(r.trial);
    out += ',';
    out += to_string(r.verdict);
    out += ',';
    out += std::to_string(r.steps);
    out += ',';
    out += format_double(r.final_avg_abs_loss);
    out += ',';
    out += format_double(r.final_w_norm);
    out += '\n';
  }
  return out;
}

std::string trajectory_csv(const Trajectory& t) {
  if (t.states.empty()) return "";
  const std::size_t d = t.states.front().w.size();
  const std::size_t n = t.states.front().losses.size();
  std::string out = "step";
  for (std::size_t i = 0; i < d; ++i) out += ",w_" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i) out += ",loss_" + std::to_string(i);
  out += ",H,xi_norm\n";
  for (const TrajectoryState& s : t.states) {
    out += std::to_string(s.step);
    for (double v : s.w) {
      out += ',';
      out += format_double(v);
    }
    for (double v : s.losses) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += format_double(s.H);
    out += ',';
    out += format_double(s.xi_norm);
    out += '\n';
  }
  return out;
}

namespace {

using nlohmann::json;

double need_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return j.get<double>();
}

Vec need_vector(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("config key '" + key + "' must be an array of numbers");
  Vec v;
  for (const auto& x : j) v.push_back(need_number(x, key));
  return v;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown config key '" + key + "' in " + where);
  }
}

AlgorithmSpec parse_algorithm(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("each algorithm needs an object with a 'kind'");
  reject_unknown(j, {"kind", "lambda", "align", "epsilon_align", "eta"}, "algorithms");
  AlgorithmSpec a;
  a.kind = algorithm_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("lambda")) a.lambda = need_number(j.at("lambda"), "lambda");
  if (j.contains("align")) {
    if (!j.at("align").is_boolean()) throw ConfigError("config key 'align' must be a boolean");
    a.align = j.at("align").get<bool>();
  }
  if (j.contains("epsilon_align"))
    a.epsilon_align = need_number(j.at("epsilon_align"), "epsilon_align");
  if (j.contains("eta")) a.eta = need_number(j.at("eta"), "eta");
  return a;
}

}  // namespace

SweepSpec parse_sweep_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown(j, {"game", "algorithms", "etas", "w0", "stopping", "output"}, "config root");

  SweepSpec spec;

  if (!j.contains("game")) throw ConfigError("config needs a 'game'");
  const json& jg = j.at("game");
  if (jg.is_string()) {
    spec.game.name = jg.get<std::string>();
  } else if (jg.is_object()) {
    reject_unknown(jg, {"name", "params"}, "game");
    if (!jg.contains("name")) throw ConfigError("config key 'game' needs a 'name'");
    spec.game.name = jg.at("name").get<std::string>();
    if (jg.contains("params")) {
      if (!jg.at("params").is_object())
        throw ConfigError("config key 'game.params' must be an object");
      for (const auto& [key, value] : jg.at("params").items())
        spec.game.params[key] = need_number(value, key);
    }
  } else {
    throw ConfigError("config key 'game' must be a string or object");
  }

  if (!j.contains("algorithms") || !j.at("algorithms").is_array() || j.at("algorithms").empty())
    throw ConfigError("config needs a non-empty 'algorithms' array");
  for (const auto& ja : j.at("algorithms")) spec.algorithms.push_back(parse_algorithm(ja));

  if (!j.contains("etas")) throw ConfigError("config needs 'etas'");
  const json& je = j.at("etas");
  if (je.is_array()) {
    spec.etas = EtaSpec::list(need_vector(je, "etas"));
  } else if (je.is_object()) {
    reject_unknown(je, {"min", "max", "count", "spacing"}, "etas");
    if (!je.contains("min") || !je.contains("max") || !je.contains("count"))
      throw ConfigError("eta grid needs 'min', 'max', 'count'");
    bool log_spacing = true;
    if (je.contains("spacing")) {
      const std::string s = je.at("spacing").get<std::string>();
      if (s == "log") log_spacing = true;
      else if (s == "linear") log_spacing = false;
      else throw ConfigError("eta 'spacing' must be 'log' or 'linear'");
    }
    spec.etas = EtaSpec::grid(need_number(je.at("min"), "min"), need_number(je.at("max"), "max"),
                              static_cast<int>(need_number(je.at("count"), "count")), log_spacing);
  } else {
    throw ConfigError("config key 'etas' must be an array or grid object");
  }

  if (!j.contains("w0")) throw ConfigError("config needs 'w0'");
  const json& jw = j.at("w0");
  if (jw.is_array()) {
    spec.w0 = W0Spec::point(need_vector(jw, "w0"));
  } else if (jw.is_object() && jw.contains("values")) {
    reject_unknown(jw, {"values"}, "w0");
    spec.w0 = W0Spec::point(need_vector(jw.at("values"), "w0.values"));
  } else if (jw.is_object()) {
    reject_unknown(jw, {"center", "radius", "seed", "trials"}, "w0");
    if (!jw.contains("center")) throw ConfigError("w0 ball needs a 'center'");
    W0Spec w;
    w.ball = true;
    w.center = need_vector(jw.at("center"), "w0.center");
    if (jw.contains("radius")) w.radius = need_number(jw.at("radius"), "w0.radius");
    if (jw.contains("seed"))
      w.seed = static_cast<std::uint64_t>(need_number(jw.at("seed"), "w0.seed"));
    if (jw.contains("trials"))
      w.trials = static_cast<int>(need_number(jw.at("trials"), "w0.trials"));
    spec.w0 = w;
  } else {
    throw ConfigError("config key 'w0' must be an array, {values}, or ball object");
  }

  if (j.contains("stopping")) {
    const json& js = j.at("stopping");
    reject_unknown(js, {"max_steps", "loss_window", "loss_threshold", "divergence_norm"},
                   "stopping");
    if (js.contains("max_steps"))
      spec.stopping.max_steps = static_cast<int>(need_number(js.at("max_steps"), "max_steps"));
    if (js.contains("loss_window"))
      spec.stopping.loss_window =
          static_cast<int>(need_number(js.at("loss_window"), "loss_window"));
    if (js.contains("loss_threshold"))
      spec.stopping.loss_threshold = need_number(js.at("loss_threshold"), "loss_threshold");
    if (js.contains("divergence_norm"))
      spec.stopping.divergence_norm = need_number(js.at("divergence_norm"), "divergence_norm");
  }

  if (j.contains("output")) {
    const json& jo = j.at("output");
    reject_unknown(jo, {"path", "format"}, "output");
    if (jo.contains("path")) spec.out_path = jo.at("path").get<std::string>();
    if (jo.contains("format")) {
      spec.format = jo.at("format").get<std::string>();
      if (spec.format != "csv") throw ConfigError("only 'csv' output format is supported");
    }
  }
  return spec;
}

SweepSpec load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

namespace {

ParamMap parse_params_flag(const std::string& text) {
  ParamMap params;
  if (text.empty()) return params;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParamError("bad --params entry '" + item + "' (expected k=v)");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      params[key] = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw ParamError("parameter '" + key + "' has non-numeric value '" + val + "'");
    }
  }
  return params;
}

Vec parse_point_flag(const std::string& text) {
  Vec v;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParamError("bad coordinate '" + item + "' in point");
    }
  }
  if (v.empty()) throw ParamError("point must have at least one coordinate");
  return v;
}

std::string vec_line(const Vec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v[i]);
  }
  return out;
}

void print_matrix(std::ostream& os, const std::string& label, const Mat& m) {
  os << label << ":\n";
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) os << (j ? " " : "") << format_double(m(i, j));
    os << "\n";
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write to '" + path + "'");
  out << content;
  if (!out) throw UsageError("failed while writing '" + path + "'");
}

Vec resolve_point(const std::string& flag, const Game& game) {
  if (flag.empty()) return default_start(game);
  Vec w = parse_point_flag(flag);
  game.check_point(w);
  return w;
}

int cmd_decompose(const std::string& game_name, const ParamMap& params, const std::string& at) {
  const Game game = builtin_game(game_name, params);
  const Vec w = resolve_point(at, game);
  const DecompositionBundle b = bundle(game, w);
  const GameClassReport cls = classify_game_sampled(game);
  std::cout << "game: " << game.name << "\n";
  std::cout << "w: " << vec_line(w) << "\n";
  std::cout << "class: " << to_string(cls.game_class) << "\n";
  std::cout << "xi: " << vec_line(b.xi) << "\n";
  std::cout << "H: " << format_double(b.H) << "\n";
  std::cout << "gradH: " << vec_line(b.gradH) << "\n";
  std::cout << "adj: " << vec_line(b.adj) << "\n";
  print_matrix(std::cout, "J", b.J);
  print_matrix(std::cout, "S", b.S);
  print_matrix(std::cout, "A", b.A);
  return 0;
}

int cmd_simulate(const std::string& game_name, const ParamMap& params, const std::string& w0_flag,
                 const AlgorithmSpec& spec, const StoppingRule& stopping,
                 const std::string& out_path) {
  const Game game = builtin_game(game_name, params);
  const Vec w0 = resolve_point(w0_flag, game);
  const Trajectory t = simulate(game, w0, spec, stopping);
  if (!out_path.empty()) write_file(out_path, trajectory_csv(t));
  std::cout << "verdict=" << to_string(t.verdict) << " step=" << t.verdict_step << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override, int workers) {
  SweepSpec spec = load_sweep_config(config_path);
  if (!out_override.empty()) spec.out_path = out_override;
  const SweepResult result = run_sweep(spec, workers);
  const std::string csv = sweep_csv(result);
  if (spec.out_path.empty())
    std::cout << csv;
  else
    write_file(spec.out_path, csv);
  return 0;
}

json complex_pairs(const std::vector<std::complex<double>>& eigs) {
  json out = json::array();
  for (const auto& e : eigs) out.push_back(json::array({e.real(), e.imag()}));
  return out;
}

int cmd_classify(const std::string& game_name, const ParamMap& params, const std::string& w0_flag,
                 int max_iters, double tol) {
  const Game game = builtin_game(game_name, params);
  const Vec w0 = resolve_point(w0_flag, game);
  const FixedPointReport r = find_fixed_point(game, w0, max_iters, tol);
  nlohmann::ordered_json j;
  j["game"] = game.name;
  j["w_star"] = r.w_star.values;
  j["residual"] = r.residual;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["is_stable"] = r.is_stable;
  j["is_unstable"] = r.is_unstable;
  j["is_strict_saddle"] = r.is_strict_saddle;
  j["s_eigs"] = r.s_eigs;
  j["j_eigs"] = complex_pairs(r.j_eigs);
  j["kappa"] = r.kappa;
  j["j_invertible"] = r.j_invertible;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_typed(const std::string& game_name, const ParamMap& params, const std::string& at) {
  const auto quad = builtin_quadratic(game_name, params);
  if (!quad) throw UsageError("game '" + game_name + "' has no quadratic form");
  const Game game = quad->to_game(game_name);
  if (game.players() != 2)
    throw UsageError("typed decomposition needs a two-player game, '" + game_name + "' has " +
                     std::to_string(game.players()));
  const Vec w = resolve_point(at, game);
  const TypedDecomposition t = typed_two_form(*quad);
  const Vec typed = typed_adjustment(*quad, w);
  const DecompositionBundle b = bundle(game, w);
  std::cout << "game: " << game_name << "\n";
  std::cout << "w: " << vec_line(w) << "\n";
  print_matrix(std::cout, "omega_tau", t.omega_tau);
  std::cout << "typed_adjustment: " << vec_line(typed) << "\n";
  std::cout << "untyped_adjustment: " << vec_line(b.adj) << "\n";
  return 0;
}

/// Invariant sweep over the whole catalog; returns the number of failures.
int run_builtin_checks(std::ostream& os) {
  int failures = 0;
  const auto fail = [&](const std::string& game, const std::string& what) {
    os << "FAIL " << game << ": " << what << "\n";
    ++failures;
  };

  const std::vector<std::pair<std::string, ParamMap>> cases = {
      {"cycle_xy", {}},
      {"stable_not_nash", {}},
      {"nash_not_stable", {}},
      {"ham_not_zerosum", {}},
      {"zerosum_not_ham", {}},
      {"consensus_trap", {}},
      {"weak_repellor", {}},
      {"weak_attractor_strong_rotation", {}},
      {"bimatrix_zerosum", {{"d1", 3}}},
      {"four_player", {}},
      {"four_player", {{"eps", 0.0}}},
      {"typed_example", {}},
  };
  const std::vector<std::string> zero_sum = {"cycle_xy", "zerosum_not_ham", "bimatrix_zerosum"};
  const std::vector<std::string> hamiltonian = {"cycle_xy", "ham_not_zerosum", "bimatrix_zerosum"};
  const std::vector<std::string> potential = {"consensus_trap", "nash_not_stable",
                                              "zerosum_not_ham"};
  const auto contains = [](const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };

  for (const auto& [name, params] : cases) {
    const Game game = builtin_game(name, params);
    const int d = game.dim();
    rng::Engine eng(99);
    int bad = failures;
    for (int trial = 0; trial < 20; ++trial) {
      const Vec w = rng::gaussian_vec(eng, d);
      const DecompositionBundle b = bundle(game, w);

      // analytic gradient vs central differences of the losses
      for (int i = 0; i < game.players() && failures == bad; ++i) {
        const int off = game.partition.offset(i);
        for (int k = 0; k < game.partition.dim_of(i); ++k) {
          const int c = off + k;
          const double h = 1e-5 * std::max(1.0, std::abs(w[static_cast<std::size_t>(c)]));
          Vec wp = w, wm = w;
          wp[static_cast<std::size_t>(c)] += h;
          wm[static_cast<std::size_t>(c)] -= h;
          const double fd = (game.losses[static_cast<std::size_t>(i)](wp) -
                             game.losses[static_cast<std::size_t>(i)](wm)) /
                            (2.0 * h);
          const double an = b.xi[static_cast<std::size_t>(c)];
          if (std::abs(fd - an) > 1e-5 * std::max(1.0, std::abs(an))) {
            fail(name, "gradient mismatch at coordinate " + std::to_string(c));
            break;
          }
        }
      }
      if (failures != bad) break;

      // decomposition identities
      const double jn = std::max(1.0, frobenius_norm(b.J));
      for (int i = 0; i < d; ++i)
        for (int jcol = 0; jcol < d; ++jcol) {
          if (std::abs(b.S(i, jcol) + b.A(i, jcol) - b.J(i, jcol)) > 1e-12 * jn) {
            fail(name, "S + A != J");
            i = d;
            break;
          }
          if (b.S(i, jcol) != b.S(jcol, i) || b.A(i, jcol) != -b.A(jcol, i)) {
            fail(name, "S/A symmetry broken");
            i = d;
            break;
          }
        }
      if (failures != bad) break;

      const Vec check = la::matvec_t(b.J, b.xi);
      for (int i = 0; i < d; ++i)
        if (std::abs(check[static_cast<std::size_t>(i)] - b.gradH[static_cast<std::size_t>(i)]) >
            1e-12 * std::max(1.0, std::abs(check[static_cast<std::size_t>(i)]))) {
          fail(name, "gradH != J^T xi");
          break;
        }
      if (failures != bad) break;

      const double scale = std::max(1.0, la::nrm2(b.xi) * la::nrm2(b.adj));
      if (std::abs(la::dot(b.xi, b.adj)) > 1e-10 * scale) {
        fail(name, "xi not orthogonal to A^T xi");
        break;
      }

      if (contains(zero_sum, name)) {
        const Vec losses = eval_losses(game, w);
        double sum = 0.0, mag = 1.0;
        for (double l : losses) {
          sum += l;
          mag = std::max(mag, std::abs(l));
        }
        if (std::abs(sum) > 1e-12 * mag) {
          fail(name, "losses do not sum to zero");
          break;
        }
      }
      const bool ham = contains(hamiltonian, name) ||
                       (name == "four_player" && params.count("eps") &&
                        params.at("eps") == 0.0);
      if (ham && std::abs(la::dot(b.xi, b.gradH)) >
                     1e-10 * std::max(1.0, la::nrm2(b.xi) * la::nrm2(b.gradH))) {
        fail(name, "Hamiltonian conservation violated");
        break;
      }
      if (contains(potential, name) && frobenius_norm(b.A) > 1e-12 * jn) {
        fail(name, "potential game has nonzero antisymmetric part");
        break;
      }
    }
    if (failures == bad) os << "ok " << name << (params.empty() ? "" : " (params)") << "\n";
  }
  return failures;
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"differentiable game dynamics toolkit"};
  app.require_subcommand(1);

  std::string game_name, params_text, at_text, w0_text, out_path, config_path, algo_text = "gd";
  double eta = 0.01, lambda = 1.0, epsilon_align = 0.1, tol = 1e-8;
  bool align = false;
  int max_iters = 1000, workers = 1;
  std::uint64_t seed = 0;
  StoppingRule stopping;

  auto* dec = app.add_subcommand("decompose", "print the decomposition bundle at a point");
  dec->add_option("--game", game_name, "builtin game name")->required();
  dec->add_option("--params", params_text, "game parameters k=v,...");
  dec->add_option("--at", at_text, "evaluation point x0,x1,...");

  auto* sim = app.add_subcommand("simulate", "run one algorithm from one start point");
  sim->add_option("--game", game_name, "builtin game name")->required();
  sim->add_option("--params", params_text, "game parameters k=v,...");
  sim->add_option("--w0", w0_text, "start point x0,x1,...");
  sim->add_option("--algo", algo_text, "gd|sga|consensus|aligned_consensus|omd");
  sim->add_option("--eta", eta, "learning rate");
  sim->add_option("--lambda", lambda, "adjustment strength");
  sim->add_flag("--align", align, "sign-aligned sga");
  sim->add_option("--epsilon-align", epsilon_align, "alignment regularizer");
  sim->add_option("--max-steps", stopping.max_steps, "step budget");
  sim->add_option("--loss-window", stopping.loss_window, "convergence window");
  sim->add_option("--loss-threshold", stopping.loss_threshold, "convergence threshold");
  sim->add_option("--divergence-norm", stopping.divergence_norm, "divergence radius");
  sim->add_option("--out", out_path, "trajectory CSV path");

  auto* swp = app.add_subcommand("sweep", "run a learning-rate sweep from a JSON config");
  swp->add_option("--config", config_path, "JSON sweep config")->required();
  swp->add_option("--out", out_path, "override the config output path");
  swp->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  swp->add_option("--seed", seed, "override is part of the config; accepted for symmetry");

  auto* cls = app.add_subcommand("classify", "find and classify a fixed point (JSON report)");
  cls->add_option("--game", game_name, "builtin game name")->required();
  cls->add_option("--params", params_text, "game parameters k=v,...");
  cls->add_option("--w0", w0_text, "search start point");
  cls->add_option("--max-iters", max_iters, "descent iteration budget");
  cls->add_option("--tol", tol, "residual tolerance");

  auto* typ = app.add_subcommand("typed", "type-consistent adjustment of a quadratic game");
  typ->add_option("--game", game_name, "builtin quadratic game name")->required();
  typ->add_option("--params", params_text, "game parameters k=v,...");
  typ->add_option("--at", at_text, "evaluation point");

  auto* chk = app.add_subcommand("check", "run the invariant suite on the builtin catalog");
  (void)chk;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const ParamMap params = parse_params_flag(params_text);
  if (dec->parsed()) return cmd_decompose(game_name, params, at_text);
  if (sim->parsed()) {
    AlgorithmSpec spec;
    spec.kind = algorithm_kind_from_string(algo_text);
    spec.lambda = lambda;
    spec.align = align;
    spec.epsilon_align = epsilon_align;
    spec.eta = eta;
    return cmd_simulate(game_name, params, w0_text, spec, stopping, out_path);
  }
  if (swp->parsed()) return cmd_sweep(config_path, out_path, workers);
  if (cls->parsed()) return cmd_classify(game_name, params, w0_text, max_iters, tol);
  if (typ->parsed()) return cmd_typed(game_name, params, at_text);
  if (chk->parsed()) {
    const int failures = run_builtin_checks(std::cout);
    if (failures > 0) {
      std::cerr << failures << " invariant check(s) failed\n";
      return 2;
    }
    std::cout << "all catalog invariants hold\n";
    return 0;
  }
  return 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  try {
    return dispatch(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gamedyn
