#include "soficlab/runner.hpp"

#include <filesystem>
#include <set>
#include <sstream>

#include <json.hpp>

#include "soficlab/catalog.hpp"
#include "soficlab/convergence.hpp"
#include "soficlab/distance.hpp"
#include "soficlab/errors.hpp"
#include "soficlab/homcount.hpp"
#include "soficlab/io.hpp"
#include "soficlab/version.hpp"

namespace soficlab {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

long long parse_int(const std::string& s, const std::string& key) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("config key \"" + key + "\" needs an integer, got \"" + s + "\"");
  }
}

Rat parse_rat(const std::string& s, const std::string& key) {
  try {
    return Rat::parse(s);
  } catch (const std::exception&) {
    throw InputError("config key \"" + key + "\" needs a rational p/q, got \"" + s + "\"");
  }
}

double parse_real(const std::string& s, const std::string& key) {
  if (s.find('/') != std::string::npos) return parse_rat(s, key).to_double();
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("config key \"" + key + "\" needs a number, got \"" + s + "\"");
  }
}

/// Shared run parameters after applying override precedence.
struct Effective {
  uint64_t seed = 0;
  long long budget = 10'000'000;
  int threads = 1;
  std::string out_dir;
  std::string hash;
};

Effective effective_options(const ExperimentConfig& c, const RunOptions& o) {
  Effective e;
  e.seed = o.has_seed ? o.seed
                      : static_cast<uint64_t>(parse_int(c.get_or("seed", "0"), "seed"));
  e.budget = o.has_budget ? o.budget : parse_int(c.get_or("budget", "10000000"), "budget");
  e.threads = o.has_threads ? o.threads
                            : static_cast<int>(parse_int(c.get_or("threads", "1"), "threads"));
  if (e.threads < 1) throw InputError("threads must be >= 1");
  if (e.budget < 1) throw InputError("budget must be >= 1");
  e.out_dir = o.out_dir.empty() ? "." : o.out_dir;
  e.hash = c.hash_hex;
  std::filesystem::create_directories(e.out_dir);
  return e;
}

void check_known_keys(const ExperimentConfig& c, std::set<std::string> allowed) {
  allowed.insert({"version", "task", "seed", "budget", "threads"});
  for (const auto& [k, v] : c.values) {
    if (!allowed.count(k)) throw InputError("unknown config key \"" + k + "\"");
  }
}

SearchStrategy parse_strategy(const ExperimentConfig& c, const Effective& e) {
  std::string text = c.get_or("strategy", "exhaustive");
  SearchStrategy s;
  auto parts = split(text, ':');
  if (parts[0] == "exhaustive" && parts.size() == 1) {
    s = SearchStrategy::exhaustive(e.budget);
  } else if (parts[0] == "local" && parts.size() <= 3) {
    int restarts = parts.size() > 1 ? static_cast<int>(parse_int(parts[1], "strategy")) : 16;
    int max_moves = parts.size() > 2 ? static_cast<int>(parse_int(parts[2], "strategy")) : 4000;
    s = SearchStrategy::local_search(restarts, max_moves, e.seed);
    s.budget = e.budget;
  } else {
    throw InputError("bad strategy \"" + text + "\" (exhaustive | local[:restarts[:moves]])");
  }
  s.threads = e.threads;
  return s;
}

std::string meta_comment(const Effective& e) {
  std::ostringstream os;
  os << "# " << artifact_banner() << "\n";
  os << "# config_hash=" << e.hash << "\n";
  os << "# seed=" << e.seed << "\n";
  return os.str();
}

Json meta_json(const Effective& e, const std::string& task) {
  Json j;
  j["artifact"] = artifact_banner();
  j["config_hash"] = e.hash;
  j["seed"] = e.seed;
  j["task"] = task;
  return j;
}

Json partition_json(const IndexedPartition& p) {
  Json j;
  if (p.is_finite()) {
    const auto& f = p.finite();
    j["type"] = "finite";
    j["carrier"] = f.carrier;
    j["blocks"] = f.block_count;
    j["assign"] = f.assign;
  } else {
    const auto& c = p.cylinder();
    j["type"] = "cylinder";
    j["generators"] = c.generator_count;
    j["alphabet"] = c.alphabet;
    j["blocks"] = c.block_count;
    Json coords = Json::array();
    for (const auto& w : c.coords) coords.push_back(w.str());
    j["coords"] = coords;
    j["table"] = c.table;
  }
  return j;
}

Json report_json(const DistanceReport& r, const std::string& direction) {
  Json j;
  j["direction"] = direction;
  j["value"] = r.value.str();
  j["value_real"] = r.value.to_double();
  j["exact"] = r.exact;
  j["evaluations"] = r.evaluations;
  j["words"] = format_word_list(r.words);
  j["witness"] = partition_json(r.witness);
  return j;
}

void write_json(const std::string& path, const Json& j) {
  write_file(path, j.dump(2) + "\n");
}

std::string run_dist(const ExperimentConfig& c, const Effective& e) {
  check_known_keys(c, {"a", "b", "words", "mode", "k", "alpha", "partitions", "threshold",
                       "strategy"});
  MeasureModel a = resolve_model(c.get("a"));
  FiniteAction b = resolve_action(c.get("b"));
  WordList words = parse_word_list(c.get("words"));
  SearchStrategy s = parse_strategy(c, e);
  std::string mode = c.get_or("mode", "sym");

  Json out = meta_json(e, "dist");
  out["mode"] = mode;
  out["a"] = a.describe();
  out["b"] = "finite(size=" + std::to_string(b.size) + ")";
  std::string summary;

  if (mode == "inf") {
    DistanceReport r = d_inf(a, b, words, resolve_partition(c.get("alpha")), s);
    out["value"] = r.value.str();
    out["value_real"] = r.value.to_double();
    out["exact"] = r.exact;
    out["reports"] = Json::array({report_json(r, "a->b")});
    summary = "d_inf = " + r.value.str();
  } else if (mode == "sup") {
    int k = static_cast<int>(parse_int(c.get("k"), "k"));
    DistanceReport r = d_sup(a, b, words, k, s);
    out["value"] = r.value.str();
    out["value_real"] = r.value.to_double();
    out["exact"] = r.exact;
    out["reports"] = Json::array({report_json(r, "a->b")});
    summary = "d_sup = " + r.value.str();
  } else if (mode == "sym") {
    int k = static_cast<int>(parse_int(c.get("k"), "k"));
    SymmetricReport r = d_sym(a.action(), b, words, k, s);
    out["value"] = r.value.str();
    out["value_real"] = r.value.to_double();
    out["exact"] = r.exact;
    out["reports"] =
        Json::array({report_json(r.forward, "a->b"), report_json(r.backward, "b->a")});
    summary = "d_sym = " + r.value.str();
  } else if (mode == "verdict") {
    Rat threshold = parse_rat(c.get("threshold"), "threshold");
    std::vector<IndexedPartition> parts;
    for (const auto& ref : split(c.get("partitions"), ';')) {
      parts.push_back(resolve_partition(ref));
    }
    ContainmentReport r = containment_verdict(a, b, words, parts, s, threshold);
    out["threshold"] = threshold.str();
    out["all_below"] = r.all_below;
    Json reports = Json::array();
    for (size_t i = 0; i < r.reports.size(); ++i) {
      reports.push_back(report_json(r.reports[i], "a->b"));
    }
    out["reports"] = reports;
    summary = std::string("containment verdict: ") + (r.all_below ? "true" : "false");
  } else {
    throw InputError("bad dist mode \"" + mode + "\"");
  }
  write_json(e.out_dir + "/dist_report.json", out);
  return summary;
}

std::string run_tower_converge(const ExperimentConfig& c, const Effective& e) {
  check_known_keys(c, {"tower", "words", "k", "strategy"});
  Tower t = resolve_tower(c.get("tower"));
  WordList words = parse_word_list(c.get("words"));
  int k = static_cast<int>(parse_int(c.get_or("k", "2"), "k"));
  SearchStrategy s = parse_strategy(c, e);
  ConvergenceReport rep = tower_convergence(t, words, k, s);

  std::ostringstream csv;
  csv << meta_comment(e);
  csv << "kind,from,to,value,value_real,exact\n";
  for (const auto& p : rep.pairs) {
    csv << "forward," << p.from << ',' << p.to << ',' << p.sym.forward.value.str() << ','
        << fmt_double(p.sym.forward.value.to_double()) << ',' << p.sym.forward.exact << "\n";
    csv << "backward," << p.from << ',' << p.to << ',' << p.sym.backward.value.str() << ','
        << fmt_double(p.sym.backward.value.to_double()) << ',' << p.sym.backward.exact << "\n";
    csv << "sym," << p.from << ',' << p.to << ',' << p.sym.value.str() << ','
        << fmt_double(p.sym.value.to_double()) << ',' << p.sym.exact << "\n";
  }
  for (const auto& f : rep.factor_entries) {
    csv << "factor," << f.from << ',' << f.to << ',' << f.report.value.str() << ','
        << fmt_double(f.report.value.to_double()) << ',' << f.report.exact << "\n";
  }
  write_file(e.out_dir + "/tower_convergence.csv", csv.str());

  Json j = meta_json(e, "tower-converge");
  j["depth"] = t.depth();
  j["k"] = k;
  j["words"] = format_word_list(rep.words);
  Json rows = Json::array();
  for (const auto& v : rep.row_max) rows.push_back(v.str());
  j["row_max"] = rows;
  j["trend"] = rep.trend.str();
  bool factor_all_zero = true;
  for (const auto& f : rep.factor_entries) {
    if (!f.report.value.is_zero()) factor_all_zero = false;
  }
  j["factor_all_zero"] = factor_all_zero;
  write_json(e.out_dir + "/tower_convergence.json", j);
  return "tower convergence: trend " + rep.trend.str() + ", factor zeros " +
         (factor_all_zero ? "ok" : "VIOLATED");
}

std::string run_entropy(const ExperimentConfig& c, const Effective& e) {
  check_known_keys(c, {"model", "xi", "alphas", "words_ladder", "deltas", "sigma", "method"});
  MeasureModel a = resolve_model(c.get("model"));
  IndexedPartition xi = resolve_partition(c.get("xi"));
  std::vector<IndexedPartition> alphas;
  for (const auto& ref : split(c.get("alphas"), ';')) alphas.push_back(resolve_partition(ref));
  std::vector<WordList> ladder;
  for (const auto& ws : split(c.get("words_ladder"), ';')) ladder.push_back(parse_word_list(ws));
  std::vector<Rat> deltas;
  for (const auto& d : split(c.get("deltas"), ',')) deltas.push_back(parse_rat(d, "deltas"));
  std::vector<FiniteAction> sigma;
  for (const auto& ref : split(c.get("sigma"), ';')) sigma.push_back(resolve_action(ref));

  std::string method_text = c.get_or("method", "exact");
  CountMethod method;
  auto mp = split(method_text, ':');
  if (mp[0] == "exact" && mp.size() == 1) {
    method = CountMethod::exact(e.budget);
  } else if (mp[0] == "mc" && mp.size() == 2) {
    method = CountMethod::monte_carlo(
        static_cast<uint64_t>(parse_int(mp[1], "method")), e.seed);
  } else {
    throw InputError("bad method \"" + method_text + "\" (exact | mc:<samples>)");
  }

  EntropyGrid grid = entropy_grid(a, xi, alphas, ladder, deltas, sigma, method, e.threads);

  std::ostringstream csv;
  csv << meta_comment(e);
  csv << "xi_id,alpha_id,f_id,delta,n,count,exact,value\n";
  for (const auto& cell : grid.cells) {
    const auto& cnt = cell.count;
    csv << "xi,alpha" << cell.alpha_idx << ",f" << cell.words_idx << ','
        << deltas[static_cast<size_t>(cell.delta_idx)].str() << ','
        << sigma[static_cast<size_t>(cell.stage_idx)].size << ','
        << fmt_double(cnt.restricted_count) << ',' << (cnt.exact ? 1 : 0) << ','
        << fmt_double(cell.value) << "\n";
  }
  write_file(e.out_dir + "/entropy_grid.csv", csv.str());

  Json j = meta_json(e, "entropy");
  j["model"] = a.describe();
  j["xi"] = xi.describe();
  Json alpha_ids = Json::object();
  for (size_t i = 0; i < alphas.size(); ++i) {
    alpha_ids["alpha" + std::to_string(i)] = alphas[i].describe();
  }
  j["alpha_ids"] = alpha_ids;
  Json f_ids = Json::object();
  for (size_t i = 0; i < ladder.size(); ++i) {
    f_ids["f" + std::to_string(i)] = format_word_list(ladder[i]);
  }
  j["f_ids"] = f_ids;
  Json stages = Json::array();
  for (const auto& act : sigma) stages.push_back(act.size);
  j["stages"] = stages;
  j["method"] = method_text;
  j["exact"] = method.kind == CountMethod::Kind::Exact;
  Json windows = Json::array();
  for (const auto& w : grid.windows) {
    Json wj;
    wj["alpha"] = w.alpha_idx;
    wj["f"] = w.words_idx;
    wj["delta"] = deltas[static_cast<size_t>(w.delta_idx)].str();
    wj["window_min"] = fmt_double(w.lo);
    wj["window_max"] = fmt_double(w.hi);
    windows.push_back(wj);
  }
  j["stage_windows"] = windows;
  j["truncated_upper_bounds"] = Json::object();
  j["truncated_upper_bounds"]["note"] =
      "chained minima over the supplied ladders; upper bounds for the untruncated infima";
  j["truncated_upper_bounds"]["xi_lo"] = fmt_double(grid.xi_bracket.lo);
  j["truncated_upper_bounds"]["xi_hi"] = fmt_double(grid.xi_bracket.hi);
  write_json(e.out_dir + "/entropy_grid.meta.json", j);
  return "entropy grid: " + std::to_string(grid.cells.size()) + " cells, xi bracket [" +
         fmt_double(grid.xi_bracket.lo) + ", " + fmt_double(grid.xi_bracket.hi) + "]";
}

std::string run_validate(const ExperimentConfig& c, const Effective& e) {
  check_known_keys(c, {"sequence", "tower", "kernel_words", "probe_words", "band_lo", "band_hi"});
  SoficApproximation sigma;
  if (c.has("sequence")) {
    for (const auto& ref : split(c.get("sequence"), ';')) {
      sigma.sequence.push_back(resolve_action(ref));
    }
  } else if (c.has("tower")) {
    sigma.sequence = resolve_tower(c.get("tower")).levels();
  } else {
    throw InputError("validate-sofic needs \"sequence\" or \"tower\"");
  }
  if (c.has("kernel_words")) sigma.kernel_words = parse_word_list(c.get("kernel_words"));
  if (c.has("probe_words")) {
    sigma.probe_words = parse_word_list(c.get("probe_words"));
  } else {
    sigma.probe_words = default_probe_words(sigma.sequence.front().generator_count());
  }
  double lo = parse_real(c.get_or("band_lo", "0.30"), "band_lo");
  double hi = parse_real(c.get_or("band_hi", "0.70"), "band_hi");
  SoficValidation v = validate_sofic(sigma, lo, hi);

  std::ostringstream csv;
  csv << meta_comment(e);
  csv << "# exact=1\n"; // trajectories are exact rationals
  csv << "word,role,stage,carrier,fix_ratio,fix_ratio_real\n";
  for (const auto& tr : v.trajectories) {
    for (size_t i = 0; i < tr.fix_ratios.size(); ++i) {
      csv << tr.word.str() << ',' << (tr.is_kernel ? "kernel" : "probe") << ',' << i << ','
          << sigma.sequence[i].size << ',' << tr.fix_ratios[i].str() << ','
          << fmt_double(tr.fix_ratios[i].to_double()) << "\n";
    }
  }
  write_file(e.out_dir + "/validation.csv", csv.str());

  Json j = meta_json(e, "validate-sofic");
  j["band_lo"] = fmt_double(v.band_lo);
  j["band_hi"] = fmt_double(v.band_hi);
  j["stages"] = sigma.sequence.size();
  // finite-stage evidence only: freeness at this depth, never "free"
  j["label"] = "freeness at depth " + std::to_string(sigma.sequence.size());
  Json words = Json::array();
  for (const auto& tr : v.trajectories) {
    Json wj;
    wj["word"] = tr.word.str();
    wj["role"] = tr.is_kernel ? "kernel" : "probe";
    wj["pass"] = tr.pass;
    words.push_back(wj);
  }
  j["words"] = words;
  j["overall"] = v.pass;
  write_json(e.out_dir + "/validation.json", j);
  return std::string("validate-sofic: overall ") + (v.pass ? "PASS" : "FAIL");
}

std::string run_genprof(const ExperimentConfig& c, const Effective& e) {
  check_known_keys(c, {"tower", "epsilon", "depth"});
  Tower t = resolve_tower(c.get("tower"));
  double epsilon = parse_real(c.get("epsilon"), "epsilon");
  int depth = static_cast<int>(parse_int(c.get_or("depth", std::to_string(t.depth())), "depth"));
  GenprofResult r = genprof_partition(t, epsilon, depth);

  write_file(e.out_dir + "/genprof_partition.part",
             format_partition(IndexedPartition(r.partition)));

  Json j = meta_json(e, "genprof");
  j["exact"] = true; // fiber construction and block measures are exact
  j["epsilon"] = fmt_double(epsilon);
  j["depth"] = depth;
  j["cutoff"] = r.cutoff;
  j["entropy"] = fmt_double(r.entropy);
  j["entropy_below_epsilon"] = r.entropy <= epsilon;
  j["fiber_roots"] = r.fiber_roots;
  Json measures = Json::array();
  const FiniteAction& carrier = t.level(depth - 1);
  for (long long s : r.partition.block_sizes()) measures.push_back(Rat(s, carrier.size).str());
  j["block_measures"] = measures;
  j["partition_file"] = "genprof_partition.part";
  write_json(e.out_dir + "/genprof.json", j);
  return "genprof: cutoff " + std::to_string(r.cutoff) + ", entropy " + fmt_double(r.entropy) +
         " <= " + fmt_double(epsilon);
}

std::string run_catalog(const ExperimentConfig& c, const Effective& e) {
  check_known_keys(c, {});
  std::string listing = meta_comment(e) + catalog_listing();
  write_file(e.out_dir + "/catalog.txt", listing);
  return "catalog written";
}

} // namespace

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  ExperimentConfig c;
  c.raw = text;
  c.hash_hex = hex64(fnv1a64(text));
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(lineno) + " is not key = value: \"" +
                       t + "\"");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw InputError("config line " + std::to_string(lineno) + " has no key");
    if (c.values.count(key)) throw InputError("duplicate config key \"" + key + "\"");
    c.values[key] = value;
  }
  if (c.get_or("version", "") != "1") {
    throw InputError("config needs \"version = 1\"");
  }
  if (!c.has("task")) throw InputError("config needs a \"task\" key");
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_text(read_file(path));
}

const std::string& ExperimentConfig::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw InputError("missing config key \"" + key + "\"");
  return it->second;
}

std::string ExperimentConfig::get_or(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

std::string run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  Effective e = effective_options(config, options);
  const std::string& task = config.get("task");
  if (task == "dist") return run_dist(config, e);
  if (task == "tower-converge") return run_tower_converge(config, e);
  if (task == "entropy") return run_entropy(config, e);
  if (task == "validate-sofic") return run_validate(config, e);
  if (task == "genprof") return run_genprof(config, e);
  if (task == "catalog") return run_catalog(config, e);
  throw InputError("unknown task \"" + task + "\"");
}

} // namespace soficlab
