// Copyright 2026 The lsgen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsgen/dataset.h"
#include "lsgen/decision_rules.h"
#include "lsgen/error.h"
#include "lsgen/io.h"
#include "lsgen/local_structures.h"
#include "lsgen/metrics.h"
#include "lsgen/rng.h"
#include "lsgen/sampler.h"
#include "lsgen/splitgen.h"

namespace lsgen::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr char kVersion[] = "0.1.0";

struct Settings {
  std::string config;
  std::string dataset;
  std::string dialect = "func-comma";
  std::string split;
  std::vector<std::string> rule = {"nls"};
  int n = 2;
  uint64_t seed = 0;
  std::string out;
  std::string predictions;
  std::string grammar;
  std::string anonymizer;
  size_t budget = 100;
  double tau = 1.0;
  double k_frac = 0.3;
  double holdout_fraction = 0.2;
  size_t k_train = 1000;
  size_t k_test = 10;
  std::string shapes = "all";
  double similar_fraction = 1.0;
  bool structural_tokens = true;
  std::string scores;
  std::string results;
  std::string pairs;
  std::vector<std::string> sort_children;
  int max_attempts = 1000;
};

// An option registered on one leaf command, with a way to read back its
// effective value for the config hash.
struct Bound {
  std::string name;
  CLI::Option* option;
  std::function<json()> value;
};

using Handler = std::function<void(struct Context&)>;

struct Leaf {
  std::string command;
  std::vector<Bound> bound;
  Handler handler;
  bool is_eval = false;
};

struct Context {
  const Leaf& leaf;
  Settings& s;
  std::ostream& out;
  json config = json::object();
  std::string hash;
  json inputs = json::object();
  std::map<std::string, std::string> files;
  json summary = json::object();

  void add_input(const std::string& name, const std::string& path) {
    inputs[name] = {{"path", path}, {"fnv1a64", hex(fnv1a64(read_file(path)))}};
  }

  static std::string hex(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 15];
    return s;
  }
};

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) invalid(std::string(flag) + " is required");
  return value;
}

void check_fraction(double v, const char* flag) {
  if (!(v >= 0.0 && v <= 1.0)) invalid(std::string(flag) + " must be in [0,1]");
}

Dialect dialect_of(const Settings& s) {
  auto d = dialect_from_name(s.dialect);
  if (!d) invalid("unknown dialect '" + s.dialect + "' (func-comma or sexpr)");
  return *d;
}

ShapeFilter shapes_of(const Settings& s) {
  if (s.shapes == "all") return ShapeFilter::kAll;
  if (s.shapes == "nosib") return ShapeFilter::kNoSibling;
  if (s.shapes == "nopc") return ShapeFilter::kNoParentChild;
  invalid("unknown shape filter '" + s.shapes + "' (all, nosib or nopc)");
}

Dataset load_dataset(Context& c) {
  return Dataset::load_jsonl(need(c.s.dataset, "--dataset"), dialect_of(c.s));
}

Split load_split(Context& c) {
  try {
    return split_from_json(read_json(need(c.s.split, "--split")));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, c.s.split + ": " + e.what());
  }
}

AnonymizerMap load_anonymizer(const Settings& s) {
  if (s.anonymizer.empty()) return {};
  if (s.anonymizer == "covr") return AnonymizerMap::covr();
  return AnonymizerMap::from_json(read_json(s.anonymizer));
}

std::vector<RuleConfig> rules_of(const Settings& s) {
  std::vector<RuleConfig> out;
  for (const auto& name : s.rule) {
    auto kind = rule_from_name(name);
    if (!kind) invalid("unknown rule '" + name + "'");
    RuleConfig r{*kind, s.n, s.seed, s.structural_tokens};
    r.validate();
    out.push_back(r);
  }
  if (out.empty()) invalid("--rule is required");
  return out;
}

std::unique_ptr<Normalizer> normalizer_of(const Settings& s) {
  if (s.sort_children.empty()) return std::make_unique<IdentityNormalizer>();
  return std::make_unique<SortedChildrenNormalizer>(
      dialect_of(s), std::set<std::string>(s.sort_children.begin(), s.sort_children.end()));
}

json structure_json(const LocalStructure& st) {
  return {{"shape", shape_name(st.shape)}, {"labels", st.labels}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Prediction records with correctness judged against the dataset program,
// optionally restricted to `keep` ids.
std::vector<PredictionRecord> load_predictions(Context& c, const Dataset& d,
                                               const std::set<std::string>* keep) {
  std::vector<PredictionRecord> out;
  auto normalizer = normalizer_of(c.s);
  for (const JsonLine& line : read_jsonl(need(c.s.predictions, "--predictions"))) {
    PredictionRecord r;
    r.id = require_string(line, "id");
    r.model = require_string(line, "model");
    r.prediction = require_string(line, "prediction");
    auto idx = d.find(r.id);
    if (!idx) {
      throw Error(ErrorCode::kMalformedInput,
                  "line " + std::to_string(line.line) + ": unknown id '" + r.id + "'");
    }
    if (keep && !keep->count(r.id)) continue;
    r.correct = exact_match(d.example(*idx).program, r.prediction, *normalizer);
    out.push_back(std::move(r));
  }
  return out;
}

// Per-id gold labels: majority exact match across models; ties omitted.
std::map<std::string, int> gold_labels(std::span<const PredictionRecord> records) {
  std::map<std::string, std::map<std::string, bool>> by_id;
  for (const auto& r : records) by_id[r.id][r.model] = r.correct;
  std::map<std::string, int> out;
  for (const auto& [id, models] : by_id) {
    // std::vector<bool> has no contiguous storage to span over.
    std::unique_ptr<bool[]> flags(new bool[models.size()]);
    size_t k = 0;
    for (const auto& [m, ok] : models) flags[k++] = ok;
    if (auto label = majority_label(std::span<const bool>(flags.get(), k))) {
      out[id] = *label;
    }
  }
  return out;
}

json model_report(std::span<const PredictionRecord> records) {
  std::map<std::string, std::pair<size_t, size_t>> per_model;
  for (const auto& r : records) {
    auto& [right, total] = per_model[r.model];
    right += r.correct;
    ++total;
  }
  json report = json::object();
  json accuracy = json::object();
  std::vector<double> accs;
  for (const auto& [m, rt] : per_model) {
    const double a = static_cast<double>(rt.first) / rt.second;
    accuracy[m] = a;
    accs.push_back(a);
  }
  report["models"] = json::array();
  for (const auto& [m, _] : per_model) report["models"].push_back(m);
  report["accuracy"] = accuracy;
  json agreement = json::object();
  for (int q = 1; q <= static_cast<int>(per_model.size()); ++q) {
    agreement[std::to_string(q)] = agreement_rate(records, q);
  }
  report["agreement"] = agreement;
  report["random_agreement"] = random_agreement(accs);
  return report;
}

std::set<std::string> id_set(const std::vector<std::string>& ids) {
  return {ids.begin(), ids.end()};
}

// ---- subcommands ----

void cmd_parse(Context& c) {
  const Dataset d = load_dataset(c);
  const ShapeFilter shapes = shapes_of(c.s);
  std::vector<json> lines;
  for (size_t i = 0; i < d.size(); ++i) {
    const ProgramGraph& g = d.graph(i);
    json labels = json::array();
    json parents = json::array();
    for (NodeId v = 0; v < g.size(); ++v) {
      labels.push_back(g.label(v));
      parents.push_back(g.parent(v));
    }
    json sib = json::array();
    for (auto e : g.sibling_edges()) sib.push_back({e.left, e.right});
    json structures = json::array();
    for (const auto& st : extract(g, c.s.n, shapes)) structures.push_back(structure_json(st));
    lines.push_back({{"id", d.example(i).id},
                     {"labels", labels},
                     {"parents", parents},
                     {"sibling_edges", sib},
                     {"symbols", symbol_sequence(g, false)},
                     {"structures", structures},
                     {"config_hash", c.hash}});
  }
  c.files["graphs.jsonl"] = to_jsonl(lines);
  c.summary["examples"] = d.size();
}

void cmd_extract(Context& c) {
  const Dataset d = load_dataset(c);
  std::vector<ProgramGraph> graphs = d.graphs();
  if (!c.s.split.empty()) graphs = d.graphs_of(d.indices_of(load_split(c).train));
  std::vector<json> lines;
  for (const auto& st : corpus_structures(graphs, c.s.n, shapes_of(c.s))) {
    json j = structure_json(st);
    j["config_hash"] = c.hash;
    lines.push_back(std::move(j));
  }
  c.files["structures.jsonl"] = to_jsonl(lines);
  c.summary["structures"] = lines.size();
}

void cmd_score(Context& c) {
  const Dataset d = load_dataset(c);
  const Split split = load_split(c);
  const auto rules = rules_of(c.s);
  const auto train = d.graphs_of(d.indices_of(split.train));
  const auto test = d.indices_of(split.test);
  if (test.empty()) throw Error(ErrorCode::kEmptyTestSet, "split has no test examples");

  std::vector<PredictionRecord> records;
  std::map<std::string, int> gold;
  if (!c.s.predictions.empty()) {
    const auto keep = id_set(split.test);
    records = load_predictions(c, d, &keep);
    gold = gold_labels(records);
  }
  std::vector<json> lines;
  json report = {{"config_hash", c.hash},
                 {"n_test", test.size()},
                 {"n_labeled", gold.size()},
                 {"rules", json::array()},
                 {"mean_easiness", json::object()},
                 {"auc", json::object()},
                 {"f1_threshold", json::object()}};
  for (const RuleConfig& rule : rules) {
    const std::string name = rule.display_name();
    EasinessModel model(train, rule);
    std::vector<ScoredLabel> labeled;
    double total = 0.0;
    for (size_t i : test) {
      const std::string& id = d.example(i).id;
      const double e = model.score(d.graph(i), id);
      total += e;
      auto g = gold.find(id);
      json line = {{"id", id}, {"rule", name}, {"easiness", e}, {"config_hash", c.hash}};
      line["gold"] = g == gold.end() ? json(nullptr) : json(g->second);
      if (g != gold.end()) labeled.push_back({e, g->second});
      lines.push_back(std::move(line));
    }
    report["rules"].push_back(name);
    report["mean_easiness"][name] = total / test.size();
    bool both = false;
    for (const auto& l : labeled) both |= l.gold != labeled.front().gold;
    if (both) {
      report["auc"][name] = auc(labeled);
      ThresholdChoice t = f1_optimal_threshold(labeled);
      report["f1_threshold"][name] = {{"threshold", t.threshold}, {"f1", t.f1}};
    } else {
      report["auc"][name] = nullptr;
      report["f1_threshold"][name] = nullptr;
    }
  }
  if (!records.empty()) report["predictions"] = model_report(records);
  c.files["scores.jsonl"] = to_jsonl(lines);
  c.files["report.json"] = dump(report);
  c.summary["auc"] = report["auc"];
}

void write_split(Context& c, const std::string& name, const Split& s) {
  json j = split_to_json(s);
  j["config_hash"] = c.hash;
  c.files[name] = dump(j);
}

void write_split_family(Context& c, const std::vector<Split>& splits) {
  json index = {{"config_hash", c.hash}, {"count", splits.size()}, {"files", json::array()}};
  for (size_t k = 0; k < splits.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "split-%03zu.json", k);
    write_split(c, name, splits[k]);
    index["files"].push_back({{"file", name},
                              {"train", splits[k].train.size()},
                              {"test", splits[k].test.size()}});
  }
  c.files["splits.json"] = dump(index);
  c.summary["splits"] = splits.size();
}

void cmd_split_template(Context& c) {
  const Dataset d = load_dataset(c);
  check_fraction(c.s.holdout_fraction, "--holdout-fraction");
  TemplateSplitConfig cfg{c.s.holdout_fraction, c.s.k_train, c.s.k_test, c.s.seed,
                          c.s.max_attempts};
  Split s = template_split(d, load_anonymizer(c.s), cfg);
  write_split(c, "split.json", s);
  c.summary["train"] = s.train.size();
  c.summary["test"] = s.test.size();
}

void cmd_split_iid(Context& c) {
  const Dataset d = load_dataset(c);
  check_fraction(c.s.holdout_fraction, "--holdout-fraction");
  Split s = iid_split(d, c.s.holdout_fraction, c.s.seed, c.s.max_attempts);
  write_split(c, "split.json", s);
  c.summary["train"] = s.train.size();
  c.summary["test"] = s.test.size();
}

std::vector<GrammarRule> load_grammar(const std::string& path) {
  std::vector<GrammarRule> out;
  for (const JsonLine& line : read_jsonl(path)) {
    GrammarRule r;
    r.id = require_string(line, "id");
    r.lhs = require_string(line, "lhs");
    auto it = line.value.find("rhs");
    if (it == line.value.end() || !it->is_array()) {
      throw Error(ErrorCode::kMalformedInput,
                  "line " + std::to_string(line.line) + ": 'rhs' must be a list");
    }
    for (const auto& sym : *it) {
      if (!sym.is_string()) {
        throw Error(ErrorCode::kMalformedInput,
                    "line " + std::to_string(line.line) + ": 'rhs' entries must be strings");
      }
      r.rhs.push_back(sym.get<std::string>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

void cmd_split_grammar(Context& c) {
  const Dataset d = load_dataset(c);
  const auto grammar = load_grammar(need(c.s.grammar, "--grammar"));
  write_split_family(c, grammar_splits(d, grammar));
}

void cmd_split_adversarial(Context& c) {
  const Dataset d = load_dataset(c);
  check_fraction(c.s.k_frac, "--k-frac");
  check_fraction(c.s.similar_fraction, "--similar-fraction");
  AdversarialConfig cfg;
  cfg.n = c.s.n;
  cfg.shapes = shapes_of(c.s);
  cfg.similar_fraction = c.s.similar_fraction;
  cfg.max_test_template_fraction = c.s.k_frac;
  cfg.tau = c.s.tau;
  cfg.seed = c.s.seed;
  write_split_family(c, adversarial_nls_splits(d, cfg, load_anonymizer(c.s)));
}

void sample_common(Context& c, bool by_structure) {
  const Dataset d = load_dataset(c);
  if (c.s.budget == 0) invalid("--budget must be positive");
  std::vector<StructureSet> pool;
  for (const auto& g : d.graphs()) pool.push_back(extract(g, c.s.n));
  const auto picked = by_structure ? sample_by_structures(pool, c.s.budget, c.s.seed)
                                   : sample_random(pool.size(), c.s.budget, c.s.seed);
  json selected = json::array();
  for (size_t i : picked) selected.push_back(d.example(i).id);
  json j = {{"method", by_structure ? "structure" : "random"},
            {"budget", c.s.budget},
            {"seed", c.s.seed},
            {"n", c.s.n},
            {"selected", selected},
            {"coverage", coverage(pool, picked)},
            {"config_hash", c.hash}};
  c.files["sample.json"] = dump(j);
  c.summary["selected"] = picked.size();
  c.summary["coverage"] = j["coverage"];
}

// Scores file grouped by rule, keeping labeled lines only.
std::map<std::string, std::vector<ScoredLabel>> load_scores(Context& c) {
  std::map<std::string, std::vector<ScoredLabel>> out;
  for (const JsonLine& line : read_jsonl(need(c.s.scores, "--scores"))) {
    const std::string rule = require_string(line, "rule");
    auto e = line.value.find("easiness");
    if (e == line.value.end() || !e->is_number()) {
      throw Error(ErrorCode::kMalformedInput,
                  "line " + std::to_string(line.line) + ": missing number 'easiness'");
    }
    auto g = line.value.find("gold");
    if (g == line.value.end() || g->is_null()) {
      out[rule];
      continue;
    }
    if (!g->is_number_integer() || (g->get<int>() != 0 && g->get<int>() != 1)) {
      throw Error(ErrorCode::kMalformedInput,
                  "line " + std::to_string(line.line) + ": 'gold' must be 0, 1 or null");
    }
    out[rule].push_back({e->get<double>(), g->get<int>()});
  }
  return out;
}

void cmd_eval_auc(Context& c) {
  json result = json::object();
  for (const auto& [rule, labeled] : load_scores(c)) result[rule] = auc(labeled);
  c.summary = {{"auc", result}};
}

void cmd_eval_f1(Context& c) {
  json result = json::object();
  for (const auto& [rule, labeled] : load_scores(c)) {
    ThresholdChoice t = f1_optimal_threshold(labeled);
    result[rule] = {{"threshold", t.threshold}, {"f1", t.f1}};
  }
  c.summary = {{"f1_threshold", result}};
}

void cmd_eval_agreement(Context& c) {
  const Dataset d = load_dataset(c);
  std::set<std::string> keep;
  if (!c.s.split.empty()) keep = id_set(load_split(c).test);
  const auto records = load_predictions(c, d, c.s.split.empty() ? nullptr : &keep);
  json report = model_report(records);
  report["ids"] = gold_labels(records).size();
  c.summary = report;
}

std::vector<double> numbers(const JsonLine& line, const char* key) {
  auto it = line.value.find(key);
  if (it == line.value.end() || !it->is_number()) {
    throw Error(ErrorCode::kMalformedInput,
                "line " + std::to_string(line.line) + ": missing number '" + key + "'");
  }
  return {it->get<double>()};
}

void cmd_eval_pearson(Context& c) {
  if (!c.s.pairs.empty()) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const JsonLine& line : read_jsonl(c.s.pairs)) {
      xs.push_back(numbers(line, "x")[0]);
      ys.push_back(numbers(line, "y")[0]);
    }
    c.summary = {{"pearson", pearson(xs, ys)}, {"points", xs.size()}};
    return;
  }
  // One point per split: mean test easiness against observed accuracy.
  const Dataset d = load_dataset(c);
  const auto rules = rules_of(c.s);
  std::vector<double> accuracy;
  std::vector<std::vector<double>> easiness(rules.size());
  json points = json::array();
  for (const JsonLine& line : read_jsonl(need(c.s.results, "--results or --pairs"))) {
    const std::string path = require_string(line, "split");
    const double acc = numbers(line, "accuracy")[0];
    c.add_input("split:" + path, path);
    const Split s = split_from_json(read_json(path));
    json point = {{"split", path}, {"accuracy", acc}, {"easiness", json::object()}};
    for (size_t r = 0; r < rules.size(); ++r) {
      const double e = split_easiness(d, s, rules[r]);
      easiness[r].push_back(e);
      point["easiness"][rules[r].display_name()] = e;
    }
    accuracy.push_back(acc);
    points.push_back(std::move(point));
  }
  json result = json::object();
  for (size_t r = 0; r < rules.size(); ++r) {
    result[rules[r].display_name()] = pearson(easiness[r], accuracy);
  }
  c.summary = {{"pearson", result}, {"points", points}};
}

void cmd_eval_tmcd(Context& c) {
  const Dataset d = load_dataset(c);
  const Split s = load_split(c);
  const auto train = d.graphs_of(d.indices_of(s.train));
  const auto test = d.graphs_of(d.indices_of(s.test));
  c.summary = {{"compound_divergence", compound_divergence(train, test)},
               {"atom_divergence", atom_divergence(train, test)},
               {"alpha", 0.5}};
}

void cmd_eval_token_analysis(Context& c) {
  const Dataset d = load_dataset(c);
  const Split s = load_split(c);
  const auto keep = id_set(s.test);
  const auto records = load_predictions(c, d, &keep);
  const auto train = d.graphs_of(d.indices_of(s.train));
  std::map<std::string, StructureSet> unobserved;
  std::map<std::string, std::pair<size_t, size_t>> per_model;
  size_t cases = 0;
  size_t flagged = 0;
  for (const auto& r : records) {
    if (r.correct) continue;
    const size_t i = *d.find(r.id);
    auto it = unobserved.find(r.id);
    if (it == unobserved.end()) it = unobserved.emplace(r.id, unobserved_pairs(train, d.graph(i))).first;
    if (it->second.empty()) continue;
    const auto gold = split_tokens(d.example(i).program);
    const auto pred = split_tokens(r.prediction);
    if (gold == pred) continue;
    const bool hit = token_error_localization(gold, pred, it->second).flagged;
    ++cases;
    flagged += hit;
    per_model[r.model].first += 1;
    per_model[r.model].second += hit;
  }
  json by_model = json::object();
  for (const auto& [m, cf] : per_model) {
    by_model[m] = {{"cases", cf.first},
                   {"flagged", cf.second},
                   {"fraction", static_cast<double>(cf.second) / cf.first}};
  }
  c.summary = {{"cases", cases},
               {"flagged", flagged},
               {"fraction", cases ? json(static_cast<double>(flagged) / cases) : json(nullptr)},
               {"by_model", by_model}};
}

// ---- option registry ----

class Registry {
 public:
  Registry(CLI::App& app, Settings& s) : app_(app), s_(s) {}

  Leaf& leaf(CLI::App* sub, const std::string& command, Handler h, bool is_eval = false) {
    auto& l = leaves_[sub];
    l.command = command;
    l.handler = std::move(h);
    l.is_eval = is_eval;
    current_ = sub;
    add("config", s_.config, "JSON file of flat settings; flags override it");
    add("out", s_.out, is_eval ? "Directory for the result and manifest (optional)"
                               : "Output directory");
    return l;
  }

  template <typename T>
  Registry& add(const std::string& name, T& target, const std::string& help) {
    CLI::Option* o = current_->add_option("--" + name, target, help);
    if constexpr (!std::is_same_v<T, std::string>) o->capture_default_str();
    leaves_[current_].bound.push_back({name, o, [&target] { return json(target); }});
    return *this;
  }

  Registry& dataset() {
    add("dataset", s_.dataset, "Dataset JSONL");
    return add("dialect", s_.dialect, "Program dialect: func-comma or sexpr");
  }

  Leaf* find(CLI::App* sub) {
    auto it = leaves_.find(sub);
    return it == leaves_.end() ? nullptr : &it->second;
  }

  Settings& s() { return s_; }

 private:
  CLI::App& app_;
  Settings& s_;
  CLI::App* current_ = nullptr;
  std::map<CLI::App*, Leaf> leaves_;
};

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number() || v.is_null()) return v.dump();
  throw Error(ErrorCode::kMalformedInput, "config values must be scalars or lists of scalars");
}

// Settings from --config fill options not given on the command line;
// LSGEN_SEED fills --seed when neither provides it.
void apply_config(Leaf& leaf) {
  auto find = [&](const std::string& name) -> Bound* {
    for (auto& b : leaf.bound) {
      if (b.name == name) return &b;
    }
    return nullptr;
  };
  Bound* config = find("config");
  if (config && !config->option->empty()) {
    const std::string path = config->option->as<std::string>();
    const json j = read_json(path);
    if (!j.is_object()) throw Error(ErrorCode::kMalformedInput, path + ": config must be an object");
    for (const auto& [key, value] : j.items()) {
      std::string name = key;
      std::replace(name.begin(), name.end(), '_', '-');
      Bound* b = find(name);
      if (!b || name == "config") {
        invalid(path + ": unknown setting '" + key + "' for '" + leaf.command + "'");
      }
      if (!b->option->empty()) continue;
      if (value.is_array()) {
        for (const auto& v : value) b->option->add_result(scalar_text(v));
      } else {
        b->option->add_result(scalar_text(value));
      }
      b->option->run_callback();
    }
  }
  if (Bound* seed = find("seed"); seed && seed->option->empty()) {
    if (const char* env = std::getenv("LSGEN_SEED"); env && *env) {
      seed->option->add_result(env);
      seed->option->run_callback();
    }
  }
}

void build(CLI::App& app, Registry& r) {
  Settings& s = r.s();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto* parse = app.add_subcommand("parse", "Dump program graphs and their structures");
  r.leaf(parse, "parse", cmd_parse);
  r.dataset().add("n", s.n, "Structure order (2-4)").add("shapes", s.shapes, "all, nosib or nopc");

  auto* extract = app.add_subcommand("extract", "Dump the corpus structure set");
  r.leaf(extract, "extract", cmd_extract);
  r.dataset()
      .add("split", s.split, "Restrict to the train side of this split")
      .add("n", s.n, "Structure order (2-4)")
      .add("shapes", s.shapes, "all, nosib or nopc");

  auto* score = app.add_subcommand("score", "Easiness per test instance and rule");
  r.leaf(score, "score", cmd_score);
  r.dataset()
      .add("split", s.split, "Split JSON")
      .add("rule", s.rule, "nls, nls-nosib, nls-nopc, nls-nosim, ngram, length, random")
      .add("n", s.n, "Order of the structure or n-gram rules")
      .add("seed", s.seed, "Seed of the random rule")
      .add("structural-tokens", s.structural_tokens, "Keep ( ) , in n-gram sequences")
      .add("predictions", s.predictions, "Predictions JSONL for gold labels")
      .add("sort-children", s.sort_children, "Symbols whose children are order-free");

  auto* split = app.add_subcommand("split", "Generate train/test splits");
  split->require_subcommand(1);
  auto* tmpl = split->add_subcommand("template", "Hold out program templates");
  r.leaf(tmpl, "split template", cmd_split_template);
  r.dataset()
      .add("anonymizer", s.anonymizer, "Anonymizer JSON, or 'covr'")
      .add("holdout-fraction", s.holdout_fraction, "Share of templates held out")
      .add("k-train", s.k_train, "Per-template cap on train examples")
      .add("k-test", s.k_test, "Per-template cap on test examples")
      .add("seed", s.seed, "Run seed")
      .add("max-attempts", s.max_attempts, "Redraws before giving up");
  auto* iid = split->add_subcommand("iid", "Random example holdout");
  r.leaf(iid, "split iid", cmd_split_iid);
  r.dataset()
      .add("holdout-fraction", s.holdout_fraction, "Share of examples held out")
      .add("seed", s.seed, "Run seed")
      .add("max-attempts", s.max_attempts, "Redraws before giving up");
  auto* gram = split->add_subcommand("grammar", "Hold out grammar-rule pairs");
  r.leaf(gram, "split grammar", cmd_split_grammar);
  r.dataset().add("grammar", s.grammar, "Grammar JSONL {id, lhs, rhs}");
  auto* adv = split->add_subcommand("adversarial", "Hold out a structure and its neighbors");
  r.leaf(adv, "split adversarial", cmd_split_adversarial);
  r.dataset()
      .add("anonymizer", s.anonymizer, "Anonymizer JSON, or 'covr'")
      .add("n", s.n, "Structure order (2-4)")
      .add("shapes", s.shapes, "all or nosib")
      .add("similar-fraction", s.similar_fraction, "Share of similar structures held out")
      .add("k-frac", s.k_frac, "Largest share of templates in test")
      .add("tau", s.tau, "Largest mean test easiness kept")
      .add("seed", s.seed, "Run seed");

  auto* sample = app.add_subcommand("sample", "Budgeted training-set selection");
  sample->require_subcommand(1);
  for (const char* kind : {"structure", "random"}) {
    const bool by_structure = std::string(kind) == "structure";
    auto* sub = sample->add_subcommand(kind, by_structure ? "Cover unseen structures first"
                                                          : "Uniform sample");
    r.leaf(sub, std::string("sample ") + kind,
           [by_structure](Context& c) { sample_common(c, by_structure); });
    r.dataset()
        .add("budget", s.budget, "Number of examples to select")
        .add("n", s.n, "Structure order used for coverage")
        .add("seed", s.seed, "Run seed");
  }

  auto* eval = app.add_subcommand("eval", "Evaluation metrics");
  eval->require_subcommand(1);
  auto* auc_cmd = eval->add_subcommand("auc", "ROC AUC per rule from a scores file");
  r.leaf(auc_cmd, "eval auc", cmd_eval_auc, true);
  r.add("scores", s.scores, "Scores JSONL");
  auto* f1 = eval->add_subcommand("f1-threshold", "F1-optimal easiness threshold per rule");
  r.leaf(f1, "eval f1-threshold", cmd_eval_f1, true);
  r.add("scores", s.scores, "Scores JSONL");
  auto* agree = eval->add_subcommand("agreement", "Model accuracy and agreement rates");
  r.leaf(agree, "eval agreement", cmd_eval_agreement, true);
  r.dataset()
      .add("split", s.split, "Restrict to the test side of this split")
      .add("predictions", s.predictions, "Predictions JSONL")
      .add("sort-children", s.sort_children, "Symbols whose children are order-free");
  auto* pear = eval->add_subcommand("pearson", "Correlation of easiness and accuracy");
  r.leaf(pear, "eval pearson", cmd_eval_pearson, true);
  r.dataset()
      .add("results", s.results, "JSONL {split, accuracy} per split")
      .add("pairs", s.pairs, "JSONL {x, y} points")
      .add("rule", s.rule, "Rules scored per split")
      .add("n", s.n, "Rule order")
      .add("seed", s.seed, "Seed of the random rule")
      .add("structural-tokens", s.structural_tokens, "Keep ( ) , in n-gram sequences");
  auto* tmcd = eval->add_subcommand("tmcd", "Compound divergence of a split");
  r.leaf(tmcd, "eval tmcd", cmd_eval_tmcd, true);
  r.dataset().add("split", s.split, "Split JSON");
  auto* tok = eval->add_subcommand("token-analysis", "Where wrong predictions first diverge");
  r.leaf(tok, "eval token-analysis", cmd_eval_token_analysis, true);
  r.dataset()
      .add("split", s.split, "Split JSON")
      .add("predictions", s.predictions, "Predictions JSONL")
      .add("sort-children", s.sort_children, "Symbols whose children are order-free");
}

CLI::App* chosen_leaf(CLI::App* app) {
  auto subs = app->get_subcommands();
  if (subs.empty()) return app;
  return chosen_leaf(subs.front());
}

void execute(Leaf& leaf, Settings& s, std::ostream& out) {
  apply_config(leaf);
  Context c{leaf, s, out, json::object(), {}, json::object(), {}, json::object()};
  c.config["command"] = leaf.command;
  for (const auto& b : leaf.bound) {
    if (b.name == "out" || b.name == "config") continue;
    c.config[b.name] = b.value();
  }
  c.hash = Context::hex(fnv1a64(c.config.dump()));
  for (const char* name : {"config", "dataset", "split", "predictions", "grammar", "anonymizer",
                           "scores", "results", "pairs"}) {
    for (const auto& b : leaf.bound) {
      if (b.name != name) continue;
      const json v = b.value();
      if (v.is_string() && !v.get<std::string>().empty() && v.get<std::string>() != "covr") {
        c.add_input(name, v.get<std::string>());
      }
    }
  }
  if (!leaf.is_eval && s.out.empty()) invalid("--out is required");
  leaf.handler(c);
  c.summary["config_hash"] = c.hash;
  if (leaf.is_eval) {
    c.files[leaf.command.substr(5) + ".json"] = dump(c.summary);
  }
  if (!s.out.empty()) {
    const fs::path dir = s.out;
    json outputs = json::array();
    for (const auto& [name, contents] : c.files) {
      write_file_atomic(dir / name, contents);
      outputs.push_back(name);
    }
    json manifest = {{"tool", "lsgen"},
                     {"version", kVersion},
                     {"command", leaf.command},
                     {"config", c.config},
                     {"config_hash", c.hash},
                     {"inputs", c.inputs},
                     {"outputs", outputs}};
    write_file_atomic(dir / "manifest.json", dump(manifest));
  }
  out << c.summary.dump(2) << "\n";
}

void report_error(std::ostream& err, std::string_view code, const std::string& message) {
  err << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings settings;
  CLI::App app{"Local-structure tools for compositional generalization splits"};
  app.name("lsgen");
  Registry registry(app, settings);
  build(app, registry);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "Usage", e.what());
    return 2;
  }
  try {
    Leaf* leaf = registry.find(chosen_leaf(&app));
    if (!leaf) invalid("no subcommand selected");
    execute(*leaf, settings, out);
  } catch (const Error& e) {
    report_error(err, error_code_name(e.code()), e.what());
    return 1;
  } catch (const CLI::ParseError& e) {
    report_error(err, "Usage", e.what());
    return 2;
  } catch (const json::exception& e) {
    report_error(err, "MalformedInput", e.what());
    return 1;
  } catch (const fs::filesystem_error& e) {
    report_error(err, "Io", e.what());
    return 1;
  }
  return 0;
}

}  // namespace lsgen::cli
