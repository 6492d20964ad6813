// Copyright 2026 The tandem-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// teval: tandem countermeasure / speaker-verification evaluation from score
// files. See README.md for the subcommands and file formats.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "teval/calibration.hpp"
#include "teval/detmetrics.hpp"
#include "teval/error.hpp"
#include "teval/recon_attack.hpp"
#include "teval/recon_io.hpp"
#include "teval/report.hpp"
#include "teval/score_io.hpp"
#include "teval/synthgen.hpp"
#include "teval/tandem.hpp"
#include "teval/zebra.hpp"

namespace fs = std::filesystem;
using namespace teval;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDegenerate = 3;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string cm_scores;
  std::string asv_scores;
  std::string keys;
  std::string config;
  std::string out;
  std::string cm_format = "canonical";
  std::string asv_threshold = "eer";
  std::optional<double> cm_threshold;
  std::string privacy_class = "spoof";
  std::string subsystem = "asv";
  std::uint64_t seed = 0;
  CostModel cost = CostModel::illustrative_default();
  bool cost_is_default = true;
  bool strict_join = true;
};

struct SynthOptions {
  std::vector<std::size_t> n{1000, 1000, 1000};
  std::vector<double> cm_means{2.0, 2.0, -2.0};
  std::vector<double> asv_means{2.0, -2.0, 1.0};
  double cm_sigma = 1.0;
  double asv_sigma = 1.0;
  std::size_t embedding_pairs = 0;
  int embedding_dim = 4;
};

struct ReconOptions {
  std::string pairs;
  std::vector<int> hidden;
  int epochs = 200;
  double learning_rate = 0.01;
  std::size_t batch_size = 16;
  double cosine_weight = 1.0;
  double reconstruction_weight = 1.0;
  std::string penalty = "squared";
  std::string init = "random";
  double holdout = 0.2;
};

struct ZebraCliOptions {
  std::string name = "system";
};

// Applies config-file values to options that were not given on the command
// line.
void apply_config(CLI::App& app, GlobalOptions& g) {
  if (g.config.empty()) return;
  std::ifstream in(g.config);
  if (!in) throw Error(ErrorCategory::kIo, "cannot open config '" + g.config + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCategory::kParse, g.config + ": " + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCategory::kParse, g.config + ": expected a JSON object");
  }
  auto unset = [&app](const std::string& flag) {
    return app.get_option(flag)->count() == 0;
  };
  try {
    for (const auto& [key, value] : j.items()) {
      std::string flag = "--" + key;
      for (char& c : flag) if (c == '_') c = '-';
      if (key == "strict_join") {
        if (unset("--strict-join") && unset("--no-strict-join")) {
          g.strict_join = value.get<bool>();
        }
        continue;
      }
      const CLI::Option* opt = nullptr;
      try {
        opt = app.get_option(flag);
      } catch (const CLI::OptionNotFound&) {
        throw Error(ErrorCategory::kParse,
                    g.config + ": unknown key '" + key + "'");
      }
      if (opt->count() > 0) continue;
      if (key == "cm_scores") g.cm_scores = value.get<std::string>();
      else if (key == "asv_scores") g.asv_scores = value.get<std::string>();
      else if (key == "keys") g.keys = value.get<std::string>();
      else if (key == "out") g.out = value.get<std::string>();
      else if (key == "cm_format") g.cm_format = value.get<std::string>();
      else if (key == "asv_threshold") {
        g.asv_threshold = value.is_string() ? value.get<std::string>()
                                            : format_real(value.get<double>());
      }
      else if (key == "cm_threshold") g.cm_threshold = value.get<double>();
      else if (key == "privacy_class") g.privacy_class = value.get<std::string>();
      else if (key == "subsystem") g.subsystem = value.get<std::string>();
      else if (key == "seed") g.seed = value.get<std::uint64_t>();
      else if (key == "pi_tar") g.cost.pi_tar = value.get<double>();
      else if (key == "pi_non") g.cost.pi_non = value.get<double>();
      else if (key == "pi_spoof") g.cost.pi_spoof = value.get<double>();
      else if (key == "c_miss") g.cost.c_miss = value.get<double>();
      else if (key == "c_fa") g.cost.c_fa = value.get<double>();
      else if (key == "c_fa_spoof") g.cost.c_fa_spoof = value.get<double>();
      else {
        throw Error(ErrorCategory::kParse,
                    g.config + ": key '" + key + "' is not configurable");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCategory::kParse, g.config + ": " + e.what());
  }
}

OrderedJson effective_config(const GlobalOptions& g) {
  OrderedJson j;
  j["cm_scores"] = g.cm_scores;
  j["asv_scores"] = g.asv_scores;
  j["keys"] = g.keys;
  j["cm_format"] = g.cm_format;
  j["strict_join"] = g.strict_join;
  j["asv_threshold"] = g.asv_threshold;
  j["cm_threshold"] = g.cm_threshold ? json_number(*g.cm_threshold)
                                     : OrderedJson("eer");
  j["privacy_class"] = g.privacy_class;
  j["subsystem"] = g.subsystem;
  j["seed"] = g.seed;
  j["cost_model"] = cost_model_json(g.cost, g.cost_is_default);
  return j;
}

JoinMode join_mode(const GlobalOptions& g) {
  return g.strict_join ? JoinMode::kStrict : JoinMode::kIntersection;
}

void require_path(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

std::vector<ScoreRecord> load_cm(const GlobalOptions& g) {
  if (g.cm_format != "canonical" && g.cm_format != "asvspoof2019") {
    throw UsageError("--cm-format must be canonical or asvspoof2019");
  }
  return read_scores_file(g.cm_scores, g.cm_format == "asvspoof2019");
}

TrialTable load_table(const GlobalOptions& g) {
  require_path(g.cm_scores, "--cm-scores");
  require_path(g.asv_scores, "--asv-scores");
  require_path(g.keys, "--keys");
  const KeyMap keys = read_keys_file(g.keys);
  return join(load_cm(g), read_scores_file(g.asv_scores), keys, join_mode(g));
}

TandemSettings tandem_settings(const GlobalOptions& g) {
  TandemSettings s;
  s.cost = g.cost;
  s.cost_is_default = g.cost_is_default;
  if (g.asv_threshold != "eer") {
    try {
      std::size_t used = 0;
      s.asv_threshold = std::stod(g.asv_threshold, &used);
      if (used != g.asv_threshold.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError("--asv-threshold must be a number or 'eer'");
    }
  }
  s.cm_threshold = g.cm_threshold;
  auto scope = parse_privacy_scope(g.privacy_class);
  if (!scope) throw UsageError("--privacy-class must be spoof, target, nontarget or all");
  s.privacy_scope = *scope;
  return s;
}

// Positive / negative score sets of the subsystem selected by --subsystem:
// target vs nontarget ASV scores, or bona fide vs spoof CM scores.
std::pair<VectorXr, VectorXr> detection_scores(const GlobalOptions& g) {
  require_path(g.keys, "--keys");
  const KeyMap keys = read_keys_file(g.keys);
  if (g.subsystem == "asv") {
    require_path(g.asv_scores, "--asv-scores");
    auto split = split_by_class(read_scores_file(g.asv_scores), keys, join_mode(g));
    return {as_vector(split[TrialClass::kTarget]),
            as_vector(split[TrialClass::kNonTarget])};
  }
  if (g.subsystem == "cm") {
    require_path(g.cm_scores, "--cm-scores");
    auto split = split_by_class(load_cm(g), keys, join_mode(g));
    return {as_vector(split.bona_fide()), as_vector(split[TrialClass::kSpoof])};
  }
  throw UsageError("--subsystem must be asv or cm");
}

void write_file(const GlobalOptions& g, const std::string& name,
                const std::string& content) {
  if (g.out.empty()) return;
  fs::create_directories(g.out);
  const fs::path path = fs::path(g.out) / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error(ErrorCategory::kIo, "cannot write '" + path.string() + "'");
}

void emit_report(const GlobalOptions& g, const std::string& command,
                 const OrderedJson& report) {
  const std::string text = dump_report(report);
  write_file(g, command + ".json", text);
  std::cout << text;
}

int cmd_eer(const GlobalOptions& g) {
  require_path(g.keys, "--keys");
  if (g.cm_scores.empty() && g.asv_scores.empty()) {
    throw UsageError("eer needs --cm-scores and/or --asv-scores");
  }
  const KeyMap keys = read_keys_file(g.keys);
  OrderedJson report = report_header("eer", effective_config(g));
  if (!g.cm_scores.empty()) {
    auto split = split_by_class(load_cm(g), keys, join_mode(g));
    const VectorXr bona = as_vector(split.bona_fide());
    const VectorXr spoof = as_vector(split[TrialClass::kSpoof]);
    report["eer_cm"] = eer_json(eer(bona, spoof));
    write_file(g, "det_cm.csv", det_curve_csv(det_curve(bona, spoof)));
  }
  if (!g.asv_scores.empty()) {
    auto split = split_by_class(read_scores_file(g.asv_scores), keys, join_mode(g));
    const VectorXr tar = as_vector(split[TrialClass::kTarget]);
    const VectorXr non = as_vector(split[TrialClass::kNonTarget]);
    report["eer_asv"] = eer_json(eer(tar, non));
    write_file(g, "det_asv.csv", det_curve_csv(det_curve(tar, non)));
  }
  emit_report(g, "eer", report);
  return kExitOk;
}

int cmd_cllr(const GlobalOptions& g) {
  auto [tar, non] = detection_scores(g);
  OrderedJson report = report_header("cllr", effective_config(g));
  report["cllr"] = json_number(cllr(tar, non));
  report["cllr_min"] = json_number(cllr_min(tar, non));
  report["eer"] = eer_json(eer(tar, non));
  write_file(g, "ece.csv", ece_curve_csv(ece_curve(tar, non, 10.0, 0.1)));
  emit_report(g, "cllr", report);
  return kExitOk;
}

int cmd_zebra(const GlobalOptions& g, const ZebraCliOptions& z) {
  auto [tar, non] = detection_scores(g);
  const ZebraOptions options;
  const ZebraProfile profile = zebra_profile(tar, non, options);
  OrderedJson report = report_header("zebra", effective_config(g));
  report["name"] = z.name;
  report["profile"] = zebra_json(profile);
  report["rendering"] = render_profile(z.name, profile);
  write_file(g, "ece.csv", ece_curve_csv(ece_curve(tar, non, options.bound,
                                                   0.1, options.pav)));
  emit_report(g, "zebra", report);
  return kExitOk;
}

int cmd_tdcf(const GlobalOptions& g) {
  g.cost.validate();
  const TrialTable table = load_table(g);
  const TandemSettings settings = tandem_settings(g);
  const real t_asv = settings.asv_threshold.value_or(asv_eer_threshold(table));
  const AsvOperatingPoint asv = asv_rates(table, t_asv);
  const TdcfCoefficients k = tdcf_coefficients(settings.cost, asv);
  const auto curve = tdcf_curve(table.bona_fide_cm_scores(),
                                table.cm_scores(TrialClass::kSpoof), k);
  const MinTdcf best = min_tdcf(curve);

  OrderedJson report = report_header("tdcf", effective_config(g));
  report["cost_model"] = cost_model_json(settings.cost, settings.cost_is_default);
  report["asv_operating_point"] = asv_operating_point_json(asv);
  report["min_t_dcf"] = json_number(best.value);
  report["theta_star"] = json_number(best.theta_cm);
  write_file(g, "tdcf_curve.csv", tdcf_curve_csv(curve));
  emit_report(g, "tdcf", report);
  return kExitOk;
}

int cmd_tandem(const GlobalOptions& g, const std::string& command) {
  g.cost.validate();
  const TrialTable table = load_table(g);
  const TandemSettings settings = tandem_settings(g);
  const TandemAnalysis analysis = analyze_tandem(table, settings);
  OrderedJson report = tandem_report(analysis, settings, command, effective_config(g));
  if (command == "tandem") {
    write_file(g, "tdcf_curve.csv", tdcf_curve_csv(analysis.curve));
    write_file(g, "det_cm.csv",
               det_curve_csv(det_curve(table.bona_fide_cm_scores(),
                                       table.cm_scores(TrialClass::kSpoof))));
    write_file(g, "det_asv.csv",
               det_curve_csv(det_curve(table.asv_scores(TrialClass::kTarget),
                                       table.asv_scores(TrialClass::kNonTarget))));
  }
  emit_report(g, command, report);
  return kExitOk;
}

int cmd_privacy_report(const GlobalOptions& g) {
  const TrialTable table = load_table(g);
  const TandemSettings settings = tandem_settings(g);
  const real t_asv = settings.asv_threshold.value_or(asv_eer_threshold(table));
  const real t_cm = settings.cm_threshold.value_or(cm_eer(table).threshold);
  TrialTable population = table;
  switch (settings.privacy_scope) {
    case PrivacyScope::kSpoof: population = table.filter({TrialClass::kSpoof}); break;
    case PrivacyScope::kTarget: population = table.filter({TrialClass::kTarget}); break;
    case PrivacyScope::kNonTarget: population = table.filter({TrialClass::kNonTarget}); break;
    case PrivacyScope::kAll: break;
  }
  OrderedJson report = report_header("privacy-report", effective_config(g));
  report["privacy_report"] = privacy_report_json(
      privacy_report(population, t_cm, t_asv), t_cm, t_asv, settings.privacy_scope);
  emit_report(g, "privacy-report", report);
  return kExitOk;
}

int cmd_synth(const GlobalOptions& g, const SynthOptions& s) {
  require_path(g.out, "--out");
  if (s.n.size() != 3 || s.cm_means.size() != 3 || s.asv_means.size() != 3) {
    throw UsageError("--n, --cm-means and --asv-means take three values "
                     "(target, nontarget, spoof)");
  }
  SynthSpec spec;
  spec.seed = g.seed;
  for (std::size_t k = 0; k < 3; ++k) {
    spec.cm[k] = {s.cm_means[k], s.cm_sigma, s.n[k]};
    spec.asv[k] = {s.asv_means[k], s.asv_sigma, s.n[k]};
  }
  const TrialTable table = generate(spec);
  write_file(g, "cm_scores.txt", serialize_scores(cm_records(table)));
  write_file(g, "asv_scores.txt", serialize_scores(asv_records(table)));
  write_file(g, "keys.txt", serialize_keys(key_map(table)));

  OrderedJson config = effective_config(g);
  OrderedJson synth;
  synth["n"] = s.n;
  OrderedJson cm_means = OrderedJson::array(), asv_means = OrderedJson::array();
  for (double m : s.cm_means) cm_means.push_back(json_number(m));
  for (double m : s.asv_means) asv_means.push_back(json_number(m));
  synth["cm_means"] = cm_means;
  synth["asv_means"] = asv_means;
  synth["cm_sigma"] = json_number(s.cm_sigma);
  synth["asv_sigma"] = json_number(s.asv_sigma);
  synth["embedding_pairs"] = s.embedding_pairs;
  synth["embedding_dim"] = s.embedding_dim;
  config["synth"] = synth;

  OrderedJson report = report_header("synth", config);
  report["trials"] = table.size();
  report["analytic_eer_cm"] = json_number(
      analytic_eer(s.cm_means[0], s.cm_means[2], s.cm_sigma));
  report["analytic_eer_asv"] = json_number(
      analytic_eer(s.asv_means[0], s.asv_means[1], s.asv_sigma));
  if (s.embedding_pairs > 0) {
    const auto anonymizer = make_linear_anonymizer(s.embedding_dim, 0.5, g.seed);
    const auto pairs = make_linear_pairs(anonymizer, s.embedding_pairs, 1.0, g.seed + 1);
    write_file(g, "embedding_pairs.txt", serialize_embedding_pairs(pairs));
    report["embedding_pairs"] = pairs.size();
  }
  emit_report(g, "synth", report);
  return kExitOk;
}

int cmd_recon(const GlobalOptions& g, const ReconOptions& r) {
  require_path(r.pairs, "--pairs");
  if (!(r.holdout >= 0 && r.holdout < 1)) {
    throw UsageError("--holdout must lie in [0, 1)");
  }
  const auto pairs = read_embedding_pairs(r.pairs);
  const auto n_eval = static_cast<std::size_t>(r.holdout * static_cast<double>(pairs.size()));
  std::vector<EmbeddingPair<double>> training(pairs.begin(), pairs.end() - static_cast<long>(n_eval));
  std::vector<EmbeddingPair<double>> held_out(pairs.end() - static_cast<long>(n_eval), pairs.end());

  TrainOptions options;
  options.hidden = r.hidden;
  options.epochs = r.epochs;
  options.learning_rate = r.learning_rate;
  options.batch_size = r.batch_size;
  options.seed = g.seed;
  options.loss.cosine_weight = r.cosine_weight;
  options.loss.reconstruction_weight = r.reconstruction_weight;
  if (r.penalty == "squared") options.loss.penalty = CosinePenalty::kSquared;
  else if (r.penalty == "absolute") options.loss.penalty = CosinePenalty::kAbsolute;
  else throw UsageError("--penalty must be squared or absolute");
  if (r.init == "random") options.init = InitScheme::kRandom;
  else if (r.init == "identity") options.init = InitScheme::kIdentity;
  else throw UsageError("--init must be random or identity");

  const auto result = train(training, options);
  write_file(g, "recon_net.json", net_to_json(result.net, g.seed));

  OrderedJson config = effective_config(g);
  OrderedJson rc;
  rc["pairs"] = r.pairs;
  rc["hidden"] = r.hidden;
  rc["epochs"] = r.epochs;
  rc["learning_rate"] = json_number(r.learning_rate);
  rc["batch_size"] = r.batch_size;
  rc["reconstruction_weight"] = json_number(r.reconstruction_weight);
  rc["cosine_weight"] = json_number(r.cosine_weight);
  rc["penalty"] = r.penalty;
  rc["init"] = r.init;
  rc["holdout"] = json_number(r.holdout);
  config["recon"] = rc;

  OrderedJson report = report_header("recon", config);
  report["training_pairs"] = training.size();
  report["held_out_pairs"] = held_out.size();
  report["initial_loss"] = json_number(result.initial_loss);
  report["final_loss"] = json_number(result.final_loss);
  report["best_epoch"] = result.best_epoch;
  const auto& eval_set = held_out.empty() ? training : held_out;
  report["baseline_error"] = json_number(mean_baseline_error(eval_set));
  report["reconstruction_error"] = json_number(mean_reconstruction_error(result.net, eval_set));
  emit_report(g, "recon", report);
  return kExitOk;
}

void add_global_options(CLI::App& app, GlobalOptions& g) {
  app.add_option("--cm-scores", g.cm_scores, "Countermeasure score file");
  app.add_option("--asv-scores", g.asv_scores, "Speaker verification score file");
  app.add_option("--keys", g.keys, "Trial key file (target/nontarget/spoof)");
  app.add_option("--config", g.config, "JSON config file; flags override it");
  app.add_option("--out", g.out, "Output directory for reports and curves");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--asv-threshold", g.asv_threshold,
                 "ASV threshold, or 'eer' for the target/nontarget EER threshold");
  app.add_option("--cm-threshold", g.cm_threshold,
                 "CM threshold for the privacy report (default: CM EER threshold)");
  app.add_option("--cm-format", g.cm_format, "canonical or asvspoof2019");
  app.add_option("--privacy-class", g.privacy_class,
                 "Trials forming the anonymized population: spoof, target, nontarget, all");
  app.add_option("--subsystem", g.subsystem, "Scores used by eer/cllr/zebra: asv or cm");
  app.add_option("--pi-tar", g.cost.pi_tar, "Target prior");
  app.add_option("--pi-non", g.cost.pi_non, "Nontarget prior");
  app.add_option("--pi-spoof", g.cost.pi_spoof, "Spoof prior");
  app.add_option("--c-miss", g.cost.c_miss, "Cost of a missed target");
  app.add_option("--c-fa", g.cost.c_fa, "Cost of an accepted nontarget");
  app.add_option("--c-fa-spoof", g.cost.c_fa_spoof, "Cost of an accepted spoof");
  auto* strict = app.add_flag("--strict-join", "Require identical trial ids (default)");
  auto* loose = app.add_flag("--no-strict-join", "Use the intersection of trial ids");
  strict->excludes(loose);
  strict->each([&g](const std::string&) { g.strict_join = true; });
  loose->each([&g](const std::string&) { g.strict_join = false; });
}

bool cost_flags_given(CLI::App& app) {
  for (const char* flag : {"--pi-tar", "--pi-non", "--pi-spoof", "--c-miss",
                           "--c-fa", "--c-fa-spoof"}) {
    if (app.get_option(flag)->count() > 0) return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tandem countermeasure + speaker verification evaluation"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  add_global_options(app, g);

  auto* eer_cmd = app.add_subcommand("eer", "Equal error rates and DET curves");
  auto* cllr_cmd = app.add_subcommand("cllr", "Cllr, Cllr_min and ECE curve");
  auto* zebra_cmd = app.add_subcommand("zebra", "ZEBRA privacy profile");
  auto* tdcf_cmd = app.add_subcommand("tdcf", "Minimum normalized t-DCF and curve");
  auto* tandem_cmd = app.add_subcommand("tandem", "Full tandem report");
  auto* privacy_cmd = app.add_subcommand("privacy-report", "Cascade outcome rates");
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic Gaussian score files");
  auto* recon_cmd = app.add_subcommand("recon", "Train the embedding reconstruction attack");

  ZebraCliOptions z;
  zebra_cmd->add_option("--name", z.name, "System name for the text rendering");

  SynthOptions s;
  synth_cmd->add_option("--n", s.n, "Trials per class: target nontarget spoof")->expected(3);
  synth_cmd->add_option("--cm-means", s.cm_means, "CM score means per class")->expected(3);
  synth_cmd->add_option("--asv-means", s.asv_means, "ASV score means per class")->expected(3);
  synth_cmd->add_option("--cm-sigma", s.cm_sigma, "CM score standard deviation");
  synth_cmd->add_option("--asv-sigma", s.asv_sigma, "ASV score standard deviation");
  synth_cmd->add_option("--embedding-pairs", s.embedding_pairs,
                        "Also write this many linear-anonymizer embedding pairs");
  synth_cmd->add_option("--embedding-dim", s.embedding_dim, "Embedding dimension");

  ReconOptions r;
  recon_cmd->add_option("--pairs", r.pairs, "Embedding pair file");
  recon_cmd->add_option("--hidden", r.hidden, "Hidden layer sizes (none: linear)");
  recon_cmd->add_option("--epochs", r.epochs, "Training epochs");
  recon_cmd->add_option("--lr", r.learning_rate, "Learning rate");
  recon_cmd->add_option("--batch", r.batch_size, "Pair-of-pairs per step");
  recon_cmd->add_option("--cos-weight", r.cosine_weight, "Weight of the cosine term");
  recon_cmd->add_option("--recon-weight", r.reconstruction_weight,
                        "Weight of the reconstruction terms");
  recon_cmd->add_option("--penalty", r.penalty, "Cosine penalty: squared or absolute");
  recon_cmd->add_option("--init", r.init, "random or identity");
  recon_cmd->add_option("--holdout", r.holdout, "Fraction of pairs held out for evaluation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    apply_config(app, g);
    g.cost_is_default = !cost_flags_given(app) && g.cost == CostModel::illustrative_default();
    if (*eer_cmd) return cmd_eer(g);
    if (*cllr_cmd) return cmd_cllr(g);
    if (*zebra_cmd) return cmd_zebra(g, z);
    if (*tdcf_cmd) return cmd_tdcf(g);
    if (*tandem_cmd) return cmd_tandem(g, "tandem");
    if (*privacy_cmd) return cmd_privacy_report(g);
    if (*synth_cmd) return cmd_synth(g, s);
    if (*recon_cmd) return cmd_recon(g, r);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegenerateConfigError& e) {
    std::cerr << "degenerate-configuration: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const Error& e) {
    std::cerr << to_string(e.category()) << ": " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "io-error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
