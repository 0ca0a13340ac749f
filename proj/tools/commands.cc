#include "commands.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "robustpred/bayes.h"
#include "robustpred/dataset_io.h"
#include "robustpred/decision_tree.h"
#include "robustpred/error.h"
#include "robustpred/evaluation.h"
#include "robustpred/ingest.h"
#include "robustpred/noise_filter.h"
#include "robustpred/synth.h"
#include "robustpred/text.h"

namespace robustpred::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string input;
  std::string output;
  std::string segments = "06:00,12:00,18:00,24:00";
  ingest::DayGranularity granularity = ingest::DayGranularity::kDayOfWeek;
  eval::Variant variant = eval::Variant::kRobust;
  std::size_t min_leaf = 1;
  std::optional<std::size_t> max_depth;
  std::size_t folds = 10;
  std::optional<std::uint64_t> seed;
  noise::ScoreDefinition score = noise::ScoreDefinition::kLikelihood;
  bool stratified = false;
  std::string registry;
  std::string model;
  std::string mask;
  std::string persona;
  std::size_t size = 1000;
  double noise_rate = 0.0;

  eval::PipelineParams pipeline() const {
    eval::PipelineParams p;
    p.tree.min_leaf_support = min_leaf;
    p.tree.max_depth = max_depth;
    p.folds = folds;
    p.score = score;
    p.stratified = stratified;
    return p;
  }
};

const std::map<std::string, eval::Variant> kVariants = {{"base", eval::Variant::kBase},
                                                        {"robust", eval::Variant::kRobust}};
const std::map<std::string, noise::ScoreDefinition> kScores = {
    {"likelihood", noise::ScoreDefinition::kLikelihood},
    {"posterior", noise::ScoreDefinition::kPosterior}};
const std::map<std::string, ingest::DayGranularity> kGranularities = {
    {"day-of-week", ingest::DayGranularity::kDayOfWeek},
    {"weekday-weekend", ingest::DayGranularity::kWeekdayWeekend}};

void print_distribution(std::ostream& out, const Dataset& data) {
  const auto counts = class_counts(data);
  out << "instances=" << data.size() << '\n';
  for (std::size_t c = 0; c < counts.size(); ++c) {
    out << "class " << data.schema().class_set()[c] << '=' << counts[c] << '\n';
  }
}

Dataset load_valid(const std::string& path) {
  Dataset data = read_dataset_file(path);
  const auto verdict = validate(data);
  if (!verdict.ok()) {
    throw Error("'" + path + "' is not a valid dataset: " + verdict.violations.front().reason);
  }
  return data;
}

void print_noise_summary(std::ostream& out, const noise::NoiseReport& report) {
  out << "threshold_log=" << text::format_double(report.threshold)
      << " threshold_prob=" << text::format_double(std::exp(report.threshold)) << '\n';
  out << "noise_count=" << report.noise_ids.size()
      << " noise_fraction=" << text::format_double(report.noise_fraction) << '\n';
}

int cmd_preprocess(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto in = open_input(cfg.input);
  const auto events = ingest::parse_call_log(in);
  const auto seg = ingest::SegmentationConfig::parse(cfg.segments, cfg.granularity);
  ingest::RelationshipRegistry registry;
  const Dataset data = ingest::build_dataset(events, seg, registry);
  if (data.empty()) err << "warning: '" << cfg.input << "' contains no call events\n";
  write_dataset_file(cfg.output, data);
  const std::string registry_path = cfg.registry.empty() ? cfg.output + ".registry.csv" : cfg.registry;
  auto reg_out = open_output(registry_path);
  registry.write(reg_out);
  print_distribution(out, data);
  return 0;
}

int cmd_detect_noise(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Dataset data = load_valid(cfg.input);
  const auto report = noise::detect_noise(data, cfg.score);
  auto file = open_output(cfg.output);
  noise::write_report(file, report, data.schema());
  if (!cfg.model.empty()) {
    auto model_out = open_output(cfg.model);
    bayes::BayesModel::fit(data).write(model_out);
  }
  print_noise_summary(out, report);
  return 0;
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Dataset data = load_valid(cfg.input);
  if (data.empty()) throw Error("'" + cfg.input + "' has no instances to train on");
  if (cfg.variant == eval::Variant::kRobust) {
    const auto report = noise::detect_noise(data, cfg.score);
    print_noise_summary(out, report);
    Dataset quality = noise::eliminate(data, report);
    if (quality.empty()) {
      err << "warning: noise elimination removed every instance; training on the raw data\n";
    } else {
      data = std::move(quality);
    }
  }
  tree::TreeParams params;
  params.min_leaf_support = cfg.min_leaf;
  params.max_depth = cfg.max_depth;
  const auto model = tree::build_tree(data, params);
  const auto rules = tree::extract_rules(model);
  {
    auto file = open_output(cfg.output + ".tree.txt");
    tree::write_tree(file, model);
  }
  {
    auto file = open_output(cfg.output + ".rules.txt");
    tree::write_rules(file, rules, model.schema());
  }
  out << "training_instances=" << data.size() << " leaves=" << model.leaf_count()
      << " rules=" << rules.size() << '\n';
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Dataset data = load_valid(cfg.input);
  const auto report = eval::run_pipeline(data, cfg.variant, cfg.pipeline(), *cfg.seed);
  auto file = open_output(cfg.output);
  eval::write_report(file, report, data.schema());
  eval::write_summary_line(out, report);
  return 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Dataset data = load_valid(cfg.input);
  const auto cmp = eval::compare(data, cfg.pipeline(), *cfg.seed);
  auto file = open_output(cfg.output);
  eval::write_comparison(file, cmp, data.schema());
  eval::write_summary_line(out, cmp.base);
  eval::write_summary_line(out, cmp.robust);
  out << "delta,weighted_precision=" << text::format_double(cmp.weighted_delta.precision)
      << ",weighted_recall=" << text::format_double(cmp.weighted_delta.recall)
      << ",weighted_fmeasure=" << text::format_double(cmp.weighted_delta.fmeasure)
      << ",accuracy=" << text::format_double(cmp.accuracy_delta) << '\n';
  return 0;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto& persona = synth::bundled_persona(cfg.persona);
  const auto gen = synth::generate(persona, cfg.size, cfg.noise_rate, *cfg.seed);
  write_dataset_file(cfg.output, gen.dataset);
  const std::string mask_path = cfg.mask.empty() ? cfg.output + ".mask.csv" : cfg.mask;
  auto mask_out = open_output(mask_path);
  synth::write_mask(mask_out, gen.mask, gen.dataset.schema());
  out << "persona=" << persona.name() << " instances=" << gen.dataset.size()
      << " flipped=" << gen.mask.flipped_ids.size() << '\n';
  return 0;
}

void add_tree_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--min-leaf", cfg.min_leaf, "Minimum instances per leaf")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-depth", cfg.max_depth, "Maximum tree depth (default: attribute count)");
}

void add_score_flag(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--score", cfg.score, "Noise score: likelihood or posterior")
      ->transform(CLI::CheckedTransformer(kScores, CLI::ignore_case));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noise-robust context-aware call behavior prediction"};
  app.name(args.empty() ? "robustpred" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);
  RunConfig cfg;

  auto* pre = app.add_subcommand("preprocess", "Convert a raw call log into a context dataset");
  pre->add_option("--input", cfg.input, "Raw call-log file")->required();
  pre->add_option("--output", cfg.output, "Dataset file to write")->required();
  pre->add_option("--registry", cfg.registry, "Relationship registry dump (default: <output>.registry.csv)");
  pre->add_option("--segments", cfg.segments, "Time-of-day segment end points, ending at 24:00");
  pre->add_option("--day-granularity", cfg.granularity, "day-of-week or weekday-weekend")
      ->transform(CLI::CheckedTransformer(kGranularities, CLI::ignore_case));

  auto* det = app.add_subcommand("detect-noise", "Score instances and flag label noise");
  det->add_option("--input", cfg.input, "Dataset file")->required();
  det->add_option("--output", cfg.output, "Noise report to write")->required();
  det->add_option("--model", cfg.model, "Also dump the naive Bayes count tables here");
  add_score_flag(det, cfg);

  auto* train = app.add_subcommand("train", "Learn a decision tree and extract its rules");
  train->add_option("--input", cfg.input, "Dataset file")->required();
  train->add_option("--output", cfg.output, "Output prefix for <prefix>.tree.txt and <prefix>.rules.txt")
      ->required();
  train->add_option("--variant", cfg.variant, "base or robust")
      ->transform(CLI::CheckedTransformer(kVariants, CLI::ignore_case));
  add_score_flag(train, cfg);
  add_tree_flags(train, cfg);

  auto* evaluate = app.add_subcommand("evaluate", "k-fold cross-validation of one variant");
  evaluate->add_option("--input", cfg.input, "Dataset file")->required();
  evaluate->add_option("--output", cfg.output, "Report file to write")->required();
  evaluate->add_option("--seed", cfg.seed, "Fold shuffle seed")->required();
  evaluate->add_option("--folds", cfg.folds, "Number of folds")->check(CLI::Range(2, 1000000));
  evaluate->add_option("--variant", cfg.variant, "base or robust")
      ->transform(CLI::CheckedTransformer(kVariants, CLI::ignore_case));
  evaluate->add_flag("--stratified", cfg.stratified, "Stratify folds by class");
  add_score_flag(evaluate, cfg);
  add_tree_flags(evaluate, cfg);

  auto* cmp = app.add_subcommand("compare", "Base vs robust over identical folds");
  cmp->add_option("--input", cfg.input, "Dataset file")->required();
  cmp->add_option("--output", cfg.output, "Comparison report to write")->required();
  cmp->add_option("--seed", cfg.seed, "Fold shuffle seed")->required();
  cmp->add_option("--folds", cfg.folds, "Number of folds")->check(CLI::Range(2, 1000000));
  cmp->add_flag("--stratified", cfg.stratified, "Stratify folds by class");
  add_score_flag(cmp, cfg);
  add_tree_flags(cmp, cfg);

  auto* syn = app.add_subcommand("synth", "Generate a persona dataset with injected label noise");
  syn->add_option("--persona", cfg.persona, "office-professional, student or field-technician")
      ->required();
  syn->add_option("--output", cfg.output, "Dataset file to write")->required();
  syn->add_option("--mask", cfg.mask, "Noise mask file (default: <output>.mask.csv)");
  syn->add_option("--size", cfg.size, "Number of instances")->check(CLI::PositiveNumber);
  syn->add_option("--noise-rate", cfg.noise_rate, "Fraction of labels to flip, in [0, 1)");
  syn->add_option("--seed", cfg.seed, "Generator seed")->required();

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (pre->parsed()) return cmd_preprocess(cfg, out, err);
    if (det->parsed()) return cmd_detect_noise(cfg, out, err);
    if (train->parsed()) return cmd_train(cfg, out, err);
    if (evaluate->parsed()) return cmd_evaluate(cfg, out, err);
    if (cmp->parsed()) return cmd_compare(cfg, out, err);
    if (syn->parsed()) return cmd_synth(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace robustpred::cli
