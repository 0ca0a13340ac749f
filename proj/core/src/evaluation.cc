#include "robustpred/evaluation.h"

#include <algorithm>
#include <future>
#include <numeric>
#include <ostream>

#include "robustpred/error.h"
#include "robustpred/rng.h"
#include "robustpred/text.h"

namespace robustpred::eval {
namespace {

std::string_view score_name(noise::ScoreDefinition s) {
  return s == noise::ScoreDefinition::kLikelihood ? "likelihood" : "posterior";
}

FoldResult run_fold(const Fold& fold, std::size_t index, Variant variant,
                    const PipelineParams& params) {
  FoldResult r;
  r.fold = index;
  r.test_ids = fold.test_ids;
  r.train_size = fold.train.size();
  r.quality_size = fold.train.size();

  tree::DecisionTree model = [&] {
    if (variant == Variant::kBase) return tree::build_tree(fold.train, params.tree);
    const auto report = noise::detect_noise(fold.train, params.score);
    r.noise_fraction = report.noise_fraction;
    Dataset quality = noise::eliminate(fold.train, report);
    r.quality_size = quality.size();
    if (quality.empty()) {
      r.fell_back = true;
      return tree::build_tree(fold.train, params.tree);
    }
    return tree::build_tree(quality, params.tree);
  }();

  const std::size_t n_class = fold.test.schema().class_count();
  r.confusion = ConfusionCounts(n_class);
  for (const Instance& inst : fold.test.instances()) {
    r.confusion.add(inst.label, model.predict(inst));
  }
  r.per_class.resize(n_class);
  for (std::size_t c = 0; c < n_class; ++c) {
    const auto id = static_cast<ClassId>(c);
    r.per_class[c] = {precision(r.confusion, id), recall(r.confusion, id),
                      fmeasure(r.confusion, id), r.confusion.support(id)};
  }
  r.weighted = weighted_average(r.confusion);
  r.accuracy = r.confusion.accuracy();
  return r;
}

EvalReport run_on_folds(const std::vector<Fold>& folds, std::size_t n_class, Variant variant,
                        const PipelineParams& params, std::uint64_t seed) {
  EvalReport report;
  report.variant = variant;
  report.seed = seed;
  report.folds = folds.size();
  report.score = params.score;
  report.fold_results.resize(folds.size());

  if (params.parallel && folds.size() > 1) {
    std::vector<std::future<FoldResult>> pending;
    pending.reserve(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
      pending.push_back(std::async(std::launch::async, run_fold, std::cref(folds[f]), f, variant,
                                   std::cref(params)));
    }
    for (std::size_t f = 0; f < folds.size(); ++f) report.fold_results[f] = pending[f].get();
  } else {
    for (std::size_t f = 0; f < folds.size(); ++f) {
      report.fold_results[f] = run_fold(folds[f], f, variant, params);
    }
  }

  const double k = static_cast<double>(folds.size());
  report.per_class_mean.assign(n_class, {});
  for (const auto& r : report.fold_results) {
    for (std::size_t c = 0; c < n_class; ++c) {
      report.per_class_mean[c].precision += r.per_class[c].precision / k;
      report.per_class_mean[c].recall += r.per_class[c].recall / k;
      report.per_class_mean[c].fmeasure += r.per_class[c].fmeasure / k;
      report.per_class_mean[c].support += r.per_class[c].support;
    }
    report.weighted_mean.precision += r.weighted.precision / k;
    report.weighted_mean.recall += r.weighted.recall / k;
    report.weighted_mean.fmeasure += r.weighted.fmeasure / k;
    report.accuracy_mean += r.accuracy / k;
    report.noise_fraction_mean += r.noise_fraction / k;
    report.fallback_count += r.fell_back ? 1 : 0;
  }
  return report;
}

void write_row(std::ostream& out, std::string_view fold, Variant v, std::string_view cls,
               double p, double r, double f, std::size_t support, double noise_fraction) {
  out << fold << ',' << variant_name(v) << ',' << cls << ',' << text::format_double(p) << ','
      << text::format_double(r) << ',' << text::format_double(f) << ',' << support << ','
      << text::format_double(noise_fraction) << '\n';
}

}  // namespace

std::string_view variant_name(Variant v) { return v == Variant::kBase ? "base" : "robust"; }

std::vector<Fold> kfold_split(const Dataset& dataset, std::size_t folds, std::uint64_t seed,
                              bool stratified) {
  if (folds < 2) throw Error("k-fold: need at least 2 folds, got " + std::to_string(folds));
  if (dataset.size() < folds) {
    throw Error("k-fold: " + std::to_string(dataset.size()) + " instances cannot fill " +
                std::to_string(folds) + " folds");
  }
  Rng rng(seed);
  std::vector<std::size_t> assignment(dataset.size());
  if (!stratified) {
    std::vector<std::size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span(order));
    const std::size_t base = dataset.size() / folds;
    const std::size_t extra = dataset.size() % folds;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < folds; ++f) {
      const std::size_t len = base + (f < extra ? 1 : 0);
      for (std::size_t i = 0; i < len; ++i) assignment[order[pos++]] = f;
    }
  } else {
    std::vector<std::vector<std::size_t>> by_class(dataset.schema().class_count());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      by_class[static_cast<std::size_t>(dataset[i].label)].push_back(i);
    }
    std::size_t next = 0;
    for (auto& members : by_class) {
      rng.shuffle(std::span(members));
      for (std::size_t i : members) assignment[i] = next++ % folds;
    }
  }

  std::vector<Fold> out;
  out.reserve(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> train_ids;
    std::vector<std::size_t> test_ids;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      (assignment[i] == f ? test_ids : train_ids).push_back(i);
    }
    Dataset train = dataset.subset(train_ids);
    Dataset test = dataset.subset(test_ids);
    out.push_back(Fold{std::move(train), std::move(test), std::move(train_ids), std::move(test_ids)});
  }
  return out;
}

EvalReport run_pipeline(const Dataset& dataset, Variant variant, const PipelineParams& params,
                        std::uint64_t seed) {
  const auto folds = kfold_split(dataset, params.folds, seed, params.stratified);
  return run_on_folds(folds, dataset.schema().class_count(), variant, params, seed);
}

Comparison compare(const Dataset& dataset, const PipelineParams& params, std::uint64_t seed) {
  const auto folds = kfold_split(dataset, params.folds, seed, params.stratified);
  const std::size_t n_class = dataset.schema().class_count();
  Comparison cmp{run_on_folds(folds, n_class, Variant::kBase, params, seed),
                 run_on_folds(folds, n_class, Variant::kRobust, params, seed),
                 {},
                 0.0,
                 {}};
  cmp.weighted_delta.precision = cmp.robust.weighted_mean.precision - cmp.base.weighted_mean.precision;
  cmp.weighted_delta.recall = cmp.robust.weighted_mean.recall - cmp.base.weighted_mean.recall;
  cmp.weighted_delta.fmeasure = cmp.robust.weighted_mean.fmeasure - cmp.base.weighted_mean.fmeasure;
  cmp.accuracy_delta = cmp.robust.accuracy_mean - cmp.base.accuracy_mean;
  for (std::size_t c = 0; c < n_class; ++c) {
    cmp.fmeasure_delta_per_class.push_back(cmp.robust.per_class_mean[c].fmeasure -
                                           cmp.base.per_class_mean[c].fmeasure);
  }
  return cmp;
}

void write_summary_line(std::ostream& out, const EvalReport& r) {
  out << "summary,variant=" << variant_name(r.variant)
      << ",precision=" << text::format_double(r.weighted_mean.precision)
      << ",recall=" << text::format_double(r.weighted_mean.recall)
      << ",fmeasure=" << text::format_double(r.weighted_mean.fmeasure)
      << ",accuracy=" << text::format_double(r.accuracy_mean)
      << ",noise_fraction=" << text::format_double(r.noise_fraction_mean)
      << ",fallbacks=" << r.fallback_count << ",folds=" << r.folds << ",seed=" << r.seed
      << ",score=" << score_name(r.score) << '\n';
}

void write_report(std::ostream& out, const EvalReport& r, const AttributeSchema& schema) {
  out << "# variant=" << variant_name(r.variant) << " folds=" << r.folds << " seed=" << r.seed
      << " score=" << score_name(r.score) << '\n';
  out << "fold,variant,class,precision,recall,fmeasure,support,noise_fraction\n";
  for (const auto& f : r.fold_results) {
    const std::string fold = std::to_string(f.fold);
    if (f.fell_back) out << "# fold " << f.fold << ": elimination emptied the training set; raw fold used\n";
    for (std::size_t c = 0; c < f.per_class.size(); ++c) {
      const auto& m = f.per_class[c];
      write_row(out, fold, r.variant, schema.class_set()[c], m.precision, m.recall, m.fmeasure,
                m.support, f.noise_fraction);
    }
    write_row(out, fold, r.variant, "weighted", f.weighted.precision, f.weighted.recall,
              f.weighted.fmeasure, f.confusion.total(), f.noise_fraction);
  }
  std::size_t total = 0;
  for (std::size_t c = 0; c < r.per_class_mean.size(); ++c) {
    const auto& m = r.per_class_mean[c];
    total += m.support;
    write_row(out, "mean", r.variant, schema.class_set()[c], m.precision, m.recall, m.fmeasure,
              m.support, r.noise_fraction_mean);
  }
  write_row(out, "mean", r.variant, "weighted", r.weighted_mean.precision, r.weighted_mean.recall,
            r.weighted_mean.fmeasure, total, r.noise_fraction_mean);
  write_summary_line(out, r);
}

void write_comparison(std::ostream& out, const Comparison& cmp, const AttributeSchema& schema) {
  write_report(out, cmp.base, schema);
  write_report(out, cmp.robust, schema);
  out << "delta,metric,base,robust,delta\n";
  auto row = [&](std::string_view metric, double b, double r) {
    out << "delta," << metric << ',' << text::format_double(b) << ',' << text::format_double(r)
        << ',' << text::format_double(r - b) << '\n';
  };
  row("weighted_precision", cmp.base.weighted_mean.precision, cmp.robust.weighted_mean.precision);
  row("weighted_recall", cmp.base.weighted_mean.recall, cmp.robust.weighted_mean.recall);
  row("weighted_fmeasure", cmp.base.weighted_mean.fmeasure, cmp.robust.weighted_mean.fmeasure);
  row("accuracy", cmp.base.accuracy_mean, cmp.robust.accuracy_mean);
  for (std::size_t c = 0; c < cmp.fmeasure_delta_per_class.size(); ++c) {
    row("fmeasure:" + schema.class_set()[c], cmp.base.per_class_mean[c].fmeasure,
        cmp.robust.per_class_mean[c].fmeasure);
  }
}

}  // namespace robustpred::eval
