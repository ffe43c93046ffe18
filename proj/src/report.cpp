#include <algorithm>
#include <sstream>

#include "genodist/errors.hpp"
#include "genodist/pipeline.hpp"

namespace genodist {

namespace {

using Table = std::ostringstream;

std::string num(double v) { return format_number(v); }

void pair_columns(Table& t, const PairRecord& r) {
  t << decode_word(r.word) << '\t' << decode_word(r.complement);
}

std::string pairs_tsv(std::span<const PairRecord> records) {
  Table t;
  t << "word\tcomplement\tn_w\tn_wbar\tapr\td_e\td_j\td_p\trs\tpalindrome\tlow_frequency\tinsufficient_data\n";
  for (const auto& r : records) {
    pair_columns(t, r);
    t << '\t' << r.n_w << '\t' << r.n_wbar << '\t' << num(r.apr) << '\t' << num(r.d_e) << '\t' << num(r.d_j) << '\t'
      << num(r.d_p) << '\t' << num(r.rs) << '\t' << int(r.flags.palindrome) << '\t' << int(r.flags.low_frequency)
      << '\t' << int(r.flags.insufficient_data) << '\n';
  }
  return t.str();
}

std::string spearman_tsv(std::span<const PairRecord> ranked) {
  Table t;
  t << "# pairs=" << ranked.size() << '\n';
  t << "measure";
  for (Measure m : kCorrelatedMeasures) t << '\t' << measure_name(m);
  t << '\n';
  Eigen::Matrix4d m = Eigen::Matrix4d::Constant(std::numeric_limits<double>::quiet_NaN());
  if (ranked.size() >= 2) m = spearman_matrix(ranked);
  for (int i = 0; i < 4; ++i) {
    t << measure_name(kCorrelatedMeasures[static_cast<std::size_t>(i)]);
    for (int j = 0; j < 4; ++j) t << '\t' << num(m(i, j));
    t << '\n';
  }
  return t.str();
}

std::string overlap_tsv(std::span<const PairRecord> ranked, const std::vector<double>& fractions) {
  Table t;
  t << "top_fraction\tset_size\tR_EJ\tR_EP\tR_JP\n";
  if (ranked.empty()) return t.str();
  const auto e = measure_values(ranked, Measure::euclidean);
  const auto j = measure_values(ranked, Measure::jeffreys);
  const auto p = measure_values(ranked, Measure::peak);
  for (double q : fractions) {
    t << num(q) << '\t' << top_set(e, q).size() << '\t' << num(top_overlap(e, j, q)) << '\t'
      << num(top_overlap(e, p, q)) << '\t' << num(top_overlap(j, p, q)) << '\n';
  }
  return t.str();
}

// Mean pair frequency and mean APR over each measure's top set.
std::string topset_stats_tsv(std::span<const PairRecord> ranked, const std::vector<double>& fractions) {
  Table t;
  t << "measure\ttop_fraction\tset_size\tmean_pair_frequency\tmean_apr\n";
  if (ranked.empty()) return t.str();
  for (Measure m : {Measure::euclidean, Measure::jeffreys, Measure::peak}) {
    const auto values = measure_values(ranked, m);
    for (double q : fractions) {
      const auto top = top_set(values, q);
      double freq = 0;
      double apr_sum = 0;
      for (std::size_t i : top) {
        freq += (static_cast<double>(ranked[i].n_w) + static_cast<double>(ranked[i].n_wbar)) / 2.0;
        apr_sum += ranked[i].apr;
      }
      const double n = static_cast<double>(top.size());
      t << measure_name(m) << '\t' << num(q) << '\t' << top.size() << '\t' << num(freq / n) << '\t'
        << num(apr_sum / n) << '\n';
    }
  }
  return t.str();
}

std::string top_dp_tsv(std::span<const PairRecord> ranked, double pct) {
  Table t;
  if (!ranked.empty()) {
    t << "# d_p threshold (nearest-rank p" << num(pct)
      << ")=" << num(nearest_rank_percentile(measure_values(ranked, Measure::peak), pct)) << '\n';
  }
  t << "word\tcomplement\td_p\tapr\tn_w\tn_wbar\n";
  for (const auto& r : percentile_select(ranked, Measure::peak, pct, Side::above)) {
    pair_columns(t, r);
    t << '\t' << num(r.d_p) << '\t' << num(r.apr) << '\t' << r.n_w << '\t' << r.n_wbar << '\n';
  }
  return t.str();
}

std::string similar_unexpected_tsv(std::span<const PairRecord> ranked, double pct) {
  Table t;
  if (!ranked.empty()) {
    t << "# d_p threshold (nearest-rank p" << num(pct)
      << ")=" << num(nearest_rank_percentile(measure_values(ranked, Measure::peak), pct)) << '\n';
  }
  t << "word\tcomplement\td_p\trs\n";
  for (const auto& r : rank_similar_unexpected(ranked, pct)) {
    pair_columns(t, r);
    t << '\t' << num(r.d_p) << '\t' << num(r.rs) << '\n';
  }
  return t.str();
}

std::string classes_tsv(std::span<const PairRecord> ranked, double cut, double extreme) {
  Table t;
  ClassThresholds th;
  const auto classes = classify_pairs(ranked, cut, extreme, &th);
  if (!ranked.empty()) {
    t << "# apr_cut=" << num(th.apr_cut) << "\tdp_cut=" << num(th.dp_cut) << "\tapr_extreme=" << num(th.apr_extreme)
      << "\tdp_extreme=" << num(th.dp_extreme) << '\n';
  }
  t << "word\tcomplement\tapr\td_p\tclass\tapr_extreme\tdp_extreme\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    pair_columns(t, ranked[i]);
    t << '\t' << num(ranked[i].apr) << '\t' << num(ranked[i].d_p) << '\t' << class_name(classes[i].label) << '\t'
      << int(classes[i].apr_extreme) << '\t' << int(classes[i].dp_extreme) << '\n';
  }
  return t.str();
}

std::string scatter_tsv(std::span<const PairRecord> ranked) {
  Table t;
  t << "word\tapr\td_p\n";
  for (const auto& r : ranked) t << decode_word(r.word) << '\t' << num(r.apr) << '\t' << num(r.d_p) << '\n';
  return t.str();
}

std::string distribution_tsv(const CountStore& store, WordId word) {
  Table t;
  t << "# word=" << decode_word(word) << "\toccurrences=" << store.occurrences(word.code)
    << "\toverflow=" << store.overflow(word.code) << '\n';
  t << "d\tfrequency\n";
  try {
    const auto f = to_distribution(store.counts(word.code), store.k());
    for (int d = f.first_distance(); d <= f.dmax; ++d) t << d << '\t' << num(f.at(d)) << '\n';
  } catch (const InsufficientDataError&) {
    // header only: no distances in (k, dmax]
  }
  return t.str();
}

}  // namespace

ReportOutputs write_reports(const CountStore& store, const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  if (cfg.k != 0 && cfg.k != store.k()) {
    throw StoreError("store has k=" + std::to_string(store.k()) + " but k=" + std::to_string(cfg.k) + " was requested");
  }
  if (cfg.dmax != store.dmax()) {
    throw StoreError("store has dmax=" + std::to_string(store.dmax()) + " but dmax=" + std::to_string(cfg.dmax) +
                     " was requested");
  }
  cfg.k = store.k();
  cfg.inputs = store.inputs();
  cfg.validate();

  ReportOutputs outputs;
  outputs.records = pair_records(store, cfg.analysis());
  const auto ranked = ranked_only(outputs.records);
  const std::string header = cfg.metadata();

  std::vector<std::pair<std::string, std::string>> files = {
      {"pairs.tsv", pairs_tsv(outputs.records)},
      {"spearman.tsv", spearman_tsv(ranked)},
      {"overlap.tsv", overlap_tsv(ranked, cfg.overlap_fractions)},
      {"topset_stats.tsv", topset_stats_tsv(ranked, cfg.overlap_fractions)},
      {"top_dp.tsv", top_dp_tsv(ranked, cfg.select_pct)},
      {"similar_unexpected.tsv", similar_unexpected_tsv(ranked, cfg.similar_pct)},
      {"classes.tsv", classes_tsv(ranked, cfg.class_cut_pct, cfg.class_extreme_pct)},
      {"scatter_apr_dp.tsv", scatter_tsv(ranked)},
  };
  for (const auto& text : cfg.dump_words) {
    const WordId w = encode_word(text, store.k());
    for (const WordId v : {w, reverse_complement(w)}) {
      const std::string name = "dist_" + decode_word(v) + ".tsv";
      if (std::none_of(files.begin(), files.end(), [&](const auto& f) { return f.first == name; })) {
        files.emplace_back(name, distribution_tsv(store, v));
      }
    }
  }

  std::filesystem::create_directories(cfg.out_dir);
  for (const auto& [name, body] : files) {
    const auto path = cfg.out_dir / name;
    write_file_atomic(path, header + body);
    outputs.files.push_back(path);
  }
  return outputs;
}

}  // namespace genodist
