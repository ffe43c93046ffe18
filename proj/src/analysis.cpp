#include "genodist/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "genodist/errors.hpp"
#include "parallel.hpp"

namespace genodist {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ceil(x) that ignores rounding noise such as 0.1 * 30 = 3.0000000000000004.
std::size_t ceil_count(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }

void compute_pair(const CountStore& store, const AnalysisConfig& cfg, const std::vector<DistanceDistribution>& refs,
                  const std::vector<bool>& ref_ok, PairRecord& rec) {
  const int k = store.k();
  rec.n_w = store.occurrences(rec.word.code);
  rec.n_wbar = store.occurrences(rec.complement.code);
  rec.flags.palindrome = rec.word == rec.complement;
  rec.flags.low_frequency = std::min(rec.n_w, rec.n_wbar) < cfg.min_freq;
  rec.apr = apr(rec.n_w, rec.n_wbar);
  try {
    const auto f_w = to_distribution(store.counts(rec.word.code), k);
    const auto f_wbar = to_distribution(store.counts(rec.complement.code), k);
    if (!rec.flags.palindrome) {
      rec.d_e = euclidean(f_w, f_wbar);
      rec.d_j = jeffreys(f_w, f_wbar, cfg.eps);
      rec.d_p = peak_dissimilarity(f_w, f_wbar, cfg.peaks);
    }
    if (ref_ok[rec.word.code] && ref_ok[rec.complement.code]) {
      rec.rs = rs_score(f_w, f_wbar, refs[rec.word.code], refs[rec.complement.code], cfg.peaks);
    } else {
      rec.rs = kNaN;
      rec.flags.insufficient_data = true;
    }
  } catch (const InsufficientDataError&) {
    rec.d_e = rec.d_j = rec.d_p = rec.rs = kNaN;
    rec.flags.insufficient_data = true;
  }
  // A palindrome is its own complement: every intra-pair measure is 0.
  if (rec.flags.palindrome) rec.apr = rec.d_e = rec.d_j = rec.d_p = 0.0;
}

bool word_less(const PairRecord& a, const PairRecord& b) { return a.word < b.word; }

}  // namespace

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::apr: return "apr";
    case Measure::euclidean: return "d_e";
    case Measure::jeffreys: return "d_j";
    case Measure::peak: return "d_p";
    case Measure::rs: return "rs";
  }
  return "?";
}

double PairRecord::value(Measure m) const {
  switch (m) {
    case Measure::apr: return apr;
    case Measure::euclidean: return d_e;
    case Measure::jeffreys: return d_j;
    case Measure::peak: return d_p;
    case Measure::rs: return rs;
  }
  return kNaN;
}

BaseFrequencies analysis_base_frequencies(const CountStore& store, const AnalysisConfig& cfg) {
  if (cfg.base_freq) {
    cfg.base_freq->validate();
    return *cfg.base_freq;
  }
  const auto& bases = store.base_counts();
  if (std::accumulate(bases.begin(), bases.end(), std::uint64_t{0}) > 0) return BaseFrequencies::from_counts(bases);
  std::array<std::uint64_t, 4> first{};
  const int shift = 2 * (store.k() - 1);
  for (std::uint32_t code = 0; code < store.word_count(); ++code) first[code >> shift] += store.occurrences(code);
  return BaseFrequencies::from_counts(first);
}

std::vector<PairRecord> pair_records(const CountStore& store, const AnalysisConfig& cfg) {
  const int k = store.k();
  cfg.peaks.validate(store.dmax() - k);
  if (!(cfg.eps > 0)) throw ConfigError("Jeffreys epsilon must be positive");

  std::vector<PairRecord> records;
  for (std::uint32_t code = 0; code < store.word_count(); ++code) {
    const WordId w{k, code};
    const WordId rc = reverse_complement(w);
    if (w <= rc) {
      PairRecord rec;
      rec.word = w;
      rec.complement = rc;
      records.push_back(rec);
    }
  }

  // Reference distributions for every word; a store without any nucleotide
  // counts leaves them all unavailable.
  std::vector<DistanceDistribution> refs(store.word_count());
  std::vector<bool> ref_ok(store.word_count(), false);
  std::optional<BaseFrequencies> base;
  try {
    base = analysis_base_frequencies(store, cfg);
  } catch (const InsufficientDataError&) {
  }
  if (base) {
    std::vector<char> ok(store.word_count(), 0);
    detail::parallel_for(store.word_count(), cfg.threads, [&](std::size_t code) {
      try {
        const PatternAutomaton automaton(decode_word({k, static_cast<std::uint32_t>(code)}));
        refs[code] = reference_distribution(automaton, *base, store.dmax());
        ok[code] = 1;
      } catch (const InsufficientDataError&) {
      }
    });
    for (std::size_t i = 0; i < ok.size(); ++i) ref_ok[i] = ok[i] != 0;
  }

  detail::parallel_for(records.size(), cfg.threads,
               [&](std::size_t i) { compute_pair(store, cfg, refs, ref_ok, records[i]); });
  return records;
}

std::vector<PairRecord> ranked_only(std::span<const PairRecord> records) {
  std::vector<PairRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out), [](const PairRecord& r) { return r.ranked(); });
  return out;
}

std::vector<double> measure_values(std::span<const PairRecord> records, Measure m) {
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& r : records) values.push_back(r.value(m));
  return values;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

RankTable rank_table(std::span<const PairRecord> records, Measure m) {
  const auto values = measure_values(records, m);
  const auto ranks = average_ranks(values);
  RankTable table;
  table.measure = m;
  for (std::size_t i = 0; i < records.size(); ++i) table.entries.push_back({records[i].word, values[i], ranks[i]});
  std::stable_sort(table.entries.begin(), table.entries.end(), [](const auto& a, const auto& b) {
    return a.value < b.value || (a.value == b.value && a.word < b.word);
  });
  return table;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("spearman: inputs differ in length");
  if (x.size() < 2) throw ConfigError("spearman: need at least two observations");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const Eigen::Map<const Eigen::VectorXd> a(rx.data(), static_cast<Eigen::Index>(rx.size()));
  const Eigen::Map<const Eigen::VectorXd> b(ry.data(), static_cast<Eigen::Index>(ry.size()));
  const Eigen::VectorXd da = a.array() - a.mean();
  const Eigen::VectorXd db = b.array() - b.mean();
  const double sa = da.squaredNorm();
  const double sb = db.squaredNorm();
  if (sa == 0 || sb == 0) throw ConfigError("spearman: correlation undefined for constant input");
  return std::clamp(da.dot(db) / std::sqrt(sa * sb), -1.0, 1.0);
}

Eigen::Matrix4d spearman_matrix(std::span<const PairRecord> records) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  for (int i = 0; i < 4; ++i) {
    const auto xi = measure_values(records, kCorrelatedMeasures[static_cast<std::size_t>(i)]);
    for (int j = 0; j < i; ++j) {
      const auto xj = measure_values(records, kCorrelatedMeasures[static_cast<std::size_t>(j)]);
      double r = kNaN;
      try {
        r = spearman(xi, xj);
      } catch (const ConfigError&) {
      }
      m(i, j) = m(j, i) = r;
    }
  }
  return m;
}

std::vector<std::size_t> top_set(std::span<const double> values, double q) {
  if (!(q > 0 && q < 1)) throw ConfigError("top fraction must be in (0, 1)");
  if (values.empty()) throw ConfigError("top set of an empty measure");
  const std::size_t count = std::clamp<std::size_t>(ceil_count(q * static_cast<double>(values.size())), 1, values.size());
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

double top_overlap(std::span<const double> m1, std::span<const double> m2, double q) {
  if (m1.size() != m2.size()) throw ConfigError("top_overlap: measures cover different pair sets");
  const auto a = top_set(m1, q);
  const auto b = top_set(m2, q);
  std::vector<std::size_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(a.size());
}

double nearest_rank_percentile(std::span<const double> values, double q) {
  if (!(q > 0 && q < 100)) throw ConfigError("percentile must be in (0, 100)");
  if (values.empty()) throw ConfigError("percentile of an empty measure");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t rank = std::clamp<std::size_t>(ceil_count(q / 100.0 * static_cast<double>(sorted.size())), 1,
                                                   sorted.size());
  return sorted[rank - 1];
}

std::vector<PairRecord> percentile_select(std::span<const PairRecord> records, Measure m, double q, Side side) {
  if (!(q > 0 && q < 100)) throw ConfigError("percentile must be in (0, 100)");
  if (records.empty()) return {};
  const double threshold = nearest_rank_percentile(measure_values(records, m), q);
  std::vector<PairRecord> out;
  for (const auto& r : records) {
    const double v = r.value(m);
    if (side == Side::above ? v > threshold : v < threshold) out.push_back(r);
  }
  std::stable_sort(out.begin(), out.end(), [&](const PairRecord& a, const PairRecord& b) {
    const double va = a.value(m);
    const double vb = b.value(m);
    if (va != vb) return side == Side::above ? va > vb : va < vb;
    return word_less(a, b);
  });
  return out;
}

std::string_view class_name(PairClass c) {
  switch (c) {
    case PairClass::c1: return "c1";
    case PairClass::c2: return "c2";
    case PairClass::c3: return "c3";
    case PairClass::c4: return "c4";
  }
  return "?";
}

std::vector<PairClassification> classify_pairs(std::span<const PairRecord> records, double cut_pct, double extreme_pct,
                                               ClassThresholds* thresholds) {
  if (extreme_pct < cut_pct) throw ConfigError("extreme percentile must not be below the class cut");
  if (records.empty()) return {};
  const auto aprs = measure_values(records, Measure::apr);
  const auto dps = measure_values(records, Measure::peak);
  ClassThresholds t;
  t.apr_cut = nearest_rank_percentile(aprs, cut_pct);
  t.dp_cut = nearest_rank_percentile(dps, cut_pct);
  t.apr_extreme = nearest_rank_percentile(aprs, extreme_pct);
  t.dp_extreme = nearest_rank_percentile(dps, extreme_pct);
  if (thresholds != nullptr) *thresholds = t;

  std::vector<PairClassification> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const bool high_apr = aprs[i] > t.apr_cut;
    const bool high_dp = dps[i] > t.dp_cut;
    PairClassification c;
    c.label = high_apr ? (high_dp ? PairClass::c4 : PairClass::c2) : (high_dp ? PairClass::c3 : PairClass::c1);
    c.apr_extreme = aprs[i] > t.apr_extreme;
    c.dp_extreme = dps[i] > t.dp_extreme;
    out.push_back(c);
  }
  return out;
}

std::vector<PairRecord> rank_similar_unexpected(std::span<const PairRecord> records, double q) {
  auto out = percentile_select(records, Measure::peak, q, Side::below);
  std::stable_sort(out.begin(), out.end(), [](const PairRecord& a, const PairRecord& b) {
    if (a.rs != b.rs) return a.rs > b.rs;
    return word_less(a, b);
  });
  return out;
}

}  // namespace genodist
