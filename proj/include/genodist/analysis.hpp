#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genodist/dissim.hpp"
#include "genodist/kmer_scan.hpp"
#include "genodist/refmodel.hpp"

namespace genodist {

enum class Measure { apr, euclidean, jeffreys, peak, rs };

std::string_view measure_name(Measure m);

struct PairFlags {
  bool palindrome = false;
  bool low_frequency = false;      // min(n_w, n_wbar) < min_freq
  bool insufficient_data = false;  // a distribution or the reference has no mass in (k, Dmax]

  bool operator==(const PairFlags&) const = default;
};

// One symmetric pair {w, w̄}; word is the lexicographically smaller member.
// Measures that could not be computed are NaN and the pair is flagged.
struct PairRecord {
  WordId word;
  WordId complement;
  std::uint64_t n_w = 0;
  std::uint64_t n_wbar = 0;
  double apr = 0;
  double d_e = 0;
  double d_j = 0;
  double d_p = 0;
  double rs = 0;
  PairFlags flags;

  // Eligible for rankings, percentiles and correlations.
  bool ranked() const { return !flags.palindrome && !flags.low_frequency && !flags.insufficient_data; }
  double value(Measure m) const;
};

struct AnalysisConfig {
  PeakConfig peaks;
  double eps = kDefaultJeffreysEpsilon;
  std::uint64_t min_freq = 100;
  std::optional<BaseFrequencies> base_freq;  // default: estimated from the store
  unsigned threads = 1;
};

// Base frequencies used by the reference model: cfg.base_freq when set,
// otherwise the store's nucleotide counts (or first-symbol word marginals
// when the store carries none).
BaseFrequencies analysis_base_frequencies(const CountStore& store, const AnalysisConfig& cfg);

// All symmetric pairs of the store in lexicographic order of word.
std::vector<PairRecord> pair_records(const CountStore& store, const AnalysisConfig& cfg);

std::vector<PairRecord> ranked_only(std::span<const PairRecord> records);
std::vector<double> measure_values(std::span<const PairRecord> records, Measure m);

// Ranks 1..N, ties receive the average of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

struct RankTable {
  Measure measure = Measure::peak;
  struct Entry {
    WordId word;
    double value = 0;
    double rank = 0;
  };
  std::vector<Entry> entries;  // ascending by value, ties by word
};

RankTable rank_table(std::span<const PairRecord> records, Measure m);

// Spearman rank correlation; throws ConfigError on length mismatch, fewer
// than 2 values or a constant input.
double spearman(std::span<const double> x, std::span<const double> y);

// Correlations among APR, D_E, D_J, D_P (in that order).
inline constexpr std::array<Measure, 4> kCorrelatedMeasures = {Measure::apr, Measure::euclidean, Measure::jeffreys,
                                                               Measure::peak};
Eigen::Matrix4d spearman_matrix(std::span<const PairRecord> records);

// Indices of the ceil(q * N) largest values; ties go to the smaller index.
std::vector<std::size_t> top_set(std::span<const double> values, double q);

// |top_q(m1) ∩ top_q(m2)| / |top_q(m1)|.
double top_overlap(std::span<const double> m1, std::span<const double> m2, double q);

// Nearest-rank percentile: the ceil(q/100 * N)-th smallest value, q in (0, 100).
double nearest_rank_percentile(std::span<const double> values, double q);

enum class Side { above, below };

// Records strictly beyond the nearest-rank q-th percentile of the measure,
// sorted descending (above) or ascending (below), ties by word.
std::vector<PairRecord> percentile_select(std::span<const PairRecord> records, Measure m, double q, Side side);

enum class PairClass { c1, c2, c3, c4 };

std::string_view class_name(PairClass c);

struct PairClassification {
  PairClass label = PairClass::c1;
  bool apr_extreme = false;  // above the extreme percentile of APR
  bool dp_extreme = false;   // above the extreme percentile of D_P
};

struct ClassThresholds {
  double apr_cut = 0;
  double dp_cut = 0;
  double apr_extreme = 0;
  double dp_extreme = 0;
};

// High/low split on APR and D_P at the cut percentile: c1 low/low,
// c2 high APR & low D_P, c3 low APR & high D_P, c4 high/high.
// "High" means strictly above the nearest-rank percentile.
std::vector<PairClassification> classify_pairs(std::span<const PairRecord> records, double cut_pct = 90,
                                               double extreme_pct = 99, ClassThresholds* thresholds = nullptr);

// Pairs with D_P strictly below its q-th percentile, sorted by rs descending.
std::vector<PairRecord> rank_similar_unexpected(std::span<const PairRecord> records, double q = 10);

}  // namespace genodist
