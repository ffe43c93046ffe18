#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "genodist/analysis.hpp"
#include "genodist/kmer_scan.hpp"
#include "genodist/locate.hpp"
#include "genodist/refmodel.hpp"
#include "genodist/seq_ingest.hpp"

namespace genodist {

std::string_view tool_version();

struct RunConfig {
  int k = 0;  // 0: take it from the store / word
  int dmax = kDefaultMaxDistance;
  PeakConfig peaks;
  double eps = kDefaultJeffreysEpsilon;
  std::uint64_t min_freq = 100;
  std::vector<double> overlap_fractions = {0.01, 0.10};
  double select_pct = 99;
  double similar_pct = 10;
  double class_cut_pct = 90;
  double class_extreme_pct = 99;
  std::vector<std::string> inputs;
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  CasePolicy case_policy = CasePolicy::fold;
  std::optional<BaseFrequencies> base_freq;
  std::vector<std::string> dump_words;

  // Throws ConfigError on any violated constraint. k and dmax are checked
  // only when k is set.
  void validate() const;

  AnalysisConfig analysis() const;

  // '#'-prefixed metadata lines. Thread count and output directory are left
  // out: they do not affect results.
  std::string metadata() const;
};

std::optional<BaseFrequencies> parse_base_frequencies(std::string_view text);

struct ScanSummary {
  std::uint64_t chromosomes = 0;
  std::uint64_t segments = 0;
  std::uint64_t symbols = 0;         // all bytes of all records, separators included
  std::uint64_t segment_symbols = 0;
  std::uint64_t words = 0;           // occurrences counted
};

// Scans records from each reader into `store`, one private store per worker
// merged at the end.
ScanSummary scan_reader(FastaReader& reader, CountStore& store, CasePolicy policy, unsigned threads);
ScanSummary scan_files(const std::vector<std::filesystem::path>& inputs, CountStore& store, CasePolicy policy,
                       unsigned threads);

struct ReportOutputs {
  std::vector<std::filesystem::path> files;
  std::vector<PairRecord> records;
};

// Runs every analysis on the store and writes the report TSVs into
// cfg.out_dir. Files are written to temporaries and renamed when complete.
ReportOutputs write_reports(const CountStore& store, const RunConfig& cfg);

// Writes `path` atomically through a temporary sibling.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// "chrom<TAB>start<TAB>end<TAB>word|d_star" rows; end covers both occurrences.
std::string format_bed(const FavoredSites& sites);

// Shortest round-trip decimal text; "NA" for NaN.
std::string format_number(double value);

}  // namespace genodist
