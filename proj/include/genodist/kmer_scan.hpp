#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genodist/seq_ingest.hpp"

namespace genodist {

inline constexpr int kMaxWordLength = 8;
inline constexpr int kDefaultMaxDistance = 1000;

// 2-bit packed word, A=0 C=1 G=2 T=3, first symbol most significant.
// Code order coincides with lexicographic order of the text.
struct WordId {
  int k = 0;
  std::uint32_t code = 0;

  auto operator<=>(const WordId&) const = default;
};

// Symbol code of an uppercase nucleotide, or -1.
constexpr int nucleotide_code(char c) {
  switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return -1;
  }
}

inline constexpr std::array<char, 4> kNucleotides = {'A', 'C', 'G', 'T'};

constexpr std::size_t word_space(int k) { return std::size_t{1} << (2 * k); }

WordId encode_word(std::string_view text);
WordId encode_word(std::string_view text, int k);
std::string decode_word(WordId word);
WordId reverse_complement(WordId word);

void validate_scan_config(int k, int dmax);

struct DistanceHistogram {
  std::vector<std::uint64_t> counts;  // counts[d - 1] for d in 1..Dmax
  std::uint64_t occurrences = 0;
  std::uint64_t overflow = 0;         // gaps longer than Dmax

  int dmax() const { return static_cast<int>(counts.size()); }
  std::uint64_t at(int distance) const { return counts.at(static_cast<std::size_t>(distance - 1)); }

  bool operator==(const DistanceHistogram&) const = default;
};

// Dense per-word distance histograms for one (k, Dmax) configuration.
class CountStore {
 public:
  CountStore(int k, int dmax);

  int k() const { return k_; }
  int dmax() const { return dmax_; }
  std::size_t word_count() const { return occurrences_.size(); }

  std::span<const std::uint32_t> counts(std::uint32_t code) const {
    return {counts_.data() + std::size_t{code} * dmax_, static_cast<std::size_t>(dmax_)};
  }
  std::span<std::uint32_t> counts(std::uint32_t code) {
    return {counts_.data() + std::size_t{code} * dmax_, static_cast<std::size_t>(dmax_)};
  }
  std::uint64_t occurrences(std::uint32_t code) const { return occurrences_[code]; }
  std::uint64_t overflow(std::uint32_t code) const { return overflow_[code]; }

  DistanceHistogram histogram(WordId word) const;

  // Nucleotide totals over every scanned segment, in A,C,G,T order.
  const std::array<std::uint64_t, 4>& base_counts() const { return base_counts_; }

  // Provenance: input names in the order they were scanned or merged.
  const std::vector<std::string>& inputs() const { return inputs_; }
  void add_input(std::string name) { inputs_.push_back(std::move(name)); }

  bool empty() const;

  // Direct edits for building stores from known histograms.
  void set_totals(std::uint32_t code, std::uint64_t occurrences, std::uint64_t overflow);
  void set_base_counts(const std::array<std::uint64_t, 4>& counts) { base_counts_ = counts; }

  // Element-wise sum; throws StoreError on (k, Dmax) mismatch or counter overflow.
  void merge(const CountStore& other);

  bool operator==(const CountStore&) const = default;

 private:
  friend class SegmentScanner;
  friend CountStore load_store(const std::filesystem::path& path);

  int k_;
  int dmax_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint64_t> occurrences_;
  std::vector<std::uint64_t> overflow_;
  std::array<std::uint64_t, 4> base_counts_{};
  std::vector<std::string> inputs_;
};

CountStore merge_stores(const CountStore& a, const CountStore& b);

// Single-pass scanner feeding one store. Keeps last-seen positions across
// calls so successive segments need no per-segment reset; distances never
// span two segments.
class SegmentScanner {
 public:
  explicit SegmentScanner(CountStore& store);

  // symbols must contain only A/C/G/T (InputError otherwise).
  void scan(std::string_view symbols);

 private:
  CountStore& store_;
  std::vector<std::uint64_t> last_seen_;
  std::uint64_t cursor_ = 1;  // global position of the next segment; 0 means never seen
};

void scan_segment(const Segment& segment, int k, int dmax, CountStore& store);

// Count-store TSV, see README for the layout.
void save_store(const CountStore& store, const std::filesystem::path& path);
CountStore load_store(const std::filesystem::path& path);

}  // namespace genodist
