#include "genodist/kmer_scan.hpp"

#include <algorithm>
#include <limits>

#include "genodist/errors.hpp"

namespace genodist {

WordId encode_word(std::string_view text) { return encode_word(text, static_cast<int>(text.size())); }

WordId encode_word(std::string_view text, int k) {
  if (k < 1 || k > kMaxWordLength) {
    throw EncodingError("word length must be in 1.." + std::to_string(kMaxWordLength));
  }
  if (text.size() != static_cast<std::size_t>(k)) {
    throw EncodingError("word '" + std::string(text) + "' does not have length " + std::to_string(k));
  }
  std::uint32_t code = 0;
  for (char c : text) {
    const int symbol = nucleotide_code(c);
    if (symbol < 0) throw EncodingError("invalid symbol in word '" + std::string(text) + "'");
    code = (code << 2) | static_cast<std::uint32_t>(symbol);
  }
  return {k, code};
}

std::string decode_word(WordId word) {
  std::string text(static_cast<std::size_t>(word.k), 'A');
  std::uint32_t code = word.code;
  for (int i = word.k - 1; i >= 0; --i) {
    text[static_cast<std::size_t>(i)] = kNucleotides[code & 3u];
    code >>= 2;
  }
  return text;
}

WordId reverse_complement(WordId word) {
  // Complement is 3 - symbol; reversal reads symbols from the low end.
  std::uint32_t in = word.code;
  std::uint32_t out = 0;
  for (int i = 0; i < word.k; ++i) {
    out = (out << 2) | (3u - (in & 3u));
    in >>= 2;
  }
  return {word.k, out};
}

void validate_scan_config(int k, int dmax) {
  if (k < 1 || k > kMaxWordLength) {
    throw ConfigError("k must be in 1.." + std::to_string(kMaxWordLength) + " (got " + std::to_string(k) + ")");
  }
  if (dmax <= k) {
    throw ConfigError("dmax must exceed k (got dmax=" + std::to_string(dmax) + ", k=" + std::to_string(k) + ")");
  }
  if (dmax > 1'000'000) throw ConfigError("dmax above 1000000 is not supported");
}

CountStore::CountStore(int k, int dmax) : k_(k), dmax_(dmax) {
  validate_scan_config(k, dmax);
  const std::size_t words = word_space(k);
  counts_.assign(words * static_cast<std::size_t>(dmax), 0);
  occurrences_.assign(words, 0);
  overflow_.assign(words, 0);
}

DistanceHistogram CountStore::histogram(WordId word) const {
  if (word.k != k_) throw ConfigError("word length does not match store k");
  DistanceHistogram h;
  const auto row = counts(word.code);
  h.counts.assign(row.begin(), row.end());
  h.occurrences = occurrences_[word.code];
  h.overflow = overflow_[word.code];
  return h;
}

void CountStore::set_totals(std::uint32_t code, std::uint64_t occurrences, std::uint64_t overflow) {
  occurrences_.at(code) = occurrences;
  overflow_.at(code) = overflow;
}

bool CountStore::empty() const {
  return std::all_of(occurrences_.begin(), occurrences_.end(), [](auto n) { return n == 0; });
}

void CountStore::merge(const CountStore& other) {
  if (other.k_ != k_ || other.dmax_ != dmax_) {
    throw StoreError("cannot merge stores with different (k, dmax)");
  }
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (other.counts_[i] > kMax - counts_[i]) throw StoreError("distance counter overflow during merge");
    counts_[i] += other.counts_[i];
  }
  for (std::size_t i = 0; i < occurrences_.size(); ++i) {
    occurrences_[i] += other.occurrences_[i];
    overflow_[i] += other.overflow_[i];
  }
  for (std::size_t i = 0; i < 4; ++i) base_counts_[i] += other.base_counts_[i];
  inputs_.insert(inputs_.end(), other.inputs_.begin(), other.inputs_.end());
}

CountStore merge_stores(const CountStore& a, const CountStore& b) {
  CountStore out = a;
  out.merge(b);
  return out;
}

SegmentScanner::SegmentScanner(CountStore& store)
    : store_(store), last_seen_(store.word_count(), 0) {}

void SegmentScanner::scan(std::string_view symbols) {
  static constexpr auto kTable = [] {
    std::array<std::uint8_t, 256> t{};
    t.fill(4);
    t['A'] = 0;
    t['C'] = 1;
    t['G'] = 2;
    t['T'] = 3;
    return t;
  }();

  const int k = store_.k_;
  const std::uint64_t dmax = static_cast<std::uint64_t>(store_.dmax_);
  const std::uint32_t mask = static_cast<std::uint32_t>(word_space(k) - 1);
  const std::uint64_t segment_start = cursor_;

  std::uint32_t* counts = store_.counts_.data();
  std::uint64_t* occurrences = store_.occurrences_.data();
  std::uint64_t* overflow = store_.overflow_.data();
  std::uint64_t* last_seen = last_seen_.data();
  std::array<std::uint64_t, 4> bases{};

  std::uint32_t code = 0;
  const std::size_t n = symbols.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t symbol = kTable[static_cast<unsigned char>(symbols[i])];
    if (symbol > 3) throw InputError("segment contains a non-ACGT symbol");
    ++bases[symbol];
    code = ((code << 2) | symbol) & mask;
    if (i + 1 < static_cast<std::size_t>(k)) continue;

    // Global position of the word start; strictly increasing across calls.
    const std::uint64_t position = segment_start + (i + 1 - static_cast<std::size_t>(k));
    ++occurrences[code];
    const std::uint64_t previous = last_seen[code];
    if (previous >= segment_start) {
      const std::uint64_t d = position - previous;
      if (d <= dmax) {
        ++counts[std::size_t{code} * dmax + (d - 1)];
      } else {
        ++overflow[code];
      }
    }
    last_seen[code] = position;
  }
  for (std::size_t i = 0; i < 4; ++i) store_.base_counts_[i] += bases[i];
  cursor_ = segment_start + n + 1;
}

void scan_segment(const Segment& segment, int k, int dmax, CountStore& store) {
  if (store.k() != k || store.dmax() != dmax) {
    throw ConfigError("store configuration (k=" + std::to_string(store.k()) + ", dmax=" +
                      std::to_string(store.dmax()) + ") does not match scan request");
  }
  SegmentScanner scanner(store);
  scanner.scan(segment.symbols);
}

}  // namespace genodist
