#include "genodist/synthetic.hpp"

#include <ostream>
#include <random>
#include <string_view>

#include "genodist/errors.hpp"

namespace genodist {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SyntheticGenomeSpec default_synthetic_genome() {
  SyntheticGenomeSpec spec;
  spec.motifs = {
      {"CCGTCCG", 0, 1'000'000, 37, 600},   // and its reverse complement below
      {"CGGACGG", 1, 2'000'000, 37, 600},
      {"AGTTATG", 2, 500'000, 91, 800},     // complement CATAACT stays background
      {"ATCATCG", 0, 3'000'000, 113, 300},
      {"CGATGAT", 2, 1'800'000, 113, 300},
  };
  return spec;
}

void write_synthetic_genome(const SyntheticGenomeSpec& spec, std::ostream& out) {
  std::mt19937_64 rng(spec.seed);
  std::array<double, 4> cumulative{};
  double acc = 0;
  for (std::size_t i = 0; i < 4; ++i) cumulative[i] = (acc += spec.base_freqs[i]);
  constexpr std::string_view kSymbols = "ACGT";

  for (std::size_t c = 0; c < spec.chromosome_lengths.size(); ++c) {
    std::string seq(spec.chromosome_lengths[c], 'N');
    for (char& s : seq) {
      const double u = unit(rng) * acc;
      std::size_t b = 0;
      while (b < 3 && u >= cumulative[b]) ++b;
      s = kSymbols[b];
    }
    // Separator runs of 20..2019 N's.
    if (spec.mean_separator_spacing > 0) {
      std::uint64_t pos = rng() % spec.mean_separator_spacing;
      while (pos < seq.size()) {
        const std::uint64_t run = 20 + rng() % 2000;
        for (std::uint64_t i = pos; i < std::min<std::uint64_t>(pos + run, seq.size()); ++i) seq[i] = 'N';
        pos += run + 1 + rng() % (2 * spec.mean_separator_spacing);
      }
    }
    for (const PlantedMotif& m : spec.motifs) {
      if (m.chromosome != static_cast<int>(c)) continue;
      if (m.period < static_cast<int>(m.word.size())) throw ConfigError("planted period shorter than the word");
      for (int i = 0; i < m.copies; ++i) {
        const std::uint64_t at = m.start + static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(m.period);
        if (at + m.word.size() > seq.size()) break;
        seq.replace(at, m.word.size(), m.word);
      }
    }
    out << ">chr" << (c + 1) << " synthetic\n";
    for (std::size_t i = 0; i < seq.size(); i += static_cast<std::size_t>(spec.line_width)) {
      out << std::string_view(seq).substr(i, static_cast<std::size_t>(spec.line_width)) << '\n';
    }
  }
}

}  // namespace genodist
