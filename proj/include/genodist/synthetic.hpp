#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace genodist {

// A word written every `period` symbols, `copies` times, starting at
// `start` of chromosome `chromosome` (overwrites the background).
struct PlantedMotif {
  std::string word;
  int chromosome = 0;
  std::uint64_t start = 0;
  int period = 0;
  int copies = 0;
};

struct SyntheticGenomeSpec {
  std::vector<std::uint64_t> chromosome_lengths = {4'000'000, 3'500'000, 2'500'000};
  std::array<double, 4> base_freqs = {0.3, 0.2, 0.2, 0.3};
  std::uint64_t seed = 20170901;
  std::uint64_t mean_separator_spacing = 400'000;  // expected symbols between N runs
  std::vector<PlantedMotif> motifs;
  int line_width = 60;
};

// 10 Mbp, three chromosomes, with a reverse-complement pair planted at the
// same period on both strands and a one-sided periodic word.
SyntheticGenomeSpec default_synthetic_genome();

// Deterministic for a given spec on every platform (raw 64-bit engine output only).
void write_synthetic_genome(const SyntheticGenomeSpec& spec, std::ostream& out);

}  // namespace genodist
