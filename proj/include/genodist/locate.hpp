#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genodist/kmer_scan.hpp"
#include "genodist/seq_ingest.hpp"

namespace genodist {

// An occurrence of a word whose next occurrence starts exactly d_star later.
struct FavoredHit {
  std::string chromosome;
  std::uint64_t position = 0;  // 0-based, chromosome coordinates

  bool operator==(const FavoredHit&) const = default;
};

struct FavoredSites {
  WordId word;
  int d_star = 0;
  std::vector<FavoredHit> hits;  // input order
  std::vector<std::pair<std::string, std::uint64_t>> per_chromosome;  // input order, every chromosome read
};

// Rescans every record of the reader. Requires k < d_star <= dmax.
FavoredSites locate_favored(FastaReader& reader, WordId word, int d_star, int dmax,
                            CasePolicy policy = CasePolicy::fold);

}  // namespace genodist
