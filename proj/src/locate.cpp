#include "genodist/locate.hpp"

#include <optional>

#include "genodist/errors.hpp"

namespace genodist {

FavoredSites locate_favored(FastaReader& reader, WordId word, int d_star, int dmax, CasePolicy policy) {
  validate_scan_config(word.k, dmax);
  if (d_star <= word.k || d_star > dmax) {
    throw ConfigError("d_star must satisfy k < d_star <= dmax (got " + std::to_string(d_star) + ")");
  }
  const std::string text = decode_word(word);
  FavoredSites sites;
  sites.word = word;
  sites.d_star = d_star;

  FastaRecord record;
  while (reader.next(record)) {
    normalize_symbols(record.symbols, policy);
    std::uint64_t count = 0;
    for (const SegmentView& segment : segment_views(record.symbols)) {
      std::optional<std::size_t> previous;
      std::size_t from = 0;
      while (true) {
        const auto at = segment.symbols.find(text, from);
        if (at == std::string_view::npos) break;
        if (previous && at - *previous == static_cast<std::size_t>(d_star)) {
          sites.hits.push_back({record.info.id, segment.offset + *previous});
          ++count;
        }
        previous = at;
        from = at + 1;
      }
    }
    sites.per_chromosome.emplace_back(record.info.id, count);
  }
  return sites;
}

}  // namespace genodist
