#include "genodist/dissim.hpp"

#include <limits>
#include <string>

namespace genodist {

void PeakConfig::validate(int domain_size) const {
  if (bandwidth < 2) throw ConfigError("peak bandwidth h must be at least 2");
  if (peaks < 1) throw ConfigError("number of peaks n must be at least 1");
  if (peaks > 10) throw ConfigError("number of peaks n above 10 is not supported");
  if (static_cast<long>(peaks) * bandwidth > domain_size) {
    throw ConfigError("n*h = " + std::to_string(peaks * bandwidth) + " exceeds the domain length " +
                      std::to_string(domain_size));
  }
}

std::vector<Peak> find_peaks(const DistanceDistribution& f, const PeakConfig& cfg) {
  auto peaks = find_peaks(f.freqs, cfg);
  for (Peak& p : peaks) {
    p.start += f.first_distance();
    p.location += f.first_distance();
  }
  return peaks;
}

double match_peaks(std::span<const Peak> a, std::span<const Peak> b, int domain_size) {
  if (a.size() != b.size() || a.empty()) throw ConfigError("peak lists must be non-empty and of equal length");
  const std::size_t n = a.size();
  const double strongest_a = a.front().size;
  const double strongest_b = b.front().size;

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) total += peak_pair_dissim(a[i], b[perm[i]], strongest_a, strongest_b, domain_size);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double peak_dissimilarity(const DistanceDistribution& f, const DistanceDistribution& g, const PeakConfig& cfg) {
  require_same_domain(f, g);
  return peak_dissimilarity(f.freqs, g.freqs, cfg);
}

}  // namespace genodist
