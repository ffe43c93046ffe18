#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "genodist/errors.hpp"

namespace genodist {

inline constexpr double kDefaultJeffreysEpsilon = 1e-10;
inline constexpr double kPeakSizeFloor = 1e-12;

// Relative frequencies of inter-occurrence distances on {k+1, ..., Dmax}.
// freqs[i] is the frequency of distance k + 1 + i.
template <typename Scalar>
struct BasicDistanceDistribution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int k = 0;
  int dmax = 0;
  Vector freqs;
  Scalar support_total = 0;  // count mass the frequencies were normalized from

  int domain_size() const { return dmax - k; }
  int first_distance() const { return k + 1; }
  Scalar at(int distance) const { return freqs(distance - first_distance()); }

  bool same_domain(const BasicDistanceDistribution& other) const { return k == other.k && dmax == other.dmax; }
};

using DistanceDistribution = BasicDistanceDistribution<double>;

// counts[d - 1] holds the tally for distance d, d in 1..Dmax.
template <typename Count>
DistanceDistribution to_distribution(std::span<const Count> counts, int k) {
  const int dmax = static_cast<int>(counts.size());
  if (dmax <= k) throw ConfigError("histogram shorter than the word length");
  DistanceDistribution f;
  f.k = k;
  f.dmax = dmax;
  f.freqs.resize(dmax - k);
  double total = 0;
  for (int d = k + 1; d <= dmax; ++d) total += static_cast<double>(counts[static_cast<std::size_t>(d - 1)]);
  if (total <= 0) throw InsufficientDataError("no distances above k within Dmax");
  for (int d = k + 1; d <= dmax; ++d) {
    f.freqs(d - k - 1) = static_cast<double>(counts[static_cast<std::size_t>(d - 1)]) / total;
  }
  f.support_total = total;
  return f;
}

// Absolute Pearson residual of a word count against its reverse complement's.
inline double apr(std::uint64_t n_w, std::uint64_t n_wbar) {
  if (n_w == 0 && n_wbar == 0) return 0.0;
  const double a = static_cast<double>(n_w);
  const double b = static_cast<double>(n_wbar);
  return std::abs(a - b) / std::sqrt(2.0 * (a + b));
}

template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar euclidean(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedQ>& q) {
  return (p - q).norm();
}

// Sum of p_i ln(p_i / q_i) with zeros replaced by eps (no renormalization).
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar kullback_leibler(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedQ>& q,
                                           typename DerivedP::Scalar eps = kDefaultJeffreysEpsilon) {
  using Scalar = typename DerivedP::Scalar;
  const auto floor = [eps](Scalar x) { return x > Scalar(0) ? x : eps; };
  const auto pe = p.unaryExpr(floor).eval();
  const auto qe = q.unaryExpr(floor).eval();
  return (pe.array() * (pe.array().log() - qe.array().log())).sum();
}

template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar jeffreys(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedQ>& q,
                                   typename DerivedP::Scalar eps = kDefaultJeffreysEpsilon) {
  return kullback_leibler(p, q, eps) + kullback_leibler(q, p, eps);
}

inline void require_same_domain(const DistanceDistribution& f, const DistanceDistribution& g) {
  if (!f.same_domain(g)) throw DomainMismatchError("distributions are defined on different domains");
}

inline double euclidean(const DistanceDistribution& f, const DistanceDistribution& g) {
  require_same_domain(f, g);
  return euclidean(f.freqs, g.freqs);
}

inline double jeffreys(const DistanceDistribution& f, const DistanceDistribution& g,
                       double eps = kDefaultJeffreysEpsilon) {
  require_same_domain(f, g);
  if (!(eps > 0)) throw ConfigError("Jeffreys epsilon must be positive");
  return jeffreys(f.freqs, g.freqs, eps);
}

struct PeakConfig {
  int bandwidth = 5;  // h
  int peaks = 3;      // n

  // Throws ConfigError unless h >= 2, n >= 1 and n * h <= domain_size.
  void validate(int domain_size) const;
};

// A window of `bandwidth` consecutive domain points. start and location are
// domain indices (0-based) for the vector overloads and distances for the
// DistanceDistribution overloads.
struct Peak {
  int start = 0;
  int location = 0;
  double size = 0;

  bool operator==(const Peak&) const = default;
};

// Size of every window: mean of its h-1 absolute successive differences.
template <typename Derived>
std::vector<double> window_sizes(const Eigen::MatrixBase<Derived>& freqs, int bandwidth) {
  const Eigen::Index points = freqs.size();
  std::vector<double> sizes;
  if (points < bandwidth) return sizes;
  const auto steps = (freqs.tail(points - 1) - freqs.head(points - 1)).cwiseAbs().eval();
  sizes.resize(static_cast<std::size_t>(points - bandwidth + 1));
  // Summed left to right so windows that differ only by zero steps tie exactly.
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    double sum = 0;
    for (int i = 0; i < bandwidth - 1; ++i) sum += static_cast<double>(steps(static_cast<Eigen::Index>(s) + i));
    sizes[s] = sum / (bandwidth - 1);
  }
  return sizes;
}

// Greedy selection of the n strongest pairwise-disjoint windows, in
// decreasing size order; ties go to the window with the smaller location.
template <typename Derived>
std::vector<Peak> find_peaks(const Eigen::MatrixBase<Derived>& freqs, const PeakConfig& cfg) {
  cfg.validate(static_cast<int>(freqs.size()));
  const int h = cfg.bandwidth;
  const std::vector<double> sizes = window_sizes(freqs, h);
  std::vector<Peak> peaks;
  peaks.reserve(static_cast<std::size_t>(cfg.peaks));
  const auto overlaps_selected = [&](int start) {
    return std::any_of(peaks.begin(), peaks.end(),
                       [&](const Peak& p) { return start < p.start + h && p.start < start + h; });
  };
  for (int i = 0; i < cfg.peaks; ++i) {
    int best = -1;
    for (int s = 0; s < static_cast<int>(sizes.size()); ++s) {
      if (overlaps_selected(s)) continue;
      if (best < 0 || sizes[static_cast<std::size_t>(s)] > sizes[static_cast<std::size_t>(best)]) best = s;
    }
    if (best < 0) throw ConfigError("no window left that is disjoint from the selected peaks; lower n or h");
    peaks.push_back({best, best + (h - 1) / 2, sizes[static_cast<std::size_t>(best)]});
  }
  return peaks;
}

std::vector<Peak> find_peaks(const DistanceDistribution& f, const PeakConfig& cfg);

// Dissimilarity between two peaks given the strongest peak size of each
// distribution and the domain length.
inline double peak_pair_dissim(const Peak& a, const Peak& b, double strongest_a, double strongest_b, int domain_size) {
  const double location_term = std::abs(a.location - b.location) / static_cast<double>(domain_size) + 1.0;
  const double scale = std::max(std::min(strongest_a, strongest_b), kPeakSizeFloor);
  const double size_term = std::abs(a.size - b.size) / scale + 1.0;
  return location_term * size_term - 1.0;
}

// Minimum over all assignments of peaks of a to peaks of b of the summed
// pair dissimilarities. Both lists are in decreasing size order.
double match_peaks(std::span<const Peak> a, std::span<const Peak> b, int domain_size);

template <typename DerivedP, typename DerivedQ>
double peak_dissimilarity(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedQ>& q,
                          const PeakConfig& cfg) {
  if (p.size() != q.size()) throw DomainMismatchError("frequency vectors differ in length");
  const auto peaks_p = find_peaks(p, cfg);
  const auto peaks_q = find_peaks(q, cfg);
  return match_peaks(peaks_p, peaks_q, static_cast<int>(p.size()));
}

double peak_dissimilarity(const DistanceDistribution& f, const DistanceDistribution& g, const PeakConfig& cfg);

}  // namespace genodist
