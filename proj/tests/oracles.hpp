#pragma once

// Reference implementations written without the library's code paths:
// position lists, exhaustive window scans, explicit permutation loops.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct WordTally {
  std::uint64_t occurrences = 0;
  std::uint64_t overflow = 0;
  std::map<int, std::uint64_t> counts;  // distance -> tally
};

inline bool is_acgt(char c) { return c == 'A' || c == 'C' || c == 'G' || c == 'T'; }

// Maximal ACGT runs by walking every character: (offset, text).
inline std::vector<std::pair<std::size_t, std::string>> runs(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_acgt(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_acgt(text[j])) ++j;
    out.emplace_back(i, text.substr(i, j - i));
    i = j;
  }
  return out;
}

// For every word: all start positions inside each run, then consecutive differences.
inline std::map<std::string, WordTally> scan(const std::string& text, int k, int dmax) {
  std::map<std::string, WordTally> out;
  for (const auto& [offset, run] : runs(text)) {
    std::map<std::string, std::vector<std::size_t>> positions;
    for (std::size_t p = 0; p + static_cast<std::size_t>(k) <= run.size(); ++p) {
      positions[run.substr(p, static_cast<std::size_t>(k))].push_back(p);
    }
    for (const auto& [word, list] : positions) {
      auto& t = out[word];
      t.occurrences += list.size();
      for (std::size_t i = 1; i < list.size(); ++i) {
        const auto d = static_cast<int>(list[i] - list[i - 1]);
        if (d <= dmax) {
          ++t.counts[d];
        } else {
          ++t.overflow;
        }
      }
    }
  }
  return out;
}

inline std::string revcomp(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) {
    switch (c) {
      case 'A': c = 'T'; break;
      case 'C': c = 'G'; break;
      case 'G': c = 'C'; break;
      case 'T': c = 'A'; break;
    }
  }
  return out;
}

inline std::string all_words_text(int k, std::size_t index) {
  std::string w(static_cast<std::size_t>(k), 'A');
  for (int i = k - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = "ACGT"[index % 4];
    index /= 4;
  }
  return w;
}

struct WindowPeak {
  int start;
  int location;
  double size;
};

// Every window re-summed from scratch; selection by repeated full scans.
inline std::vector<WindowPeak> peaks(const std::vector<double>& f, int h, int n) {
  const int points = static_cast<int>(f.size());
  std::vector<WindowPeak> chosen;
  for (int round = 0; round < n; ++round) {
    int best = -1;
    double best_size = -1;
    for (int s = 0; s + h <= points; ++s) {
      bool clash = false;
      for (const auto& c : chosen) {
        if (!(s + h - 1 < c.start || c.start + h - 1 < s)) clash = true;
      }
      if (clash) continue;
      double sum = 0;
      for (int i = s; i < s + h - 1; ++i) sum += std::fabs(f[static_cast<std::size_t>(i + 1)] - f[static_cast<std::size_t>(i)]);
      const double size = sum / (h - 1);
      if (size > best_size) {
        best_size = size;
        best = s;
      }
    }
    if (best < 0) break;
    chosen.push_back({best, best + (h - 1) / 2, best_size});
  }
  return chosen;
}

inline double pair_term(const WindowPeak& a, const WindowPeak& b, double va, double vb, int domain) {
  const double scale = std::max(std::min(va, vb), 1e-12);
  return (std::fabs(double(a.location - b.location)) / domain + 1.0) * (std::fabs(a.size - b.size) / scale + 1.0) - 1.0;
}

// Exhaustive assignment for three peaks on each side, all six listed explicitly.
inline double three_peak_dissim(const std::vector<WindowPeak>& a, const std::vector<WindowPeak>& b, int domain) {
  static constexpr std::array<std::array<int, 3>, 6> kPerms = {{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
  }};
  const double va = a[0].size;
  const double vb = b[0].size;
  double best = INFINITY;
  for (const auto& p : kPerms) {
    double sum = 0;
    for (int i = 0; i < 3; ++i) sum += pair_term(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])], va, vb, domain);
    best = std::min(best, sum);
  }
  return best;
}

inline std::vector<double> random_distribution(std::mt19937_64& rng, int points, double zero_prob = 0.2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> f(static_cast<std::size_t>(points));
  double total = 0;
  for (auto& x : f) {
    x = u(rng) < zero_prob ? 0.0 : u(rng);
    total += x;
  }
  if (total == 0) {
    f[0] = 1;
    total = 1;
  }
  for (auto& x : f) x /= total;
  return f;
}

inline std::string random_acgt(std::mt19937_64& rng, std::size_t n) {
  std::string s(n, 'A');
  for (auto& c : s) c = "ACGT"[rng() & 3u];
  return s;
}

}  // namespace oracle
