#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "genodist/dissim.hpp"

namespace genodist {

// Match-progress automaton of a word. State s < k means the longest suffix
// of the text read so far that is a prefix of the word has length s; state k
// is the accepting state. Reading a symbol from the accepting state behaves
// like reading it from post_match_state(), the longest proper border.
class PatternAutomaton {
 public:
  explicit PatternAutomaton(std::string_view word);

  const std::string& word() const { return word_; }
  int k() const { return static_cast<int>(word_.size()); }
  int accept_state() const { return k(); }
  int post_match_state() const { return border_; }
  int next(int state, int symbol) const { return transitions_(state, symbol); }

 private:
  std::string word_;
  int border_ = 0;
  Eigen::Matrix<int, Eigen::Dynamic, 4, Eigen::RowMajor> transitions_;
};

PatternAutomaton build_automaton(std::string_view word);

// i.i.d. nucleotide probabilities in A,C,G,T order.
struct BaseFrequencies {
  Eigen::Vector4d p = Eigen::Vector4d::Constant(0.25);

  static BaseFrequencies uniform() { return {}; }
  static BaseFrequencies from_counts(const std::array<std::uint64_t, 4>& counts);
  // Throws ConfigError unless entries are >= 0 and sum to 1 within 1e-12.
  void validate() const;
};

// g(d) for d = 1..dmax (index d - 1): probability that, starting right after
// an occurrence, the next occurrence of the word begins exactly d symbols later.
Eigen::VectorXd first_return_probabilities(const PatternAutomaton& automaton, const BaseFrequencies& freqs, int dmax);

// first_return_probabilities restricted to d > k and renormalized.
DistanceDistribution reference_distribution(const PatternAutomaton& automaton, const BaseFrequencies& freqs, int dmax);

// Peak dissimilarity between the averaged observed pair and the averaged
// reference pair.
double rs_score(const DistanceDistribution& f_w, const DistanceDistribution& f_wbar, const DistanceDistribution& g_w,
                const DistanceDistribution& g_wbar, const PeakConfig& cfg);

}  // namespace genodist
