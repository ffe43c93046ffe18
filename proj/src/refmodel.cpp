#include "genodist/refmodel.hpp"

#include <numeric>
#include <vector>

#include "genodist/errors.hpp"
#include "genodist/kmer_scan.hpp"

namespace genodist {

PatternAutomaton::PatternAutomaton(std::string_view word) : word_(word) {
  const WordId id = encode_word(word);  // validates length and alphabet
  (void)id;
  const int k = this->k();

  // Failure function: fail[s] = longest proper border of word[0..s).
  std::vector<int> fail(static_cast<std::size_t>(k) + 1, 0);
  for (int s = 2; s <= k; ++s) {
    int b = fail[static_cast<std::size_t>(s - 1)];
    while (b > 0 && word_[static_cast<std::size_t>(b)] != word_[static_cast<std::size_t>(s - 1)]) {
      b = fail[static_cast<std::size_t>(b)];
    }
    if (word_[static_cast<std::size_t>(b)] == word_[static_cast<std::size_t>(s - 1)]) ++b;
    fail[static_cast<std::size_t>(s)] = b;
  }
  border_ = fail[static_cast<std::size_t>(k)];

  transitions_.resize(k + 1, 4);
  for (int s = 0; s <= k; ++s) {
    for (int c = 0; c < 4; ++c) {
      if (s < k && nucleotide_code(word_[static_cast<std::size_t>(s)]) == c) {
        transitions_(s, c) = s + 1;
      } else if (s == 0) {
        transitions_(s, c) = 0;
      } else {
        transitions_(s, c) = transitions_(fail[static_cast<std::size_t>(s)], c);
      }
    }
  }
}

PatternAutomaton build_automaton(std::string_view word) { return PatternAutomaton(word); }

BaseFrequencies BaseFrequencies::from_counts(const std::array<std::uint64_t, 4>& counts) {
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (total <= 0) throw InsufficientDataError("no nucleotides counted; cannot estimate base frequencies");
  BaseFrequencies freqs;
  for (int i = 0; i < 4; ++i) freqs.p(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]) / total;
  return freqs;
}

void BaseFrequencies::validate() const {
  if ((p.array() < 0).any() || !p.allFinite()) throw ConfigError("base frequencies must be non-negative");
  if (std::abs(p.sum() - 1.0) > 1e-12) throw ConfigError("base frequencies must sum to 1");
}

Eigen::VectorXd first_return_probabilities(const PatternAutomaton& automaton, const BaseFrequencies& freqs, int dmax) {
  freqs.validate();
  if (dmax < 1) throw ConfigError("dmax must be positive");
  const int k = automaton.k();

  // Substochastic transitions among the transient states 0..k-1 and the
  // one-step absorption probability into the accepting state.
  Eigen::MatrixXd transient = Eigen::MatrixXd::Zero(k, k);
  Eigen::RowVectorXd absorb = Eigen::RowVectorXd::Zero(k);
  for (int s = 0; s < k; ++s) {
    for (int c = 0; c < 4; ++c) {
      const int t = automaton.next(s, c);
      if (t == k) {
        absorb(s) += freqs.p(c);
      } else {
        transient(t, s) += freqs.p(c);
      }
    }
  }

  Eigen::VectorXd state = Eigen::VectorXd::Zero(k);
  state(automaton.post_match_state()) = 1.0;
  Eigen::VectorXd g(dmax);
  for (int d = 1; d <= dmax; ++d) {
    g(d - 1) = absorb * state;
    state = transient * state;
  }
  return g;
}

DistanceDistribution reference_distribution(const PatternAutomaton& automaton, const BaseFrequencies& freqs, int dmax) {
  const int k = automaton.k();
  if (dmax <= k) throw ConfigError("dmax must exceed the word length");
  const Eigen::VectorXd g = first_return_probabilities(automaton, freqs, dmax);
  DistanceDistribution ref;
  ref.k = k;
  ref.dmax = dmax;
  ref.freqs = g.tail(dmax - k);
  const double mass = ref.freqs.sum();
  if (!(mass > 0)) throw InsufficientDataError("reference model puts no mass on distances in (k, dmax]");
  ref.freqs /= mass;
  ref.support_total = mass;
  return ref;
}

double rs_score(const DistanceDistribution& f_w, const DistanceDistribution& f_wbar, const DistanceDistribution& g_w,
                const DistanceDistribution& g_wbar, const PeakConfig& cfg) {
  require_same_domain(f_w, f_wbar);
  require_same_domain(f_w, g_w);
  require_same_domain(f_w, g_wbar);
  return peak_dissimilarity((f_w.freqs + f_wbar.freqs) / 2.0, (g_w.freqs + g_wbar.freqs) / 2.0, cfg);
}

}  // namespace genodist
