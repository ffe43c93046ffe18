#include "genodist/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "genodist/errors.hpp"
#include "parallel.hpp"

namespace genodist {

std::string_view tool_version() { return GENODIST_VERSION; }

std::string format_number(double value) {
  if (std::isnan(value)) return "NA";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void RunConfig::validate() const {
  if (k != 0) validate_scan_config(k, dmax);
  if (dmax < 2) throw ConfigError("dmax must be at least 2");
  if (peaks.bandwidth < 2) throw ConfigError("peak bandwidth h must be at least 2");
  if (peaks.peaks < 1 || peaks.peaks > 10) throw ConfigError("number of peaks must be in 1..10");
  if (k != 0) peaks.validate(dmax - k);
  if (!(eps > 0)) throw ConfigError("eps must be positive");
  for (double q : overlap_fractions) {
    if (!(q > 0 && q < 1)) throw ConfigError("overlap fractions must be in (0, 1)");
  }
  for (double pct : {select_pct, similar_pct, class_cut_pct, class_extreme_pct}) {
    if (!(pct > 0 && pct < 100)) throw ConfigError("percentiles must be in (0, 100)");
  }
  if (class_extreme_pct < class_cut_pct) throw ConfigError("extreme percentile must not be below the class cut");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (base_freq) base_freq->validate();
  for (const auto& w : dump_words) {
    if (k != 0) encode_word(w, k);
  }
}

AnalysisConfig RunConfig::analysis() const {
  AnalysisConfig a;
  a.peaks = peaks;
  a.eps = eps;
  a.min_freq = min_freq;
  a.base_freq = base_freq;
  a.threads = threads;
  return a;
}

std::string RunConfig::metadata() const {
  std::ostringstream out;
  out << "# genodist " << tool_version() << '\n';
  out << "# config\tk=" << k << "\tdmax=" << dmax << "\th=" << peaks.bandwidth << "\tn_peaks=" << peaks.peaks
      << "\teps=" << format_number(eps) << "\tmin_freq=" << min_freq << "\tlowercase="
      << (case_policy == CasePolicy::fold ? "fold" : "mask");
  out << "\tbase_freq=";
  if (base_freq) {
    for (int i = 0; i < 4; ++i) out << (i ? "," : "") << format_number(base_freq->p(i));
  } else {
    out << "store";
  }
  out << "\toverlap_q=";
  for (std::size_t i = 0; i < overlap_fractions.size(); ++i) out << (i ? "," : "") << format_number(overlap_fractions[i]);
  out << "\tselect_pct=" << format_number(select_pct) << "\tsimilar_pct=" << format_number(similar_pct)
      << "\tclass_pct=" << format_number(class_cut_pct) << "," << format_number(class_extreme_pct) << '\n';
  out << "# inputs";
  for (const auto& in : inputs) out << '\t' << in;
  out << '\n';
  return out.str();
}

std::optional<BaseFrequencies> parse_base_frequencies(std::string_view text) {
  if (text.empty()) return std::nullopt;
  BaseFrequencies f;
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const auto comma = text.find(',', start);
    if ((i < 3) != (comma != std::string_view::npos)) throw ConfigError("--base-freq expects four values A,C,G,T");
    const std::string field(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    std::size_t used = 0;
    try {
      f.p(i) = std::stod(field, &used);
    } catch (const std::exception&) {
      throw ConfigError("--base-freq: not a number: '" + field + "'");
    }
    if (used != field.size()) throw ConfigError("--base-freq: not a number: '" + field + "'");
    start = comma + 1;
  }
  // Accept values that sum to 1 up to the printed precision, then renormalize.
  const double total = f.p.sum();
  if ((f.p.array() < 0).any() || std::abs(total - 1.0) > 1e-6) {
    throw ConfigError("--base-freq values must be non-negative and sum to 1");
  }
  f.p /= total;
  f.validate();
  return f;
}

ScanSummary scan_reader(FastaReader& reader, CountStore& store, CasePolicy policy, unsigned threads) {
  threads = std::max(1u, threads);
  ScanSummary summary;
  std::vector<CountStore> extra;  // private stores for workers 1..T-1
  std::vector<SegmentScanner> scanners;
  scanners.emplace_back(store);
  if (threads > 1) {
    extra.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) extra.emplace_back(store.k(), store.dmax());
    for (auto& s : extra) scanners.emplace_back(s);
  }

  FastaRecord record;
  while (reader.next(record)) {
    ++summary.chromosomes;
    summary.symbols += record.symbols.size();
    normalize_symbols(record.symbols, policy);
    const auto segments = segment_views(record.symbols);
    summary.segments += segments.size();
    for (const auto& s : segments) summary.segment_symbols += s.symbols.size();

    // Contiguous slices of roughly equal symbol mass, one per worker.
    std::vector<std::size_t> bounds(threads + 1, segments.size());
    bounds[0] = 0;
    {
      std::uint64_t total = 0;
      for (const auto& s : segments) total += s.symbols.size();
      std::uint64_t acc = 0;
      unsigned t = 1;
      for (std::size_t i = 0; i < segments.size() && t < threads; ++i) {
        acc += segments[i].symbols.size();
        while (t < threads && acc * threads >= total * t) bounds[t++] = i + 1;
      }
    }
    detail::parallel_for(threads, threads, [&](std::size_t t) {
      for (std::size_t i = bounds[t]; i < bounds[t + 1]; ++i) scanners[t].scan(segments[i].symbols);
    });
  }
  for (const auto& s : extra) store.merge(s);
  return summary;
}

ScanSummary scan_files(const std::vector<std::filesystem::path>& inputs, CountStore& store, CasePolicy policy,
                       unsigned threads) {
  ScanSummary total;
  for (const auto& path : inputs) {
    FastaReader reader(path);
    const ScanSummary s = scan_reader(reader, store, policy, threads);
    total.chromosomes += s.chromosomes;
    total.segments += s.segments;
    total.symbols += s.symbols;
    total.segment_symbols += s.segment_symbols;
    store.add_input(path.filename().string());
  }
  for (std::uint32_t code = 0; code < store.word_count(); ++code) total.words += store.occurrences(code);
  return total;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) {
      std::filesystem::remove(tmp);
      throw Error("write failure on " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string format_bed(const FavoredSites& sites) {
  const std::string name = decode_word(sites.word) + "|" + std::to_string(sites.d_star);
  const std::uint64_t span = static_cast<std::uint64_t>(sites.d_star) + static_cast<std::uint64_t>(sites.word.k);
  std::string out;
  for (const auto& hit : sites.hits) {
    out += hit.chromosome;
    out += '\t';
    out += std::to_string(hit.position);
    out += '\t';
    out += std::to_string(hit.position + span);
    out += '\t';
    out += name;
    out += '\n';
  }
  return out;
}

}  // namespace genodist
