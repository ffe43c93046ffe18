// genodist: inter-word distance distributions of reverse-complementary
// genomic words.
//
//   genodist scan      FASTA... --k K        count-store file
//   genodist report    STORE                 analysis TSVs
//   genodist reference --word W              i.i.d. reference distribution
//   genodist locate    FASTA... --word W --d-star D   BED of favored distances
//   genodist dump      STORE --word W        raw histogram of a word
//
// Exit codes: 0 success, 2 input error, 3 config error, 4 store error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "genodist/errors.hpp"
#include "genodist/pipeline.hpp"

namespace fs = std::filesystem;
using namespace genodist;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kInputError = 2, kConfigError = 3, kStoreError = 4 };

struct Options {
  RunConfig cfg;
  std::vector<std::string> fasta;
  std::string store_path;
  std::string base_freq_text;
  std::string word;
  std::string output_file;
  int d_star = 0;
  bool lowercase_as_mask = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--dmax", o.cfg.dmax, "Maximal distance")->capture_default_str();
  cmd->add_option("--threads", o.cfg.threads, "Worker threads (1 = fully serial)")->capture_default_str();
}

void add_measure_options(CLI::App* cmd, Options& o) {
  // --h is the peak bandwidth, so help is long-form only here.
  cmd->set_help_flag("--help", "Print this help message and exit");
  cmd->add_option("--h", o.cfg.peaks.bandwidth, "Peak window bandwidth")->capture_default_str();
  cmd->add_option("--n-peaks", o.cfg.peaks.peaks, "Number of strongest peaks compared")->capture_default_str();
  cmd->add_option("--eps", o.cfg.eps, "Zero replacement in the Jeffreys divergence")->capture_default_str();
  cmd->add_option("--min-freq", o.cfg.min_freq, "Minimum count of each pair member to be ranked")
      ->capture_default_str();
  cmd->add_option("--base-freq", o.base_freq_text, "Reference base frequencies A,C,G,T (default: from the store)");
}

int run_scan(Options& o) {
  o.cfg.case_policy = o.lowercase_as_mask ? CasePolicy::mask : CasePolicy::fold;
  o.cfg.validate();
  if (o.cfg.k == 0) throw ConfigError("--k is required");
  fs::path store_path = o.store_path.empty() ? o.cfg.out_dir / ("store_k" + std::to_string(o.cfg.k) + ".tsv")
                                             : fs::path(o.store_path);
  std::vector<fs::path> inputs(o.fasta.begin(), o.fasta.end());
  for (const auto& p : inputs) {
    if (!fs::exists(p)) throw InputError("no such file: " + p.string());
  }

  CountStore store(o.cfg.k, o.cfg.dmax);
  const ScanSummary summary = scan_files(inputs, store, o.cfg.case_policy, o.cfg.threads);
  if (summary.chromosomes == 0) std::cerr << "warning: no FASTA records found; writing an empty store\n";

  if (store_path.has_parent_path()) fs::create_directories(store_path.parent_path());
  auto tmp = store_path;
  tmp += ".tmp";
  try {
    save_store(store, tmp);
    fs::rename(tmp, store_path);
  } catch (...) {
    fs::remove(tmp);
    throw;
  }
  std::cout << "chromosomes\t" << summary.chromosomes << "\nsegments\t" << summary.segments << "\nsymbols\t"
            << summary.symbols << "\nsegment_symbols\t" << summary.segment_symbols << "\nwords\t" << summary.words
            << "\nstore\t" << store_path.string() << '\n';
  return kOk;
}

int run_report(Options& o) {
  o.cfg.base_freq = parse_base_frequencies(o.base_freq_text);
  o.cfg.validate();
  const CountStore store = load_store(o.store_path);
  const auto outputs = write_reports(store, o.cfg);
  std::size_t ranked = 0;
  for (const auto& r : outputs.records) ranked += r.ranked() ? 1 : 0;
  std::cout << "pairs\t" << outputs.records.size() << "\nranked\t" << ranked << '\n';
  for (const auto& f : outputs.files) std::cout << "wrote\t" << f.string() << '\n';
  return kOk;
}

int run_reference(Options& o) {
  o.cfg.base_freq = parse_base_frequencies(o.base_freq_text);
  BaseFrequencies freqs = o.cfg.base_freq.value_or(BaseFrequencies::uniform());
  if (!o.store_path.empty()) {
    if (o.cfg.base_freq) throw ConfigError("use either --store or --base-freq");
    freqs = analysis_base_frequencies(load_store(o.store_path), o.cfg.analysis());
  }
  const PatternAutomaton automaton(o.word);
  if (o.cfg.dmax <= automaton.k()) throw ConfigError("dmax must exceed the word length");
  const Eigen::VectorXd g = first_return_probabilities(automaton, freqs, o.cfg.dmax);
  const DistanceDistribution ref = reference_distribution(automaton, freqs, o.cfg.dmax);

  std::ostringstream out;
  out << "# genodist " << tool_version() << "\n# word=" << o.word << "\tdmax=" << o.cfg.dmax << "\tbase_freq=";
  for (int i = 0; i < 4; ++i) out << (i ? "," : "") << format_number(freqs.p(i));
  out << "\tpost_match_state=" << automaton.post_match_state() << "\n";
  out << "d\tfirst_return\tfrequency\n";
  for (int d = 1; d <= o.cfg.dmax; ++d) {
    out << d << '\t' << format_number(g(d - 1)) << '\t' << (d > automaton.k() ? format_number(ref.at(d)) : "NA")
        << '\n';
  }
  if (o.output_file.empty()) {
    std::cout << out.str();
  } else {
    write_file_atomic(o.output_file, out.str());
  }
  return kOk;
}

int run_locate(Options& o) {
  o.cfg.case_policy = o.lowercase_as_mask ? CasePolicy::mask : CasePolicy::fold;
  if (o.cfg.k != 0 && o.cfg.k != static_cast<int>(o.word.size())) {
    throw ConfigError("--word length does not match --k");
  }
  const WordId word = encode_word(o.word);
  if (o.d_star <= word.k || o.d_star > o.cfg.dmax) {
    throw ConfigError("--d-star must satisfy k < d_star <= dmax");
  }
  std::vector<fs::path> inputs(o.fasta.begin(), o.fasta.end());
  for (const auto& p : inputs) {
    if (!fs::exists(p)) throw InputError("no such file: " + p.string());
  }

  std::string bed;
  std::vector<std::pair<std::string, std::uint64_t>> per_chromosome;
  for (const auto& p : inputs) {
    FastaReader reader(p);
    const FavoredSites sites = locate_favored(reader, word, o.d_star, o.cfg.dmax, o.cfg.case_policy);
    bed += format_bed(sites);
    per_chromosome.insert(per_chromosome.end(), sites.per_chromosome.begin(), sites.per_chromosome.end());
  }
  const fs::path bed_path = o.output_file.empty()
                                ? o.cfg.out_dir / ("locate_" + o.word + "_" + std::to_string(o.d_star) + ".bed")
                                : fs::path(o.output_file);
  if (bed_path.has_parent_path()) fs::create_directories(bed_path.parent_path());
  write_file_atomic(bed_path, bed);
  std::cout << "chromosome\tcount\n";
  for (const auto& [chrom, count] : per_chromosome) std::cout << chrom << '\t' << count << '\n';
  std::cout << "# bed\t" << bed_path.string() << '\n';
  return kOk;
}

int run_dump(Options& o) {
  const CountStore store = load_store(o.store_path);
  WordId word;
  try {
    word = encode_word(o.word, store.k());
  } catch (const EncodingError& e) {
    throw StoreError(std::string("word does not fit the store: ") + e.what());
  }
  for (const WordId w : {word, reverse_complement(word)}) {
    const auto h = store.histogram(w);
    std::cout << "# word=" << decode_word(w) << "\toccurrences=" << h.occurrences << "\toverflow=" << h.overflow
              << '\n';
    std::cout << "d\tcount\n";
    for (int d = 1; d <= h.dmax(); ++d) {
      if (h.at(d) != 0) std::cout << d << '\t' << h.at(d) << '\n';
    }
    if (w == reverse_complement(w)) break;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  o.cfg.threads = std::max(1u, std::thread::hardware_concurrency());

  CLI::App app{"Inter-word distance distributions of reverse-complementary genomic words"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  auto* scan = app.add_subcommand("scan", "Count words and inter-word distances into a count store");
  scan->add_option("fasta", o.fasta, "FASTA inputs (plain or gzip)")->required();
  scan->add_option("--k", o.cfg.k, "Word length (1..8)")->required();
  scan->add_option("--out", o.cfg.out_dir, "Output directory")->capture_default_str();
  scan->add_option("--store", o.store_path, "Store file (default OUT/store_k<K>.tsv)");
  scan->add_flag("--lowercase-as-mask", o.lowercase_as_mask, "Treat lowercase symbols as separators");
  add_common(scan, o);

  auto* report = app.add_subcommand("report", "Compute all pair measures and write the report TSVs");
  report->add_option("store", o.store_path, "Count-store file")->required();
  report->add_option("--k", o.cfg.k, "Expected word length (checked against the store)");
  report->add_option("--out", o.cfg.out_dir, "Output directory")->capture_default_str();
  report->add_option("--dump-dist", o.cfg.dump_words, "Also write the distance distribution of W and its complement");
  report->add_option("--select-pct", o.cfg.select_pct, "Percentile for the top D_P selection")->capture_default_str();
  report->add_option("--similar-pct", o.cfg.similar_pct, "D_P percentile for similar-but-unexpected pairs")
      ->capture_default_str();
  report->add_option("--class-pct", o.cfg.class_cut_pct, "APR/D_P percentile splitting low from high")
      ->capture_default_str();
  report->add_option("--extreme-pct", o.cfg.class_extreme_pct, "Second percentile line flagged in classes.tsv")
      ->capture_default_str();
  report->add_option("--overlap-q", o.cfg.overlap_fractions, "Top-set fractions for overlap tables")
      ->delimiter(',')
      ->capture_default_str();
  add_measure_options(report, o);
  add_common(report, o);

  auto* reference = app.add_subcommand("reference", "First-return distance distribution under an i.i.d. model");
  reference->add_option("--word", o.word, "Word")->required();
  reference->add_option("--base-freq", o.base_freq_text, "Base frequencies A,C,G,T (default uniform)");
  reference->add_option("--store", o.store_path, "Estimate base frequencies from this store");
  reference->add_option("--out", o.output_file, "Output file (default stdout)");
  reference->add_option("--dmax", o.cfg.dmax, "Maximal distance")->capture_default_str();

  auto* locate = app.add_subcommand("locate", "Positions of a word whose next occurrence is d_star later");
  locate->add_option("fasta", o.fasta, "FASTA inputs (plain or gzip)")->required();
  locate->add_option("--word", o.word, "Word")->required();
  locate->add_option("--d-star", o.d_star, "Favored distance")->required();
  locate->add_option("--k", o.cfg.k, "Word length (checked against --word)");
  locate->add_option("--out", o.cfg.out_dir, "Output directory")->capture_default_str();
  locate->add_option("--bed", o.output_file, "BED file (default OUT/locate_<W>_<D>.bed)");
  locate->add_flag("--lowercase-as-mask", o.lowercase_as_mask, "Treat lowercase symbols as separators");
  add_common(locate, o);

  auto* dump = app.add_subcommand("dump", "Print the raw distance histogram of a word and its complement");
  dump->add_option("store", o.store_path, "Count-store file")->required();
  dump->add_option("--word", o.word, "Word")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*scan) return run_scan(o);
    if (*report) return run_report(o);
    if (*reference) return run_reference(o);
    if (*locate) return run_locate(o);
    if (*dump) return run_dump(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const StoreError& e) {
    std::cerr << "store error: " << e.what() << '\n';
    return kStoreError;
  } catch (const DomainMismatchError& e) {
    std::cerr << "store error: " << e.what() << '\n';
    return kStoreError;
  } catch (const InsufficientDataError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
