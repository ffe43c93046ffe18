#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "genodist/errors.hpp"
#include "genodist/pipeline.hpp"
#include "oracles.hpp"

using namespace genodist;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("genodist_pipe_" + std::to_string(::getpid()) + "_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

fs::path write_fixture(const fs::path& dir, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string a = oracle::random_acgt(rng, 60000);
  std::string b = oracle::random_acgt(rng, 40000);
  for (int i = 0; i < 20; ++i) a[rng() % a.size()] = 'N';
  for (std::size_t i = 1000; i + 3 < 5000; i += 23) b.replace(i, 3, "ACG");
  const auto path = dir / "fixture.fa";
  std::ofstream out(path);
  out << ">chrA\n";
  for (std::size_t i = 0; i < a.size(); i += 60) out << a.substr(i, 60) << '\n';
  out << ">chrB\n";
  for (std::size_t i = 0; i < b.size(); i += 70) out << b.substr(i, 70) << '\n';
  return path;
}

}  // namespace

TEST_CASE("scan_files matches the oracle per chromosome") {
  TempDir dir("scan");
  const auto fasta = write_fixture(dir.path, 81);
  const auto records = parse_fasta(slurp(fasta));
  for (unsigned threads : {1u, 3u}) {
    CountStore store(4, 80);
    const auto summary = scan_files({fasta}, store, CasePolicy::fold, threads);
    CHECK(summary.chromosomes == 2);
    CHECK(store.inputs() == std::vector<std::string>{"fixture.fa"});

    std::map<std::string, oracle::WordTally> expected;
    for (const auto& r : records) {
      for (auto& [w, t] : oracle::scan(r.symbols, 4, 80)) {
        auto& e = expected[w];
        e.occurrences += t.occurrences;
        e.overflow += t.overflow;
        for (auto [d, c] : t.counts) e.counts[d] += c;
      }
    }
    std::uint64_t words = 0;
    for (std::uint32_t code = 0; code < store.word_count(); ++code) {
      const auto& e = expected[decode_word({4, code})];
      const auto h = store.histogram({4, code});
      words += h.occurrences;
      REQUIRE(h.occurrences == e.occurrences);
      REQUIRE(h.overflow == e.overflow);
      for (int d = 1; d <= 80; ++d) REQUIRE(h.at(d) == (e.counts.count(d) ? e.counts.at(d) : 0));
    }
    CHECK(summary.words == words);
  }
}

TEST_CASE("threaded scan equals serial scan") {
  TempDir dir("threads");
  const auto fasta = write_fixture(dir.path, 83);
  CountStore serial(6, 200);
  scan_files({fasta}, serial, CasePolicy::fold, 1);
  for (unsigned t : {2u, 4u, 7u}) {
    CountStore parallel(6, 200);
    scan_files({fasta}, parallel, CasePolicy::fold, t);
    CHECK(parallel == serial);
  }
}

TEST_CASE("reports are deterministic and consistent") {
  TempDir dir("report");
  const auto fasta = write_fixture(dir.path, 89);
  CountStore store(3, 120);
  scan_files({fasta}, store, CasePolicy::fold, 2);

  RunConfig cfg;
  cfg.dmax = 120;
  cfg.dump_words = {"ACG"};
  cfg.out_dir = dir.path / "one";
  const auto first = write_reports(store, cfg);
  cfg.out_dir = dir.path / "two";
  cfg.threads = 4;
  const auto second = write_reports(store, cfg);
  REQUIRE(first.files.size() == second.files.size());
  for (std::size_t i = 0; i < first.files.size(); ++i) {
    CHECK(first.files[i].filename() == second.files[i].filename());
    CHECK(slurp(first.files[i]) == slurp(second.files[i]));
    const std::string text = slurp(first.files[i]);
    CHECK(text.rfind("# genodist " + std::string(tool_version()) + "\n# config\tk=3\tdmax=120", 0) == 0);
  }

  const auto pairs = data_lines(slurp(dir.path / "one" / "pairs.tsv"));
  CHECK(pairs.size() == 1 + 32);
  CHECK(pairs[0].rfind("word\tcomplement\tn_w", 0) == 0);
  CHECK(fs::exists(dir.path / "one" / "dist_ACG.tsv"));
  CHECK(fs::exists(dir.path / "one" / "dist_CGT.tsv"));
  const auto dist = data_lines(slurp(dir.path / "one" / "dist_ACG.tsv"));
  CHECK(dist.front() == "d\tfrequency");
  CHECK(dist.size() == 1 + 117);
  for (const char* name : {"spearman.tsv", "overlap.tsv", "top_dp.tsv", "similar_unexpected.tsv", "classes.tsv",
                           "scatter_apr_dp.tsv", "topset_stats.tsv"}) {
    CHECK(fs::exists(dir.path / "one" / name));
  }
  CHECK(!fs::exists(dir.path / "one" / "pairs.tsv.tmp"));
}

TEST_CASE("report rejects mismatched configuration") {
  TempDir dir("mismatch");
  const CountStore store(3, 100);
  RunConfig cfg;
  cfg.out_dir = dir.path;
  CHECK_THROWS_AS(write_reports(store, cfg), StoreError);
  cfg.dmax = 100;
  cfg.k = 4;
  CHECK_THROWS_AS(write_reports(store, cfg), StoreError);
}

TEST_CASE("run config validation and metadata") {
  RunConfig cfg;
  cfg.k = 7;
  CHECK_NOTHROW(cfg.validate());
  cfg.k = 9;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.k = 7;
  cfg.peaks.peaks = 500;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.peaks = PeakConfig{};
  cfg.select_pct = 100;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.select_pct = 99;
  cfg.class_extreme_pct = 50;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.class_extreme_pct = 99;
  cfg.dump_words = {"ACGT"};
  CHECK_THROWS_AS(cfg.validate(), EncodingError);
  cfg.dump_words.clear();

  cfg.inputs = {"x.fa"};
  const std::string meta = cfg.metadata();
  CHECK(meta.find("k=7\tdmax=1000\th=5\tn_peaks=3\teps=1e-10\tmin_freq=100\tlowercase=fold\tbase_freq=store") !=
        std::string::npos);
  CHECK(meta.find("# inputs\tx.fa\n") != std::string::npos);
  cfg.threads = 8;
  cfg.out_dir = "/elsewhere";
  CHECK(cfg.metadata() == meta);
}

TEST_CASE("parse_base_frequencies") {
  CHECK(!parse_base_frequencies(""));
  const auto f = parse_base_frequencies("0.3,0.2,0.2,0.3");
  REQUIRE(f);
  CHECK(f->p(0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(std::abs(f->p.sum() - 1) <= 1e-15);
  CHECK_THROWS_AS(parse_base_frequencies("0.3,0.2,0.2"), ConfigError);
  CHECK_THROWS_AS(parse_base_frequencies("0.3,0.2,0.2,0.3,0"), ConfigError);
  CHECK_THROWS_AS(parse_base_frequencies("0.5,0.5,0.5,0.5"), ConfigError);
  CHECK_THROWS_AS(parse_base_frequencies("a,b,c,d"), ConfigError);
  CHECK_THROWS_AS(parse_base_frequencies("1.2,-0.2,0,0"), ConfigError);
}

TEST_CASE("format_number") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1e-10) == "1e-10");
  CHECK(format_number(std::nan("")) == "NA");
  CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("locate_favored") {
  std::istringstream in(">c1\nCGAACGAACGAA\n>c2\nTTTT\n>c3\nCGNNCGAACG\n");
  FastaReader reader(in);
  const auto sites = locate_favored(reader, encode_word("CG"), 4, 100);
  REQUIRE(sites.hits.size() == 3);
  CHECK(sites.hits[0] == FavoredHit{"c1", 0});
  CHECK(sites.hits[1] == FavoredHit{"c1", 4});
  CHECK(sites.hits[2] == FavoredHit{"c3", 4});
  REQUIRE(sites.per_chromosome.size() == 3);
  CHECK(sites.per_chromosome[0].second == 2);
  CHECK(sites.per_chromosome[1].second == 0);
  CHECK(format_bed(sites) == "c1\t0\t6\tCG|4\nc1\t4\t10\tCG|4\nc3\t4\t10\tCG|4\n");

  std::istringstream absent(">c1\nAAAAAAA\n");
  FastaReader r2(absent);
  CHECK(locate_favored(r2, encode_word("CG"), 4, 100).hits.empty());

  std::istringstream bad(">c1\nCGCG\n");
  FastaReader r3(bad);
  CHECK_THROWS_AS((locate_favored(r3, encode_word("CG"), 2, 100)), ConfigError);
  CHECK_THROWS_AS((locate_favored(r3, encode_word("CG"), 101, 100)), ConfigError);
}

TEST_CASE("locate agrees with the scanned histogram") {
  std::mt19937_64 rng(97);
  std::string text = oracle::random_acgt(rng, 20000);
  for (int i = 0; i < 15; ++i) text[rng() % text.size()] = 'N';
  std::istringstream in(">s\n" + text + "\n");
  FastaReader reader(in);
  const auto sites = locate_favored(reader, encode_word("ACG"), 9, 100);
  const auto expected = oracle::scan(text, 3, 100)["ACG"].counts[9];
  CHECK(sites.hits.size() == expected);
  for (const auto& hit : sites.hits) {
    CHECK(text.compare(hit.position, 3, "ACG") == 0);
    CHECK(text.compare(hit.position + 9, 3, "ACG") == 0);
  }
}
