#include <unistd.h>
#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "genodist/errors.hpp"
#include "genodist/seq_ingest.hpp"
#include "oracles.hpp"

using namespace genodist;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("genodist_ingest_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("parse_fasta single record") {
  const auto records = parse_fasta(">chr1\nACGT");
  REQUIRE(records.size() == 1);
  CHECK(records[0].info.id == "chr1");
  CHECK(records[0].symbols == "ACGT");
  CHECK(records[0].info.length == 4);
}

TEST_CASE("parse_fasta concatenates lines and splits records") {
  const auto records = parse_fasta(">a\nAC\nGT\n>b\nTT");
  REQUIRE(records.size() == 2);
  CHECK(records[0].symbols == "ACGT");
  CHECK(records[1].info.id == "b");
  CHECK(records[1].symbols == "TT");
}

TEST_CASE("parse_fasta rejects content before the first header") {
  CHECK_THROWS_AS(parse_fasta("ACGT"), InputError);
  CHECK_THROWS_AS(parse_fasta(">\nACGT"), InputError);
}

TEST_CASE("parse_fasta edge cases") {
  CHECK(parse_fasta("").empty());
  CHECK(parse_fasta("\n\n").empty());

  const auto records = parse_fasta(">chr2 some description\r\nAC\r\n\r\nGT\r\n>empty\n>x\tmore\nA\n");
  REQUIRE(records.size() == 3);
  CHECK(records[0].info.id == "chr2");
  CHECK(records[0].symbols == "ACGT");
  CHECK(records[1].info.id == "empty");
  CHECK(records[1].symbols.empty());
  CHECK(records[2].info.id == "x");
}

TEST_CASE("segmentize examples") {
  FastaRecord r{{"c", 9}, "ACGTNNACG"};
  auto segs = segmentize(r);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0] == Segment{"c", 0, "ACGT"});
  CHECK(segs[1] == Segment{"c", 6, "ACG"});

  CHECK(segmentize(FastaRecord{{"c", 4}, "NNNN"}).empty());

  segs = segmentize(FastaRecord{{"c", 8}, "acgtNacg"});
  REQUIRE(segs.size() == 2);
  CHECK(segs[0] == Segment{"c", 0, "ACGT"});
  CHECK(segs[1] == Segment{"c", 5, "ACG"});
}

TEST_CASE("lowercase as mask") {
  const auto segs = segmentize(FastaRecord{{"c", 10}, "ACgtACGTaC"}, CasePolicy::mask);
  REQUIRE(segs.size() == 3);
  CHECK(segs[0] == Segment{"c", 0, "AC"});
  CHECK(segs[1] == Segment{"c", 4, "ACGT"});
  CHECK(segs[2] == Segment{"c", 9, "C"});
}

TEST_CASE("segmentize matches a character-by-character oracle") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "ACGTNacgtnRYX-*";
  for (int trial = 0; trial < 300; ++trial) {
    std::string text(rng() % 400, 'A');
    for (auto& c : text) c = alphabet[rng() % alphabet.size()];
    FastaRecord record{{"r", text.size()}, text};

    std::string folded = text;
    for (auto& c : folded) {
      if (c == 'a' || c == 'c' || c == 'g' || c == 't') c = static_cast<char>(c - 'a' + 'A');
    }
    const auto expected = oracle::runs(folded);
    const auto segs = segmentize(record);
    REQUIRE(segs.size() == expected.size());

    std::string classes(text.size(), '0');
    std::uint64_t last_end = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      CHECK(segs[i].offset == expected[i].first);
      CHECK(segs[i].symbols == expected[i].second);
      if (i > 0) CHECK(segs[i].offset > last_end);
      last_end = segs[i].offset + segs[i].symbols.size();
      CHECK(last_end <= text.size());
      for (std::size_t j = 0; j < segs[i].symbols.size(); ++j) classes[segs[i].offset + j] = '1';
    }
    // Reconstructing the symbol/separator classification from the segments.
    for (std::size_t j = 0; j < text.size(); ++j) CHECK((classes[j] == '1') == oracle::is_acgt(folded[j]));
  }
}

TEST_CASE("FastaReader streams plain and gzip files identically") {
  const std::string text = ">one\nACGTNNAC\nGT\n>two desc\nacgtacgt\n";
  const auto plain = temp_path("plain.fa");
  const auto packed = temp_path("packed.fa.gz");
  {
    std::ofstream(plain) << text;
    gzFile gz = gzopen(packed.c_str(), "wb");
    REQUIRE(gz != nullptr);
    gzwrite(gz, text.data(), static_cast<unsigned>(text.size()));
    gzclose(gz);
  }
  for (const auto& path : {plain, packed}) {
    FastaReader reader(path);
    FastaRecord r;
    std::vector<FastaRecord> got;
    while (reader.next(r)) got.push_back(r);
    REQUIRE(got.size() == 2);
    CHECK(got[0].info.id == "one");
    CHECK(got[0].symbols == "ACGTNNACGT");
    CHECK(got[1].info.id == "two");
    CHECK(got[1].symbols == "acgtacgt");
  }
  std::filesystem::remove(plain);
  std::filesystem::remove(packed);
}

TEST_CASE("FastaReader on a missing file") {
  CHECK_THROWS_AS(FastaReader(temp_path("does_not_exist.fa")), InputError);
}
