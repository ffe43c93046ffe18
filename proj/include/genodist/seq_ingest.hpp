#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace genodist {

struct ChromosomeRecord {
  std::string id;
  std::uint64_t length = 0;  // includes separators

  bool operator==(const ChromosomeRecord&) const = default;
};

struct FastaRecord {
  ChromosomeRecord info;
  std::string symbols;

  bool operator==(const FastaRecord&) const = default;
};

// A maximal run of A/C/G/T inside one chromosome.
struct Segment {
  std::string chromosome_id;
  std::uint64_t offset = 0;
  std::string symbols;

  bool operator==(const Segment&) const = default;
};

// Non-owning segment over a normalized symbol buffer.
struct SegmentView {
  std::uint64_t offset = 0;
  std::string_view symbols;
};

// How lowercase a/c/g/t is classified.
enum class CasePolicy {
  fold,  // uppercase and keep
  mask,  // treat as separator (soft-masked input)
};

// Streaming FASTA reader. One chromosome is materialized at a time.
// Files are sniffed for the gzip magic bytes and decompressed transparently.
class FastaReader {
 public:
  explicit FastaReader(const std::filesystem::path& path);
  explicit FastaReader(std::istream& in);
  ~FastaReader();
  FastaReader(FastaReader&&) noexcept;
  FastaReader& operator=(FastaReader&&) noexcept;

  // Reads the next record; returns false at end of input.
  // Throws InputError on content before the first header or an empty id.
  bool next(FastaRecord& record);

  const std::string& source_name() const { return name_; }

  class LineSource;

 private:
  std::unique_ptr<LineSource> source_;
  std::string name_;
  std::string pending_id_;
  bool have_pending_ = false;
  bool exhausted_ = false;
};

std::vector<FastaRecord> parse_fasta(std::istream& in);
std::vector<FastaRecord> parse_fasta(std::string_view text);

// Maps every byte to one of 'A','C','G','T' or 'N' (separator), in place.
void normalize_symbols(std::string& symbols, CasePolicy policy);

// Maximal ACGT runs of a buffer already passed through normalize_symbols.
std::vector<SegmentView> segment_views(std::string_view normalized);

std::vector<Segment> segmentize(const FastaRecord& record, CasePolicy policy = CasePolicy::fold);

}  // namespace genodist
