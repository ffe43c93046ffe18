#include "genodist/seq_ingest.hpp"

#include <zlib.h>

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <sstream>

#include "genodist/errors.hpp"

namespace genodist {

namespace {

constexpr std::size_t kChunkSize = 1 << 16;

}  // namespace

// Buffered line splitter over a raw byte source. Strips a trailing '\r'.
class FastaReader::LineSource {
 public:
  virtual ~LineSource() = default;

  bool read_line(std::string& line) {
    line.clear();
    while (true) {
      if (pos_ == end_) {
        if (!refill()) return !line.empty();
      }
      const char* begin = buffer_.data() + pos_;
      const char* stop = buffer_.data() + end_;
      const char* nl = static_cast<const char*>(std::memchr(begin, '\n', stop - begin));
      if (nl == nullptr) {
        line.append(begin, stop);
        pos_ = end_;
        continue;
      }
      line.append(begin, nl);
      pos_ += static_cast<std::size_t>(nl - begin) + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
  }

 protected:
  virtual std::size_t read_raw(char* out, std::size_t capacity) = 0;

 private:
  bool refill() {
    end_ = read_raw(buffer_.data(), buffer_.size());
    pos_ = 0;
    return end_ > 0;
  }

  std::array<char, kChunkSize> buffer_{};
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
};

namespace {

class StreamSource final : public FastaReader::LineSource {
 public:
  explicit StreamSource(std::istream& in) : in_(&in) {}
  explicit StreamSource(std::unique_ptr<std::istream> owned)
      : owned_(std::move(owned)), in_(owned_.get()) {}

 protected:
  std::size_t read_raw(char* out, std::size_t capacity) override {
    in_->read(out, static_cast<std::streamsize>(capacity));
    if (in_->bad()) throw InputError("read failure");
    return static_cast<std::size_t>(in_->gcount());
  }

 private:
  std::unique_ptr<std::istream> owned_;
  std::istream* in_;
};

class GzipSource final : public FastaReader::LineSource {
 public:
  explicit GzipSource(const std::filesystem::path& path) : file_(gzopen(path.c_str(), "rb")) {
    if (file_ == nullptr) throw InputError("cannot open " + path.string());
    gzbuffer(file_, 1 << 17);
  }
  ~GzipSource() override { gzclose(file_); }
  GzipSource(const GzipSource&) = delete;
  GzipSource& operator=(const GzipSource&) = delete;

 protected:
  std::size_t read_raw(char* out, std::size_t capacity) override {
    const int got = gzread(file_, out, static_cast<unsigned>(capacity));
    if (got < 0) {
      int code = 0;
      const char* message = gzerror(file_, &code);
      throw InputError(std::string("gzip read failure: ") + message);
    }
    return static_cast<std::size_t>(got);
  }

 private:
  gzFile file_;
};

bool has_gzip_magic(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw InputError("cannot open " + path.string());
  unsigned char magic[2] = {0, 0};
  probe.read(reinterpret_cast<char*>(magic), 2);
  return probe.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
}

std::string header_id(std::string_view header_line) {
  std::string_view rest = header_line.substr(1);
  const auto end = rest.find_first_of(" \t\v\f");
  return std::string(rest.substr(0, end));
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\v\f") == std::string_view::npos;
}

}  // namespace

FastaReader::FastaReader(const std::filesystem::path& path) : name_(path.string()) {
  if (has_gzip_magic(path)) {
    source_ = std::make_unique<GzipSource>(path);
  } else {
    auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*file) throw InputError("cannot open " + path.string());
    source_ = std::make_unique<StreamSource>(std::move(file));
  }
}

FastaReader::FastaReader(std::istream& in)
    : source_(std::make_unique<StreamSource>(in)), name_("<stream>") {}

FastaReader::~FastaReader() = default;
FastaReader::FastaReader(FastaReader&&) noexcept = default;
FastaReader& FastaReader::operator=(FastaReader&&) noexcept = default;

bool FastaReader::next(FastaRecord& record) {
  record.info = {};
  record.symbols.clear();
  if (exhausted_) return false;

  std::string line;
  if (!have_pending_) {
    // Locate the first header; anything else before it is malformed.
    while (true) {
      if (!source_->read_line(line)) {
        exhausted_ = true;
        return false;
      }
      if (is_blank(line)) continue;
      if (line.front() != '>') throw InputError(name_ + ": sequence data before first FASTA header");
      pending_id_ = header_id(line);
      have_pending_ = true;
      break;
    }
  }
  if (pending_id_.empty()) throw InputError(name_ + ": FASTA header with empty id");

  record.info.id = std::move(pending_id_);
  have_pending_ = false;
  while (source_->read_line(line)) {
    if (!line.empty() && line.front() == '>') {
      pending_id_ = header_id(line);
      have_pending_ = true;
      break;
    }
    record.symbols += line;
  }
  if (!have_pending_) exhausted_ = true;
  record.info.length = record.symbols.size();
  return true;
}

std::vector<FastaRecord> parse_fasta(std::istream& in) {
  FastaReader reader(in);
  std::vector<FastaRecord> records;
  FastaRecord record;
  while (reader.next(record)) records.push_back(std::move(record));
  return records;
}

std::vector<FastaRecord> parse_fasta(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fasta(in);
}

void normalize_symbols(std::string& symbols, CasePolicy policy) {
  std::array<char, 256> table;
  table.fill('N');
  table['A'] = 'A';
  table['C'] = 'C';
  table['G'] = 'G';
  table['T'] = 'T';
  if (policy == CasePolicy::fold) {
    table['a'] = 'A';
    table['c'] = 'C';
    table['g'] = 'G';
    table['t'] = 'T';
  }
  for (char& c : symbols) c = table[static_cast<unsigned char>(c)];
}

std::vector<SegmentView> segment_views(std::string_view normalized) {
  std::vector<SegmentView> views;
  std::size_t i = 0;
  const std::size_t n = normalized.size();
  while (i < n) {
    while (i < n && normalized[i] == 'N') ++i;
    const std::size_t start = i;
    while (i < n && normalized[i] != 'N') ++i;
    if (i > start) views.push_back({start, normalized.substr(start, i - start)});
  }
  return views;
}

std::vector<Segment> segmentize(const FastaRecord& record, CasePolicy policy) {
  std::string normalized = record.symbols;
  normalize_symbols(normalized, policy);
  std::vector<Segment> segments;
  for (const SegmentView& view : segment_views(normalized)) {
    segments.push_back({record.info.id, view.offset, std::string(view.symbols)});
  }
  return segments;
}

}  // namespace genodist
