#include <charconv>
#include <fstream>
#include <limits>
#include <string>
#include <string_view>

#include "genodist/errors.hpp"
#include "genodist/kmer_scan.hpp"

// Layout (LF line endings, TAB separated):
//
//   #genodist-store v1 k=<k> dmax=<Dmax>
//   #input<TAB><name>                     zero or more, provenance
//   #bases<TAB><A><TAB><C><TAB><G><TAB><T>
//   <word><TAB><occurrences><TAB><overflow>   summary row, first row of each word
//   <word><TAB><d><TAB><count>                nonzero distance rows, ascending d
//   #end<TAB><number of data rows>
//
// Words with no occurrences are omitted. The first row of a word block is
// always its summary row.

namespace genodist {

namespace {

constexpr std::string_view kMagic = "#genodist-store";
constexpr int kFormatVersion = 1;

template <typename Int>
Int parse_int(std::string_view field, std::size_t line_no) {
  Int value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw StoreError("line " + std::to_string(line_no) + ": expected an integer, got '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string_view header_value(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key) throw StoreError("malformed store header");
  return token.substr(key.size());
}

class RowWriter {
 public:
  explicit RowWriter(std::ofstream& out) : out_(out) {}

  void row(std::string_view word, std::uint64_t a, std::uint64_t b) {
    out_.write(word.data(), static_cast<std::streamsize>(word.size()));
    put('\t');
    number(a);
    put('\t');
    number(b);
    put('\n');
    ++rows_;
  }
  std::uint64_t rows() const { return rows_; }

 private:
  void put(char c) { out_.put(c); }
  void number(std::uint64_t v) {
    char buf[24];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out_.write(buf, ptr - buf);
  }

  std::ofstream& out_;
  std::uint64_t rows_ = 0;
};

}  // namespace

void save_store(const CountStore& store, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StoreError("cannot write " + path.string());
  out << kMagic << " v" << kFormatVersion << " k=" << store.k() << " dmax=" << store.dmax() << '\n';
  for (const auto& input : store.inputs()) out << "#input\t" << input << '\n';
  const auto& bases = store.base_counts();
  out << "#bases\t" << bases[0] << '\t' << bases[1] << '\t' << bases[2] << '\t' << bases[3] << '\n';

  RowWriter writer(out);
  for (std::uint32_t code = 0; code < store.word_count(); ++code) {
    if (store.occurrences(code) == 0) continue;
    const std::string word = decode_word({store.k(), code});
    writer.row(word, store.occurrences(code), store.overflow(code));
    const auto row = store.counts(code);
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (row[d] != 0) writer.row(word, d + 1, row[d]);
    }
  }
  out << "#end\t" << writer.rows() << '\n';
  if (!out) throw StoreError("write failure on " + path.string());
}

CountStore load_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line) || line.substr(0, kMagic.size()) != kMagic) {
    throw StoreError(path.string() + ": not a genodist count store");
  }
  int k = 0;
  int dmax = 0;
  {
    const auto fields = [&] {
      std::vector<std::string_view> tokens;
      std::string_view rest(line);
      std::size_t start = 0;
      while (start < rest.size()) {
        const auto sp = rest.find(' ', start);
        tokens.push_back(rest.substr(start, sp == std::string_view::npos ? std::string_view::npos : sp - start));
        if (sp == std::string_view::npos) break;
        start = sp + 1;
      }
      return tokens;
    }();
    if (fields.size() != 4) throw StoreError("malformed store header");
    const auto version = parse_int<int>(header_value(fields[1], "v"), 1);
    if (version != kFormatVersion) {
      throw StoreError("unsupported store version v" + std::to_string(version) + " (expected v" +
                       std::to_string(kFormatVersion) + ")");
    }
    k = parse_int<int>(header_value(fields[2], "k="), 1);
    dmax = parse_int<int>(header_value(fields[3], "dmax="), 1);
  }
  CountStore store = [&] {
    try {
      return CountStore(k, dmax);
    } catch (const ConfigError& e) {
      throw StoreError(std::string("store header: ") + e.what());
    }
  }();

  std::size_t line_no = 1;
  std::uint64_t data_rows = 0;
  bool ended = false;
  std::int64_t current = -1;  // code of the open word block
  while (std::getline(in, line)) {
    ++line_no;
    if (in.eof()) throw StoreError(path.string() + ": truncated (missing final newline)");
    if (ended) throw StoreError(path.string() + ": data after #end");
    const auto fields = split_tabs(line);
    if (!line.empty() && line.front() == '#') {
      if (fields[0] == "#input" && fields.size() == 2) {
        store.inputs_.emplace_back(fields[1]);
      } else if (fields[0] == "#bases" && fields.size() == 5) {
        for (std::size_t i = 0; i < 4; ++i) store.base_counts_[i] = parse_int<std::uint64_t>(fields[i + 1], line_no);
      } else if (fields[0] == "#end" && fields.size() == 2) {
        if (parse_int<std::uint64_t>(fields[1], line_no) != data_rows) {
          throw StoreError(path.string() + ": row count mismatch at #end (truncated or edited file)");
        }
        ended = true;
      } else {
        throw StoreError("line " + std::to_string(line_no) + ": unknown directive");
      }
      continue;
    }
    if (fields.size() != 3) throw StoreError("line " + std::to_string(line_no) + ": expected 3 fields");
    WordId word;
    try {
      word = encode_word(fields[0], k);
    } catch (const EncodingError& e) {
      throw StoreError("line " + std::to_string(line_no) + ": " + e.what());
    }
    const auto a = parse_int<std::uint64_t>(fields[1], line_no);
    const auto b = parse_int<std::uint64_t>(fields[2], line_no);
    ++data_rows;
    if (static_cast<std::int64_t>(word.code) != current) {
      if (static_cast<std::int64_t>(word.code) < current) {
        throw StoreError("line " + std::to_string(line_no) + ": words out of order");
      }
      current = word.code;
      store.occurrences_[word.code] = a;
      store.overflow_[word.code] = b;
      continue;
    }
    if (a < 1 || a > static_cast<std::uint64_t>(dmax)) {
      throw StoreError("line " + std::to_string(line_no) + ": distance out of range");
    }
    if (b > std::numeric_limits<std::uint32_t>::max()) {
      throw StoreError("line " + std::to_string(line_no) + ": count exceeds counter width");
    }
    store.counts(word.code)[a - 1] = static_cast<std::uint32_t>(b);
  }
  if (!ended) throw StoreError(path.string() + ": truncated (missing #end)");
  return store;
}

}  // namespace genodist
