#ifndef SPLITLP_GF2_HPP
#define SPLITLP_GF2_HPP

// Linear algebra over the two-element field: words, matrices, codes,
// partitions and multiweights.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splitlp/error.hpp"

namespace splitlp {

/// Default limit on the dimension of codes whose words are enumerated.
inline constexpr int kDefaultEnumerationCap = 22;

class BitWord {
 public:
  BitWord() = default;
  explicit BitWord(std::size_t length) : length_(length), limbs_((length + 63) / 64, 0) {}

  /// Parses '0'/'1' characters; whitespace is ignored.
  static BitWord parse(std::string_view text) {
    std::size_t count = 0;
    for (char ch : text) {
      if (ch == '0' || ch == '1') {
        ++count;
      } else if (ch != ' ' && ch != '\t' && ch != '\n' && ch != '\r') {
        throw ParseError(std::string("invalid character in bit word: '") + ch + "'");
      }
    }
    BitWord w(count);
    std::size_t i = 0;
    for (char ch : text) {
      if (ch == '0' || ch == '1') w.set(i++, ch == '1');
    }
    return w;
  }

  static BitWord ones(std::size_t length) {
    BitWord w(length);
    for (std::size_t i = 0; i < length; ++i) w.set(i, true);
    return w;
  }

  std::size_t size() const noexcept { return length_; }

  bool get(std::size_t i) const noexcept { return (limbs_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      limbs_[i >> 6] |= mask;
    } else {
      limbs_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) noexcept { limbs_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  int weight() const noexcept {
    int total = 0;
    for (auto limb : limbs_) total += std::popcount(limb);
    return total;
  }

  bool is_zero() const noexcept {
    return std::all_of(limbs_.begin(), limbs_.end(), [](std::uint64_t l) { return l == 0; });
  }

  /// Weight of the word restricted to coordinates [begin, end).
  int weight_in(std::size_t begin, std::size_t end) const noexcept {
    int total = 0;
    for (std::size_t i = begin; i < end; ++i) total += get(i) ? 1 : 0;
    return total;
  }

  /// Parity of the support intersection.
  bool dot(const BitWord& other) const {
    require_same_length(other);
    int total = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) total += std::popcount(limbs_[i] & other.limbs_[i]);
    return (total & 1) != 0;
  }

  BitWord& operator^=(const BitWord& other) {
    require_same_length(other);
    for (std::size_t i = 0; i < limbs_.size(); ++i) limbs_[i] ^= other.limbs_[i];
    return *this;
  }

  friend BitWord operator^(BitWord a, const BitWord& b) { return a ^= b; }

  /// Index of the first set bit, or size() when zero.
  std::size_t leading_index() const noexcept {
    for (std::size_t li = 0; li < limbs_.size(); ++li) {
      if (limbs_[li] != 0) return li * 64 + static_cast<std::size_t>(std::countr_zero(limbs_[li]));
    }
    return length_;
  }

  /// Concatenation.
  BitWord append(const BitWord& tail) const {
    BitWord out(length_ + tail.length_);
    for (std::size_t i = 0; i < length_; ++i) out.set(i, get(i));
    for (std::size_t i = 0; i < tail.length_; ++i) out.set(length_ + i, tail.get(i));
    return out;
  }

  std::string str() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) s[i] = get(i) ? '1' : '0';
    return s;
  }

  std::string str(const std::vector<int>& block_sizes) const {
    std::string s;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
      if (b > 0) s.push_back(' ');
      for (int i = 0; i < block_sizes[b] && pos < length_; ++i, ++pos) s.push_back(get(pos) ? '1' : '0');
    }
    return s;
  }

  const std::vector<std::uint64_t>& limbs() const noexcept { return limbs_; }

  friend bool operator==(const BitWord&, const BitWord&) = default;
  friend auto operator<=>(const BitWord& a, const BitWord& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    // Leftmost bit is most significant.
    for (std::size_t i = 0; i < a.length_; ++i) {
      if (a.get(i) != b.get(i)) return a.get(i) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
  }

 private:
  void require_same_length(const BitWord& other) const {
    if (other.length_ != length_) throw DimensionError("bit word length mismatch");
  }

  std::size_t length_ = 0;
  std::vector<std::uint64_t> limbs_;
};

struct BitWordHash {
  std::size_t operator()(const BitWord& w) const noexcept {
    std::size_t h = w.size();
    for (auto limb : w.limbs()) h = h * 0x9E3779B97F4A7C15ull ^ std::hash<std::uint64_t>{}(limb);
    return h;
  }
};

class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t cols) : cols_(cols) {}
  BitMatrix(std::size_t cols, std::vector<BitWord> rows) : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.size() != cols_) throw DimensionError("matrix rows must share one length");
    }
  }

  static BitMatrix parse_rows(std::size_t cols, const std::vector<std::string>& rows) {
    BitMatrix m(cols);
    for (const auto& r : rows) m.push_back(BitWord::parse(r));
    return m;
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      BitWord w(n);
      w.set(i, true);
      m.push_back(std::move(w));
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_.empty(); }
  const BitWord& row(std::size_t i) const { return rows_[i]; }
  const std::vector<BitWord>& row_list() const noexcept { return rows_; }

  void push_back(BitWord w) {
    if (w.size() != cols_) throw DimensionError("row length does not match matrix width");
    rows_.push_back(std::move(w));
  }

  /// Reduced row echelon form with pivot columns leftmost; zero rows dropped.
  BitMatrix reduce() const {
    std::vector<BitWord> work = rows_;
    std::vector<BitWord> out;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols_ && lead < work.size(); ++col) {
      std::size_t pivot = lead;
      while (pivot < work.size() && !work[pivot].get(col)) ++pivot;
      if (pivot == work.size()) continue;
      std::swap(work[lead], work[pivot]);
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (i != lead && work[i].get(col)) work[i] ^= work[lead];
      }
      ++lead;
    }
    work.resize(lead);
    return BitMatrix(cols_, std::move(work));
  }

  std::size_t rank() const { return reduce().rows(); }

  /// Pivot column of each row; meaningful on a reduced matrix.
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.leading_index());
    return out;
  }

  bool span_contains(const BitWord& w) const {
    if (w.size() != cols_) throw DimensionError("span_contains: length mismatch");
    const BitMatrix red = reduce();
    BitWord rest = w;
    for (const auto& r : red.rows_) {
      if (rest.get(r.leading_index())) rest ^= r;
    }
    return rest.is_zero();
  }

  /// Vertical concatenation.
  BitMatrix stacked(const BitMatrix& below) const {
    if (below.cols_ != cols_) throw DimensionError("stacked: width mismatch");
    BitMatrix out = *this;
    for (const auto& r : below.rows_) out.rows_.push_back(r);
    return out;
  }

  /// Columns of `right` appended to every row.
  BitMatrix appended_columns(const BitMatrix& right) const {
    if (right.rows() != rows()) throw DimensionError("appended_columns: row count mismatch");
    BitMatrix out(cols_ + right.cols_);
    for (std::size_t i = 0; i < rows(); ++i) out.push_back(rows_[i].append(right.rows_[i]));
    return out;
  }

  BitWord column(std::size_t c) const {
    BitWord w(rows());
    for (std::size_t i = 0; i < rows(); ++i) w.set(i, rows_[i].get(c));
    return w;
  }

  BitMatrix transposed() const {
    BitMatrix out(rows());
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
  }

  /// Row vector times matrix: sum of the rows selected by `coeffs`.
  BitWord combine(const BitWord& coeffs) const {
    if (coeffs.size() != rows()) throw DimensionError("combine: coefficient length mismatch");
    BitWord out(cols_);
    for (std::size_t i = 0; i < rows(); ++i) {
      if (coeffs.get(i)) out ^= rows_[i];
    }
    return out;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitWord> rows_;
};

inline std::size_t rank(const BitMatrix& m) { return m.rank(); }
inline bool span_contains(const BitMatrix& m, const BitWord& w) { return m.span_contains(w); }

/// Dimension of the intersection of two row spaces of equal width.
inline std::size_t intersection_dimension(const BitMatrix& a, const BitMatrix& b) {
  return a.rank() + b.rank() - a.stacked(b).rank();
}

/// Kernel basis: all x with M x^T = 0, in reduced form.
inline BitMatrix null_space(const BitMatrix& m) {
  const BitMatrix red = m.reduce();
  const std::size_t n = m.cols();
  std::vector<char> is_pivot(n, 0);
  const auto piv = red.pivots();
  for (auto p : piv) is_pivot[p] = 1;
  BitMatrix out(n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    BitWord v(n);
    v.set(free, true);
    for (std::size_t i = 0; i < red.rows(); ++i) {
      if (red.row(i).get(free)) v.set(piv[i], true);
    }
    out.push_back(std::move(v));
  }
  return out.reduce();
}

class Code {
 public:
  Code() = default;

  /// Code spanned by the given rows; dependent rows are discarded.
  explicit Code(const BitMatrix& rows) : gen_(rows.reduce()) {}

  static Code from_rows(std::size_t n, const std::vector<std::string>& rows) {
    return Code(BitMatrix::parse_rows(n, rows));
  }

  int length() const noexcept { return static_cast<int>(gen_.cols()); }
  int dimension() const noexcept { return static_cast<int>(gen_.rows()); }
  const BitMatrix& generators() const noexcept { return gen_; }

  bool contains(const BitWord& w) const { return gen_.span_contains(w); }

  /// Basis of the dual code, (n-k) x n, reduced.
  BitMatrix dual_basis() const { return null_space(gen_); }

  Code dual() const { return Code(dual_basis()); }

  /// Appends one zero coordinate to every word.
  Code padded_with_zero() const {
    BitMatrix m(gen_.cols() + 1);
    for (const auto& r : gen_.row_list()) m.push_back(r.append(BitWord(1)));
    return Code(m);
  }

  /// Calls `visit` on every codeword in Gray-code order, zero word first.
  template <class Visitor>
  void for_each_codeword(Visitor&& visit, int cap = kDefaultEnumerationCap) const {
    const int k = dimension();
    if (k > cap) throw CapacityError("codeword enumeration: dimension " + std::to_string(k) + " exceeds cap " + std::to_string(cap));
    BitWord w(gen_.cols());
    visit(static_cast<const BitWord&>(w));
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i < total; ++i) {
      w ^= gen_.row(static_cast<std::size_t>(std::countr_zero(i)));
      visit(static_cast<const BitWord&>(w));
    }
  }

  std::vector<BitWord> codewords(int cap = kDefaultEnumerationCap) const {
    std::vector<BitWord> out;
    out.reserve(std::size_t{1} << std::min(dimension(), cap));
    for_each_codeword([&](const BitWord& w) { out.push_back(w); }, cap);
    return out;
  }

  /// Count of codewords of each weight 0..n.
  std::vector<std::uint64_t> weight_distribution(int cap = kDefaultEnumerationCap) const {
    std::vector<std::uint64_t> dist(gen_.cols() + 1, 0);
    for_each_codeword([&](const BitWord& w) { ++dist[static_cast<std::size_t>(w.weight())]; }, cap);
    return dist;
  }

  int min_weight(int cap = kDefaultEnumerationCap) const {
    if (dimension() == 0) throw DomainError("min_weight: code has no nonzero words");
    int best = length();
    bool first = true;
    for_each_codeword(
        [&](const BitWord& w) {
          if (first) {
            first = false;
            return;
          }
          best = std::min(best, w.weight());
        },
        cap);
    return best;
  }

  bool is_even(int cap = kDefaultEnumerationCap) const {
    (void)cap;
    // A code is even iff every generator has even weight.
    return std::all_of(gen_.row_list().begin(), gen_.row_list().end(), [](const BitWord& r) { return r.weight() % 2 == 0; });
  }

  friend bool operator==(const Code&, const Code&) = default;

 private:
  BitMatrix gen_;
};

inline BitMatrix dual_basis(const Code& c) { return c.dual_basis(); }
inline std::vector<BitWord> enumerate_codewords(const Code& c, int cap = kDefaultEnumerationCap) { return c.codewords(cap); }
inline int min_weight(const Code& c, int cap = kDefaultEnumerationCap) { return c.min_weight(cap); }

/// Ordered block sizes of a coordinate partition; blocks are consecutive ranges.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw DomainError("partition needs at least one block");
    for (int p : parts_) {
      if (p < 1) throw DomainError("partition blocks must be positive");
    }
    offsets_.resize(parts_.size() + 1, 0);
    for (std::size_t i = 0; i < parts_.size(); ++i) offsets_[i + 1] = offsets_[i] + parts_[i];
  }

  static Partition trivial(int n) { return Partition(std::vector<int>{n}); }

  std::size_t blocks() const noexcept { return parts_.size(); }
  int size(std::size_t block) const { return parts_[block]; }
  int begin(std::size_t block) const { return offsets_[block]; }
  int end(std::size_t block) const { return offsets_[block + 1]; }
  int total() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }
  const std::vector<int>& parts() const noexcept { return parts_; }

  /// Block index containing coordinate `pos`.
  std::size_t block_of(int pos) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), pos);
    return static_cast<std::size_t>(it - offsets_.begin()) - 1;
  }

  /// Number of multiweights, prod (p_i + 1).
  std::size_t multiweight_count() const {
    std::size_t c = 1;
    for (int p : parts_) c *= static_cast<std::size_t>(p + 1);
    return c;
  }

  /// Word that is all ones on the blocks flagged in `pattern` (one flag per block).
  BitWord expand(const std::vector<bool>& pattern) const {
    if (pattern.size() != parts_.size()) throw DimensionError("block pattern length does not match partition");
    BitWord w(static_cast<std::size_t>(total()));
    for (std::size_t b = 0; b < parts_.size(); ++b) {
      if (!pattern[b]) continue;
      for (int i = begin(b); i < end(b); ++i) w.set(static_cast<std::size_t>(i), true);
    }
    return w;
  }

  /// If this partition refines `coarse` by splitting blocks in order, returns
  /// for each of our blocks the coarse block containing it.
  std::optional<std::vector<std::size_t>> refinement_map(const Partition& coarse) const {
    if (coarse.total() != total()) return std::nullopt;
    std::vector<std::size_t> map;
    for (std::size_t b = 0; b < parts_.size(); ++b) {
      const std::size_t cb = coarse.block_of(begin(b));
      if (coarse.block_of(end(b) - 1) != cb) return std::nullopt;
      map.push_back(cb);
    }
    return map;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  std::vector<int> offsets_;
};

/// Per-block weights a_1..a_r.
struct Multiweight {
  std::vector<int> entries;

  int total() const noexcept { return std::accumulate(entries.begin(), entries.end(), 0); }
  std::size_t size() const noexcept { return entries.size(); }
  int operator[](std::size_t i) const { return entries[i]; }

  bool is_zero() const noexcept {
    return std::all_of(entries.begin(), entries.end(), [](int a) { return a == 0; });
  }

  /// "x_10_0" style name.
  std::string name() const {
    std::string s = "x";
    for (int a : entries) s += "_" + std::to_string(a);
    return s;
  }

  friend bool operator==(const Multiweight&, const Multiweight&) = default;
  friend auto operator<=>(const Multiweight&, const Multiweight&) = default;
};

struct MultiweightHash {
  std::size_t operator()(const Multiweight& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int a : m.entries) h = (h ^ static_cast<std::size_t>(a)) * 1099511628211ull;
    return h;
  }
};

inline Multiweight multiweight(const BitWord& w, const Partition& p) {
  if (static_cast<int>(w.size()) != p.total()) throw DimensionError("multiweight: word length does not match partition");
  Multiweight m;
  m.entries.reserve(p.blocks());
  for (std::size_t b = 0; b < p.blocks(); ++b) {
    m.entries.push_back(w.weight_in(static_cast<std::size_t>(p.begin(b)), static_cast<std::size_t>(p.end(b))));
  }
  return m;
}

/// Mixed-radix indexing of all multiweights of a partition.
class MultiweightIndexer {
 public:
  MultiweightIndexer() = default;
  explicit MultiweightIndexer(const Partition& p) : parts_(p.parts()) {
    strides_.resize(parts_.size());
    std::size_t s = 1;
    for (std::size_t i = parts_.size(); i-- > 0;) {
      strides_[i] = s;
      s *= static_cast<std::size_t>(parts_[i] + 1);
    }
    count_ = s;
  }

  std::size_t count() const noexcept { return count_; }

  std::size_t index(const Multiweight& m) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) idx += static_cast<std::size_t>(m.entries[i]) * strides_[i];
    return idx;
  }

  Multiweight at(std::size_t idx) const {
    Multiweight m;
    m.entries.resize(parts_.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      m.entries[i] = static_cast<int>(idx / strides_[i]);
      idx %= strides_[i];
    }
    return m;
  }

 private:
  std::vector<int> parts_;
  std::vector<std::size_t> strides_;
  std::size_t count_ = 1;
};

}  // namespace splitlp

#endif  // SPLITLP_GF2_HPP
