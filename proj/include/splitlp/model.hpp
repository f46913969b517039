#ifndef SPLITLP_MODEL_HPP
#define SPLITLP_MODEL_HPP

// Code types, side constraints and configurations: the objects a proof
// script talks about.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "splitlp/error.hpp"
#include "splitlp/gf2.hpp"

namespace splitlp {

/// Which count a side constraint talks about.
enum class CountKind {
  Weight,      // y<w>: codewords of weight w
  DualWeight,  // mu<w>: dual words of weight w
  Variable,    // x_a: codewords of multiweight a
};

enum class CountRelation { Equal, NotEqual, AtLeast };

struct SideConstraint {
  CountKind kind = CountKind::Weight;
  int weight = 0;            // for Weight / DualWeight
  Multiweight multiweight;   // for Variable
  bool compact = false;      // x-variable spelled without underscores
  CountRelation relation = CountRelation::Equal;
  std::int64_t value = 0;

  std::string variable_name() const {
    switch (kind) {
      case CountKind::Weight:
        return "y" + std::to_string(weight);
      case CountKind::DualWeight:
        return "mu" + std::to_string(weight);
      case CountKind::Variable:
        if (compact) {
          std::string s = "x";
          for (int a : multiweight.entries) s += std::to_string(a);
          return s;
        }
        return multiweight.name();
    }
    return {};
  }

  std::string str() const {
    const char* op = relation == CountRelation::Equal ? " = " : relation == CountRelation::NotEqual ? " != " : " >= ";
    return variable_name() + op + std::to_string(value);
  }

  /// True when the two constraints split the same count into "= 0" and "!= 0".
  bool complements(const SideConstraint& other) const {
    if (kind != other.kind || weight != other.weight || multiweight != other.multiweight) return false;
    if (value != 0 || other.value != 0) return false;
    return (relation == CountRelation::Equal && other.relation == CountRelation::NotEqual) ||
           (relation == CountRelation::NotEqual && other.relation == CountRelation::Equal);
  }

  friend bool operator==(const SideConstraint& a, const SideConstraint& b) {
    return a.kind == b.kind && a.weight == b.weight && a.multiweight == b.multiweight && a.relation == b.relation &&
           a.value == b.value;
  }
};

/// [n,k,d] with optional evenness ("_2") and side constraints.
struct CodeType {
  int n = 0;
  int k = 0;
  int d = 0;
  bool even = false;
  std::vector<SideConstraint> constraints;

  void validate() const {
    if (n < 1 || k < 1 || d < 1) throw DomainError("code type parameters must be positive");
    if (k > n || d > n) throw DomainError("code type needs k <= n and d <= n");
    if (n > 62) throw DomainError("code length above 62 is not supported");
    for (const auto& c : constraints) {
      if (c.kind != CountKind::Variable && (c.weight < 0 || c.weight > n)) {
        throw DomainError("side constraint references weight outside 0..n");
      }
    }
  }

  std::string str() const {
    std::string s = "[" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) + (even ? "_2" : "") + "]";
    if (!constraints.empty()) {
      s += "{";
      for (std::size_t i = 0; i < constraints.size(); ++i) s += (i ? ", " : "") + constraints[i].str();
      s += "}";
    }
    return s;
  }
};

/// A block pattern: one flag per partition block.
using BlockPattern = std::vector<bool>;

inline BlockPattern parse_pattern(const std::string& s) {
  BlockPattern p;
  for (char ch : s) {
    if (ch == '0' || ch == '1') {
      p.push_back(ch == '1');
    } else {
      throw ParseError("block pattern must be 0/1 characters: '" + s + "'");
    }
  }
  return p;
}

inline std::string pattern_str(const BlockPattern& p) {
  std::string s;
  for (bool b : p) s.push_back(b ? '1' : '0');
  return s;
}

/// Partition + block-constant subcode basis + block-constant dual words.
struct Configuration {
  Partition partition;
  std::vector<BlockPattern> rows;
  std::vector<BlockPattern> dual_rows;
  std::vector<SideConstraint> constraints;
  std::optional<std::string> label;

  int length() const noexcept { return partition.total(); }

  BitMatrix subcode_basis() const {
    BitMatrix m(static_cast<std::size_t>(length()));
    for (const auto& r : rows) m.push_back(partition.expand(r));
    return m;
  }

  BitMatrix dual_word_basis() const {
    BitMatrix m(static_cast<std::size_t>(length()));
    for (const auto& r : dual_rows) m.push_back(partition.expand(r));
    return m;
  }

  Code subcode() const { return Code(subcode_basis()); }

  /// Shape checks: pattern widths, independence, orthogonality.
  void validate() const {
    for (const auto& r : rows) {
      if (r.size() != partition.blocks()) throw DomainError("config row '" + pattern_str(r) + "' does not match the partition");
    }
    for (const auto& r : dual_rows) {
      if (r.size() != partition.blocks()) throw DomainError("config dual row '" + pattern_str(r) + "' does not match the partition");
    }
    if (subcode_basis().rank() != rows.size()) throw DomainError("config rows are linearly dependent");
    if (dual_word_basis().rank() != dual_rows.size()) throw DomainError("config dual rows are linearly dependent");
    const auto sub = subcode_basis();
    const auto dual = dual_word_basis();
    for (const auto& r : sub.row_list()) {
      for (const auto& h : dual.row_list()) {
        if (r.dot(h)) throw DomainError("config dual row is not orthogonal to the subcode");
      }
    }
  }

  /// The trivial configuration "config n : { }".
  static Configuration base(int n) {
    Configuration c;
    c.partition = Partition::trivial(n);
    return c;
  }
};

/// A multiweight at some (coarser) ancestor partition, possibly an orbit.
struct VariableFact {
  Partition partition;
  std::vector<Multiweight> members;  // one entry, or a whole orbit
};

/// The facts the constraint builder consumes, accumulated along a branch.
struct FactSet {
  int dual_min = 1;                 // every nonzero dual word has weight >= dual_min
  std::set<int> zero_weights;       // y_w = 0
  std::set<int> nonzero_weights;    // y_w != 0
  std::set<int> zero_dual_weights;  // mu_w = 0
  std::vector<VariableFact> nonzero_variables;
  std::vector<VariableFact> zero_variables;
};

/// Multiweight of `fine` summed over the coarse blocks given by `map`.
inline Multiweight coarsen(const Multiweight& fine, const std::vector<std::size_t>& map, std::size_t coarse_blocks) {
  Multiweight m;
  m.entries.assign(coarse_blocks, 0);
  for (std::size_t i = 0; i < fine.entries.size(); ++i) m.entries[map[i]] += fine.entries[i];
  return m;
}

}  // namespace splitlp

#endif  // SPLITLP_MODEL_HPP
