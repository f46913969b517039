#ifndef SPLITLP_ENUMERATOR_HPP
#define SPLITLP_ENUMERATOR_HPP

// Krawtchouk polynomials, the multiweight MacWilliams transform, and the
// split linear programming constraint system of a configuration.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "splitlp/constraints.hpp"
#include "splitlp/error.hpp"
#include "splitlp/gf2.hpp"
#include "splitlp/model.hpp"

namespace splitlp {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("integer overflow in exact coefficient");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityError("integer overflow in exact coefficient");
  return r;
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;  // exact at each step
  return r;
}

}  // namespace detail

/// K_k(x; n) = sum_j (-1)^j C(x, j) C(n - x, k - j).
inline std::int64_t krawtchouk(int k, int x, int n) {
  if (n < 0 || n > 62 || k < 0 || k > n || x < 0 || x > n) {
    throw DomainError("krawtchouk: need 0 <= k, x <= n <= 62");
  }
  std::int64_t sum = 0;
  for (int j = 0; j <= k; ++j) {
    const std::int64_t term = detail::checked_mul(detail::binomial(x, j), detail::binomial(n - x, k - j));
    sum = (j % 2 == 0) ? detail::checked_add(sum, term) : detail::checked_add(sum, -term);
  }
  return sum;
}

class KrawtchoukTable {
 public:
  explicit KrawtchoukTable(int n) : n_(n), values_(static_cast<std::size_t>((n + 1) * (n + 1))) {
    for (int k = 0; k <= n; ++k) {
      for (int x = 0; x <= n; ++x) values_[static_cast<std::size_t>(k * (n + 1) + x)] = krawtchouk(k, x, n);
    }
  }

  int n() const noexcept { return n_; }
  std::int64_t operator()(int k, int x) const { return values_[static_cast<std::size_t>(k * (n_ + 1) + x)]; }

 private:
  int n_;
  std::vector<std::int64_t> values_;
};

/// Counts indexed densely by multiweight (mixed radix, first block most
/// significant).
struct MultiweightDistribution {
  Partition partition;
  std::vector<std::int64_t> counts;

  explicit MultiweightDistribution(Partition p)
      : partition(std::move(p)), counts(partition.multiweight_count(), 0) {}

  MultiweightIndexer indexer() const { return MultiweightIndexer(partition); }

  std::int64_t& operator[](const Multiweight& m) { return counts[indexer().index(m)]; }
  std::int64_t at(const Multiweight& m) const { return counts[indexer().index(m)]; }

  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto c : counts) s = detail::checked_add(s, c);
    return s;
  }

  friend bool operator==(const MultiweightDistribution& a, const MultiweightDistribution& b) {
    return a.partition == b.partition && a.counts == b.counts;
  }
};

/// Multiweight distribution of a code by enumeration.
inline MultiweightDistribution distribution_of(const Code& code, const Partition& p, int cap = kDefaultEnumerationCap) {
  if (code.length() != p.total()) throw DimensionError("distribution_of: partition does not match code length");
  MultiweightDistribution d(p);
  const MultiweightIndexer ix(p);
  code.for_each_codeword([&](const BitWord& w) { ++d.counts[ix.index(multiweight(w, p))]; }, cap);
  return d;
}

/// S_b = sum_a d[a] prod_i K_{b_i}(a_i; p_i), computed one block axis at a time.
inline MultiweightDistribution split_transform(const MultiweightDistribution& d) {
  const auto& parts = d.partition.parts();
  std::vector<std::int64_t> cur = d.counts;
  std::vector<std::int64_t> next(cur.size());
  // Stride of axis i is the product of (p_j + 1) for j > i.
  std::vector<std::size_t> strides(parts.size());
  {
    std::size_t s = 1;
    for (std::size_t i = parts.size(); i-- > 0;) {
      strides[i] = s;
      s *= static_cast<std::size_t>(parts[i] + 1);
    }
  }
  for (std::size_t axis = 0; axis < parts.size(); ++axis) {
    const int p = parts[axis];
    const KrawtchoukTable kt(p);
    const std::size_t stride = strides[axis];
    const std::size_t span = stride * static_cast<std::size_t>(p + 1);
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t base = 0; base < cur.size(); base += span) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        for (int b = 0; b <= p; ++b) {
          std::int64_t acc = 0;
          for (int a = 0; a <= p; ++a) {
            const std::int64_t v = cur[base + inner + static_cast<std::size_t>(a) * stride];
            if (v != 0) acc = detail::checked_add(acc, detail::checked_mul(v, kt(b, a)));
          }
          next[base + inner + static_cast<std::size_t>(b) * stride] = acc;
        }
      }
    }
    std::swap(cur, next);
  }
  MultiweightDistribution out(d.partition);
  out.counts = std::move(cur);
  return out;
}

/// Codeword weights not ruled out by d, n, evenness and y_w = 0 facts.
inline std::set<int> admissible_totals(const CodeType& type, const FactSet& facts) {
  std::set<int> out{0};
  for (int w = std::max(type.d, 1); w <= type.n; ++w) {
    if (type.even && w % 2 != 0) continue;
    if (facts.zero_weights.count(w)) continue;
    out.insert(w);
  }
  return out;
}

/// A constraint system together with the multiweight behind each variable.
struct SplitSystem {
  Partition partition;
  std::vector<Multiweight> variables;
  ConstraintSystem system;

  std::optional<std::size_t> variable_index(const Multiweight& m) const {
    auto it = std::find(variables.begin(), variables.end(), m);
    if (it == variables.end()) return std::nullopt;
    return static_cast<std::size_t>(it - variables.begin());
  }
};

/// Either a system, or the reason the configuration is already impossible.
struct BuildResult {
  std::optional<SplitSystem> system;
  std::string contradiction;

  bool is_contradiction() const noexcept { return !system.has_value(); }
};

struct BuildOptions {
  bool merge_identical_rows = true;
};

namespace detail {

/// Side constraints coming from the type, facts and configuration, folded
/// into the fact vocabulary the builder understands.
struct Requirements {
  std::set<int> zero_weights;
  std::set<int> nonzero_weights;
  std::set<int> zero_dual_weights;
  std::set<int> nonzero_dual_weights;
  std::vector<SideConstraint> other;
};

inline void absorb(Requirements& req, const SideConstraint& c) {
  if (c.kind == CountKind::Weight && c.value == 0 && c.relation == CountRelation::Equal) {
    req.zero_weights.insert(c.weight);
  } else if (c.kind == CountKind::Weight && c.value == 0 && c.relation == CountRelation::NotEqual) {
    req.nonzero_weights.insert(c.weight);
  } else if (c.kind == CountKind::DualWeight && c.value == 0 && c.relation == CountRelation::Equal) {
    req.zero_dual_weights.insert(c.weight);
  } else if (c.kind == CountKind::DualWeight && c.value == 0 && c.relation == CountRelation::NotEqual) {
    req.nonzero_dual_weights.insert(c.weight);
    req.other.push_back(c);
  } else {
    req.other.push_back(c);
  }
}

}  // namespace detail

/// Builds the split LP system of `cfg` under `type` and `facts`.
///
/// Rows, by provenance tag:
///   zero      x_0 = 1
///   total     sum_a x_a = 2^k
///   subcode   x_a >= (subcode words of multiweight a)
///   y<w>      sum_{|a| = w} x_a >= 1 for y_w != 0 facts and constraints
///   fact      sum over a nonzero-variable fact (coarsened) >= 1
///   dualmin   S_b = 0 for 0 < |b| < dual minimum
///   mu<w>     S_b = 0 for |b| = w when mu_w = 0
///   dualword  S_b >= 2^k (dual configuration words of multiweight b)
///   dual      S_b >= 0
///   side      remaining side constraints
///   nonneg    x_a >= 0
/// Variables whose total is excluded (0 < |a| < d, odd when even, y_w = 0),
/// or that meet a configuration dual word oddly, or that coarsen into a
/// zero-variable fact, are removed from the system.
inline BuildResult build_constraint_system(const CodeType& type, const FactSet& facts, const Configuration& cfg,
                                           const BuildOptions& options = {}) {
  type.validate();
  if (cfg.length() != type.n) throw DimensionError("configuration length does not match the code type");
  cfg.validate();

  const Partition& part = cfg.partition;
  const std::size_t r = part.blocks();
  const MultiweightIndexer ix(part);

  detail::Requirements req;
  req.zero_weights = facts.zero_weights;
  req.nonzero_weights = facts.nonzero_weights;
  req.zero_dual_weights = facts.zero_dual_weights;
  for (const auto& c : type.constraints) detail::absorb(req, c);
  for (const auto& c : cfg.constraints) detail::absorb(req, c);

  FactSet effective = facts;
  effective.zero_weights = req.zero_weights;
  const std::set<int> totals = admissible_totals(type, effective);

  for (int w : req.nonzero_weights) {
    if (!totals.count(w)) {
      return BuildResult{std::nullopt, "y" + std::to_string(w) + " != 0 but weight " + std::to_string(w) + " is excluded"};
    }
  }
  for (int w : req.nonzero_dual_weights) {
    if (w > 0 && (w < facts.dual_min || req.zero_dual_weights.count(w))) {
      return BuildResult{std::nullopt, "mu" + std::to_string(w) + " != 0 but dual weight " + std::to_string(w) + " is excluded"};
    }
  }

  // Subcode and dual-word multiweight counts; each nonzero word must be admissible.
  const Code sub = cfg.subcode();
  std::map<Multiweight, std::int64_t> sub_counts;
  std::string bad;
  sub.for_each_codeword([&](const BitWord& w) {
    if (!w.is_zero() && !totals.count(w.weight()) && bad.empty()) {
      bad = "configuration subcode contains a word of excluded weight " + std::to_string(w.weight());
    }
    ++sub_counts[multiweight(w, part)];
  });
  if (!bad.empty()) return BuildResult{std::nullopt, bad};

  const Code dual_words(cfg.dual_word_basis());
  std::map<Multiweight, std::int64_t> dual_counts;
  dual_words.for_each_codeword([&](const BitWord& w) {
    if (w.is_zero()) return;
    const int wt = w.weight();
    if (bad.empty() && (wt < facts.dual_min || req.zero_dual_weights.count(wt))) {
      bad = "configuration dual word has excluded dual weight " + std::to_string(wt);
    }
    ++dual_counts[multiweight(w, part)];
  });
  if (!bad.empty()) return BuildResult{std::nullopt, bad};

  // Coarsening maps for variable facts stated at ancestor partitions.
  auto coarsen_to = [&](const Partition& coarse) -> std::optional<std::vector<std::size_t>> { return part.refinement_map(coarse); };
  std::vector<std::pair<std::vector<std::size_t>, const VariableFact*>> zero_facts, nonzero_facts;
  for (const auto& f : facts.zero_variables) {
    if (auto m = coarsen_to(f.partition)) zero_facts.emplace_back(*m, &f);
  }
  for (const auto& f : facts.nonzero_variables) {
    if (auto m = coarsen_to(f.partition)) nonzero_facts.emplace_back(*m, &f);
  }
  auto fact_matches = [](const Multiweight& coarse, const VariableFact& f) {
    return std::find(f.members.begin(), f.members.end(), coarse) != f.members.end();
  };

  const BitMatrix dual_basis_words = cfg.dual_word_basis();
  std::vector<std::vector<bool>> dual_patterns(cfg.dual_rows.begin(), cfg.dual_rows.end());

  SplitSystem out;
  out.partition = part;
  for (std::size_t idx = 0; idx < ix.count(); ++idx) {
    Multiweight a = ix.at(idx);
    const int t = a.total();
    if (!totals.count(t)) continue;
    bool odd_meet = false;
    for (const auto& h : dual_patterns) {
      int s = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (h[i]) s += a.entries[i];
      }
      if (s % 2 != 0) odd_meet = true;
    }
    if (odd_meet) continue;
    bool zeroed = false;
    for (const auto& [map, f] : zero_facts) {
      if (fact_matches(coarsen(a, map, f->partition.blocks()), *f)) zeroed = true;
    }
    if (zeroed) continue;
    out.variables.push_back(std::move(a));
  }
  for (const auto& [mw, cnt] : sub_counts) {
    if (!out.variable_index(mw)) {
      return BuildResult{std::nullopt, "configuration subcode word of multiweight " + mw.name() + " is excluded by the facts"};
    }
  }

  const std::size_t nv = out.variables.size();
  ConstraintSystem& cs = out.system;
  for (const auto& v : out.variables) cs.variables.push_back(v.name());

  const std::int64_t two_k = std::int64_t{1} << type.k;

  {
    std::vector<std::int64_t> c(nv, 0);
    c[*out.variable_index(Multiweight{std::vector<int>(r, 0)})] = 1;
    cs.add_row("zero", std::move(c), Relation::Equal, 1);
  }
  cs.add_row("total", std::vector<std::int64_t>(nv, 1), Relation::Equal, two_k);
  for (const auto& [mw, cnt] : sub_counts) {
    if (mw.is_zero()) continue;
    std::vector<std::int64_t> c(nv, 0);
    c[*out.variable_index(mw)] = 1;
    cs.add_row("subcode", std::move(c), Relation::GreaterEq, cnt);
  }
  for (int w : req.nonzero_weights) {
    std::vector<std::int64_t> c(nv, 0);
    bool any = false;
    for (std::size_t j = 0; j < nv; ++j) {
      if (out.variables[j].total() == w) {
        c[j] = 1;
        any = true;
      }
    }
    if (!any) return BuildResult{std::nullopt, "y" + std::to_string(w) + " != 0 but no variable of that weight survives"};
    cs.add_row("y" + std::to_string(w) + "!=0", std::move(c), Relation::GreaterEq, 1);
  }
  for (const auto& [map, f] : nonzero_facts) {
    std::vector<std::int64_t> c(nv, 0);
    bool any = false;
    for (std::size_t j = 0; j < nv; ++j) {
      if (fact_matches(coarsen(out.variables[j], map, f->partition.blocks()), *f)) {
        c[j] = 1;
        any = true;
      }
    }
    if (!any) return BuildResult{std::nullopt, "a nonzero variable fact has no surviving variables"};
    cs.add_row("fact", std::move(c), Relation::GreaterEq, 1);
  }

  // Dual side: one candidate row per multiweight b != 0.
  std::vector<KrawtchoukTable> tables;
  tables.reserve(r);
  for (std::size_t i = 0; i < r; ++i) tables.emplace_back(part.size(i));
  std::unordered_set<std::string> seen;
  auto row_key = [](const std::vector<std::int64_t>& c, Relation rel, std::int64_t rhs) {
    std::string key(reinterpret_cast<const char*>(c.data()), c.size() * sizeof(std::int64_t));
    key.push_back(rel == Relation::Equal ? '=' : '>');
    key.append(std::to_string(rhs));
    return key;
  };
  for (std::size_t bidx = 1; bidx < ix.count(); ++bidx) {
    const Multiweight b = ix.at(bidx);
    const int bt = b.total();
    std::vector<std::int64_t> c(nv);
    for (std::size_t j = 0; j < nv; ++j) {
      std::int64_t prod = 1;
      for (std::size_t i = 0; i < r; ++i) prod = detail::checked_mul(prod, tables[i](b.entries[i], out.variables[j].entries[i]));
      c[j] = prod;
    }
    std::string tag;
    Relation rel = Relation::GreaterEq;
    std::int64_t rhs = 0;
    if (bt < facts.dual_min) {
      tag = "dualmin";
      rel = Relation::Equal;
    } else if (req.zero_dual_weights.count(bt)) {
      tag = "mu" + std::to_string(bt);
      rel = Relation::Equal;
    } else if (auto it = dual_counts.find(b); it != dual_counts.end()) {
      tag = "dualword";
      rhs = detail::checked_mul(two_k, it->second);
    } else {
      tag = "dual";
    }
    const bool zero_row = std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; });
    if (zero_row) {
      if ((rel == Relation::Equal && rhs != 0) || (rel == Relation::GreaterEq && rhs > 0)) {
        return BuildResult{std::nullopt, "row " + tag + " for " + b.name() + " reads 0 >= positive"};
      }
      continue;
    }
    if (options.merge_identical_rows) {
      if (!seen.insert(row_key(c, rel, rhs)).second) continue;
    }
    cs.add_row(tag, std::move(c), rel, rhs);
  }

  for (const auto& sc : req.other) {
    std::vector<std::int64_t> c(nv, 0);
    std::int64_t scale = 1;
    if (sc.kind == CountKind::Weight) {
      for (std::size_t j = 0; j < nv; ++j) c[j] = out.variables[j].total() == sc.weight ? 1 : 0;
    } else if (sc.kind == CountKind::Variable) {
      if (sc.multiweight.size() != r) throw DomainError("side constraint " + sc.variable_name() + " does not match the partition");
      if (auto j = out.variable_index(sc.multiweight)) c[*j] = 1;
    } else {
      // mu_w counts dual words: B_w = (1/2^k) sum_{|b| = w} S_b.
      scale = two_k;
      for (std::size_t bidx = 1; bidx < ix.count(); ++bidx) {
        const Multiweight b = ix.at(bidx);
        if (b.total() != sc.weight) continue;
        for (std::size_t j = 0; j < nv; ++j) {
          std::int64_t prod = 1;
          for (std::size_t i = 0; i < r; ++i) prod = detail::checked_mul(prod, tables[i](b.entries[i], out.variables[j].entries[i]));
          c[j] = detail::checked_add(c[j], prod);
        }
      }
    }
    const std::int64_t rhs = detail::checked_mul(scale, sc.value);
    switch (sc.relation) {
      case CountRelation::Equal:
        cs.add_row("side", std::move(c), Relation::Equal, rhs);
        break;
      case CountRelation::AtLeast:
        cs.add_row("side", std::move(c), Relation::GreaterEq, rhs);
        break;
      case CountRelation::NotEqual:
        if (sc.value != 0) throw DomainError("only '!= 0' side constraints are supported");
        cs.add_row("side", std::move(c), Relation::GreaterEq, scale);
        break;
    }
  }

  cs.add_nonnegativity();
  return BuildResult{std::move(out), {}};
}

}  // namespace splitlp

#endif  // SPLITLP_ENUMERATOR_HPP
