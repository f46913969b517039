#ifndef SPLITLP_GROUPS_HPP
#define SPLITLP_GROUPS_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "splitlp/error.hpp"
#include "splitlp/gf2.hpp"
#include "splitlp/model.hpp"

namespace splitlp {

/// Permutation of {0..n-1}; position i moves to images[i]. Text form is the
/// comma-separated list of 1-based images.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
      if (v < 0 || static_cast<std::size_t>(v) >= img_.size() || seen[static_cast<std::size_t>(v)]) {
        throw DomainError("image list is not a permutation");
      }
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
  }

  static Permutation from_one_based(const std::vector<int>& images) {
    std::vector<int> v;
    v.reserve(images.size());
    for (int x : images) v.push_back(x - 1);
    return Permutation(std::move(v));
  }

  static Permutation parse(const std::string& text) {
    std::vector<int> v;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
      const auto a = item.find_first_not_of(" \t\r\n");
      if (a == std::string::npos) throw ParseError("empty entry in permutation '" + text + "'");
      try {
        v.push_back(std::stoi(item.substr(a)));
      } catch (const std::exception&) {
        throw ParseError("bad entry '" + item + "' in permutation");
      }
    }
    return from_one_based(v);
  }

  std::size_t degree() const noexcept { return img_.size(); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const noexcept { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (img_[i] != static_cast<int>(i)) return false;
    }
    return true;
  }

  /// (a * b)(i) = a(b(i)): apply b first.
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw DimensionError("permutation degrees differ");
    std::vector<int> v(a.degree());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.img_[static_cast<std::size_t>(b.img_[i])];
    Permutation p;
    p.img_ = std::move(v);
    return p;
  }

  Permutation inverse() const {
    std::vector<int> v(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) v[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
    Permutation p;
    p.img_ = std::move(v);
    return p;
  }

  /// The word whose bit img[i] is bit i of w.
  BitWord apply(const BitWord& w) const {
    if (w.size() != img_.size()) throw DimensionError("permutation degree does not match word length");
    BitWord out(w.size());
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (w.get(i)) out.set(static_cast<std::size_t>(img_[i]), true);
    }
    return out;
  }

  BitMatrix apply(const BitMatrix& m) const {
    BitMatrix out(m.cols());
    for (const auto& r : m.row_list()) out.push_back(apply(r));
    return out;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < img_.size(); ++i) s += (i ? "," : "") + std::to_string(img_[i] + 1);
    return s;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

 private:
  std::vector<int> img_;
};

struct GeneratorSet {
  std::size_t degree = 0;
  std::vector<Permutation> perms;
  std::optional<std::uint64_t> claimed_order;

  void add(Permutation p) {
    if (perms.empty() && degree == 0) degree = p.degree();
    if (p.degree() != degree) throw DimensionError("generator degree " + std::to_string(p.degree()) + " differs from " + std::to_string(degree));
    perms.push_back(std::move(p));
  }
};

// ---------------------------------------------------------------------------
// Configuration automorphisms

namespace detail {

inline bool span_maps_onto_itself(const BitMatrix& basis, const Permutation& g) {
  for (const auto& r : basis.row_list()) {
    if (!basis.span_contains(g.apply(r))) return false;
  }
  return true;
}

inline bool maps_blocks_to_blocks(const Partition& p, const Permutation& g) {
  for (std::size_t b = 0; b < p.blocks(); ++b) {
    const std::size_t target = p.block_of(g(p.begin(b)));
    if (p.size(target) != p.size(b)) return false;
    for (int i = p.begin(b); i < p.end(b); ++i) {
      if (p.block_of(g(i)) != target) return false;
    }
  }
  return true;
}

}  // namespace detail

/// g permutes blocks among blocks of equal size and preserves both the
/// subcode span and the dual-word span.
inline bool verify_automorphism(const Configuration& cfg, const Permutation& g) {
  if (g.degree() != static_cast<std::size_t>(cfg.length())) {
    throw DimensionError("permutation of degree " + std::to_string(g.degree()) + " on a configuration of length " + std::to_string(cfg.length()));
  }
  if (!detail::maps_blocks_to_blocks(cfg.partition, g)) return false;
  return detail::span_maps_onto_itself(cfg.subcode_basis(), g) && detail::span_maps_onto_itself(cfg.dual_word_basis(), g);
}

/// Permutation of blocks induced by an automorphism: block i goes to block_perm[i].
struct BlockAction {
  std::vector<std::size_t> block_perm;

  Multiweight apply(const Multiweight& m) const {
    Multiweight out;
    out.entries.assign(m.entries.size(), 0);
    for (std::size_t i = 0; i < m.entries.size(); ++i) out.entries[block_perm[i]] = m.entries[i];
    return out;
  }
};

inline BlockAction induced_block_action(const Configuration& cfg, const Permutation& g) {
  if (!verify_automorphism(cfg, g)) throw DomainError("permutation is not an automorphism of the configuration");
  BlockAction a;
  for (std::size_t b = 0; b < cfg.partition.blocks(); ++b) a.block_perm.push_back(cfg.partition.block_of(g(cfg.partition.begin(b))));
  return a;
}

/// Orbit of a multiweight under the group generated by the block actions.
inline std::vector<Multiweight> orbit_sum(const Multiweight& m, const std::vector<BlockAction>& actions) {
  std::set<Multiweight> seen{m};
  std::deque<Multiweight> todo{m};
  while (!todo.empty()) {
    const Multiweight cur = todo.front();
    todo.pop_front();
    for (const auto& a : actions) {
      Multiweight next = a.apply(cur);
      if (seen.insert(next).second) todo.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// Group order

inline constexpr std::uint64_t kDefaultClosureCap = 10'000'000;

/// Order by enumerating every element (breadth-first closure).
inline std::uint64_t group_order_closure(const GeneratorSet& gens, std::uint64_t cap = kDefaultClosureCap) {
  if (gens.perms.empty()) return 1;
  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
      return h;
    }
  };
  const auto id = Permutation::identity(gens.degree);
  std::unordered_set<std::vector<int>, VecHash> seen{id.images()};
  std::deque<Permutation> todo{id};
  while (!todo.empty()) {
    const Permutation cur = todo.front();
    todo.pop_front();
    for (const auto& g : gens.perms) {
      Permutation next = g * cur;
      if (seen.insert(next.images()).second) {
        if (seen.size() > cap) throw CapacityError("group closure exceeds " + std::to_string(cap) + " elements");
        todo.push_back(std::move(next));
      }
    }
  }
  return seen.size();
}

/// Stabilizer chain built by the incremental Schreier-Sims algorithm.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t degree) : n_(degree) {}

  explicit StabilizerChain(const GeneratorSet& gens) : n_(gens.degree) {
    for (const auto& g : gens.perms) {
      if (g.degree() != n_) throw DimensionError("generator degrees differ");
      const auto residue = sift(g, 0);
      if (!residue.is_identity()) add(0, residue);
    }
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& l : levels_) o *= l.transversal.size();
    return o;
  }

  bool contains(const Permutation& g) const { return sift(g, 0).is_identity(); }

  std::vector<int> base() const {
    std::vector<int> b;
    for (const auto& l : levels_) b.push_back(l.point);
    return b;
  }

 private:
  struct Level {
    int point = 0;
    std::vector<Permutation> gens;
    std::map<int, Permutation> transversal;  // u with u(point) = key
  };

  Permutation sift(Permutation h, std::size_t from) const {
    for (std::size_t j = from; j < levels_.size(); ++j) {
      const auto it = levels_[j].transversal.find(h(levels_[j].point));
      if (it == levels_[j].transversal.end()) return h;
      h = it->second.inverse() * h;
    }
    return h;
  }

  void add(std::size_t l, const Permutation& g) {
    if (l == levels_.size()) {
      Level lv;
      for (std::size_t i = 0; i < n_; ++i) {
        if (g(static_cast<int>(i)) != static_cast<int>(i)) {
          lv.point = static_cast<int>(i);
          break;
        }
      }
      lv.transversal.emplace(lv.point, Permutation::identity(n_));
      levels_.push_back(std::move(lv));
    }
    levels_[l].gens.push_back(g);
    std::vector<int> old_points;
    for (const auto& [p, u] : levels_[l].transversal) old_points.push_back(p);
    // Close the orbit first, then test every Schreier generator not seen
    // before: old points with the new generator, new points with all.
    std::vector<int> new_points;
    std::deque<int> todo(old_points.begin(), old_points.end());
    while (!todo.empty()) {
      const int p = todo.front();
      todo.pop_front();
      for (std::size_t gi = 0; gi < levels_[l].gens.size(); ++gi) {
        const Permutation& s = levels_[l].gens[gi];
        const int q = s(p);
        if (levels_[l].transversal.count(q)) continue;
        Permutation u = s * levels_[l].transversal.at(p);
        levels_[l].transversal.emplace(q, std::move(u));
        todo.push_back(q);
        new_points.push_back(q);
      }
    }
    const std::vector<Permutation> gens = levels_[l].gens;
    for (int p : old_points) test_schreier(l, p, g);
    for (int q : new_points) {
      for (const auto& t : gens) test_schreier(l, q, t);
    }
  }

  void test_schreier(std::size_t l, int p, const Permutation& s) {
    const int q = s(p);
    const Permutation h = levels_[l].transversal.at(q).inverse() * s * levels_[l].transversal.at(p);
    const Permutation residue = sift(h, l + 1);
    if (residue.is_identity()) return;
    // Store at the next level even if it fixes that base point, so every
    // stabilizer in between sees the new generator.
    add(l + 1, residue);
  }

  std::size_t n_;
  std::vector<Level> levels_;
};

inline std::uint64_t group_order_schreier_sims(const GeneratorSet& gens) {
  if (gens.perms.empty()) return 1;
  return StabilizerChain(gens).order();
}

/// Exact order: closure when it fits under the cap, Schreier-Sims otherwise.
inline std::uint64_t group_order(const GeneratorSet& gens, std::uint64_t cap = kDefaultClosureCap) {
  if (gens.perms.empty()) return 1;
  const std::uint64_t ss = group_order_schreier_sims(gens);
  if (ss <= cap) return group_order_closure(gens, cap);
  return ss;
}

// ---------------------------------------------------------------------------
// Stochastic searches

struct SearchOptions {
  std::uint64_t iterations = 5000;  // per restart
  std::uint64_t restarts = 200;
  std::uint64_t seed = 1;
  std::size_t max_results = 16;
};

struct SearchStats {
  std::uint64_t iterations = 0;
  std::uint64_t restarts = 0;
};

namespace detail {

inline std::size_t intersection_dim(const BitMatrix& a, const BitMatrix& b) {
  if (a.empty() || b.empty()) return 0;
  return a.rows() + b.rows() - a.stacked(b).rank();
}

// Sum over blocks of the largest share of the block landing in one block of
// equal size; equals n exactly when blocks map onto blocks.
inline std::size_t block_score(const Partition& p, const Permutation& g) {
  std::size_t score = 0;
  std::map<std::size_t, std::size_t> hits;
  for (std::size_t b = 0; b < p.blocks(); ++b) {
    if (p.size(b) == 1) {
      score += p.size(p.block_of(g(p.begin(b)))) == 1 ? 1 : 0;
      continue;
    }
    hits.clear();
    for (int i = p.begin(b); i < p.end(b); ++i) {
      const std::size_t t = p.block_of(g(i));
      if (p.size(t) == p.size(b)) ++hits[t];
    }
    std::size_t best = 0;
    for (const auto& [t, c] : hits) best = std::max(best, c);
    score += best;
  }
  return score;
}

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(std::move(v));
}

// Hill climbing over t * p with transpositions t; plateaus are accepted.
// `fitness` must reach `target` exactly on solutions; `accept` re-checks them.
template <class Fitness, class Accept>
void hill_climb(std::size_t n, const SearchOptions& opt, Fitness&& fitness, std::size_t target, Accept&& accept,
                SearchStats* stats) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::uint64_t r = 0; r < opt.restarts; ++r) {
    if (stats) ++stats->restarts;
    std::vector<int> img = random_permutation(n, rng).images();
    std::size_t f = fitness(Permutation(img));
    for (std::uint64_t it = 0; it < opt.iterations; ++it) {
      if (stats) ++stats->iterations;
      if (f == target) {
        if (!accept(Permutation(img))) return;
        break;
      }
      const std::size_t a = pick(rng);
      std::size_t b = pick(rng);
      if (n < 2) break;
      while (b == a) b = pick(rng);
      // t * p: swap the images equal to a and b.
      std::vector<int> cand = img;
      for (auto& v : cand) {
        if (v == static_cast<int>(a)) {
          v = static_cast<int>(b);
        } else if (v == static_cast<int>(b)) {
          v = static_cast<int>(a);
        }
      }
      const std::size_t fc = fitness(Permutation(cand));
      if (fc >= f) {
        img = std::move(cand);
        f = fc;
      }
    }
    if (f == target && opt.iterations > 0) {
      // Reached on the final step of the budget.
      if (!accept(Permutation(img))) return;
    }
  }
}

}  // namespace detail

/// Distinct verified automorphisms found by randomized hill climbing.
/// Fitness: dim(S cap pS) + dim(D cap pD) + block preservation.
inline std::vector<Permutation> stochastic_automorphism_search(const Configuration& cfg, const SearchOptions& opt,
                                                               SearchStats* stats = nullptr) {
  const std::size_t n = static_cast<std::size_t>(cfg.length());
  const BitMatrix s = cfg.subcode_basis().reduce();
  const BitMatrix d = cfg.dual_word_basis().reduce();
  const std::size_t target = s.rows() + d.rows() + n;
  auto fitness = [&](const Permutation& p) {
    return detail::intersection_dim(s, p.apply(s)) + detail::intersection_dim(d, p.apply(d)) + detail::block_score(cfg.partition, p);
  };
  std::set<Permutation> found;
  auto accept = [&](const Permutation& p) {
    if (verify_automorphism(cfg, p)) found.insert(p);
    return found.size() < opt.max_results;
  };
  detail::hill_climb(n, opt, fitness, target, accept, stats);
  std::vector<Permutation> out(found.begin(), found.end());
  std::stable_partition(out.begin(), out.end(), [](const Permutation& p) { return !p.is_identity(); });
  return out;
}

/// True when p maps the row space of a onto that of b.
inline bool verify_isomorphism(const Code& a, const Code& b, const Permutation& p) {
  if (a.length() != b.length() || a.dimension() != b.dimension()) return false;
  if (p.degree() != static_cast<std::size_t>(a.length())) return false;
  for (const auto& r : a.generators().row_list()) {
    if (!b.contains(p.apply(r))) return false;
  }
  return true;
}

inline std::optional<Permutation> stochastic_isomorphism_search(const Code& a, const Code& b, const SearchOptions& opt,
                                                                SearchStats* stats = nullptr) {
  if (a.length() != b.length() || a.dimension() != b.dimension()) {
    throw DimensionError("isomorphism search needs codes with equal length and dimension");
  }
  const std::size_t n = static_cast<std::size_t>(a.length());
  const auto id = Permutation::identity(n);
  if (verify_isomorphism(a, b, id)) return id;
  const BitMatrix ga = a.generators();
  const BitMatrix gb = b.generators();
  auto fitness = [&](const Permutation& p) { return detail::intersection_dim(p.apply(ga), gb); };
  std::optional<Permutation> result;
  auto accept = [&](const Permutation& p) {
    if (verify_isomorphism(a, b, p)) {
      result = p;
      return false;
    }
    return true;
  };
  detail::hill_climb(n, opt, fitness, ga.rows(), accept, stats);
  return result;
}

}  // namespace splitlp

#endif  // SPLITLP_GROUPS_HPP
