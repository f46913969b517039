#ifndef SPLITLP_EXTEND_HPP
#define SPLITLP_EXTEND_HPP

// Column-by-column extension search over dual-basis matrices with
// G-minimal lexicographic sequences (orderly generation).

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "splitlp/error.hpp"
#include "splitlp/gf2.hpp"
#include "splitlp/groups.hpp"

namespace splitlp {

/// A column of the dual-basis matrix as an integer: row 0 is the most
/// significant bit. Lexicographic order on columns is integer order.
using Column = std::uint64_t;
using LexSequence = std::vector<Column>;

/// Square matrix over the two-element field; row i is a bitmask whose bit
/// (m-1-j) holds entry (i, j), matching the column encoding.
struct F2Matrix {
  std::size_t m = 0;
  std::vector<std::uint64_t> rows;

  static F2Matrix identity(std::size_t m) {
    F2Matrix a{m, std::vector<std::uint64_t>(m, 0)};
    for (std::size_t i = 0; i < m; ++i) a.rows[i] = std::uint64_t{1} << (m - 1 - i);
    return a;
  }

  bool get(std::size_t i, std::size_t j) const { return (rows[i] >> (m - 1 - j)) & 1u; }

  Column apply(Column c) const {
    Column out = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (__builtin_parityll(rows[i] & c)) out |= std::uint64_t{1} << (m - 1 - i);
    }
    return out;
  }

  /// (this * b) as matrices.
  F2Matrix operator*(const F2Matrix& b) const {
    F2Matrix out{m, std::vector<std::uint64_t>(m, 0)};
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        if (get(i, k)) out.rows[i] ^= b.rows[k];
      }
    }
    return out;
  }

  std::optional<F2Matrix> inverse() const {
    std::vector<std::uint64_t> a = rows;
    F2Matrix inv = identity(m);
    for (std::size_t col = 0; col < m; ++col) {
      const std::uint64_t bit = std::uint64_t{1} << (m - 1 - col);
      std::size_t piv = col;
      while (piv < m && !(a[piv] & bit)) ++piv;
      if (piv == m) return std::nullopt;
      std::swap(a[piv], a[col]);
      std::swap(inv.rows[piv], inv.rows[col]);
      for (std::size_t r = 0; r < m; ++r) {
        if (r != col && (a[r] & bit)) {
          a[r] ^= a[col];
          inv.rows[r] ^= inv.rows[col];
        }
      }
    }
    return inv;
  }

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;
  friend bool operator<(const F2Matrix& a, const F2Matrix& b) { return a.rows < b.rows; }
};

struct ExtensionProblem {
  Code base;                    // D, an [n-r, s] code
  int steps = 0;                // r
  int min_weight = 1;           // every D_j must have minimum weight >= this
  bool require_even = false;    // every D_j must be even
  bool require_dual_word = false;  // last j+1 coordinates form a dual word of D_j
  GeneratorSet automorphisms;   // verified automorphisms of D
  std::size_t closure_cap = 100'000;
};

/// Dual basis of D in reduced form; its columns live in V.
inline BitMatrix extension_matrix(const Code& d) {
  const BitMatrix m = d.dual_basis().reduce();
  if (m.rows() > 63) throw CapacityError("column space dimension above 63 is not supported");
  return m;
}

inline Column column_of(const BitMatrix& m, std::size_t j) {
  Column c = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row(i).get(j)) c |= std::uint64_t{1} << (m.rows() - 1 - i);
  }
  return c;
}

/// The invertible A with (rows of M permuted by g) = A * M. New columns
/// transform as c -> A^-1 c.
inline F2Matrix induced_column_action(const Permutation& g, const BitMatrix& m_in) {
  const BitMatrix m = m_in.reduce();
  if (m.rows() != m_in.rows()) throw DomainError("extension matrix must have full row rank");
  if (g.degree() != m.cols()) throw DimensionError("permutation degree does not match the matrix width");
  const auto piv = m.pivots();
  const std::size_t k = m.rows();
  F2Matrix a{k, std::vector<std::uint64_t>(k, 0)};
  for (std::size_t i = 0; i < k; ++i) {
    const BitWord moved = g.apply(m.row(i));
    BitWord check(m.cols());
    for (std::size_t j = 0; j < k; ++j) {
      if (moved.get(piv[j])) {
        a.rows[i] |= std::uint64_t{1} << (k - 1 - j);
        check ^= m.row(j);
      }
    }
    if (!(check == moved)) throw DomainError("permutation does not preserve the dual code, so it is not an automorphism");
  }
  if (!a.inverse()) throw DomainError("induced action is singular");
  return a;
}

/// Column actions of the group: the full closure when it is at most
/// `cap` elements, otherwise only the generators (a weaker, still sound
/// minimality filter). The boolean reports which.
inline std::pair<std::vector<F2Matrix>, bool> column_action_group(const ExtensionProblem& p, const BitMatrix& m) {
  std::vector<F2Matrix> gens;
  for (const auto& g : p.automorphisms.perms) gens.push_back(*induced_column_action(g, m).inverse());
  const F2Matrix id = F2Matrix::identity(m.rows());
  std::set<F2Matrix> seen{id};
  std::vector<F2Matrix> todo{id};
  while (!todo.empty()) {
    const F2Matrix cur = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      F2Matrix nx = g * cur;
      if (seen.insert(nx).second) {
        if (seen.size() > p.closure_cap) {
          gens.insert(gens.begin(), id);
          return {gens, false};
        }
        todo.push_back(std::move(nx));
      }
    }
  }
  return {std::vector<F2Matrix>(seen.begin(), seen.end()), true};
}

inline LexSequence sorted_image(const LexSequence& seq, const F2Matrix& a) {
  LexSequence out;
  out.reserve(seq.size());
  for (Column c : seq) out.push_back(a.apply(c));
  std::sort(out.begin(), out.end());
  return out;
}

/// g x >= x for every supplied action.
inline bool is_G_minimal(const LexSequence& seq, const std::vector<F2Matrix>& actions) {
  for (const auto& a : actions) {
    if (sorted_image(seq, a) < seq) return false;
  }
  return true;
}

/// D_j: the dual of the row space of [M | c_1 ... c_j].
inline Code extended_code(const BitMatrix& m, const LexSequence& seq) {
  const std::size_t k = m.rows();
  BitMatrix ext(m.cols() + seq.size());
  for (std::size_t i = 0; i < k; ++i) {
    BitWord tail(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) tail.set(j, (seq[j] >> (k - 1 - i)) & 1u);
    ext.push_back(m.row(i).append(tail));
  }
  return Code(null_space(ext));
}

inline bool admissible(const ExtensionProblem& p, const BitMatrix& m, const LexSequence& seq) {
  const Code dj = extended_code(m, seq);
  const int expect = p.base.dimension() + static_cast<int>(seq.size());
  if (dj.dimension() != expect) return false;
  if (p.require_dual_word) {
    const std::size_t len = static_cast<std::size_t>(dj.length());
    BitWord w(len);
    for (std::size_t i = len - seq.size() - 1; i < len; ++i) w.set(i, true);
    for (const auto& r : dj.generators().row_list()) {
      if (r.dot(w)) return false;
    }
  }
  bool ok = true;
  dj.for_each_codeword([&](const BitWord& w) {
    if (!ok || w.is_zero()) return;
    const int wt = w.weight();
    if (wt < p.min_weight || (p.require_even && wt % 2 != 0)) ok = false;
  });
  return ok;
}

struct TLevel {
  int j = 0;
  std::vector<LexSequence> sequences;
};

struct LevelCounts {
  int j = 0;
  std::uint64_t candidates = 0;
  std::uint64_t admissible = 0;
  std::uint64_t minimal = 0;
};

struct ExtensionResult {
  std::vector<TLevel> levels;  // T_0 .. T_r (fewer if an empty level stopped the run)
  std::vector<LevelCounts> counts;
  bool full_group = true;
  std::string transcript;

  const TLevel& final_level() const { return levels.back(); }
  bool empty() const { return levels.back().sequences.empty(); }
};

inline TLevel extend_level(const ExtensionProblem& p, const BitMatrix& m, const std::vector<F2Matrix>& actions,
                           const TLevel& prev, LevelCounts* counts = nullptr, std::size_t max_sequences = 50'000'000) {
  const std::size_t k = m.rows();
  const Column limit = std::uint64_t{1} << k;
  TLevel out;
  out.j = prev.j + 1;
  LevelCounts lc;
  lc.j = out.j;
  for (const auto& x : prev.sequences) {
    const Column start = x.empty() ? 0 : x.back();
    LexSequence y = x;
    y.push_back(0);
    for (Column c = start; c < limit; ++c) {
      y.back() = c;
      ++lc.candidates;
      if (!admissible(p, m, y)) continue;
      ++lc.admissible;
      if (!is_G_minimal(y, actions)) continue;
      ++lc.minimal;
      out.sequences.push_back(y);
      if (out.sequences.size() > max_sequences) {
        if (counts) *counts = lc;
        throw CapacityError("level " + std::to_string(out.j) + " exceeds " + std::to_string(max_sequences) + " sequences");
      }
    }
  }
  std::sort(out.sequences.begin(), out.sequences.end());
  if (counts) *counts = lc;
  return out;
}

inline ExtensionResult run_extension_search(const ExtensionProblem& p) {
  ExtensionResult res;
  const BitMatrix m = extension_matrix(p.base);
  auto [actions, full] = column_action_group(p, m);
  res.full_group = full;
  res.levels.push_back(TLevel{0, {LexSequence{}}});
  std::ostringstream tr;
  for (int j = 1; j <= p.steps; ++j) {
    LevelCounts lc;
    try {
      res.levels.push_back(extend_level(p, m, actions, res.levels.back(), &lc));
    } catch (const CapacityError& e) {
      tr << "LEVEL " << lc.j << " candidates=" << lc.candidates << " admissible=" << lc.admissible << " minimal=" << lc.minimal
         << " (aborted)\n";
      throw CapacityError(std::string(e.what()) + "\n" + tr.str());
    }
    res.counts.push_back(lc);
    tr << "LEVEL " << j << " candidates=" << lc.candidates << " admissible=" << lc.admissible << " minimal=" << lc.minimal << "\n";
    if (res.levels.back().sequences.empty()) break;
  }
  tr << "RESULT " << (res.empty() ? "empty" : "nonempty") << " count=" << res.final_level().sequences.size() << "\n";
  res.transcript = tr.str();
  return res;
}

/// Greedy clustering: a code joins the first representative it is shown
/// (by a verified permutation) to be isomorphic to.
struct IsomorphismReduction {
  std::vector<Code> representatives;
  std::vector<std::size_t> cluster_of;  // input index -> representative index
  bool distinctness_certified = false;  // merges are verified, distinctness is not
};

inline IsomorphismReduction reduce_up_to_isomorphism(const std::vector<Code>& codes, const SearchOptions& budget) {
  IsomorphismReduction out;
  for (const auto& c : codes) {
    std::optional<std::size_t> hit;
    for (std::size_t r = 0; r < out.representatives.size() && !hit; ++r) {
      const Code& rep = out.representatives[r];
      if (rep.length() != c.length() || rep.dimension() != c.dimension()) continue;
      if (rep.generators() == c.generators()) {
        hit = r;
        break;
      }
      if (stochastic_isomorphism_search(c, rep, budget)) hit = r;
    }
    if (hit) {
      out.cluster_of.push_back(*hit);
    } else {
      out.cluster_of.push_back(out.representatives.size());
      out.representatives.push_back(c);
    }
  }
  return out;
}

/// Problem file:
///   length <n-r>
///   row <bits>            (one per generator of D)
///   steps <r>
///   min-weight <d>
///   even yes|no
///   dual-word yes|no
///   automorphism <1-based images>
/// Blank lines and lines starting with '#' are ignored.
inline ExtensionProblem read_extension_problem(std::istream& in) {
  ExtensionProblem p;
  std::size_t length = 0;
  std::vector<std::string> rows;
  std::vector<Permutation> auts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    std::string rest;
    std::getline(ls, rest);
    const auto a = rest.find_first_not_of(" \t");
    rest = a == std::string::npos ? "" : rest.substr(a);
    while (!rest.empty() && (rest.back() == '\r' || rest.back() == ' ')) rest.pop_back();
    auto flag = [&](const std::string& v) {
      if (v == "yes") return true;
      if (v == "no") return false;
      throw ParseError("expected yes or no, found '" + v + "'", lineno, 1);
    };
    try {
      if (key == "length") {
        length = std::stoul(rest);
      } else if (key == "row") {
        rows.push_back(rest);
      } else if (key == "steps") {
        p.steps = std::stoi(rest);
      } else if (key == "min-weight") {
        p.min_weight = std::stoi(rest);
      } else if (key == "even") {
        p.require_even = flag(rest);
      } else if (key == "dual-word") {
        p.require_dual_word = flag(rest);
      } else if (key == "automorphism") {
        auts.push_back(Permutation::parse(rest));
      } else {
        throw ParseError("unknown key '" + key + "'", lineno, 1);
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("bad value for '" + key + "'", lineno, 1);
    } catch (const std::out_of_range&) {
      throw ParseError("value out of range for '" + key + "'", lineno, 1);
    }
  }
  if (length == 0) throw ParseError("problem file lacks 'length'");
  p.base = Code::from_rows(length, rows);
  for (auto& g : auts) {
    for (const auto& r : p.base.generators().row_list()) {
      if (!p.base.contains(g.apply(r))) throw VerificationError("automorphism " + g.str() + " does not preserve the base code");
    }
    p.automorphisms.add(std::move(g));
  }
  if (p.automorphisms.degree == 0) p.automorphisms.degree = length;
  return p;
}

}  // namespace splitlp

#endif  // SPLITLP_EXTEND_HPP
