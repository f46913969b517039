#ifndef SPLITLP_RULES_HPP
#define SPLITLP_RULES_HPP

// Coding-theory inference rules and the persistent fact database.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "splitlp/enumerator.hpp"
#include "splitlp/error.hpp"
#include "splitlp/model.hpp"

namespace splitlp {

/// Bare code parameters [n,k,d], optionally restricted to even codes.
struct CodeParams {
  int n = 0;
  int k = 0;
  int d = 0;
  bool even = false;

  std::string str() const {
    return "[" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) + (even ? "_2" : "") + "]";
  }
  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

inline std::string nonexistence_statement(const CodeParams& p) { return "Nonexistence" + p.str(); }

/// Parses "Nonexistence[n,k,d]" or "Nonexistence[n,k,d_2]". Statements
/// carrying side constraints ("...]{mu5 = 0}") are not plain parameter
/// facts and yield nullopt.
inline std::optional<CodeParams> parse_nonexistence(const std::string& statement) {
  const std::string head = "Nonexistence[";
  if (statement.rfind(head, 0) != 0) return std::nullopt;
  const auto close = statement.find(']');
  if (close == std::string::npos || close + 1 != statement.size()) return std::nullopt;
  std::string body = statement.substr(head.size(), close - head.size());
  CodeParams p;
  if (body.size() > 2 && body.compare(body.size() - 2, 2, "_2") == 0) {
    p.even = true;
    body.resize(body.size() - 2);
  }
  char c1 = 0, c2 = 0;
  std::istringstream in(body);
  if (!(in >> p.n >> c1 >> p.k >> c2 >> p.d) || c1 != ',' || c2 != ',') return std::nullopt;
  in >> std::ws;
  if (!in.eof()) return std::nullopt;
  return p;
}

// ---------------------------------------------------------------------------
// Fact database

struct Fact {
  std::string statement;
  std::string by;                      // rule name, "axiom", "cert:<id>" or "transcript:<id>"
  std::vector<std::size_t> premises;   // 1-based ids of earlier facts

  bool is_axiom() const noexcept { return by == "axiom"; }
};

/// Line format: FACT <statement> BY <source> [id,id,...]
class FactDatabase {
 public:
  const std::vector<Fact>& facts() const noexcept { return facts_; }
  std::size_t size() const noexcept { return facts_.size(); }

  /// Returns the 1-based id of the fact; an existing statement keeps its
  /// first justification.
  std::size_t add(Fact f) {
    if (auto id = find(f.statement)) return *id;
    for (auto p : f.premises) {
      if (p == 0 || p > facts_.size()) throw DomainError("fact premise #" + std::to_string(p) + " does not exist yet");
    }
    facts_.push_back(std::move(f));
    return facts_.size();
  }

  std::optional<std::size_t> find(const std::string& statement) const {
    for (std::size_t i = 0; i < facts_.size(); ++i) {
      if (facts_[i].statement == statement) return i + 1;
    }
    return std::nullopt;
  }

  const Fact& at(std::size_t id) const { return facts_.at(id - 1); }

  std::size_t axiom_count() const {
    return static_cast<std::size_t>(std::count_if(facts_.begin(), facts_.end(), [](const Fact& f) { return f.is_axiom(); }));
  }

  static std::string format(const Fact& f) {
    std::string s = "FACT " + f.statement + " BY " + f.by;
    if (!f.premises.empty()) {
      s += " [";
      for (std::size_t i = 0; i < f.premises.size(); ++i) s += (i ? "," : "") + std::to_string(f.premises[i]);
      s += "]";
    }
    return s;
  }

  static Fact parse_line(const std::string& line) {
    if (line.rfind("FACT ", 0) != 0) throw ParseError("fact line must start with FACT: '" + line + "'");
    const auto by = line.rfind(" BY ");
    if (by == std::string::npos || by < 5) throw ParseError("fact line lacks ' BY ': '" + line + "'");
    Fact f;
    f.statement = line.substr(5, by - 5);
    std::string rest = line.substr(by + 4);
    const auto bracket = rest.find(" [");
    if (bracket != std::string::npos) {
      std::string list = rest.substr(bracket + 2);
      rest.resize(bracket);
      if (list.empty() || list.back() != ']') throw ParseError("unterminated premise list: '" + line + "'");
      list.pop_back();
      std::istringstream ps(list);
      std::string item;
      while (std::getline(ps, item, ',')) {
        try {
          f.premises.push_back(static_cast<std::size_t>(std::stoul(item)));
        } catch (const std::exception&) {
          throw ParseError("bad premise id '" + item + "'");
        }
      }
    }
    f.by = rest;
    if (f.statement.empty() || f.by.empty()) throw ParseError("empty statement or source: '" + line + "'");
    return f;
  }

  void save(std::ostream& out) const {
    for (const auto& f : facts_) out << format(f) << "\n";
  }

  void load(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      line = line.substr(first);
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      add(parse_line(line));
    }
  }

  void save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write fact database '" + path + "'");
    save(out);
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read fact database '" + path + "'");
    load(in);
  }

 private:
  std::vector<Fact> facts_;
};

// ---------------------------------------------------------------------------
// Rules

/// Griesmer length sum_{i<k} ceil(d / 2^i).
inline std::int64_t griesmer(int k, int d) {
  if (k < 1 || d < 1) throw DomainError("griesmer needs k >= 1 and d >= 1");
  std::int64_t total = 0;
  for (int i = 0; i < k; ++i) {
    if (i >= 62) {
      total += 1;
      continue;
    }
    const std::int64_t p = std::int64_t{1} << i;
    total += (d + p - 1) / p;
  }
  return total;
}

/// The subcode vanishing on a dual word of weight w, restricted to the other
/// n - w coordinates: an [n-w, k-w+1, d] code (even if the original is).
inline std::optional<CodeParams> residual_of_dual_word(int n, int k, int d, int w, bool even = false) {
  if (w < 1 || k - w + 1 < 1 || n - w < 1) return std::nullopt;
  return CodeParams{n - w, k - w + 1, d, even};
}

/// How a parameter set was refuted.
struct Refutation {
  std::string reason;
  std::optional<std::size_t> premise;  // fact id in the database, if any
};

/// Whether [n,k,d] (even if p.even) is impossible by Griesmer or by a
/// database fact. A stored Nonexistence[N,K,D] refutes every [n,k,d] that
/// shortens (s = k-K times) and punctures (t = n-N-s times) into an
/// [N,K,>=D] code. An even fact applies to even targets without puncturing,
/// or to any target when D is even (even extension).
inline std::optional<Refutation> refute(const CodeParams& p, const FactDatabase& db) {
  if (p.k < 1 || p.d < 1 || p.n < 1) return std::nullopt;
  if (p.k > p.n || p.d > p.n) return Refutation{p.str() + ": parameters out of range", std::nullopt};
  if (griesmer(p.k, p.d) > p.n) {
    return Refutation{p.str() + ": Griesmer length " + std::to_string(griesmer(p.k, p.d)) + " > " + std::to_string(p.n), std::nullopt};
  }
  for (std::size_t id = 1; id <= db.size(); ++id) {
    const auto q = parse_nonexistence(db.at(id).statement);
    if (!q) continue;
    const int s = p.k - q->k;
    const int t = (p.n - q->n) - s;
    if (s < 0 || t < 0 || p.d - t < q->d) continue;
    if (q->even) {
      const bool direct = p.even && t == 0;
      const bool by_extension = q->d % 2 == 0;
      if (!direct && !by_extension) continue;
    }
    std::string how = p.str() + " -> " + q->str();
    if (s > 0) how += " by shortening " + std::to_string(s);
    if (t > 0) how += (s > 0 ? " and puncturing " : " by puncturing ") + std::to_string(t);
    return Refutation{how, id};
  }
  return std::nullopt;
}

struct DualMinInference {
  int dual_min = 1;
  std::vector<std::string> steps;
  std::vector<std::size_t> premises;
};

/// Largest m such that every dual weight 1 <= w < m is excluded, either by
/// a mu_w = 0 side constraint or because the residual code is refuted.
inline DualMinInference infer_dual_min(const CodeType& type, const FactDatabase& db) {
  DualMinInference out;
  for (int w = 1; w <= type.n; ++w) {
    bool mu_zero = false;
    for (const auto& c : type.constraints) {
      if (c.kind == CountKind::DualWeight && c.weight == w && c.relation == CountRelation::Equal && c.value == 0) mu_zero = true;
    }
    if (mu_zero) {
      out.steps.push_back("w=" + std::to_string(w) + ": mu" + std::to_string(w) + " = 0 by the type");
      out.dual_min = w + 1;
      continue;
    }
    const auto res = residual_of_dual_word(type.n, type.k, type.d, w, type.even);
    if (!res) break;
    const auto why = refute(*res, db);
    if (!why) break;
    out.steps.push_back("w=" + std::to_string(w) + ": " + why->reason);
    if (why->premise && std::find(out.premises.begin(), out.premises.end(), *why->premise) == out.premises.end()) {
      out.premises.push_back(*why->premise);
    }
    out.dual_min = w + 1;
  }
  return out;
}

/// Nonexistence of even [n,k,d] codes implies nonexistence of all [n,k,d]
/// codes when d is even: puncture once, then add an overall parity bit.
inline std::optional<CodeParams> even_reduction(const CodeParams& even_fact) {
  if (!even_fact.even || even_fact.d % 2 != 0) return std::nullopt;
  CodeParams p = even_fact;
  p.even = false;
  return p;
}

/// Codes meeting the Griesmer bound with even d have only even weights.
inline bool griesmer_evenness(const CodeType& type) {
  return type.d % 2 == 0 && static_cast<std::int64_t>(type.n) == griesmer(type.k, type.d);
}

/// If y_W = 0 for the smallest admissible weight W would push the minimum
/// distance to the next admissible weight W' with griesmer(k, W') > n,
/// weight W must occur.
inline std::optional<int> min_weight_realized(const CodeType& type, const FactSet& facts) {
  const auto totals = admissible_totals(type, facts);
  std::vector<int> nonzero;
  for (int t : totals) {
    if (t > 0) nonzero.push_back(t);
  }
  if (nonzero.empty()) return std::nullopt;
  const int W = nonzero.front();
  if (nonzero.size() == 1) return W;
  const int next = nonzero[1];
  if (griesmer(type.k, next) > type.n) return W;
  return std::nullopt;
}

}  // namespace splitlp

#endif  // SPLITLP_RULES_HPP
