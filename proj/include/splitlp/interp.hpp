#ifndef SPLITLP_INTERP_HPP
#define SPLITLP_INTERP_HPP

// Executes proof scripts against a tree of configurations.
//
// Every configuration node is one of:
//   base        the trivial configuration of the declared code type
//   forced      every code at the parent has this configuration (each new
//               word matches a nonzero fact at the parent)
//   hypothesis  an assumption that some code at the parent has it; closing
//               it records that the assumed words do not occur
//   case        the parent restricted by extra side constraints
//
// A closed forced child closes its parent. Closed hypothesis and case
// children turn into facts at the parent.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "splitlp/enumerator.hpp"
#include "splitlp/error.hpp"
#include "splitlp/groups.hpp"
#include "splitlp/lpcert.hpp"
#include "splitlp/model.hpp"
#include "splitlp/rules.hpp"
#include "splitlp/script/ast.hpp"
#include "splitlp/script/parser.hpp"
#include "splitlp/script/printer.hpp"

namespace splitlp {

struct RunOptions {
  std::optional<std::string> certs_dir;  // write .cert/.sys pairs here
  std::uint64_t seed = 1;                // reserved for randomized steps; the interpreter itself is deterministic
  double time_limit_seconds = 0;         // per LP solve, 0 for none
  std::int64_t max_denominator = 1'000'000'000;
  bool continue_on_error = false;
  std::ostream* log = nullptr;           // receives report lines as they are produced
};

enum class NodeKind { Base, Forced, Hypothesis, Case };
enum class NodeStatus { Open, Resolved, Closed };

inline const char* kind_str(NodeKind k) {
  switch (k) {
    case NodeKind::Base: return "base";
    case NodeKind::Forced: return "forced";
    case NodeKind::Hypothesis: return "hypothesis";
    case NodeKind::Case: return "case";
  }
  return "?";
}

struct ProofNode {
  std::size_t id = 0;
  std::string name;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  NodeKind kind = NodeKind::Base;
  Configuration cfg;
  FactSet facts;
  std::string assumption;

  // What the parent learns when this node closes.
  std::vector<VariableFact> zero_on_close;
  std::set<int> zero_weights_on_close;
  std::set<int> zero_dual_on_close;
  std::vector<SideConstraint> complement_on_close;

  NodeStatus status = NodeStatus::Open;
  std::string closed_by;
  std::vector<std::size_t> branches;
  std::vector<Permutation> automorphisms;

  bool closed() const noexcept { return status == NodeStatus::Closed; }
};

struct ProofState {
  std::optional<CodeType> type;
  std::vector<ProofNode> nodes;
  std::optional<std::size_t> current;
  std::map<std::string, std::size_t> labels;

  ProofNode& node(std::size_t id) { return nodes.at(id); }
  const ProofNode& node(std::size_t id) const { return nodes.at(id); }
};

struct ProofReport {
  std::vector<std::string> lines;        // FACT / AXIOM / CERT / NODE / WARN / ERROR
  std::vector<std::string> conclusions;  // headline results
  std::vector<std::string> certificate_files;
  std::size_t commands = 0;
  std::size_t facts = 0;
  std::size_t axioms = 0;
  std::size_t certificates = 0;
  std::size_t warnings = 0;
  std::size_t errors = 0;
  double seconds = 0;

  bool success() const noexcept { return errors == 0; }

  std::string summary() const {
    std::ostringstream os;
    for (const auto& c : conclusions) os << c << "\n";
    os << "commands " << commands << ", facts " << facts << ", certificates " << certificates << ", axioms " << axioms
       << ", warnings " << warnings << ", errors " << errors << ", " << std::fixed << std::setprecision(2) << seconds << " s\n";
    os << (success() ? "SUCCESS" : "FAILURE") << "\n";
    return os.str();
  }

  std::string text() const {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s + summary();
  }
};

class Interpreter {
 public:
  explicit Interpreter(FactDatabase& db, RunOptions options = {}) : db_(db), opt_(std::move(options)) {
    for (auto d : RetryPolicy{}.denominators) {
      if (d <= opt_.max_denominator) policy_.denominators.push_back(d);
    }
    policy_.solve.time_limit_seconds = opt_.time_limit_seconds;
    if (opt_.certs_dir) std::filesystem::create_directories(*opt_.certs_dir);
  }

  const ProofState& state() const noexcept { return st_; }
  const ProofReport& report() const noexcept { return rep_; }

  ProofReport run(const script::Script& s) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& stmt : s.statements) {
      if (std::holds_alternative<script::CommentCmd>(stmt.command)) continue;
      ++rep_.commands;
      line_ = stmt.line;
      try {
        execute(stmt.command);
      } catch (const Error& e) {
        ++rep_.errors;
        emit("ERROR line " + std::to_string(stmt.line) + ": " + script::print_command(stmt.command) + " : " + e.what());
        if (!opt_.continue_on_error) break;
      }
    }
    rep_.axioms = axiom_census();
    rep_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep_;
  }

  void execute(const script::Command& cmd) {
    std::visit([this](const auto& c) { exec(c); }, cmd);
  }

  /// Facts in force at a node: its own plus those of every ancestor.
  FactSet effective_facts(std::size_t id) const {
    std::vector<std::size_t> path;
    for (std::optional<std::size_t> n = id; n; n = st_.node(*n).parent) path.push_back(*n);
    FactSet f;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const FactSet& g = st_.node(*it).facts;
      f.dual_min = std::max(f.dual_min, g.dual_min);
      f.zero_weights.insert(g.zero_weights.begin(), g.zero_weights.end());
      f.nonzero_weights.insert(g.nonzero_weights.begin(), g.nonzero_weights.end());
      f.zero_dual_weights.insert(g.zero_dual_weights.begin(), g.zero_dual_weights.end());
      f.nonzero_variables.insert(f.nonzero_variables.end(), g.nonzero_variables.begin(), g.nonzero_variables.end());
      f.zero_variables.insert(f.zero_variables.end(), g.zero_variables.begin(), g.zero_variables.end());
    }
    return f;
  }

  /// Leaves that still need an argument below `id`; empty when the node is
  /// settled. Hypothesis children never reduce the cover.
  std::set<std::size_t> cover(std::size_t id) const {
    const ProofNode& n = st_.node(id);
    if (n.closed()) return {};
    if (!n.branches.empty()) {
      std::set<std::size_t> out;
      for (auto b : n.branches) {
        auto c = cover(b);
        out.insert(c.begin(), c.end());
      }
      return out;
    }
    std::optional<std::set<std::size_t>> best;
    for (auto c : n.children) {
      if (st_.node(c).kind != NodeKind::Forced) continue;
      auto cc = cover(c);
      if (!best || cc.size() <= best->size()) best = std::move(cc);
    }
    if (best) return *best;
    return {id};
  }

 private:
  // -------------------------------------------------------------------------
  // Reporting

  void emit(const std::string& line) {
    rep_.lines.push_back(line);
    if (line.rfind("WARN", 0) == 0) ++rep_.warnings;
    if (opt_.log) *opt_.log << line << std::endl;
  }

  void fact(const std::string& statement, const std::string& by) {
    ++rep_.facts;
    emit("FACT " + statement + " BY " + by);
  }

  void axiom(const std::string& statement, const std::string& reason) {
    ++run_axioms_;
    emit("AXIOM " + statement + " (" + reason + ")");
  }

  void warn(const std::string& msg) { emit("WARN line " + std::to_string(line_) + ": " + msg); }

  void use_db_fact(std::size_t id) { used_db_.insert(id); }

  std::size_t axiom_census() const {
    std::set<std::size_t> seen;
    std::vector<std::size_t> todo(used_db_.begin(), used_db_.end());
    std::size_t count = 0;
    while (!todo.empty()) {
      const auto id = todo.back();
      todo.pop_back();
      if (!seen.insert(id).second) continue;
      const Fact& f = db_.at(id);
      if (f.is_axiom()) ++count;
      for (auto p : f.premises) todo.push_back(p);
    }
    return count + run_axioms_;
  }

  std::vector<std::size_t> db_premises() const { return {used_db_.begin(), used_db_.end()}; }

  // -------------------------------------------------------------------------
  // Node helpers

  const CodeType& type() const {
    if (!st_.type) throw DomainError("no code type declared yet");
    return *st_.type;
  }

  std::size_t current() const {
    if (!st_.current) throw DomainError("no open configuration");
    return *st_.current;
  }

  std::size_t resolve_target(const std::string& label) const {
    if (label == "current") return current();
    if (label == "base") {
      if (st_.nodes.empty()) throw DomainError("no code type declared yet");
      return 0;
    }
    auto it = st_.labels.find(label);
    if (it == st_.labels.end()) throw DomainError("unknown label [" + label + "]");
    return it->second;
  }

  std::string where(std::size_t id) const { return " @ " + st_.node(id).name; }

  BuildResult build(std::size_t id) const { return build_constraint_system(type(), effective_facts(id), st_.node(id).cfg); }

  /// Certifies infeasibility of `cs`; writes the certificate when asked to.
  std::optional<std::string> certify(const ConstraintSystem& cs, std::size_t node, const std::string& purpose) {
    const ProofResult r = prove_infeasible(cs, policy_);
    if (!r.certified()) {
      std::string why = verdict_str(r.verdict);
      if (!r.method.empty()) why += " (" + r.method + ")";
      emit("LP " + purpose + where(node) + " vars=" + std::to_string(cs.variable_count()) + " rows=" +
           std::to_string(cs.row_count()) + " " + why);
      return std::nullopt;
    }
    ++cert_seq_;
    std::ostringstream id;
    id << "c" << std::setw(3) << std::setfill('0') << cert_seq_;
    const std::string cid = id.str();
    std::string file = "-";
    if (opt_.certs_dir) {
      const auto base = std::filesystem::path(*opt_.certs_dir) / cid;
      std::ofstream c(base.string() + ".cert"), s(base.string() + ".sys");
      if (!c || !s) throw Error("cannot write certificate files under " + *opt_.certs_dir);
      write_certificate(c, st_.node(node).name, *r.certificate);
      write_system(s, cs);
      file = base.string() + ".cert";
      rep_.certificate_files.push_back(file);
    }
    ++rep_.certificates;
    std::ostringstream line;
    line << "CERT " << cid << " node=" << st_.node(node).name << " for=" << purpose << " vars=" << cs.variable_count()
         << " rows=" << cs.row_count() << " method=" << r.method << " time=" << std::fixed << std::setprecision(3) << r.seconds
         << "s file=" << file;
    emit(line.str());
    return "cert:" + cid;
  }

  void set_current_after_close() {
    if (!st_.current) return;
    std::optional<std::size_t> n = st_.current;
    while (n && st_.node(*n).closed()) n = st_.node(*n).parent;
    st_.current = n;
  }

  void close(std::size_t id, const std::string& by) {
    ProofNode& n = st_.node(id);
    if (n.closed()) return;
    n.status = NodeStatus::Closed;
    n.closed_by = by;
    fact("closed " + n.name, by);
    if (id == 0) {
      on_base_closed(by);
      set_current_after_close();
      return;
    }
    const std::size_t p = *n.parent;
    const std::string because = "closed:" + n.name;
    switch (n.kind) {
      case NodeKind::Forced:
        close(p, because);
        break;
      case NodeKind::Hypothesis: {
        ProofNode& parent = st_.node(p);
        for (const auto& f : n.zero_on_close) {
          parent.facts.zero_variables.push_back(f);
          for (const auto& m : f.members) fact(m.name() + " = 0" + where(p), because);
        }
        for (int w : n.zero_weights_on_close) {
          parent.facts.zero_weights.insert(w);
          fact("y" + std::to_string(w) + " = 0" + where(p), because);
        }
        for (int w : n.zero_dual_on_close) {
          parent.facts.zero_dual_weights.insert(w);
          fact("mu" + std::to_string(w) + " = 0" + where(p), because);
        }
        break;
      }
      case NodeKind::Case: {
        ProofNode& parent = st_.node(p);
        for (const auto& c : n.complement_on_close) {
          if (c.kind == CountKind::Weight && c.value == 0) {
            if (c.relation == CountRelation::NotEqual) parent.facts.zero_weights.insert(c.weight);
            if (c.relation == CountRelation::Equal) parent.facts.nonzero_weights.insert(c.weight);
            SideConstraint neg = c;
            neg.relation = c.relation == CountRelation::Equal ? CountRelation::NotEqual : CountRelation::Equal;
            fact(neg.str() + where(p), because);
          }
        }
        const ProofNode& pn = st_.node(p);
        if (!pn.branches.empty() &&
            std::all_of(pn.branches.begin(), pn.branches.end(), [&](std::size_t b) { return st_.node(b).closed(); })) {
          close(p, "split:" + pn.name);
        }
        break;
      }
      case NodeKind::Base:
        break;
    }
    set_current_after_close();
  }

  void on_base_closed(const std::string& by) {
    const CodeType& t = type();
    const std::string stmt = "Nonexistence" + t.str();
    const auto id = db_.add(Fact{stmt, "proof:" + by, db_premises()});
    use_db_fact(id);
    fact(stmt, "proof:" + by);
    std::string headline = "Contradiction at base: no " + t.str() + " code";
    rep_.conclusions.push_back(headline);
  }

  // -------------------------------------------------------------------------
  // Commands

  void exec(const script::CommentCmd&) {}

  void exec(const script::TypeCmd& c) {
    if (st_.type) throw DomainError("a code type is already active; one type per run");
    CodeType t = c.type;
    t.validate();
    if (!t.even && griesmer_evenness(t)) {
      t.even = true;
      fact("every " + c.type.str() + " code is even", "rule:griesmer-evenness");
    }
    st_.type = t;
    ProofNode base;
    base.id = 0;
    base.name = "base";
    base.kind = NodeKind::Base;
    base.cfg = Configuration::base(t.n);
    st_.nodes.push_back(std::move(base));
    st_.current = 0;
    emit("NODE base opened for " + t.str());

    const CodeParams p{t.n, t.k, t.d, t.even};
    if (auto why = refute(p, db_)) {
      if (why->premise) use_db_fact(*why->premise);
      close(0, "rule:" + why->reason);
    }
  }

  void exec(const script::InferDualMinCmd& c) {
    const auto r = infer_dual_min(type(), db_);
    ProofNode& base = st_.node(0);
    const std::string stmt = "dual min >= " + std::to_string(c.value);
    if (r.dual_min >= c.value) {
      // Record everything the residual-code rules establish, which may
      // exceed the requested bound.
      for (auto id : r.premises) use_db_fact(id);
      for (const auto& s : r.steps) emit("STEP " + s);
      fact(stmt, "rule:residual-codes");
      if (r.dual_min > c.value) fact("dual min >= " + std::to_string(r.dual_min), "rule:residual-codes");
      base.facts.dual_min = std::max(base.facts.dual_min, r.dual_min);
    } else {
      axiom(stmt, "rules reach only dual min >= " + std::to_string(r.dual_min));
      warn("dual minimum " + std::to_string(c.value) + " admitted without proof");
      base.facts.dual_min = std::max(base.facts.dual_min, c.value);
    }
  }

  /// Adds `extra` to the node's system and asks for a certificate of
  /// infeasibility. Returns the provenance on success.
  std::optional<std::string> refute_with(std::size_t node, const std::function<bool(SplitSystem&)>& extra,
                                         const std::string& purpose) {
    auto br = build(node);
    if (br.is_contradiction()) return "rule:" + br.contradiction;
    if (!extra(*br.system)) return std::nullopt;
    return certify(br.system->system, node, purpose);
  }

  static void add_sum_row(SplitSystem& ss, const std::function<bool(const Multiweight&)>& pick, Relation rel,
                          std::int64_t rhs, const std::string& tag) {
    std::vector<std::int64_t> co(ss.variables.size(), 0);
    for (std::size_t j = 0; j < ss.variables.size(); ++j) co[j] = pick(ss.variables[j]) ? 1 : 0;
    ss.system.add_row(tag, std::move(co), rel, rhs);
  }

  void exec(const script::ShowCmd& c) {
    const std::size_t id = current();
    const SideConstraint& f = c.fact;
    if (f.kind != CountKind::Variable || f.relation != CountRelation::NotEqual || f.value != 0) {
      throw DomainError("show expects a statement of the form x_... != 0");
    }
    show_variable(id, f.multiweight, f.str());
  }

  /// Proves x_m != 0 at the node, falling back to the orbit sum under the
  /// node's registered automorphisms.
  void show_variable(std::size_t id, const Multiweight& m, const std::string& text) {
    const ProofNode& n = st_.node(id);
    if (m.size() != n.cfg.partition.blocks()) {
      throw DimensionError(text + " has " + std::to_string(m.size()) + " parts but the configuration has " +
                           std::to_string(n.cfg.partition.blocks()) + " blocks");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m.entries[i] < 0 || m.entries[i] > n.cfg.partition.size(i)) throw DomainError(text + " exceeds a block size");
    }
    auto br = build(id);
    if (br.is_contradiction()) {
      throw VerificationError("configuration" + where(id) + " is already impossible (" + br.contradiction + "); close it with via lp");
    }
    if (!br.system->variable_index(m)) throw VerificationError(text + where(id) + ": variable identically zero");

    auto proof = refute_with(
        id, [&](SplitSystem& ss) {
          auto j = ss.variable_index(m);
          if (!j) return false;
          add_sum_row(ss, [&](const Multiweight& v) { return v == m; }, Relation::Equal, 0, "assume");
          return true;
        },
        text);
    std::vector<Multiweight> members{m};
    if (!proof && !n.automorphisms.empty()) {
      std::vector<BlockAction> actions;
      for (const auto& g : n.automorphisms) actions.push_back(induced_block_action(n.cfg, g));
      auto orbit = orbit_sum(m, actions);
      if (orbit.size() > 1) {
        emit("NOTE retrying " + text + " with its orbit of " + std::to_string(orbit.size()) + " multiweights");
        proof = refute_with(
            id, [&](SplitSystem& ss) {
              add_sum_row(ss, [&](const Multiweight& v) { return std::find(orbit.begin(), orbit.end(), v) != orbit.end(); },
                          Relation::Equal, 0, "assume");
              return true;
            },
            text + " (orbit)");
        members = orbit;
      }
    }
    if (!proof) throw VerificationError("could not certify " + text + where(id));
    st_.node(id).facts.nonzero_variables.push_back(VariableFact{st_.node(id).cfg.partition, members});
    fact(text + (members.size() > 1 ? " up to symmetry" : "") + where(id), *proof);
  }

  void exec(const script::InferFactCmd& c) {
    const std::size_t id = current();
    const SideConstraint& f = c.fact;
    const FactSet facts = effective_facts(id);
    const CodeType& t = type();
    const std::string stmt = f.str() + where(id);
    ProofNode& n = st_.node(id);

    if (f.value != 0 || f.relation == CountRelation::AtLeast) {
      axiom(stmt, "outside the rule battery");
      warn(f.str() + " admitted as an axiom");
      return;
    }
    const bool nonzero = f.relation == CountRelation::NotEqual;

    switch (f.kind) {
      case CountKind::Weight: {
        const auto totals = admissible_totals(t, facts);
        if (!nonzero) {
          if (!totals.count(f.weight)) {
            fact(stmt, facts.zero_weights.count(f.weight) ? "known" : "rule:weight-pruning");
            n.facts.zero_weights.insert(f.weight);
            return;
          }
        } else {
          if (facts.nonzero_weights.count(f.weight)) {
            fact(stmt, "known");
            return;
          }
          if (auto w = min_weight_realized(t, facts); w && *w == f.weight) {
            n.facts.nonzero_weights.insert(f.weight);
            fact(stmt, "rule:griesmer-minimum-weight");
            return;
          }
        }
        auto proof = refute_with(
            id, [&](SplitSystem& ss) {
              auto pick = [&](const Multiweight& v) { return v.total() == f.weight; };
              if (nonzero) {
                add_sum_row(ss, pick, Relation::Equal, 0, "assume");
              } else {
                add_sum_row(ss, pick, Relation::GreaterEq, 1, "assume");
              }
              return true;
            },
            f.str());
        if (proof) {
          (nonzero ? n.facts.nonzero_weights : n.facts.zero_weights).insert(f.weight);
          fact(stmt, *proof);
          return;
        }
        (nonzero ? st_.node(id).facts.nonzero_weights : st_.node(id).facts.zero_weights).insert(f.weight);
        break;
      }
      case CountKind::Variable: {
        const Multiweight& m = f.multiweight;
        if (m.size() != n.cfg.partition.blocks()) {
          throw DimensionError(f.variable_name() + " does not match the " + std::to_string(n.cfg.partition.blocks()) +
                               "-block configuration");
        }
        const auto br = build(id);
        const bool absent = br.system && !br.system->variable_index(m);
        if (absent && nonzero) throw VerificationError(f.str() + where(id) + ": variable identically zero");
        std::optional<std::string> proof;
        if (absent) {
          proof = "rule:variable-pruning";
        } else {
          proof = refute_with(
              id, [&](SplitSystem& ss) {
                add_sum_row(ss, [&](const Multiweight& v) { return v == m; }, nonzero ? Relation::Equal : Relation::GreaterEq,
                            nonzero ? 0 : 1, "assume");
                return true;
              },
              f.str());
        }
        VariableFact vf{n.cfg.partition, {m}};
        if (proof) {
          (nonzero ? st_.node(id).facts.nonzero_variables : st_.node(id).facts.zero_variables).push_back(vf);
          fact(stmt, *proof);
          return;
        }
        (nonzero ? st_.node(id).facts.nonzero_variables : st_.node(id).facts.zero_variables).push_back(vf);
        break;
      }
      case CountKind::DualWeight: {
        if (!nonzero && (facts.zero_dual_weights.count(f.weight) || (f.weight > 0 && f.weight < facts.dual_min))) {
          n.facts.zero_dual_weights.insert(f.weight);
          fact(stmt, "known");
          return;
        }
        if (!nonzero) n.facts.zero_dual_weights.insert(f.weight);
        break;
      }
    }
    axiom(stmt, "no rule or certificate found");
    warn(f.str() + " admitted as an axiom");
  }

  /// The refinement map from a candidate parent, if the parent's
  /// configuration is implied by the child's.
  std::optional<std::vector<std::size_t>> refines(const Configuration& child, const ProofNode& parent) const {
    auto map = child.partition.refinement_map(parent.cfg.partition);
    if (!map) return std::nullopt;
    const BitMatrix sub = child.subcode_basis();
    const BitMatrix parent_sub = parent.cfg.subcode_basis();
    for (const auto& r : parent_sub.row_list()) {
      if (!sub.span_contains(r)) return std::nullopt;
    }
    const BitMatrix dual = child.dual_word_basis();
    const BitMatrix parent_dual = parent.cfg.dual_word_basis();
    for (const auto& r : parent_dual.row_list()) {
      if (!dual.span_contains(r)) return std::nullopt;
    }
    for (const auto& c : parent.cfg.constraints) {
      if (std::find(child.constraints.begin(), child.constraints.end(), c) == child.constraints.end()) return std::nullopt;
    }
    return map;
  }

  /// Block-constant words of `basis` (over `part`) outside the span of `old`.
  static std::vector<BitWord> new_words(const BitMatrix& basis, const BitMatrix& old) {
    std::vector<BitWord> out;
    Code(basis).for_each_codeword([&](const BitWord& w) {
      if (!w.is_zero() && !old.span_contains(w)) out.push_back(w);
    });
    return out;
  }

  /// Nonzero facts usable to justify a child of `id`: variable facts on the
  /// node's own partition, and y_w != 0 facts when that partition is trivial.
  std::vector<VariableFact> justifying_facts(std::size_t id) const {
    const ProofNode& n = st_.node(id);
    const FactSet f = effective_facts(id);
    std::vector<VariableFact> out;
    for (const auto& v : f.nonzero_variables) {
      if (v.partition == n.cfg.partition) out.push_back(v);
    }
    if (n.cfg.partition.blocks() == 1) {
      std::set<int> ws = f.nonzero_weights;
      for (const auto& c : n.cfg.constraints) {
        if (c.kind == CountKind::Weight && c.relation == CountRelation::NotEqual && c.value == 0) ws.insert(c.weight);
      }
      for (const auto& c : type().constraints) {
        if (c.kind == CountKind::Weight && c.relation == CountRelation::NotEqual && c.value == 0) ws.insert(c.weight);
      }
      for (int w : ws) out.push_back(VariableFact{n.cfg.partition, {Multiweight{{w}}}});
    }
    return out;
  }

  void exec(const script::ConfigCmd& c) {
    type();
    Configuration cfg = script::to_configuration(c);
    if (cfg.length() != type().n) {
      throw DimensionError("partition sums to " + std::to_string(cfg.length()) + ", expected " + std::to_string(type().n));
    }
    if (c.label && (st_.labels.count(*c.label) || *c.label == "current" || *c.label == "base")) {
      throw DomainError("label [" + *c.label + "] is already in use");
    }

    std::optional<std::size_t> parent;
    std::vector<std::size_t> map;
    for (std::optional<std::size_t> n = st_.current ? st_.current : std::optional<std::size_t>(0); n; n = st_.node(*n).parent) {
      if (auto m = refines(cfg, st_.node(*n))) {
        parent = *n;
        map = std::move(*m);
        break;
      }
    }
    if (!parent) throw DomainError("configuration does not refine the current node or any of its ancestors");
    if (st_.node(*parent).closed()) throw DomainError("parent " + st_.node(*parent).name + " is already closed");
    const ProofNode& pn = st_.node(*parent);

    // Pieces of each parent block.
    std::vector<int> pieces(pn.cfg.partition.blocks(), 0);
    for (auto b : map) ++pieces[b];
    const bool at_most_two = std::all_of(pieces.begin(), pieces.end(), [](int p) { return p <= 2; });

    const BitMatrix parent_sub = pn.cfg.subcode_basis();
    const BitMatrix parent_dual = pn.cfg.dual_word_basis();
    const std::size_t new_rows = cfg.rows.size() - parent_sub.rank();
    const std::size_t new_dual = cfg.dual_rows.size() - parent_dual.rank();
    std::vector<SideConstraint> new_constraints;
    for (const auto& sc : cfg.constraints) {
      if (std::find(pn.cfg.constraints.begin(), pn.cfg.constraints.end(), sc) == pn.cfg.constraints.end()) {
        new_constraints.push_back(sc);
      }
    }

    ProofNode node;
    node.id = st_.nodes.size();
    node.name = c.label ? *c.label : "n" + std::to_string(node.id);
    node.parent = parent;
    node.cfg = cfg;

    const auto coarse = [&](const BitWord& w) {
      return coarsen(multiweight(w, cfg.partition), map, pn.cfg.partition.blocks());
    };

    if (!new_constraints.empty()) {
      node.kind = NodeKind::Case;
      std::string a;
      for (const auto& sc : new_constraints) a += (a.empty() ? "" : ", ") + sc.str();
      node.assumption = a;
      node.complement_on_close = new_constraints;
      if (new_rows || new_dual) {
        warn("case node " + node.name + " also adds words; it is treated as a case split on " + a +
             " of a hypothesis and yields no fact about the words");
        node.complement_on_close.clear();
      }
    } else if (new_rows == 0 && new_dual == 0) {
      node.kind = NodeKind::Forced;
      node.assumption = "refinement of " + pn.name;
    } else if (new_dual == 0) {
      const auto words = new_words(cfg.subcode_basis(), parent_sub);
      const auto facts = justifying_facts(*parent);
      bool forced = false;
      if (at_most_two) {
        for (const auto& vf : facts) {
          // Every member of the fact must be realised by one of the new words.
          const bool all = std::all_of(vf.members.begin(), vf.members.end(), [&](const Multiweight& m) {
            return std::any_of(words.begin(), words.end(), [&](const BitWord& w) { return coarse(w) == m; });
          });
          if (all) {
            forced = true;
            std::string s;
            for (const auto& m : vf.members) s += (s.empty() ? "" : " | ") + m.name();
            node.assumption = "forced by " + s + " != 0";
            break;
          }
        }
      }
      if (forced) {
        node.kind = NodeKind::Forced;
      } else {
        node.kind = NodeKind::Hypothesis;
        std::set<Multiweight> assumed;
        for (const auto& w : words) assumed.insert(coarse(w));
        std::string s;
        for (const auto& m : assumed) s += (s.empty() ? "" : ", ") + m.name();
        node.assumption = "some codeword has " + s;
        if (new_rows == 1 && at_most_two) {
          node.zero_on_close.push_back(VariableFact{pn.cfg.partition, {assumed.begin(), assumed.end()}});
          if (pn.cfg.partition.blocks() == 1) {
            for (const auto& m : assumed) node.zero_weights_on_close.insert(m.entries[0]);
            node.zero_on_close.clear();
          }
        } else {
          warn("configuration " + node.name + " is not implied by " + pn.name +
               "; it is kept as a hypothesis whose closure records nothing");
        }
      }
    } else if (new_rows == 0 && new_dual == 1 && at_most_two) {
      node.kind = NodeKind::Hypothesis;
      const auto words = new_words(cfg.dual_word_basis(), parent_dual);
      std::set<Multiweight> assumed;
      for (const auto& w : words) assumed.insert(coarse(w));
      std::string s;
      for (const auto& m : assumed) s += (s.empty() ? "" : ", ") + m.name();
      node.assumption = "some dual word has " + s;
      if (pn.cfg.partition.blocks() == 1) {
        for (const auto& m : assumed) node.zero_dual_on_close.insert(m.entries[0]);
      }
    } else {
      node.kind = NodeKind::Hypothesis;
      node.assumption = "unjustified configuration";
      warn("configuration " + node.name + " is not implied by " + pn.name +
           "; it is kept as a hypothesis whose closure records nothing");
    }

    const std::size_t id = node.id;
    emit("NODE " + node.name + " " + kind_str(node.kind) + " child of " + pn.name + ": " + node.assumption);
    if (c.label) st_.labels[*c.label] = id;
    st_.node(*parent).children.push_back(id);
    st_.nodes.push_back(std::move(node));
    st_.current = id;
  }

  void exec(const script::ViaCmd& c) {
    const std::size_t target = resolve_target(c.target);
    ProofNode& t = st_.node(target);
    switch (c.method) {
      case script::ViaMethod::Lp: {
        if (!c.branches.empty()) throw DomainError("via lp takes no branches");
        if (t.closed()) throw DomainError(t.name + " is already closed");
        auto br = build(target);
        if (br.is_contradiction()) {
          close(target, "rule:" + br.contradiction);
          return;
        }
        auto proof = certify(br.system->system, target, "via lp");
        if (!proof) throw VerificationError("split LP for " + t.name + " was not certified infeasible");
        close(target, *proof);
        return;
      }
      case script::ViaMethod::VariableSplit: {
        if (c.branches.size() != 2) throw DomainError("a variable split needs exactly two branches");
        std::vector<std::size_t> bs;
        std::vector<SideConstraint> cs;
        for (const auto& l : c.branches) {
          const std::size_t b = resolve_target(l);
          const ProofNode& bn = st_.node(b);
          if (bn.parent != target || bn.kind != NodeKind::Case) {
            throw VerificationError("[" + l + "] is not a case branch of " + t.name);
          }
          std::vector<SideConstraint> extra;
          for (const auto& sc : bn.cfg.constraints) {
            if (std::find(t.cfg.constraints.begin(), t.cfg.constraints.end(), sc) == t.cfg.constraints.end()) extra.push_back(sc);
          }
          if (extra.size() != 1) throw VerificationError("[" + l + "] must add exactly one side constraint");
          bs.push_back(b);
          cs.push_back(extra[0]);
        }
        if (!cs[0].complements(cs[1])) {
          throw VerificationError(cs[0].str() + " and " + cs[1].str() + " do not split one variable");
        }
        ProofNode& tt = st_.node(target);
        tt.branches = bs;
        if (tt.status == NodeStatus::Open) tt.status = NodeStatus::Resolved;
        fact(tt.name + " splits into " + st_.node(bs[0]).name + " | " + st_.node(bs[1]).name, "rule:complementary-split " +
                                                                                                  cs[0].str() + " | " + cs[1].str());
        if (st_.node(bs[0]).closed() && st_.node(bs[1]).closed()) close(target, "split:" + tt.name);
        return;
      }
      case script::ViaMethod::Nothing: {
        const auto left = cover(target);
        std::set<std::size_t> named;
        for (const auto& l : c.branches) named.insert(resolve_target(l));
        if (left != named) {
          std::string s;
          for (auto id : left) {
            if (!named.count(id)) s += " " + st_.node(id).name;
          }
          std::string extra;
          for (auto id : named) {
            if (!left.count(id)) extra += " " + st_.node(id).name;
          }
          std::string msg = "cannot conclude " + t.name + ":";
          if (!s.empty()) msg += " open leaves" + s;
          if (!extra.empty()) msg += " named but not leaves" + extra;
          throw VerificationError(msg);
        }
        if (named.empty()) {
          close(target, "all branches closed");
          if (target != 0) rep_.conclusions.push_back("Closed " + st_.node(target).name);
          return;
        }
        std::string stmt = "Classification" + type().str() + (target == 0 ? "" : "@" + st_.node(target).name) + ":";
        std::string human;
        for (std::size_t i = 0; i < c.branches.size(); ++i) {
          stmt += (i ? " or [" : " [") + c.branches[i] + "]";
          human += (i ? " or [" : "[") + c.branches[i] + "]";
        }
        if (target == 0) {
          const auto id = db_.add(Fact{stmt, "proof:cover", db_premises()});
          use_db_fact(id);
        }
        fact(stmt, "proof:cover");
        rep_.conclusions.push_back("Every " + type().str() + " code" + (target == 0 ? "" : " at " + st_.node(target).name) +
                                   " has configuration " + human);
        return;
      }
    }
  }

  void exec(const script::KillWeightsCmd& c) {
    const std::size_t id = current();
    for (int w : c.weights) kill_weight(id, w);
  }

  void kill_weight(std::size_t id, int w) {
    const CodeType& t = type();
    const ProofNode& n = st_.node(id);
    if (n.cfg.partition.blocks() != 1 || !n.cfg.rows.empty() || !n.cfg.dual_rows.empty()) {
      throw DomainError("kill weights needs a node with the trivial configuration");
    }
    if (w < 1 || w > t.n) throw DomainError("weight " + std::to_string(w) + " out of range");
    const std::string stmt = "y" + std::to_string(w) + " = 0" + where(id);
    if (!admissible_totals(t, effective_facts(id)).count(w)) {
      st_.node(id).facts.zero_weights.insert(w);
      fact(stmt, "rule:already-excluded");
      return;
    }
    script::ConfigCmd cc;
    if (w < t.n) {
      cc.parts = {w, t.n - w};
      cc.rows = {"10"};
    } else {
      cc.parts = {t.n};
      cc.rows = {"1"};
    }
    cc.constraints = n.cfg.constraints;
    cc.groups = 3;
    st_.current = id;
    exec(cc);
    const std::size_t child = *st_.current;
    if (st_.node(child).kind != NodeKind::Hypothesis || st_.node(child).zero_weights_on_close.count(w) == 0) {
      throw DomainError("kill weights " + std::to_string(w) + ": the weight is already known to occur");
    }
    auto br = build(child);
    if (br.is_contradiction()) {
      close(child, "rule:" + br.contradiction);
    } else {
      auto proof = certify(br.system->system, child, "kill weight " + std::to_string(w));
      if (!proof) {
        st_.current = id;
        throw VerificationError("kill weights " + std::to_string(w) + " was not certified");
      }
      close(child, *proof);
    }
    st_.current = id;
  }

  void exec(const script::NoCmd& c) {
    const CodeParams target{c.n, c.k, c.d, c.even};
    const std::string stmt = nonexistence_statement(target);
    if (auto id = db_.find(stmt)) {
      use_db_fact(*id);
      fact(stmt, "known");
      rep_.conclusions.push_back("no " + target.str() + " code");
      return;
    }
    if (!c.even) {
      CodeParams even = target;
      even.even = true;
      if (auto id = db_.find(nonexistence_statement(even)); id && even_reduction(even)) {
        use_db_fact(*id);
        const auto nid = db_.add(Fact{stmt, "rule:even-extension", {*id}});
        use_db_fact(nid);
        fact(stmt, "rule:even-extension");
        rep_.conclusions.push_back("no " + target.str() + " code");
        return;
      }
    }
    throw VerificationError("no proven premise for " + stmt);
  }

  void exec(const script::AutomorphismCmd& c) {
    const std::size_t id = current();
    ProofNode& n = st_.node(id);
    Permutation g = Permutation::from_one_based(c.images);
    if (!verify_automorphism(n.cfg, g)) {
      throw VerificationError("permutation " + g.str() + " is not an automorphism of " + n.name);
    }
    fact("automorphism " + g.str() + where(id), "rule:verified");
    n.automorphisms.push_back(std::move(g));
  }

  void exec(const script::GroupSizeCmd& c) {
    const std::size_t id = current();
    const ProofNode& n = st_.node(id);
    GeneratorSet gs;
    gs.degree = static_cast<std::size_t>(n.cfg.length());
    for (const auto& g : n.automorphisms) gs.add(g);
    const auto order = gs.perms.empty() ? std::uint64_t{1} : group_order(gs);
    if (order != c.order) {
      throw VerificationError("group generated at " + n.name + " has order " + std::to_string(order) + ", not " +
                              std::to_string(c.order));
    }
    fact("group order " + std::to_string(order) + where(id), "rule:schreier-sims");
  }

  FactDatabase& db_;
  RunOptions opt_;
  RetryPolicy policy_{{}, true, 400, {}};
  ProofState st_;
  ProofReport rep_;
  std::set<std::size_t> used_db_;
  std::size_t run_axioms_ = 0;
  std::size_t cert_seq_ = 0;
  int line_ = 0;
};

inline ProofReport run_script_text(std::string_view text, FactDatabase& db, const RunOptions& options = {}) {
  Interpreter it(db, options);
  return it.run(script::parse_text(text));
}

inline ProofReport run_script(const std::string& path, FactDatabase& db, const RunOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read script '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return run_script_text(ss.str(), db, options);
}

struct CheckResult {
  std::size_t verified = 0;
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/// Re-verifies every .cert file in `dir` against its .sys file, exactly.
inline CheckResult check_certificates(const std::string& dir) {
  CheckResult out;
  std::vector<std::filesystem::path> certs;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".cert") certs.push_back(e.path());
  }
  std::sort(certs.begin(), certs.end());
  for (const auto& p : certs) {
    auto sys = p;
    sys.replace_extension(".sys");
    try {
      std::ifstream cin(p), sin(sys);
      if (!sin) throw Error("missing " + sys.string());
      const auto cf = read_certificate(cin);
      const auto cs = read_system(sin);
      if (cf.certificate.multipliers.size() != cs.row_count()) throw Error("row count mismatch");
      if (!verify_farkas(cs, cf.certificate)) throw Error("certificate does not verify");
      ++out.verified;
    } catch (const Error& e) {
      out.failures.push_back(p.filename().string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace splitlp

#endif  // SPLITLP_INTERP_HPP
