#ifndef SPLITLP_SCRIPT_AST_HPP
#define SPLITLP_SCRIPT_AST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "splitlp/model.hpp"

namespace splitlp::script {

struct TypeCmd {
  CodeType type;
  friend bool operator==(const TypeCmd& a, const TypeCmd& b) {
    return a.type.n == b.type.n && a.type.k == b.type.k && a.type.d == b.type.d && a.type.even == b.type.even &&
           a.type.constraints == b.type.constraints;
  }
};

struct InferDualMinCmd {
  int value = 1;
  friend bool operator==(const InferDualMinCmd&, const InferDualMinCmd&) = default;
};

/// infer y20 = 0; infer y10 != 0; infer x0022222 != 0;
struct InferFactCmd {
  SideConstraint fact;
  friend bool operator==(const InferFactCmd&, const InferFactCmd&) = default;
};

/// show x_20 != 0;
struct ShowCmd {
  SideConstraint fact;
  friend bool operator==(const ShowCmd&, const ShowCmd&) = default;
};

struct ConfigCmd {
  std::optional<std::string> label;
  std::vector<int> parts;
  std::vector<std::string> rows;
  std::vector<std::string> dual_rows;
  std::vector<SideConstraint> constraints;
  int groups = 1;  // number of brace groups as written (1..3)
  friend bool operator==(const ConfigCmd&, const ConfigCmd&) = default;
};

enum class ViaMethod { Lp, Nothing, VariableSplit };

struct ViaCmd {
  ViaMethod method = ViaMethod::Lp;
  std::string target;                 // "current", "base" or a label
  std::vector<std::string> branches;  // labels after '=', joined by "or"
  friend bool operator==(const ViaCmd&, const ViaCmd&) = default;
};

struct KillWeightsCmd {
  std::vector<int> weights;
  friend bool operator==(const KillWeightsCmd&, const KillWeightsCmd&) = default;
};

struct NoCmd {
  int n = 0, k = 0, d = 0;
  bool even = false;
  friend bool operator==(const NoCmd&, const NoCmd&) = default;
};

/// 1-based image list, as written.
struct AutomorphismCmd {
  std::vector<int> images;
  friend bool operator==(const AutomorphismCmd&, const AutomorphismCmd&) = default;
};

struct GroupSizeCmd {
  std::uint64_t order = 1;
  friend bool operator==(const GroupSizeCmd&, const GroupSizeCmd&) = default;
};

struct CommentCmd {
  std::string text;  // between "(*" and "*)"
  bool terminated = true;
  friend bool operator==(const CommentCmd&, const CommentCmd&) = default;
};

using Command = std::variant<TypeCmd, InferDualMinCmd, InferFactCmd, ShowCmd, ConfigCmd, ViaCmd, KillWeightsCmd, NoCmd,
                             AutomorphismCmd, GroupSizeCmd, CommentCmd>;

struct Statement {
  Command command;
  int line = 0;
  friend bool operator==(const Statement& a, const Statement& b) { return a.command == b.command; }
};

struct Script {
  std::vector<Statement> statements;
  friend bool operator==(const Script&, const Script&) = default;
};

}  // namespace splitlp::script

#endif  // SPLITLP_SCRIPT_AST_HPP
