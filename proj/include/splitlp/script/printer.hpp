#ifndef SPLITLP_SCRIPT_PRINTER_HPP
#define SPLITLP_SCRIPT_PRINTER_HPP

#include <string>
#include <type_traits>
#include <variant>

#include "splitlp/script/ast.hpp"

namespace splitlp::script {

namespace detail {

template <class T>
std::string join(const std::vector<T>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    if constexpr (std::is_same_v<T, std::string>) {
      s += v[i];
    } else {
      s += std::to_string(v[i]);
    }
  }
  return s;
}

inline std::string constraint_group(const std::vector<SideConstraint>& cs) {
  if (cs.empty()) return "{ }";
  std::string s = "{";
  for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? ", " : "") + cs[i].str();
  return s + "}";
}

inline std::string pattern_group(const std::vector<std::string>& rows) {
  if (rows.empty()) return "{ }";
  return "{" + join(rows, ",") + "}";
}

inline std::string params(int n, int k, int d, bool even) {
  return "[" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) + (even ? "_2" : "") + "]";
}

}  // namespace detail

/// Canonical text of one command, including its terminator.
inline std::string print_command(const Command& cmd) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TypeCmd>) {
          std::string s = "type " + detail::params(c.type.n, c.type.k, c.type.d, c.type.even);
          if (!c.type.constraints.empty()) s += detail::constraint_group(c.type.constraints);
          return s + ";";
        } else if constexpr (std::is_same_v<T, InferDualMinCmd>) {
          return "infer dual min >= " + std::to_string(c.value) + ";";
        } else if constexpr (std::is_same_v<T, InferFactCmd>) {
          return "infer " + c.fact.str() + ";";
        } else if constexpr (std::is_same_v<T, ShowCmd>) {
          return "show " + c.fact.str() + ";";
        } else if constexpr (std::is_same_v<T, ConfigCmd>) {
          std::string s = c.label ? "[" + *c.label + "] " : "";
          s += "config " + detail::join(c.parts, ",") + " : " + detail::pattern_group(c.rows);
          if (c.groups >= 2) s += " : " + detail::pattern_group(c.dual_rows);
          if (c.groups >= 3) s += " : " + detail::constraint_group(c.constraints);
          return s + ";";
        } else if constexpr (std::is_same_v<T, ViaCmd>) {
          const char* m = c.method == ViaMethod::Lp ? "lp" : c.method == ViaMethod::Nothing ? "nothing" : "variable split";
          std::string s = std::string("via ") + m + " [" + c.target + "] =";
          for (std::size_t i = 0; i < c.branches.size(); ++i) s += (i ? " or [" : " [") + c.branches[i] + "]";
          return s + " ;";
        } else if constexpr (std::is_same_v<T, KillWeightsCmd>) {
          return "kill weights " + detail::join(c.weights, ",") + ";";
        } else if constexpr (std::is_same_v<T, NoCmd>) {
          return "no " + detail::params(c.n, c.k, c.d, c.even) + ";";
        } else if constexpr (std::is_same_v<T, AutomorphismCmd>) {
          return "automorphism " + detail::join(c.images, ",") + ";";
        } else if constexpr (std::is_same_v<T, GroupSizeCmd>) {
          return "group size = " + std::to_string(c.order) + ";";
        } else {
          return "(*" + c.text + "*)" + (c.terminated ? ";" : "");
        }
      },
      cmd);
}

inline std::string print_script(const Script& s) {
  std::string out;
  for (const auto& st : s.statements) out += print_command(st.command) + "\n";
  return out;
}

}  // namespace splitlp::script

#endif  // SPLITLP_SCRIPT_PRINTER_HPP
