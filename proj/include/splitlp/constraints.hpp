#ifndef SPLITLP_CONSTRAINTS_HPP
#define SPLITLP_CONSTRAINTS_HPP

#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "splitlp/error.hpp"

namespace splitlp {

enum class Relation { GreaterEq, Equal };

inline const char* relation_str(Relation r) { return r == Relation::Equal ? "=" : ">="; }

/// coeffs . x  (>= | =)  rhs, over exact integers.
struct ConstraintRow {
  std::string tag;
  std::vector<std::int64_t> coeffs;
  Relation relation = Relation::GreaterEq;
  std::int64_t rhs = 0;

  bool is_zero() const {
    for (auto c : coeffs) {
      if (c != 0) return false;
    }
    return true;
  }

  /// A plain bound x_j >= 0, implied by nonnegativity of the variables.
  bool is_nonnegativity() const {
    if (relation != Relation::GreaterEq || rhs != 0) return false;
    int nonzero = 0;
    for (auto c : coeffs) {
      if (c == 0) continue;
      if (c < 0) return false;
      ++nonzero;
    }
    return nonzero == 1;
  }
};

/// Linear system over named nonnegative variables. Nonnegativity is stated
/// explicitly as rows so that certificates are pure row combinations.
struct ConstraintSystem {
  std::vector<std::string> variables;
  std::vector<ConstraintRow> rows;

  std::size_t variable_count() const noexcept { return variables.size(); }
  std::size_t row_count() const noexcept { return rows.size(); }

  std::size_t add_row(std::string tag, std::vector<std::int64_t> coeffs, Relation rel, std::int64_t rhs) {
    if (coeffs.size() != variables.size()) throw DimensionError("constraint row width does not match variable count");
    rows.push_back(ConstraintRow{std::move(tag), std::move(coeffs), rel, rhs});
    return rows.size() - 1;
  }

  /// Adds x_j >= 0 for every variable that has no such row yet.
  void add_nonnegativity() {
    std::vector<char> has(variables.size(), 0);
    for (const auto& r : rows) {
      if (!r.is_nonnegativity()) continue;
      for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
        if (r.coeffs[j] != 0) has[j] = 1;
      }
    }
    for (std::size_t j = 0; j < variables.size(); ++j) {
      if (has[j]) continue;
      std::vector<std::int64_t> c(variables.size(), 0);
      c[j] = 1;
      add_row("nonneg", std::move(c), Relation::GreaterEq, 0);
    }
  }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t j = 0; j < variables.size(); ++j) {
      if (variables[j] == name) return j;
    }
    return variables.size();
  }
};

/// Text form:
///   SYSTEM vars=<n> rows=<m>
///   VARS <name> <name> ...
///   <tag> <c1> ... <cn> <rel> <rhs>     (one line per row)
///   END
inline void write_system(std::ostream& out, const ConstraintSystem& cs) {
  out << "SYSTEM vars=" << cs.variables.size() << " rows=" << cs.rows.size() << "\n";
  out << "VARS";
  for (const auto& v : cs.variables) out << ' ' << v;
  out << "\n";
  for (const auto& r : cs.rows) {
    out << r.tag;
    for (auto c : r.coeffs) out << ' ' << c;
    out << ' ' << relation_str(r.relation) << ' ' << r.rhs << "\n";
  }
  out << "END\n";
}

inline std::string system_to_string(const ConstraintSystem& cs) {
  std::ostringstream os;
  write_system(os, cs);
  return os.str();
}

inline ConstraintSystem read_system(std::istream& in) {
  ConstraintSystem cs;
  std::string line;
  std::size_t nvars = 0, nrows = 0;
  if (!std::getline(in, line) || std::sscanf(line.c_str(), "SYSTEM vars=%zu rows=%zu", &nvars, &nrows) != 2) {
    throw ParseError("system file: missing SYSTEM header");
  }
  if (!std::getline(in, line) || line.rfind("VARS", 0) != 0) throw ParseError("system file: missing VARS line");
  {
    std::istringstream vs(line.substr(4));
    std::string name;
    while (vs >> name) cs.variables.push_back(name);
  }
  if (cs.variables.size() != nvars) throw ParseError("system file: variable count mismatch");
  for (std::size_t i = 0; i < nrows; ++i) {
    if (!std::getline(in, line)) throw ParseError("system file: truncated");
    std::istringstream rs(line);
    ConstraintRow row;
    rs >> row.tag;
    row.coeffs.resize(nvars);
    for (auto& c : row.coeffs) {
      if (!(rs >> c)) throw ParseError("system file: bad coefficient on row " + std::to_string(i));
    }
    std::string rel;
    rs >> rel;
    if (rel == ">=") {
      row.relation = Relation::GreaterEq;
    } else if (rel == "=") {
      row.relation = Relation::Equal;
    } else {
      throw ParseError("system file: bad relation '" + rel + "'");
    }
    if (!(rs >> row.rhs)) throw ParseError("system file: bad rhs on row " + std::to_string(i));
    cs.rows.push_back(std::move(row));
  }
  if (!std::getline(in, line) || line != "END") throw ParseError("system file: missing END");
  return cs;
}

}  // namespace splitlp

#endif  // SPLITLP_CONSTRAINTS_HPP
