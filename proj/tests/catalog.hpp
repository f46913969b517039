#ifndef SPLITLP_TESTS_CATALOG_HPP
#define SPLITLP_TESTS_CATALOG_HPP

// The automorphism data of the bundled scripts, and a direct check of it.

#include "oracles.hpp"
#include "splitlp/script/parser.hpp"

namespace oracle {

// Automorphism lines and group size claims, with the config they follow.
struct GroupRecord {
  std::string where;
  splitlp::script::ConfigCmd config;
  std::vector<std::vector<int>> generators;  // 1-based, as written
  std::uint64_t claimed = 0;
};

inline std::vector<GroupRecord> collect(const std::string& file) {
  const auto s = splitlp::script::parse_text(read_file(std::string(SPLITLP_SCRIPTS_DIR) + "/" + file));
  std::vector<GroupRecord> out;
  GroupRecord cur;
  for (const auto& st : s.statements) {
    if (const auto* c = std::get_if<splitlp::script::ConfigCmd>(&st.command)) {
      cur = GroupRecord{};
      cur.config = *c;
      cur.where = file + ":" + std::to_string(st.line) + (c->label ? " [" + *c->label + "]" : "");
    } else if (const auto* a = std::get_if<splitlp::script::AutomorphismCmd>(&st.command)) {
      cur.generators.push_back(a->images);
    } else if (const auto* g = std::get_if<splitlp::script::GroupSizeCmd>(&st.command)) {
      cur.claimed = g->order;
      out.push_back(cur);
    }
  }
  return out;
}

inline std::vector<GroupRecord> all_records() {
  auto a = collect("classify_21_5_10.sp");
  auto b = collect("codes_24_7_10.sp");
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Expands block patterns by hand.
inline std::uint64_t expand(const std::string& pattern, const std::vector<int>& parts) {
  std::uint64_t m = 0;
  int pos = 0;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    if (pattern[b] == '1') {
      for (int i = pos; i < pos + parts[b]; ++i) m |= std::uint64_t{1} << i;
    }
    pos += parts[b];
  }
  return m;
}

inline bool preserves_config(const splitlp::script::ConfigCmd& c, const Perm& p) {
  std::vector<int> block;
  for (std::size_t b = 0; b < c.parts.size(); ++b) block.insert(block.end(), static_cast<std::size_t>(c.parts[b]), static_cast<int>(b));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      const bool same = block[i] == block[j];
      const bool same_img = block[static_cast<std::size_t>(p[i])] == block[static_cast<std::size_t>(p[j])];
      if (same != same_img) return false;
    }
    if (c.parts[static_cast<std::size_t>(block[i])] != c.parts[static_cast<std::size_t>(block[static_cast<std::size_t>(p[i])])]) return false;
  }
  for (const auto* rows : {&c.rows, &c.dual_rows}) {
    std::vector<std::uint64_t> gens;
    for (const auto& r : *rows) gens.push_back(expand(r, c.parts));
    const auto words = word_set(gens);
    for (auto w : words) {
      if (!words.count(permute_mask(w, p))) return false;
    }
  }
  return true;
}

inline Perm zero_based(const std::vector<int>& images) {
  Perm p;
  for (int x : images) p.push_back(x - 1);
  return p;
}

}  // namespace oracle

#endif  // SPLITLP_TESTS_CATALOG_HPP
