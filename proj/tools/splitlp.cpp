// Command-line front end: run scripts, re-check certificates, search for
// automorphisms, run extension searches and manage fact files.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "splitlp/extend.hpp"
#include "splitlp/groups.hpp"
#include "splitlp/interp.hpp"

namespace {

using namespace splitlp;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// The last config command in a script-syntax file.
Configuration read_config(const std::string& path) {
  const auto s = script::parse_text(slurp(path));
  const script::ConfigCmd* last = nullptr;
  for (const auto& st : s.statements) {
    if (const auto* c = std::get_if<script::ConfigCmd>(&st.command)) last = c;
  }
  if (!last) throw Error("no config command in '" + path + "'");
  return script::to_configuration(*last);
}

int cmd_run(const std::string& script_path, const std::string& facts_path, bool update_facts, RunOptions opt) {
  FactDatabase db;
  if (!facts_path.empty() && std::filesystem::exists(facts_path)) db.load_file(facts_path);
  opt.log = &std::cout;
  Interpreter interp(db, opt);
  const auto report = interp.run(script::parse_text(slurp(script_path)));
  std::cout << report.summary();
  if (update_facts) {
    if (facts_path.empty()) throw Error("--update-facts needs --facts");
    db.save_file(facts_path);
  }
  return report.success() ? 0 : 1;
}

int cmd_check(const std::string& dir) {
  const auto r = check_certificates(dir);
  for (const auto& f : r.failures) std::cout << "FAIL " << f << "\n";
  std::cout << "verified " << r.verified << ", failed " << r.failures.size() << "\n";
  return r.ok() && r.verified > 0 ? 0 : 1;
}

int cmd_search(const std::string& path, const SearchOptions& opt) {
  const Configuration cfg = read_config(path);
  SearchStats stats;
  const auto found = stochastic_automorphism_search(cfg, opt, &stats);
  std::size_t nontrivial = 0;
  for (const auto& g : found) {
    if (g == Permutation::identity(g.degree())) continue;
    ++nontrivial;
    std::cout << "automorphism " << g.str() << ";\n";
  }
  std::cout << "(* " << nontrivial << " non-identity automorphisms after " << stats.iterations << " iterations, "
            << stats.restarts << " restarts *);\n";
  return nontrivial > 0 ? 0 : 1;
}

int cmd_extend(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  const auto problem = read_extension_problem(in);
  const auto result = run_extension_search(problem);
  if (!result.full_group) std::cout << "NOTE group closure capped; minimality uses generators only\n";
  std::cout << result.transcript;
  return 0;
}

int cmd_facts_list(const std::string& path) {
  FactDatabase db;
  db.load_file(path);
  for (std::size_t i = 1; i <= db.size(); ++i) std::cout << "#" << i << " " << FactDatabase::format(db.at(i)) << "\n";
  std::cout << db.size() << " facts, " << db.axiom_count() << " axioms\n";
  return 0;
}

int cmd_facts_add(const std::string& path, const std::string& statement, const std::string& by) {
  FactDatabase db;
  if (std::filesystem::exists(path)) db.load_file(path);
  const auto before = db.size();
  const auto id = db.add(Fact{statement, by, {}});
  db.save_file(path);
  std::cout << (db.size() > before ? "added #" : "already present as #") << id << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split linear programming prover for binary linear codes"};
  app.require_subcommand(1);

  RunOptions run_opt;
  std::string script_path, facts_path, certs_dir;
  bool update_facts = false;
  auto* run = app.add_subcommand("run", "execute a proof script");
  run->add_option("script", script_path, "script file")->required()->check(CLI::ExistingFile);
  run->add_option("--facts", facts_path, "fact database to load");
  run->add_flag("--update-facts", update_facts, "write new facts back to the --facts file");
  run->add_option("--certs", certs_dir, "directory for certificate and system files");
  run->add_option("--seed", run_opt.seed, "seed for randomized steps");
  run->add_option("--time-limit", run_opt.time_limit_seconds, "seconds per LP solve (0 = unlimited)");
  run->add_option("--max-denominator", run_opt.max_denominator, "largest denominator tried when rounding multipliers")
      ->check(CLI::PositiveNumber);
  run->add_flag("--continue-on-error", run_opt.continue_on_error, "keep going after a failed command");

  std::string check_dir;
  auto* check = app.add_subcommand("check", "re-verify certificates exactly");
  check->add_option("dir", check_dir, "certificate directory")->required()->check(CLI::ExistingDirectory);

  std::string config_path;
  SearchOptions search_opt;
  auto* search = app.add_subcommand("search-aut", "stochastic automorphism search on a configuration");
  search->add_option("config", config_path, "file containing a config command")->required()->check(CLI::ExistingFile);
  search->add_option("--iters", search_opt.iterations, "iterations per restart");
  search->add_option("--restarts", search_opt.restarts, "number of restarts");
  search->add_option("--seed", search_opt.seed, "random seed");

  std::string problem_path;
  auto* extend = app.add_subcommand("extend", "isomorph-free extension search");
  extend->add_option("problem", problem_path, "problem file")->required()->check(CLI::ExistingFile);

  auto* facts = app.add_subcommand("facts", "inspect or extend a fact database");
  facts->require_subcommand(1);
  std::string db_path, statement, source = "axiom";
  auto* list = facts->add_subcommand("list", "print all facts");
  list->add_option("file", db_path, "fact file")->required()->check(CLI::ExistingFile);
  auto* add = facts->add_subcommand("add", "append a fact");
  add->add_option("file", db_path, "fact file")->required();
  add->add_option("statement", statement, "statement, e.g. Nonexistence[25,8,10]")->required();
  add->add_option("--by", source, "justification (default: axiom)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (!certs_dir.empty()) run_opt.certs_dir = certs_dir;
      return cmd_run(script_path, facts_path, update_facts, run_opt);
    }
    if (*check) return cmd_check(check_dir);
    if (*search) return cmd_search(config_path, search_opt);
    if (*extend) return cmd_extend(problem_path);
    if (*list) return cmd_facts_list(db_path);
    if (*add) return cmd_facts_add(db_path, statement, source);
  } catch (const splitlp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
