#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rewire/verify.hpp"

namespace rewire {

// Exit codes shared by every subcommand.
namespace exit_code {
constexpr int ok = 0;
constexpr int failed_check = 1;
constexpr int usage = 2;
constexpr int ceiling = 3;
constexpr int not_nonnegative = 4;
constexpr int unbalanced = 5;
}  // namespace exit_code

namespace detail {

using Json = nlohmann::ordered_json;

// Named systems first, then a file of necklace lines.
inline NecklaceSystem load_system(const std::string& which) {
  if (auto sys = builtin_system(which)) return *sys;
  if (which == "linear-basic") return parse_system("b\nd\nt", "linear-basic");
  std::ifstream in(which);
  if (!in) throw std::invalid_argument("unknown system '" + which + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = which.substr(which.find_last_of("/\\") + 1);
  return parse_system(buf.str(), stem);
}

inline std::string read_tree_text(const std::string& path, std::istream& stdin_stream) {
  std::string text;
  if (path.empty()) {
    std::stringstream buf;
    buf << stdin_stream.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.pop_back();
  size_t lead = 0;
  while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
  return text.substr(lead);
}

inline Json checks_json(const CaseReport& rep) {
  Json arr = Json::array();
  for (const auto& c : rep.checks) arr.push_back({{"ok", c.good}, {"what", c.what}});
  return arr;
}

struct EnumerateArgs {
  std::string system;
  int size = 0;
  std::optional<int> excess;
  std::string companion;  // "", sq, black, diamond, triangle, unrooted
  int defects = 0;
  std::string format = "table";
};

inline int cmd_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.size < 0) {
    err << "size must be non-negative\n";
    return exit_code::usage;
  }
  if (a.defects < 0) {
    err << "defects must be non-negative\n";
    return exit_code::usage;
  }
  NecklaceSystem sys = load_system(a.system);
  std::vector<std::string> serials;
  if (a.companion.empty()) {
    for (const auto& t : enumerate_nonneg(sys, a.size, a.excess))
      serials.push_back(serialize_qtree(t));
  } else if (a.companion == "unrooted") {
    for (const auto& t : enumerate_companion_unrooted(sys, a.size))
      serials.push_back(serialize_unrooted(t));
  } else {
    CompanionClass cls = a.companion == "sq"        ? CompanionClass::Sq
                         : a.companion == "black"   ? CompanionClass::B
                         : a.companion == "diamond" ? CompanionClass::D
                                                    : CompanionClass::T;
    for (const auto& t : enumerate_companion(sys, a.size, cls, a.defects))
      serials.push_back(serialize_companion(t));
  }
  if (a.format == "dump") {
    Json doc{{"schema", "v1"}, {"command", "enumerate"}, {"system", sys.name}, {"size", a.size}};
    doc["excess"] = a.excess ? Json(*a.excess) : Json(nullptr);
    doc["companion"] = a.companion.empty() ? Json(nullptr) : Json(a.companion);
    doc["defects"] = a.companion.empty() || a.companion == "unrooted" ? Json(nullptr) : Json(a.defects);
    doc["trees"] = serials;
    doc["count"] = serials.size();
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& s : serials) out << s << "\n";
    out << "count: " << serials.size() << "\n";
  }
  return exit_code::ok;
}

struct RewireArgs {
  std::string system;
  std::string input;  // empty means standard input
  bool invert = false;
  std::string format = "table";
};

inline int cmd_rewire(const RewireArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  NecklaceSystem sys = load_system(a.system);
  std::string text = read_tree_text(a.input, in);
  if (a.invert) {
    PlaneTree comp = parse_companion(text, sys);
    PlaneTree tree;
    try {
      tree = unrewire_tree(comp);
    } catch (const DomainError& e) {
      err << e.what() << "\n";
      return exit_code::unbalanced;
    }
    int e = excess(tree);
    if (a.format == "dump") {
      Json doc{{"schema", "v1"},        {"command", "rewire"},
               {"system", sys.name},    {"invert", true},
               {"input", serialize_companion(comp)}, {"output", serialize_qtree(tree)},
               {"excess", e}};
      out << doc.dump(2) << "\n";
    } else {
      out << serialize_qtree(tree) << "\n";
      out << "excess: " << e << "\n";
    }
    return exit_code::ok;
  }
  PlaneTree tree = parse_qtree(text, sys);
  if (!is_nonnegative(tree)) {
    err << "not non-negative\n";
    return exit_code::not_nonnegative;
  }
  PlaneTree comp = rewire_tree(tree);
  DefectReport dr = classify_defects(comp);
  bool bal = is_balanced(comp);
  if (a.format == "dump") {
    Json doc{{"schema", "v1"},     {"command", "rewire"},
             {"system", sys.name}, {"invert", false},
             {"input", serialize_qtree(tree)}, {"output", serialize_companion(comp)},
             {"balanced", bal},    {"internal", dr.internal.size()},
             {"external", dr.external.size()}};
    out << doc.dump(2) << "\n";
  } else {
    out << serialize_companion(comp) << "\n";
    out << "balanced: " << (bal ? "yes" : "no") << ", defects: internal=" << dr.internal.size()
        << " external=" << dr.external.size() << "\n";
  }
  return exit_code::ok;
}

struct VerifyArgs {
  std::string system;
  int max_size = 6;
  int excess_cap = 2;
  std::string format = "table";
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.max_size < 1) {
    err << "max size must be at least 1\n";
    return exit_code::usage;
  }
  if (a.excess_cap < 0) {
    err << "excess cap must be non-negative\n";
    return exit_code::usage;
  }
  NecklaceSystem sys = load_system(a.system);
  CaseReport rep = run_verify(sys, a.max_size, a.excess_cap);
  if (a.format == "dump") {
    Json doc{{"schema", "v1"},     {"command", "verify"},
             {"system", sys.name}, {"max_size", a.max_size},
             {"checks", checks_json(rep)}, {"ok", rep.ok()}};
    out << doc.dump(2) << "\n";
  } else {
    out << rep.str();
  }
  return rep.ok() ? exit_code::ok : exit_code::failed_check;
}

struct SeriesArgs {
  std::string system;
  int order = 8;
  std::string which;  // empty means all
  std::string format = "table";
};

inline std::vector<std::string> series_lines(const TSeries<Rat>& s) {
  std::vector<std::string> lines;
  for (int n = 0; n <= s.order; ++n) lines.push_back(s.c[n].str("u"));
  return lines;
}

inline int cmd_series(const SeriesArgs& a, std::ostream& out, std::ostream& err) {
  if (a.order < 1) {
    err << "order must be at least 1\n";
    return exit_code::usage;
  }
  NecklaceSystem sys = load_system(a.system);
  if (sys.regular_all) {
    err << "the all-words system has infinitely many necklaces; use all-necklaces\n";
    return exit_code::usage;
  }
  QPoly<Rat> q = vertex_gf<Rat>(sys, 0);
  std::vector<std::pair<std::string, TSeries<Rat>>> blocks;
  if (q.uses_x()) {
    if (a.which == "Cstar") {
      err << "the star series is not defined for graded systems\n";
      return exit_code::usage;
    }
    InhomSolution<Rat> s = solve_inhomogeneous(q, a.order);
    blocks = {{"F", s.F},           {"f", s.f},           {"Csq", s.square},
              {"Cb", s.black},      {"Cd", s.diamond},    {"Ct", s.triangle}};
  } else {
    TSeries<Rat> F = solve_catalytic(q, a.order);
    CompanionSolution<Rat> c = solve_companion_system(q, a.order);
    blocks = {{"F", F},        {"f", c.f},        {"Csq", c.square}, {"Cb", c.black},
              {"Cd", c.diamond}, {"Ct", c.triangle}, {"Cstar", c.star}};
  }
  if (!a.which.empty()) {
    auto it = std::find_if(blocks.begin(), blocks.end(),
                           [&](const auto& b) { return b.first == a.which; });
    blocks = {*it};
  }
  if (a.format == "dump") {
    Json doc{{"schema", "v1"}, {"command", "series"}, {"system", sys.name}, {"order", a.order}};
    Json series = Json::object();
    for (const auto& [name, s] : blocks) series[name] = series_lines(s);
    doc["series"] = series;
    out << doc.dump(2) << "\n";
  } else if (blocks.size() == 1) {
    out << blocks[0].second.str();
  } else {
    for (const auto& [name, s] : blocks) {
      out << name << ":\n";
      std::istringstream lines(s.str());
      std::string line;
      while (std::getline(lines, line)) out << "  " << line << "\n";
    }
  }
  return exit_code::ok;
}

struct CasebookArgs {
  std::vector<std::string> cases;
  std::string format = "table";
};

inline int cmd_casebook(const CasebookArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names = a.cases.empty() ? case_names() : a.cases;
  std::vector<std::string> known = case_names();
  for (const auto& n : names)
    if (std::find(known.begin(), known.end(), n) == known.end()) {
      err << "unknown case '" << n << "'\n";
      return exit_code::usage;
    }
  std::vector<CaseReport> reps;
  for (const auto& n : names) reps.push_back(run_case(n));
  bool all_ok = std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.ok(); });
  if (a.format == "dump") {
    Json arr = Json::array();
    for (const auto& r : reps)
      arr.push_back({{"name", r.name}, {"ok", r.ok()}, {"checks", checks_json(r)}});
    Json doc{{"schema", "v1"}, {"command", "casebook"}, {"cases", arr}, {"ok", all_ok}};
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& r : reps) out << r.str() << "\n";
  }
  return all_ok ? exit_code::ok : exit_code::failed_check;
}

}  // namespace detail

// Parse and run one invocation; streams are injected so tests can run
// the whole front end in-process.
inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"necklace tree rewiring toolkit"};
  app.require_subcommand(1);
  static const std::vector<std::string> formats{"table", "dump"};
  static const std::vector<std::string> classes{"sq", "black", "diamond", "triangle", "unrooted"};
  static const std::vector<std::string> which_names{"F", "f", "Csq", "Cb", "Cd", "Ct", "Cstar"};

  detail::EnumerateArgs en;
  CLI::App* c_en = app.add_subcommand("enumerate", "list trees of a given size");
  c_en->add_option("--system", en.system, "system name or file")->required();
  c_en->add_option("--size", en.size, "number of vertices")->required();
  c_en->add_option("--excess", en.excess, "restrict to one excess");
  c_en->add_option("--companion", en.companion, "companion class instead of trees")
      ->check(CLI::IsMember(classes));
  c_en->add_option("--defects", en.defects, "defect count for companion classes");
  c_en->add_option("--format", en.format, "output format")->check(CLI::IsMember(formats));

  detail::RewireArgs rw;
  CLI::App* c_rw = app.add_subcommand("rewire", "map a tree to its companion");
  c_rw->add_option("--system", rw.system, "system name or file")->required();
  c_rw->add_option("input", rw.input, "tree file (standard input when absent)");
  c_rw->add_flag("--invert", rw.invert, "map a companion back to its tree");
  c_rw->add_option("--format", rw.format, "output format")->check(CLI::IsMember(formats));

  detail::VerifyArgs vf;
  CLI::App* c_vf = app.add_subcommand("verify", "run the structural identities");
  c_vf->add_option("--system", vf.system, "system name or file")->required();
  c_vf->add_option("--max-size", vf.max_size, "largest size checked");
  c_vf->add_option("--excess-cap", vf.excess_cap, "largest excess checked");
  c_vf->add_option("--format", vf.format, "output format")->check(CLI::IsMember(formats));

  detail::SeriesArgs se;
  CLI::App* c_se = app.add_subcommand("series", "print the generating series");
  c_se->add_option("--system", se.system, "system name or file")->required();
  c_se->add_option("--order", se.order, "truncation order");
  c_se->add_option("--which", se.which, "single series to print")->check(CLI::IsMember(which_names));
  c_se->add_option("--format", se.format, "output format")->check(CLI::IsMember(formats));

  detail::CasebookArgs cb;
  CLI::App* c_cb = app.add_subcommand("casebook", "run the bundled example systems");
  c_cb->add_option("cases", cb.cases, "case names (all when absent)");
  c_cb->add_option("--format", cb.format, "output format")->check(CLI::IsMember(formats));

  app.add_flag("--seedless", "reserved; no randomness exists");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (c_en->parsed()) return detail::cmd_enumerate(en, out, err);
    if (c_rw->parsed()) return detail::cmd_rewire(rw, in, out, err);
    if (c_vf->parsed()) return detail::cmd_verify(vf, out, err);
    if (c_se->parsed()) return detail::cmd_series(se, out, err);
    if (c_cb->parsed()) return detail::cmd_casebook(cb, out, err);
    err << "no subcommand\n";
    return exit_code::usage;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return exit_code::usage;
  } catch (const ResourceCeiling& e) {
    err << e.what() << "\n";
    return exit_code::ceiling;
  } catch (const rewire::ParseError& e) {
    err << e.what() << "\n";
    return exit_code::usage;
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return exit_code::usage;
  }
}

}  // namespace rewire
