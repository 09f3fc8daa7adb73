#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rewire/qpoly.hpp"
#include "rewire/ring.hpp"

namespace rewire {

// Pearl kinds with their serialization letters.  The square is the root
// pearl every necklace carries implicitly; words list only the others.
enum class Pearl : char { Sq = 's', B = 'b', D = 'd', T = 't' };

inline char pearl_char(Pearl p) { return static_cast<char>(p); }

inline Pearl pearl_from_char(char c) {
  switch (c) {
    case 's': return Pearl::Sq;
    case 'b': return Pearl::B;
    case 'd': return Pearl::D;
    case 't': return Pearl::T;
  }
  throw std::invalid_argument(std::string("unknown pearl letter '") + c + "'");
}

struct ParseError : std::runtime_error {
  int line;
  ParseError(int l, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}
};

// Necklace weight: an exact rational, or a formal symbol indexed into the
// owning system's symbol table.
struct Weight {
  Rat value = 1;
  int symbol = -1;

  bool is_default() const { return symbol < 0 && value == 1; }
  friend bool operator==(const Weight& a, const Weight& b) {
    return a.symbol == b.symbol && (a.symbol >= 0 || a.value == b.value);
  }
};

struct Necklace {
  std::string word;  // letters b, d, t; clockwise after the implicit square
  Weight weight;
  int size = 1;  // the sigma grading; 1 everywhere in the homogeneous case

  int count(char c) const {
    int n = 0;
    for (char x : word) n += x == c;
    return n;
  }
  int n_black() const { return count('b'); }
  int n_diamond() const { return count('d'); }
  int n_triangle() const { return count('t'); }
  int n_children() const { return n_black() + n_diamond(); }

  friend bool operator==(const Necklace& a, const Necklace& b) {
    return a.word == b.word && a.weight == b.weight && a.size == b.size;
  }
};

// A necklace re-rooted at one of its non-square pearls: the original word
// plus the pearl index taken as root.  Index 0 is the square, index i >= 1
// is word[i-1].
struct RerootedNecklace {
  Necklace necklace;
  int rot;  // in [1, word.size()]
};

struct RerootSets {
  std::vector<RerootedNecklace> at_black, at_diamond, at_triangle;
};

class NecklaceSystem {
 public:
  std::string name;
  std::vector<Necklace> necklaces;
  bool regular_all = false;  // the all-words system, expanded on demand
  std::vector<std::string> symbols;

  bool sigma_trivial() const {
    for (const auto& n : necklaces)
      if (n.size != 1) return false;
    return true;
  }

  // Materialize the necklace list usable at a given pearl budget.
  std::vector<Necklace> expand(int max_pearls) const {
    if (!regular_all) return necklaces;
    std::vector<Necklace> out;
    std::string word;
    expand_words(word, max_pearls, out);
    return out;
  }

  int symbol_index(const std::string& s) {
    for (size_t i = 0; i < symbols.size(); ++i)
      if (symbols[i] == s) return static_cast<int>(i);
    symbols.push_back(s);
    return static_cast<int>(symbols.size()) - 1;
  }

 private:
  static void expand_words(std::string& word, int budget, std::vector<Necklace>& out) {
    out.push_back(Necklace{word, Weight{}, 1});
    if (budget == 0) return;
    for (char c : {'b', 'd', 't'}) {
      word.push_back(c);
      expand_words(word, budget - 1, out);
      word.pop_back();
    }
  }
};

template <class R>
inline R weight_coeff(const Weight& w) {
  if constexpr (std::is_same_v<R, MPoly>) {
    if (w.symbol >= 0) return MPoly::symbol(w.symbol);
    return MPoly(w.value);
  } else {
    if (w.symbol >= 0)
      throw std::invalid_argument("formal weight needs polynomial coefficients");
    return R(w.value);
  }
}

// ------------ system file format ------------
//
//   # comment
//   regular: all                  (declares the all-words system)
//   <word> | weight=<q> size=<n>  (suffix fields optional, any order)
//
// A word is a string over {b,d,t}; "e" (or the Greek epsilon) is the empty
// necklace.  Parsing validates well-foundedness: some necklace must be
// terminal, and a size-0 necklace must contain a diamond pearl.

inline NecklaceSystem parse_system(const std::string& text, const std::string& name = "") {
  NecklaceSystem sys;
  sys.name = name;
  bool saw_regular = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);

    if (line == "regular: all" || line == "regular:all") {
      saw_regular = true;
      continue;
    }

    std::string head = line, suffix;
    if (auto bar = line.find('|'); bar != std::string::npos) {
      head = line.substr(0, bar);
      suffix = line.substr(bar + 1);
    }
    while (!head.empty() && (head.back() == ' ' || head.back() == '\t')) head.pop_back();

    Necklace n;
    if (head == "e" || head == "\xce\xb5") {
      n.word = "";
    } else {
      for (char c : head) {
        if (c != 'b' && c != 'd' && c != 't')
          throw ParseError(lineno, std::string("bad pearl letter '") + c + "'");
      }
      n.word = head;
    }

    std::istringstream fs(suffix);
    std::string field;
    while (fs >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) throw ParseError(lineno, "expected key=value, got '" + field + "'");
      std::string key = field.substr(0, eq), val = field.substr(eq + 1);
      if (val.empty()) throw ParseError(lineno, "empty value for '" + key + "'");
      if (key == "weight") {
        bool numeric = std::isdigit(static_cast<unsigned char>(val[0])) || val[0] == '-';
        if (numeric) {
          try {
            n.weight.value = Rat(val);
            n.weight.symbol = -1;
          } catch (const std::exception&) {
            throw ParseError(lineno, "bad weight '" + val + "'");
          }
        } else {
          n.weight.symbol = sys.symbol_index(val);
        }
      } else if (key == "size") {
        try {
          n.size = std::stoi(val);
        } catch (const std::exception&) {
          throw ParseError(lineno, "bad size '" + val + "'");
        }
        if (n.size < 0) throw ParseError(lineno, "negative size");
      } else {
        throw ParseError(lineno, "unknown field '" + key + "'");
      }
    }

    if (saw_regular) throw ParseError(lineno, "necklace line in regular system");
    sys.necklaces.push_back(std::move(n));
  }

  sys.regular_all = saw_regular;
  if (!sys.regular_all) {
    if (sys.necklaces.empty()) throw ParseError(lineno, "empty system");
    bool terminal = false;
    for (const auto& n : sys.necklaces) {
      if (n.n_children() == 0) terminal = true;
      if (n.size == 0 && n.n_diamond() == 0)
        throw ParseError(lineno, "unbounded zero-size: size-0 necklace '" +
                                     (n.word.empty() ? std::string("e") : n.word) +
                                     "' has no diamond pearl");
    }
    if (!terminal) throw ParseError(lineno, "no terminal necklace");
  }
  return sys;
}

inline std::string serialize_system(const NecklaceSystem& sys) {
  std::string out;
  if (sys.regular_all) return "regular: all\n";
  for (const auto& n : sys.necklaces) {
    out += n.word.empty() ? "e" : n.word;
    std::string fields;
    if (n.weight.symbol >= 0)
      fields += " weight=" + sys.symbols[n.weight.symbol];
    else if (n.weight.value != 1)
      fields += " weight=" + to_string(n.weight.value);
    if (n.size != 1) fields += " size=" + std::to_string(n.size);
    if (!fields.empty()) out += " |" + fields;
    out += "\n";
  }
  return out;
}

// Q(v,w,u) as a polynomial; the x marker carries sigma when non-trivial.
template <class R>
inline QPoly<R> vertex_gf(const NecklaceSystem& sys, int max_pearls) {
  bool with_x = !sys.sigma_trivial();
  QPoly<R> q;
  for (const auto& n : sys.expand(max_pearls))
    q.add(n.n_black(), n.n_diamond(), n.n_triangle(), with_x ? n.size : 0,
          weight_coeff<R>(n.weight));
  return q;
}

// One rerooted copy per pearl of the requested kind; the square pearl's
// position keeps rotations distinct, so multiplicities are realized by
// listing each rotation once.
inline RerootSets reroot_sets(const NecklaceSystem& sys, int max_pearls) {
  RerootSets rs;
  for (const auto& n : sys.expand(max_pearls)) {
    for (size_t i = 0; i < n.word.size(); ++i) {
      RerootedNecklace r{n, static_cast<int>(i) + 1};
      switch (n.word[i]) {
        case 'b': rs.at_black.push_back(r); break;
        case 'd': rs.at_diamond.push_back(r); break;
        case 't': rs.at_triangle.push_back(r); break;
      }
    }
  }
  return rs;
}

// ------------ built-in systems ------------

inline NecklaceSystem builtin_lambda() {
  NecklaceSystem s = parse_system("bb\nt\nd\n");
  s.name = "lambda";
  return s;
}

inline NecklaceSystem builtin_nonseparable() {
  NecklaceSystem s = parse_system("e\nb\nd\nt\nbd\nbt\ndt\nbdt\n");
  s.name = "nonseparable";
  return s;
}

inline NecklaceSystem builtin_all() {
  NecklaceSystem s;
  s.name = "all";
  s.regular_all = true;
  return s;
}

// Q_all restricted to at most `cap` pearls per necklace, as an explicit list.
// The cap counts pearls, the implicit square included, so the words keep
// one letter fewer.
inline NecklaceSystem builtin_all_bounded(int cap) {
  NecklaceSystem s;
  s.name = "all-necklaces";
  s.necklaces = builtin_all().expand(cap - 1);
  return s;
}

inline std::optional<NecklaceSystem> builtin_system(const std::string& name) {
  if (name == "lambda") return builtin_lambda();
  if (name == "nonseparable") return builtin_nonseparable();
  if (name == "all") return builtin_all();
  if (name == "all-necklaces") return builtin_all_bounded(4);
  if (name == "parking") {
    NecklaceSystem s;
    s.name = "parking";
    s.necklaces = builtin_all().expand(2);
    return s;
  }
  return std::nullopt;
}

}  // namespace rewire
