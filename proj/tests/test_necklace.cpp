#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rewire/necklace.hpp"

using namespace rewire;

TEST_CASE("parse a plain system") {
  NecklaceSystem sys = parse_system("# binary with buds\nbb\nt\nd\n", "lambda");
  REQUIRE(sys.necklaces.size() == 3);
  CHECK(sys.necklaces[0].word == "bb");
  CHECK(sys.necklaces[0].size == 1);
  CHECK(sys.necklaces[0].weight.is_default());
  CHECK(sys.sigma_trivial());
  CHECK(!sys.regular_all);
}

TEST_CASE("parse weights and sizes") {
  NecklaceSystem sys = parse_system("bd | weight=3/2\nt | size=2\nd\ne | size=1");
  CHECK(sys.necklaces[0].weight.value == Rat(3, 2));
  CHECK(sys.necklaces[1].size == 2);
  CHECK(sys.necklaces[3].word.empty());
  CHECK(!sys.sigma_trivial());
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH(parse_system("bb\nbq\n"), "line 2: bad pearl letter 'q'");
  CHECK_THROWS_WITH(parse_system("t | size=-1\n"), "line 1: negative size");
  CHECK_THROWS_WITH(parse_system("t | flavor=3\n"), "line 1: unknown field 'flavor'");
  CHECK_THROWS_WITH(parse_system("t | weight\n"), "line 1: expected key=value, got 'weight'");
  CHECK_THROWS_WITH(parse_system("regular: all\nbb\n"),
                    "line 2: necklace line in regular system");
  CHECK_THROWS_WITH(parse_system("# nothing\n"), "line 1: empty system");
  CHECK_THROWS_WITH(parse_system("b | size=0\n"),
                    "line 1: unbounded zero-size: size-0 necklace 'b' has no diamond pearl");
  CHECK_THROWS_WITH(parse_system("bd\n"), "line 1: no terminal necklace");
}

TEST_CASE("serialization round-trips") {
  NecklaceSystem sys = parse_system("bb\nt | weight=2 size=3\nd\n");
  std::string text = serialize_system(sys);
  NecklaceSystem again = parse_system(text);
  REQUIRE(again.necklaces.size() == sys.necklaces.size());
  for (size_t i = 0; i < sys.necklaces.size(); ++i) CHECK(again.necklaces[i] == sys.necklaces[i]);
  CHECK(serialize_system(parse_system("regular: all\n")) == "regular: all\n");
}

TEST_CASE("builtin systems") {
  CHECK(builtin_lambda().necklaces.size() == 3);
  CHECK(builtin_nonseparable().necklaces.size() == 8);
  CHECK(builtin_all().regular_all);
  CHECK(builtin_system("lambda").has_value());
  CHECK(builtin_system("nonseparable").has_value());
  CHECK(!builtin_system("no-such").has_value());
}

TEST_CASE("regular expansion enumerates words by length") {
  NecklaceSystem all = builtin_all();
  auto necks = all.expand(2);
  // e, b, d, t, and 9 two-letter words
  REQUIRE(necks.size() == 13);
  std::set<std::string> words;
  for (const auto& n : necks) words.insert(n.word);
  CHECK(words.count(""));
  CHECK(words.count("bd"));
  CHECK(words.count("tt"));
  CHECK(necks.front().word.empty());
}

TEST_CASE("vertex generating polynomial") {
  CHECK(vertex_gf<Rat>(builtin_lambda(), 8).str() == "v^2 + w + u");
  QPoly<Rat> ns = vertex_gf<Rat>(builtin_nonseparable(), 8);
  CHECK(ns.terms().size() == 8);
  // (1+v)(1+w)(1+u) expanded
  QPoly<Rat> prod = QPoly<Rat>::monomial(0, 0, 0, 0, Rat(1));
  QPoly<Rat> f = prod;
  f += QPoly<Rat>::monomial(1, 0, 0, 0, Rat(1));
  QPoly<Rat> g = prod;
  g += QPoly<Rat>::monomial(0, 1, 0, 0, Rat(1));
  QPoly<Rat> h = prod;
  h += QPoly<Rat>::monomial(0, 0, 1, 0, Rat(1));
  CHECK(f * g * h == ns);
}

TEST_CASE("weighted and sized vertex polynomial") {
  NecklaceSystem sys = parse_system("bb | weight=5\nt\nd | size=2\n");
  QPoly<Rat> q = vertex_gf<Rat>(sys, 8);
  // size enters through x when sigma is non-trivial
  CHECK(q.uses_x());
  QPoly<Rat> want = QPoly<Rat>::monomial(2, 0, 0, 1, Rat(5));
  want += QPoly<Rat>::monomial(0, 0, 1, 1, Rat(1));
  want += QPoly<Rat>::monomial(0, 1, 0, 2, Rat(1));
  CHECK(q == want);
}

TEST_CASE("formal weights need a polynomial ring") {
  NecklaceSystem sys = parse_system("bb | weight=a\nt\nd\n");
  CHECK(sys.symbols == std::vector<std::string>{"a"});
  CHECK_THROWS_WITH(vertex_gf<Rat>(sys, 4), "formal weight needs polynomial coefficients");
  QPoly<MPoly> q = vertex_gf<MPoly>(sys, 4);
  CHECK(q.terms().size() == 3);
}

TEST_CASE("rerooting sets split by pearl kind") {
  RerootSets rs = reroot_sets(builtin_lambda(), 8);
  REQUIRE(rs.at_black.size() == 2);  // both pearls of bb
  REQUIRE(rs.at_diamond.size() == 1);
  REQUIRE(rs.at_triangle.size() == 1);
  CHECK(rs.at_black[0].necklace.word == "bb");
  CHECK(rs.at_black[0].rot != rs.at_black[1].rot);
  CHECK(rs.at_diamond[0].necklace.word == "d");
  CHECK(rs.at_triangle[0].necklace.word == "t");

  RerootSets ns = reroot_sets(builtin_nonseparable(), 8);
  // one entry per pearl occurrence across the eight words
  CHECK(ns.at_black.size() == 4);
  CHECK(ns.at_diamond.size() == 4);
  CHECK(ns.at_triangle.size() == 4);
}
