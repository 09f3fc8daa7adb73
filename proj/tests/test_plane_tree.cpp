#include <catch2/catch_amalgamated.hpp>

#include "rewire/parking.hpp"
#include "rewire/plane_tree.hpp"

using namespace rewire;

static const NecklaceSystem kLambda = builtin_lambda();
static const NecklaceSystem kNs = builtin_nonseparable();

TEST_CASE("q-tree parse and serialize round-trip") {
  for (const char* text : {"d(t())", "t()", "bb(t()d(t()))", "bb(bb(t()t())d(t()))"}) {
    PlaneTree t = parse_qtree(text, kLambda);
    CHECK(serialize_qtree(t) == text);
    CHECK(t.root_kind() == Pearl::Sq);
  }
  PlaneTree e = parse_qtree("bdt(e()t())", kNs);
  CHECK(serialize_qtree(e) == "bdt(e()t())");
  CHECK(e.size() == 3);
}

TEST_CASE("q-tree parse rejects malformed input") {
  CHECK_THROWS_WITH(parse_qtree("d(t()", kLambda), "expected ')' in tree text");
  CHECK_THROWS_WITH(parse_qtree("d()", kLambda), "expected necklace word in tree text");
  CHECK_THROWS_WITH(parse_qtree("t()t()", kLambda), "trailing input after tree");
  CHECK_THROWS_WITH(parse_qtree("bb(t()t())", kNs), "necklace not in system: 'bb'");
}

TEST_CASE("excess accounting") {
  CHECK(excess(parse_qtree("t()", kLambda)) == 1);
  CHECK(excess(parse_qtree("d(t())", kLambda)) == 0);
  CHECK(excess(parse_qtree("d(bb(t()t()))", kLambda)) == 1);
  CHECK(excess(parse_qtree("d(d(t()))", kLambda)) == -1);

  PlaneTree t = parse_qtree("bb(t()d(t()))", kLambda);
  auto sub = subtree_excess(t);
  CHECK(sub[t.root] == 1);
  // the diamond pearl of vertex 2 wraps just its triangle child
  CHECK(excess_at(t, sub, 2, 1) == 0);
}

TEST_CASE("pearl non-negativity") {
  CHECK(is_nonnegative(parse_qtree("d(t())", kLambda)));
  CHECK(is_nonnegative(parse_qtree("bb(d(t())t())", kLambda)));
  CHECK(!is_nonnegative(parse_qtree("d(d(t()))", kLambda)));

  // positive total excess does not rescue an inner deficit
  PlaneTree t = parse_qtree("bb(d(d(t()))bb(t()t()))", kLambda);
  CHECK(excess(t) == 1);
  CHECK(!is_nonnegative(t));
}

TEST_CASE("parking fills spots exactly on non-negative trees") {
  PlaneTree ok = parse_qtree("d(t())", kLambda);
  ParkingOutcome po = parking_outcome(ok);
  CHECK(po.cars == 1);
  CHECK(po.spots == 1);
  CHECK(po.all_spots_filled());
  CHECK(po.all_cars_parked());

  // a car cannot reach a diamond on its own vertex
  PlaneTree bad = parse_qtree("dt(e())", kNs);
  ParkingOutcome pb = parking_outcome(bad);
  CHECK(pb.cars == 1);
  CHECK(pb.spots == 1);
  CHECK(pb.filled == 0);
  CHECK(!parking_oracle(bad));
  CHECK(!is_nonnegative(bad));
}

TEST_CASE("rerooting preserves structure") {
  PlaneTree t = parse_qtree("bb(t()d(t()))", kLambda);
  PlaneTree r = reroot(t, 2, 1);  // enter vertex 2 at its diamond
  CHECK(r.root == 2);
  CHECK(r.root_kind() == Pearl::D);
  CHECK(r.verts[0].word == "bb");  // ids survive
  PlaneTree back = reroot(r, 0, 0);
  CHECK(back.root == 0);
  CHECK(serialize_qtree(back) == "bb(t()d(t()))");
}

TEST_CASE("companion parse and serialize round-trip") {
  PlaneTree c = parse_companion("@s:sd(ts(_))", kLambda);
  CHECK(c.root_kind() == Pearl::Sq);
  CHECK(c.size() == 2);
  CHECK(count_defects(c) == 0);
  CHECK(serialize_companion(c) == "@s:sd(ts(_))");

  PlaneTree d = parse_companion("@s:st(_)", kLambda);
  CHECK(count_defects(d) == 1);

  PlaneTree r = parse_companion("@t:ts(_)", kLambda);
  CHECK(r.root_kind() == Pearl::T);
  CHECK(count_defects(r) == 0);
}

TEST_CASE("companion validity") {
  CHECK_THROWS_WITH(parse_companion("@s:sbb(_ _)", kLambda), "free black or diamond pearl");
  CHECK_THROWS_WITH(parse_companion("@b:ds(_)", kLambda), "root kind does not match root pearl");
  CHECK_THROWS_WITH(parse_companion("@s:sd(bs(_))", kNs), "edge-color mismatch");
  CHECK_THROWS_WITH(parse_companion("@s:sd(tts(_ _))", kLambda), "necklace not in system: 'tt'");
  // a lone diamond-rooted vertex is a valid companion atom
  PlaneTree atom = parse_companion("@d:ds(_)", kLambda);
  CHECK(atom.size() == 1);
}

TEST_CASE("unrooted canonical form") {
  PlaneTree c = parse_companion("@s:sd(ts(_))", kLambda);
  CHECK(serialize_unrooted(c) == "@u:sd(ts(_))");
  // rooting at the other free square serializes differently but shares the form
  PlaneTree other = reroot(c, 1, 0);
  CHECK(serialize_companion(other) == "@s:st(ds(_))");
  CHECK(serialize_unrooted(other) == "@u:sd(ts(_))");
  PlaneTree u = parse_companion("@u:sd(ts(_))", kLambda);
  CHECK(u.root_kind() == Pearl::Sq);
}
