#include <doctest.h>

#include "support.hpp"

using namespace scriptgeo;

TEST_CASE("chain arithmetic drops zeros and checks dimensions") {
  Chain a = Chain::cell(1, "l1") + Chain::cell(1, "l2") * 3;
  Chain b = Chain::cell(1, "l2") * 3;
  Chain c = a - b;
  CHECK(c == Chain::cell(1, "l1"));
  CHECK(c.size() == 1);
  CHECK((a - a).is_zero());
  CHECK(a.content() == 1);
  CHECK((Chain::cell(1, "x", 4) + Chain::cell(1, "y", 6)).content() == 2);
  CHECK_THROWS_AS(a + Chain::cell(2, "v"), DimensionMismatch);
  CHECK_NOTHROW(a + Chain(2));  // the empty chain adapts
  CHECK((-a).coeff("l2") == -3);
}

TEST_CASE("script accessors and the accumulator") {
  Script s = gen_interval();
  CHECK(s.top_dim() == 1);
  CHECK(s.accumulator() == CellId{-1, "1"});
  CHECK(s.acc("p") == 1);
  CHECK(s.boundary(CellId{1, "l"}) == Chain::cell(0, "p") - Chain::cell(0, "q"));
  CHECK(s.cofaces(CellId{0, "p"}) == std::set<CellId>{CellId{1, "l"}});
  CHECK(s.boundary_of(Chain::cell(1, "l")) == Chain::cell(0, "p") - Chain::cell(0, "q"));
  CHECK_THROWS_AS(s.boundary(CellId{1, "nope"}), UnknownCell);
  Script empty("e");
  CHECK(empty.empty());
  CHECK(empty.top_dim() == -1);
}

TEST_CASE("validate reports each kind of violation") {
  Script s("bad");
  s.add_point("p");
  s.add_point("q");
  s.add_cell(1, "l", Chain::cell(0, "p") + Chain::cell(0, "q"));  // boundary sums to 2
  auto v = validate(s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::BoundarySquare);
  CHECK_THROWS_AS(require_valid(s), ComplexViolation);

  Script d("dangling");
  d.add_point("p");
  d.add_cell(1, "l", Chain::cell(0, "p") - Chain::cell(0, "ghost"));
  bool dangling = false;
  for (auto& x : validate(d)) dangling = dangling || x.kind == Violation::Kind::DanglingReference;
  CHECK(dangling);

  Script z = parse_script("script z\ncells 0: p q r\ncells 1: l\nboundary l = p - q + 0 r\n");
  bool zero = false;
  for (auto& x : validate(z)) zero = zero || x.kind == Violation::Kind::ZeroCoefficient;
  CHECK(zero);
}

TEST_CASE("offprint, support and subscripts") {
  const Script& t = catalog_get("torus").script;
  auto off = offprint(t);
  CHECK(off.at(CellId{2, "v1"}) == std::set<CellId>{{1, "l5"}, {1, "l8"}, {1, "l1"}, {1, "l4"}});
  CHECK(off.at(CellId{0, "p0"}) == std::set<CellId>{{-1, "1"}});
  Script sub = subscript_generated_by(t, {CellId{2, "v1"}});
  CHECK(sub.cells(2).size() == 1);
  CHECK(sub.cells(1).size() == 4);
  CHECK(sub.cells(0).size() == 4);
  CHECK(is_valid(sub));
}

TEST_CASE("unitary and minimal predicates") {
  CHECK(is_unitary(catalog_get("torus").script));
  CHECK_FALSE(is_unitary(catalog_get("klein-extended-3cell").script));
  CHECK(is_minimal(catalog_get("klein-extended-3cell").script));
  Script s = gen_interval();
  s.set_boundary(CellId{1, "l"}, Chain::cell(0, "p", 2) - Chain::cell(0, "q", 2));
  CHECK_FALSE(is_minimal(s));
  CHECK(is_minimal(minimize(s)));
}

TEST_CASE("relabel_equivalent flips signs consistently") {
  Script t = catalog_get("torus").script;
  Script f = relabel_equivalent(t, {CellId{1, "l1"}, CellId{2, "v3"}});
  CHECK(is_valid(f));
  CHECK(f.boundary(CellId{2, "v1"}).coeff("l1") == 1);
  CHECK(f.boundary(CellId{3, "C"}).coeff("v3") == -1);
  CHECK(are_equivalent(t, f));
}

TEST_CASE("reduce_mod keeps coefficients in range and stays a complex") {
  Script k = catalog_get("klein-extended-3cell").script;
  Script r = reduce_mod(k, 2);
  CHECK(r.modulus() == Integer(2));
  CHECK(is_valid(r));
  CHECK(r.boundary(CellId{3, "C"}).coeff("v5") == 0);
  CHECK(r.boundary(CellId{2, "v1"}).coeff("l2") == 1);
}

TEST_CASE("equivalence search") {
  const Script& t = catalog_get("torus").script;
  Script renamed = t;
  renamed.rename_cell(CellId{1, "l1"}, "edge");
  renamed.rename_cell(CellId{0, "p2"}, "corner");
  auto w = find_equivalence(t, renamed);
  REQUIRE(w);
  CHECK(apply_equivalence(t, *w).boundary(CellId{2, "v1"}) == renamed.boundary(CellId{2, "v1"}));
  CHECK_FALSE(are_equivalent(catalog_get("klein").script, catalog_get("torus-surface").script));
  CHECK_FALSE(are_equivalent(catalog_get("klein").script, catalog_get("klein-glued").script));
  CHECK(are_equivalent(gen_sphere(1), gen_circle()));
  CHECK_THROWS_AS(find_equivalence(catalog_get("pentagon-rp2").script, catalog_get("pentagon-rp2").script, 3),
                  SearchBudgetExceeded);
}

TEST_CASE("equivalence is invariant under random relabelling") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Script s = testsupport::random_script(rng, 3, 5);
    std::set<CellId> flips;
    for (auto& c : s.all_cells())
      if (rng() % 3 == 0) flips.insert(c);
    Script f = relabel_equivalent(s, flips);
    int i = 0;
    for (auto& c : f.all_cells()) f.rename_cell(c, "x" + std::to_string(i++));
    CHECK(are_equivalent(s, f));
  }
}
