#include <doctest.h>

#include "support.hpp"

using namespace scriptgeo;

namespace {
Chain C(int d, std::initializer_list<std::pair<const char*, int>> t) {
  Chain c(d);
  for (auto& [n, k] : t) c.add(n, k);
  return c;
}
}  // namespace

TEST_CASE("leibniz boundary of the unit cube") {
  Script q = cubic_product({gen_interval(), gen_interval(), gen_interval()});
  CHECK_FALSE(q.has_accumulator());
  CHECK(q.cells(0).size() == 8);
  CHECK(q.cells(1).size() == 12);
  CHECK(q.cells(2).size() == 6);
  CHECK(q.cells(3).size() == 1);
  CHECK(q.boundary(CellId{3, "(l,l,l)"}) ==
        C(2, {{"(p,l,l)", 1}, {"(q,l,l)", -1}, {"(l,p,l)", -1}, {"(l,q,l)", 1}, {"(l,l,p)", 1}, {"(l,l,q)", -1}}));
  CHECK(is_valid(q));
}

TEST_CASE("cubic products are associative") {
  Script a = gen_interval(), b = gen_circle(), c = gen_polygon(3);
  Script left = cubic_product(cubic_product(a, b), c);
  Script right = cubic_product(a, cubic_product(b, c));
  Script flat = cubic_product({a, b, c});
  CHECK(same_structure(left, flat));
  CHECK(same_structure(right, flat));
}

TEST_CASE("product homology follows kuenneth on small factors") {
  // circle x circle as a truncated product, extended: the torus surface
  Script t = extend_with_accumulator(cubic_product(gen_polygon(4), gen_polygon(4)));
  CHECK(is_valid(t));
  auto h = homology_all(t);
  CHECK(h.at(1).rank == 2);
  CHECK(h.at(2).rank == 1);
  CHECK(t.cells(0).size() == 16);
  CHECK(t.cells(1).size() == 32);
  CHECK(t.cells(2).size() == 16);
}

TEST_CASE("extended products of tight factors are tight") {
  std::vector<Script> tight;
  for (auto& s : testsupport::small_generators())
    if (script_tightness(s).script_tight) tight.push_back(s);
  REQUIRE(tight.size() >= 4);
  std::mt19937 rng(37);
  for (int i = 0; i < 20; ++i) {
    const Script& a = tight[rng() % tight.size()];
    const Script& b = tight[rng() % tight.size()];
    Script p = extend_with_accumulator(cubic_product(a, b));
    CHECK_MESSAGE(script_tightness(p).script_tight, a.name(), " x ", b.name());
  }
}

TEST_CASE("simplicial products") {
  Script p = simplicial_product(gen_interval(), gen_interval());
  CHECK(p.base_dim() == -1);
  CHECK(is_valid(p));
  Script r = renormalize(p);
  CHECK(r.base_dim() == 0);
  CHECK(is_valid(r));
  CHECK(are_equivalent(r, gen_simplex(3)));
  Script p4 = simplicial_product({gen_interval(), gen_interval()}, true);
  CHECK(are_equivalent(p4, gen_simplex(3)));
  // a point times a point is the interval
  Script pt("pt");
  pt.add_point("a");
  CHECK(are_equivalent(renormalize(simplicial_product(pt, pt)), gen_interval()));
}

TEST_CASE("generators") {
  CHECK(gen_cube(3).cells(3).size() == 1);
  CHECK(gen_multicube({2, 1}).cells(2).size() == 2);
  CHECK(gen_torus({4, 4}).cells(2).size() == 16);
  CHECK(gen_line_window(-2, 2).cells(0).size() == 5);
  CHECK(gen_grid_window(2, 0, 2).cells(0).size() == 9);
  for (int m = 1; m <= 4; ++m) {
    CHECK(gen_simplex(m).cells(0).size() == static_cast<std::size_t>(m + 1));
    CHECK(is_valid(gen_sphere(m)));
    CHECK(is_valid(gen_ball(m)));
  }
  CHECK(generate("sphere", {2}) == gen_sphere(2));
  CHECK_THROWS_AS(generate("sphere", {}), BadParameter);
  CHECK_THROWS_AS(generate("nope", {1}), BadParameter);
  CHECK_THROWS_AS(gen_polygon(1), BadParameter);
  for (auto& k : generator_kinds()) CHECK(!k.empty());
}

TEST_CASE("refinement of the disc and the sphere") {
  auto d = simplicial_refine(catalog_get("disc").script);
  CHECK(d.script.cells(2).size() == 4);
  for (auto& n : d.script.cells(2)) CHECK(d.simplices.at(n).size() == 3);
  auto s = simplicial_refine(gen_sphere(2));
  CHECK(s.script.cells(0).size() == 6);
  CHECK(s.script.cells(1).size() == 12);
  CHECK(s.script.cells(2).size() == 8);
  CHECK(is_geoscript(s.script));
}

TEST_CASE("refinement commutes with the boundary and keeps homology") {
  for (auto& id : catalog_list()) {
    const Script& s = catalog_get(id).script;
    if (s.top_dim() != 2 || !s.has_accumulator() || s.cell_count() > 40) continue;
    auto r = simplicial_refine(s);
    CHECK_MESSAGE(is_valid(r.script), id);
    for (auto& c : s.all_cells()) {
      if (c.dim == 0) continue;
      Chain lhs = r.script.boundary_of(r.sigma.at(c));
      Chain rhs(c.dim - 1);
      for (auto& [n, k] : s.boundary(c).terms()) rhs += r.sigma.at(CellId{c.dim - 1, n}) * k;
      CHECK_MESSAGE(lhs == rhs, id, " ", to_string(c));
    }
    CHECK_MESSAGE(homology_all(r.script) == homology_all(s), id);
  }
  CHECK_THROWS_AS(simplicial_refine(parse_script("script t\ntruncated\ncells 0: a\n")), MissingAccumulator);
}
