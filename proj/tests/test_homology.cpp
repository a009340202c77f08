#include <doctest.h>

#include "support.hpp"

using namespace scriptgeo;

namespace {
HomologyGroup H(std::size_t r, std::vector<Integer> t = {}) { return HomologyGroup{r, std::move(t)}; }
}  // namespace

TEST_CASE("boundary matrices of the interval") {
  Script s = gen_interval();
  IntMatrix d1 = boundary_matrix(s, 1);
  CHECK(d1.rows() == 2);
  CHECK(d1.cols() == 1);
  CHECK(d1.at(0, 0) == 1);
  CHECK(d1.at(1, 0) == -1);
  IntMatrix d0 = boundary_matrix(s, 0);
  CHECK(d0.rows() == 1);
  CHECK(d0.at(0, 1) == 1);
  CHECK(row_basis(s, 0) == std::vector<CellId>{s.accumulator()});
}

TEST_CASE("torus surface homology") {
  auto h = homology_all(catalog_get("torus-surface").script);
  CHECK(h.at(0) == H(0));  // reduced: the accumulator kills the component
  CHECK(h.at(1) == H(2));
  CHECK(h.at(2) == H(1));
}

TEST_CASE("klein bottle and projective plane torsion") {
  auto k = homology_all(catalog_get("klein").script);
  CHECK(k.at(1) == H(1, {2}));
  CHECK(k.at(2) == H(0));
  auto p = homology_all(catalog_get("rp2").script);
  CHECK(p.at(1) == H(0, {2}));
  CHECK(p.at(2) == H(0));
  CHECK(to_string(k.at(1)) == "Z + Z/2");
  CHECK(to_string(H(0)) == "0");
}

TEST_CASE("spheres and balls") {
  for (int m = 1; m <= 4; ++m) {
    auto hs = homology_all(gen_sphere(m));
    for (auto& [k, h] : hs) CHECK(h == (k == m ? H(1) : H(0)));
    for (auto& [k, h] : homology_all(gen_ball(m))) CHECK(h.trivial());
  }
}

TEST_CASE("truncated scripts have unreduced homology") {
  Script s = parse_script("script t\ntruncated\ncells 0: a b\ncells 1: e\nboundary e = a - b\n");
  CHECK(homology(s, 0) == H(1));
  Script two = parse_script("script t\ntruncated\ncells 0: a b\n");
  CHECK(homology(two, 0) == H(2));
}

TEST_CASE("homology agrees with the rank oracle on catalog and generators") {
  for (auto& id : catalog_list()) {
    std::string why;
    CHECK_MESSAGE(testsupport::homology_matches_oracle(catalog_get(id).script, &why), id, " ", why);
  }
  for (auto& s : testsupport::small_generators()) CHECK(testsupport::homology_matches_oracle(s));
}

TEST_CASE("homology agrees with the rank oracle on fuzzed scripts") {
  std::mt19937 rng(17);
  for (int i = 0; i < 200; ++i) {
    Script s = testsupport::random_script(rng, 4, 6);
    std::string why;
    CHECK_MESSAGE(testsupport::homology_matches_oracle(s, &why), print_script(s), why);
  }
}

TEST_CASE("relative cycles of the torus offprint") {
  const Script& t = catalog_get("torus").script;
  auto off = offprint(t);
  CellId v1{2, "v1"};
  auto z = relative_cycles(t, {v1}, off.at(v1));
  REQUIRE(z.size() == 1);
  CHECK((z[0] == Chain::cell(v1) || z[0] == -Chain::cell(v1)));
  std::set<CellId> U{CellId{1, "l1"}, CellId{1, "l2"}}, V{CellId{0, "p0"}, CellId{0, "p1"}};
  CHECK(relative_cycles(t, U, V).size() == 2);
  // both lines end inside V, so they are relative boundaries themselves
  CHECK(relative_homology(t, U, V) == H(0));
  // relative to nothing only the loop l1 + l2 survives
  CHECK(relative_homology(t, U, {}) == H(1));
}
