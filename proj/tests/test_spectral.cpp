#include <doctest.h>

#include "support.hpp"

using namespace scriptgeo;

TEST_CASE("catalog sounds, spectra and kernels") {
  for (auto& id : catalog_list()) {
    const auto& e = catalog_get(id);
    if (e.expected.sound) CHECK_MESSAGE(sound(e.script) == *e.expected.sound, id);
    if (!e.expected.eigenvalues.empty())
      CHECK_MESSAGE(testsupport::eigen_match(spectrum(e.script).eigenvalues, e.expected.eigenvalues), id);
    if (e.expected.monogenic) {
      auto basis = dirac_basis(e.script);
      auto got = testsupport::vectors_of(monogenic_kernel(e.script), basis);
      auto want = testsupport::vectors_of(e.script, *e.expected.monogenic);
      CHECK_MESSAGE(same_span(got, want), id);
    }
  }
}

TEST_CASE("sound equals the trace and the sum of squared eigenvalues") {
  std::mt19937 rng(29);
  for (int i = 0; i < 60; ++i) {
    Script s = testsupport::random_script(rng, 3, 5);
    auto sp = spectrum(s);
    double sum = 0;
    for (auto& c : sp.eigenvalues) sum += c.value * c.value * static_cast<double>(c.multiplicity);
    CHECK(std::fabs(sum - sp.sound_exact.convert_to<double>()) < 1e-6);
    CHECK(sp.sound_exact == dirac_matrix(s).frobenius_squared());
    CHECK(sp.size() == dirac_basis(s).size());
  }
}

TEST_CASE("closed forms: addition and simplices") {
  for (int n = 1; n <= 10; ++n) CHECK(sound(gen_addition(n)) == 2 * n);
  for (int m = 1; m <= 4; ++m) CHECK(sound(gen_simplex(m)) == (Integer(1) << (m + 1)) * (m + 1));
}

TEST_CASE("laplace is block diagonal and the square of dirac") {
  const Script& k = catalog_get("klein").script;
  IntMatrix D = dirac_matrix(k);
  CHECK(D == D.transpose());
  CHECK(laplace_matrix(k) == D * D);
  auto basis = dirac_basis(k);
  for (auto& [rc, v] : laplace_matrix(k).entries()) CHECK(basis[rc.first].dim == basis[rc.second].dim);
}

TEST_CASE("harmonic kernel matches homology rank and passes the hodge check") {
  for (auto& id : {"torus-surface", "klein", "rp2", "moebius", "torus"}) {
    const Script& s = catalog_get(id).script;
    auto h = harmonic_kernel(s);
    std::size_t betti = 0;
    for (auto& [k, g] : homology_all(s)) betti += g.rank;
    CHECK_MESSAGE(h.size() == betti, id);
    for (auto& f : h) CHECK(hodge_check(s, f));
    // monogenic and harmonic kernels coincide: ker D = ker D^2 for symmetric D
    auto basis = dirac_basis(s);
    CHECK(same_span(testsupport::vectors_of(h, basis), testsupport::vectors_of(monogenic_kernel(s), basis)));
  }
}

TEST_CASE("jacobi against known spectra") {
  auto ev = jacobi_eigenvalues({{2, 1}, {1, 2}});
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(3.0));
  auto cl = cluster({1.0, 1.0 + 1e-10, 2.0});
  REQUIRE(cl.size() == 2);
  CHECK(cl[0].multiplicity == 2);
}

TEST_CASE("rational kernel and span comparison") {
  IntMatrix a = IntMatrix::from_dense({{2, 4}});
  auto k = rational_kernel(a);
  REQUIRE(k.size() == 1);
  CHECK(same_span(k, {{-2, 1}}));
  CHECK_FALSE(same_span(k, {{1, 1}}));
  CHECK(rational_rank(a) == 1);
}

TEST_CASE("dual boundary squares to zero on fixtures and fuzz") {
  for (auto& id : catalog_list()) CHECK_MESSAGE(testsupport::dual_squares_to_zero(catalog_get(id).script), id);
  std::mt19937 rng(31);
  for (int i = 0; i < 100; ++i) CHECK(testsupport::dual_squares_to_zero(testsupport::random_script(rng)));
}

TEST_CASE("dual scripts") {
  const Script& t = catalog_get("torus").script;
  auto d = dual_script(t);
  REQUIRE(std::holds_alternative<Script>(d));
  CHECK(are_equivalent(std::get<Script>(d), t));
  for (const char* id : {"klein", "rp2"}) {
    auto o = dual_script(catalog_get(id).script);
    REQUIRE(std::holds_alternative<DualObstruction>(o));
    CHECK(std::get<DualObstruction>(o).kind == DualObstruction::Kind::TopNotSingle);
  }
  for (int m = 1; m <= 3; ++m) {
    auto b = dual_script(gen_ball(m));
    REQUIRE(std::holds_alternative<Script>(b));
    CHECK(is_valid(std::get<Script>(b)));
    CHECK(is_unitary(std::get<Script>(b)));
  }
}

TEST_CASE("orientation") {
  CHECK(is_orientable(catalog_get("torus-surface").script));
  CHECK_FALSE(is_orientable(catalog_get("klein").script));
  CHECK_FALSE(is_orientable(catalog_get("rp2").script));
  auto o = orientation(gen_sphere(2));
  REQUIRE(o);
  CHECK(gen_sphere(2).boundary_of(*o).is_zero());
  CHECK(kronecker(CellId{1, "a"}, CellId{1, "a"}) == 1);
  CHECK(kronecker(CellId{1, "a"}, CellId{1, "b"}) == 0);
}
