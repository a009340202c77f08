// acceptance runner: one PASS/FAIL line per criterion

#include "support.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <sstream>

using namespace scriptgeo;
using testsupport::eigen_match;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
};

const Script& cat(const std::string& id) { return catalog_get(id).script; }

std::vector<EigenCluster> symmetric(std::vector<EigenCluster> pos, std::size_t zeros) {
  std::vector<EigenCluster> out;
  for (auto& c : pos) out.push_back({-c.value, c.multiplicity});
  if (zeros) out.push_back({0, zeros});
  for (auto& c : pos) out.push_back(c);
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.value < b.value; });
  return out;
}

Outcome sounds() {
  Outcome o;
  const std::vector<std::pair<const char*, int>> table{
      {"torus", 80},        {"klein", 72},          {"klein-extended", 76}, {"klein-extended-3cell", 92},
      {"rp2", 54},          {"rp2-extended", 58},   {"rp2-extended-3cell", 74}, {"moebius", 48},
      {"rp2-moebius", 56},  {"klein-glued", 72},    {"portal-none", 120},   {"portal", 128},
      {"pentagon-rp2", 140}};
  for (auto& [id, v] : table) {
    Integer got = sound(cat(id));
    o.check(got == v, std::string(id) + " sound " + to_string(got) + " != " + std::to_string(v));
  }
  for (int n = 1; n <= 10; ++n) o.check(sound(gen_addition(n)) == 2 * n, "addition n=" + std::to_string(n));
  for (int m = 1; m <= 4; ++m)
    o.check(sound(gen_simplex(m)) == (Integer(1) << (m + 1)) * (m + 1), "simplex m=" + std::to_string(m));
  return o;
}

Outcome eigenvalues() {
  Outcome o;
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  auto check = [&](const char* id, const std::vector<EigenCluster>& want) {
    o.check(eigen_match(spectrum(cat(id)).eigenvalues, want, 1e-6), std::string(id) + " eigenvalues");
  };
  check("torus", symmetric({{2, 6}, {2 * s2, 2}}, 2));
  check("klein", symmetric({{s2, 2}, {2, 4}, {2 * s2, 2}}, 1));
  check("rp2", symmetric({{s2, 3}, {s3, 1}, {s6, 3}}, 0));
  check("moebius", symmetric({{2, 6}}, 1));
  check("pentagon-rp2", catalog_get("pentagon-rp2").expected.eigenvalues);
  check("portal", catalog_get("portal").expected.eigenvalues);
  // the distinctive values must actually be present
  auto has = [&](const char* id, double v) {
    for (auto& c : spectrum(cat(id)).eigenvalues)
      if (std::fabs(c.value - v) < 1e-6) return true;
    return false;
  };
  const double s5 = std::sqrt(5.0);
  for (double v : {std::sqrt(5 + s5), std::sqrt(5 - s5), -std::sqrt(5 + s5), -std::sqrt(5 - s5)})
    o.check(has("pentagon-rp2", v), "pentagon has " + std::to_string(v));
  for (double v : {std::sqrt(8 + 2 * s2), std::sqrt(8 - 2 * s2), -std::sqrt(8 + 2 * s2), -std::sqrt(8 - 2 * s2)})
    o.check(has("portal", v), "portal has " + std::to_string(v));
  return o;
}

Outcome kernels() {
  Outcome o;
  auto span_of = [](const char* id) {
    const Script& s = cat(id);
    return testsupport::vectors_of(monogenic_kernel(s), dirac_basis(s));
  };
  auto want = [](const char* id, std::vector<std::string> chains) { return testsupport::vectors_of(cat(id), chains); };
  o.check(same_span(span_of("torus"), want("torus", {"l1 + l2 + l5 + l6", "l3 + l4 + l7 + l8"})), "torus span");
  o.check(same_span(span_of("klein"), want("klein", {"l3 + l4 + l5 + l6"})), "klein span");
  o.check(span_of("rp2").empty(), "rp2 trivial");
  o.check(span_of("pentagon-rp2").empty(), "pentagon trivial");
  for (const char* id : {"torus", "klein", "rp2", "pentagon-rp2"}) {
    const Script& s = cat(id);
    auto b = dirac_basis(s);
    o.check(same_span(testsupport::vectors_of(harmonic_kernel(s), b), span_of(id)), std::string(id) + " harmonic = monogenic");
  }
  auto portal = span_of("portal");
  auto with = portal;
  for (auto& v : want("portal", {"lt1 - lb1 - lt2 + lb2"})) with.push_back(v);
  auto rank_of = [](const std::vector<std::vector<Integer>>& cols) {
    return cols.empty() ? 0 : rational_rank(from_columns(cols, cols[0].size()));
  };
  o.check(!portal.empty() && rank_of(with) == rank_of(portal), "portal kernel contains lt1 - lb1 - lt2 + lb2");
  return o;
}

Outcome tightness() {
  Outcome o;
  o.check(is_geoscript(cat("torus")), "torus geoscript");
  for (const char* id : {"klein", "rp2"}) o.check(is_geoscript(cat(id)), std::string(id) + " geoscript");
  for (const char* id : {"klein-extended", "rp2-extended"}) {
    const Script& s = cat(id);
    for (auto& c : s.all_cells()) o.check(is_cell_tight(s, c), std::string(id) + " cell " + to_string(c));
    Chain z = parse_chain(s, "v1 + v2 + v3 + v4 + 2 v5");
    o.check(s.boundary_of(z).is_zero() && is_c_tight(s, z), std::string(id) + " extended cycle c-tight");
    bool unitary = true;
    for (auto& [n, k] : z.terms()) unitary = unitary && (k == 1 || k == -1);
    o.check(!unitary, std::string(id) + " extended cycle not unitary");
  }
  auto lie = script_tightness(cat("lie-sphere"));
  std::vector<CellId> expect{{2, "(l1,I)"}, {2, "(l2,I)"}};
  auto f = lie.failing();
  std::sort(f.begin(), f.end());
  std::string got;
  for (auto& c : f) got += (got.empty() ? "" : " ") + to_string(c);
  o.check(!lie.script_tight && f == expect, "lie sphere fails exactly at (l1,I),(l2,I); got {" + got + "}");
  o.check(script_tightness(cat("lie-sphere-tight")).script_tight, "tight lie sphere");
  return o;
}

Outcome duality() {
  Outcome o;
  auto t = dual_script(cat("torus"));
  o.check(std::holds_alternative<Script>(t) && are_equivalent(std::get<Script>(t), cat("torus")), "torus self-dual");
  for (const char* id : {"klein", "rp2"})
    o.check(std::holds_alternative<DualObstruction>(dual_script(cat(id))), std::string(id) + " dual obstructed");
  for (int m = 1; m <= 3; ++m) {
    auto b = dual_script(gen_ball(m));
    bool ok = std::holds_alternative<Script>(b) && is_valid(std::get<Script>(b)) && is_unitary(std::get<Script>(b));
    o.check(ok, "ball " + std::to_string(m) + " dual unitary");
  }
  return o;
}

Outcome constructions() {
  Outcome o;
  Script glued = run_pipeline(cat("two-moebius"), kKleinGluePipeline).script;
  Script refined = run_pipeline(glued, kKleinRefinePipeline).script;
  o.check(are_equivalent(refined, cat("klein")), "two moebius strips -> klein bottle");
  Script m = run_pipeline(cat("moebius-rectangle"), kMoebiusPipeline).script;
  o.check(are_equivalent(m, cat("moebius")), "rectangle -> moebius");
  o.check(are_equivalent(reconstruct_from_offprint(cat("torus")), cat("torus")), "torus from its offprint");
  return o;
}

Outcome products() {
  Outcome o;
  Script q = cubic_product({gen_interval(), gen_interval(), gen_interval()});
  o.check(q.cells(0).size() == 8 && q.cells(1).size() == 12 && q.cells(2).size() == 6 && q.cells(3).size() == 1,
          "Q3 counts");
  std::vector<Script> tight;
  for (auto& s : testsupport::small_generators())
    if (script_tightness(s).script_tight) tight.push_back(s);
  std::mt19937 rng(2024);
  int good = 0;
  for (int i = 0; i < 20; ++i) {
    const Script& a = tight[rng() % tight.size()];
    const Script& b = tight[rng() % tight.size()];
    bool ok = script_tightness(extend_with_accumulator(cubic_product(a, b))).script_tight;
    good += ok;
    o.check(ok, a.name() + " x " + b.name() + " tight");
  }
  o.notes.push_back(std::to_string(good) + "/20 random products tight");
  Script pt("point");
  pt.add_point("a");
  o.check(are_equivalent(simplicial_product({pt, pt, pt, pt}, true), gen_simplex(3)), "P^4 ~ simplex(3)");
  o.check(are_equivalent(simplicial_product(gen_interval(), gen_interval(), true), gen_simplex(3)),
          "interval x interval ~ simplex(3)");
  return o;
}

Outcome refinement() {
  Outcome o;
  auto d = simplicial_refine(cat("disc"));
  o.check(d.script.cells(2).size() == 4, "disc has 4 triangles");
  auto s = simplicial_refine(gen_sphere(2));
  o.check(s.script.cells(0).size() == 6 && s.script.cells(1).size() == 12 && s.script.cells(2).size() == 8,
          "sphere refines to an octahedron");
  int n = 0;
  for (auto& id : catalog_list()) {
    const Script& x = cat(id);
    if (x.top_dim() != 2 || !x.has_accumulator()) continue;
    ++n;
    Script r = simplicial_refine(x).script;
    std::string why;
    o.check(testsupport::homology_matches_oracle(r, &why), id + " refined oracle " + why);
    o.check(homology_all(r) == homology_all(x), id + " homology preserved");
  }
  o.notes.push_back(std::to_string(n) + " catalog 2-scripts refined");
  return o;
}

Outcome properties() {
  Outcome o;
  std::vector<Script> all;
  for (auto& id : catalog_list()) all.push_back(cat(id));
  for (auto& g : testsupport::small_generators()) all.push_back(g);
  std::mt19937 rng(9);
  const std::size_t fixtures = all.size();
  for (int i = 0; i < 500; ++i) all.push_back(testsupport::random_script(rng, 3, 6));

  std::size_t oracle_runs = 0, factorizations = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Script& s = all[i];
    std::string tag = i < fixtures ? s.name() : "fuzz#" + std::to_string(i - fixtures);
    o.check(is_valid(s), tag + " d^2 = 0 (boundary)");
    o.check(testsupport::dual_squares_to_zero(s), tag + " d^2 = 0 (dual)");
    for (int k = s.base_dim(); k <= s.top_dim(); ++k) {
      IntMatrix a = boundary_matrix(s, k);
      if (a.rows() > 64 || a.cols() > 64) continue;
      ++factorizations;
      o.check(testsupport::smith_reconstructs(a), tag + " SNF at k=" + std::to_string(k));
    }
    bool small = true;
    for (int k : s.dims()) small = small && s.cells(k).size() <= 6;
    if (small) {
      ++oracle_runs;
      std::string why;
      o.check(testsupport::homology_matches_oracle(s, &why), tag + " homology oracle " + why);
    }
    if (dirac_basis(s).size() <= 64) {
      auto sp = spectrum(s);
      double sum = 0;
      for (auto& c : sp.eigenvalues) sum += c.value * c.value * static_cast<double>(c.multiplicity);
      o.check(std::fabs(sum - sp.sound_exact.convert_to<double>()) < 1e-6, tag + " sound = sum of squares");
    }
    Script m = minimize(s);
    o.check(minimize(m) == m, tag + " minimize idempotent");
    if (i >= fixtures) o.check(parse_script(print_script(s)) == s, tag + " round trip");
  }
  o.notes.push_back(std::to_string(all.size()) + " scripts, " + std::to_string(factorizations) + " factorizations, " +
                    std::to_string(oracle_runs) + " oracle comparisons");
  return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Outcome()>>> c{
      {"sound regression", sounds},         {"eigenvalue multisets", eigenvalues},
      {"kernel bases", kernels},            {"tightness and unitarity", tightness},
      {"duality", duality},                 {"constructions", constructions},
      {"products", products},               {"refinement", refinement},
      {"property suites", properties}};
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run a single criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_flag("-v,--verbose", verbose, "list every failed check");
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    if (only && static_cast<int>(i + 1) != only) continue;
    auto& [name, run] = criteria()[i];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    all_pass = all_pass && o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " (" << name << ")";
    std::size_t shown = 0;
    for (auto& n : o.notes) {
      if (!verbose && n.rfind("failed:", 0) == 0 && ++shown > 5) continue;
      std::cout << "; " << n;
    }
    std::cout << "\n";
  }
  return all_pass ? 0 : 1;
}
