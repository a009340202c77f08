#include "scriptgeo/catalog.hpp"

#include "scriptgeo/format.hpp"
#include "scriptgeo/ops.hpp"
#include "scriptgeo/products.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace scriptgeo {

const char* const kMoebiusPipeline = R"(glue keep=p2 remove=p5
glue keep=p1 remove=p6
glue keep=l1 remove=l7 sign=-1
rename name=moebius
)";

const char* const kKleinGluePipeline = R"(glue keep=p1 remove=p6
glue keep=p2 remove=p5
glue keep=p4 remove=p7
glue keep=p3 remove=p8
glue keep=l3 remove=l11
glue keep=l5 remove=l12
glue keep=l4 remove=l9
glue keep=l6 remove=l10
rename name=klein-glued
)";

const char* const kKleinRefinePipeline = R"(create name=l'4 boundary=p3-p2
create name=l'3 boundary=p4-p1
expand target=v1 part=v11:l3-l'4-l1 part=v12:l'4+l2-l4
expand target=v3 part=v31:l4-l'3-l7 part=v32:l'3+l8-l3
melt name=v'1 parts=v11+v32
melt name=v'3 parts=v31+v12
remove-free cell=l3
remove-free cell=l4
rename name=klein-refined
)";

namespace {

const char* kTorus = R"(script torus
cells 0: p0 p1 p2 p3
cells 1: l1 l2 l3 l4 l5 l6 l7 l8
cells 2: v1 v2 v3 v4
cells 3: C
boundary l1 = p1 - p0
boundary l2 = p0 - p1
boundary l3 = p2 - p0
boundary l4 = p0 - p2
boundary l5 = p3 - p2
boundary l6 = p2 - p3
boundary l7 = p3 - p1
boundary l8 = p1 - p3
boundary v1 = l5 + l8 - l1 - l4
boundary v2 = l6 + l4 - l2 - l8
boundary v3 = l1 + l7 - l5 - l3
boundary v4 = l2 + l3 - l6 - l7
boundary C = v1 + v2 + v3 + v4
)";

const char* kKlein = R"(script klein
cells 0: p0 p1 p2 p3
cells 1: l1 l2 l3 l4 l5 l6 l7 l8
cells 2: v1 v2 v3 v4
boundary l1 = p1 - p0
boundary l2 = p0 - p1
boundary l3 = p2 - p0
boundary l4 = p0 - p2
boundary l5 = p3 - p1
boundary l6 = p1 - p3
boundary l7 = p3 - p2
boundary l8 = p2 - p3
boundary v1 = l5 + l8 - l2 - l3
boundary v2 = l6 - l1 - l4 - l8
boundary v3 = -l1 + l3 + l7 - l5
boundary v4 = l4 - l2 - l6 - l7
)";

const char* kRp2 = R"(script rp2
cells 0: p1 p2 p3
cells 1: l1 l2 l3 l4 l5 l6
cells 2: v1 v2 v3 v4
boundary l1 = p2 - p1
boundary l2 = p1 - p2
boundary l3 = p3 - p1
boundary l4 = p1 - p3
boundary l5 = p3 - p2
boundary l6 = p2 - p3
boundary v1 = -l2 + l5 - l3
boundary v2 = -l1 - l4 - l5
boundary v3 = -l1 + l3 + l6
boundary v4 = l4 - l2 - l6
)";

const char* kMoebiusRectangle = R"(script moebius-rectangle
cells 0: p1 p2 p3 p4 p5 p6
cells 1: l1 l2 l3 l4 l5 l6 l7
cells 2: v1 v2
boundary l1 = p2 - p1
boundary l2 = p4 - p3
boundary l3 = p3 - p1
boundary l4 = p5 - p3
boundary l5 = p4 - p2
boundary l6 = p6 - p4
boundary l7 = p6 - p5
boundary v1 = l3 + l2 - l5 - l1
boundary v2 = l4 + l7 - l6 - l2
)";

const char* kMoebius = R"(script moebius
cells 0: p1 p2 p3 p4
cells 1: l1 l2 l3 l4 l5 l6
cells 2: v1 v2
boundary l1 = p2 - p1
boundary l2 = p4 - p3
boundary l3 = p3 - p1
boundary l4 = p2 - p3
boundary l5 = p4 - p2
boundary l6 = p1 - p4
boundary v1 = l3 + l2 - l5 - l1
boundary v2 = l4 - l1 - l6 - l2
)";

const char* kTwoMoebius = R"(script two-moebius
cells 0: p1 p2 p3 p4 p5 p6 p7 p8
cells 1: l1 l2 l3 l4 l5 l6 l7 l8 l9 l10 l11 l12
cells 2: v1 v2 v3 v4
boundary l1 = p2 - p1
boundary l2 = p4 - p3
boundary l3 = p3 - p1
boundary l4 = p4 - p2
boundary l5 = p2 - p3
boundary l6 = p1 - p4
boundary l7 = p6 - p5
boundary l8 = p8 - p7
boundary l9 = p7 - p5
boundary l10 = p6 - p7
boundary l11 = p8 - p6
boundary l12 = p5 - p8
boundary v1 = l3 + l2 - l4 - l1
boundary v2 = l5 - l1 - l6 - l2
boundary v3 = l9 + l8 - l11 - l7
boundary v4 = l10 - l7 - l12 - l8
)";

const char* kPortalNone = R"(script portal-none
cells 0: pi1 pi2 p1 p2
cells 1: li1 li2 lp1 lp2 lt1 lb1 lt2 lb2
cells 2: vi1 vi2 vp1 vp2 vt1 vt2 vb1 vb2
cells 3: wt1 wt2 wb1 wb2
boundary li1 = pi2 - pi1
boundary li2 = pi2 - pi1
boundary lp1 = p2 - p1
boundary lp2 = p2 - p1
boundary lt1 = p1 - pi1
boundary lb1 = p1 - pi1
boundary lt2 = pi2 - p2
boundary lb2 = pi2 - p2
boundary vi1 = li2 - li1
boundary vi2 = li2 - li1
boundary vp1 = lp2 - lp1
boundary vp2 = lp2 - lp1
boundary vt1 = lt1 + lp1 + lt2 - li1
boundary vt2 = li2 - lt2 - lp2 - lt1
boundary vb1 = lb1 + lp1 + lb2 - li1
boundary vb2 = li2 - lb2 - lp2 - lb1
boundary wt1 = vp1 + vt1 + vt2 - vi1
boundary wt2 = vi2 - vp2 - vt1 - vt2
boundary wb1 = vp2 + vb1 + vb2 - vi1
boundary wb2 = vi2 - vp1 - vb1 - vb2
)";

const char* kPortal = R"(script portal
cells 0: pi1 pi2 p1 p2
cells 1: li1 li2 lp1 lp2 lt1 lb1 lt2 lb2
cells 2: vi1 vi2 vp1 vp2 vp3 vp4 vt1 vt2 vb1 vb2
cells 3: wt1 wt2 wb1 wb2
boundary li1 = pi2 - pi1
boundary li2 = pi2 - pi1
boundary lp1 = p2 - p1
boundary lp2 = p2 - p1
boundary lt1 = p1 - pi1
boundary lb1 = p1 - pi1
boundary lt2 = pi2 - p2
boundary lb2 = pi2 - p2
boundary vi1 = li2 - li1
boundary vi2 = li2 - li1
boundary vp1 = lp2 - lp1
boundary vp2 = lp2 - lp1
boundary vp3 = lp2 - lp1
boundary vp4 = lp2 - lp1
boundary vt1 = lt1 + lp1 + lt2 - li1
boundary vt2 = li2 - lt2 - lp2 - lt1
boundary vb1 = lb1 + lp1 + lb2 - li1
boundary vb2 = li2 - lb2 - lp2 - lb1
boundary wt1 = vp1 + vt1 + vt2 - vi1
boundary wt2 = vi2 - vp3 - vt1 - vt2
boundary wb1 = vp2 + vb1 + vb2 - vi1
boundary wb2 = vi2 - vp4 - vb1 - vb2
)";

const char* kLieSphere = R"(script lie-sphere
cells 0: p1 p2
cells 1: l1 l2 (p1,I) (p2,I)
cells 2: v1 v2 (l1,I) (l2,I)
cells 3: (v1,I) (v2,I)
boundary l1 = p2 - p1
boundary l2 = p2 - p1
boundary (p1,I) = p2 - p1
boundary (p2,I) = p1 - p2
boundary v1 = l2 - l1
boundary v2 = l2 - l1
boundary (l1,I) = (p2,I) - (p1,I) + l1 + l2
boundary (l2,I) = (p2,I) - (p1,I) + l1 + l2
boundary (v1,I) = (l2,I) - (l1,I) + v2 - v1
boundary (v2,I) = (l2,I) - (l1,I) + v1 - v2
)";

const char* kLieSphereTight = R"(script lie-sphere-tight
cells 0: p1 p2 ip1 ip2
cells 1: l1 l2 il1 il2 (p1,I1) (p2,I1) (p1,I2) (p2,I2)
cells 2: v1 v2 iv1 iv2 (l1,I1) (l2,I1) (l1,I2) (l2,I2)
cells 3: (v1,I1) (v2,I1) (v1,I2) (v2,I2)
boundary l1 = p2 - p1
boundary l2 = p2 - p1
boundary il1 = ip2 - ip1
boundary il2 = ip2 - ip1
boundary (p1,I1) = ip1 - p1
boundary (p2,I1) = ip2 - p2
boundary (p1,I2) = p2 - ip1
boundary (p2,I2) = p1 - ip2
boundary v1 = l2 - l1
boundary v2 = l2 - l1
boundary iv1 = il2 - il1
boundary iv2 = il2 - il1
boundary (l1,I1) = (p2,I1) - (p1,I1) - il1 + l1
boundary (l2,I1) = (p2,I1) - (p1,I1) - il2 + l2
boundary (l1,I2) = (p2,I2) - (p1,I2) + l2 + il1
boundary (l2,I2) = (p2,I2) - (p1,I2) + l1 + il2
boundary (v1,I1) = (l2,I1) - (l1,I1) + iv1 - v1
boundary (v2,I1) = (l2,I1) - (l1,I1) + iv2 - v2
boundary (v1,I2) = (l2,I2) - (l1,I2) + v2 - iv1
boundary (v2,I2) = (l2,I2) - (l1,I2) + v1 - iv2
)";

const char* kDisc = R"(script disc
cells 0: p1 p2
cells 1: l1 l2
cells 2: v
boundary l1 = p2 - p1
boundary l2 = p2 - p1
boundary v = l2 - l1
)";

Script pentagon() {
  Script s("pentagon-rp2");
  auto z = [](int j) { return std::to_string(((j - 1) % 5 + 5) % 5 + 1); };
  for (int j = 1; j <= 5; ++j) s.add_point("p" + z(j));
  for (int j = 1; j <= 5; ++j) s.add_point("q" + z(j));
  auto P = [&](int j) { return Chain::cell(0, "p" + z(j)); };
  auto Q = [&](int j) { return Chain::cell(0, "q" + z(j)); };
  for (int j = 1; j <= 5; ++j) s.add_cell(1, "k" + z(j), P(j + 1) - P(j));
  for (int j = 1; j <= 5; ++j) s.add_cell(1, "l" + z(j), P(j) - Q(j));
  for (int j = 1; j <= 5; ++j) s.add_cell(1, "m" + z(j), Q(j + 2) - Q(j));
  auto L = [&](const char* c, int j) { return Chain::cell(1, c + z(j)); };
  for (int j = 1; j <= 5; ++j)
    s.add_cell(2, "v" + z(j), L("l", j) + L("k", j) + L("k", j + 1) - L("l", j + 2) - L("m", j));
  Chain v(1);
  for (int j = 1; j <= 5; ++j) v += L("m", j);
  s.add_cell(2, "v", v);
  return s;
}

// surface with one saddle vertex (5 squares) and one cone vertex (3 squares) inside a Z^3 window
Script curvature_surface() {
  const int lo = -4, hi = 4;
  Script axis("Z", false);
  auto pt = [](int j) { return "p[" + std::to_string(j) + "]"; };
  auto ln = [](int j) { return "I[" + std::to_string(j) + "]"; };
  for (int j = lo; j <= hi; ++j) axis.add_cell(CellId{0, pt(j)});
  for (int j = lo; j < hi; ++j) axis.add_cell(1, ln(j), Chain::cell(0, pt(j + 1)) - Chain::cell(0, pt(j)));
  Script cube = cubic_product({axis, axis, axis});

  std::set<CellId> planes;
  auto add = [&](const std::string& a, const std::string& b, const std::string& c) {
    planes.insert(CellId{2, "(" + a + "," + b + "," + c + ")"});
  };
  for (int j = lo; j < hi; ++j)
    for (int k = lo; k < hi; ++k) {
      if (j < 0 && k >= 0) add(ln(j), ln(k), pt(0));   // zone 1
      if (j < 0 && k < 0) add(ln(j), ln(k), pt(0));    // zone 2
      if (j >= 0 && k < 0) add(ln(j), ln(k), pt(0));   // zone 3
      if (j >= 0 && k >= 0) add(ln(j), ln(k), pt(3));  // zone 6
    }
  for (int j = 0; j < hi; ++j)
    for (int k = 0; k <= 2; ++k) {
      add(ln(j), pt(0), ln(k));  // zone 4
      add(pt(0), ln(j), ln(k));  // zone 5
    }
  Script s = extend_with_accumulator(subscript_generated_by(cube, planes));
  s.set_name("curvature-surface");
  return s;
}

std::vector<EigenCluster> pm(std::vector<EigenCluster> half, std::size_t zeros = 0) {
  std::sort(half.begin(), half.end(), [](auto& a, auto& b) { return a.value < b.value; });
  std::vector<EigenCluster> out;
  for (auto it = half.rbegin(); it != half.rend(); ++it) out.push_back({-it->value, it->multiplicity});
  if (zeros) out.push_back({0, zeros});
  for (auto& c : half) out.push_back(c);
  return out;
}

Script pipeline(const Script& s, const char* text) { return run_pipeline(s, text).script; }

struct Registry {
  std::vector<CatalogEntry> entries;
  std::map<std::string, std::size_t> index;

  CatalogEntry& add(std::string id, Script s, std::string provenance, std::string notes = {}) {
    s.set_name(id);
    require_valid(s);
    index[id] = entries.size();
    entries.push_back(CatalogEntry{id, std::move(s), std::move(provenance), std::move(notes), {}});
    return entries.back();
  }
};

Registry build() {
  Registry r;
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0), s6 = std::sqrt(6.0), s7 = std::sqrt(7.0);
  const double r22 = 2 * s2;

  Script torus = parse_script(kTorus);
  {
    auto& e = r.add("torus", torus, "torus script with its volume cell C");
    e.expected.sound = 80;
    e.expected.eigenvalues = pm({{2, 6}, {r22, 2}}, 2);
    e.expected.monogenic = std::vector<std::string>{"l1 + l2 + l5 + l6", "l3 + l4 + l7 + l8"};
    e.expected.tight = true;
    e.expected.unitary = true;
    e.expected.dual_exists = true;
    e.expected.source = "2-torus worked example";
  }
  {
    Script t = torus;
    t.remove_cell(CellId{3, "C"});
    auto& e = r.add("torus-surface", t, "torus script without the volume cell");
    e.expected.orientable = true;
    e.expected.tight = true;
    e.expected.unitary = true;
  }
  Script klein = parse_script(kKlein);
  {
    auto& e = r.add("klein", klein, "Klein bottle");
    e.expected.sound = 72;
    e.expected.eigenvalues = pm({{s2, 2}, {2, 4}, {r22, 2}}, 1);
    e.expected.monogenic = std::vector<std::string>{"l3 + l4 + l5 + l6"};
    e.expected.orientable = false;
    e.expected.tight = true;
    e.expected.unitary = true;
    e.expected.dual_exists = false;
    e.expected.source = "Klein bottle worked example";
  }
  Script klein5 = klein;
  klein5.add_cell(2, "v5", Chain::cell(1, "l1") + Chain::cell(1, "l2"));
  {
    auto& e = r.add("klein-extended", klein5, "Klein bottle with the extra cell v5");
    e.expected.sound = 76;
    e.expected.eigenvalues = pm({{s2, 1}, {2, 5}, {r22, 2}}, 2);
    e.expected.monogenic = std::vector<std::string>{"l3 + l4 + l5 + l6", "v1 + v2 + v3 + v4 + 2 v5"};
    e.expected.source = "extended Klein bottle worked example";
  }
  {
    Script k = klein5;
    Chain c(2);
    for (auto n : {"v1", "v2", "v3", "v4"}) c.add(n, 1);
    c.add("v5", 2);
    k.add_cell(3, "C", c);
    auto& e = r.add("klein-extended-3cell", k, "extended Klein bottle closed by a 3-cell");
    e.expected.sound = 92;
    e.expected.eigenvalues = pm({{s2, 1}, {2, 5}, {r22, 3}}, 1);
    e.expected.monogenic = std::vector<std::string>{"l3 + l4 + l5 + l6"};
    e.expected.source = "extended Klein bottle with 3-cell worked example";
  }
  Script rp2 = parse_script(kRp2);
  {
    auto& e = r.add("rp2", rp2, "projective plane");
    e.expected.sound = 54;
    e.expected.eigenvalues = pm({{s2, 3}, {s3, 1}, {s6, 3}});
    e.expected.monogenic = std::vector<std::string>{};
    e.expected.orientable = false;
    e.expected.tight = true;
    e.expected.unitary = true;
    e.expected.dual_exists = false;
    e.expected.source = "projective plane worked example";
  }
  Script rp25 = rp2;
  rp25.add_cell(2, "v5", Chain::cell(1, "l1") + Chain::cell(1, "l2"));
  {
    auto& e = r.add("rp2-extended", rp25, "projective plane with the extra cell v5");
    e.expected.sound = 58;
    e.expected.eigenvalues = pm({{s2, 2}, {s3, 1}, {2, 1}, {s6, 3}}, 1);
    e.expected.monogenic = std::vector<std::string>{"v1 + v2 + v3 + v4 + 2 v5"};
    e.expected.source = "extended projective plane worked example";
  }
  {
    Script k = rp25;
    Chain c(2);
    for (auto n : {"v1", "v2", "v3", "v4"}) c.add(n, 1);
    c.add("v5", 2);
    k.add_cell(3, "C", c);
    auto& e = r.add("rp2-extended-3cell", k, "extended projective plane closed by a 3-cell");
    e.expected.sound = 74;
    e.expected.eigenvalues = pm({{s2, 2}, {s3, 1}, {2, 1}, {s6, 3}, {r22, 1}});
    e.expected.source = "extended projective plane with 3-cell worked example";
  }
  Script rect = parse_script(kMoebiusRectangle);
  r.add("moebius-rectangle", rect, "rectangle before the Moebius gluing");
  Script moebius = parse_script(kMoebius);
  {
    auto& e = r.add("moebius", moebius, "Moebius strip");
    e.expected.sound = 48;
    e.expected.eigenvalues = pm({{2, 6}}, 1);
    e.expected.monogenic = std::vector<std::string>{"l3 + l4 + l5 + l6"};
    e.expected.source = "Moebius strip worked example";
  }
  {
    Script m = moebius;
    Chain c(1);
    for (auto n : {"l5", "l6", "l3", "l4"}) c.add(n, 1);
    m.add_cell(2, "v3", c);
    auto& e = r.add("rp2-moebius", m, "projective plane from a Moebius strip and a disc");
    e.expected.sound = 56;
    e.expected.eigenvalues = pm({{2, 7}});
    e.expected.monogenic = std::vector<std::string>{};
    e.expected.source = "second projective plane model worked example";
  }
  Script two = parse_script(kTwoMoebius);
  r.add("two-moebius", two, "two Moebius strips before gluing");
  Script glued = pipeline(two, kKleinGluePipeline);
  {
    auto& e = r.add("klein-glued", glued, "two Moebius strips glued along their edges");
    e.expected.sound = 72;
    e.expected.eigenvalues = pm({{s2, 2}, {2, 2}, {s6, 4}}, 1);
    e.expected.monogenic = std::vector<std::string>{"l3 + l4 + l5 + l6"};
    e.expected.source = "second Klein bottle worked example";
  }
  {
    auto& e = r.add("klein-refined", pipeline(glued, kKleinRefinePipeline),
                    "glued Moebius strips after expand/melt, equivalent to the Klein bottle",
                    "the melted cell v'1 has boundary l'3 + l8 - l'4 - l1 (l'4, not l4)");
    e.expected.sound = 72;
  }
  {
    auto& e = r.add("portal-none", parse_script(kPortalNone), "3D world without portal");
    e.expected.sound = 120;
    e.expected.eigenvalues = pm({{s2, 2}, {2, 6}, {r22, 4}}, 1);
    e.expected.source = "3D world without portal worked example";
  }
  {
    auto& e = r.add("portal", parse_script(kPortal), "3D world with a 2D-disk portal");
    e.expected.sound = 128;
    e.expected.eigenvalues = pm({{1, 1},
                                 {s3, 1},
                                 {2, 4},
                                 {s5, 1},
                                 {std::sqrt(8 - 2 * s2), 1},
                                 {r22, 2},
                                 {s7, 1},
                                 {std::sqrt(8 + 2 * s2), 1}},
                                3);
    e.expected.monogenic = std::vector<std::string>{
        "lt1 - lb1 - lt2 + lb2", "-vi1 + vi2 - vp1 - vp2 + vp3 + vp4",
        "-2 vi1 + 2 vi2 - 4 vp2 + 4 vp3 - vt1 - vt2 + vb1 + vb2"};
    e.expected.source = "3D world with portal worked example";
  }
  {
    auto& e = r.add("pentagon-rp2", pentagon(), "pentagon model of the projective plane");
    e.expected.sound = 140;
    e.expected.eigenvalues =
        pm({{s2, 5}, {std::sqrt(5 - s5), 3}, {s5, 4}, {std::sqrt(5 + s5), 3}, {std::sqrt(10.0), 1}});
    e.expected.monogenic = std::vector<std::string>{};
    e.expected.source = "pentagon model worked example";
  }
  {
    auto& e = r.add("lie-sphere", parse_script(kLieSphere), "3D Lie sphere, two-point script",
                    "not tight: the offprints of (l1,I), (l2,I) carry two independent cycles");
    e.expected.tight = false;
  }
  {
    auto& e = r.add("lie-sphere-tight", parse_script(kLieSphereTight), "3D Lie sphere from the sphere times a double interval");
    e.expected.tight = true;
  }
  {
    auto& e = r.add("curvature-surface", curvature_surface(), "bent surface with a saddle and a cone vertex",
                    "window [-4,4]^3; P = (p[0],p[0],p[0]) has 5 squares, Q = (p[0],p[0],p[3]) has 3");
    e.expected.tight = true;
    e.expected.unitary = true;
  }
  r.add("interval", gen_interval(), "interval");
  r.add("disc", parse_script(kDisc), "disc used for the refinement example");
  {
    auto& e = r.add("addition", gen_addition(5), "five points summed by the accumulator");
    e.expected.sound = 10;
  }
  return r;
}

const Registry& registry() {
  static std::once_flag once;
  static Registry reg;
  std::call_once(once, [] { reg = build(); });
  return reg;
}

}  // namespace

const CatalogEntry& catalog_get(const std::string& id) {
  const auto& r = registry();
  auto it = r.index.find(id);
  if (it == r.index.end()) throw UnknownId("no catalog entry " + id);
  return r.entries[it->second];
}

std::vector<std::string> catalog_list() {
  std::vector<std::string> ids;
  for (auto& e : registry().entries) ids.push_back(e.id);
  return ids;
}

}  // namespace scriptgeo
