#pragma once

#include "scriptgeo/core.hpp"

namespace scriptgeo {

// ---- products ----

// truncated product: base cells have zero boundary, the result has no accumulator
Script cubic_product(const Script& a, const Script& b);
Script cubic_product(const std::vector<Script>& factors);

// give every base cell accumulator coefficient 1 and re-validate
Script extend_with_accumulator(const Script& p);

// keeps the unit factor "1" as a cell one dimension below the points; the
// all-unit cell becomes the new accumulator, so the base drops by one per factor
Script simplicial_product(const Script& a, const Script& b, bool renormalize = false);
Script simplicial_product(const std::vector<Script>& factors, bool renormalize = false);

// shift dimensions so the base is 0 and flip points with negative accumulator coefficient
Script renormalize(const Script& s);

// ---- generators ----

Script gen_interval();
Script gen_circle();
Script gen_sphere(int m);
Script gen_ball(int m);
Script gen_simplex(int m);
Script gen_cube(int l);
Script gen_multicube(const std::vector<int>& lengths);
// finite window [lo, hi] of Z per axis; edge cells keep one-sided boundaries
Script gen_grid_window(int m, int lo, int hi);
Script gen_line_window(int lo, int hi);
Script gen_polygon(int k);
Script gen_torus(const std::vector<int>& ks);
Script gen_addition(int n);

// "interval", "circle", "sphere:2", "torus:4,4", ... ; BadParameter otherwise
Script generate(const std::string& kind, const std::vector<int>& args);
std::vector<std::string> generator_kinds();

// ---- simplicial refinement ----

struct RefineResult {
  Script script;
  std::map<CellId, Chain> sigma;                          // original cell -> chain of simplexes
  std::map<std::string, std::vector<std::string>> simplices;  // simplex name -> vertex list
};

RefineResult simplicial_refine(const Script& s);

}  // namespace scriptgeo
