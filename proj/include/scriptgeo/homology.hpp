#pragma once

#include "scriptgeo/matrix.hpp"

namespace scriptgeo {

struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, ascending

  bool trivial() const { return rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup&) const = default;
};

std::string to_string(const HomologyGroup& h);

// basis of C_{k-1}, or the accumulator for the base dimension (empty when truncated)
std::vector<CellId> row_basis(const Script& s, int k);
// column j holds the coefficients of the boundary of the j-th k-cell
IntMatrix boundary_matrix(const Script& s, int k);

HomologyGroup homology(const Script& s, int k);
std::map<int, HomologyGroup> homology_all(const Script& s);  // base-1 .. top

// U ordered as in the script; returned chains are primitive
std::vector<Chain> relative_cycles(const Script& s, const std::set<CellId>& U, const std::set<CellId>& V);
HomologyGroup relative_homology(const Script& s, const std::set<CellId>& U, const std::set<CellId>& V);

// helpers shared with tightness
std::vector<CellId> ordered(const Script& s, const std::set<CellId>& cells);
std::vector<Integer> coords(const Chain& c, const std::vector<CellId>& basis);
Chain chain_from(const std::vector<Integer>& v, const std::vector<CellId>& basis, int dim);

}  // namespace scriptgeo
