#pragma once

#include "scriptgeo/homology.hpp"

namespace scriptgeo {

struct STightness {
  bool tight = false;
  std::size_t rank = 0;
  std::optional<Chain> generator;
};

STightness is_s_tight(const Script& s, const std::set<CellId>& U);
bool is_cell_tight(const Script& s, const CellId& c);
bool is_c_tight(const Script& s, const Chain& c);

struct CellVerdict {
  enum class Status { Tight, NotTight, Pathological };
  CellId cell;
  Status status = Status::Tight;
  std::string reason;
  // tight line: oriented from first to second
  std::optional<std::pair<std::string, std::string>> endpoints;
  // tight 2-cell: boundary lines in walking order with their signs
  std::vector<std::pair<std::string, int>> polygon;
};

struct TightnessReport {
  std::vector<CellVerdict> cells;
  bool script_tight = true;
  std::vector<CellId> failing() const;
};

TightnessReport script_tightness(const Script& s);
bool is_geoscript(const Script& s);

// rows: new k-cell with its ordered boundary support in dimension k-1
// (a single accumulator entry declares a new point)
Script solve_assignment(const Script& partial, const std::vector<std::pair<CellId, std::vector<CellId>>>& rows);
// rebuild a script from its offprint alone, dimension by dimension
Script reconstruct_from_offprint(const Script& s);

}  // namespace scriptgeo
