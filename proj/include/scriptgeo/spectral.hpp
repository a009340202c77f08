#pragma once

#include "scriptgeo/matrix.hpp"

#include <variant>

namespace scriptgeo {

// ---- duality ----

int kronecker(const CellId& a, const CellId& b);

// d c = sum of the higher cells mentioning c, weighted by that coefficient;
// the accumulator maps to sum acc(p) p
Chain dual_boundary(const Script& s, const CellId& c);

struct DualObstruction {
  enum class Kind { TopNotSingle, FreeArc, NonUnitPoint };
  Kind kind;
  std::vector<CellId> cells;
  std::string message;
};

std::string to_string(DualObstruction::Kind k);

using DualResult = std::variant<Script, DualObstruction>;

inline const std::string kDualTopName = "acc";

// grading reversed: old (m-1)-cells become points, the single top cell the accumulator,
// the old accumulator the new top cell (named "acc"). Points with an accumulator
// coefficient other than +-1 are an obstruction only when require_unit_points is set.
DualResult dual_script(const Script& s, bool require_unit_points = false);

// +-1 top-dimensional cycle covering every top cell
std::optional<Chain> orientation(const Script& s, std::size_t budget = 1000000);
bool is_orientable(const Script& s);

// ---- spectral ----

// accumulator first (when present), then cells by ascending dimension in stored order
std::vector<CellId> dirac_basis(const Script& s);
IntMatrix dirac_matrix(const Script& s);
IntMatrix laplace_matrix(const Script& s);

struct Cluster {
  double value;
  std::size_t multiplicity;
};

struct Spectrum {
  std::vector<Cluster> eigenvalues;  // ascending
  Integer sound_exact;
  double sound_float = 0;
  std::size_t size() const;
};

std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a, double tol = 1e-12, int max_sweeps = 100);
std::vector<Cluster> cluster(std::vector<double> values, double tol = 1e-8);
Spectrum spectrum(const Script& s);
Integer sound(const Script& s);

// primitive integer basis of the rational kernel, by fraction-free elimination
std::vector<std::vector<Integer>> rational_kernel(const IntMatrix& a);
std::size_t rational_rank(const IntMatrix& a);
bool same_span(const std::vector<std::vector<Integer>>& a, const std::vector<std::vector<Integer>>& b);

std::vector<MixedChain> monogenic_kernel(const Script& s);
std::vector<MixedChain> harmonic_kernel(const Script& s);
bool hodge_check(const Script& s, const MixedChain& f);

MixedChain to_mixed(const std::vector<Integer>& v, const std::vector<CellId>& basis);
std::vector<Integer> from_mixed(const MixedChain& f, const std::vector<CellId>& basis);

}  // namespace scriptgeo
