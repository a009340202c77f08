#pragma once

#include "scriptgeo/core.hpp"

namespace scriptgeo {

// cell of a -> (cell name in b, sign)
struct Equivalence {
  std::map<CellId, std::pair<std::string, int>> map;
};

inline constexpr std::size_t kDefaultSearchBudget = 1000000;

// throws SearchBudgetExceeded when the node budget runs out
std::optional<Equivalence> find_equivalence(const Script& a, const Script& b,
                                            std::size_t budget = kDefaultSearchBudget);
bool are_equivalent(const Script& a, const Script& b, std::size_t budget = kDefaultSearchBudget);

// flip the negatively mapped cells, then rename into b's names
Script apply_equivalence(const Script& a, const Equivalence& w);

}  // namespace scriptgeo
