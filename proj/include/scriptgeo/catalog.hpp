#pragma once

#include "scriptgeo/core.hpp"

#include <optional>

namespace scriptgeo {

struct EigenCluster {
  double value;
  std::size_t multiplicity;
};

// known results for an entry; `source` names the worked example they come from
struct Expected {
  std::optional<Integer> sound;
  std::vector<EigenCluster> eigenvalues;  // ascending
  std::optional<std::vector<std::string>> monogenic;  // spanning chains, empty = trivial kernel
  std::optional<bool> orientable;
  std::optional<bool> tight;
  std::optional<bool> unitary;
  std::optional<bool> dual_exists;
  std::string source;
};

struct CatalogEntry {
  std::string id;
  Script script;
  std::string provenance;
  std::string notes;
  Expected expected;
};

const CatalogEntry& catalog_get(const std::string& id);  // throws UnknownId
std::vector<std::string> catalog_list();

// operation pipelines used to build some entries
extern const char* const kMoebiusPipeline;  // moebius-rectangle -> moebius
extern const char* const kKleinGluePipeline;  // two-moebius -> klein-glued
extern const char* const kKleinRefinePipeline;  // klein-glued -> klein-refined

}  // namespace scriptgeo
