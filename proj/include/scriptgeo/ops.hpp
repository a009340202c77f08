#pragma once

#include "scriptgeo/core.hpp"

namespace scriptgeo {

struct Edit {
  enum class Kind { AddCell, RemoveCell, SetBoundary };
  Kind kind;
  CellId cell;
  Chain boundary;
  std::size_t position = 0;
};

struct OpLog {
  std::vector<std::string> ops;  // one line per high-level operation
  std::vector<Edit> edits;
  std::vector<std::string> warnings;
};

Script replay(const Script& input, const OpLog& log);

Script remove_floating_cell(const Script& s, const CellId& c, OpLog* log = nullptr);
Script remove_free_arc(const Script& s, const CellId& c, OpLog* log = nullptr);
Script create_cell(const Script& s, const std::string& name, const Chain& z, OpLog* log = nullptr);
Script pull_cells_together(const Script& s, const std::string& name, const std::set<CellId>& cocycle,
                           OpLog* log = nullptr);
Script glue(const Script& s, const CellId& keep, const CellId& remove, int sign = 1, const Integer& lambda = 1,
            const Integer& mu = 1, OpLog* log = nullptr);
Script melt(const Script& s, const std::string& new_name, const std::vector<std::pair<CellId, Integer>>& parts,
            OpLog* log = nullptr);
Script cut(const Script& s, const CellId& target, const std::string& new_name, const std::vector<CellId>& replace_in,
           OpLog* log = nullptr);

struct ExpandResult {
  Script script;
  bool free = false;
};
// extra: fresh lower cells created first (their boundaries must be cycles)
ExpandResult expand(const Script& s, const CellId& target, const std::vector<std::pair<std::string, Chain>>& parts,
                    const std::vector<std::pair<CellId, Chain>>& extra = {}, OpLog* log = nullptr);

Script minimize(const Script& s, OpLog* log = nullptr);
// repeatedly drop floating cells
Script clean(const Script& s, OpLog* log = nullptr);
Script flip(const Script& s, const std::set<CellId>& cells, OpLog* log = nullptr);

// pipeline text: one operation per line, e.g. "glue keep=l1 remove=l7 sign=-1"
struct PipelineResult {
  Script script;
  OpLog log;
};
PipelineResult run_pipeline(const Script& input, const std::string& text);

}  // namespace scriptgeo
