#pragma once

#include "scriptgeo/core.hpp"

namespace scriptgeo {

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t col, const std::string& msg)
      : Error("ParseError", std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

private:
  std::size_t line_, col_;
};

class SemanticError : public Error {
public:
  SemanticError(const std::string& cell, const std::string& msg) : Error("SemanticError", cell + ": " + msg), cell_(cell) {}
  const std::string& cell() const { return cell_; }

private:
  std::string cell_;
};

// file format
Script parse_script(const std::string& text);
std::string print_script(const Script& s);

// "2 a - b + c", "a+b", "-2c"; col_offset positions diagnostics inside a line
struct Term {
  Integer coeff;
  std::string name;
  std::size_t col;
};
std::vector<Term> parse_terms(const std::string& text, std::size_t line = 1, std::size_t col_offset = 1);

// cell names are resolved against s; a name present in several dimensions is ambiguous
CellId resolve_cell(const Script& s, const std::string& name);
Chain parse_chain(const Script& s, const std::string& text);
std::string format_chain(const Script& s, const Chain& c);
std::string format_terms(const std::vector<std::pair<std::string, Integer>>& terms);

// split on a separator outside brackets and parentheses
std::vector<std::string> split_top(const std::string& text, char sep);
bool valid_name(const std::string& name);

}  // namespace scriptgeo
