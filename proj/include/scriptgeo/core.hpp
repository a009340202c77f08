#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace scriptgeo {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

Integer gcd(const Integer& a, const Integer& b);
std::string to_string(const Integer& x);

// ---- errors ----

class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

#define SCRIPTGEO_ERROR(Name)                                               \
  class Name : public Error {                                               \
  public:                                                                   \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}            \
  };

SCRIPTGEO_ERROR(UnknownCell)
SCRIPTGEO_ERROR(DimensionMismatch)
SCRIPTGEO_ERROR(SearchBudgetExceeded)
SCRIPTGEO_ERROR(NotFloating)
SCRIPTGEO_ERROR(NotFree)
SCRIPTGEO_ERROR(NotACycle)
SCRIPTGEO_ERROR(NotACocycle)
SCRIPTGEO_ERROR(BoundaryMismatch)
SCRIPTGEO_ERROR(NonIntegerReplacement)
SCRIPTGEO_ERROR(ProportionalityViolation)
SCRIPTGEO_ERROR(BoundarySumMismatch)
SCRIPTGEO_ERROR(NotTight)
SCRIPTGEO_ERROR(NoSolution)
SCRIPTGEO_ERROR(NoConvergence)
SCRIPTGEO_ERROR(NonHomogeneous)
SCRIPTGEO_ERROR(MissingAccumulator)
SCRIPTGEO_ERROR(BadParameter)
SCRIPTGEO_ERROR(ComplexViolation)
SCRIPTGEO_ERROR(UnknownId)
SCRIPTGEO_ERROR(InternalError)

#undef SCRIPTGEO_ERROR

// ---- cells and chains ----

// name of the accumulator pseudo-cell, living one dimension below the points
inline const std::string kAccumulator = "1";

struct CellId {
  int dim = 0;
  std::string name;

  auto operator<=>(const CellId&) const = default;
  bool operator==(const CellId&) const = default;
};

std::string to_string(const CellId& c);

// sparse homogeneous chain, never stores zero coefficients
// (except raw terms inserted by the parser, kept so validate can report them)
class Chain {
public:
  Chain() = default;
  explicit Chain(int dim) : dim_(dim) {}

  static Chain cell(int dim, const std::string& name, const Integer& c = 1);
  static Chain cell(const CellId& id, const Integer& c = 1) { return cell(id.dim, id.name, c); }

  int dim() const { return dim_; }
  const std::map<std::string, Integer>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const;
  bool has_zero_terms() const;

  Integer coeff(const std::string& name) const;
  void add(const std::string& name, const Integer& c);
  void set_raw(const std::string& name, const Integer& c) { terms_[name] = c; }
  void erase(const std::string& name) { terms_.erase(name); }
  Chain canonical() const;

  std::set<CellId> support() const;
  Integer content() const;  // gcd of coefficients, 0 for the zero chain

  Chain& operator+=(const Chain& o);
  Chain& operator-=(const Chain& o);
  Chain& operator*=(const Integer& k);
  Chain operator-() const;
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(Chain a, const Integer& k) { return a *= k; }
  friend Chain operator*(const Integer& k, Chain a) { return a *= k; }
  bool operator==(const Chain& o) const;

private:
  void check_dim(const Chain& o) const;
  int dim_ = 0;
  std::map<std::string, Integer> terms_;
};

// chain whose terms may have different dimensions
struct MixedChain {
  std::map<CellId, Integer> terms;

  void add(const CellId& c, const Integer& k);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const MixedChain&) const = default;
};

// ---- script ----

struct Violation {
  enum class Kind { BoundarySquare, DanglingReference, ZeroCoefficient, WrongDimension, BadModulusCoefficient };
  Kind kind;
  CellId cell;
  std::string message;
};

using Offprint = std::map<CellId, std::set<CellId>>;

class Script {
public:
  explicit Script(std::string name = "script", bool has_accumulator = true, int base_dim = 0);

  // construction; cells are appended in insertion order per dimension
  void add_cell(const CellId& id, const Chain& boundary);
  void add_cell(const CellId& id);  // zero boundary, or acc 1 for a base cell
  void add_point(const std::string& name, const Integer& acc = 1);
  void add_cell(int dim, const std::string& name, const Chain& boundary) { add_cell(CellId{dim, name}, boundary); }
  void insert_cell(const CellId& id, const Chain& boundary, std::size_t position);
  void set_boundary(const CellId& id, const Chain& boundary);
  void set_acc(const std::string& name, const Integer& acc);
  void remove_cell(const CellId& id);
  void rename_cell(const CellId& id, const std::string& new_name);  // also rewrites references
  void set_name(std::string n) { name_ = std::move(n); }
  void set_modulus(std::optional<Integer> m) { modulus_ = std::move(m); }
  void set_has_accumulator(bool b);
  void set_tuple_arity(int a) { tuple_arity_ = a; }

  const std::string& name() const { return name_; }
  bool has_accumulator() const { return has_accumulator_; }
  const std::optional<Integer>& modulus() const { return modulus_; }
  int base_dim() const { return base_dim_; }
  int top_dim() const;  // base_dim - 1 for an empty script
  int tuple_arity() const { return tuple_arity_; }
  CellId accumulator() const { return CellId{base_dim_ - 1, kAccumulator}; }

  bool empty() const;
  std::size_t cell_count() const;
  std::vector<int> dims() const;  // dimensions that contain cells, ascending
  const std::vector<std::string>& cells(int dim) const;
  std::vector<CellId> all_cells() const;  // ascending dimension, stored order
  bool contains(const CellId& id) const;
  std::size_t index_of(const CellId& id) const;  // throws UnknownCell

  // boundary of a cell; base cells map onto the accumulator pseudo-cell
  const Chain& boundary(const CellId& id) const;
  Integer acc(const std::string& point) const;
  Chain boundary_of(const Chain& c) const;
  std::set<CellId> cofaces(const CellId& id) const;  // cells whose boundary mentions id

  bool operator==(const Script& o) const;  // cells, order and boundaries

private:
  struct DimCells {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index;
  };
  void reindex(int dim);

  std::string name_;
  bool has_accumulator_ = true;
  int base_dim_ = 0;
  int tuple_arity_ = 1;
  std::optional<Integer> modulus_;
  std::map<int, DimCells> cells_;
  std::map<CellId, Chain> boundary_;
};

// ---- script-core operations ----

std::vector<Violation> validate(const Script& s);
bool is_valid(const Script& s);
void require_valid(const Script& s);  // throws ComplexViolation

std::set<CellId> support(const Chain& c);
Offprint offprint(const Script& s);
Script subscript_generated_by(const Script& s, const std::set<CellId>& seed);
Script relabel_equivalent(const Script& s, const std::set<CellId>& flips);
bool is_unitary(const Script& s);
bool is_minimal(const Script& s);
Script reduce_mod(const Script& s, const Integer& n);
// same cells and boundaries, ignoring insertion order
bool same_structure(const Script& a, const Script& b);

// representative of x modulo n in [0, n)
Integer mod_floor(const Integer& x, const Integer& n);

}  // namespace scriptgeo
