#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "moserlp/rational.hpp"

namespace moser {

enum class Sense { le, ge, eq };
enum class VarRole { fourier, atom, auxiliary };
enum class RowRole { c0, iet, ie1, ie2, iec, fcn_cover, gfcn_congruence };

const char* to_string(VarRole r);
const char* to_string(RowRole r);

// Sparse LP over value type T (double for numeric solves, Rational for exact
// ones). All variables are nonnegative with no upper bound; the objective is
// maximized unless `maximize` is cleared.
template <class T>
struct LpModelT {
  struct Var {
    std::string name;
    VarRole role = VarRole::auxiliary;
    T obj{};
  };
  struct Row {
    std::string name;
    RowRole role = RowRole::fcn_cover;
    Sense sense = Sense::eq;
    T rhs{};
    std::vector<std::pair<int, T>> terms;  // (column, coefficient)
  };

  bool maximize = true;
  std::vector<Var> vars;
  std::vector<Row> rows;

  int add_var(std::string name, VarRole role, T obj) {
    vars.push_back({std::move(name), role, std::move(obj)});
    return static_cast<int>(vars.size()) - 1;
  }
  int add_row(std::string name, RowRole role, Sense sense, T rhs,
              std::vector<std::pair<int, T>> terms) {
    rows.push_back({std::move(name), role, sense, std::move(rhs), std::move(terms)});
    return static_cast<int>(rows.size()) - 1;
  }

  size_t nonzeros() const {
    size_t n = 0;
    for (const auto& r : rows) n += r.terms.size();
    return n;
  }

  // Throws ValidationError on invalid indices, duplicate entries within a
  // row, or variables that appear nowhere.
  void validate() const;
};

using LpModel = LpModelT<double>;
using LpModelQ = LpModelT<Rational>;

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };
const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  double objective = 0;
  std::vector<double> primal;  // per model variable
  std::vector<double> dual;    // per model row
  double primal_residual = 0;  // max |Ax - b| over violated senses
  double dual_gap = 0;         // |primal obj - dual obj|
  int iterations = 0;
};

// Fixed-format MPS export (for cross-checks with external tools).
void write_mps(const LpModel& m, std::ostream& out);

// Solution export as `name,role,value` rows, variables then constraints.
void write_solution_csv(const LpModel& m, const LpSolution& s, std::ostream& out);

}  // namespace moser
