#include "moserlp/lp_model.hpp"

#include <cstdio>
#include <ostream>
#include <vector>

#include "moserlp/errors.hpp"

namespace moser {

const char* to_string(VarRole r) {
  switch (r) {
    case VarRole::fourier: return "fourier";
    case VarRole::atom: return "atom";
    case VarRole::auxiliary: return "auxiliary";
  }
  return "?";
}

const char* to_string(RowRole r) {
  switch (r) {
    case RowRole::c0: return "C0";
    case RowRole::iet: return "IET";
    case RowRole::ie1: return "IE1";
    case RowRole::ie2: return "IE2";
    case RowRole::iec: return "IEC";
    case RowRole::fcn_cover: return "FCN-cover";
    case RowRole::gfcn_congruence: return "GFCN-congruence";
  }
  return "?";
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration-limit";
  }
  return "?";
}

template <class T>
void LpModelT<T>::validate() const {
  int n = static_cast<int>(vars.size());
  std::vector<char> touched(n, 0);
  for (int j = 0; j < n; ++j)
    if (!(vars[j].obj == T{})) touched[j] = 1;
  std::vector<char> seen(n);
  for (const auto& r : rows) {
    std::fill(seen.begin(), seen.end(), 0);
    for (const auto& [col, coef] : r.terms) {
      if (col < 0 || col >= n)
        throw ValidationError("row " + r.name + ": column index out of range");
      if (seen[col]) throw ValidationError("row " + r.name + ": duplicate column entry");
      seen[col] = 1;
      touched[col] = 1;
      (void)coef;
    }
  }
  for (int j = 0; j < n; ++j)
    if (!touched[j])
      throw ValidationError("variable " + vars[j].name + " appears in no row or objective");
}

template void LpModelT<double>::validate() const;
template void LpModelT<Rational>::validate() const;

namespace {

// MPS name fields are 8 characters; synthesize stable short names.
std::string mps_name(const char* prefix, int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%s%06d", prefix, i);
  return buf;
}

std::string mps_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_mps(const LpModel& m, std::ostream& out) {
  out << "NAME          MOSERLP\n";
  out << "ROWS\n";
  out << " N  OBJ\n";
  for (size_t i = 0; i < m.rows.size(); ++i) {
    char s = m.rows[i].sense == Sense::le ? 'L' : (m.rows[i].sense == Sense::ge ? 'G' : 'E');
    out << " " << s << "  " << mps_name("R", static_cast<int>(i)) << "\n";
  }
  out << "COLUMNS\n";
  // column-major walk
  std::vector<std::vector<std::pair<int, double>>> bycol(m.vars.size());
  for (size_t i = 0; i < m.rows.size(); ++i)
    for (const auto& [col, coef] : m.rows[i].terms)
      bycol[col].emplace_back(static_cast<int>(i), coef);
  for (size_t j = 0; j < m.vars.size(); ++j) {
    std::string cn = mps_name("C", static_cast<int>(j));
    double obj = m.vars[j].obj;
    if (obj != 0) {
      // MPS convention is minimization; flip the sign for max models.
      out << "    " << cn << "  OBJ  " << mps_num(m.maximize ? -obj : obj) << "\n";
    }
    for (const auto& [row, coef] : bycol[j])
      out << "    " << cn << "  " << mps_name("R", row) << "  " << mps_num(coef) << "\n";
  }
  out << "RHS\n";
  for (size_t i = 0; i < m.rows.size(); ++i)
    if (m.rows[i].rhs != 0)
      out << "    RHS  " << mps_name("R", static_cast<int>(i)) << "  " << mps_num(m.rows[i].rhs)
          << "\n";
  out << "BOUNDS\n";
  out << "ENDATA\n";
}

void write_solution_csv(const LpModel& m, const LpSolution& s, std::ostream& out) {
  out << "name,role,value\n";
  char buf[40];
  for (size_t j = 0; j < m.vars.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", j < s.primal.size() ? s.primal[j] : 0.0);
    out << m.vars[j].name << "," << to_string(m.vars[j].role) << "," << buf << "\n";
  }
  for (size_t i = 0; i < m.rows.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", i < s.dual.size() ? s.dual[i] : 0.0);
    out << m.rows[i].name << "," << to_string(m.rows[i].role) << "," << buf << "\n";
  }
}

}  // namespace moser
