#include "moserlp/certificate.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include "moserlp/errors.hpp"
#include "moserlp/highprec.hpp"
#include "moserlp/pointset_io.hpp"
#include "moserlp/udgraph.hpp"

namespace moser {

namespace {

// Row duals this small are numerical dust; dropping them keeps files and
// wave sums sparse while the verification slacks absorb the perturbation.
constexpr double kDualDrop = 1e-9;

// Separate, coarser threshold for w0 alone. It only enters the wave, whose
// tail bound charges a flat factor of 2 against any nonzero oscillation, so
// solver noise in w0 would sink instances whose true wave is constant.
// Zeroing it perturbs the wave by less than the threshold and leaves every
// V value untouched.
constexpr double kW0Drop = 1e-6;

// Largest atom slack a certificate may carry and still count as a
// near-feasible dual. Honest solves land around 1e-10..1e-6.
constexpr double kNuCap = 1e-4;

// Raise applied to every vertex dual at extraction. The wave's limit at
// infinity is the vertex-dual sum, and on degenerate instances the solver
// leaves that sum at 1 +- its tolerance, so the tail requirement of verify
// would flip on noise. The raise buys a deterministic margin; the atom
// slack absorbs the shift (at most n * kW1Lift).
constexpr double kW1Lift = 1e-8;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_digest(std::uint64_t d) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

double parse_double_tok(const std::string& tok) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty())
    throw UsageError("certificate file: bad number '" + tok + "'");
  if (!std::isfinite(v))
    throw UsageError("certificate file: non-finite value '" + tok + "'");
  return v;
}

int parse_int_tok(const std::string& tok) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size())
      throw UsageError("certificate file: bad integer '" + tok + "'");
    return v;
  } catch (const UsageError&) {
    throw;
  } catch (...) {
    throw UsageError("certificate file: bad integer '" + tok + "'");
  }
}

int parse_index_tok(const std::string& tok) {
  int v = parse_int_tok(tok);
  if (v < 1) throw UsageError("certificate file: bad index '" + tok + "'");
  return v - 1;
}

std::vector<int> parse_index_list(const std::string& tok) {
  std::vector<int> out;
  std::string cur;
  std::istringstream ss(tok);
  while (std::getline(ss, cur, ','))
    out.push_back(parse_index_tok(cur));
  if (out.empty()) throw UsageError("certificate file: empty index list");
  return out;
}

std::string join_indices(const std::vector<int>& idx) {
  std::string s;
  for (size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(idx[k] + 1);
  }
  return s;
}

std::string strip_line(const std::string& raw, bool keep_comments) {
  std::string s = raw;
  if (!s.empty() && s.back() == '\r') s.pop_back();
  if (keep_comments) return s;
  size_t hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

CertProvenance provenance_of(const MoserLpInstance& inst) {
  CertProvenance p;
  p.digest = point_set_digest(inst.X);
  p.grid_step = inst.grid.step;
  p.grid_t_max = inst.grid.t_max;
  p.iec_k_min = inst.iec_k_min;
  p.iec_k_max = inst.iec_k_max;
  p.dedup = inst.dedup;
  return p;
}

void check_vertex(int i, int n) {
  if (i < 0 || i >= n)
    throw ValidationError("certificate references vertex " + std::to_string(i + 1) +
                          " of a " + std::to_string(n) + "-point set");
}

// Evaluates V over every atom with 128-bit arithmetic. The certificate
// entries are exact binary doubles, so the only rounding is in the
// accumulation itself, far below the reported precision.
VCheckReport v_core(int n, const std::vector<uint32_t>& atoms,
                    const DualCertificate& cert) {
  struct MaskTerm {
    uint32_t mask = 0;
    double value = 0;
  };
  struct SplitTerm {
    uint32_t a = 0, b = 0;
    double value = 0;
  };
  std::vector<MaskTerm> ones, twos;
  ones.reserve(cert.w1.size());
  twos.reserve(cert.w2.size());
  for (const auto& e : cert.w1) {
    check_vertex(e.i, n);
    ones.push_back(MaskTerm{1u << e.i, e.value});
  }
  for (const auto& e : cert.w2) {
    check_vertex(e.i, n);
    check_vertex(e.j, n);
    if (e.i == e.j) throw ValidationError("certificate pair entry repeats a vertex");
    twos.push_back(MaskTerm{(1u << e.i) | (1u << e.j), e.value});
  }
  std::vector<SplitTerm> cons;
  cons.reserve(cert.wc.size());
  for (const auto& e : cert.wc) {
    uint32_t ma = 0, mb = 0;
    for (int i : e.a) {
      check_vertex(i, n);
      ma |= 1u << i;
    }
    for (int i : e.b) {
      check_vertex(i, n);
      mb |= 1u << i;
    }
    cons.push_back(SplitTerm{ma, mb, e.value});
  }

  constexpr mpfr_prec_t kPrec = 128;
  Big acc(kPrec), best(kPrec);
  bool have_best = false;
  uint32_t argmin = 0;
  for (uint32_t S : atoms) {
    acc.set(cert.wT);
    for (const auto& t : ones)
      if ((S & t.mask) == t.mask) acc.add_d(acc, -t.value, MPFR_RNDN);
    for (const auto& t : twos)
      if ((S & t.mask) == t.mask) acc.add_d(acc, -t.value, MPFR_RNDN);
    for (const auto& t : cons) {
      if ((S & t.a) == t.a) acc.add_d(acc, t.value, MPFR_RNDN);
      if ((S & t.b) == t.b) acc.add_d(acc, -t.value, MPFR_RNDN);
    }
    if (!have_best || acc.cmp(best) < 0) {
      best.set(acc, MPFR_RNDN);
      argmin = S;
      have_best = true;
    }
  }

  VCheckReport rep;
  rep.atoms_checked = atoms.size();
  rep.min_value = have_best ? best.to_double(MPFR_RNDD) : 0.0;
  rep.argmin = argmin;
  rep.nu = std::max(0.0, -rep.min_value);
  return rep;
}

}  // namespace

std::uint64_t point_set_digest(const PointSet& X) {
  std::ostringstream os;
  PointSetFile f;
  f.points = X;
  print_point_set(f, os);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

DualCertificate extract(const MoserLpInstance& inst, const LpSolution& s) {
  if (s.status != LpStatus::optimal)
    throw UsageError(std::string("certificate extraction requires an optimal solution, got ") +
                     to_string(s.status));
  if (!inst.X.is_exact())
    throw UsageError("certificate extraction requires an exact point set");
  if (s.dual.size() != inst.model.rows.size() || inst.iet_row < 0)
    throw UsageError("solution does not match the instance");

  DualCertificate c;
  c.w0 = inst.c0_row >= 0 ? s.dual[inst.c0_row] : 0.0;
  if (std::fabs(c.w0) < kW0Drop) c.w0 = 0.0;
  c.wT = s.dual[inst.iet_row];
  for (const auto& [v, row] : inst.ie1_rows)
    c.w1.push_back(DualCertificate::VertexDual{v, s.dual[row] + kW1Lift});
  for (const auto& pr : inst.ie2_rows) {
    double y = s.dual[pr.row];
    if (std::fabs(y) >= kDualDrop)
      c.w2.push_back(DualCertificate::PairDual{pr.i, pr.j, y});
  }
  for (size_t k = 0; k < inst.iec_rows.size(); ++k) {
    double y = s.dual[inst.iec_rows[k]];
    if (std::fabs(y) >= kDualDrop)
      c.wc.push_back(
          DualCertificate::CongruenceDual{inst.iec_pairs[k].a, inst.iec_pairs[k].b, y});
  }
  c.provenance = provenance_of(inst);
  return c;
}

VCheckReport check_V(const MoserLpInstance& inst, const DualCertificate& cert) {
  if (!(provenance_of(inst) == cert.provenance))
    throw UsageError("certificate provenance does not match the instance");
  return v_core(inst.X.size(), inst.atoms, cert);
}

WeightedBesselSum dual_wave(const PointSet& X, const DualCertificate& cert) {
  const int n = X.size();
  WeightedBesselSum f;
  f.w0 = cert.w0;
  double c = 0;
  for (const auto& e : cert.w1) {
    check_vertex(e.i, n);
    c += e.value;
  }
  f.const_term = c;
  for (const auto& e : cert.w2) {
    check_vertex(e.i, n);
    check_vertex(e.j, n);
    if (e.i == e.j) throw ValidationError("certificate pair entry repeats a vertex");
    f.terms.push_back(
        WeightedBesselSum::Term{e.value, std::sqrt(X.dist_sq_d(e.i, e.j))});
  }
  return f;
}

CertifiedBound verify(const PointSet& X, const DualCertificate& cert, double T,
                      double h) {
  if (!X.is_exact()) throw UsageError("verification requires an exact point set");
  if (point_set_digest(X) != cert.provenance.digest)
    throw UsageError("certificate was issued for a different point set");
  if (!(T > 0) || !(h > 0)) throw UsageError("verification needs T > 0 and h > 0");

  UnitDistanceGraph G = build_udg(X);
  std::vector<uint32_t> atoms = independent_sets(G);

  CertifiedBound out;
  out.wT = cert.wT;
  out.v_report = v_core(X.size(), atoms, cert);
  out.nu = out.v_report.nu;
  if (out.nu > kNuCap)
    throw ValidationError("certificate rejected: atom slack " + format_double(out.nu) +
                          " exceeds " + format_double(kNuCap));

  WeightedBesselSum W = dual_wave(X, cert);
  out.min_report = certified_min(W, T, h);
  if (!(out.min_report.tail_lower >= 1.0))
    throw ValidationError("certificate rejected: wave tail bound " +
                          format_double(out.min_report.tail_lower) + " is below 1");
  double m = std::min(out.min_report.certified_lower, out.min_report.tail_lower);
  if (!(m > 0))
    throw ValidationError("certificate rejected: certified wave minimum " +
                          format_double(out.min_report.certified_lower) +
                          " is not positive");
  out.mu = std::max(0.0, 1.0 - m);
  out.bound = (out.wT + out.nu) / (1.0 - out.mu);
  return out;
}

std::vector<std::string> report_lines(const CertifiedBound& b) {
  std::vector<std::string> L;
  L.push_back("atoms-checked " + std::to_string(b.v_report.atoms_checked));
  L.push_back("v-min " + format_double(b.v_report.min_value) + " at {" +
              join_indices(mask_to_indices(b.v_report.argmin)) + "}");
  L.push_back("nu " + format_double(b.nu));
  L.push_back("observed-min " + format_double(b.min_report.observed_min) + " at t " +
              format_double(b.min_report.observed_argmin));
  L.push_back("certified-min " + format_double(b.min_report.certified_lower));
  L.push_back("tail " + format_double(b.min_report.tail_lower));
  L.push_back("mu " + format_double(b.mu));
  L.push_back("bound " + format_double(b.bound));
  return L;
}

void print_certificate(const DualCertificate& c, std::ostream& out) {
  out << "[meta]\n";
  out << "digest " << format_digest(c.provenance.digest) << "\n";
  out << "grid " << format_double(c.provenance.grid_step) << " "
      << format_double(c.provenance.grid_t_max) << "\n";
  out << "iec " << c.provenance.iec_k_min << " " << c.provenance.iec_k_max << " "
      << (c.provenance.dedup ? "dedup" : "full") << "\n";
  out << "[scalars]\n";
  out << "w0 " << format_double(c.w0) << "\n";
  out << "wT " << format_double(c.wT) << "\n";
  out << "[w1]\n";
  for (const auto& e : c.w1)
    out << e.i + 1 << " " << format_double(e.value) << "\n";
  out << "[w2]\n";
  for (const auto& e : c.w2)
    out << e.i + 1 << " " << e.j + 1 << " " << format_double(e.value) << "\n";
  out << "[wc]\n";
  for (const auto& e : c.wc)
    out << join_indices(e.a) << " " << join_indices(e.b) << " "
        << format_double(e.value) << "\n";
  if (!c.report.empty()) {
    out << "[report]\n";
    for (const auto& line : c.report) out << line << "\n";
  }
}

DualCertificate parse_certificate(std::istream& in) {
  enum class Section { none, meta, scalars, w1, w2, wc, report };
  Section sec = Section::none;
  DualCertificate c;
  bool have_digest = false, have_grid = false, have_iec = false;
  bool have_w0 = false, have_wT = false;

  std::string raw;
  while (std::getline(in, raw)) {
    if (sec == Section::report) {
      c.report.push_back(strip_line(raw, true));
      continue;
    }
    std::string s = strip_line(raw, false);
    if (s.empty()) continue;
    if (s[0] == '[') {
      if (s == "[meta]")
        sec = Section::meta;
      else if (s == "[scalars]")
        sec = Section::scalars;
      else if (s == "[w1]")
        sec = Section::w1;
      else if (s == "[w2]")
        sec = Section::w2;
      else if (s == "[wc]")
        sec = Section::wc;
      else if (s == "[report]")
        sec = Section::report;
      else
        throw UsageError("certificate file: unknown section " + s);
      continue;
    }
    auto toks = split_ws(s);
    switch (sec) {
      case Section::meta: {
        if (toks[0] == "digest" && toks.size() == 2) {
          if (toks[1].empty() ||
              toks[1].find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
            throw UsageError("certificate file: bad digest '" + toks[1] + "'");
          errno = 0;
          c.provenance.digest = std::strtoull(toks[1].c_str(), nullptr, 16);
          if (errno != 0)
            throw UsageError("certificate file: bad digest '" + toks[1] + "'");
          have_digest = true;
        } else if (toks[0] == "grid" && toks.size() == 3) {
          c.provenance.grid_step = parse_double_tok(toks[1]);
          c.provenance.grid_t_max = parse_double_tok(toks[2]);
          have_grid = true;
        } else if (toks[0] == "iec" && toks.size() == 4) {
          c.provenance.iec_k_min = parse_int_tok(toks[1]);
          c.provenance.iec_k_max = parse_int_tok(toks[2]);
          if (toks[3] == "dedup")
            c.provenance.dedup = true;
          else if (toks[3] == "full")
            c.provenance.dedup = false;
          else
            throw UsageError("certificate file: bad iec mode '" + toks[3] + "'");
          have_iec = true;
        } else {
          throw UsageError("certificate file: bad meta line '" + s + "'");
        }
        break;
      }
      case Section::scalars: {
        if (toks.size() != 2)
          throw UsageError("certificate file: bad scalar line '" + s + "'");
        if (toks[0] == "w0") {
          c.w0 = parse_double_tok(toks[1]);
          have_w0 = true;
        } else if (toks[0] == "wT") {
          c.wT = parse_double_tok(toks[1]);
          have_wT = true;
        } else {
          throw UsageError("certificate file: unknown scalar '" + toks[0] + "'");
        }
        break;
      }
      case Section::w1: {
        if (toks.size() != 2)
          throw UsageError("certificate file: bad w1 line '" + s + "'");
        c.w1.push_back(DualCertificate::VertexDual{parse_index_tok(toks[0]),
                                                   parse_double_tok(toks[1])});
        break;
      }
      case Section::w2: {
        if (toks.size() != 3)
          throw UsageError("certificate file: bad w2 line '" + s + "'");
        c.w2.push_back(DualCertificate::PairDual{parse_index_tok(toks[0]),
                                                 parse_index_tok(toks[1]),
                                                 parse_double_tok(toks[2])});
        break;
      }
      case Section::wc: {
        if (toks.size() != 3)
          throw UsageError("certificate file: bad wc line '" + s + "'");
        c.wc.push_back(DualCertificate::CongruenceDual{parse_index_list(toks[0]),
                                                       parse_index_list(toks[1]),
                                                       parse_double_tok(toks[2])});
        break;
      }
      case Section::none:
        throw UsageError("certificate file: content before the first section");
      case Section::report:
        break;
    }
  }
  if (!have_digest || !have_grid || !have_iec)
    throw UsageError("certificate file: incomplete [meta] section");
  if (!have_w0 || !have_wT)
    throw UsageError("certificate file: incomplete [scalars] section");
  return c;
}

DualCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open certificate file: " + path);
  return parse_certificate(in);
}

void save_certificate(const DualCertificate& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write certificate file: " + path);
  print_certificate(c, out);
}

}  // namespace moser
