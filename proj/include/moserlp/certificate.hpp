#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "moserlp/certified_min.hpp"
#include "moserlp/moser_lp.hpp"
#include "moserlp/point.hpp"

namespace moser {

// Identifies the instance a certificate belongs to: a digest of the exact
// point set plus the grid and congruence policy it was solved with.
struct CertProvenance {
  std::uint64_t digest = 0;
  double grid_step = 0;
  double grid_t_max = 0;
  int iec_k_min = 0;
  int iec_k_max = 0;
  bool dedup = false;

  bool operator==(const CertProvenance&) const = default;
};

// Dual weights witnessing an upper bound on the density of a planar set
// avoiding unit distances. With d_ij the pair distances of the provenanced
// point set, the two feasibility conditions are
//
//   W(t) = w0*J0(t) + sum_i w1(i) + sum_{ij} w2(i,j)*J0(d_ij*t) >= 1  (t >= 0)
//   V(S) = wT - sum_{i in S} w1(i) - sum_{{i,j} in S} w2(i,j)
//          + sum_{A in S} wc(A,B) - sum_{B in S} wc(A,B)        >= 0
//
// for every independent subset S, and together they certify the bound wT.
// Entries absent from the sparse lists are zero.
struct DualCertificate {
  struct VertexDual {
    int i = 0;
    double value = 0;
    bool operator==(const VertexDual&) const = default;
  };
  struct PairDual {
    int i = 0, j = 0;
    double value = 0;
    bool operator==(const PairDual&) const = default;
  };
  struct CongruenceDual {
    std::vector<int> a, b;  // index subsets, 0-based in memory
    double value = 0;
    bool operator==(const CongruenceDual&) const = default;
  };

  double w0 = 0;
  double wT = 0;
  std::vector<VertexDual> w1;
  std::vector<PairDual> w2;
  std::vector<CongruenceDual> wc;
  CertProvenance provenance;
  std::vector<std::string> report;  // verification log, preserved verbatim

  bool operator==(const DualCertificate&) const = default;
};

// Outcome of evaluating V over every independent subset in high precision.
struct VCheckReport {
  std::size_t atoms_checked = 0;
  double min_value = 0;
  std::uint32_t argmin = 0;  // subset attaining the minimum, as a bitmask
  double nu = 0;             // max(0, -min_value)
};

// A fully verified bound. The wave deficit mu absorbs how far W dips below
// 1 between the enforced grid nodes; the atom slack nu absorbs roundoff in
// the V values. Rescaling the weights by 1/(1 - mu) restores feasibility,
// which is what the final bound accounts for.
struct CertifiedBound {
  double wT = 0;     // raw scalar from the certificate
  double nu = 0;
  double mu = 0;
  double bound = 0;  // (wT + nu) / (1 - mu)
  VCheckReport v_report;
  CertifiedMinReport min_report;
};

// FNV-1a over the canonical text serialization of the point set.
std::uint64_t point_set_digest(const PointSet& X);

// Reads the row duals of a solved instance into certificate form. Pair and
// congruence entries below 1e-9 in magnitude are dropped, and vertex duals
// are raised by 1e-8 so the wave keeps a positive margin over 1 at infinity
// even on degenerate instances; the verification slacks absorb both
// perturbations. Requires an exact instance and an optimal solution, else
// UsageError.
DualCertificate extract(const MoserLpInstance& inst, const LpSolution& s);

// Evaluates V over every atom of the instance with 128-bit arithmetic.
// Provenance mismatch is a UsageError; out-of-range indices in the
// certificate are a ValidationError.
VCheckReport check_V(const MoserLpInstance& inst, const DualCertificate& cert);

// The function W above, with pair scales derived from the exact squared
// distances of X.
WeightedBesselSum dual_wave(const PointSet& X, const DualCertificate& cert);

// Full verification against the exact point set X alone (the instance is
// not rebuilt; atoms are re-enumerated from scratch). Runs the V check,
// then certifies a minimum of W on [0, T] sampled at step h together with
// a tail bound on [T, inf). Rejections throw ValidationError: nu above
// 1e-4, tail bound below 1, or wave minimum not positive. A digest or
// mode mismatch is a UsageError.
CertifiedBound verify(const PointSet& X, const DualCertificate& cert, double T,
                      double h);

// Human-readable lines summarizing a verification, suitable for the
// [report] section of the file format.
std::vector<std::string> report_lines(const CertifiedBound& b);

// Text format, sections [meta], [scalars], [w1], [w2], [wc], [report];
// indices are 1-based on disk. parse(print(c)) == c holds exactly.
void print_certificate(const DualCertificate& c, std::ostream& out);
DualCertificate parse_certificate(std::istream& in);
DualCertificate load_certificate(const std::string& path);
void save_certificate(const DualCertificate& c, const std::string& path);

}  // namespace moser
