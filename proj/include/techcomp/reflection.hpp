#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "techcomp/corpus.hpp"

namespace techcomp {

/// Regional technological advantage: a region's share of a technology's
/// patents over its share of all patents. Cells in rows or columns with a
/// zero marginal are 0.
struct RtaMatrix {
  std::vector<std::string> regions;
  std::vector<std::string> techs;
  std::vector<double> values;  // row-major

  double at(std::size_t r, std::size_t c) const {
    return values[r * techs.size() + c];
  }
  double& at(std::size_t r, std::size_t c) {
    return values[r * techs.size() + c];
  }
};

RtaMatrix rta(const RegionTechMatrix& m);

/// Binary specialization matrix: 1 where RTA strictly exceeds the threshold.
struct IncidenceMatrix {
  std::vector<std::string> regions;
  std::vector<std::string> techs;
  std::vector<std::uint8_t> m;          // row-major
  std::vector<std::int64_t> row_sums;   // diversity K_{r,0}
  std::vector<std::int64_t> col_sums;   // ubiquity K_{c,0}

  std::uint8_t at(std::size_t r, std::size_t c) const {
    return m[r * techs.size() + c];
  }
  std::size_t rows() const { return regions.size(); }
  std::size_t cols() const { return techs.size(); }
  /// All-zero rows/columns; such lines are dropped by the iterative measures.
  std::vector<std::size_t> zero_rows() const;
  std::vector<std::size_t> zero_cols() const;
};

IncidenceMatrix incidence(const RtaMatrix& r, double threshold = 1.0);

struct KciResult {
  std::vector<std::string> regions;            // kept rows
  std::vector<std::string> techs;              // kept columns
  std::vector<double> region_scores;           // iteration-n, raw
  std::vector<double> tech_scores_raw;         // iteration-n, raw
  std::vector<double> tech_scores;             // z-standardized
  unsigned iterations = 0;
  std::vector<std::string> dropped_regions;
  std::vector<std::string> dropped_techs;
};

/// Method of reflection: alternate averaging of the opposite side's previous
/// iteration over the incidence structure, starting from diversity/ubiquity.
KciResult method_of_reflection(const IncidenceMatrix& m, unsigned iterations = 20);

struct EigenComplexity {
  std::vector<std::string> techs;    // kept columns
  std::vector<double> tech_scores;   // z-standardized, sign-oriented
  double eigenvalue = 0.0;           // second-largest
  int eigenvalue_rank = 2;
  std::vector<std::string> dropped_regions;
  std::vector<std::string> dropped_techs;
};

/// Eigenvector variant: second eigenvector of the row-stochastic technology
/// similarity matrix B with B[c][c'] = sum_r M[r][c] M[r][c'] / (Kc0 * Kr0).
/// Sign is oriented so the rank correlation with the 20-iteration reflection
/// scores is non-negative.
EigenComplexity eigen_complexity(const IncidenceMatrix& m);

/// (x - mean) / sd with the n-1 divisor; all zero when sd == 0.
std::vector<double> z_standardize(const std::vector<double>& x);

}  // namespace techcomp
