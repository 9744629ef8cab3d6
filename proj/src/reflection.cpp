#include "techcomp/reflection.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "techcomp/errors.hpp"
#include "techcomp/evaluate.hpp"

namespace techcomp {

std::vector<double> z_standardize(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / double(n - 1));
  if (sd <= 0.0) return out;
  for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] - mean) / sd;
  return out;
}

RtaMatrix rta(const RegionTechMatrix& m) {
  const std::int64_t total = m.total();
  if (total <= 0) throw EmptyMatrixError("region-technology matrix is all zero");

  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::int64_t> row_sum(nr, 0), col_sum(nc, 0);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      row_sum[r] += m.at(r, c);
      col_sum[c] += m.at(r, c);
    }
  }

  RtaMatrix out;
  out.regions = m.regions;
  out.techs = m.techs;
  out.values.assign(nr * nc, 0.0);
  for (std::size_t r = 0; r < nr; ++r) {
    if (row_sum[r] == 0) continue;
    const double region_share =
        static_cast<double>(row_sum[r]) / static_cast<double>(total);
    for (std::size_t c = 0; c < nc; ++c) {
      if (col_sum[c] == 0 || m.at(r, c) == 0) continue;
      const double tech_share =
          static_cast<double>(m.at(r, c)) / static_cast<double>(col_sum[c]);
      out.at(r, c) = tech_share / region_share;
    }
  }
  return out;
}

IncidenceMatrix incidence(const RtaMatrix& r, double threshold) {
  IncidenceMatrix out;
  out.regions = r.regions;
  out.techs = r.techs;
  const std::size_t nr = out.regions.size(), nc = out.techs.size();
  out.m.assign(nr * nc, 0);
  out.row_sums.assign(nr, 0);
  out.col_sums.assign(nc, 0);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (r.at(i, c) > threshold) {
        out.m[i * nc + c] = 1;
        ++out.row_sums[i];
        ++out.col_sums[c];
      }
    }
  }
  return out;
}

std::vector<std::size_t> IncidenceMatrix::zero_rows() const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < row_sums.size(); ++r)
    if (row_sums[r] == 0) out.push_back(r);
  return out;
}

std::vector<std::size_t> IncidenceMatrix::zero_cols() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < col_sums.size(); ++c)
    if (col_sums[c] == 0) out.push_back(c);
  return out;
}

namespace {

struct Compacted {
  std::vector<std::size_t> rows, cols;  // kept original indices
  std::vector<std::string> dropped_regions, dropped_techs;
};

Compacted drop_zero_lines(const IncidenceMatrix& m) {
  Compacted c;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row_sums[r] > 0)
      c.rows.push_back(r);
    else
      c.dropped_regions.push_back(m.regions[r]);
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (m.col_sums[j] > 0)
      c.cols.push_back(j);
    else
      c.dropped_techs.push_back(m.techs[j]);
  }
  return c;
}

}  // namespace

KciResult method_of_reflection(const IncidenceMatrix& m, unsigned iterations) {
  const Compacted keep = drop_zero_lines(m);
  const std::size_t nr = keep.rows.size(), nc = keep.cols.size();
  if (nr == 0 || nc == 0)
    throw EmptyMatrixError("incidence matrix empty after dropping zero lines");

  KciResult out;
  out.iterations = iterations;
  out.dropped_regions = keep.dropped_regions;
  out.dropped_techs = keep.dropped_techs;
  out.regions.reserve(nr);
  for (std::size_t r : keep.rows) out.regions.push_back(m.regions[r]);
  out.techs.reserve(nc);
  for (std::size_t c : keep.cols) out.techs.push_back(m.techs[c]);

  std::vector<double> kr(nr), kc(nc);
  for (std::size_t i = 0; i < nr; ++i)
    kr[i] = static_cast<double>(m.row_sums[keep.rows[i]]);
  for (std::size_t j = 0; j < nc; ++j)
    kc[j] = static_cast<double>(m.col_sums[keep.cols[j]]);
  const std::vector<double> kr0 = kr, kc0 = kc;

  std::vector<double> kr_next(nr), kc_next(nc);
  for (unsigned it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < nr; ++i) {
      double sum = 0.0;
      const std::size_t r = keep.rows[i];
      for (std::size_t j = 0; j < nc; ++j)
        if (m.at(r, keep.cols[j])) sum += kc[j];
      kr_next[i] = sum / kr0[i];
    }
    for (std::size_t j = 0; j < nc; ++j) {
      double sum = 0.0;
      const std::size_t c = keep.cols[j];
      for (std::size_t i = 0; i < nr; ++i)
        if (m.at(keep.rows[i], c)) sum += kr[i];
      kc_next[j] = sum / kc0[j];
    }
    kr.swap(kr_next);
    kc.swap(kc_next);
  }

  out.region_scores = std::move(kr);
  out.tech_scores_raw = kc;
  out.tech_scores = z_standardize(kc);
  return out;
}

EigenComplexity eigen_complexity(const IncidenceMatrix& m) {
  const Compacted keep = drop_zero_lines(m);
  const std::size_t nr = keep.rows.size(), nc = keep.cols.size();
  if (nr == 0 || nc == 0)
    throw EmptyMatrixError("incidence matrix empty after dropping zero lines");
  if (nc < 2) throw Error("eigen complexity needs at least 2 technologies");

  // B = Dc^-1 S with S[c][c'] = sum_r M[r][c] M[r][c'] / Kr0. Eigenpairs come
  // from the symmetric similarity Dc^-1/2 S Dc^-1/2.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nc),
                                            static_cast<Eigen::Index>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    const std::size_t r = keep.rows[i];
    const double kr0 = static_cast<double>(m.row_sums[r]);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < nc; ++j)
      if (m.at(r, keep.cols[j])) cols.push_back(j);
    for (std::size_t a : cols)
      for (std::size_t b : cols)
        s(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += 1.0 / kr0;
  }
  Eigen::VectorXd inv_sqrt(static_cast<Eigen::Index>(nc));
  for (std::size_t j = 0; j < nc; ++j)
    inv_sqrt[static_cast<Eigen::Index>(j)] =
        1.0 / std::sqrt(static_cast<double>(m.col_sums[keep.cols[j]]));
  const Eigen::MatrixXd sym =
      inv_sqrt.asDiagonal() * s * inv_sqrt.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  const Eigen::VectorXd eig = solver.eigenvalues();  // ascending
  const auto k = static_cast<Eigen::Index>(nc);
  const double lambda1 = eig[k - 1], lambda2 = eig[k - 2];
  const double tol = 1e-10 * std::max(1.0, std::abs(lambda1));
  const bool tied_top = lambda1 - lambda2 < tol;
  const bool tied_below = k >= 3 && lambda2 - eig[k - 3] < tol;
  if (tied_top || tied_below) {
    std::vector<double> spectrum(eig.data(), eig.data() + k);
    throw DegenerateSpectrumError(
        "no unique second eigenvector: eigenvalue " + std::to_string(lambda2) +
            " is not separated from its neighbours",
        std::move(spectrum));
  }

  // back-transform the symmetric eigenvector to an eigenvector of B
  Eigen::VectorXd v = solver.eigenvectors().col(k - 2);
  std::vector<double> scores(nc);
  for (std::size_t j = 0; j < nc; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    scores[j] = inv_sqrt[jj] * v[jj];
  }

  const KciResult kci = method_of_reflection(m, 20);
  const auto rho = spearman(scores, kci.tech_scores_raw);
  bool flip = false;
  if (rho.has_value() && *rho != 0.0) {
    flip = *rho < 0.0;
  } else {
    // undefined or zero correlation: make the largest-magnitude entry positive
    std::size_t arg = 0;
    for (std::size_t j = 1; j < nc; ++j)
      if (std::abs(scores[j]) > std::abs(scores[arg])) arg = j;
    flip = scores[arg] < 0.0;
  }
  if (flip)
    for (double& x : scores) x = -x;

  EigenComplexity out;
  out.techs.reserve(nc);
  for (std::size_t c : keep.cols) out.techs.push_back(m.techs[c]);
  out.tech_scores = z_standardize(scores);
  out.eigenvalue = lambda2;
  out.dropped_regions = keep.dropped_regions;
  out.dropped_techs = keep.dropped_techs;
  return out;
}

}  // namespace techcomp
