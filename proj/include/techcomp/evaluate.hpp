#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "techcomp/corpus.hpp"
#include "techcomp/score_table.hpp"

namespace techcomp {

/// Mean absolute pairwise difference over twice the mean, zeros included.
/// 0 for a uniform vector, (n-1)/n for a single-point mass.
double gini(std::span<const double> x);

/// Rank correlation with mid-ranks on ties. Undefined (nullopt) when either
/// side has zero rank variance.
std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y);

std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y);

/// Sorted distinct fine-level region codes of the whole corpus; the fixed
/// universe for spatial concentration.
std::vector<std::string> fine_region_universe(const PatentCorpus& corpus);

/// Per-technology covariates of one window: patent count, mean application
/// year, mean inventor entries per patent, GINI of inventor locations over
/// the fixed region universe.
std::vector<CovariateRow> covariates(const PatentWindow& w,
                                     const std::vector<std::string>& region_universe);

enum class AgeConvention : std::uint8_t {
  mean_year,  // recency: positive correlation = younger technologies score higher
  age_years,  // anchor minus mean year, flips the sign of the series
};

struct EvaluationOptions {
  int reference_year = -1;  // -1: last year in the table
  AgeConvention age = AgeConvention::mean_year;
};

struct YearValue {
  int year;
  double value;
};

struct YearRho {
  int year;
  std::optional<double> rho;
};

struct SweepPoint {
  std::int64_t threshold = 0;       // minimum patent count
  std::optional<double> rho;
  double retained_share = 0.0;      // patents covered / all patents
};

struct EvaluationReport {
  // median per year, divided by the series maximum when it is positive;
  // includes the median patent count as the extra series "patents"
  std::map<std::string, std::vector<YearValue>> trend;
  std::map<std::string, std::vector<YearRho>> age_correlation;
  std::map<std::string, std::vector<YearRho>> patent_count_correlation;
  std::map<std::string, std::vector<YearRho>> inventors_correlation;
  int reference_year = 0;
  std::map<std::string, std::optional<double>> gini_correlation;
  std::map<std::string, std::vector<SweepPoint>> patent_count_sweep;
  std::map<std::string, std::vector<SweepPoint>> gini_sweep;

  std::string to_json() const;
};

/// Correlation across technologies between a measure's scores and a covariate
/// ("patent_count", "gini", "mean_inventors", "mean_year"), re-estimated
/// while raising the minimum patent count one by one. Stops below 3
/// technologies.
std::vector<SweepPoint> size_class_sweep(const std::vector<ScoreRow>& scores,
                                         const std::vector<CovariateRow>& covs,
                                         const std::string& covariate);

/// The full stylized-facts battery over a score table with covariates.
EvaluationReport stylized_facts(const ScoreTable& table,
                                const EvaluationOptions& opts = {});

/// report.json plus one plot-ready CSV per series family.
void write_report(const EvaluationReport& report, const std::string& out_dir);

}  // namespace techcomp
