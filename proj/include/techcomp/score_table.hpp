#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace techcomp {

/// One long-format score observation.
struct ScoreRow {
  int year = 0;
  std::string measure;
  std::string tech;  // 4-character class
  double value = 0.0;
  std::int64_t n_patents = 0;
};

struct CovariateRow {
  int year = 0;
  std::string tech;
  std::int64_t patent_count = 0;
  double mean_year = 0.0;
  double mean_inventors = 0.0;
  std::optional<double> gini;
};

struct ScoreTable {
  std::vector<ScoreRow> rows;
  std::vector<CovariateRow> covariates;
};

/// Shortest round-trip decimal rendering; keeps CSV output byte-stable.
std::string format_double(double v);

/// Appends rows to a long-format CSV (year,measure,ipc4,value,n_patents),
/// writing the header when the file is new or empty.
void append_scores_csv(const std::string& path, const std::vector<ScoreRow>& rows);

std::vector<ScoreRow> load_scores_csv(const std::string& path);

}  // namespace techcomp
