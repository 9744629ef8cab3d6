#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "techcomp/corpus.hpp"
#include "techcomp/evaluate.hpp"
#include "techcomp/fsmodular.hpp"
#include "techcomp/score_table.hpp"
#include "techcomp/structural.hpp"

namespace techcomp {

struct ReflectionParams {
  unsigned iterations = 20;
  double rta_threshold = 1.0;
};

const std::vector<std::string>& valid_measures();

/// Full pipeline configuration; round-trips through a single JSON file, with
/// CLI flags taking precedence over file values.
struct RunConfig {
  std::string corpus_path;
  std::string out_dir = ".";
  std::string scores_path;  // default: <out_dir>/scores.csv
  int width = 5;
  std::vector<int> years;
  std::vector<std::string> measures;  // subset of valid_measures(), or "all"
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0: TECHCOMP_WORKERS env or hardware count
  bool emit_report = false;
  int reference_year = -1;
  AgeConvention age_convention = AgeConvention::mean_year;
  ReflectionParams reflection;
  FsDenominator fs_denominator = FsDenominator::own_subclass_count;
  SamplingParams sampling;

  static RunConfig from_json(const std::string& text);
  static RunConfig from_json_file(const std::string& path);
  std::string to_json() const;

  std::string resolved_scores_path() const;
  unsigned resolved_workers() const;
};

struct ComputeResult {
  std::vector<ScoreRow> rows;      // sorted by (year, measure, tech)
  std::string skip_report_json;    // per-measure skip/drop reasons
};

/// One measure on one window year.
ComputeResult compute_measure(const PatentCorpus& corpus,
                              const std::string& measure, int year,
                              const RunConfig& cfg);

/// Runs every (year, measure) pair of the config, appends to the scores CSV,
/// writes skip reports and the resolved config, optionally the evaluation
/// report. Returns the number of score rows written.
std::size_t run(const RunConfig& cfg);

}  // namespace techcomp
