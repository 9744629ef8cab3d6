#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "techcomp/corpus.hpp"

namespace techcomp {

/// Ease of recombination per full code: distinct partner codes on pre-cutoff
/// patents over the number of pre-cutoff patents listing the code. Codes
/// unseen before the cutoff are absent.
struct EaseTable {
  std::unordered_map<std::string, double> ease;
  int cutoff_year = 0;

  std::optional<double> get(const std::string& code) const {
    auto it = ease.find(code);
    if (it == ease.end()) return std::nullopt;
    return it->second;
  }
};

EaseTable ease_table(const PatentCorpus& history, int cutoff_year);

struct PatentInterdependence {
  std::string id;
  double k = 0.0;                   // subclass count over summed ease
  std::uint32_t subclass_count = 0;
};

/// Interdependence of one patent; codes absent from the table are skipped in
/// the denominator. Patents whose known-code ease sums to zero are undefined.
std::optional<PatentInterdependence> patent_k(const PatentRecord& rec,
                                              const EaseTable& table);

/// Reading of the final K/N denominator. The default divides by the patent's
/// own distinct-code count, which reduces the score to 1 / sum(E_i).
enum class FsDenominator : std::uint8_t {
  own_subclass_count,
  patents_sharing_subclass,  // distinct window patents sharing >= 1 code
};

struct FsScoreTable {
  int year = 0;
  std::map<std::string, double> tech_scores;  // mean patent score per class
  std::map<std::string, std::uint32_t> tech_patents;  // defined patents used
  std::vector<std::string> undefined_techs;  // no scorable patent
  std::uint64_t scored_patents = 0;
  std::uint64_t undefined_patents = 0;
};

FsScoreTable fs_scores(const PatentWindow& w, const EaseTable& table,
                       FsDenominator denominator = FsDenominator::own_subclass_count);

}  // namespace techcomp
