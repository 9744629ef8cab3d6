#include "techcomp/fsmodular.hpp"

#include <algorithm>
#include <set>

#include "techcomp/errors.hpp"

namespace techcomp {

EaseTable ease_table(const PatentCorpus& history, int cutoff_year) {
  std::unordered_map<std::string, std::uint64_t> patent_count;
  std::unordered_map<std::string, std::set<std::string>> partners;
  std::uint64_t used = 0;
  for (const auto& rec : history.records) {
    if (rec.year >= cutoff_year) continue;
    ++used;
    for (const auto& code : rec.codes) {
      ++patent_count[code];
      for (const auto& other : rec.codes) {
        if (other != code) partners[code].insert(other);
      }
    }
  }
  if (used == 0)
    throw Error("no patents before cutoff year " + std::to_string(cutoff_year));

  EaseTable table;
  table.cutoff_year = cutoff_year;
  table.ease.reserve(patent_count.size());
  for (const auto& [code, count] : patent_count) {
    const auto it = partners.find(code);
    const double distinct = it == partners.end()
                                ? 0.0
                                : static_cast<double>(it->second.size());
    table.ease.emplace(code, distinct / static_cast<double>(count));
  }
  return table;
}

std::optional<PatentInterdependence> patent_k(const PatentRecord& rec,
                                              const EaseTable& table) {
  double sum = 0.0;
  bool any = false;
  for (const auto& code : rec.codes) {
    if (auto e = table.get(code)) {
      sum += *e;
      any = true;
    }
  }
  if (!any || sum <= 0.0) return std::nullopt;
  PatentInterdependence out;
  out.id = rec.id;
  out.subclass_count = static_cast<std::uint32_t>(rec.codes.size());
  out.k = static_cast<double>(out.subclass_count) / sum;
  return out;
}

FsScoreTable fs_scores(const PatentWindow& w, const EaseTable& table,
                       FsDenominator denominator) {
  FsScoreTable out;
  out.year = w.anchor_year;

  // inverted index for the patents-sharing-a-subclass denominator variant
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_code;
  if (denominator == FsDenominator::patents_sharing_subclass) {
    for (std::uint32_t i = 0; i < w.size(); ++i) {
      for (const auto& code : w.record(i).codes) by_code[code].push_back(i);
    }
  }

  std::map<std::string, std::pair<double, std::uint32_t>> acc;  // sum, count
  std::set<std::string> all_techs;
  std::vector<bool> sharing;
  for (std::uint32_t i = 0; i < w.size(); ++i) {
    const PatentRecord& rec = w.record(i);
    for (const auto& code : rec.codes) all_techs.emplace(ipc4(code));

    const auto k = patent_k(rec, table);
    if (!k) {
      ++out.undefined_patents;
      continue;
    }
    double n_l;
    if (denominator == FsDenominator::own_subclass_count) {
      n_l = static_cast<double>(k->subclass_count);
    } else {
      sharing.assign(w.size(), false);
      for (const auto& code : rec.codes)
        for (std::uint32_t j : by_code[code]) sharing[j] = true;
      n_l = static_cast<double>(std::count(sharing.begin(), sharing.end(), true));
    }
    const double score = k->k / n_l;
    ++out.scored_patents;

    std::set<std::string> techs;
    for (const auto& code : rec.codes) techs.emplace(ipc4(code));
    for (const auto& tech : techs) {
      auto& slot = acc[tech];
      slot.first += score;
      slot.second += 1;
    }
  }

  for (const auto& [tech, slot] : acc) {
    out.tech_scores[tech] = slot.first / static_cast<double>(slot.second);
    out.tech_patents[tech] = slot.second;
  }
  for (const auto& tech : all_techs) {
    if (!acc.count(tech)) out.undefined_techs.push_back(tech);
  }
  return out;
}

}  // namespace techcomp
