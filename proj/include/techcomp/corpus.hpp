#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "techcomp/errors.hpp"

namespace techcomp {

/// One patent application: opaque id, application year, full classification
/// codes (duplicates collapsed) and one region entry per inventor.
struct PatentRecord {
  std::string id;
  int year = 0;
  std::vector<std::string> codes;    // sorted, unique
  std::vector<std::string> regions;  // multiplicity preserved
};

/// 4-character technology class of a full classification code.
inline std::string_view ipc4(std::string_view code) {
  return code.substr(0, code.size() < 4 ? code.size() : 4);
}

/// Coarse (prefix) level of a fine region code.
inline std::string_view region_prefix(std::string_view region) {
  return region.substr(0, region.size() < 4 ? region.size() : 4);
}

struct PatentCorpus {
  std::vector<PatentRecord> records;
  int min_year = 0;
  int max_year = -1;  // min_year > max_year marks an empty corpus
  bool empty() const { return records.empty(); }
};

/// Builds a corpus, deriving the year range from the records.
PatentCorpus make_corpus(std::vector<PatentRecord> records);

struct CsvSchema {
  std::string id_col = "id";
  std::string year_col = "year";
  std::string codes_col = "codes";
  std::string regions_col = "regions";
  char list_sep = ';';
};

struct ParseReport {
  std::uint64_t rows = 0;
  std::uint64_t kept = 0;
  std::uint64_t dropped_empty_codes = 0;
  std::uint64_t malformed_year = 0;
  std::uint64_t invalid_region_entries = 0;
  std::vector<std::string> errors;  // first few record-level messages
  std::string to_json() const;
};

struct ParsedCorpus {
  PatentCorpus corpus;
  ParseReport report;
};

/// Parses CSV with a header row. Record-level problems (bad year, empty code
/// list) are collected in the report; a missing required column is fatal.
ParsedCorpus parse_corpus(std::istream& in, const CsvSchema& schema = {});

struct PatentWindow {
  const PatentCorpus* corpus = nullptr;
  int anchor_year = 0;
  int width = 5;
  std::vector<std::uint32_t> record_idx;

  std::size_t size() const { return record_idx.size(); }
  const PatentRecord& record(std::size_t i) const {
    return corpus->records[record_idx[i]];
  }
};

/// Records with year in [t - width + 1, t]. Throws EmptyWindowError when no
/// record falls inside the interval.
PatentWindow window(const PatentCorpus& corpus, int t, int width = 5);

enum class RegionLevel { fine, coarse };

/// Region x technology patent counts with multiple counting: every inventor
/// entry of a record contributes to each distinct 4-character class on it.
struct RegionTechMatrix {
  std::vector<std::string> regions;  // sorted
  std::vector<std::string> techs;    // sorted
  std::vector<std::int64_t> counts;  // row-major, regions x techs
  RegionLevel level = RegionLevel::fine;

  std::size_t rows() const { return regions.size(); }
  std::size_t cols() const { return techs.size(); }
  std::int64_t at(std::size_t r, std::size_t c) const {
    return counts[r * techs.size() + c];
  }
  std::int64_t& at(std::size_t r, std::size_t c) {
    return counts[r * techs.size() + c];
  }
  std::int64_t total() const;
};

RegionTechMatrix region_tech_counts(const PatentWindow& w, RegionLevel level);

/// Sorted distinct 4-character classes present on window patents.
std::vector<std::string> window_technologies(const PatentWindow& w);

/// Binary cache round-trip for parsed corpora.
void save_corpus(const PatentCorpus& corpus, const std::string& path);
PatentCorpus load_corpus(const std::string& path);

}  // namespace techcomp
