#include "techcomp/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "techcomp/csv.hpp"

#include <nlohmann/json.hpp>

namespace techcomp {

namespace {

constexpr std::size_t kMaxReportedErrors = 20;

bool parse_int(std::string_view s, int& out) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

PatentCorpus make_corpus(std::vector<PatentRecord> records) {
  PatentCorpus corpus;
  corpus.records = std::move(records);
  corpus.min_year = std::numeric_limits<int>::max();
  corpus.max_year = std::numeric_limits<int>::min();
  for (auto& rec : corpus.records) {
    std::sort(rec.codes.begin(), rec.codes.end());
    rec.codes.erase(std::unique(rec.codes.begin(), rec.codes.end()),
                    rec.codes.end());
    corpus.min_year = std::min(corpus.min_year, rec.year);
    corpus.max_year = std::max(corpus.max_year, rec.year);
  }
  if (corpus.records.empty()) {
    corpus.min_year = 0;
    corpus.max_year = -1;
  }
  return corpus;
}

std::string ParseReport::to_json() const {
  nlohmann::json j;
  j["rows"] = rows;
  j["kept"] = kept;
  j["dropped_empty_codes"] = dropped_empty_codes;
  j["malformed_year"] = malformed_year;
  j["invalid_region_entries"] = invalid_region_entries;
  j["errors"] = errors;
  return j.dump(2);
}

ParsedCorpus parse_corpus(std::istream& in, const CsvSchema& schema) {
  std::vector<std::string> header;
  if (!read_csv_row(in, header)) throw Error("empty input: no header row");

  auto find_col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw MissingColumnError(name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t id_at = find_col(schema.id_col);
  const std::size_t year_at = find_col(schema.year_col);
  const std::size_t codes_at = find_col(schema.codes_col);
  const std::size_t regions_at = find_col(schema.regions_col);

  ParsedCorpus out;
  ParseReport& rep = out.report;
  std::vector<PatentRecord> records;
  std::vector<std::string> row;
  auto report = [&](std::string msg) {
    if (rep.errors.size() < kMaxReportedErrors) rep.errors.push_back(std::move(msg));
  };

  while (read_csv_row(in, row)) {
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    ++rep.rows;
    auto cell = [&](std::size_t i) -> std::string_view {
      return i < row.size() ? std::string_view(row[i]) : std::string_view{};
    };

    PatentRecord rec;
    rec.id = std::string(cell(id_at));
    if (!parse_int(cell(year_at), rec.year)) {
      ++rep.malformed_year;
      report("row " + std::to_string(rep.rows) + " (" + rec.id +
             "): malformed year '" + std::string(cell(year_at)) + "'");
      continue;
    }
    rec.codes = split_list(cell(codes_at), schema.list_sep);
    std::sort(rec.codes.begin(), rec.codes.end());
    rec.codes.erase(std::unique(rec.codes.begin(), rec.codes.end()),
                    rec.codes.end());
    if (rec.codes.empty()) {
      ++rep.dropped_empty_codes;
      continue;
    }
    for (auto& region : split_list(cell(regions_at), schema.list_sep)) {
      if (region.size() < 4) {
        ++rep.invalid_region_entries;
        report("row " + std::to_string(rep.rows) + " (" + rec.id +
               "): region code '" + region + "' shorter than 4 characters");
        continue;
      }
      rec.regions.push_back(std::move(region));
    }
    records.push_back(std::move(rec));
  }

  rep.kept = records.size();
  out.corpus = make_corpus(std::move(records));
  return out;
}

PatentWindow window(const PatentCorpus& corpus, int t, int width) {
  if (width < 1) throw std::invalid_argument("window width must be >= 1");
  PatentWindow w;
  w.corpus = &corpus;
  w.anchor_year = t;
  w.width = width;
  const int lo = t - width + 1;
  for (std::uint32_t i = 0; i < corpus.records.size(); ++i) {
    const int y = corpus.records[i].year;
    if (y >= lo && y <= t) w.record_idx.push_back(i);
  }
  if (w.record_idx.empty()) throw EmptyWindowError(t, width);
  return w;
}

std::int64_t RegionTechMatrix::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

RegionTechMatrix region_tech_counts(const PatentWindow& w, RegionLevel level) {
  std::set<std::string> region_set;
  std::set<std::string> tech_set;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const PatentRecord& rec = w.record(i);
    for (const auto& region : rec.regions) {
      region_set.emplace(level == RegionLevel::coarse ? region_prefix(region)
                                                      : std::string_view(region));
    }
    for (const auto& code : rec.codes) tech_set.emplace(ipc4(code));
  }

  RegionTechMatrix m;
  m.level = level;
  m.regions.assign(region_set.begin(), region_set.end());
  m.techs.assign(tech_set.begin(), tech_set.end());
  m.counts.assign(m.regions.size() * m.techs.size(), 0);

  auto region_index = [&](std::string_view r) {
    return static_cast<std::size_t>(
        std::lower_bound(m.regions.begin(), m.regions.end(), r) -
        m.regions.begin());
  };
  auto tech_index = [&](std::string_view t) {
    return static_cast<std::size_t>(
        std::lower_bound(m.techs.begin(), m.techs.end(), t) - m.techs.begin());
  };

  std::vector<std::size_t> tech_cols;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const PatentRecord& rec = w.record(i);
    if (rec.regions.empty()) continue;  // reflection needs locations
    tech_cols.clear();
    for (const auto& code : rec.codes) tech_cols.push_back(tech_index(ipc4(code)));
    std::sort(tech_cols.begin(), tech_cols.end());
    tech_cols.erase(std::unique(tech_cols.begin(), tech_cols.end()),
                    tech_cols.end());
    for (const auto& region : rec.regions) {
      const std::size_t r =
          region_index(level == RegionLevel::coarse ? region_prefix(region)
                                                    : std::string_view(region));
      for (std::size_t c : tech_cols) ++m.at(r, c);
    }
  }
  return m;
}

std::vector<std::string> window_technologies(const PatentWindow& w) {
  std::set<std::string> tech_set;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (const auto& code : w.record(i).codes) tech_set.emplace(ipc4(code));
  }
  return {tech_set.begin(), tech_set.end()};
}

namespace {

constexpr char kMagic[8] = {'T', 'C', 'C', 'O', 'R', 'P', '0', '1'};

void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_i32(std::ostream& out, std::int32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_str(std::ostream& out, const std::string& s) {
  write_u64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}
std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
std::int32_t read_i32(std::istream& in) {
  std::int32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
std::string read_str(std::istream& in) {
  const std::uint64_t len = read_u64(in);
  std::string s(len, '\0');
  in.read(s.data(), static_cast<std::streamsize>(len));
  return s;
}

}  // namespace

void save_corpus(const PatentCorpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  write_u64(out, corpus.records.size());
  for (const auto& rec : corpus.records) {
    write_str(out, rec.id);
    write_i32(out, rec.year);
    write_u64(out, rec.codes.size());
    for (const auto& c : rec.codes) write_str(out, c);
    write_u64(out, rec.regions.size());
    for (const auto& r : rec.regions) write_str(out, r);
  }
  if (!out) throw Error("write failed: " + path);
}

PatentCorpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus cache: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw Error("not a corpus cache: " + path);
  const std::uint64_t count = read_u64(in);
  std::vector<PatentRecord> records;
  records.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    PatentRecord rec;
    rec.id = read_str(in);
    rec.year = read_i32(in);
    const std::uint64_t ncodes = read_u64(in);
    rec.codes.reserve(ncodes);
    for (std::uint64_t k = 0; k < ncodes; ++k) rec.codes.push_back(read_str(in));
    const std::uint64_t nregions = read_u64(in);
    rec.regions.reserve(nregions);
    for (std::uint64_t k = 0; k < nregions; ++k)
      rec.regions.push_back(read_str(in));
    if (!in) throw Error("truncated corpus cache: " + path);
    records.push_back(std::move(rec));
  }
  return make_corpus(std::move(records));
}

}  // namespace techcomp
