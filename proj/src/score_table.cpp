#include "techcomp/score_table.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include "techcomp/csv.hpp"
#include "techcomp/errors.hpp"

namespace techcomp {

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void append_scores_csv(const std::string& path,
                       const std::vector<ScoreRow>& rows) {
  namespace fs = std::filesystem;
  bool need_header = true;
  std::error_code ec;
  if (fs::exists(path, ec) && fs::file_size(path, ec) > 0) need_header = false;
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot open for writing: " + path);
  if (need_header) out << "year,measure,ipc4,value,n_patents\n";
  for (const auto& r : rows) {
    out << r.year << ',' << r.measure << ',' << r.tech << ','
        << format_double(r.value) << ',' << r.n_patents << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

std::vector<ScoreRow> load_scores_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scores file: " + path);
  std::vector<std::string> row;
  if (!read_csv_row(in, row)) throw Error("empty scores file: " + path);
  if (row.size() < 5 || row[0] != "year")
    throw Error("unexpected scores header in " + path);

  std::vector<ScoreRow> rows;
  while (read_csv_row(in, row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() < 5) throw Error("short row in " + path);
    ScoreRow r;
    auto parse = [&](const std::string& s, auto& out_val) {
      auto [ptr, perr] =
          std::from_chars(s.data(), s.data() + s.size(), out_val);
      if (perr != std::errc{} || ptr != s.data() + s.size())
        throw Error("bad numeric field '" + s + "' in " + path);
    };
    parse(row[0], r.year);
    r.measure = row[1];
    r.tech = row[2];
    parse(row[3], r.value);
    parse(row[4], r.n_patents);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace techcomp
