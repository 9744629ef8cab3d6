#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "techcomp/corpus.hpp"

using namespace techcomp;
using oracle::rec;

TEST_CASE("parse_corpus maps fields and collapses duplicate codes") {
  std::istringstream in(
      "id,year,codes,regions\n"
      "p1,1990,A61K000131;A61K000147,DE21A;DE21A\n"
      "p2,1991,A61K000131;A61K000131,FR101\n");
  const auto parsed = parse_corpus(in);
  REQUIRE(parsed.corpus.records.size() == 2);
  const auto& p1 = parsed.corpus.records[0];
  CHECK(p1.id == "p1");
  CHECK(p1.year == 1990);
  CHECK(p1.codes.size() == 2);
  CHECK(p1.regions == std::vector<std::string>{"DE21A", "DE21A"});
  CHECK(parsed.corpus.records[1].codes.size() == 1);  // duplicate collapsed
  CHECK(parsed.corpus.min_year == 1990);
  CHECK(parsed.corpus.max_year == 1991);
}

TEST_CASE("parse_corpus drops empty-code rows and counts them") {
  std::istringstream in(
      "id,year,codes,regions\n"
      "p1,1990,,DE21A\n"
      "p2,1990,A61K000131,DE21A\n");
  const auto parsed = parse_corpus(in);
  CHECK(parsed.corpus.records.size() == 1);
  CHECK(parsed.report.dropped_empty_codes == 1);
  CHECK(parsed.report.kept == 1);
}

TEST_CASE("parse_corpus missing required column is fatal and names it") {
  std::istringstream in("id,year,codes\np1,1990,A61K\n");
  try {
    parse_corpus(in);
    FAIL("expected MissingColumnError");
  } catch (const MissingColumnError& e) {
    CHECK(e.column == "regions");
    CHECK(std::string(e.what()).find("regions") != std::string::npos);
  }
}

TEST_CASE("parse_corpus collects malformed years without aborting") {
  std::istringstream in(
      "id,year,codes,regions\n"
      "p1,not-a-year,A61K,DE21A\n"
      "p2,1990,A61K,DE21A\n");
  const auto parsed = parse_corpus(in);
  CHECK(parsed.report.malformed_year == 1);
  CHECK(parsed.corpus.records.size() == 1);
}

TEST_CASE("parse_corpus rejects region codes shorter than 4 characters") {
  std::istringstream in(
      "id,year,codes,regions\n"
      "p1,1990,A61K,DE;FR101\n");
  const auto parsed = parse_corpus(in);
  REQUIRE(parsed.corpus.records.size() == 1);
  CHECK(parsed.corpus.records[0].regions == std::vector<std::string>{"FR101"});
  CHECK(parsed.report.invalid_region_entries == 1);
}

TEST_CASE("window selects the closed year interval") {
  std::vector<PatentRecord> records;
  for (int y = 1988; y <= 1992; ++y)
    records.push_back(rec("p" + std::to_string(y), y, {"A61K000131"}));
  const auto corpus = make_corpus(std::move(records));

  CHECK(window(corpus, 1992, 5).size() == 5);  // full span
  CHECK(window(corpus, 1992, 1).size() == 1);
  CHECK(window(corpus, 1990, 2).size() == 2);  // 1989, 1990
}

TEST_CASE("window outside the corpus raises EmptyWindow") {
  const auto corpus = make_corpus({rec("p", 1985, {"A61K"})});
  CHECK_THROWS_AS(window(corpus, 1980, 5), EmptyWindowError);
}

TEST_CASE("windows share exactly the records in overlapping years") {
  std::vector<PatentRecord> records;
  for (int y = 2000; y <= 2010; ++y)
    for (int i = 0; i < 3; ++i)
      records.push_back(rec("p" + std::to_string(y) + "_" + std::to_string(i), y,
                            {"A61K000131"}));
  const auto corpus = make_corpus(std::move(records));
  const auto w1 = window(corpus, 2004, 5);  // 2000..2004
  const auto w2 = window(corpus, 2007, 5);  // 2003..2007
  std::set<std::uint32_t> s1(w1.record_idx.begin(), w1.record_idx.end());
  std::set<std::uint32_t> s2(w2.record_idx.begin(), w2.record_idx.end());
  std::set<std::uint32_t> shared;
  for (auto i : s1)
    if (s2.count(i)) shared.insert(i);
  for (auto i : shared) {
    const int y = corpus.records[i].year;
    CHECK(y >= 2003);
    CHECK(y <= 2004);
  }
  CHECK(shared.size() == 6);
}

TEST_CASE("region_tech_counts applies multiple counting") {
  SUBCASE("one inventor entry per region") {
    const auto corpus = make_corpus(
        {rec("p", 1990, {"A61K000131"}, {"DE21A", "FR101"})});
    const auto m = region_tech_counts(window(corpus, 1990, 1), RegionLevel::fine);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 1);
    CHECK(m.at(0, 0) == 1);  // DE21A
    CHECK(m.at(1, 0) == 1);  // FR101
  }
  SUBCASE("same region twice counts twice") {
    const auto corpus =
        make_corpus({rec("p", 1990, {"A61K000131"}, {"DE21A", "DE21A"})});
    const auto m = region_tech_counts(window(corpus, 1990, 1), RegionLevel::fine);
    CHECK(m.at(0, 0) == 2);
  }
  SUBCASE("each distinct class column gets the contribution") {
    const auto corpus = make_corpus(
        {rec("p", 1990, {"A61K000131", "C07D000101"}, {"DE21A"})});
    const auto m = region_tech_counts(window(corpus, 1990, 1), RegionLevel::fine);
    REQUIRE(m.cols() == 2);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 1);
  }
}

TEST_CASE("coarse level groups regions by 4-character prefix") {
  const auto corpus = make_corpus({
      rec("p1", 1990, {"A61K000131"}, {"DE21A"}),
      rec("p2", 1990, {"A61K000131"}, {"DE21B"}),
      rec("p3", 1990, {"C07D000101"}, {"FR101"}),
  });
  const auto w = window(corpus, 1990, 1);
  const auto fine = region_tech_counts(w, RegionLevel::fine);
  const auto coarse = region_tech_counts(w, RegionLevel::coarse);
  CHECK(fine.rows() == 3);
  REQUIRE(coarse.rows() == 2);
  CHECK(coarse.regions == std::vector<std::string>{"DE21", "FR10"});
  CHECK(coarse.at(0, 0) == 2);  // DE21A + DE21B summed

  // coarse equals fine with rows summed by prefix
  std::map<std::string, std::vector<std::int64_t>> summed;
  for (std::size_t r = 0; r < fine.rows(); ++r) {
    auto& acc = summed[std::string(region_prefix(fine.regions[r]))];
    acc.resize(fine.cols(), 0);
    for (std::size_t c = 0; c < fine.cols(); ++c) acc[c] += fine.at(r, c);
  }
  for (std::size_t r = 0; r < coarse.rows(); ++r) {
    for (std::size_t c = 0; c < coarse.cols(); ++c)
      CHECK(coarse.at(r, c) == summed[coarse.regions[r]][c]);
  }
}

TEST_CASE("matrix total matches the brute-force recount") {
  // sum over cells = sum over records of inventor entries x distinct classes
  std::vector<PatentRecord> records;
  std::mt19937_64 rng(11);
  const char* classes[] = {"A61K", "C07D", "G06F", "B29C"};
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> codes;
    for (int c = 0; c < 1 + int(rng() % 3); ++c)
      codes.push_back(std::string(classes[rng() % 4]) + "00" +
                      std::to_string(rng() % 10));
    std::vector<std::string> regions;
    for (int r = 0; r < int(rng() % 3); ++r)
      regions.push_back("R" + std::to_string(rng() % 5) + "0" +
                        std::to_string(rng() % 2));
    records.push_back(rec("p" + std::to_string(i), 2000, codes, regions));
  }
  const auto corpus = make_corpus(std::move(records));
  const auto w = window(corpus, 2000, 1);
  const auto m = region_tech_counts(w, RegionLevel::fine);

  std::int64_t expected = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& r = w.record(i);
    std::set<std::string> cls;
    for (const auto& code : r.codes) cls.emplace(ipc4(code));
    expected += static_cast<std::int64_t>(r.regions.size() * cls.size());
  }
  CHECK(m.total() == expected);
}

TEST_CASE("corpus binary cache round-trips") {
  const auto corpus = make_corpus({
      rec("p1", 1990, {"A61K000131", "C07D000101"}, {"DE21A", "FR101"}),
      rec("p2", 2001, {"G06F001730"}, {}),
  });
  const std::string path =
      (std::filesystem::temp_directory_path() / "techcomp_corpus_test.bin").string();
  save_corpus(corpus, path);
  const auto loaded = load_corpus(path);
  std::remove(path.c_str());
  REQUIRE(loaded.records.size() == 2);
  CHECK(loaded.records[0].id == "p1");
  CHECK(loaded.records[0].codes == corpus.records[0].codes);
  CHECK(loaded.records[1].regions.empty());
  CHECK(loaded.min_year == 1990);
  CHECK(loaded.max_year == 2001);
}
