#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "techcomp/netgen.hpp"
#include "techcomp/run.hpp"

using namespace techcomp;
namespace fs = std::filesystem;

namespace {

SyntheticCorpusSpec pipeline_spec() {
  SyntheticCorpusSpec spec;
  spec.technologies = 3;
  spec.ordered = 1;
  spec.complex_mix = 1;
  spec.random = 1;
  spec.year_begin = 1995;
  spec.year_end = 2002;
  spec.patents_per_year = {40};
  spec.codes_per_tech = 25;
  spec.region_count = 6;
  spec.region_skew = 0.3;
  spec.seed = 77;
  return spec;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("compute_measure produces rows for every measure") {
  const auto corpus = generate_corpus(pipeline_spec());
  RunConfig cfg;
  cfg.seed = 5;
  cfg.workers = 2;
  cfg.sampling.node_sample_small = 20;

  for (const auto& measure : valid_measures()) {
    const auto result = compute_measure(corpus, measure, 2002, cfg);
    INFO(measure);
    CHECK(!result.rows.empty());
    for (const auto& row : result.rows) {
      CHECK(row.year == 2002);
      CHECK(row.measure == measure);
      CHECK(row.n_patents > 0);
      CHECK(std::isfinite(row.value));
    }
  }
}

TEST_CASE("compute_measure rejects unknown measures") {
  const auto corpus = generate_corpus(pipeline_spec());
  RunConfig cfg;
  CHECK_THROWS_AS(compute_measure(corpus, "bogus", 2002, cfg), Error);
}

TEST_CASE("run writes scores, skip reports and the resolved config") {
  TempDir dir("techcomp_run_test");
  const auto corpus = generate_corpus(pipeline_spec());
  const auto corpus_path = (dir.path / "corpus.bin").string();
  save_corpus(corpus, corpus_path);

  RunConfig cfg;
  cfg.corpus_path = corpus_path;
  cfg.out_dir = (dir.path / "out").string();
  cfg.years = {2001, 2002};
  cfg.measures = {"hh-fine", "structural"};
  cfg.seed = 9;
  cfg.workers = 2;
  cfg.sampling.node_sample_small = 15;

  const std::size_t rows = run(cfg);
  CHECK(rows > 0);
  CHECK(fs::exists(cfg.out_dir + "/scores.csv"));
  CHECK(fs::exists(cfg.out_dir + "/run_config.json"));
  CHECK(fs::exists(cfg.out_dir + "/skips_structural_2002.json"));

  const auto loaded = load_scores_csv(cfg.out_dir + "/scores.csv");
  CHECK(loaded.size() == rows);

  // rows are sorted by (year, measure, tech)
  for (std::size_t i = 1; i < loaded.size(); ++i) {
    const auto a = std::tie(loaded[i - 1].year, loaded[i - 1].measure,
                            loaded[i - 1].tech);
    const auto b = std::tie(loaded[i].year, loaded[i].measure, loaded[i].tech);
    CHECK(a <= b);
  }
}

TEST_CASE("identical runs produce byte-identical scores files") {
  const auto corpus = generate_corpus(pipeline_spec());
  std::string first, second;
  for (int round = 0; round < 2; ++round) {
    TempDir dir("techcomp_det_test_" + std::to_string(round));
    const auto corpus_path = (dir.path / "corpus.bin").string();
    save_corpus(corpus, corpus_path);
    RunConfig cfg;
    cfg.corpus_path = corpus_path;
    cfg.out_dir = (dir.path / "out").string();
    cfg.years = {2002};
    cfg.measures = {"structural"};
    cfg.seed = 7;
    cfg.workers = round == 0 ? 1 : 3;  // worker count must not matter
    cfg.sampling.node_sample_small = 15;
    run(cfg);
    (round == 0 ? first : second) = slurp(cfg.out_dir + "/scores.csv");
  }
  CHECK(!first.empty());
  CHECK(first == second);
}

TEST_CASE("run emits an evaluation report when asked") {
  TempDir dir("techcomp_report_test");
  const auto corpus = generate_corpus(pipeline_spec());
  const auto corpus_path = (dir.path / "corpus.bin").string();
  save_corpus(corpus, corpus_path);

  RunConfig cfg;
  cfg.corpus_path = corpus_path;
  cfg.out_dir = (dir.path / "out").string();
  cfg.years = {2000, 2001, 2002};
  cfg.measures = {"fs-modular"};
  cfg.seed = 1;
  cfg.emit_report = true;
  run(cfg);
  CHECK(fs::exists(cfg.out_dir + "/report/report.json"));
  CHECK(fs::exists(cfg.out_dir + "/report/trend.csv"));
  CHECK(fs::exists(cfg.out_dir + "/report/sweep_gini.csv"));
  const auto json = slurp(cfg.out_dir + "/report/report.json");
  CHECK(json.find("\"trend\"") != std::string::npos);
}

TEST_CASE("config JSON round-trips") {
  RunConfig cfg;
  cfg.corpus_path = "x.bin";
  cfg.years = {2010};
  cfg.measures = {"structural"};
  cfg.seed = 123;
  cfg.sampling.walk_steps = 500;
  cfg.fs_denominator = FsDenominator::patents_sharing_subclass;
  const auto text = cfg.to_json();
  const auto back = RunConfig::from_json(text);
  CHECK(back.corpus_path == "x.bin");
  CHECK(back.years == std::vector<int>{2010});
  CHECK(back.seed == 123);
  CHECK(back.sampling.walk_steps == 500);
  CHECK(back.fs_denominator == FsDenominator::patents_sharing_subclass);
  CHECK_THROWS_AS(RunConfig::from_json("{oops"), Error);
}

TEST_CASE("synthetic corpus CSV round-trips through the parser") {
  const auto corpus = generate_corpus(pipeline_spec());
  std::ostringstream csv;
  csv << "id,year,codes,regions\n";
  for (const auto& r : corpus.records) {
    csv << r.id << ',' << r.year << ',';
    for (std::size_t i = 0; i < r.codes.size(); ++i)
      csv << (i ? ";" : "") << r.codes[i];
    csv << ',';
    for (std::size_t i = 0; i < r.regions.size(); ++i)
      csv << (i ? ";" : "") << r.regions[i];
    csv << '\n';
  }
  std::istringstream in(csv.str());
  const auto parsed = parse_corpus(in);
  CHECK(parsed.corpus.records.size() == corpus.records.size());
  CHECK(parsed.report.dropped_empty_codes == 0);
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    CHECK(parsed.corpus.records[i].codes == corpus.records[i].codes);
    CHECK(parsed.corpus.records[i].regions == corpus.records[i].regions);
  }
}
