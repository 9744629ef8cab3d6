#include "techcomp/run.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "techcomp/errors.hpp"
#include "techcomp/reflection.hpp"
#include "techcomp/rng.hpp"

namespace techcomp {

const std::vector<std::string>& valid_measures() {
  static const std::vector<std::string> names = {
      "hh-fine", "hh-coarse", "hh-eigen", "fs-modular", "structural"};
  return names;
}

namespace {

std::string age_convention_name(AgeConvention a) {
  return a == AgeConvention::mean_year ? "mean-year" : "age-years";
}

AgeConvention age_convention_from(const std::string& s) {
  if (s == "mean-year") return AgeConvention::mean_year;
  if (s == "age-years") return AgeConvention::age_years;
  throw Error("unknown age convention: " + s);
}

std::string fs_denominator_name(FsDenominator d) {
  return d == FsDenominator::own_subclass_count ? "own-subclass-count"
                                                : "patents-sharing-subclass";
}

FsDenominator fs_denominator_from(const std::string& s) {
  if (s == "own-subclass-count") return FsDenominator::own_subclass_count;
  if (s == "patents-sharing-subclass")
    return FsDenominator::patents_sharing_subclass;
  throw Error("unknown fs denominator: " + s);
}

}  // namespace

RunConfig RunConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid config JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    cfg.corpus_path = j.value("corpus", cfg.corpus_path);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.scores_path = j.value("scores", cfg.scores_path);
    cfg.width = j.value("width", cfg.width);
    if (j.contains("years")) cfg.years = j["years"].get<std::vector<int>>();
    if (j.contains("measures"))
      cfg.measures = j["measures"].get<std::vector<std::string>>();
    cfg.seed = j.value("seed", cfg.seed);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.emit_report = j.value("report", cfg.emit_report);
    cfg.reference_year = j.value("reference_year", cfg.reference_year);
    if (j.contains("age_convention"))
      cfg.age_convention = age_convention_from(j["age_convention"].get<std::string>());
    if (j.contains("reflection")) {
      const auto& r = j["reflection"];
      cfg.reflection.iterations = r.value("iterations", cfg.reflection.iterations);
      cfg.reflection.rta_threshold =
          r.value("rta_threshold", cfg.reflection.rta_threshold);
    }
    if (j.contains("fs")) {
      if (j["fs"].contains("denominator"))
        cfg.fs_denominator =
            fs_denominator_from(j["fs"]["denominator"].get<std::string>());
    }
    if (j.contains("sampling")) {
      const auto& s = j["sampling"];
      auto& p = cfg.sampling;
      p.node_sample_small = s.value("samples_small", p.node_sample_small);
      p.node_sample_large = s.value("samples_large", p.node_sample_large);
      p.large_threshold = s.value("large_threshold", p.large_threshold);
      p.walk_steps = s.value("walk_steps", p.walk_steps);
      p.subnet_nodes = s.value("subnet_nodes", p.subnet_nodes);
      p.min_component = s.value("min_component", p.min_component);
      p.inds_floor = s.value("inds_floor", p.inds_floor);
      p.retry_limit = s.value("retry_limit", p.retry_limit);
      p.restrict_to_focal = s.value("restrict_to_focal", p.restrict_to_focal);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid config field: ") + e.what());
  }
  return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json(text);
}

std::string RunConfig::to_json() const {
  nlohmann::json j;
  j["corpus"] = corpus_path;
  j["out_dir"] = out_dir;
  j["scores"] = resolved_scores_path();
  j["width"] = width;
  j["years"] = years;
  j["measures"] = measures;
  j["seed"] = seed;
  j["workers"] = workers;
  j["report"] = emit_report;
  j["reference_year"] = reference_year;
  j["age_convention"] = age_convention_name(age_convention);
  j["reflection"] = {{"iterations", reflection.iterations},
                     {"rta_threshold", reflection.rta_threshold}};
  j["fs"] = {{"denominator", fs_denominator_name(fs_denominator)}};
  j["sampling"] = {{"samples_small", sampling.node_sample_small},
                   {"samples_large", sampling.node_sample_large},
                   {"large_threshold", sampling.large_threshold},
                   {"walk_steps", sampling.walk_steps},
                   {"subnet_nodes", sampling.subnet_nodes},
                   {"min_component", sampling.min_component},
                   {"inds_floor", sampling.inds_floor},
                   {"retry_limit", sampling.retry_limit},
                   {"restrict_to_focal", sampling.restrict_to_focal}};
  return j.dump(2);
}

std::string RunConfig::resolved_scores_path() const {
  if (!scores_path.empty()) return scores_path;
  return out_dir + "/scores.csv";
}

unsigned RunConfig::resolved_workers() const {
  if (workers > 0) return workers;
  if (const char* env = std::getenv("TECHCOMP_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

namespace {

std::map<std::string, std::int64_t> window_patent_counts(const PatentWindow& w) {
  std::map<std::string, std::int64_t> counts;
  std::set<std::string> techs;
  for (std::size_t i = 0; i < w.size(); ++i) {
    techs.clear();
    for (const auto& code : w.record(i).codes) techs.emplace(ipc4(code));
    for (const auto& t : techs) ++counts[t];
  }
  return counts;
}

ComputeResult reflection_measure(const PatentCorpus& corpus,
                                 const std::string& measure, int year,
                                 const RunConfig& cfg) {
  const PatentWindow w = window(corpus, year, cfg.width);
  const RegionLevel level =
      measure == "hh-coarse" ? RegionLevel::coarse : RegionLevel::fine;
  const RegionTechMatrix counts = region_tech_counts(w, level);
  const RtaMatrix advantage = rta(counts);
  const IncidenceMatrix m = incidence(advantage, cfg.reflection.rta_threshold);
  const auto n_patents = window_patent_counts(w);

  ComputeResult out;
  nlohmann::json skips;
  if (measure == "hh-eigen") {
    const EigenComplexity eigen = eigen_complexity(m);
    for (std::size_t i = 0; i < eigen.techs.size(); ++i) {
      out.rows.push_back({year, measure, eigen.techs[i], eigen.tech_scores[i],
                          n_patents.count(eigen.techs[i])
                              ? n_patents.at(eigen.techs[i])
                              : 0});
    }
    skips["dropped_techs"] = eigen.dropped_techs;
    skips["dropped_regions"] = eigen.dropped_regions;
  } else {
    const KciResult kci = method_of_reflection(m, cfg.reflection.iterations);
    for (std::size_t i = 0; i < kci.techs.size(); ++i) {
      out.rows.push_back({year, measure, kci.techs[i], kci.tech_scores[i],
                          n_patents.count(kci.techs[i])
                              ? n_patents.at(kci.techs[i])
                              : 0});
    }
    skips["dropped_techs"] = kci.dropped_techs;
    skips["dropped_regions"] = kci.dropped_regions;
  }
  out.skip_report_json = skips.dump(2);
  return out;
}

ComputeResult fs_measure(const PatentCorpus& corpus, int year,
                         const RunConfig& cfg) {
  const PatentWindow w = window(corpus, year, cfg.width);
  const int cutoff = year - cfg.width + 1;  // strictly before the window
  const EaseTable table = ease_table(corpus, cutoff);
  const FsScoreTable scores = fs_scores(w, table, cfg.fs_denominator);
  const auto n_patents = window_patent_counts(w);

  ComputeResult out;
  for (const auto& [tech, value] : scores.tech_scores) {
    out.rows.push_back({year, "fs-modular", tech, value,
                        n_patents.count(tech) ? n_patents.at(tech) : 0});
  }
  nlohmann::json skips;
  skips["undefined_techs"] = scores.undefined_techs;
  skips["scored_patents"] = scores.scored_patents;
  skips["undefined_patents"] = scores.undefined_patents;
  out.skip_report_json = skips.dump(2);
  return out;
}

ComputeResult structural_measure(const PatentCorpus& corpus, int year,
                                 const RunConfig& cfg) {
  const PatentWindow w = window(corpus, year, cfg.width);
  SamplingParams params = cfg.sampling;
  params.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(year));
  const StructuralResult result =
      structural_scores(w, params, cfg.resolved_workers());
  const auto n_patents = window_patent_counts(w);

  ComputeResult out;
  for (const auto& s : result.scores) {
    out.rows.push_back({year, "structural", s.technology, s.structural,
                        n_patents.count(s.technology)
                            ? n_patents.at(s.technology)
                            : 0});
  }
  nlohmann::json skips = nlohmann::json::object();
  for (const auto& skip : result.skipped)
    skips[skip.technology] = std::string(to_string(skip.reason));
  out.skip_report_json = skips.dump(2);
  return out;
}

}  // namespace

ComputeResult compute_measure(const PatentCorpus& corpus,
                              const std::string& measure, int year,
                              const RunConfig& cfg) {
  ComputeResult out;
  if (measure == "hh-fine" || measure == "hh-coarse" || measure == "hh-eigen") {
    out = reflection_measure(corpus, measure, year, cfg);
  } else if (measure == "fs-modular") {
    out = fs_measure(corpus, year, cfg);
  } else if (measure == "structural") {
    out = structural_measure(corpus, year, cfg);
  } else {
    throw Error("unknown measure: " + measure);
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.year, a.measure, a.tech) < std::tie(b.year, b.measure, b.tech);
  });
  return out;
}

std::size_t run(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  if (cfg.corpus_path.empty()) throw Error("no corpus path configured");
  if (cfg.years.empty()) throw Error("no window years configured");

  std::vector<std::string> measures = cfg.measures;
  if (measures.empty() ||
      (measures.size() == 1 && measures[0] == "all"))
    measures = valid_measures();
  for (const auto& m : measures) {
    if (std::find(valid_measures().begin(), valid_measures().end(), m) ==
        valid_measures().end())
      throw Error("unknown measure: " + m);
  }

  const PatentCorpus corpus = load_corpus(cfg.corpus_path);
  fs::create_directories(cfg.out_dir);
  {
    std::ofstream out(cfg.out_dir + "/run_config.json");
    if (!out) throw Error("cannot write resolved config to " + cfg.out_dir);
    out << cfg.to_json() << '\n';
  }

  std::vector<ScoreRow> all_rows;
  for (int year : cfg.years) {
    for (const auto& measure : measures) {
      ComputeResult result = compute_measure(corpus, measure, year, cfg);
      const std::string skip_path = cfg.out_dir + "/skips_" + measure + "_" +
                                    std::to_string(year) + ".json";
      std::ofstream skip_out(skip_path);
      skip_out << result.skip_report_json << '\n';
      all_rows.insert(all_rows.end(), result.rows.begin(), result.rows.end());
    }
  }
  std::sort(all_rows.begin(), all_rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.year, a.measure, a.tech) < std::tie(b.year, b.measure, b.tech);
  });
  append_scores_csv(cfg.resolved_scores_path(), all_rows);

  if (cfg.emit_report) {
    ScoreTable table;
    table.rows = load_scores_csv(cfg.resolved_scores_path());
    const auto universe = fine_region_universe(corpus);
    std::set<int> years;
    for (const auto& r : table.rows) years.insert(r.year);
    for (int year : years) {
      const PatentWindow w = window(corpus, year, cfg.width);
      auto covs = covariates(w, universe);
      table.covariates.insert(table.covariates.end(), covs.begin(), covs.end());
    }
    EvaluationOptions opts;
    opts.reference_year = cfg.reference_year;
    opts.age = cfg.age_convention;
    write_report(stylized_facts(table, opts), cfg.out_dir + "/report");
  }
  return all_rows.size();
}

}  // namespace techcomp
