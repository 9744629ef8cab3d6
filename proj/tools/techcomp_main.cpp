#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "techcomp/corpus.hpp"
#include "techcomp/errors.hpp"
#include "techcomp/evaluate.hpp"
#include "techcomp/netgen.hpp"
#include "techcomp/run.hpp"

namespace {

int fail(const std::string& module, const std::string& what) {
  std::cerr << "[" << module << "] " << what << "\n";
  return 1;
}

int usage_error(const std::string& what) {
  std::cerr << what << "\n";
  return 2;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

int cmd_ingest(const std::string& input, const std::string& out_path,
               const std::string& report_path, const techcomp::CsvSchema& schema) {
  std::ifstream in(input);
  if (!in) return fail("ingest", "cannot open input: " + input);
  auto parsed = techcomp::parse_corpus(in, schema);
  techcomp::save_corpus(parsed.corpus, out_path);
  const std::string rp = report_path.empty() ? out_path + ".report.json"
                                             : report_path;
  std::ofstream report(rp);
  if (!report) return fail("ingest", "cannot write parse report: " + rp);
  report << parsed.report.to_json() << "\n";
  std::cout << "ingested " << parsed.report.kept << " of "
            << parsed.report.rows << " rows into " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"technological complexity measures on patent-like records"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse a patent CSV into a corpus cache");
  std::string in_path, out_path, report_path;
  techcomp::CsvSchema schema;
  ingest->add_option("--input", in_path, "input CSV")->required();
  ingest->add_option("--out", out_path, "corpus cache output")->required();
  ingest->add_option("--report", report_path, "parse report JSON path");
  ingest->add_option("--id-col", schema.id_col, "id column name");
  ingest->add_option("--year-col", schema.year_col, "year column name");
  ingest->add_option("--codes-col", schema.codes_col, "codes column name");
  ingest->add_option("--regions-col", schema.regions_col, "regions column name");

  // synth network | synth corpus
  auto* synth = app.add_subcommand("synth", "generate reference networks or corpora");
  synth->require_subcommand(1);
  auto* snet = synth->add_subcommand("network", "generate a reference network class");
  std::string kind = "random", net_out;
  techcomp::NetSpec net;
  snet->add_option("--kind", kind, "star|tree|small-world|complete|random")->required();
  snet->add_option("--n", net.n, "node count")->required();
  snet->add_option("--branching", net.branching, "tree branching factor");
  snet->add_option("--k", net.k, "small-world base degree");
  snet->add_option("--beta", net.beta, "small-world rewiring probability");
  snet->add_option("--p", net.p, "random edge probability");
  snet->add_option("--seed", net.seed, "random seed");
  snet->add_option("--out", net_out, "edge list output")->required();

  auto* scorp = synth->add_subcommand("corpus", "generate a synthetic patent corpus");
  std::string spec_path, corpus_csv;
  scorp->add_option("--spec", spec_path, "corpus spec JSON")->required();
  scorp->add_option("--out", corpus_csv, "output CSV")->required();

  // compute
  auto* compute = app.add_subcommand("compute", "compute complexity scores for a window");
  std::string config_path, corpus_path, scores_path, out_dir, measure;
  int window_year = 0;
  compute->add_option("--config", config_path, "config JSON (flags override)");
  compute->add_option("--corpus", corpus_path, "corpus cache");
  compute->add_option("--measure", measure,
                      "one of " + join(techcomp::valid_measures(), "|") + " or all");
  compute->add_option("--window-year", window_year, "window anchor year");
  int width = 0;
  compute->add_option("--width", width, "window width in years");
  std::int64_t seed = -1;
  compute->add_option("--seed", seed, "master seed");
  compute->add_option("--scores", scores_path, "scores CSV (appended)");
  compute->add_option("--out-dir", out_dir, "artifact directory");
  unsigned workers = 0;
  compute->add_option("--workers", workers, "worker threads (default: env or hardware)");
  std::uint32_t samples_small = 0, samples_large = 0, walk_steps = 0, subnet = 0;
  compute->add_option("--samples-small", samples_small, "walk starts, small components");
  compute->add_option("--samples-large", samples_large, "walk starts, large components");
  compute->add_option("--walk-steps", walk_steps, "random walk length");
  compute->add_option("--subnet", subnet, "subnetwork node sample");
  bool restrict_focal = false;
  compute->add_flag("--restrict-to-focal", restrict_focal,
                    "co-occurrence nodes only from the focal class");

  // report
  auto* report = app.add_subcommand("report", "evaluate scores against the stylized facts");
  std::string rep_scores, rep_corpus, rep_out, age_convention = "mean-year";
  int reference_year = -1, rep_width = 5;
  report->add_option("--scores", rep_scores, "scores CSV")->required();
  report->add_option("--corpus", rep_corpus, "corpus cache")->required();
  report->add_option("--out", rep_out, "report directory")->required();
  report->add_option("--width", rep_width, "window width used for covariates");
  report->add_option("--reference-year", reference_year,
                     "year for spatial and sweep analyses (default: last)");
  report->add_option("--age-convention", age_convention, "mean-year|age-years");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(in_path, out_path, report_path, schema);

    if (synth->parsed()) {
      if (snet->parsed()) {
        net.kind = techcomp::net_kind_from_string(kind);
        techcomp::save_edge_list(techcomp::generate_network(net), net_out);
        std::cout << "wrote " << net_out << "\n";
        return 0;
      }
      std::ifstream spec_in(spec_path);
      if (!spec_in) return fail("synth", "cannot open spec: " + spec_path);
      std::string text((std::istreambuf_iterator<char>(spec_in)),
                       std::istreambuf_iterator<char>());
      const auto spec = techcomp::corpus_spec_from_json(text);
      const auto corpus = techcomp::generate_corpus(spec);
      std::ofstream out(corpus_csv);
      if (!out) return fail("synth", "cannot write: " + corpus_csv);
      out << "id,year,codes,regions\n";
      for (const auto& rec : corpus.records) {
        out << rec.id << ',' << rec.year << ',' << join(rec.codes, ";") << ','
            << join(rec.regions, ";") << '\n';
      }
      std::cout << "wrote " << corpus.records.size() << " records to "
                << corpus_csv << "\n";
      return 0;
    }

    if (compute->parsed()) {
      techcomp::RunConfig cfg;
      if (!config_path.empty())
        cfg = techcomp::RunConfig::from_json_file(config_path);
      if (!corpus_path.empty()) cfg.corpus_path = corpus_path;
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (!scores_path.empty()) cfg.scores_path = scores_path;
      if (width > 0) cfg.width = width;
      if (compute->count("--window-year") > 0) cfg.years = {window_year};
      if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
      if (workers > 0) cfg.workers = workers;
      if (samples_small > 0) cfg.sampling.node_sample_small = samples_small;
      if (samples_large > 0) cfg.sampling.node_sample_large = samples_large;
      if (walk_steps > 0) cfg.sampling.walk_steps = walk_steps;
      if (subnet > 0) cfg.sampling.subnet_nodes = subnet;
      if (restrict_focal) cfg.sampling.restrict_to_focal = true;
      if (!measure.empty()) {
        if (measure != "all") {
          const auto& names = techcomp::valid_measures();
          if (std::find(names.begin(), names.end(), measure) == names.end()) {
            return usage_error("invalid measure '" + measure +
                               "'; valid measures: " + join(names, ", ") +
                               ", all");
          }
        }
        cfg.measures = {measure};
      }
      const std::size_t n = techcomp::run(cfg);
      std::cout << "wrote " << n << " score rows to "
                << cfg.resolved_scores_path() << "\n";
      return 0;
    }

    if (report->parsed()) {
      techcomp::ScoreTable table;
      table.rows = techcomp::load_scores_csv(rep_scores);
      const auto corpus = techcomp::load_corpus(rep_corpus);
      const auto universe = techcomp::fine_region_universe(corpus);
      std::set<int> years;
      for (const auto& r : table.rows) years.insert(r.year);
      for (int year : years) {
        const auto w = techcomp::window(corpus, year, rep_width);
        auto covs = techcomp::covariates(w, universe);
        table.covariates.insert(table.covariates.end(), covs.begin(), covs.end());
      }
      techcomp::EvaluationOptions opts;
      opts.reference_year = reference_year;
      opts.age = age_convention == "age-years" ? techcomp::AgeConvention::age_years
                                               : techcomp::AgeConvention::mean_year;
      techcomp::write_report(techcomp::stylized_facts(table, opts), rep_out);
      std::cout << "wrote report to " << rep_out << "\n";
      return 0;
    }
  } catch (const techcomp::Error& e) {
    return fail(app.get_subcommands().empty()
                    ? "techcomp"
                    : app.get_subcommands().front()->get_name(),
                e.what());
  } catch (const std::exception& e) {
    return fail("techcomp", e.what());
  }
  return usage_error("no subcommand given");
}
