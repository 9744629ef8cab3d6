#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>

#include "techcomp/corpus.hpp"
#include "techcomp/evaluate.hpp"
#include "techcomp/fsmodular.hpp"
#include "techcomp/netgen.hpp"
#include "techcomp/reflection.hpp"
#include "techcomp/run.hpp"
#include "techcomp/structural.hpp"

namespace py = pybind11;
using namespace techcomp;

namespace {

using Matrix = std::vector<std::vector<double>>;

RegionTechMatrix counts_from_lists(const Matrix& counts,
                                   std::vector<std::string> regions,
                                   std::vector<std::string> techs) {
  RegionTechMatrix m;
  const std::size_t nr = counts.size();
  const std::size_t nc = nr ? counts[0].size() : 0;
  if (regions.empty())
    for (std::size_t r = 0; r < nr; ++r) regions.push_back("r" + std::to_string(r));
  if (techs.empty())
    for (std::size_t c = 0; c < nc; ++c) techs.push_back("c" + std::to_string(c));
  m.regions = std::move(regions);
  m.techs = std::move(techs);
  m.counts.assign(nr * nc, 0);
  for (std::size_t r = 0; r < nr; ++r) {
    if (counts[r].size() != nc)
      throw std::invalid_argument("ragged count matrix");
    for (std::size_t c = 0; c < nc; ++c)
      m.at(r, c) = static_cast<std::int64_t>(counts[r][c]);
  }
  return m;
}

IncidenceMatrix incidence_from_counts(const Matrix& counts, double threshold) {
  return incidence(rta(counts_from_lists(counts, {}, {})), threshold);
}

Graph graph_from_edges(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
    std::size_t n) {
  std::uint32_t max_node = 0;
  for (auto [u, v] : edges) max_node = std::max({max_node, u, v});
  if (n == 0) n = edges.empty() ? 0 : max_node + 1;
  return Graph::from_edges(n, edges);
}

SamplingParams params_from_kwargs(std::uint64_t seed, std::uint32_t samples_small,
                                  std::uint32_t samples_large,
                                  std::uint32_t walk_steps, std::uint32_t subnet,
                                  std::uint32_t min_component) {
  SamplingParams p;
  p.seed = seed;
  p.node_sample_small = samples_small;
  p.node_sample_large = samples_large;
  p.walk_steps = walk_steps;
  p.subnet_nodes = subnet;
  p.min_component = min_component;
  return p;
}

}  // namespace

PYBIND11_MODULE(_techcomp, m) {
  m.doc() = "technological complexity measures: method-of-reflection, "
            "combinatorial ease and structural network diversity";

  py::register_exception<Error>(m, "TechcompError");

  py::class_<PatentCorpus>(m, "Corpus")
      .def_property_readonly("size",
                             [](const PatentCorpus& c) { return c.records.size(); })
      .def_property_readonly("year_range",
                             [](const PatentCorpus& c) {
                               return std::make_pair(c.min_year, c.max_year);
                             })
      .def("save", &save_corpus, py::arg("path"))
      .def_static("load", &load_corpus, py::arg("path"));

  m.def(
      "parse_corpus",
      [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open input: " + path);
        auto parsed = parse_corpus(in);
        return std::make_pair(std::move(parsed.corpus), parsed.report.to_json());
      },
      py::arg("path"), "Parse a patent CSV; returns (corpus, report_json).");

  m.def(
      "generate_corpus",
      [](const std::string& spec_json) {
        return generate_corpus(corpus_spec_from_json(spec_json));
      },
      py::arg("spec_json"));

  m.def(
      "generate_network",
      [](const std::string& kind, std::uint32_t n, std::uint32_t branching,
         std::uint32_t k, double beta, double p, std::uint64_t seed) {
        NetSpec spec;
        spec.kind = net_kind_from_string(kind);
        spec.n = n;
        spec.branching = branching;
        spec.k = k;
        spec.beta = beta;
        spec.p = p;
        spec.seed = seed;
        return generate_network(spec).edges();
      },
      py::arg("kind"), py::arg("n"), py::arg("branching") = 2, py::arg("k") = 6,
      py::arg("beta") = 0.05, py::arg("p") = 0.1, py::arg("seed") = 0,
      "Generate a reference network; returns its edge list.");

  m.def(
      "rta",
      [](const Matrix& counts) {
        const auto r = rta(counts_from_lists(counts, {}, {}));
        Matrix out(r.regions.size(), std::vector<double>(r.techs.size()));
        for (std::size_t i = 0; i < r.regions.size(); ++i)
          for (std::size_t c = 0; c < r.techs.size(); ++c) out[i][c] = r.at(i, c);
        return out;
      },
      py::arg("counts"), "Regional technological advantage of a count matrix.");

  m.def(
      "method_of_reflection",
      [](const Matrix& counts, unsigned iterations, double threshold) {
        const auto kci =
            method_of_reflection(incidence_from_counts(counts, threshold), iterations);
        py::dict out;
        out["regions"] = kci.regions;
        out["techs"] = kci.techs;
        out["region_scores"] = kci.region_scores;
        out["tech_scores"] = kci.tech_scores;
        out["tech_scores_raw"] = kci.tech_scores_raw;
        out["dropped_techs"] = kci.dropped_techs;
        return out;
      },
      py::arg("counts"), py::arg("iterations") = 20, py::arg("threshold") = 1.0,
      "Reflection complexity from a region x technology count matrix.");

  m.def(
      "eigen_complexity",
      [](const Matrix& counts, double threshold) {
        const auto e = eigen_complexity(incidence_from_counts(counts, threshold));
        py::dict out;
        out["techs"] = e.techs;
        out["tech_scores"] = e.tech_scores;
        out["eigenvalue"] = e.eigenvalue;
        return out;
      },
      py::arg("counts"), py::arg("threshold") = 1.0);

  m.def("gini",
        [](const std::vector<double>& x) { return gini(x); },
        py::arg("x"));

  m.def(
      "spearman",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto rho = spearman(x, y);
        return rho ? py::cast(*rho) : py::none().cast<py::object>();
      },
      py::arg("x"), py::arg("y"));

  m.def(
      "structural_score",
      [](const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
         std::size_t n, std::uint64_t seed, std::uint32_t samples_small,
         std::uint32_t samples_large, std::uint32_t walk_steps,
         std::uint32_t subnet, std::uint32_t min_component) {
        const auto score =
            nds(graph_from_edges(edges, n),
                params_from_kwargs(seed, samples_small, samples_large,
                                   walk_steps, subnet, min_component));
        py::dict out;
        out["nds"] = score.nds;
        out["structural"] = score.structural;
        out["sample_count"] = score.sample_count;
        out["skipped_samples"] = score.skipped_samples;
        out["ordered_samples"] = score.ordered_samples;
        out["complete_shortcut"] = score.degenerate_flag;
        return out;
      },
      py::arg("edges"), py::arg("n") = 0, py::arg("seed") = 0,
      py::arg("samples_small") = 100, py::arg("samples_large") = 300,
      py::arg("walk_steps") = 1000, py::arg("subnet") = 200,
      py::arg("min_component") = 5,
      "Walk-sampled network diversity of an edge list.");

  m.def(
      "inds",
      [](const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
         std::size_t n) {
        const auto b = inds(graph_from_edges(edges, n));
        py::dict out;
        out["alpha_module"] = b.alpha_module;
        out["v_module"] = b.v_module;
        out["v_lambda"] = b.v_lambda;
        out["r_motif"] = b.r_motif;
        out["value"] = b.value;
        out["module_count"] = b.module_count;
        out["degenerate"] = b.degenerate();
        return out;
      },
      py::arg("edges"), py::arg("n") = 0);

  m.def(
      "motif_count",
      [](const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
         std::size_t n, int k) { return motif_count(graph_from_edges(edges, n), k); },
      py::arg("edges"), py::arg("n"), py::arg("k"));

  m.def(
      "compute_scores",
      [](const PatentCorpus& corpus, const std::string& measure, int year,
         int width, std::uint64_t seed, unsigned workers) {
        RunConfig cfg;
        cfg.width = width;
        cfg.seed = seed;
        cfg.workers = workers ? workers : 1;
        const auto result = compute_measure(corpus, measure, year, cfg);
        py::list rows;
        for (const auto& r : result.rows) {
          rows.append(py::make_tuple(r.year, r.measure, r.tech, r.value,
                                     r.n_patents));
        }
        return py::make_tuple(rows, result.skip_report_json);
      },
      py::arg("corpus"), py::arg("measure"), py::arg("year"),
      py::arg("width") = 5, py::arg("seed") = 0, py::arg("workers") = 1,
      "Rows (year, measure, ipc4, value, n_patents) plus the skip report.");

  m.def("valid_measures", [] { return valid_measures(); });
}
