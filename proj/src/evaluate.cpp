#include "techcomp/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "techcomp/errors.hpp"

namespace techcomp {

double gini(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("gini of empty vector");
  double sum = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::invalid_argument("gini needs non-negative counts");
    sum += v;
  }
  if (sum <= 0.0) throw Error("gini undefined for an all-zero vector");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += (2.0 * static_cast<double>(i + 1) - static_cast<double>(n) - 1.0) *
           sorted[i];
  }
  return acc / (static_cast<double>(n) * sum);
}

namespace {

std::vector<double> mid_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("need at least 3 observations");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  if (x.size() < 3) throw std::invalid_argument("need at least 3 observations");
  return pearson(mid_ranks(x), mid_ranks(y));
}

std::vector<std::string> fine_region_universe(const PatentCorpus& corpus) {
  std::set<std::string> regions;
  for (const auto& rec : corpus.records)
    for (const auto& r : rec.regions) regions.insert(r);
  return {regions.begin(), regions.end()};
}

std::vector<CovariateRow> covariates(
    const PatentWindow& w, const std::vector<std::string>& region_universe) {
  struct Acc {
    std::int64_t patents = 0;
    double year_sum = 0.0;
    double inventor_sum = 0.0;
    std::vector<double> region_counts;
  };
  std::map<std::string, Acc> by_tech;
  auto region_index = [&](const std::string& r) -> std::ptrdiff_t {
    auto it = std::lower_bound(region_universe.begin(), region_universe.end(), r);
    if (it == region_universe.end() || *it != r) return -1;
    return it - region_universe.begin();
  };

  std::set<std::string> techs_of_record;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const PatentRecord& rec = w.record(i);
    techs_of_record.clear();
    for (const auto& code : rec.codes) techs_of_record.emplace(ipc4(code));
    for (const auto& tech : techs_of_record) {
      Acc& acc = by_tech[tech];
      if (acc.region_counts.empty())
        acc.region_counts.assign(region_universe.size(), 0.0);
      ++acc.patents;
      acc.year_sum += rec.year;
      acc.inventor_sum += static_cast<double>(rec.regions.size());
      for (const auto& region : rec.regions) {
        const auto idx = region_index(region);
        if (idx >= 0) acc.region_counts[static_cast<std::size_t>(idx)] += 1.0;
      }
    }
  }

  std::vector<CovariateRow> out;
  out.reserve(by_tech.size());
  for (auto& [tech, acc] : by_tech) {
    CovariateRow row;
    row.year = w.anchor_year;
    row.tech = tech;
    row.patent_count = acc.patents;
    row.mean_year = acc.year_sum / static_cast<double>(acc.patents);
    row.mean_inventors = acc.inventor_sum / static_cast<double>(acc.patents);
    const double total = std::accumulate(acc.region_counts.begin(),
                                         acc.region_counts.end(), 0.0);
    if (total > 0.0 && !acc.region_counts.empty())
      row.gini = gini(acc.region_counts);
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

struct JoinedTech {
  double score = 0.0;
  const CovariateRow* cov = nullptr;
};

std::optional<double> covariate_value(const CovariateRow& c,
                                      const std::string& name) {
  if (name == "patent_count") return static_cast<double>(c.patent_count);
  if (name == "mean_year") return c.mean_year;
  if (name == "mean_inventors") return c.mean_inventors;
  if (name == "gini") return c.gini;
  throw std::invalid_argument("unknown covariate: " + name);
}

}  // namespace

std::vector<SweepPoint> size_class_sweep(const std::vector<ScoreRow>& scores,
                                         const std::vector<CovariateRow>& covs,
                                         const std::string& covariate) {
  std::map<std::string, const CovariateRow*> cov_by_tech;
  double all_patents = 0.0;
  for (const auto& c : covs) {
    cov_by_tech[c.tech] = &c;
    all_patents += static_cast<double>(c.patent_count);
  }

  struct Item {
    double score, cov;
    std::int64_t patents;
  };
  std::vector<Item> items;
  std::int64_t max_count = 0;
  for (const auto& row : scores) {
    auto it = cov_by_tech.find(row.tech);
    if (it == cov_by_tech.end()) continue;
    const auto v = covariate_value(*it->second, covariate);
    if (!v) continue;
    items.push_back({row.value, *v, it->second->patent_count});
    max_count = std::max(max_count, it->second->patent_count);
  }

  std::vector<SweepPoint> curve;
  for (std::int64_t s = 0; s <= max_count; ++s) {
    std::vector<double> xs, ys;
    double retained = 0.0;
    for (const auto& item : items) {
      if (item.patents < s) continue;
      xs.push_back(item.score);
      ys.push_back(item.cov);
      retained += static_cast<double>(item.patents);
    }
    if (xs.size() < 3) break;
    SweepPoint pt;
    pt.threshold = s;
    pt.rho = spearman(xs, ys);
    pt.retained_share = all_patents > 0.0 ? retained / all_patents : 0.0;
    curve.push_back(pt);
  }
  return curve;
}

EvaluationReport stylized_facts(const ScoreTable& table,
                                const EvaluationOptions& opts) {
  std::set<int> years;
  std::set<std::string> measures;
  for (const auto& row : table.rows) {
    years.insert(row.year);
    measures.insert(row.measure);
  }
  if (years.size() < 2)
    throw Error("stylized facts need a score table spanning at least 2 years");

  // (year, measure) -> tech -> value; (year) -> tech -> covariates
  std::map<std::pair<int, std::string>, std::map<std::string, double>> cell;
  for (const auto& row : table.rows)
    cell[{row.year, row.measure}][row.tech] = row.value;
  std::map<int, std::vector<CovariateRow>> covs_by_year;
  for (const auto& c : table.covariates) covs_by_year[c.year].push_back(c);

  EvaluationReport rep;
  rep.reference_year =
      opts.reference_year > 0 ? opts.reference_year : *years.rbegin();

  for (const auto& measure : measures) {
    std::vector<YearValue> medians;
    for (int year : years) {
      auto it = cell.find({year, measure});
      if (it == cell.end() || it->second.empty()) continue;  // gap, not fatal
      std::vector<double> vals;
      vals.reserve(it->second.size());
      for (const auto& [tech, v] : it->second) vals.push_back(v);
      medians.push_back({year, median(std::move(vals))});
    }
    double max_val = 0.0;
    for (const auto& p : medians) max_val = std::max(max_val, p.value);
    if (max_val > 0.0)
      for (auto& p : medians) p.value /= max_val;
    rep.trend[measure] = std::move(medians);
  }
  {
    std::vector<YearValue> patents_series;
    for (const auto& [year, covs] : covs_by_year) {
      std::vector<double> counts;
      counts.reserve(covs.size());
      for (const auto& c : covs)
        counts.push_back(static_cast<double>(c.patent_count));
      if (!counts.empty())
        patents_series.push_back({year, median(std::move(counts))});
    }
    double max_val = 0.0;
    for (const auto& p : patents_series) max_val = std::max(max_val, p.value);
    if (max_val > 0.0)
      for (auto& p : patents_series) p.value /= max_val;
    rep.trend["patents"] = std::move(patents_series);
  }

  auto correlation_series = [&](const std::string& measure,
                                const std::string& covariate) {
    std::vector<YearRho> series;
    for (int year : years) {
      auto it = cell.find({year, measure});
      auto cov_it = covs_by_year.find(year);
      if (it == cell.end() || cov_it == covs_by_year.end()) continue;
      std::map<std::string, const CovariateRow*> cov_by_tech;
      for (const auto& c : cov_it->second) cov_by_tech[c.tech] = &c;
      std::vector<double> xs, ys;
      for (const auto& [tech, score] : it->second) {
        auto jt = cov_by_tech.find(tech);
        if (jt == cov_by_tech.end()) continue;
        auto v = covariate_value(*jt->second, covariate);
        if (!v) continue;
        double value = *v;
        if (covariate == "mean_year" && opts.age == AgeConvention::age_years)
          value = static_cast<double>(year) - value;
        xs.push_back(score);
        ys.push_back(value);
      }
      if (xs.size() < 3) continue;
      series.push_back({year, spearman(xs, ys)});
    }
    return series;
  };

  for (const auto& measure : measures) {
    rep.age_correlation[measure] = correlation_series(measure, "mean_year");
    rep.patent_count_correlation[measure] =
        correlation_series(measure, "patent_count");
    rep.inventors_correlation[measure] =
        correlation_series(measure, "mean_inventors");
  }

  // single reference year for the spatial analysis and the size-class sweeps
  const int ref = rep.reference_year;
  auto ref_covs = covs_by_year.count(ref) ? covs_by_year[ref]
                                          : std::vector<CovariateRow>{};
  for (const auto& measure : measures) {
    auto it = cell.find({ref, measure});
    if (it == cell.end() || ref_covs.empty()) {
      rep.gini_correlation[measure] = std::nullopt;
      continue;
    }
    std::vector<ScoreRow> ref_scores;
    for (const auto& [tech, v] : it->second)
      ref_scores.push_back({ref, measure, tech, v, 0});
    std::map<std::string, const CovariateRow*> cov_by_tech;
    for (const auto& c : ref_covs) cov_by_tech[c.tech] = &c;
    std::vector<double> xs, ys;
    for (const auto& [tech, score] : it->second) {
      auto jt = cov_by_tech.find(tech);
      if (jt == cov_by_tech.end() || !jt->second->gini) continue;
      xs.push_back(score);
      ys.push_back(*jt->second->gini);
    }
    rep.gini_correlation[measure] =
        xs.size() >= 3 ? spearman(xs, ys) : std::nullopt;
    rep.patent_count_sweep[measure] =
        size_class_sweep(ref_scores, ref_covs, "patent_count");
    rep.gini_sweep[measure] = size_class_sweep(ref_scores, ref_covs, "gini");
  }
  return rep;
}

namespace {

nlohmann::json rho_json(const std::optional<double>& rho) {
  if (!rho) return nullptr;
  return *rho;
}

nlohmann::json series_json(const std::vector<YearRho>& series) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : series)
    arr.push_back({{"year", p.year}, {"rho", rho_json(p.rho)}});
  return arr;
}

nlohmann::json sweep_json(const std::vector<SweepPoint>& curve) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : curve) {
    arr.push_back({{"threshold", p.threshold},
                   {"rho", rho_json(p.rho)},
                   {"retained_share", p.retained_share}});
  }
  return arr;
}

void write_rho_csv(const std::string& path,
                   const std::map<std::string, std::vector<YearRho>>& by_measure) {
  std::ofstream out(path);
  out << "year,measure,rho\n";
  for (const auto& [measure, series] : by_measure) {
    for (const auto& p : series) {
      out << p.year << ',' << measure << ','
          << (p.rho ? format_double(*p.rho) : std::string()) << '\n';
    }
  }
}

void write_sweep_csv(const std::string& path,
                     const std::map<std::string, std::vector<SweepPoint>>& by_measure) {
  std::ofstream out(path);
  out << "threshold,measure,rho,retained_share\n";
  for (const auto& [measure, curve] : by_measure) {
    for (const auto& p : curve) {
      out << p.threshold << ',' << measure << ','
          << (p.rho ? format_double(*p.rho) : std::string()) << ','
          << format_double(p.retained_share) << '\n';
    }
  }
}

}  // namespace

std::string EvaluationReport::to_json() const {
  nlohmann::json j;
  for (const auto& [measure, series] : trend) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : series)
      arr.push_back({{"year", p.year}, {"value", p.value}});
    j["trend"][measure] = std::move(arr);
  }
  for (const auto& [measure, series] : age_correlation)
    j["age_correlation"][measure] = series_json(series);
  for (const auto& [measure, series] : patent_count_correlation)
    j["patent_count_correlation"][measure] = series_json(series);
  for (const auto& [measure, series] : inventors_correlation)
    j["inventors_correlation"][measure] = series_json(series);
  j["reference_year"] = reference_year;
  for (const auto& [measure, rho] : gini_correlation)
    j["gini_correlation"][measure] = rho_json(rho);
  for (const auto& [measure, curve] : patent_count_sweep)
    j["patent_count_sweep"][measure] = sweep_json(curve);
  for (const auto& [measure, curve] : gini_sweep)
    j["gini_sweep"][measure] = sweep_json(curve);
  return j.dump(2);
}

void write_report(const EvaluationReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream out(out_dir + "/report.json");
    if (!out) throw Error("cannot write report to " + out_dir);
    out << report.to_json() << '\n';
  }
  {
    std::ofstream out(out_dir + "/trend.csv");
    out << "year,series,value\n";
    for (const auto& [measure, series] : report.trend) {
      for (const auto& p : series)
        out << p.year << ',' << measure << ',' << format_double(p.value) << '\n';
    }
  }
  write_rho_csv(out_dir + "/age_correlation.csv", report.age_correlation);
  write_rho_csv(out_dir + "/patent_count_correlation.csv",
                report.patent_count_correlation);
  write_rho_csv(out_dir + "/inventors_correlation.csv",
                report.inventors_correlation);
  {
    std::ofstream out(out_dir + "/gini_correlation.csv");
    out << "measure,rho\n";
    for (const auto& [measure, rho] : report.gini_correlation) {
      out << measure << ',' << (rho ? format_double(*rho) : std::string())
          << '\n';
    }
  }
  write_sweep_csv(out_dir + "/sweep_patent_count.csv", report.patent_count_sweep);
  write_sweep_csv(out_dir + "/sweep_gini.csv", report.gini_sweep);
}

}  // namespace techcomp
