#pragma once

#include <map>
#include <string>
#include <vector>

#include "resev/area_aggregate.hpp"
#include "resev/compare.hpp"
#include "resev/indicators.hpp"
#include "resev/report.hpp"
#include "resev/vtr_score.hpp"

namespace resev {

// Orchestration shared by the CLI and the integration tests: which entity
// sets enter each comparison, and in what order rows are emitted.

namespace detail {

// Universities whose submission count in the area passes the filter, with
// their peer-review score. Sorted by university id.
inline std::vector<VtrScore> eligible_scores(const std::vector<VtrScore>& all,
                                             const std::string& area_id,
                                             long min_outputs) {
  std::vector<VtrScore> out;
  for (const auto& s : all)
    if (s.area_id == area_id && s.total >= min_outputs) out.push_back(s);
  return out;
}

}  // namespace detail

// Per area: one row correlating the peer-review score with the average
// submitted-article quality (indicator "QI"), then one row per productivity
// kind correlating the percentile ranks of the two rankings. Areas or
// indicators without enough comparable universities (n < 3 or a degenerate
// variance) are skipped.
inline std::vector<CorrelationRow> compute_correlations(
    const Corpus& corpus, const QualityIndex& quality,
    const IndicatorTable& table, long min_outputs, double alpha) {
  const std::vector<VtrScore> scores = score_all(corpus);
  std::vector<CorrelationRow> rows;
  for (const auto& area_id : corpus.area_ids()) {
    const auto eligible = detail::eligible_scores(scores, area_id, min_outputs);

    {
      std::vector<double> r_values, qi_values;
      for (const auto& s : eligible) {
        auto qi =
            avg_submission_quality(corpus, quality, s.university_id, area_id);
        if (!qi) continue;
        r_values.push_back(s.r);
        qi_values.push_back(*qi);
      }
      if (r_values.size() >= 3) {
        try {
          rows.push_back({area_id, "QI",
                          correlate(r_values, qi_values, alpha)});
        } catch (const Error&) {
          // degenerate variance: no row
        }
      }
    }

    for (ProductivityKind kind :
         {ProductivityKind::P, ProductivityKind::FP, ProductivityKind::QP,
          ProductivityKind::FQP}) {
      std::vector<ScoredEntity> vtr_entities, kind_entities;
      for (const auto& s : eligible) {
        auto agg = aggregate_area(table, s.university_id, area_id, kind);
        if (!agg) continue;
        vtr_entities.push_back({s.university_id, s.r, s.total});
        kind_entities.push_back({s.university_id, agg->value, s.total});
      }
      if (vtr_entities.size() < 3) continue;
      RankTable vtr_table = make_rank_table(area_id, vtr_entities);
      RankTable kind_table = make_rank_table(area_id, kind_entities);
      std::map<std::string, double> vtr_pct;
      for (const auto& row : vtr_table.rows)
        vtr_pct[row.entity_id] = row.percentile;
      std::vector<double> xs, ys;
      for (const auto& row : kind_table.rows) {
        xs.push_back(vtr_pct.at(row.entity_id));
        ys.push_back(row.percentile);
      }
      try {
        rows.push_back({area_id, to_string(kind), correlate(xs, ys, alpha)});
      } catch (const Error&) {
      }
    }
  }
  return rows;
}

// Per area: rank-variation statistics between the peer-review ranking and
// the ranking by one productivity kind, over the universities present in
// both. Areas with no comparable universities are skipped.
inline std::vector<VariationRow> compute_variations(
    const Corpus& corpus, const IndicatorTable& table, ProductivityKind kind,
    long min_outputs, int top_k) {
  const std::vector<VtrScore> scores = score_all(corpus);
  std::vector<VariationRow> rows;
  for (const auto& area_id : corpus.area_ids()) {
    const auto eligible = detail::eligible_scores(scores, area_id, min_outputs);
    std::vector<ScoredEntity> vtr_entities, kind_entities;
    for (const auto& s : eligible) {
      auto agg = aggregate_area(table, s.university_id, area_id, kind);
      if (!agg) continue;
      vtr_entities.push_back({s.university_id, s.r, s.total});
      kind_entities.push_back({s.university_id, agg->value, s.total});
    }
    if (vtr_entities.empty()) continue;
    RankTable vtr_table = make_rank_table(area_id, vtr_entities);
    RankTable kind_table = make_rank_table(area_id, kind_entities);
    rows.push_back({area_id, kind, rank_variation(vtr_table, kind_table, top_k)});
  }
  return rows;
}

// Selection audits for every (university, area) pair with indexed
// submissions and a portfolio, sorted by university then area.
inline std::vector<SelectionAudit> compute_audits(const Corpus& corpus,
                                                  const QualityIndex& quality) {
  std::vector<SelectionAudit> rows;
  for (const auto& university_id : corpus.universities())
    for (const auto& area_id : corpus.area_ids())
      if (auto audit = selection_audit(corpus, quality, university_id, area_id))
        rows.push_back(*audit);
  return rows;
}

}  // namespace resev
