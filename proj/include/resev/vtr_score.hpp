#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "resev/corpus.hpp"
#include "resev/error.hpp"

namespace resev {

// Peer-review quality index over rating counts:
//
//   R = (E + 0.8 G + 0.6 A + 0.2 L) / T,  T = E + G + A + L
//
// R spans [0.2, 1]: 0.2 when everything is rated limited, 1 when everything
// is rated excellent.
inline double r_score(long excellent, long good, long acceptable,
                      long limited) {
  if (excellent < 0 || good < 0 || acceptable < 0 || limited < 0)
    throw Error("r_score: negative rating count");
  const long total = excellent + good + acceptable + limited;
  if (total == 0) throw Error("r_score: all rating counts are zero");
  return (excellent + 0.8 * good + 0.6 * acceptable + 0.2 * limited) / total;
}

// Rating tallies and quality index of one university in one area.
struct VtrScore {
  std::string university_id;
  std::string area_id;
  long excellent = 0;
  long good = 0;
  long acceptable = 0;
  long limited = 0;
  long total = 0;
  double r = 0.0;
};

// One score per (university, area) with at least one submission, sorted by
// university then area.
inline std::vector<VtrScore> score_all(const Corpus& corpus) {
  std::map<std::pair<std::string, std::string>, VtrScore> tally;
  for (const auto& s : corpus.submissions()) {
    VtrScore& score = tally[{s.university_id, s.area_id}];
    score.university_id = s.university_id;
    score.area_id = s.area_id;
    switch (s.rating) {
      case Rating::Excellent: ++score.excellent; break;
      case Rating::Good: ++score.good; break;
      case Rating::Acceptable: ++score.acceptable; break;
      case Rating::Limited: ++score.limited; break;
    }
  }
  std::vector<VtrScore> out;
  out.reserve(tally.size());
  for (auto& [key, score] : tally) {
    score.total =
        score.excellent + score.good + score.acceptable + score.limited;
    score.r = r_score(score.excellent, score.good, score.acceptable,
                      score.limited);
    out.push_back(score);
  }
  return out;
}

// Input to ranking: an entity, its score, and how many outputs back the
// score (used by the minimum-submissions filter).
struct ScoredEntity {
  std::string entity_id;
  double score = 0.0;
  long n_outputs = std::numeric_limits<long>::max();
};

struct RankRow {
  std::string entity_id;
  double score = 0.0;
  int rank = 0;           // competition ranking: ties share the minimum rank
  double percentile = 0.0; // 100 * (N - rank) / (N - 1); 100 for N = 1
};

struct RankTable {
  std::string label;
  std::vector<RankRow> rows;  // sorted by score descending, entity id ascending
};

// Builds a rank table. Entities with fewer than min_outputs outputs are
// dropped before ranking; tied scores share the smallest applicable rank and
// the following ranks are skipped.
inline RankTable make_rank_table(std::string label,
                                 std::vector<ScoredEntity> entities,
                                 long min_outputs = 0) {
  std::erase_if(entities, [min_outputs](const ScoredEntity& e) {
    return e.n_outputs < min_outputs;
  });
  if (entities.empty())
    throw Error("rank table '" + label + "' is empty after filtering");
  for (const auto& e : entities)
    if (std::isnan(e.score))
      throw Error("rank table '" + label + "': NaN score for " + e.entity_id);
  std::sort(entities.begin(), entities.end(),
            [](const ScoredEntity& a, const ScoredEntity& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.entity_id < b.entity_id;
            });
  RankTable table;
  table.label = std::move(label);
  const std::size_t n = entities.size();
  table.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RankRow row;
    row.entity_id = entities[i].entity_id;
    row.score = entities[i].score;
    if (i > 0 && entities[i].score == entities[i - 1].score)
      row.rank = table.rows[i - 1].rank;
    else
      row.rank = static_cast<int>(i) + 1;
    row.percentile =
        n == 1 ? 100.0
               : 100.0 * static_cast<double>(n - row.rank) /
                     static_cast<double>(n - 1);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace resev
