#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resev/corpus.hpp"
#include "resev/percentile.hpp"

namespace resev {

// Publication-intensity indicators of one university in one sector.
//
//   O    output: publications authored by the university's researchers of
//        the sector, counted once each
//   FO   fractional output: sum of 1 / n_institutions
//   SS   scientific strength: sum of sector-relative journal qualities
//   FSS  fractional scientific strength: qualities / n_institutions
//
// P, FP, QP, FQP divide the four volumes by staff headcount; they are unset
// when the sector has no staff.
struct SectorIndicators {
  std::string university_id;
  std::string sector_code;
  long output = 0;                  // O
  double fractional_output = 0.0;   // FO
  double strength = 0.0;            // SS
  double fractional_strength = 0.0; // FSS
  double staff = 0.0;
  std::optional<double> productivity;                       // P
  std::optional<double> fractional_productivity;            // FP
  std::optional<double> qualitative_productivity;           // QP
  std::optional<double> fractional_qualitative_productivity; // FQP
};

inline SectorIndicators sector_indicators(const Corpus& corpus,
                                          const QualityIndex& quality,
                                          const std::string& university_id,
                                          const std::string& sector_code) {
  corpus.require_university(university_id);
  corpus.sector(sector_code);
  SectorIndicators ind;
  ind.university_id = university_id;
  ind.sector_code = sector_code;
  ind.staff = corpus.staff_count(university_id, sector_code);

  // A publication with several authors in this (university, sector) counts
  // once; map iteration keeps the walk deterministic.
  for (const auto& [pub_id, pub] : corpus.publications()) {
    bool counted = false;
    for (const auto& author : pub.author_ids) {
      const auto it = corpus.researchers().find(author);
      if (it == corpus.researchers().end()) continue;
      if (it->second.university_id == university_id &&
          it->second.sector_code == sector_code) {
        counted = true;
        break;
      }
    }
    if (!counted) continue;
    const double weight = 1.0 / pub.n_institutions;
    const double q = quality.publication_quality(pub, sector_code);
    ind.output += 1;
    ind.fractional_output += weight;
    ind.strength += q;
    ind.fractional_strength += q * weight;
  }

  if (ind.staff > 0) {
    ind.productivity = ind.output / ind.staff;
    ind.fractional_productivity = ind.fractional_output / ind.staff;
    ind.qualitative_productivity = ind.strength / ind.staff;
    ind.fractional_qualitative_productivity =
        ind.fractional_strength / ind.staff;
  }
  return ind;
}

inline SectorIndicators sector_indicators(const Corpus& corpus,
                                          const std::string& university_id,
                                          const std::string& sector_code) {
  return sector_indicators(corpus, QualityIndex(corpus), university_id,
                           sector_code);
}

// Rows for every (university, sector) pair that has staff or researchers,
// sorted by university then sector.
inline std::vector<SectorIndicators> all_sector_indicators(
    const Corpus& corpus, const QualityIndex& quality) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& record : corpus.staff())
    pairs.insert({record.university_id, record.sector_code});
  for (const auto& [id, r] : corpus.researchers())
    pairs.insert({r.university_id, r.sector_code});
  std::vector<SectorIndicators> rows;
  rows.reserve(pairs.size());
  for (const auto& [university_id, sector_code] : pairs)
    rows.push_back(sector_indicators(corpus, quality, university_id, sector_code));
  return rows;
}

// All sector indicators computed in one pass over the publications. Rows
// match repeated sector_indicators() calls exactly; pipelines use this to
// avoid rescanning the corpus per (university, sector) pair.
class IndicatorTable {
 public:
  IndicatorTable(const Corpus& corpus, const QualityIndex& quality)
      : corpus_(&corpus) {
    for (const auto& record : corpus.staff())
      cell(record.university_id, record.sector_code).staff = record.headcount;
    for (const auto& [id, r] : corpus.researchers())
      cell(r.university_id, r.sector_code);
    for (const auto& [pub_id, pub] : corpus.publications()) {
      std::set<std::pair<std::string, std::string>> counted;
      for (const auto& author : pub.author_ids) {
        const Researcher& r = corpus.researcher(author);
        counted.insert({r.university_id, r.sector_code});
      }
      const double weight = 1.0 / pub.n_institutions;
      for (const auto& [university_id, sector_code] : counted) {
        const double q = quality.publication_quality(pub, sector_code);
        SectorIndicators& ind = cell(university_id, sector_code);
        ind.output += 1;
        ind.fractional_output += weight;
        ind.strength += q;
        ind.fractional_strength += q * weight;
      }
    }
    rows_.reserve(cells_.size());
    for (auto& [key, ind] : cells_) {
      if (ind.staff > 0) {
        ind.productivity = ind.output / ind.staff;
        ind.fractional_productivity = ind.fractional_output / ind.staff;
        ind.qualitative_productivity = ind.strength / ind.staff;
        ind.fractional_qualitative_productivity =
            ind.fractional_strength / ind.staff;
      }
      rows_.push_back(ind);
    }
  }

  const std::vector<SectorIndicators>& rows() const { return rows_; }

  // The cell for a pair, or nullptr when the pair has no staff, researchers
  // or publications (its indicators would be all zero and undefined).
  const SectorIndicators* find(const std::string& university_id,
                               const std::string& sector_code) const {
    auto it = cells_.find({university_id, sector_code});
    return it == cells_.end() ? nullptr : &it->second;
  }

  const Corpus& corpus() const { return *corpus_; }

 private:
  SectorIndicators& cell(const std::string& university_id,
                         const std::string& sector_code) {
    auto [it, inserted] =
        cells_.try_emplace({university_id, sector_code}, SectorIndicators{});
    if (inserted) {
      it->second.university_id = university_id;
      it->second.sector_code = sector_code;
    }
    return it->second;
  }

  const Corpus* corpus_;
  std::map<std::pair<std::string, std::string>, SectorIndicators> cells_;
  std::vector<SectorIndicators> rows_;  // sorted by (university, sector)
};

// Average quality of the university's submitted, indexed articles in an
// area. Submissions without a publication link or without a computable
// quality do not enter the mean; duplicated article submissions count once.
// Empty when nothing qualifies (such universities drop out of quality
// rankings).
inline std::optional<double> avg_submission_quality(
    const Corpus& corpus, const QualityIndex& quality,
    const std::string& university_id, const std::string& area_id) {
  corpus.require_university(university_id);
  corpus.require_area(area_id);
  std::set<std::string> seen;
  double sum = 0.0;
  long count = 0;
  for (const auto& s : corpus.submissions()) {
    if (s.university_id != university_id || s.area_id != area_id) continue;
    if (s.pub_id.empty() || seen.count(s.pub_id)) continue;
    seen.insert(s.pub_id);
    const Publication& pub = corpus.publication(s.pub_id);
    auto q = quality.area_publication_quality(pub, area_id);
    if (!q) continue;
    sum += *q;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

inline std::optional<double> avg_submission_quality(
    const Corpus& corpus, const std::string& university_id,
    const std::string& area_id) {
  return avg_submission_quality(corpus, QualityIndex(corpus), university_id,
                                area_id);
}

}  // namespace resev
