#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resev/corpus.hpp"
#include "resev/error.hpp"

namespace resev {

// Percentile rank of x within a multiset of values, in [0, 1]:
//
//   (B + 0.5 * (E - 1)) / (N - 1)
//
// with B the count of values strictly below x and E the count equal to x.
// Tied values share the same percentile, the minimum maps to 0, the maximum
// to 1, and a singleton multiset maps to 1. x must be a member.
inline double percentile_rank(const std::vector<double>& values, double x) {
  if (values.empty()) throw Error("percentile_rank: empty multiset");
  std::size_t below = 0, equal = 0;
  for (double v : values) {
    if (v < x)
      ++below;
    else if (v == x)
      ++equal;
  }
  if (equal == 0) throw Error("percentile_rank: x is not in the multiset");
  const std::size_t n = values.size();
  if (n == 1) return 1.0;
  return (static_cast<double>(below) + 0.5 * static_cast<double>(equal - 1)) /
         static_cast<double>(n - 1);
}

// The impact factors of all journals tagged with one sector and carrying an
// impact factor for one year. Basis of the quality normalization.
struct SectorDistribution {
  std::string sector_code;
  int year = 0;
  std::vector<double> values;  // non-empty, all >= 0
};

// Assembles the distribution for (sector, year). Journals lacking that
// year's impact factor are excluded. Throws when the sector is unknown or
// the distribution would be empty.
inline SectorDistribution sector_distribution(const Corpus& corpus,
                                              const std::string& sector_code,
                                              int year) {
  corpus.sector(sector_code);
  SectorDistribution dist{sector_code, year, {}};
  for (const auto& [id, journal] : corpus.journals()) {
    if (!journal.sector_codes.count(sector_code)) continue;
    auto it = journal.if_by_year.find(year);
    if (it != journal.if_by_year.end()) dist.values.push_back(it->second);
  }
  if (dist.values.empty())
    throw Error("no impact factors for sector " + sector_code + " in year " +
                std::to_string(year));
  return dist;
}

// Sector-relative quality of a journal in one year: the percentile rank of
// its impact factor within the sector-year distribution.
inline double journal_quality(const Corpus& corpus,
                              const std::string& journal_id,
                              const std::string& sector_code, int year) {
  const Journal& journal = corpus.journal(journal_id);
  if (!journal.sector_codes.count(sector_code))
    throw Error("journal " + journal_id +
                " is not tagged with sector " + sector_code);
  auto it = journal.if_by_year.find(year);
  if (it == journal.if_by_year.end())
    throw Error("journal " + journal_id + " has no impact factor for year " +
                std::to_string(year));
  SectorDistribution dist = sector_distribution(corpus, sector_code, year);
  return percentile_rank(dist.values, it->second);
}

// Quality of a publication counted through a given sector: its journal's
// quality in the publication year, relative to that sector.
inline double publication_quality(const Corpus& corpus, const Publication& pub,
                                  const std::string& sector_code) {
  return journal_quality(corpus, pub.journal_id, sector_code, pub.year);
}

// Read-only memo of every (sector, year) distribution present in the corpus,
// built once so repeated quality lookups cost a binary search. Results are
// identical to the freestanding functions above.
class QualityIndex {
 public:
  explicit QualityIndex(const Corpus& corpus) : corpus_(&corpus) {
    for (const auto& [id, journal] : corpus.journals())
      for (const auto& code : journal.sector_codes)
        for (const auto& [year, factor] : journal.if_by_year)
          distributions_[{code, year}].push_back(factor);
    for (auto& [key, values] : distributions_)
      std::sort(values.begin(), values.end());
  }

  const Corpus& corpus() const { return *corpus_; }

  double journal_quality(const std::string& journal_id,
                         const std::string& sector_code, int year) const {
    const Journal& journal = corpus_->journal(journal_id);
    if (!journal.sector_codes.count(sector_code))
      throw Error("journal " + journal_id +
                  " is not tagged with sector " + sector_code);
    auto it = journal.if_by_year.find(year);
    if (it == journal.if_by_year.end())
      throw Error("journal " + journal_id +
                  " has no impact factor for year " + std::to_string(year));
    const std::vector<double>& values = distributions_.at({sector_code, year});
    const std::size_t n = values.size();
    if (n == 1) return 1.0;
    auto lo = std::lower_bound(values.begin(), values.end(), it->second);
    auto hi = std::upper_bound(lo, values.end(), it->second);
    const auto below = static_cast<double>(lo - values.begin());
    const auto equal = static_cast<double>(hi - lo);
    return (below + 0.5 * (equal - 1)) / static_cast<double>(n - 1);
  }

  double publication_quality(const Publication& pub,
                             const std::string& sector_code) const {
    return journal_quality(pub.journal_id, sector_code, pub.year);
  }

  // Quality of a publication in an area context (submission scoring and
  // portfolio positioning): the mean of its journal's sector-relative
  // qualities over the journal's sectors that belong to the area. Empty when
  // the journal carries no sector of that area or lacks that year's impact
  // factor.
  std::optional<double> area_publication_quality(
      const Publication& pub, const std::string& area_id) const {
    const Journal& journal = corpus_->journal(pub.journal_id);
    if (!journal.if_by_year.count(pub.year)) return std::nullopt;
    double sum = 0.0;
    int count = 0;
    for (const auto& code : journal.sector_codes) {
      const auto& info = corpus_->sector(code);
      if (info.area_id != area_id) continue;
      sum += journal_quality(pub.journal_id, code, pub.year);
      ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / count;
  }

 private:
  const Corpus* corpus_;
  std::map<std::pair<std::string, int>, std::vector<double>> distributions_;
};

// Convenience wrapper building an ad-hoc index; fine for one-off queries.
inline std::optional<double> area_publication_quality(
    const Corpus& corpus, const Publication& pub, const std::string& area_id) {
  return QualityIndex(corpus).area_publication_quality(pub, area_id);
}

}  // namespace resev
