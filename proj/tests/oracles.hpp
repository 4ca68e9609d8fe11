#pragma once

// Brute-force reference implementations used to cross-check the library.
// They recompute everything from raw corpus rows with naive scans, full
// sorts and textbook formulas, deliberately sharing no code with the
// implementation under test.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resev/corpus.hpp"

namespace oracle {

// Percentile by explicit mean ranks over the sorted multiset.
inline double percentile(std::vector<double> values, double x) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 1) return 1.0;
  double rank_sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] == x) {
      rank_sum += static_cast<double>(i + 1);
      ++count;
    }
  }
  const double mean_rank = rank_sum / static_cast<double>(count);
  return (mean_rank - 1.0) / static_cast<double>(n - 1);
}

inline std::vector<double> sector_year_factors(const resev::Corpus& corpus,
                                               const std::string& sector,
                                               int year) {
  std::vector<double> out;
  for (const auto& [id, journal] : corpus.journals()) {
    if (!journal.sector_codes.count(sector)) continue;
    auto it = journal.if_by_year.find(year);
    if (it != journal.if_by_year.end()) out.push_back(it->second);
  }
  return out;
}

inline double journal_quality(const resev::Corpus& corpus,
                              const std::string& journal_id,
                              const std::string& sector, int year) {
  const auto factors = sector_year_factors(corpus, sector, year);
  return percentile(factors, corpus.journal(journal_id).if_by_year.at(year));
}

inline std::optional<double> area_quality(const resev::Corpus& corpus,
                                          const resev::Publication& pub,
                                          const std::string& area_id) {
  const auto& journal = corpus.journal(pub.journal_id);
  if (!journal.if_by_year.count(pub.year)) return std::nullopt;
  double sum = 0.0;
  int n = 0;
  for (const auto& code : journal.sector_codes) {
    if (corpus.sector(code).area_id != area_id) continue;
    sum += journal_quality(corpus, pub.journal_id, code, pub.year);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

struct Indicators {
  long o = 0;
  double fo = 0.0, ss = 0.0, fss = 0.0;
  double staff = 0.0;
  bool productivity_defined = false;
  double p = 0.0, fp = 0.0, qp = 0.0, fqp = 0.0;
};

inline Indicators sector_indicators(const resev::Corpus& corpus,
                                    const std::string& university,
                                    const std::string& sector) {
  Indicators ind;
  for (const auto& [pub_id, pub] : corpus.publications()) {
    bool mine = false;
    for (const auto& [rid, r] : corpus.researchers())
      if (r.university_id == university && r.sector_code == sector &&
          std::find(pub.author_ids.begin(), pub.author_ids.end(), rid) !=
              pub.author_ids.end())
        mine = true;
    if (!mine) continue;
    const double q = journal_quality(corpus, pub.journal_id, sector, pub.year);
    ind.o += 1;
    ind.fo += 1.0 / pub.n_institutions;
    ind.ss += q;
    ind.fss += q / pub.n_institutions;
  }
  for (const auto& record : corpus.staff())
    if (record.university_id == university && record.sector_code == sector)
      ind.staff = record.headcount;
  if (ind.staff > 0) {
    ind.productivity_defined = true;
    ind.p = ind.o / ind.staff;
    ind.fp = ind.fo / ind.staff;
    ind.qp = ind.ss / ind.staff;
    ind.fqp = ind.fss / ind.staff;
  }
  return ind;
}

inline std::set<std::string> portfolio(const resev::Corpus& corpus,
                                       const std::string& university,
                                       const std::string& area_id) {
  std::set<std::string> out;
  for (const auto& [pub_id, pub] : corpus.publications())
    for (const auto& [rid, r] : corpus.researchers())
      if (r.university_id == university &&
          corpus.sector(r.sector_code).area_id == area_id &&
          std::find(pub.author_ids.begin(), pub.author_ids.end(), rid) !=
              pub.author_ids.end())
        out.insert(pub_id);
  return out;
}

// Distinct submitted indexed publications with computable quality.
inline std::map<std::string, double> submitted(const resev::Corpus& corpus,
                                               const std::string& university,
                                               const std::string& area_id) {
  std::map<std::string, double> out;
  for (const auto& s : corpus.submissions()) {
    if (s.university_id != university || s.area_id != area_id ||
        s.pub_id.empty())
      continue;
    auto q = area_quality(corpus, corpus.publication(s.pub_id), area_id);
    if (q) out[s.pub_id] = *q;
  }
  return out;
}

inline std::optional<double> avg_submission_quality(
    const resev::Corpus& corpus, const std::string& university,
    const std::string& area_id) {
  const auto subs = submitted(corpus, university, area_id);
  if (subs.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& [pub_id, q] : subs) sum += q;
  return sum / static_cast<double>(subs.size());
}

inline std::vector<double> portfolio_qualities(const resev::Corpus& corpus,
                                               const std::string& university,
                                               const std::string& area_id) {
  std::vector<double> out;
  for (const auto& pub_id : portfolio(corpus, university, area_id)) {
    auto q = area_quality(corpus, corpus.publication(pub_id), area_id);
    if (q) out.push_back(*q);
  }
  return out;
}

inline std::optional<double> below_median_share(const resev::Corpus& corpus,
                                                const std::string& university,
                                                const std::string& area_id) {
  auto quals = portfolio_qualities(corpus, university, area_id);
  const auto subs = submitted(corpus, university, area_id);
  if (quals.empty() || subs.empty()) return std::nullopt;
  std::sort(quals.begin(), quals.end());
  const std::size_t n = quals.size();
  const double median =
      n % 2 == 1 ? quals[n / 2] : 0.5 * (quals[n / 2 - 1] + quals[n / 2]);
  long below = 0;
  for (const auto& [pub_id, q] : subs)
    if (q < median) ++below;
  return static_cast<double>(below) / static_cast<double>(subs.size());
}

inline std::optional<long> displaced_count(const resev::Corpus& corpus,
                                           const std::string& university,
                                           const std::string& area_id) {
  auto quals = portfolio_qualities(corpus, university, area_id);
  const auto subs = submitted(corpus, university, area_id);
  if (subs.empty() || quals.size() < subs.size()) return std::nullopt;
  std::sort(quals.begin(), quals.end());
  const double threshold = quals[quals.size() - subs.size()];
  long count = 0;
  for (const auto& [pub_id, q] : subs)
    if (q < threshold) ++count;
  return count;
}

// Pearson through the raw-sums formula (single pass).
inline double pearson(const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    syy += ys[i] * ys[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) /
         std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

// Competition rank of one score: strictly better scores + 1.
inline int competition_rank(const std::vector<double>& scores, double score) {
  int better = 0;
  for (double s : scores)
    if (s > score) ++better;
  return better + 1;
}

inline double sector_mean_fqp_style(const resev::Corpus& corpus,
                                    const std::string& sector,
                                    double (*pick)(const Indicators&)) {
  double sum = 0.0;
  long count = 0;
  for (const auto& university : corpus.universities()) {
    double staff = 0.0;
    for (const auto& record : corpus.staff())
      if (record.university_id == university && record.sector_code == sector)
        staff = record.headcount;
    if (staff <= 0) continue;
    sum += pick(sector_indicators(corpus, university, sector));
    ++count;
  }
  return sum / static_cast<double>(count);
}

}  // namespace oracle
