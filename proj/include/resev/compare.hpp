#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "resev/corpus.hpp"
#include "resev/error.hpp"
#include "resev/percentile.hpp"
#include "resev/vtr_score.hpp"

namespace resev {

namespace detail {

// Midpoint median: mean of the two central values for even counts.
inline double median(std::vector<double> values) {
  if (values.empty()) throw Error("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

inline double population_std(const std::vector<double>& values) {
  if (values.empty()) throw Error("std of empty set");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= values.size();
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / values.size());
}

// Continued fraction for the regularized incomplete beta function
// (modified Lentz's method).
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEpsilon = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta function I_x(a, b).
inline double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0 || b <= 0)
    throw Error("regularized_incomplete_beta: parameters must be positive");
  if (x < 0 || x > 1)
    throw Error("regularized_incomplete_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log(1.0 - x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

// Student-t cumulative distribution at t with dof degrees of freedom.
inline double student_t_cdf(double t, int dof) {
  if (dof < 1) throw Error("student_t_cdf: dof must be >= 1");
  const double v = static_cast<double>(dof);
  const double x = v / (v + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(v / 2.0, 0.5, x);
  return t >= 0 ? 1.0 - tail : tail;
}

// Inverse CDF by bisection; accurate to about 1e-8 on t.
inline double student_t_quantile(double p, int dof) {
  if (dof < 1) throw Error("student_t_quantile: dof must be >= 1");
  if (p <= 0.0 || p >= 1.0)
    throw Error("student_t_quantile: p outside (0, 1)");
  if (p == 0.5) return 0.0;
  // Symmetric: solve for the upper half.
  const bool negate = p < 0.5;
  const double target = negate ? 1.0 - p : p;
  double lo = 0.0, hi = 1.0;
  while (student_t_cdf(hi, dof) < target) {
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-8; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, dof) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double t = 0.5 * (lo + hi);
  return negate ? -t : t;
}

// Two-sided critical value for a Pearson correlation on n observations:
//
//   r_c = t_c / sqrt(t_c^2 + n - 2)
//
// with t_c the two-sided alpha quantile of Student-t at n - 2 degrees of
// freedom. |r| above r_c is significant at level alpha.
inline double critical_r(int n, double alpha) {
  if (n < 3) throw Error("critical_r: need at least 3 observations");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw Error("critical_r: alpha outside (0, 1)");
  const double t = student_t_quantile(1.0 - alpha / 2.0, n - 2);
  return t / std::sqrt(t * t + (n - 2));
}

// Product-moment correlation. Requires equal lengths, n >= 3 and nonzero
// variance on both sides.
inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error("pearson: length mismatch");
  const std::size_t n = xs.size();
  if (n < 3) throw Error("pearson: need at least 3 observations");
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error("pearson: zero variance");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

// Ascending ranks 1..n with tied values sharing their mean rank.
inline std::vector<double> mean_tie_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

// Rank correlation: Pearson applied to mean-tie ranks.
inline double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error("spearman: length mismatch");
  const std::vector<double> rx = mean_tie_ranks(xs);
  const std::vector<double> ry = mean_tie_ranks(ys);
  return pearson(rx, ry);
}

struct CorrelationResult {
  long n = 0;
  double r = 0.0;
  double critical_value = 0.0;
  bool significant = false;
};

inline CorrelationResult correlate(std::span<const double> xs,
                                   std::span<const double> ys, double alpha) {
  CorrelationResult result;
  result.n = static_cast<long>(xs.size());
  result.r = pearson(xs, ys);
  result.critical_value = critical_r(static_cast<int>(xs.size()), alpha);
  result.significant = std::fabs(result.r) > result.critical_value;
  return result;
}

// How two rankings of the same entities differ.
struct RankVariationStats {
  long changed = 0;   // entities whose rank differs
  long total = 0;
  long max_abs = 0;
  double mean_abs = 0.0;
  double median_abs = 0.0;
  double std_abs = 0.0;  // population standard deviation of |delta|
  long top_k_overlap = 0;
};

// Per-entity rank deltas between two tables over the identical entity set.
// Top-k membership takes the first k rows of each table (rank order, entity
// id breaking ties), so overlap is always within [0, k].
inline RankVariationStats rank_variation(const RankTable& a,
                                         const RankTable& b, int k) {
  if (k < 0) throw Error("rank_variation: k must be >= 0");
  std::map<std::string, int> rank_a, rank_b;
  for (const auto& row : a.rows) rank_a[row.entity_id] = row.rank;
  for (const auto& row : b.rows) rank_b[row.entity_id] = row.rank;
  if (rank_a.size() != a.rows.size() || rank_b.size() != b.rows.size())
    throw Error("rank_variation: duplicate entities in a table");
  if (rank_a.size() != rank_b.size())
    throw Error("rank_variation: entity sets differ");
  for (const auto& [entity, rank] : rank_a)
    if (!rank_b.count(entity))
      throw Error("rank_variation: entity sets differ at " + entity);

  RankVariationStats stats;
  stats.total = static_cast<long>(rank_a.size());
  std::vector<double> abs_deltas;
  abs_deltas.reserve(rank_a.size());
  for (const auto& [entity, ra] : rank_a) {
    const long delta = rank_b.at(entity) - ra;
    if (delta != 0) ++stats.changed;
    stats.max_abs = std::max(stats.max_abs, std::labs(delta));
    abs_deltas.push_back(static_cast<double>(std::labs(delta)));
  }
  double sum = 0.0;
  for (double d : abs_deltas) sum += d;
  stats.mean_abs = sum / abs_deltas.size();
  stats.median_abs = detail::median(abs_deltas);
  stats.std_abs = detail::population_std(abs_deltas);

  const std::size_t take =
      std::min<std::size_t>(static_cast<std::size_t>(k), a.rows.size());
  std::set<std::string> top_a;
  for (std::size_t i = 0; i < take; ++i) top_a.insert(a.rows[i].entity_id);
  for (std::size_t i = 0; i < take; ++i)
    if (top_a.count(b.rows[i].entity_id)) ++stats.top_k_overlap;
  return stats;
}

namespace detail {

// Distinct submitted indexed article ids of a university in an area, with a
// computable area quality.
inline std::vector<std::pair<std::string, double>> submitted_qualities(
    const Corpus& corpus, const QualityIndex& quality,
    const std::string& university_id, const std::string& area_id) {
  std::set<std::string> seen;
  std::vector<std::pair<std::string, double>> out;
  for (const auto& s : corpus.submissions()) {
    if (s.university_id != university_id || s.area_id != area_id) continue;
    if (s.pub_id.empty() || seen.count(s.pub_id)) continue;
    seen.insert(s.pub_id);
    auto q = quality.area_publication_quality(corpus.publication(s.pub_id),
                                              area_id);
    if (q) out.emplace_back(s.pub_id, *q);
  }
  return out;
}

// Area qualities of the full university portfolio (publications without a
// computable quality are skipped).
inline std::vector<double> portfolio_qualities(const Corpus& corpus,
                                               const QualityIndex& quality,
                                               const std::string& university_id,
                                               const std::string& area_id) {
  std::vector<double> out;
  for (const auto& pub_id : corpus.portfolio(university_id, area_id)) {
    auto q = quality.area_publication_quality(corpus.publication(pub_id),
                                              area_id);
    if (q) out.push_back(*q);
  }
  return out;
}

}  // namespace detail

// Share of submitted indexed articles whose quality falls strictly below the
// median quality of the university's full area portfolio.
inline double below_median_share(const Corpus& corpus,
                                 const QualityIndex& quality,
                                 const std::string& university_id,
                                 const std::string& area_id) {
  corpus.require_university(university_id);
  corpus.require_area(area_id);
  const auto portfolio =
      detail::portfolio_qualities(corpus, quality, university_id, area_id);
  if (portfolio.empty())
    throw Error("below_median_share: empty portfolio for " + university_id +
                " in area " + area_id);
  const auto submitted =
      detail::submitted_qualities(corpus, quality, university_id, area_id);
  if (submitted.empty())
    throw Error("below_median_share: no indexed submissions for " +
                university_id + " in area " + area_id);
  const double med = detail::median(portfolio);
  long below = 0;
  for (const auto& [pub_id, q] : submitted)
    if (q < med) ++below;
  return static_cast<double>(below) / static_cast<double>(submitted.size());
}

struct DisplacedSelection {
  long count = 0;
  double share = 0.0;
};

// With T submitted indexed articles, the selection threshold is the T-th
// largest quality in the portfolio. Submitted articles strictly below it
// were displaced: better portfolio articles were left out. Articles tied
// with the threshold count as justified.
inline DisplacedSelection displaced_selection(const Corpus& corpus,
                                              const QualityIndex& quality,
                                              const std::string& university_id,
                                              const std::string& area_id) {
  corpus.require_university(university_id);
  corpus.require_area(area_id);
  const auto submitted =
      detail::submitted_qualities(corpus, quality, university_id, area_id);
  if (submitted.empty())
    throw Error("displaced_selection: no indexed submissions for " +
                university_id + " in area " + area_id);
  auto portfolio =
      detail::portfolio_qualities(corpus, quality, university_id, area_id);
  const std::size_t t = submitted.size();
  if (portfolio.size() < t)
    throw Error("displaced_selection: portfolio smaller than the selection");
  std::sort(portfolio.begin(), portfolio.end(), std::greater<double>());
  const double threshold = portfolio[t - 1];
  DisplacedSelection result;
  for (const auto& [pub_id, q] : submitted)
    if (q < threshold) ++result.count;
  result.share = static_cast<double>(result.count) / static_cast<double>(t);
  return result;
}

// One university-area row of the selection-effectiveness audit. Displaced
// fields are empty when the portfolio is smaller than the selection.
struct SelectionAudit {
  std::string university_id;
  std::string area_id;
  long selected_n = 0;
  long portfolio_n = 0;
  double below_median = 0.0;
  std::optional<long> displaced_count;
  std::optional<double> displaced_share;
};

// Audit of one pair; empty when the pair has no indexed submissions or no
// portfolio with computable qualities.
inline std::optional<SelectionAudit> selection_audit(
    const Corpus& corpus, const QualityIndex& quality,
    const std::string& university_id, const std::string& area_id) {
  const auto submitted =
      detail::submitted_qualities(corpus, quality, university_id, area_id);
  const auto portfolio =
      detail::portfolio_qualities(corpus, quality, university_id, area_id);
  if (submitted.empty() || portfolio.empty()) return std::nullopt;
  SelectionAudit audit;
  audit.university_id = university_id;
  audit.area_id = area_id;
  audit.selected_n = static_cast<long>(submitted.size());
  audit.portfolio_n = static_cast<long>(portfolio.size());
  audit.below_median =
      below_median_share(corpus, quality, university_id, area_id);
  if (portfolio.size() >= submitted.size()) {
    const auto displaced =
        displaced_selection(corpus, quality, university_id, area_id);
    audit.displaced_count = displaced.count;
    audit.displaced_share = displaced.share;
  }
  return audit;
}

// Across-university summary of audit shares within one area.
struct ShareSummary {
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  double variation_coefficient = 0.0;  // population std / mean; 0 if mean is 0
};

inline ShareSummary summarize_shares(const std::vector<double>& shares) {
  if (shares.empty()) throw Error("summarize_shares: empty input");
  ShareSummary summary;
  for (double s : shares) {
    summary.mean += s;
    summary.max = std::max(summary.max, s);
  }
  summary.mean /= shares.size();
  summary.median = detail::median(shares);
  if (summary.mean != 0.0)
    summary.variation_coefficient =
        detail::population_std(shares) / summary.mean;
  return summary;
}

}  // namespace resev
