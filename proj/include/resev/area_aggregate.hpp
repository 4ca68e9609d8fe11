#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resev/corpus.hpp"
#include "resev/error.hpp"
#include "resev/indicators.hpp"

namespace resev {

enum class ProductivityKind { P, FP, QP, FQP };

inline const char* to_string(ProductivityKind kind) {
  switch (kind) {
    case ProductivityKind::P: return "P";
    case ProductivityKind::FP: return "FP";
    case ProductivityKind::QP: return "QP";
    case ProductivityKind::FQP: return "FQP";
  }
  return "?";
}

inline std::optional<ProductivityKind> parse_productivity_kind(
    const std::string& s) {
  if (s == "P") return ProductivityKind::P;
  if (s == "FP") return ProductivityKind::FP;
  if (s == "QP") return ProductivityKind::QP;
  if (s == "FQP") return ProductivityKind::FQP;
  return std::nullopt;
}

inline std::optional<double> indicator_value(const SectorIndicators& ind,
                                             ProductivityKind kind) {
  switch (kind) {
    case ProductivityKind::P: return ind.productivity;
    case ProductivityKind::FP: return ind.fractional_productivity;
    case ProductivityKind::QP: return ind.qualitative_productivity;
    case ProductivityKind::FQP: return ind.fractional_qualitative_productivity;
  }
  return std::nullopt;
}

// One sector's contribution to an area aggregate: the university's
// productivity value, the all-university sector mean it is normalized to,
// and the university's staff in the sector.
struct SectorTerm {
  double value = 0.0;
  double mean = 0.0;
  double staff = 0.0;
};

// Per-sector normalized and staff-weighted contributions:
//
//   (value_k / mean_k) * staff_k / sum_k staff_k
//
// A sector whose mean is 0 contributes a normalized value of 0 while its
// staff stays in the denominator.
inline std::vector<double> normalized_weighted_terms(
    std::span<const SectorTerm> terms) {
  double total_staff = 0.0;
  for (const auto& t : terms) total_staff += t.staff;
  if (total_staff <= 0.0)
    throw Error("area aggregation requires positive total staff");
  std::vector<double> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    const double normalized = t.mean > 0.0 ? t.value / t.mean : 0.0;
    out.push_back(normalized * t.staff / total_staff);
  }
  return out;
}

// Staff-weighted mean of the normalized sector values.
inline double weighted_normalized_mean(std::span<const SectorTerm> terms) {
  double sum = 0.0;
  for (double term : normalized_weighted_terms(terms)) sum += term;
  return sum;
}

// Unweighted mean of the sector productivity over all universities with
// staff in the sector; universities with staff and zero output enter as 0.
inline double sector_mean(const Corpus& corpus, const QualityIndex& quality,
                          const std::string& sector_code,
                          ProductivityKind kind) {
  corpus.sector(sector_code);
  double sum = 0.0;
  long count = 0;
  for (const auto& university_id : corpus.universities()) {
    if (corpus.staff_count(university_id, sector_code) <= 0.0) continue;
    auto value =
        indicator_value(sector_indicators(corpus, quality, university_id,
                                          sector_code),
                        kind);
    sum += value.value_or(0.0);
    ++count;
  }
  if (count == 0)
    throw Error("no university has staff in sector " + sector_code);
  return sum / count;
}

inline double sector_mean(const Corpus& corpus,
                          const std::string& sector_code,
                          ProductivityKind kind) {
  return sector_mean(corpus, QualityIndex(corpus), sector_code, kind);
}

// Area-level productivity rating of one university.
struct AreaProductivity {
  std::string university_id;
  std::string area_id;
  ProductivityKind kind = ProductivityKind::FQP;
  double value = 0.0;
  double total_staff = 0.0;
};

// Re-aggregates sector productivity to the area: each staffed sector's value
// is normalized to the all-university sector mean, then staff-weighted.
// Sectors where the university has no staff contribute neither numerator nor
// denominator. Empty when the university has no staff anywhere in the area
// (it is then excluded from area rankings).
inline std::optional<AreaProductivity> aggregate_area(
    const Corpus& corpus, const QualityIndex& quality,
    const std::string& university_id, const std::string& area_id,
    ProductivityKind kind) {
  corpus.require_university(university_id);
  std::vector<SectorTerm> terms;
  for (const auto& sector_code : corpus.sectors_in_area(area_id)) {
    const double staff = corpus.staff_count(university_id, sector_code);
    if (staff <= 0.0) continue;
    auto value = indicator_value(
        sector_indicators(corpus, quality, university_id, sector_code), kind);
    terms.push_back(
        {value.value_or(0.0),
         sector_mean(corpus, quality, sector_code, kind), staff});
  }
  if (terms.empty()) return std::nullopt;
  AreaProductivity result;
  result.university_id = university_id;
  result.area_id = area_id;
  result.kind = kind;
  result.value = weighted_normalized_mean(terms);
  for (const auto& t : terms) result.total_staff += t.staff;
  return result;
}

inline std::optional<AreaProductivity> aggregate_area(
    const Corpus& corpus, const std::string& university_id,
    const std::string& area_id, ProductivityKind kind) {
  return aggregate_area(corpus, QualityIndex(corpus), university_id, area_id,
                        kind);
}

// Table-backed variants: same results, no corpus rescans.

inline double sector_mean(const IndicatorTable& table,
                          const std::string& sector_code,
                          ProductivityKind kind) {
  const Corpus& corpus = table.corpus();
  corpus.sector(sector_code);
  double sum = 0.0;
  long count = 0;
  for (const auto& university_id : corpus.universities()) {
    if (corpus.staff_count(university_id, sector_code) <= 0.0) continue;
    const SectorIndicators* ind = table.find(university_id, sector_code);
    if (ind) sum += indicator_value(*ind, kind).value_or(0.0);
    ++count;
  }
  if (count == 0)
    throw Error("no university has staff in sector " + sector_code);
  return sum / count;
}

inline std::optional<AreaProductivity> aggregate_area(
    const IndicatorTable& table, const std::string& university_id,
    const std::string& area_id, ProductivityKind kind) {
  const Corpus& corpus = table.corpus();
  corpus.require_university(university_id);
  std::vector<SectorTerm> terms;
  for (const auto& sector_code : corpus.sectors_in_area(area_id)) {
    const double staff = corpus.staff_count(university_id, sector_code);
    if (staff <= 0.0) continue;
    const SectorIndicators* ind = table.find(university_id, sector_code);
    const double value =
        ind ? indicator_value(*ind, kind).value_or(0.0) : 0.0;
    terms.push_back({value, sector_mean(table, sector_code, kind), staff});
  }
  if (terms.empty()) return std::nullopt;
  AreaProductivity result;
  result.university_id = university_id;
  result.area_id = area_id;
  result.kind = kind;
  result.value = weighted_normalized_mean(terms);
  for (const auto& t : terms) result.total_staff += t.staff;
  return result;
}

// All defined (university, area) aggregates for one indicator, sorted by
// university then area.
inline std::vector<AreaProductivity> all_area_productivity(
    const IndicatorTable& table, ProductivityKind kind) {
  const Corpus& corpus = table.corpus();
  std::vector<AreaProductivity> out;
  for (const auto& university_id : corpus.universities())
    for (const auto& area_id : corpus.area_ids())
      if (auto row = aggregate_area(table, university_id, area_id, kind))
        out.push_back(*row);
  return out;
}

}  // namespace resev
