#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "resev/area_aggregate.hpp"
#include "resev/compare.hpp"
#include "resev/csv.hpp"
#include "resev/indicators.hpp"
#include "resev/vtr_score.hpp"

namespace resev {

enum class ReportFormat { Csv, Json };

inline std::optional<ReportFormat> parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  return std::nullopt;
}

// Numbers in reports carry 6 significant digits.
inline std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 6);
  return std::string(buf, ptr);
}

inline double round_significant(double value) {
  const std::string s = format_number(value);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

// One report cell; Empty renders as an empty CSV field / JSON null.
struct Cell {
  std::variant<std::monostate, std::string, long, double, bool> value;

  Cell() = default;
  Cell(std::string v) : value(std::move(v)) {}
  Cell(const char* v) : value(std::string(v)) {}
  Cell(long v) : value(v) {}
  Cell(int v) : value(static_cast<long>(v)) {}
  Cell(double v) : value(v) {}
  Cell(bool v) : value(v) {}
  template <typename T>
  Cell(const std::optional<T>& v) {
    if (v) value = Cell(*v).value;
  }
};

struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string render(const Report& report, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(report.rows.size());
    for (const auto& row : report.rows) {
      std::vector<std::string> fields;
      fields.reserve(row.size());
      for (const auto& cell : row) {
        if (std::holds_alternative<std::monostate>(cell.value))
          fields.emplace_back();
        else if (const auto* s = std::get_if<std::string>(&cell.value))
          fields.push_back(*s);
        else if (const auto* i = std::get_if<long>(&cell.value))
          fields.push_back(std::to_string(*i));
        else if (const auto* d = std::get_if<double>(&cell.value))
          fields.push_back(format_number(*d));
        else
          fields.push_back(std::get<bool>(cell.value) ? "true" : "false");
      }
      rows.push_back(std::move(fields));
    }
    return csv::render(report.columns, rows);
  }
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& cell = row[i];
      if (std::holds_alternative<std::monostate>(cell.value))
        obj[report.columns[i]] = nullptr;
      else if (const auto* s = std::get_if<std::string>(&cell.value))
        obj[report.columns[i]] = *s;
      else if (const auto* v = std::get_if<long>(&cell.value))
        obj[report.columns[i]] = *v;
      else if (const auto* d = std::get_if<double>(&cell.value))
        obj[report.columns[i]] = round_significant(*d);
      else
        obj[report.columns[i]] = std::get<bool>(cell.value);
    }
    out.push_back(std::move(obj));
  }
  return out.dump(2) + "\n";
}

inline Report indicators_report(const std::vector<SectorIndicators>& rows) {
  Report report;
  report.columns = {"university_id", "sector_code", "O",  "FO", "SS",
                    "FSS",           "P",           "FP", "QP", "FQP"};
  for (const auto& ind : rows)
    report.rows.push_back({ind.university_id, ind.sector_code, ind.output,
                           ind.fractional_output, ind.strength,
                           ind.fractional_strength, ind.productivity,
                           ind.fractional_productivity,
                           ind.qualitative_productivity,
                           ind.fractional_qualitative_productivity});
  return report;
}

// Scores with per-area competition ranks. Universities under the
// minimum-submissions filter keep their score row but get empty rank and
// percentile cells.
inline Report vtr_report(const std::vector<VtrScore>& scores,
                         long min_outputs) {
  std::map<std::string, std::vector<ScoredEntity>> by_area;
  for (const auto& s : scores)
    by_area[s.area_id].push_back({s.university_id, s.r, s.total});
  std::map<std::pair<std::string, std::string>, RankRow> ranked;
  for (const auto& [area_id, entities] : by_area) {
    bool any = false;
    for (const auto& e : entities) any = any || e.n_outputs >= min_outputs;
    if (!any) continue;
    RankTable table = make_rank_table(area_id, entities, min_outputs);
    for (const auto& row : table.rows) ranked[{area_id, row.entity_id}] = row;
  }
  Report report;
  report.columns = {"university_id", "area_id", "E", "G",    "A",
                    "L",             "T",       "R", "rank", "percentile"};
  for (const auto& s : scores) {
    std::vector<Cell> row{s.university_id, s.area_id, s.excellent, s.good,
                          s.acceptable,    s.limited, s.total,     s.r};
    auto it = ranked.find({s.area_id, s.university_id});
    if (it != ranked.end()) {
      row.emplace_back(static_cast<long>(it->second.rank));
      row.emplace_back(it->second.percentile);
    } else {
      row.emplace_back();
      row.emplace_back();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline Report area_productivity_report(
    const std::vector<AreaProductivity>& rows) {
  Report report;
  report.columns = {"university_id", "area_id", "kind", "value", "total_staff"};
  for (const auto& row : rows)
    report.rows.push_back({row.university_id, row.area_id,
                           std::string(to_string(row.kind)), row.value,
                           row.total_staff});
  return report;
}

struct CorrelationRow {
  std::string area_id;
  std::string indicator;  // "QI" or a productivity kind
  CorrelationResult result;
};

inline Report correlations_report(const std::vector<CorrelationRow>& rows) {
  Report report;
  report.columns = {"area_id", "indicator", "n", "r", "critical", "significant"};
  for (const auto& row : rows)
    report.rows.push_back({row.area_id, row.indicator, row.result.n,
                           row.result.r, row.result.critical_value,
                           row.result.significant});
  return report;
}

inline Report audit_report(const std::vector<SelectionAudit>& rows) {
  Report report;
  report.columns = {"university_id",      "area_id",
                    "selected_n",         "portfolio_n",
                    "below_median_share", "displaced_count",
                    "displaced_share"};
  for (const auto& audit : rows)
    report.rows.push_back({audit.university_id, audit.area_id,
                           audit.selected_n, audit.portfolio_n,
                           audit.below_median, audit.displaced_count,
                           audit.displaced_share});
  return report;
}

struct VariationRow {
  std::string area_id;
  ProductivityKind kind = ProductivityKind::FQP;
  RankVariationStats stats;
};

inline Report variations_report(const std::vector<VariationRow>& rows) {
  Report report;
  report.columns = {"area_id",  "indicator",  "changed",
                    "total",    "max_abs",    "mean_abs",
                    "median_abs", "std_abs",  "top_k_overlap"};
  for (const auto& row : rows)
    report.rows.push_back({row.area_id, std::string(to_string(row.kind)),
                           row.stats.changed, row.stats.total,
                           row.stats.max_abs, row.stats.mean_abs,
                           row.stats.median_abs, row.stats.std_abs,
                           row.stats.top_k_overlap});
  return report;
}

// 64-bit FNV-1a, used for the stable configuration hash in run manifests.
inline std::uint64_t fnv1a(std::string_view bytes,
                           std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t hash = seed;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

// Provenance record written alongside every command's reports.
struct RunManifest {
  std::string tool_version;
  std::string command;
  std::vector<std::pair<std::string, std::string>> flags;  // sorted by name
  std::string input;
  std::string config_hash;
  std::vector<std::string> outputs;
  std::optional<std::string> timestamp;  // only with --stamp
};

inline std::string render_manifest(const RunManifest& manifest) {
  nlohmann::ordered_json out;
  out["tool_version"] = manifest.tool_version;
  out["command"] = manifest.command;
  nlohmann::ordered_json flags = nlohmann::ordered_json::object();
  for (const auto& [name, value] : manifest.flags) flags[name] = value;
  out["flags"] = flags;
  out["input"] = manifest.input;
  out["config_hash"] = manifest.config_hash;
  out["outputs"] = manifest.outputs;
  if (manifest.timestamp) out["timestamp"] = *manifest.timestamp;
  return out.dump(2) + "\n";
}

}  // namespace resev
