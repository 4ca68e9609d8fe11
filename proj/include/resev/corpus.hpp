#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resev/csv.hpp"
#include "resev/error.hpp"

namespace resev {

// Evaluation period, inclusive on both ends. A corpus with no dated content
// and no explicit period gets (0, 0).
struct Period {
  int start_year = 0;
  int end_year = 0;
  bool operator==(const Period&) const = default;
};

// One scientific disciplinary sector and the area it belongs to.
struct SectorInfo {
  std::string code;
  std::string area_id;
  std::string area_name;
  bool operator==(const SectorInfo&) const = default;
};

struct Journal {
  std::string id;
  std::set<std::string> sector_codes;   // non-empty
  std::map<int, double> if_by_year;     // impact factor per year, all >= 0
  bool operator==(const Journal&) const = default;
};

struct Researcher {
  std::string id;
  std::string university_id;
  std::string sector_code;
  bool operator==(const Researcher&) const = default;
};

struct Publication {
  std::string id;
  std::string journal_id;
  int year = 0;
  // Count of distinct organizations on the byline; may exceed the number of
  // universities visible in the corpus (non-academic co-affiliations).
  int n_institutions = 1;
  std::vector<std::string> author_ids;  // sorted, unique, non-empty
  bool operator==(const Publication&) const = default;
};

struct StaffRecord {
  std::string university_id;
  std::string sector_code;
  double headcount = 0.0;  // period average, fractional allowed
  bool operator==(const StaffRecord&) const = default;
};

enum class Rating { Excellent, Good, Acceptable, Limited };

inline char rating_letter(Rating r) {
  switch (r) {
    case Rating::Excellent: return 'E';
    case Rating::Good: return 'G';
    case Rating::Acceptable: return 'A';
    case Rating::Limited: return 'L';
  }
  return '?';
}

inline std::optional<Rating> parse_rating(const std::string& s) {
  if (s == "E") return Rating::Excellent;
  if (s == "G") return Rating::Good;
  if (s == "A") return Rating::Acceptable;
  if (s == "L") return Rating::Limited;
  return std::nullopt;
}

// One output submitted to the peer-review exercise. pub_id is empty for
// outputs that are not indexed articles (books, patents, ...).
struct SubmissionRecord {
  std::string university_id;
  std::string area_id;
  Rating rating = Rating::Limited;
  std::string pub_id;
  bool operator==(const SubmissionRecord&) const = default;
  auto key() const {
    return std::tuple(university_id, area_id, static_cast<int>(rating),
                      pub_id);
  }
};

class CorpusBuilder;

// Immutable container of everything one evaluation period needs: taxonomy,
// journals, researchers, publications, staff and submissions, fully
// cross-linked. Safe for concurrent reads.
class Corpus {
 public:
  Period period() const { return period_; }
  const std::map<std::string, SectorInfo>& sectors() const { return sectors_; }
  const std::map<std::string, Journal>& journals() const { return journals_; }
  const std::map<std::string, Researcher>& researchers() const {
    return researchers_;
  }
  const std::map<std::string, Publication>& publications() const {
    return publications_;
  }
  const std::vector<StaffRecord>& staff() const { return staff_; }
  const std::vector<SubmissionRecord>& submissions() const {
    return submissions_;
  }
  const std::set<std::string>& universities() const { return universities_; }
  const std::set<std::string>& area_ids() const { return area_ids_; }

  bool has_university(const std::string& id) const {
    return universities_.count(id) > 0;
  }
  bool has_area(const std::string& id) const { return area_ids_.count(id) > 0; }

  const SectorInfo& sector(const std::string& code) const {
    auto it = sectors_.find(code);
    if (it == sectors_.end()) throw Error("unknown sector: " + code);
    return it->second;
  }

  const Journal& journal(const std::string& id) const {
    auto it = journals_.find(id);
    if (it == journals_.end()) throw Error("unknown journal: " + id);
    return it->second;
  }

  const Publication& publication(const std::string& id) const {
    auto it = publications_.find(id);
    if (it == publications_.end()) throw Error("unknown publication: " + id);
    return it->second;
  }

  const Researcher& researcher(const std::string& id) const {
    auto it = researchers_.find(id);
    if (it == researchers_.end()) throw Error("unknown researcher: " + id);
    return it->second;
  }

  // Sector codes belonging to an area, sorted.
  std::vector<std::string> sectors_in_area(const std::string& area_id) const {
    require_area(area_id);
    std::vector<std::string> out;
    for (const auto& [code, info] : sectors_)
      if (info.area_id == area_id) out.push_back(code);
    return out;
  }

  // Period-average staff headcount of a university in one sector; 0 when no
  // record exists.
  double staff_count(const std::string& university_id,
                     const std::string& sector_code) const {
    require_university(university_id);
    auto it = staff_index_.find(std::pair(university_id, sector_code));
    return it == staff_index_.end() ? 0.0 : it->second;
  }

  // Total staff of a university across all sectors of an area.
  double area_staff(const std::string& university_id,
                    const std::string& area_id) const {
    require_university(university_id);
    require_area(area_id);
    double total = 0.0;
    for (const auto& [key, headcount] : staff_index_) {
      if (key.first != university_id) continue;
      auto it = sectors_.find(key.second);
      if (it != sectors_.end() && it->second.area_id == area_id)
        total += headcount;
    }
    return total;
  }

  // Deduplicated ids of publications with at least one author who is a
  // researcher of the university in any sector of the area. Sorted.
  std::vector<std::string> portfolio(const std::string& university_id,
                                     const std::string& area_id) const {
    require_university(university_id);
    require_area(area_id);
    std::vector<std::string> out;
    for (const auto& [pub_id, pub] : publications_) {
      for (const auto& author : pub.author_ids) {
        const auto rit = researchers_.find(author);
        if (rit == researchers_.end()) continue;
        const Researcher& r = rit->second;
        if (r.university_id != university_id) continue;
        const auto sit = sectors_.find(r.sector_code);
        if (sit != sectors_.end() && sit->second.area_id == area_id) {
          out.push_back(pub_id);
          break;
        }
      }
    }
    return out;  // map iteration order keeps this sorted and unique
  }

  // Researcher ids of a university in one sector, sorted.
  std::vector<std::string> researchers_of(const std::string& university_id,
                                          const std::string& sector_code) const {
    std::vector<std::string> out;
    for (const auto& [id, r] : researchers_)
      if (r.university_id == university_id && r.sector_code == sector_code)
        out.push_back(id);
    return out;
  }

  void require_university(const std::string& id) const {
    if (!has_university(id)) throw Error("unknown university: " + id);
  }
  void require_area(const std::string& id) const {
    if (!has_area(id)) throw Error("unknown area: " + id);
  }

  bool operator==(const Corpus&) const = default;

 private:
  friend class CorpusBuilder;

  Period period_;
  std::map<std::string, SectorInfo> sectors_;
  std::map<std::string, Journal> journals_;
  std::map<std::string, Researcher> researchers_;
  std::map<std::string, Publication> publications_;
  std::vector<StaffRecord> staff_;            // sorted by (university, sector)
  std::vector<SubmissionRecord> submissions_; // sorted by key()
  std::set<std::string> universities_;
  std::set<std::string> area_ids_;
  std::map<std::pair<std::string, std::string>, double> staff_index_;
};

// Accumulates rows, validates eagerly where possible, and produces an
// immutable Corpus. Both the CSV loader and the synthetic generator go
// through here, so every corpus in the system satisfies the same invariants.
class CorpusBuilder {
 public:
  // Explicit period; when unset it is inferred from publication years, then
  // journal impact-factor years, and finally defaults to (0, 0).
  void set_period(Period p) {
    if (p.start_year > p.end_year) throw Error("empty period");
    period_ = p;
  }

  void add_sector(const std::string& code, const std::string& area_id,
                  const std::string& area_name) {
    if (code.empty()) throw Error("empty sector code");
    if (area_id.empty()) throw Error("empty area id");
    auto [it, inserted] =
        sectors_.emplace(code, SectorInfo{code, area_id, area_name});
    if (!inserted) throw Error("duplicate sector: " + code);
    area_ids_.insert(area_id);
  }

  void add_journal_year(const std::string& id,
                        const std::vector<std::string>& sector_codes, int year,
                        double impact_factor) {
    if (id.empty()) throw Error("empty journal id");
    if (sector_codes.empty())
      throw Error("journal " + id + " has no sector codes");
    if (impact_factor < 0)
      throw Error("journal " + id + " has negative impact factor");
    Journal& journal = journals_[id];
    journal.id = id;
    for (const auto& code : sector_codes) {
      if (!sectors_.count(code))
        throw Error("journal " + id + " references unknown sector: " + code);
      journal.sector_codes.insert(code);
    }
    auto [it, inserted] = journal.if_by_year.emplace(year, impact_factor);
    if (!inserted)
      throw Error("duplicate journal-year: " + id + ", " +
                  std::to_string(year));
  }

  void add_researcher(const std::string& id, const std::string& university_id,
                      const std::string& sector_code) {
    if (id.empty()) throw Error("empty researcher id");
    if (university_id.empty()) throw Error("empty university id");
    if (!sectors_.count(sector_code))
      throw Error("researcher " + id +
                  " references unknown sector: " + sector_code);
    auto [it, inserted] =
        researchers_.emplace(id, Researcher{id, university_id, sector_code});
    if (!inserted) throw Error("duplicate researcher: " + id);
  }

  void add_publication(const std::string& id, const std::string& journal_id,
                       int year, int n_institutions,
                       std::vector<std::string> author_ids) {
    if (id.empty()) throw Error("empty publication id");
    if (!journals_.count(journal_id))
      throw Error("publication " + id +
                  " references unknown journal: " + journal_id);
    if (n_institutions < 1)
      throw Error("publication " + id + " has n_institutions < 1");
    std::sort(author_ids.begin(), author_ids.end());
    author_ids.erase(std::unique(author_ids.begin(), author_ids.end()),
                     author_ids.end());
    if (author_ids.empty())
      throw Error("publication " + id + " has no authors");
    std::set<std::string> author_universities;
    for (const auto& author : author_ids) {
      auto it = researchers_.find(author);
      if (it == researchers_.end())
        throw Error("publication " + id +
                    " references unknown researcher: " + author);
      author_universities.insert(it->second.university_id);
    }
    if (static_cast<std::size_t>(n_institutions) < author_universities.size())
      throw Error("publication " + id + " lists " +
                  std::to_string(n_institutions) +
                  " institutions but its authors span " +
                  std::to_string(author_universities.size()) +
                  " universities");
    Publication pub{id, journal_id, year, n_institutions,
                    std::move(author_ids)};
    auto [it, inserted] = publications_.emplace(id, std::move(pub));
    if (!inserted) throw Error("duplicate publication: " + id);
  }

  void add_staff(const std::string& university_id,
                 const std::string& sector_code, double headcount) {
    if (university_id.empty()) throw Error("empty university id");
    if (!sectors_.count(sector_code))
      throw Error("staff record references unknown sector: " + sector_code);
    if (headcount < 0)
      throw Error("negative headcount for " + university_id + ", " +
                  sector_code);
    auto [it, inserted] =
        staff_.emplace(std::pair(university_id, sector_code), headcount);
    if (!inserted)
      throw Error("duplicate staff record: " + university_id + ", " +
                  sector_code);
  }

  void add_submission(const std::string& university_id,
                      const std::string& area_id, Rating rating,
                      const std::string& pub_id) {
    if (university_id.empty()) throw Error("empty university id");
    if (!area_ids_.count(area_id))
      throw Error("submission references unknown area: " + area_id);
    if (!pub_id.empty() && !publications_.count(pub_id))
      throw Error("submission references unknown publication: " + pub_id);
    submissions_.push_back({university_id, area_id, rating, pub_id});
  }

  Corpus build() {
    Corpus corpus;
    corpus.period_ = period_ ? *period_ : infer_period();
    if (period_) {
      for (const auto& [id, pub] : publications_)
        if (pub.year < period_->start_year || pub.year > period_->end_year)
          throw Error("publication " + id + " year " +
                      std::to_string(pub.year) + " outside period " +
                      std::to_string(period_->start_year) + ":" +
                      std::to_string(period_->end_year));
    }
    corpus.sectors_ = sectors_;
    corpus.journals_ = journals_;
    corpus.researchers_ = researchers_;
    corpus.publications_ = publications_;
    corpus.area_ids_ = area_ids_;
    for (const auto& [key, headcount] : staff_)
      corpus.staff_.push_back({key.first, key.second, headcount});
    corpus.staff_index_ = staff_;
    corpus.submissions_ = submissions_;
    std::sort(corpus.submissions_.begin(), corpus.submissions_.end(),
              [](const SubmissionRecord& a, const SubmissionRecord& b) {
                return a.key() < b.key();
              });
    for (const auto& [id, r] : researchers_)
      corpus.universities_.insert(r.university_id);
    for (const auto& [key, headcount] : staff_)
      corpus.universities_.insert(key.first);
    for (const auto& s : submissions_)
      corpus.universities_.insert(s.university_id);
    return corpus;
  }

 private:
  Period infer_period() const {
    bool seen = false;
    Period p{0, 0};
    auto widen = [&](int year) {
      if (!seen) {
        p = {year, year};
        seen = true;
      } else {
        p.start_year = std::min(p.start_year, year);
        p.end_year = std::max(p.end_year, year);
      }
    };
    for (const auto& [id, pub] : publications_) widen(pub.year);
    if (!seen)
      for (const auto& [id, journal] : journals_)
        for (const auto& [year, factor] : journal.if_by_year) widen(year);
    return p;
  }

  std::optional<Period> period_;
  std::map<std::string, SectorInfo> sectors_;
  std::map<std::string, Journal> journals_;
  std::map<std::string, Researcher> researchers_;
  std::map<std::string, Publication> publications_;
  std::map<std::pair<std::string, std::string>, double> staff_;
  std::vector<SubmissionRecord> submissions_;
  std::set<std::string> area_ids_;
};

namespace detail {

// Shortest representation that parses back to the identical double.
inline std::string double_field(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

inline std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += '|';
    out += items[i];
  }
  return out;
}

inline void check_columns(const csv::Table& t,
                          const std::vector<std::string>& expected) {
  for (const auto& name : expected) t.column(name);
  if (t.header.size() != expected.size())
    throw LoadError(t.path, 1, 0,
                    "expected exactly " + std::to_string(expected.size()) +
                        " columns");
}

}  // namespace detail

inline const std::vector<std::string> kCorpusFiles = {
    "sectors.csv",      "journals.csv", "researchers.csv",
    "publications.csv", "staff.csv",    "submissions.csv"};

// Loads the six corpus CSV files from a directory and returns a validated
// corpus. Row-level problems are reported as file:line:column.
inline Corpus load_corpus(const std::filesystem::path& dir,
                          std::optional<Period> period = std::nullopt) {
  for (const auto& name : kCorpusFiles)
    if (!std::filesystem::exists(dir / name))
      throw LoadError((dir / name).string(), 0, 0, "missing input file");

  CorpusBuilder builder;
  if (period) builder.set_period(*period);

  auto guarded = [](const csv::Table& t, std::size_t row, auto&& fn) {
    try {
      fn();
    } catch (const LoadError&) {
      throw;
    } catch (const Error& e) {
      throw LoadError(t.path, t.row_lines[row], 0, e.what());
    }
  };

  {
    csv::Table t = csv::read_file(dir / "sectors.csv");
    detail::check_columns(t, {"sector_code", "area_id", "area_name"});
    std::size_t code = t.column("sector_code"), area = t.column("area_id"),
                name = t.column("area_name");
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      guarded(t, i, [&] {
        builder.add_sector(t.rows[i][code], t.rows[i][area], t.rows[i][name]);
      });
  }
  {
    csv::Table t = csv::read_file(dir / "journals.csv");
    detail::check_columns(t,
                          {"journal_id", "sector_codes", "year", "impact_factor"});
    std::size_t id = t.column("journal_id"), codes = t.column("sector_codes"),
                year = t.column("year"), factor = t.column("impact_factor");
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      guarded(t, i, [&] {
        builder.add_journal_year(t.rows[i][id], csv::split_list(t.rows[i][codes]),
                                 static_cast<int>(csv::parse_long(t, i, year)),
                                 csv::parse_double(t, i, factor));
      });
  }
  {
    csv::Table t = csv::read_file(dir / "researchers.csv");
    detail::check_columns(t, {"researcher_id", "university_id", "sector_code"});
    std::size_t id = t.column("researcher_id"),
                univ = t.column("university_id"), code = t.column("sector_code");
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      guarded(t, i, [&] {
        builder.add_researcher(t.rows[i][id], t.rows[i][univ], t.rows[i][code]);
      });
  }
  {
    csv::Table t = csv::read_file(dir / "publications.csv");
    detail::check_columns(
        t, {"pub_id", "journal_id", "year", "n_institutions", "author_ids"});
    std::size_t id = t.column("pub_id"), journal = t.column("journal_id"),
                year = t.column("year"), insts = t.column("n_institutions"),
                authors = t.column("author_ids");
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      guarded(t, i, [&] {
        builder.add_publication(t.rows[i][id], t.rows[i][journal],
                                static_cast<int>(csv::parse_long(t, i, year)),
                                static_cast<int>(csv::parse_long(t, i, insts)),
                                csv::split_list(t.rows[i][authors]));
      });
  }
  {
    csv::Table t = csv::read_file(dir / "staff.csv");
    detail::check_columns(t, {"university_id", "sector_code", "headcount"});
    std::size_t univ = t.column("university_id"), code = t.column("sector_code"),
                count = t.column("headcount");
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      guarded(t, i, [&] {
        builder.add_staff(t.rows[i][univ], t.rows[i][code],
                          csv::parse_double(t, i, count));
      });
  }
  {
    csv::Table t = csv::read_file(dir / "submissions.csv");
    detail::check_columns(t, {"university_id", "area_id", "rating", "pub_id"});
    std::size_t univ = t.column("university_id"), area = t.column("area_id"),
                rating = t.column("rating"), pub = t.column("pub_id");
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      guarded(t, i, [&] {
        auto parsed = parse_rating(t.rows[i][rating]);
        if (!parsed)
          throw LoadError(t.path, t.row_lines[i], rating + 1,
                          "rating must be one of E, G, A, L: '" +
                              t.rows[i][rating] + "'");
        builder.add_submission(t.rows[i][univ], t.rows[i][area], *parsed,
                               t.rows[i][pub]);
      });
  }

  try {
    return builder.build();
  } catch (const Error& e) {
    throw LoadError(dir.string(), 0, 0, e.what());
  }
}

// Canonical CSV serialization of a corpus, keyed by file name. Sorted rows,
// shortest-round-trip numbers: identical corpora yield identical bytes.
inline std::map<std::string, std::string> corpus_csv_bytes(const Corpus& corpus) {
  std::map<std::string, std::string> files;
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [code, info] : corpus.sectors())
      rows.push_back({info.code, info.area_id, info.area_name});
    files["sectors.csv"] =
        csv::render({"sector_code", "area_id", "area_name"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [id, journal] : corpus.journals()) {
      std::vector<std::string> codes(journal.sector_codes.begin(),
                                     journal.sector_codes.end());
      for (const auto& [year, factor] : journal.if_by_year)
        rows.push_back({id, detail::join_list(codes), std::to_string(year),
                        detail::double_field(factor)});
    }
    files["journals.csv"] = csv::render(
        {"journal_id", "sector_codes", "year", "impact_factor"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [id, r] : corpus.researchers())
      rows.push_back({id, r.university_id, r.sector_code});
    files["researchers.csv"] =
        csv::render({"researcher_id", "university_id", "sector_code"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [id, pub] : corpus.publications())
      rows.push_back({id, pub.journal_id, std::to_string(pub.year),
                      std::to_string(pub.n_institutions),
                      detail::join_list(pub.author_ids)});
    files["publications.csv"] = csv::render(
        {"pub_id", "journal_id", "year", "n_institutions", "author_ids"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& record : corpus.staff())
      rows.push_back({record.university_id, record.sector_code,
                      detail::double_field(record.headcount)});
    files["staff.csv"] =
        csv::render({"university_id", "sector_code", "headcount"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : corpus.submissions())
      rows.push_back({s.university_id, s.area_id,
                      std::string(1, rating_letter(s.rating)), s.pub_id});
    files["submissions.csv"] =
        csv::render({"university_id", "area_id", "rating", "pub_id"}, rows);
  }
  return files;
}

inline void save_corpus(const Corpus& corpus,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, bytes] : corpus_csv_bytes(corpus)) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    out << bytes;
  }
}

}  // namespace resev
