#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "resev/corpus.hpp"
#include "resev/error.hpp"
#include "resev/percentile.hpp"

namespace resev {

enum class SelectionStrategy { TopByQuality, Random, BelowMedianBiased };

inline const char* to_string(SelectionStrategy s) {
  switch (s) {
    case SelectionStrategy::TopByQuality: return "top_by_quality";
    case SelectionStrategy::Random: return "random";
    case SelectionStrategy::BelowMedianBiased: return "below_median_biased";
  }
  return "?";
}

inline std::optional<SelectionStrategy> parse_selection_strategy(
    const std::string& s) {
  if (s == "top_by_quality") return SelectionStrategy::TopByQuality;
  if (s == "random") return SelectionStrategy::Random;
  if (s == "below_median_biased") return SelectionStrategy::BelowMedianBiased;
  return std::nullopt;
}

// Shape of a generated corpus. Impact factors are drawn from a lognormal
// (right-skewed, positive) with a per-sector scale, so sectors differ in
// their impact-factor distributions. submission_fraction models the cap on
// how much of a portfolio an institution may submit.
struct SynthConfig {
  std::uint64_t seed = 1;
  int n_universities = 4;
  int n_areas = 2;
  int n_sectors_per_area = 3;
  int n_journals_per_sector = 5;
  int n_researchers = 40;
  double publication_rate = 1.0;  // mean publications per researcher per year
  double if_log_mean = 0.0;       // lognormal shape of impact factors
  double if_log_sigma = 0.75;
  SelectionStrategy selection_strategy = SelectionStrategy::Random;
  double submission_fraction = 0.5;  // in (0, 1]
  int start_year = 2001;
  int end_year = 2003;
};

namespace detail {

// Deterministic draws on top of mt19937_64 (whose output is fixed by the
// standard); the mappings are hand-rolled so results do not depend on the
// standard library's distribution implementations.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::size_t index(std::size_t n) {  // [0, n)
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  long poisson(double lambda) {
    const double limit = std::exp(-lambda);
    long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= 1.0 - uniform();
    } while (p > limit);
    return k - 1;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::string padded(const char* prefix, int value, int width) {
  std::string digits = std::to_string(value);
  std::string out = prefix;
  for (int i = static_cast<int>(digits.size()); i < width; ++i) out += '0';
  return out + digits;
}

}  // namespace detail

inline void validate(const SynthConfig& config) {
  if (config.n_universities < 1 || config.n_areas < 1 ||
      config.n_sectors_per_area < 1 || config.n_journals_per_sector < 1 ||
      config.n_researchers < 1)
    throw Error("synth config: all counts must be >= 1");
  if (config.publication_rate <= 0.0)
    throw Error("synth config: publication_rate must be positive");
  if (config.if_log_sigma < 0.0)
    throw Error("synth config: if_log_sigma must be >= 0");
  if (config.submission_fraction <= 0.0 || config.submission_fraction > 1.0)
    throw Error("synth config: submission_fraction outside (0, 1]");
  if (config.start_year > config.end_year)
    throw Error("synth config: empty period");
}

// Generates a valid corpus. The same seed and config always produce the
// same corpus, byte for byte once serialized. Researchers publish in
// journals of their own sector; co-authors share the sector but may sit at
// different universities. Submissions are drawn per selection strategy and
// rated by quality quartile within the university-area portfolio (top
// quartile excellent, then good, acceptable, limited).
inline Corpus generate(const SynthConfig& config) {
  validate(config);
  detail::SynthRng rng(config.seed);
  CorpusBuilder builder;
  builder.set_period({config.start_year, config.end_year});

  struct SectorEntry {
    std::string code;
    std::string area_id;
  };
  std::vector<SectorEntry> sectors;
  std::vector<std::string> universities;
  for (int u = 1; u <= config.n_universities; ++u)
    universities.push_back(detail::padded("u", u, 2));

  for (int a = 1; a <= config.n_areas; ++a) {
    const std::string area_id = detail::padded("a", a, 2);
    for (int s = 1; s <= config.n_sectors_per_area; ++s) {
      const std::string code = area_id + detail::padded("s", s, 2);
      builder.add_sector(code, area_id, "area " + area_id);
      sectors.push_back({code, area_id});
    }
  }

  // Journals: one sector each; every journal carries an impact factor for
  // every period year.
  std::map<std::string, std::vector<std::string>> journals_of_sector;
  std::map<std::pair<std::string, int>, double> impact;
  std::map<std::string, std::string> sector_of_journal;
  for (const auto& sector : sectors) {
    const double sector_scale = std::exp(0.35 * rng.normal());
    for (int j = 1; j <= config.n_journals_per_sector; ++j) {
      const std::string id =
          "j_" + sector.code + "_" + detail::padded("", j, 2);
      const double base =
          std::exp(config.if_log_mean + config.if_log_sigma * rng.normal()) *
          sector_scale;
      std::vector<double> year_factors;
      for (int year = config.start_year; year <= config.end_year; ++year) {
        const double factor = base * std::exp(0.1 * rng.normal());
        builder.add_journal_year(id, {sector.code}, year, factor);
        impact[{id, year}] = factor;
      }
      journals_of_sector[sector.code].push_back(id);
      sector_of_journal[id] = sector.code;
    }
  }

  struct ResearcherEntry {
    std::string id;
    std::string university_id;
    std::string sector_code;
  };
  std::vector<ResearcherEntry> researchers;
  std::map<std::string, std::vector<std::size_t>> researchers_of_sector;
  std::map<std::pair<std::string, std::string>, long> headcounts;
  for (int r = 1; r <= config.n_researchers; ++r) {
    ResearcherEntry entry;
    entry.id = detail::padded("r", r, 4);
    entry.university_id = universities[rng.index(universities.size())];
    entry.sector_code = sectors[rng.index(sectors.size())].code;
    builder.add_researcher(entry.id, entry.university_id, entry.sector_code);
    researchers_of_sector[entry.sector_code].push_back(researchers.size());
    headcounts[{entry.university_id, entry.sector_code}] += 1;
    researchers.push_back(entry);
  }
  for (const auto& [key, count] : headcounts)
    builder.add_staff(key.first, key.second, static_cast<double>(count));

  struct PubEntry {
    std::string id;
    std::string journal_id;
    int year;
    std::string sector_code;
    std::set<std::string> author_universities;
  };
  std::vector<PubEntry> pubs;
  int pub_serial = 0;
  for (const auto& researcher : researchers) {
    const auto& journal_pool = journals_of_sector[researcher.sector_code];
    const auto& peer_pool = researchers_of_sector[researcher.sector_code];
    for (int year = config.start_year; year <= config.end_year; ++year) {
      const long count = rng.poisson(config.publication_rate);
      for (long c = 0; c < count; ++c) {
        PubEntry pub;
        pub.id = detail::padded("p", ++pub_serial, 6);
        pub.journal_id = journal_pool[rng.index(journal_pool.size())];
        pub.year = year;
        pub.sector_code = researcher.sector_code;
        std::vector<std::string> authors{researcher.id};
        pub.author_universities.insert(researcher.university_id);
        if (rng.uniform() < 0.35 && peer_pool.size() > 1) {
          const int extra_authors = rng.uniform() < 0.3 ? 2 : 1;
          for (int e = 0; e < extra_authors; ++e) {
            const auto& peer = researchers[peer_pool[rng.index(peer_pool.size())]];
            authors.push_back(peer.id);
            pub.author_universities.insert(peer.university_id);
          }
        }
        // Non-academic byline organizations inflate the institution count.
        const double roll = rng.uniform();
        const int extra_orgs = roll < 0.6 ? 0 : (roll < 0.9 ? 1 : 2);
        const int n_institutions =
            static_cast<int>(pub.author_universities.size()) + extra_orgs;
        builder.add_publication(pub.id, pub.journal_id, year, n_institutions,
                                authors);
        pubs.push_back(std::move(pub));
      }
    }
  }

  // Portfolio pools per (university, area), with the sector-relative quality
  // of each publication.
  std::map<std::string, std::string> area_of_sector;
  for (const auto& sector : sectors) area_of_sector[sector.code] = sector.area_id;
  std::map<std::pair<std::string, int>, std::vector<double>> distributions;
  for (const auto& [key, factor] : impact)
    distributions[{sector_of_journal.at(key.first), key.second}].push_back(
        factor);

  struct PoolItem {
    std::string pub_id;
    double quality;
  };
  std::map<std::pair<std::string, std::string>, std::vector<PoolItem>> pools;
  for (const auto& pub : pubs) {
    const double q = percentile_rank(
        distributions.at({pub.sector_code, pub.year}),
        impact.at({pub.journal_id, pub.year}));
    const std::string& area_id = area_of_sector.at(pub.sector_code);
    for (const auto& university_id : pub.author_universities)
      pools[{university_id, area_id}].push_back({pub.id, q});
  }

  for (auto& [key, pool] : pools) {
    std::sort(pool.begin(), pool.end(),
              [](const PoolItem& a, const PoolItem& b) {
                return a.pub_id < b.pub_id;
              });
    std::vector<double> pool_qualities;
    pool_qualities.reserve(pool.size());
    for (const auto& item : pool) pool_qualities.push_back(item.quality);

    const auto pool_size = static_cast<long>(pool.size());
    const long want = std::lround(config.submission_fraction * pool_size);
    const long take = std::clamp(want, 1L, pool_size);

    std::vector<std::size_t> chosen;
    switch (config.selection_strategy) {
      case SelectionStrategy::TopByQuality: {
        std::vector<std::size_t> order(pool.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&pool](std::size_t a, std::size_t b) {
                    if (pool[a].quality != pool[b].quality)
                      return pool[a].quality > pool[b].quality;
                    return pool[a].pub_id < pool[b].pub_id;
                  });
        chosen.assign(order.begin(), order.begin() + take);
        break;
      }
      case SelectionStrategy::Random: {
        std::vector<std::size_t> order(pool.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t i = order.size(); i > 1; --i)
          std::swap(order[i - 1], order[rng.index(i)]);
        chosen.assign(order.begin(), order.begin() + take);
        break;
      }
      case SelectionStrategy::BelowMedianBiased: {
        // Weighted sampling without replacement, below-median items 4:1.
        std::vector<double> sorted = pool_qualities;
        std::sort(sorted.begin(), sorted.end());
        const double med =
            sorted.size() % 2 == 1
                ? sorted[sorted.size() / 2]
                : 0.5 * (sorted[sorted.size() / 2 - 1] +
                         sorted[sorted.size() / 2]);
        std::vector<std::size_t> remaining(pool.size());
        for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
        for (long picked = 0; picked < take; ++picked) {
          double total = 0.0;
          for (std::size_t idx : remaining)
            total += pool[idx].quality < med ? 4.0 : 1.0;
          double roll = rng.uniform() * total;
          std::size_t pick = remaining.size() - 1;
          for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
            const double w = pool[remaining[pos]].quality < med ? 4.0 : 1.0;
            if (roll < w) {
              pick = pos;
              break;
            }
            roll -= w;
          }
          chosen.push_back(remaining[pick]);
          remaining.erase(remaining.begin() + static_cast<long>(pick));
        }
        break;
      }
    }

    std::sort(chosen.begin(), chosen.end());
    for (std::size_t idx : chosen) {
      const double pr = percentile_rank(pool_qualities, pool[idx].quality);
      Rating rating = Rating::Limited;
      if (pr >= 0.75)
        rating = Rating::Excellent;
      else if (pr >= 0.5)
        rating = Rating::Good;
      else if (pr >= 0.25)
        rating = Rating::Acceptable;
      builder.add_submission(key.first, key.second, rating, pool[idx].pub_id);
    }
  }

  return builder.build();
}

}  // namespace resev
