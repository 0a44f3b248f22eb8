#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "inspsim/stats.hpp"
#include "inspsim/validation.hpp"

namespace inspsim {

/// FNV-1a 64-bit hash of a byte string (manifest checksums).
std::uint64_t fnv1a_64(const std::string& bytes);

/// FNV-1a checksum of a file's contents. Throws std::runtime_error when the
/// file cannot be read.
std::uint64_t checksum_file(const std::string& path);

// CSV writers: UTF-8, \n line endings, header row, fixed column order.
// Doubles are printed with %.17g so identical runs are byte-identical.
void write_trials_csv(const std::vector<TrialRecord>& records, const std::string& path);
void write_series_csv(const std::vector<TrialRecord>& records, const std::string& path);
void write_summary_csv(const FactorialData& data, const std::vector<CellSummary>& cells,
                       const std::string& path);
void write_anova_csv(const AnovaTable& table, const std::string& path);
void write_levene_csv(const LeveneResult& levene, const std::string& path);
void write_contrasts_csv(const std::vector<Contrast>& contrasts, const std::string& path);
void write_qq_csv(const std::vector<std::pair<double, double>>& points,
                  const std::string& path);
void write_eval_csv(const std::vector<EvalResult>& results, const std::string& path);

/// Reads a trials.csv back into records (metrics only; the series live in
/// series.csv and are not restored).
std::vector<TrialRecord> read_trials_csv(const std::string& path);

/// Writes `<dir>/manifest.json` with the config hash, the seed, and an FNV-1a
/// checksum per listed file (paths relative to dir). Returns the manifest path.
std::string write_manifest(const std::string& dir, const std::string& config_json,
                           std::uint64_t seed, const std::vector<std::string>& files);

}  // namespace inspsim
