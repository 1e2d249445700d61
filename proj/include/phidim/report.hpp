#pragma once

#include <string>
#include <vector>

#include "phidim/constructions.hpp"
#include "phidim/estimators.hpp"
#include "phidim/level_stats.hpp"
#include "phidim/oracle.hpp"

namespace phidim {

// JSON documents, pretty-printed with a trailing newline. Long diagnostic
// vectors (estimate partials) are thinned to at most 256 evenly spaced
// entries; the stride is recorded next to them.
std::string to_json(const ConstructionReport& rep);
std::string to_json(const DimEstimate& est, const ScanWindow& w);
std::string to_json(const EmpiricalEstimate& est);

// CSV tables: comma separator, '.' decimal mark, one header row, LF line
// endings. Doubles are shortest round-trip representations.
std::string level_stats_csv(const LevelStats& stats);
std::string intervals_csv(const FiniteApproximation& approx);
std::string beta_surface_csv(const std::vector<BetaRow>& rows);
std::string scatter_csv(const std::vector<ScatterRow>& rows);
std::string violations_csv(const std::vector<ViolationRow>& rows);

/// Writes text to path by creating a sibling temp file and renaming it over
/// the target, so readers never observe a partial file. Throws ConfigError
/// when the directory is missing or not writable.
void write_text_file(const std::string& path, const std::string& text);

} // namespace phidim
