#pragma once

// The acceptance suite shared by `kh verify` and the acceptance test binary.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kh/diagram.hpp"

namespace kh {

// pinned limits, in seconds
inline constexpr double kTrefoilSeconds = 1.0;
inline constexpr double kCochainSeconds = 120.0;
inline constexpr double kTorusSeconds = 60.0;
inline constexpr double kScanSeconds = 900.0;

inline constexpr int kRandomClosures = 50;
inline constexpr int kRandomClosureMaxCrossings = 12;
inline constexpr int kRandomMatrices = 100;
inline constexpr int kRandomMatrixMaxSide = 10;
inline constexpr int kScanMaxN = 12;
inline constexpr int kTorusMaxN = 10;
inline constexpr std::uint64_t kAcceptanceSeed = 20240611;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // deterministic; no timings
  double seconds = 0;
};

struct AcceptanceOptions {
  std::string fixtures_dir;
  int scan_max_n = kScanMaxN;
  int budget = 16;
};

struct NamedDiagram {
  std::string name;
  LinkDiagram diagram;
};

/// Every *.pd file in `dir`, sorted by file name.
std::vector<NamedDiagram> load_fixtures(const std::string& dir);

/// Seeded random braid closures on 2 to 4 strands with 1 to max_crossings letters.
std::vector<NamedDiagram> random_braid_closures(std::uint64_t seed, int count, int max_crossings);

/// Runs criteria 1 to 12 in order; `on_result` fires as each one finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "criterion 3 dual_oracle_jones: PASS (...)"
std::string result_line(const CriterionResult& r);

}  // namespace kh
