#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lerw {

struct PowerFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  bool pass = false;
};

// Ordinary least squares of log y on log x; pass iff |slope - expect| <= tol.
PowerFit fit_power_law(const std::vector<std::pair<double, double>>& points, double expect, double tol);

// Least squares of y on log x (used for the logarithmic growth of G(0,0)).
PowerFit fit_log_law(const std::vector<std::pair<double, double>>& points, double expect, double tol);

// Slopes of log y on log x between consecutive points.
std::vector<double> local_slopes(const std::vector<std::pair<double, double>>& points);

struct StudyRow {
  int n = 0;
  std::string observable;
  double value = 0.0;
};

struct StudyCheck {
  std::string name;
  double value = 0.0;
  std::string expectation;
  bool pass = false;
};

struct StudyResult {
  std::string study;
  std::string observable;  // the fitted observable
  std::vector<StudyRow> rows;
  PowerFit fit;
  double expect = 0.0;
  double tolerance = 0.0;
  std::vector<double> windowed_slopes;
  std::vector<StudyCheck> checks;  // additional pass/fail conditions of the study
  bool pass = false;
};

struct StudyConfig {
  std::vector<int> sizes;
  std::uint64_t samples = 100000;  // Monte Carlo pre-check of green34 at n <= 8
  std::uint64_t seed = 1;
  unsigned workers = 0;
  bool mc_check = true;
};

// Default sizes per study.
std::vector<int> default_sizes(const std::string& study);

// Studies: loops, spinor, beurling, green34, sin3, qbar.
StudyResult run_study(const std::string& name, const StudyConfig& config);

void write_csv(std::ostream& out, const StudyResult& result, bool header = true);
std::string summary_json(const StudyResult& result);

}  // namespace lerw
