#include "lerw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "lerw/harmonic.hpp"
#include "lerw/identity.hpp"
#include "lerw/sampling.hpp"
#include "lerw/slit.hpp"
#include "lerw/spinor.hpp"
#include "lerw/square_map.hpp"

namespace lerw {

namespace {

PowerFit least_squares(const std::vector<std::pair<double, double>>& xy, double expect, double tol) {
  const double n = static_cast<double>(xy.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::InvalidArgument, "abscissae must not all coincide");
  PowerFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (const auto& [x, y] : xy) {
    const double r = y - fit.intercept - fit.slope * x;
    ssr += r * r;
  }
  fit.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
  fit.pass = std::abs(fit.slope - expect) <= tol;
  return fit;
}

void check_points(const std::vector<std::pair<double, double>>& points, bool positive_y) {
  if (points.size() < 3) throw Error(ErrorCode::InsufficientPoints, "a fit needs at least 3 points");
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || (positive_y && !(y > 0.0))) throw Error(ErrorCode::NonPositiveValue, "logarithm of a non-positive value");
  }
}

std::vector<std::pair<double, double>> series_of(const StudyResult& r, const std::string& observable) {
  std::vector<std::pair<double, double>> out;
  for (const StudyRow& row : r.rows) {
    if (row.observable == observable) out.emplace_back(row.n, row.value);
  }
  return out;
}

double value_at(const StudyResult& r, const std::string& observable, int n) {
  for (const StudyRow& row : r.rows) {
    if (row.observable == observable && row.n == n) return row.value;
  }
  throw Error(ErrorCode::InvalidArgument, "missing row " + observable);
}

StudyResult start(const std::string& study, const std::string& observable) {
  StudyResult r;
  r.study = study;
  r.observable = observable;
  return r;
}

void finish_power_study(StudyResult& r, double expect, double tol) {
  const auto pts = series_of(r, r.observable);
  r.expect = expect;
  r.tolerance = tol;
  r.fit = fit_power_law(pts, expect, tol);
  r.windowed_slopes = local_slopes(pts);
  r.pass = r.fit.pass && std::all_of(r.checks.begin(), r.checks.end(), [](const StudyCheck& c) { return c.pass; });
}

StudyResult study_loops(const StudyConfig& cfg) {
  StudyResult r = start("loops", "exp2m");
  for (const int n : cfg.sizes) {
    const LatticeDomain A = square_domain(n);
    r.rows.push_back({n, "exp2m", odd_loop_mass(A, build_branch_cut(A)).exp2m});
  }
  finish_power_study(r, 0.25, 0.02);
  return r;
}

StudyResult study_spinor(const StudyConfig& cfg) {
  StudyResult r = start("spinor", "abs_lambda0_right_mid");
  for (const int n : cfg.sizes) {
    const LatticeDomain A = square_domain(n);
    const SpinorField field(A, build_branch_cut(A));
    const BoundaryEdge right = named_square_edge(n, "right-mid");
    const BoundaryEdge left = named_square_edge(n, "left-mid");
    const double l0r = field({0, 0}, right);
    const double l1r = field({1, 0}, right);
    const double l0l = field({0, 0}, left);
    const double l1l = field({1, 0}, left);
    r.rows.push_back({n, "abs_lambda0_right_mid", std::abs(l0r)});
    r.rows.push_back({n, "abs_lambda1_right_mid", std::abs(l1r)});
    r.rows.push_back({n, "abs_lambda0_left_mid", std::abs(l0l)});
    r.rows.push_back({n, "abs_lambda1_left_mid", std::abs(l1l)});
    r.rows.push_back({n, "ratio_left_mid", std::abs(l1l / l0l)});
  }
  const int last = cfg.sizes.back();
  const double ratio = value_at(r, "ratio_left_mid", last);
  r.checks.push_back({"ratio_left_mid@" + std::to_string(last), ratio, "<= 0.1", ratio <= 0.1});
  finish_power_study(r, -0.5, 0.03);
  return r;
}

StudyResult study_beurling(const StudyConfig& cfg) {
  StudyResult r = start("beurling", "escape_total");
  for (const int n : cfg.sizes) r.rows.push_back({n, "escape_total", slit_escape_profile(n).total});
  finish_power_study(r, -0.5, 0.03);
  return r;
}

StudyResult study_green34(const StudyConfig& cfg) {
  StudyResult r = start("green34", "p_opposite");
  const double target = std::pow(2.0, -1.5);
  for (const int n : cfg.sizes) {
    const LatticeDomain A = square_domain(n);
    const IdentityEvaluator eval(A);
    const BoundaryEdge a = named_square_edge(n, "right-mid");
    const BoundaryEdge b180 = named_square_edge(n, "left-mid");
    const BoundaryEdge b90 = named_square_edge(n, "top-mid");
    const double p180 = eval.probability(a, b180);
    const double p90 = eval.probability(a, b90);
    r.rows.push_back({n, "p_opposite", p180});
    r.rows.push_back({n, "p_quarter", p90});
    r.rows.push_back({n, "ratio_quarter_opposite", p90 / p180});
    if (cfg.mc_check && n <= 8) {
      const McEstimate mc = mc_edge_probability(A, a, b180, cfg.samples, cfg.seed, cfg.workers);
      r.rows.push_back({n, "mc_mean", mc.mean});
      r.rows.push_back({n, "mc_stderr", mc.std_error});
      const double z = std::abs(mc.mean - p180) / mc.std_error;
      r.checks.push_back({"mc_agreement@" + std::to_string(n), z, "<= 3 stderr", z <= 3.0});
    }
  }
  const int last = cfg.sizes.back();
  const double ratio = value_at(r, "ratio_quarter_opposite", last);
  const double dev = std::abs(ratio / target - 1.0);
  r.checks.push_back({"ratio_quarter_opposite@" + std::to_string(last), ratio, "within 10% of 2^-1.5", dev <= 0.10});
  finish_power_study(r, -0.75, 0.05);
  return r;
}

StudyResult study_sin3(const StudyConfig& cfg) {
  StudyResult r = start("sin3", "spread");
  for (const int n : cfg.sizes) {
    const LatticeDomain A = square_domain(n);
    const IdentityEvaluator eval(A);
    const BoundaryEdge a = named_square_edge(n, "right-mid");
    const double theta_a = square_theta(n, a);
    const SquareMap map(n);
    BoundaryEdge rot = a;
    for (const char* name : {"ratio_rot90", "ratio_rot180", "ratio_rot270"}) {
      rot = rotate_about_w0(rot);
      const double s = std::sin(square_theta(n, rot) - theta_a);
      r.rows.push_back({n, name, eval.probability(a, rot) / std::abs(s * s * s)});
    }
    double lo = 1e300, hi = 0.0, sum = 0.0;
    int count = 0;
    for (const BoundaryEdge& b : boundary_edges(A)) {
      const double s = std::sin(std::fmod(map.boundary_angle(b.midpoint_x(), b.midpoint_y()) / 2.0, std::numbers::pi) -
                                theta_a);
      if (std::abs(s) < 0.5) continue;
      const double v = eval.probability(a, b) / std::abs(s * s * s);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
      ++count;
    }
    r.rows.push_back({n, "spread", (hi - lo) / (sum / count)});
  }
  const auto spread = series_of(r, "spread");
  r.checks.push_back({"spread_decreases", spread.back().second, "< spread at smallest n",
                      spread.back().second < spread.front().second});
  r.fit = fit_power_law(spread, 0.0, 0.0);
  r.fit.pass = true;
  r.windowed_slopes = local_slopes(spread);
  r.pass = r.checks.back().pass;
  return r;
}

StudyResult study_qbar(const StudyConfig& cfg) {
  StudyResult r = start("qbar", "g00");
  std::map<int, double> q;
  for (const int n : cfg.sizes) {
    const LatticeDomain A = square_domain(n);
    q[n] = qbar(A, build_branch_cut(A));
    r.rows.push_back({n, "qbar", q[n]});
    r.rows.push_back({n, "g00", green(A, nullptr, {0, 0}, {0, 0})});
  }
  std::vector<double> diffs;
  for (const int n : cfg.sizes) {
    if (!q.count(2 * n)) continue;
    diffs.push_back(std::abs(q[2 * n] - q[n]));
    r.rows.push_back({n, "qbar_doubling_diff", diffs.back()});
  }
  bool monotone = diffs.size() >= 2;
  for (std::size_t i = 1; i < diffs.size(); ++i) monotone = monotone && diffs[i] < diffs[i - 1];
  r.checks.push_back({"qbar_doubling_diff_decreasing", diffs.empty() ? 0.0 : diffs.back(), "strictly decreasing", monotone});

  const double expect = 2.0 / std::numbers::pi;
  const auto pts = series_of(r, "g00");
  r.expect = expect;
  r.tolerance = 0.02 * expect;
  r.fit = fit_log_law(pts, expect, r.tolerance);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    r.windowed_slopes.push_back((pts[i].second - pts[i - 1].second) / std::log(pts[i].first / pts[i - 1].first));
  }
  r.pass = r.fit.pass && monotone;
  return r;
}

}  // namespace

PowerFit fit_power_law(const std::vector<std::pair<double, double>>& points, double expect, double tol) {
  check_points(points, true);
  std::vector<std::pair<double, double>> logs;
  for (const auto& [x, y] : points) logs.emplace_back(std::log(x), std::log(y));
  return least_squares(logs, expect, tol);
}

PowerFit fit_log_law(const std::vector<std::pair<double, double>>& points, double expect, double tol) {
  check_points(points, false);
  std::vector<std::pair<double, double>> logs;
  for (const auto& [x, y] : points) logs.emplace_back(std::log(x), y);
  return least_squares(logs, expect, tol);
}

std::vector<double> local_slopes(const std::vector<std::pair<double, double>>& points) {
  std::vector<double> out;
  for (std::size_t i = 1; i < points.size(); ++i) {
    out.push_back(std::log(points[i].second / points[i - 1].second) / std::log(points[i].first / points[i - 1].first));
  }
  return out;
}

std::vector<int> default_sizes(const std::string& study) {
  if (study == "beurling") return {8, 12, 16, 24, 32, 48, 64, 96, 128};
  if (study == "green34") return {8, 12, 16, 24, 32, 48};
  if (study == "sin3") return {8, 16, 32};
  if (study == "loops" || study == "spinor" || study == "qbar") return {8, 12, 16, 24, 32, 48, 64};
  throw Error(ErrorCode::UnknownStudy, "unknown study '" + study + "'");
}

StudyResult run_study(const std::string& name, const StudyConfig& config) {
  StudyConfig cfg = config;
  if (cfg.sizes.empty()) cfg.sizes = default_sizes(name);
  if (!std::is_sorted(cfg.sizes.begin(), cfg.sizes.end()) ||
      std::adjacent_find(cfg.sizes.begin(), cfg.sizes.end()) != cfg.sizes.end()) {
    throw Error(ErrorCode::InvalidArgument, "sizes must be strictly ascending");
  }
  if (name == "loops") return study_loops(cfg);
  if (name == "spinor") return study_spinor(cfg);
  if (name == "beurling") return study_beurling(cfg);
  if (name == "green34") return study_green34(cfg);
  if (name == "sin3") return study_sin3(cfg);
  if (name == "qbar") return study_qbar(cfg);
  throw Error(ErrorCode::UnknownStudy, "unknown study '" + name + "'");
}

void write_csv(std::ostream& out, const StudyResult& result, bool header) {
  if (header) out << "study,n,observable,value\n";
  char buf[64];
  for (const StudyRow& row : result.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", row.value);
    out << result.study << ',' << row.n << ',' << row.observable << ',' << buf << '\n';
  }
}

std::string summary_json(const StudyResult& result) {
  nlohmann::json j;
  j["study"] = result.study;
  j["observable"] = result.observable;
  j["slope"] = result.fit.slope;
  j["intercept"] = result.fit.intercept;
  j["stderr"] = result.fit.slope_stderr;
  j["expect"] = result.expect;
  j["tolerance"] = result.tolerance;
  j["windowed_slopes"] = result.windowed_slopes;
  j["checks"] = nlohmann::json::array();
  for (const StudyCheck& c : result.checks) {
    j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"expect", c.expectation}, {"pass", c.pass}});
  }
  j["pass"] = result.pass;
  return j.dump(2);
}

}  // namespace lerw
