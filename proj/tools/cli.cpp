#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lerw/domain_io.hpp"
#include "lerw/exact_suite.hpp"
#include "lerw/experiments.hpp"
#include "lerw/identity.hpp"
#include "lerw/rectangle.hpp"
#include "lerw/sampling.hpp"
#include "lerw/slit.hpp"
#include "lerw/spinor.hpp"
#include "lerw/square_map.hpp"

namespace lerw::cli {

using nlohmann::json;

namespace {

void add_output(CLI::App* sub, CliConfig& c) { sub->add_option("--output,-o", c.output, "report path (default stdout)"); }

void add_format(CLI::App* sub, CliConfig& c) {
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_mc(CLI::App* sub, CliConfig& c) {
  sub->add_option("--samples", c.samples, "Monte Carlo samples");
  sub->add_option("--seed", c.seed, "Philox seed");
  sub->add_option("--workers", c.workers, "worker threads (0: LERW_WORKERS or all cores)");
}

std::string join_sizes(const std::vector<int>& sizes) {
  std::string s;
  for (const int n : sizes) s += (s.empty() ? "" : ",") + std::to_string(n);
  return s;
}

json edge_json(const BoundaryEdge& e) {
  return {{"inner", {e.inner.x, e.inner.y}}, {"outer", {e.outer.x, e.outer.y}}};
}

std::string vertices_text(const std::vector<Point>& v) {
  std::string s;
  for (const Point p : v) s += (s.empty() ? "" : ";") + std::to_string(p.x) + ":" + std::to_string(p.y);
  return s;
}

json corpus_json(const CorpusResult& r) {
  return {{"check", r.check},
          {"max_box", r.max_box},
          {"domains", r.domains},
          {"instances", r.instances},
          {"failures", r.failures},
          {"max_relative_error", r.max_relative_error},
          {"max_absolute_error", r.max_absolute_error},
          {"tolerance", {{"relative", r.tolerance.relative}, {"absolute", r.tolerance.absolute}}},
          {"seconds", r.seconds},
          {"pass", r.pass}};
}

void write_text(const CliConfig& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw UsageError{"cannot write " + c.output};
  file << text;
}

struct Inputs {
  LatticeDomain A;
  BoundaryEdge a, b;
};

template <class F>
auto as_usage(F f) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError{e.what()};
  }
}

int run_verify(const CliConfig& c, std::ostream& out) {
  if (c.max_box < 1 || c.max_box > 5) throw UsageError{"--max-box must lie in 1..5"};
  std::ofstream records;
  if (!c.output.empty()) {
    records.open(c.output);
    if (!records) throw UsageError{"cannot write " + c.output};
    records << "check,max_box,vertices,instances,max_relative_error,max_absolute_error,pass\n";
  }
  auto sink_for = [&](const std::string& check, int box) -> RecordSink {
    if (!records.is_open()) return {};
    return [&records, check, box](const DomainRecord& r) {
      char buf[96];
      std::snprintf(buf, sizeof buf, ",%lld,%.6g,%.6g,%d\n", r.instances, r.max_relative_error, r.max_absolute_error,
                    r.pass ? 1 : 0);
      records << check << ',' << box << ',' << vertices_text(r.vertices) << buf;
    };
  };
  const int small_box = std::min(c.max_box, 4);
  json report;
  report["checks"] = json::array();
  bool pass = true;
  for (const CorpusResult& r : {verify_identity_corpus(c.max_box, c.workers, sink_for("identity", c.max_box)),
                                verify_fomin_corpus(small_box, c.workers, sink_for("fomin", small_box)),
                                verify_partition_corpus(small_box, c.workers, sink_for("partition", small_box))}) {
    report["checks"].push_back(corpus_json(r));
    pass = pass && r.pass;
  }
  const int n = 8;
  const int m = 4;
  json lemma = json::array();
  const auto edges = boundary_edges(square_domain(n));
  for (std::size_t i = 0; i < edges.size(); i += 4) {
    const Lemma51Report r = lemma51_check(n, m, edges[i]);
    lemma.push_back({{"a", edge_json(r.a)}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"max_slit_term", r.max_slit_term},
                     {"pass", r.pass}});
    pass = pass && r.pass;
  }
  report["lemma51"] = {{"n", n}, {"m", m}, {"edges", lemma}};
  report["pass"] = pass;
  out << report.dump(2) << '\n';
  return pass ? 0 : 1;
}

int run_mc(const CliConfig& c, std::ostream& out) {
  const Inputs in = as_usage([&] {
    LatticeDomain A = standard_domain(c.domain);
    BoundaryEdge a = resolve_edge(A, c.domain, c.a);
    BoundaryEdge b = resolve_edge(A, c.domain, c.b);
    return Inputs{A, a, b};
  });
  if (c.samples < 2) throw UsageError{"--samples must be at least 2"};
  const McEstimate mc = mc_edge_probability(in.A, in.a, in.b, c.samples, c.seed, c.workers);
  json j = {{"domain", c.domain}, {"a", edge_json(in.a)}, {"b", edge_json(in.b)}, {"samples", mc.samples},
            {"hits", mc.hits},     {"mean", mc.mean},       {"stderr", mc.std_error}, {"seed", mc.seed}};
  bool pass = true;
  try {
    const double exact = identity_rhs(in.A, in.a, in.b);
    const double z = mc.std_error > 0.0 ? std::abs(mc.mean - exact) / mc.std_error : (mc.mean == exact ? 0.0 : 1e300);
    pass = z <= 3.0;
    j["exact"] = exact;
    j["z_score"] = z;
  } catch (const Error&) {
    // no determinant value when {0, 1, -i, 1-i} is not inside the domain
  }
  j["pass"] = pass;
  write_text(c, out, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

int run_study_command(const CliConfig& c, std::ostream& out) {
  StudyConfig sc;
  sc.sizes = c.sizes;
  sc.samples = c.samples;
  sc.seed = c.seed;
  sc.workers = c.workers;
  const StudyResult r = as_usage([&] {
    if (sc.sizes.empty()) sc.sizes = default_sizes(c.study);
    return run_study(c.study, sc);
  });
  const std::string summary = summary_json(r) + "\n";
  if (c.format == "csv") {
    std::ostringstream csv;
    write_csv(csv, r);
    write_text(c, out, csv.str());
    if (!c.output.empty()) out << summary;
  } else {
    write_text(c, out, summary);
  }
  return r.pass ? 0 : 1;
}

int run_rect(const CliConfig& c, std::ostream& out) {
  const RectangleComparison r = as_usage([&] { return compare_rectangle_kernels(c.n, c.m); });
  const bool pass = r.method_gap <= 1e-10;
  const json j = {{"n", r.n}, {"m", r.m}, {"method_gap", r.method_gap}, {"error_constant", r.error_constant},
                  {"pass", pass}};
  write_text(c, out, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

int run_slit(const CliConfig& c, std::ostream& out) {
  const EscapeProfile p = as_usage([&] { return slit_escape_profile(c.n); });
  const auto normalized = p.normalized();
  if (c.format == "csv") {
    std::ostringstream csv;
    csv << "x,y,value,normalized\n";
    csv.precision(17);
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
      csv << p.edges[i].midpoint_x() << ',' << p.edges[i].midpoint_y() << ',' << p.values[i] << ',' << normalized[i]
          << '\n';
    }
    write_text(c, out, csv.str());
    return 0;
  }
  json edges = json::array();
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    edges.push_back({{"edge", edge_json(p.edges[i])}, {"value", p.values[i]}, {"normalized", normalized[i]}});
  }
  write_text(c, out, json{{"n", p.n}, {"escape_total", p.total}, {"edges", edges}}.dump(2) + "\n");
  return 0;
}

int run_spinor(const CliConfig& c, std::ostream& out) {
  struct SpinorInputs {
    LatticeDomain A;
    BoundaryEdge a;
    Point z;
  };
  const SpinorInputs in = as_usage([&] {
    LatticeDomain A = standard_domain(c.domain);
    BoundaryEdge a = resolve_edge(A, c.domain, c.a);
    const Point z = parse_point(c.z);
    if (!A.contains(z)) throw Error(ErrorCode::OutOfDomain, "--z outside the domain");
    return SpinorInputs{A, a, z};
  });
  const SpinorField field(in.A, build_branch_cut(in.A));
  json j = {{"domain", c.domain},
            {"a", edge_json(in.a)},
            {"z", {in.z.x, in.z.y}},
            {"signed_exit", field.signed_exit(in.z, in.a)},
            {"interior_poisson", field.interior_poisson(in.z, in.a)},
            {"lambda", field(in.z, in.a)}};
  if (c.domain.rfind("square:", 0) == 0) {
    const int n = std::stoi(c.domain.substr(7));
    const SquareMap map(n);
    const double theta = square_theta(n, in.a);
    bool on_alpha = false;
    j["theta_a"] = theta;
    j["lambda_disk"] = lambda_disk(map.to_disk({double(in.z.x), double(in.z.y)}), theta, &on_alpha);
    j["on_alpha"] = on_alpha;
  }
  write_text(c, out, j.dump(2) + "\n");
  return 0;
}

int run_domain_check(const CliConfig& c, std::ostream& out) {
  json j;
  bool valid = true;
  try {
    const LatticeDomain A = read_domain_file(c.file);
    const Box& box = A.bounding_box();
    j = {{"valid", true},
         {"vertices", A.size()},
         {"bounding_box", {box.xmin, box.xmax, box.ymin, box.ymax}},
         {"boundary_edges", boundary_edges(A).size()},
         {"contains_marked_edge", A.contains({0, 0}) && A.contains({1, 0})},
         {"w0_interior", dual_interior(A, DualPoint{0, 0})}};
  } catch (const Error& e) {
    valid = false;
    j = {{"valid", false}, {"error", e.what()}};
  }
  j["file"] = c.file;
  write_text(c, out, j.dump(2) + "\n");
  return valid ? 0 : 1;
}

}  // namespace

Point parse_point(const std::string& text) {
  int x = 0, y = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> x >> comma >> y) || comma != ',' || !(in >> std::ws).eof()) {
    throw Error(ErrorCode::ParseError, "expected a point x,y: '" + text + "'");
  }
  return {x, y};
}

BoundaryEdge resolve_edge(const LatticeDomain& A, const std::string& descriptor, const std::string& selector) {
  if (selector.find(',') == std::string::npos) {
    if (descriptor.rfind("square:", 0) != 0) {
      throw Error(ErrorCode::InvalidArgument, "named edges need a square:n domain");
    }
    return named_square_edge(std::stoi(descriptor.substr(7)), selector);
  }
  double x = 0.0, y = 0.0;
  char comma = 0;
  std::istringstream in(selector);
  if (!(in >> x >> comma >> y) || comma != ',') throw Error(ErrorCode::ParseError, "bad edge selector " + selector);
  for (const BoundaryEdge& e : boundary_edges(A)) {
    if (e.midpoint2().x == std::lround(2 * x) && e.midpoint2().y == std::lround(2 * y) &&
        std::abs(2 * x - std::lround(2 * x)) < 1e-9 && std::abs(2 * y - std::lround(2 * y)) < 1e-9) {
      return e;
    }
  }
  throw Error(ErrorCode::EdgeOutsideDomain, "no boundary edge with midpoint " + selector);
}

CliConfig parse_args(const std::vector<std::string>& args) {
  CliConfig c;
  CLI::App app{"Loop-erased random walk edge probabilities and identity checks", "lerwg"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "exact verification suites");
  verify->require_subcommand(1);
  auto* exact = verify->add_subcommand("exact", "edge identity, Fomin, partition and first-exit checks");
  exact->add_option("--max-box", c.max_box, "side of the enumeration box (1..5)");
  exact->add_option("--workers", c.workers, "worker threads");
  exact->add_option("--output,-o", c.output, "per-domain CSV records");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of the edge probability");
  mc->add_option("--domain", c.domain, "square:n, rect:nxm, slit-square:n or file:path");
  mc->add_option("--a", c.a, "entry edge");
  mc->add_option("--b", c.b, "exit edge");
  add_mc(mc, c);
  add_output(mc, c);

  auto* study = app.add_subcommand("study", "scaling study");
  study->add_option("name", c.study, "loops, spinor, beurling, green34, sin3 or qbar")->required();
  study->add_option("--sizes", c.sizes, "comma separated sizes")->delimiter(',');
  add_mc(study, c);
  add_output(study, c);
  add_format(study, c);

  auto* rect = app.add_subcommand("rect-kernel", "rectangle Poisson kernels");
  rect->add_option("--n", c.n, "width");
  rect->add_option("--m", c.m, "height");
  add_output(rect, c);

  auto* slit = app.add_subcommand("slit", "escape profile of the slit square");
  slit->add_option("--n", c.n, "half side");
  add_output(slit, c);
  add_format(slit, c);

  auto* spin = app.add_subcommand("spinor", "lattice spinor Lambda_A(z, a)");
  spin->add_option("--domain", c.domain, "domain descriptor");
  spin->add_option("--a", c.a, "boundary edge");
  spin->add_option("--z", c.z, "interior point x,y");
  add_output(spin, c);

  auto* domain = app.add_subcommand("domain", "domain files");
  domain->require_subcommand(1);
  auto* check = domain->add_subcommand("check", "validate a domain JSON file");
  check->add_option("file", c.file, "path")->required();
  add_output(check, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError{app.help(), true};
  } catch (const CLI::CallForAllHelp&) {
    throw UsageError{app.help(), true};
  } catch (const CLI::ParseError& e) {
    throw UsageError{e.what()};
  }

  if (exact->parsed()) c.command = "verify-exact";
  if (mc->parsed()) c.command = "mc";
  if (study->parsed()) c.command = "study";
  if (rect->parsed()) c.command = "rect-kernel";
  if (slit->parsed()) c.command = "slit";
  if (spin->parsed()) c.command = "spinor";
  if (check->parsed()) c.command = "domain-check";
  return c;
}

std::vector<std::string> to_args(const CliConfig& c) {
  std::vector<std::string> v;
  auto flag = [&v](const std::string& name, const std::string& value) {
    v.push_back(name);
    v.push_back(value);
  };
  auto output = [&] {
    if (!c.output.empty()) flag("--output", c.output);
  };
  auto mc = [&] {
    flag("--samples", std::to_string(c.samples));
    flag("--seed", std::to_string(c.seed));
    flag("--workers", std::to_string(c.workers));
  };
  if (c.command == "verify-exact") {
    v = {"verify", "exact"};
    flag("--max-box", std::to_string(c.max_box));
    flag("--workers", std::to_string(c.workers));
    output();
  } else if (c.command == "mc") {
    v = {"mc"};
    flag("--domain", c.domain);
    flag("--a", c.a);
    flag("--b", c.b);
    mc();
    output();
  } else if (c.command == "study") {
    v = {"study", c.study};
    if (!c.sizes.empty()) flag("--sizes", join_sizes(c.sizes));
    mc();
    output();
    flag("--format", c.format);
  } else if (c.command == "rect-kernel") {
    v = {"rect-kernel"};
    flag("--n", std::to_string(c.n));
    flag("--m", std::to_string(c.m));
    output();
  } else if (c.command == "slit") {
    v = {"slit"};
    flag("--n", std::to_string(c.n));
    output();
    flag("--format", c.format);
  } else if (c.command == "spinor") {
    v = {"spinor"};
    flag("--domain", c.domain);
    flag("--a", c.a);
    flag("--z", c.z);
    output();
  } else if (c.command == "domain-check") {
    v = {"domain", "check", c.file};
    output();
  } else {
    throw UsageError{"unknown command '" + c.command + "'"};
  }
  return v;
}

int run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "verify-exact") return run_verify(c, out);
    if (c.command == "mc") return run_mc(c, out);
    if (c.command == "study") return run_study_command(c, out);
    if (c.command == "rect-kernel") return run_rect(c, out);
    if (c.command == "slit") return run_slit(c, out);
    if (c.command == "spinor") return run_spinor(c, out);
    if (c.command == "domain-check") return run_domain_check(c, out);
    err << "unknown command '" << c.command << "'\n";
    return 2;
  } catch (const UsageError& e) {
    err << e.message << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int main(int argc, char** argv) {
  try {
    const CliConfig config = parse_args(std::vector<std::string>(argv + 1, argv + argc));
    return run(config, std::cout, std::cerr);
  } catch (const UsageError& e) {
    (e.help ? std::cout : std::cerr) << e.message << '\n';
    return e.help ? 0 : 2;
  }
}

}  // namespace lerw::cli
