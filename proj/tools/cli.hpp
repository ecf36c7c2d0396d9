#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lerw/lattice.hpp"

namespace lerw::cli {

struct CliConfig {
  std::string command;  // verify-exact, mc, study, rect-kernel, slit, spinor, domain-check
  std::string study;
  std::string domain = "square:2";
  std::string a = "right-mid";
  std::string b = "left-mid";
  std::string z = "0,0";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::vector<int> sizes;
  std::string output;
  std::string format = "json";
  int max_box = 4;
  unsigned workers = 0;
  int n = 10;
  int m = 14;
  std::string file;

  friend bool operator==(const CliConfig&, const CliConfig&) = default;
};

// Thrown for bad command lines; main maps it to exit code 2. `help` is set for --help.
struct UsageError {
  std::string message;
  bool help = false;
};

CliConfig parse_args(const std::vector<std::string>& args);
// Flags reproducing the config through parse_args.
std::vector<std::string> to_args(const CliConfig& config);

// "right-mid" style names on square:n, or the midpoint "x,y" of any boundary edge.
BoundaryEdge resolve_edge(const LatticeDomain& A, const std::string& descriptor, const std::string& selector);
Point parse_point(const std::string& text);

// Runs the command, writes the report, and returns 0 if every declared check passes, else 1.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace lerw::cli
