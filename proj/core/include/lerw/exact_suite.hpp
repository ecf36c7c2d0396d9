#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lerw/identity.hpp"
#include "lerw/lattice.hpp"

namespace lerw {

// Outcome of one exact check over every simply connected domain in a box.
struct CorpusResult {
  std::string check;
  int max_box = 0;
  long long domains = 0;
  long long instances = 0;  // ordered pairs of distinct boundary edges
  long long failures = 0;
  double max_relative_error = 0.0;  // over instances where the relative term of the tolerance dominates
  double max_absolute_error = 0.0;
  Tolerance tolerance;
  double seconds = 0.0;
  bool pass = false;
};

struct DomainRecord {
  std::vector<Point> vertices;
  long long instances = 0;
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  bool pass = false;
};

// Receives one record per domain, in enumeration order.
using RecordSink = std::function<void(const DomainRecord&)>;

// Edge identity: enumeration against the determinant formula, all domains in a max_box square box
// containing {0, 1, -i, 1-i}, all ordered pairs of distinct boundary edges.
CorpusResult verify_identity_corpus(int max_box, unsigned workers = 0, const RecordSink& sink = {});

// Fomin's identity on all domains in the box containing {0, 1}. Both determinant routes are compared.
CorpusResult verify_fomin_corpus(int max_box, unsigned workers = 0, const RecordSink& sink = {});

// Sum of p-hat over all SAWs a -> b against H_{dA}(a, b), same corpus as the Fomin check.
CorpusResult verify_partition_corpus(int max_box, unsigned workers = 0, const RecordSink& sink = {});

}  // namespace lerw
