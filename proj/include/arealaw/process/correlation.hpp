#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arealaw/process/process_matrix.hpp"

namespace arealaw {

struct CorrelationBudget {
  std::size_t restarts = 4;          // random restarts per ancilla dimension
  std::size_t iterations = 60;       // ascent steps per restart
  std::size_t max_ancilla_dim = 0;   // 0: rank bound d_I·d_O per party
  std::size_t environment_dim = 1;   // >1 probes with CPTP maps (environment traced)
  double tolerance = 1e-9;           // stop when a step gains less than this
  std::uint64_t seed = 1;
  std::size_t jobs = 1;              // restarts evaluated in parallel
};

struct CorrelationEstimate {
  double value = 0.0;
  double cap = 0.0;  // 2·log₂ min over the two sides of Π d_I·d_O
  ProbingScheme scheme;
  std::vector<std::pair<std::size_t, double>> per_dimension;  // (ancilla dim, best value)
  std::vector<std::string> trace;
  bool complete = true;
  std::string note;
};

/// Lower bound on C_W for the bipartition (group : rest) by local ascent over
/// purified probing isometries, seeded with structured probes.
CorrelationEstimate estimate_C_W(const ProcessMatrix& w, const std::vector<std::size_t>& group,
                                 const CorrelationBudget& budget = {});

double correlation_cap(const ProcessMatrix& w, const std::vector<std::size_t>& group);

}  // namespace arealaw
