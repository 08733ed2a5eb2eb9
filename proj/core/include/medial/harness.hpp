#pragma once

// Exhaustive sweeps over tree shapes, shared by the CLI `enumerate` command
// and the benchmarks.

#include <cstddef>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "medial/interchange.hpp"

namespace medial {

struct RepresentabilitySweep {
  int max_rank = 0;
  std::size_t shapes = 0;
  /// Shapes violating 2m+n = 1 mod 3, the vertex counts, or the leaf bounds.
  std::size_t condition_failures = 0;
  std::size_t achieved = 0;   // distinct total colors seen
  std::size_t predicted = 0;  // representable tuples with sum <= max_rank
  bool sets_equal = false;
  std::size_t witness_failures = 0;
};

/// Total colors of every shape of rank 1..max_rank against is_representable
/// and construct_tree.
RepresentabilitySweep sweep_representability(int max_rank);

struct InterchangeSweep {
  int max_rank = 0;
  std::size_t shapes = 0;
  std::size_t pairs = 0;
  std::size_t failures = 0;
  std::size_t steps = 0;
  InterchangeStats stats;
  std::size_t quad_terms = 0;
  std::size_t quad_failures = 0;
  std::size_t quad_fallbacks = 0;
};

/// derive_interchange for every same-color leaf pair, and to_quad_form for
/// every four-colored shape, of rank 1..max_rank; each trace is verified.
InterchangeSweep sweep_interchange(int max_rank);

struct ClosureCheck {
  bool without_m1_closed = false;  // (ux)(yu) under M minus M1
  bool without_m2_closed = false;  // (xu)(uy) under M minus M2
  bool projection_satisfies = false;  // second projection, x(xy)=y
  bool projection_refutes_m2 = false;
};

ClosureCheck check_closure();

nlohmann::json to_json(const RepresentabilitySweep& r);
nlohmann::json to_json(const InterchangeSweep& r);
nlohmann::json to_json(const ClosureCheck& r);

}  // namespace medial
