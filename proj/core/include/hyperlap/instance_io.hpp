#pragma once

#include <cstdint>
#include <string>

#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

struct Instance {
  Hypergraph hypergraph;
  Demand demand;
};

/// Instance text format (JSON):
///   { "n": 3,
///     "edges": [ {"verts": [0,1,2], "w": "1"} ],
///     "demand": ["1", "0", "-1"] }
/// Scalars are exact strings: "a", "a*2^-q", or a terminating binary decimal
/// such as "0.5".  Floats are rejected; parsing round-trips bit-exactly
/// against serialize_instance.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

std::string serialize_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

/// FNV-1a over the canonical serialization; certificates embed this so a
/// verifier can tell which instance a certificate belongs to.
std::uint64_t instance_hash(const Instance& inst);

}  // namespace hyperlap
