#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "kmclust/dist_engine.hpp"
#include "kmclust/wide_rat.hpp"

namespace kmclust {

struct MisOptions {
  int c = 4;  // inner iterations per stage: c * ceil(log2 n)
};

// Distance-d approximate maximal independent set on G[W]: marked vertices
// back off when another marked vertex sits within approximate distance d
// (ExclusiveMSSP), joiners knock out everything within d (MSSP). Stages
// double the marking probability 2^i/n. Returns the joined set, ascending.
//
// With the exact engines the result separates pairs by more than d/(1+eps)
// and covers W within d(1+eps).
std::vector<VertexId> approximate_mis(EngineContext& ctx, const std::vector<VertexId>& W,
                                      const WideRat& d, std::uint64_t seed,
                                      const MisOptions& opts = {});

}  // namespace kmclust
