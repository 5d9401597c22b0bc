#include "kmclust/mis.hpp"

#include <algorithm>
#include <stdexcept>

#include "kmclust/rng.hpp"

namespace kmclust {

namespace {

int log2_ceil(VertexId n) {
  int l = 0;
  while ((VertexId{1} << l) < n) ++l;
  return l;
}

}  // namespace

std::vector<VertexId> approximate_mis(EngineContext& ctx, const std::vector<VertexId>& W_in,
                                      const WideRat& d, std::uint64_t seed,
                                      const MisOptions& opts) {
  if (W_in.empty()) throw std::invalid_argument("approximate MIS needs a nonempty vertex set");
  const VertexId n = ctx.n();
  std::vector<VertexId> W = W_in;
  std::sort(W.begin(), W.end());
  if (W.size() == 1) return W;

  std::vector<VertexId> joined;
  const int stages = log2_ceil(n);
  const int inner = std::max(1, opts.c * std::max(1, log2_ceil(n)));

  auto cover_step = [&](const std::vector<VertexId>& T) {
    // joiners knock out everything within d, themselves included
    DistanceTable cov = mssp(ctx, SourceSet::of(n, T), "mis.cover");
    std::vector<VertexId> keep;
    keep.reserve(W.size());
    for (VertexId v : W)
      if (to_wide(cov.at[v].dist) > d) keep.push_back(v);
    W = std::move(keep);
  };

  for (int stage = 0; stage <= stages && !W.empty(); ++stage) {
    double prob = std::min(1.0, static_cast<double>(std::uint64_t{1} << std::min(stage, 62)) /
                                    static_cast<double>(n));
    for (int iter = 0; iter < inner && !W.empty(); ++iter) {
      Rng rng = derive_rng(seed, "mis.mark", static_cast<std::uint64_t>(stage),
                           static_cast<std::uint64_t>(iter));
      std::vector<VertexId> marked;
      for (VertexId v : W)
        if (rng.coin(prob)) marked.push_back(v);
      if (marked.empty()) continue;

      std::vector<VertexId> T;
      if (marked.size() == 1) {
        T = marked;  // no other marked vertex anywhere, join outright
      } else {
        DistanceTable ex = exclusive_mssp(ctx, SourceSet::of(n, marked), "mis.exclusive");
        for (VertexId v : marked)
          if (to_wide(ex.at[v].dist) > d) T.push_back(v);
      }
      if (T.empty()) continue;
      joined.insert(joined.end(), T.begin(), T.end());
      cover_step(T);
    }
  }

  // whp the loops above empty W; the remainder is resolved deterministically
  // (smallest id joins, covered vertices withdraw) so the run always
  // terminates with a valid approximate MIS
  while (!W.empty()) {
    VertexId v = W.front();
    joined.push_back(v);
    cover_step({v});
  }

  std::sort(joined.begin(), joined.end());
  return joined;
}

}  // namespace kmclust
