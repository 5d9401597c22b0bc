#include "kmclust/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kmclust/rng.hpp"
#include "kmclust/wide_rat.hpp"

namespace kmclust {

RandomInstance gen_random_instance(const RandomInstanceSpec& spec, std::uint64_t seed) {
  if (spec.n < 1) throw std::invalid_argument("need n >= 1");
  if (spec.density < 0.0 || spec.density > 1.0) throw std::invalid_argument("density in [0,1]");
  if (spec.weight_min < 1 || spec.weight_min > spec.weight_max)
    throw std::invalid_argument("bad weight range");
  if (spec.cost_min < 1 || spec.cost_min > spec.cost_max)
    throw std::invalid_argument("bad cost range");

  for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
    Rng rng = derive_rng(seed, "gen.random", static_cast<std::uint64_t>(attempt));
    RandomInstance inst;
    inst.graph.n = spec.n;
    for (VertexId u = 0; u < spec.n; ++u)
      for (VertexId v = u + 1; v < spec.n; ++v)
        if (rng.coin(spec.density))
          inst.graph.edges.push_back(
              {u, v, Rat{rng.in_range(spec.weight_min, spec.weight_max)}});
    if (spec.n > 1 && !is_connected(inst.graph)) continue;
    for (VertexId v = 0; v < spec.n; ++v)
      inst.costs.f.push_back(Rat{rng.in_range(spec.cost_min, spec.cost_max)});
    return inst;
  }
  throw InvalidInstance("could not sample a connected graph after " +
                        std::to_string(spec.max_retries) + " retries; raise density");
}

LowerBoundInstance gen_lower_bound_instance(int b, int c, const std::vector<int>& X,
                                            const std::vector<int>& Y) {
  if (b < 1) throw std::invalid_argument("need b >= 1");
  if (static_cast<int>(X.size()) != b || static_cast<int>(Y.size()) != b)
    throw std::invalid_argument("X and Y must have length b");

  LowerBoundInstance inst;
  inst.b = b;
  inst.c = c;
  inst.X = X;
  inst.Y = Y;

  VertexId n = static_cast<VertexId>(2 * b + 2);
  WideInt big;
  mpz_ui_pow_ui(big.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(c));
  if (!big.fits_slong_p()) throw std::invalid_argument("n^c too large for this generator");
  inst.L = Rat{big.get_si()};

  inst.graph.n = n;
  inst.costs.f.assign(n, inst.L);
  inst.costs.f[LowerBoundInstance::u_id()] = Rat{1};
  inst.costs.f[LowerBoundInstance::w_id()] = Rat{1};

  const Rat one{1};
  for (int i = 1; i <= b; ++i) {
    int xi = X[i - 1], yi = Y[i - 1];
    if (xi + yi < 1 || xi < 0 || xi > 1 || yi < 0 || yi > 1)
      throw std::invalid_argument("(X_i, Y_i) = (0,0) has no weight assignment");
    Rat w1, w2, w3;  // {u,u_i}, {u_i,w_i}, {w_i,w}
    if (xi == 1 && yi == 0) {
      w1 = one; w2 = one; w3 = inst.L;
    } else if (xi == 0 && yi == 1) {
      w1 = inst.L; w2 = one; w3 = one;
    } else {
      w1 = one; w2 = inst.L; w3 = one;
    }
    inst.graph.edges.push_back({LowerBoundInstance::u_id(), LowerBoundInstance::ui_id(i), w1});
    inst.graph.edges.push_back({LowerBoundInstance::ui_id(i), LowerBoundInstance::wi_id(i), w2});
    inst.graph.edges.push_back({LowerBoundInstance::wi_id(i), LowerBoundInstance::w_id(), w3});
  }
  return inst;
}

LowerBoundInstance gen_lower_bound_instance_random(int b, int c, std::uint64_t seed) {
  Rng rng = derive_rng(seed, "gen.lowerbound");
  std::vector<int> X(b), Y(b);
  for (int i = 0; i < b; ++i) {
    switch (rng.below(3)) {
      case 0: X[i] = 1; Y[i] = 0; break;
      case 1: X[i] = 0; Y[i] = 1; break;
      default: X[i] = 1; Y[i] = 1; break;
    }
  }
  return gen_lower_bound_instance(b, c, X, Y);
}

void validate_lower_bound_structure(const LowerBoundInstance& inst) {
  const int b = inst.b;
  auto fail = [](const std::string& msg) { throw InvalidInstance("lower-bound structure: " + msg); };

  if (inst.graph.n != 2 * b + 2) fail("vertex count is not 2b+2");
  if (inst.graph.edges.size() != static_cast<std::size_t>(3 * b)) fail("edge count is not 3b");
  if (static_cast<int>(inst.X.size()) != b || static_cast<int>(inst.Y.size()) != b)
    fail("bit vector length");

  for (int i = 1; i <= b; ++i) {
    const Edge& e1 = inst.graph.edges[3 * (i - 1) + 0];
    const Edge& e2 = inst.graph.edges[3 * (i - 1) + 1];
    const Edge& e3 = inst.graph.edges[3 * (i - 1) + 2];
    if (e1.u != LowerBoundInstance::u_id() || e1.v != LowerBoundInstance::ui_id(i))
      fail("edge 1 endpoints at index " + std::to_string(i));
    if (e2.u != LowerBoundInstance::ui_id(i) || e2.v != LowerBoundInstance::wi_id(i))
      fail("edge 2 endpoints at index " + std::to_string(i));
    if (e3.u != LowerBoundInstance::wi_id(i) || e3.v != LowerBoundInstance::w_id())
      fail("edge 3 endpoints at index " + std::to_string(i));

    int xi = inst.X[i - 1], yi = inst.Y[i - 1];
    if (xi + yi < 1) fail("(X_i, Y_i) = (0,0)");
    const Rat one{1};
    bool ok = false;
    if (xi == 1 && yi == 0) ok = (e1.w == one && e2.w == one && e3.w == inst.L);
    if (xi == 0 && yi == 1) ok = (e1.w == inst.L && e2.w == one && e3.w == one);
    if (xi == 1 && yi == 1) ok = (e1.w == one && e2.w == inst.L && e3.w == one);
    if (!ok) fail("weight triple does not match (X_i, Y_i) at index " + std::to_string(i));
  }

  for (VertexId v = 0; v < inst.graph.n; ++v) {
    bool hub = (v == LowerBoundInstance::u_id() || v == LowerBoundInstance::w_id());
    if (hub && inst.costs.f[v] != Rat{1}) fail("hub cost must be 1");
    if (!hub && inst.costs.f[v] != inst.L) fail("non-hub cost must be L");
  }
}

}  // namespace kmclust
