#include "gspc/generators.hpp"

#include <sstream>

namespace gspc {

ShiftGraph cycle_graph(int n) {
  if (n < 2) throw InputError("cycle graph needs n >= 2");
  RMatrix a = RMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) a(i, i - 1) = 1.0;
  a(0, n - 1) = 1.0;
  return ShiftGraph(std::move(a));
}

ShiftGraph ladder_graph(int n) {
  if (n < 4 || n % 2 != 0) throw InputError("ladder graph needs an even n >= 4");
  const int k = n / 2;
  RMatrix a = RMatrix::Zero(n, n);
  auto edge = [&](int from, int to) { a(to, from) = 1.0; };
  for (int i = 0; i + 1 < k; ++i) {
    edge(i, i + 1);
    edge(k + i + 1, k + i);
  }
  edge(k, 0);
  for (int j = 1; j < k; ++j) edge(j, k + j);
  return ShiftGraph(std::move(a));
}

ShiftGraph random_digraph(int n, std::mt19937_64& rng,
                          const RandomGraphOptions& opts) {
  if (n < 2) throw InputError("random graph needs n >= 2");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    RMatrix a = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && coin(rng) < opts.edge_prob) a(i, j) = 1.0;
    ShiftGraph g(std::move(a));
    if (!g.strongly_connected()) continue;
    try {
      DecomposeOptions dopts;
      dopts.distinct_tol = opts.min_gap;
      const SpectralDecomposition d = decompose(g, dopts);
      if (opts.require_nonzero_eigenvalues && d.has_zero_eigenvalue(opts.min_gap)) continue;
    } catch (const Error&) {
      continue;
    }
    return g;
  }
  std::ostringstream os;
  os << "no admissible random digraph with n=" << n << " after "
     << opts.max_attempts << " attempts";
  throw AssumptionError(os.str());
}

}  // namespace gspc
