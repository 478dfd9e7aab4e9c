#include "ggmq/analytic.hpp"

#include <cmath>

#include "ggmq/errors.hpp"

namespace ggmq::analytic {

double erlang_c(int servers, double lambda, double mu) {
  if (servers < 1) throw DomainError("server count must be >= 1");
  if (!(lambda > 0) || !(mu > 0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
    throw DomainError("rates must be positive and finite");
  }
  const double offered = lambda / mu;
  const double rho = offered / servers;
  if (!(rho < 1)) throw DomainError("unstable queue: lambda >= servers * mu");
  // Erlang B by its stable recursion, then C = B / (1 - rho (1 - B)).
  double b = 1.0;
  for (int i = 1; i <= servers; ++i) b = offered * b / (i + offered * b);
  return b / (1.0 - rho * (1.0 - b));
}

double mmm_mean_wait(int servers, double lambda, double mu) {
  return erlang_c(servers, lambda, mu) / (servers * mu - lambda);
}

}  // namespace ggmq::analytic
