#pragma once

namespace ggmq::analytic {

/// Erlang C: probability that an arrival to a stationary M/M/m queue waits.
/// Requires lambda < servers * mu; throws DomainError otherwise.
double erlang_c(int servers, double lambda, double mu);

/// Stationary mean waiting time in queue for M/M/m, C / (m mu - lambda).
double mmm_mean_wait(int servers, double lambda, double mu);

}  // namespace ggmq::analytic
