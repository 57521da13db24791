#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lshmc/diagnostics.hpp"
#include "lshmc/driver.hpp"
#include "lshmc/experiments.hpp"

namespace lshmc {

// Resolved configuration embedded in every output file, in insertion order.
using Provenance = std::vector<std::pair<std::string, std::string>>;

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

// CSV with a leading '# key=value' provenance block.
// Columns: chain,iter,accept,delta_H,x_0,...,x_{d-1}
std::string chains_csv(const std::vector<ChainResult>& chains,
                       const Provenance& prov);

// Columns: c,eta,mean_log_accept,accept_rate,n_draws
std::string lower_bound_csv(const std::vector<LowerBoundRow>& rows,
                            const Provenance& prov);

// Columns: kappa,dim,eta,k_hat,accept_rate,resolved
std::string scaling_csv(const std::vector<ScalingRow>& rows,
                        const Provenance& prov);

struct SummaryContext {
  std::string target;
  double kappa = 1.0;
  int dim = 1;
  double eta = 0.0;
  double eps = 1.0;
  long k_inner = 0;
  int rounds = 1;
  std::uint64_t seed = 0;
};
std::string empirical_summary_json(const SummaryContext& ctx,
                                   const EmpiricalSummary& summary,
                                   const Provenance& prov);

std::string claim_checks_json(const std::vector<ClaimCheck>& checks,
                              const Provenance& prov);

// Parses CSV produced by the writers above, skipping '#' comment lines.
// First returned row is the header.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace lshmc
