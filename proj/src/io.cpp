#include "lshmc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lshmc {

namespace {

using ordered_json = nlohmann::ordered_json;

void append_provenance(std::string& out, const Provenance& prov) {
  for (const auto& [key, value] : prov)
    out += "# " + key + "=" + value + "\n";
}

ordered_json provenance_json(const Provenance& prov) {
  ordered_json j = ordered_json::object();
  for (const auto& [key, value] : prov) j[key] = value;
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  // shortest round-trip representation
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string chains_csv(const std::vector<ChainResult>& chains,
                       const Provenance& prov) {
  std::string out;
  append_provenance(out, prov);
  int d = chains.empty() ? 0 : static_cast<int>(chains[0].samples.cols());
  out += "chain,iter,accept,delta_H";
  for (int i = 0; i < d; ++i) out += ",x_" + std::to_string(i);
  out += "\n";
  for (std::size_t ci = 0; ci < chains.size(); ++ci) {
    const ChainResult& cr = chains[ci];
    for (Eigen::Index r = 0; r < cr.samples.rows(); ++r) {
      long it = cr.record_iters[static_cast<std::size_t>(r)];
      out += std::to_string(ci) + "," + std::to_string(it) + ",";
      if (it == 0) {
        out += "1,0";  // starting point; no step behind it
      } else {
        out += std::to_string(int(cr.accept_flags[it - 1])) + "," +
               format_double(cr.delta_H[it - 1]);
      }
      for (int i = 0; i < d; ++i) out += "," + format_double(cr.samples(r, i));
      out += "\n";
    }
  }
  return out;
}

std::string lower_bound_csv(const std::vector<LowerBoundRow>& rows,
                            const Provenance& prov) {
  std::string out;
  append_provenance(out, prov);
  out += "c,eta,mean_log_accept,accept_rate,n_draws\n";
  for (const auto& r : rows) {
    out += format_double(r.c) + "," + format_double(r.eta) + "," +
           format_double(r.mean_log_accept) + "," +
           format_double(r.accept_rate) + "," + std::to_string(r.n_draws) +
           "\n";
  }
  return out;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows,
                        const Provenance& prov) {
  std::string out;
  append_provenance(out, prov);
  out += "kappa,dim,eta,k_hat,accept_rate,resolved\n";
  for (const auto& r : rows) {
    out += format_double(r.kappa) + "," + std::to_string(r.dim) + "," +
           format_double(r.eta) + "," + std::to_string(r.k_hat) + "," +
           format_double(r.accept_rate) + "," + (r.resolved ? "1" : "0") +
           "\n";
  }
  return out;
}

std::string empirical_summary_json(const SummaryContext& ctx,
                                   const EmpiricalSummary& summary,
                                   const Provenance& prov) {
  ordered_json j;
  j["target"] = ctx.target;
  j["kappa"] = ctx.kappa;
  j["dim"] = ctx.dim;
  j["eta"] = ctx.eta;
  j["eps"] = ctx.eps;
  j["k_inner"] = ctx.k_inner;
  j["rounds"] = ctx.rounds;
  j["seed"] = ctx.seed;
  j["accept_rate"] = summary.accept_rate;
  j["mean_grad_norm"] = summary.mean_grad_norm;
  j["ks_per_coordinate"] = summary.ks_per_coordinate;
  j["n_samples"] = summary.n_samples;
  j["mean_delta_H"] = summary.mean_delta_H;
  j["omega_fraction"] = summary.omega_fraction;
  if (!summary.tail_fractions.empty()) {
    ordered_json tails = ordered_json::array();
    for (const auto& t : summary.tail_fractions) {
      tails.push_back({{"c", t.c},
                       {"threshold", t.threshold},
                       {"fraction", t.fraction},
                       {"bound", t.bound}});
    }
    j["tail_fractions"] = tails;
  }
  j["provenance"] = provenance_json(prov);
  return j.dump(2) + "\n";
}

std::string claim_checks_json(const std::vector<ClaimCheck>& checks,
                              const Provenance& prov) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"claim_id", c.claim_id},
                   {"paper_anchor", c.paper_anchor},
                   {"statistic", c.statistic},
                   {"bound", c.bound},
                   {"standard_error", c.standard_error},
                   {"pass", c.pass}});
  }
  ordered_json j;
  j["claims"] = arr;
  j["provenance"] = provenance_json(prov);
  return j.dump(2) + "\n";
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lshmc
