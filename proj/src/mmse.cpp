// SPDX-License-Identifier: Apache-2.0

#include "hetnet/mmse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace hetnet {

HermitianMatrix assemble_covariance(const LinkMatrix& links, double p, double n0) {
  auto q = HermitianMatrix::scaled_identity(links.n_antennas(), n0);
  for (std::size_t u = 0; u < links.n_users(); ++u) q.add_outer(p, links.user(u));
  return q;
}

HermitianMatrix assemble_bs_covariance(const LinkMatrix& links, double p_mcu, double n0, std::size_t n) {
  if (links.n_antennas() != n) {
    throw std::invalid_argument("assemble_bs_covariance: channels have " + std::to_string(links.n_antennas()) +
                                " entries, expected " + std::to_string(n));
  }
  return assemble_covariance(links, p_mcu, n0);
}

HermitianMatrix assemble_sc_covariance(const LinkMatrix& links, double p_scu, double n0, std::size_t f) {
  if (links.n_antennas() != f) {
    throw std::invalid_argument("assemble_sc_covariance: channels have " + std::to_string(links.n_antennas()) +
                                " entries, expected " + std::to_string(f));
  }
  return assemble_covariance(links, p_scu, n0);
}

double sinr_imperfect(std::span<const cplx> h_true, std::span<const cplx> h_est, const HermitianMatrix& q_true,
                      const HermitianMatrix& q_est, double p) {
  if (h_true.size() != h_est.size() || h_true.size() != q_true.order() || q_true.order() != q_est.order()) {
    throw std::invalid_argument("sinr_imperfect: shape mismatch");
  }
  const CVector w = hermitian_solve(q_est, h_est);
  const cplx alpha = inner(w, h_true);
  const double signal = p * std::norm(alpha);
  const double residual = q_true.quadratic_form(w) - signal;
  return residual > 0.0 ? signal / residual : 0.0;
}

double sinr_perfect(std::span<const cplx> h, const HermitianMatrix& q, double p) {
  if (h.size() != q.order()) throw std::invalid_argument("sinr_perfect: shape mismatch");
  const CVector w = hermitian_solve(q, h);
  const cplx alpha = inner(h, w);
  if (std::abs(alpha.imag()) > 1e-10 * std::abs(alpha)) {
    throw NumericalConsistencyError("sinr_perfect: h^H Q^-1 h has a non-negligible imaginary part");
  }
  const double pa = p * alpha.real();
  if (!(pa >= 0.0) || !(pa < 1.0)) {
    throw NumericalConsistencyError("sinr_perfect: p*alpha = " + std::to_string(pa) + " outside [0, 1)");
  }
  return pa / (1.0 - pa);
}

UserSinr lmmse_user_sinr(const LinkMatrix& truth, std::size_t user, const CholeskyFactor& filter,
                         std::span<const cplx> h_filter, double p, double n0) {
  const CVector w = filter.solve(h_filter);
  UserSinr out;
  out.alpha = inner(w, truth.user(user));
  double leakage = 0.0;
  for (std::size_t u = 0; u < truth.n_users(); ++u) {
    if (u == user) continue;
    leakage += std::norm(inner(w, truth.user(u)));
  }
  const double residual = p * leakage + n0 * squared_norm(w);
  out.sinr = residual > 0.0 ? p * std::norm(out.alpha) / residual : 0.0;
  return out;
}

namespace {

struct ReceiverJob {
  std::size_t receiver;
  std::vector<std::size_t> users;
};

std::vector<ReceiverJob> group_by_receiver(std::span<const std::size_t> serving, int per_cell,
                                           std::optional<int> cell) {
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t u = 0; u < serving.size(); ++u) {
    if (cell && static_cast<int>(u) / per_cell != *cell) continue;
    groups[serving[u]].push_back(u);
  }
  std::vector<ReceiverJob> jobs;
  jobs.reserve(groups.size());
  for (auto& [rx, users] : groups) jobs.push_back({rx, std::move(users)});
  return jobs;
}

void evaluate_tier(const char* tier, const std::vector<LinkMatrix>& truth, const std::vector<LinkMatrix>& est,
                   std::span<const std::size_t> serving, int per_cell, std::optional<int> cell, double p,
                   double n0, std::vector<UserSinrEntry>& perfect, std::vector<UserSinrEntry>& imperfect) {
  for (const auto& job : group_by_receiver(serving, per_cell, cell)) {
    const LinkMatrix& h = truth[job.receiver];
    const LinkMatrix& h_hat = est[job.receiver];
    try {
      const CholeskyFactor q(assemble_covariance(h, p, n0));
      const CholeskyFactor q_hat(assemble_covariance(h_hat, p, n0));
      for (std::size_t u : job.users) {
        const int user_cell = static_cast<int>(u) / per_cell;
        const UserSinr pc = lmmse_user_sinr(h, u, q, h.user(u), p, n0);
        const UserSinr ic = lmmse_user_sinr(h, u, q_hat, h_hat.user(u), p, n0);
        perfect.push_back({user_cell, u, job.receiver, pc.sinr, pc.alpha});
        imperfect.push_back({user_cell, u, job.receiver, ic.sinr, ic.alpha});
      }
    } catch (const SingularMatrixError& e) {
      throw std::runtime_error(std::string(tier) + " receiver " + std::to_string(job.receiver) + " (cell " +
                               std::to_string(static_cast<int>(job.users.front()) / per_cell) + ", user " +
                               std::to_string(job.users.front()) + "): " + e.what());
    }
  }
  auto by_user = [](const UserSinrEntry& a, const UserSinrEntry& b) { return a.user < b.user; };
  std::sort(perfect.begin(), perfect.end(), by_user);
  std::sort(imperfect.begin(), imperfect.end(), by_user);
}

}  // namespace

SinrReportPair compute_sinr_report(const ChannelSet& channels, const NetworkTopology& topology,
                                   const SimulationConfig& config, const ReportOptions& options) {
  SinrReportPair out;
  out.perfect.csi = CsiKind::perfect;
  out.imperfect.csi = CsiKind::imperfect;
  const double full_band_noise = noise_power_watts(config.noise_psd_dbm_hz, config.bandwidth_hz);

  if (options.macro) {
    evaluate_tier("macro", channels.bs_true, channels.bs_est, topology.mcu_serving_bs, topology.mcu_per_cell,
                  options.cell, dbm_to_watts(config.p_mcu_dbm), options.macro_noise_w.value_or(full_band_noise),
                  out.perfect.macro, out.imperfect.macro);
  }
  if (options.small_cell && topology.stations.sc_per_cell > 0) {
    evaluate_tier("smallcell", channels.sc_true, channels.sc_est, topology.scu_serving_sc,
                  topology.stations.sc_per_cell, options.cell, dbm_to_watts(config.p_scu_dbm),
                  options.sc_noise_w.value_or(full_band_noise), out.perfect.small_cell, out.imperfect.small_cell);
  }
  return out;
}

}  // namespace hetnet
