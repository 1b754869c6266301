// SPDX-License-Identifier: Apache-2.0
//
// LMMSE uplink receiver under perfect and imperfect CSI.
//
// Column-vector convention throughout: the receiver sees
//   y = sum_u sqrt(p) h_u x_u + n,         Q = E[y y^H] = sum_u p h_u h_u^H + n0 I,
// builds the filter w = Q_hat^{-1} h_hat_k from estimated channels, and user k
// gets the output w^H y with desired gain alpha = w^H h_k. Its SINR is
//   p |alpha|^2 / (w^H Q w - p |alpha|^2).
// With perfect CSI alpha = h_k^H Q^{-1} h_k is real and the SINR reduces to
// p alpha / (1 - p alpha).

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hetnet/channel.hpp"
#include "hetnet/config.hpp"
#include "hetnet/linalg.hpp"
#include "hetnet/topology.hpp"

namespace hetnet {

/// Q = sum_u p h_u h_u^H + n0 I over every user column of `links`.
HermitianMatrix assemble_covariance(const LinkMatrix& links, double p, double n0);

/// Checks that every channel has `n` (resp. `f`) entries.
HermitianMatrix assemble_bs_covariance(const LinkMatrix& links, double p_mcu, double n0, std::size_t n);
HermitianMatrix assemble_sc_covariance(const LinkMatrix& links, double p_scu, double n0, std::size_t f);

/// Raised when a perfect-CSI evaluation gives p*alpha outside (0, 1), which
/// exact arithmetic rules out for a positive-definite Q.
class NumericalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-form SINR with estimated channels, evaluated literally from the two
/// covariance matrices.
double sinr_imperfect(std::span<const cplx> h_true, std::span<const cplx> h_est, const HermitianMatrix& q_true,
                      const HermitianMatrix& q_est, double p);

/// Perfect-CSI SINR p*alpha / (1 - p*alpha), alpha = h^H Q^{-1} h.
double sinr_perfect(std::span<const cplx> h, const HermitianMatrix& q, double p);

struct UserSinr {
  double sinr = 0.0;
  cplx alpha;
};

/// Same quantity as sinr_imperfect, but with the denominator expanded over the
/// individual users of Q:
///   w^H Q w - p|alpha|^2 = sum_{u != k} p |w^H h_u|^2 + n0 ||w||^2.
/// This never cancels, so it stays accurate at high SNR. `filter` factors the
/// covariance used to build w, `h_filter` is the channel the receiver believes
/// user k has, `truth` holds every true channel seen by the receiver.
UserSinr lmmse_user_sinr(const LinkMatrix& truth, std::size_t user, const CholeskyFactor& filter,
                         std::span<const cplx> h_filter, double p, double n0);

enum class CsiKind { perfect, imperfect };

struct UserSinrEntry {
  int cell = 0;              // cell the user was dropped in
  std::size_t user = 0;      // global MCU or SCU index
  std::size_t receiver = 0;  // serving BS or small-cell index
  double sinr = 0.0;
  cplx alpha;
};

struct SinrReport {
  CsiKind csi = CsiKind::perfect;
  std::vector<UserSinrEntry> macro;
  std::vector<UserSinrEntry> small_cell;
};

struct SinrReportPair {
  SinrReport perfect;
  SinrReport imperfect;
};

struct ReportOptions {
  std::optional<int> cell;              // restrict to users dropped in this cell
  std::optional<double> macro_noise_w;  // default: full-band noise
  std::optional<double> sc_noise_w;
  bool macro = true;
  bool small_cell = true;
};

/// SINR of every selected user at its serving station, for both CSI variants.
/// Entries are ordered by global user index.
SinrReportPair compute_sinr_report(const ChannelSet& channels, const NetworkTopology& topology,
                                   const SimulationConfig& config, const ReportOptions& options = {});

}  // namespace hetnet
