// Degree-distribution constants for LDPC ensembles, concentration
// parameters for the conditional entropy and for message passing over ISI
// channels, expander bounds, and the erasure-channel BP threshold.
#ifndef COMET_LDPC_HPP
#define COMET_LDPC_HPP

#include <cstdint>
#include <map>
#include <optional>

namespace comet {

// Edge-perspective degree distributions: lambda_i (variable side) and
// rho_i (check side) are the fractions of edges attached to degree-i nodes.
struct DegreeDistribution {
  std::map<int, double> lambda;
  std::map<int, double> rho;

  static DegreeDistribution regular(int d_v, int d_c);
  void validate(double tol = 1e-12) const;

  double int_lambda() const;  // int_0^1 lambda(x) dx = sum lambda_i / i
  double int_rho() const;
  double design_rate() const;     // 1 - int_rho / int_lambda
  double avg_right_degree() const;  // 1 / int_rho
  int max_right_degree() const;
  double rho_prime1() const;  // rho'(1) = sum (i-1) rho_i
  double lambda_at(double x) const;
  double rho_at(double x) const;
  // Node-perspective check fractions Gamma_i = (rho_i / i) / int_rho.
  std::map<int, double> check_node_fractions() const;
};

struct DegreeStats {
  double R_d = 0.0;
  double a_R = 0.0;
  std::map<int, double> Gamma;
  double identity_check = 0.0;  // |sum (i+1)^2 Gamma_i - ((rho'(1)+3) a_R + 1)|
};

DegreeStats degree_stats(const DegreeDistribution& dd);

struct MinDistanceInterval {
  double lo = 0.0;
  double hi = 0.0;
  double confidence = 0.0;  // 1 - 2 exp(-alpha^2/2); negative means vacuous
  bool vacuous = false;
};

MinDistanceInterval min_distance_interval(std::int64_t n, double R, double alpha);

struct CyclesBound {
  double eta = 0.0;
  double exponent_bits = 0.0;  // 1 - h2((1-eta)/2), used as 2 * 2^{-exponent*n}
  double exponent_nats = 0.0;
  double azuma_exponent_nats = 0.0;  // eta^2 / 2
  bool zero = false;                 // eta > 1

  double probability_at(std::int64_t n) const;
};

CyclesBound cycles_bound(const DegreeDistribution& dd, double alpha);

enum class BinaryInputChannel { MBIOS, BSC, BEC };

/// Upper bound (bits) on the conditional entropy of a parity of r code bits
/// given the channel output, for a channel of capacity C bits per use.
double parity_entropy_bound(int r, double C, BinaryInputChannel channel);

struct CondEntropyConcentration {
  double B_orig = 0.0;   // 1 / (2 (dc_max + 1)^2 (1 - R_d))
  double B_tight = 0.0;  // capacity-aware refinement
  double factor = 0.0;   // B_tight / B_orig
  bool orig_valid = true;  // false when dc_max is unbounded
};

CondEntropyConcentration cond_entropy_concentration(const DegreeDistribution& dd,
                                                    double C,
                                                    BinaryInputChannel channel);

struct BpThreshold {
  double p_bp = 0.0;
  double capacity = 0.0;  // 1 - p_bp for the erasure channel
  bool bracketed = true;
};

/// Belief-propagation threshold on the erasure channel: the infimum of
/// x / lambda(1 - rho(1-x)), evaluated numerically over x in [1e-3, 1]
/// (golden section for regular ensembles, a scan with golden refinement in
/// general).
BpThreshold bec_bp_threshold(const DegreeDistribution& dd);

struct ExpanderBound {
  double value = 0.0;
  double expected_neighbors = 0.0;
  bool vacuous = false;  // negative bound floored at 0
};

/// High-probability lower bound on the number of check-node neighbors of
/// any alpha-fraction of variable nodes in a random (l, r)-regular graph.
ExpanderBound expander_bound(std::int64_t n, int l, int r, double alpha,
                             double delta);

struct IsiSpec {
  int d_v = 2;
  int d_c = 3;
  int W = 0;    // decoding window
  int I = 0;    // channel memory
  int ell = 1;  // iteration depth
};

struct IsiParams {
  double alpha_growth = 0.0;  // per-level neighborhood growth factor
  double N_e = 0.0;           // code-structure edges in a depth-ell neighborhood
  double N_Y = 0.0;           // messages touched by one channel observation
  double inv_beta = 0.0;      // 8 (4 d_v N_e^2 + N_Y^2) / d_v^2
  double beta = 0.0;
  std::optional<double> gamma;  // needs externally supplied tree counts
};

IsiParams isi_params(const IsiSpec& spec,
                     std::optional<double> n_v = std::nullopt,
                     std::optional<double> n_c = std::nullopt);

}  // namespace comet

#endif
