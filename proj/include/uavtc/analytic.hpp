#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "uavtc/model.hpp"
#include "uavtc/numerics/jet.hpp"
#include "uavtc/numerics/quadrature.hpp"

namespace uavtc {

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Number of interferers inside the side-lobe footprint b(o, r_out).
// ---------------------------------------------------------------------------

struct InterfererPmf {
    int m = -1;        // conditioning count at time 0; -1 when unconditional
    double t = 0.0;
    std::vector<double> probs;  // P{N = n}, n = 0..probs.size()-1
    double tail_mass = 0.0;     // mass beyond the last stored n

    int n_max() const { return static_cast<int>(probs.size()) - 1; }
    double total() const;
    double mean() const;
    double at(int n) const { return n >= 0 && n <= n_max() ? probs[static_cast<std::size_t>(n)] : 0.0; }
};

inline constexpr QuadratureSpec kRadialQuadrature{1e-10, 1e-10, 4000};

// Probability that a UAV placed uniformly in b(o, r_out) is back inside the
// footprint after moving for time t:  int_0^{r_out} F(r_out | x) 2x / r_out^2 dx.
double footprint_ingress_integral(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                  const QuadratureSpec& spec = kRadialQuadrature);

// Mean number of UAVs outside the footprint that move into it:
// 2 pi lambda p int_{r_out}^{r_out + v_max t} F(r_out | x) x dx.
double footprint_egress_integral(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                 const QuadratureSpec& spec = kRadialQuadrature);

inline double mean_arrivals(const NetworkParams& params, const SpeedDistribution& speed, double t)
{
    return footprint_egress_integral(params, speed, t);
}

// m p (1 - ingress).
double mean_departures(int m, const NetworkParams& params, const SpeedDistribution& speed, double t);

// Distribution of the interferer count at time t given m at time 0.
// n_max < 0 picks the cut-off automatically (tail below 1e-9 / max(1, mean)).
InterfererPmf conditional_interferer_pmf(int m, const NetworkParams& params, const SpeedDistribution& speed, double t,
                                         int n_max = -1);

// Poisson(lambda pi r_out^2): the count at any single instant.
InterfererPmf unconditional_interferer_pmf(const NetworkParams& params, int n_max = -1);

// 1/2 sum |a_n - b_n| over the union of supports (missing entries are zero).
double total_variation_distance(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------
// Success probabilities at times 0 and t.
// ---------------------------------------------------------------------------

enum class Slots { Both, Initial, Later };

// Nested quadrature tolerances, tightest innermost.
struct AnalyticOptions {
    QuadratureSpec angular{1e-11, 1e-11, 4000};
    QuadratureSpec speed{1e-10, 1e-10, 4000};
    QuadratureSpec radial{1e-9, 1e-10, 8000};
};

struct LaplaceExponent {
    Jet2 jet;
    double error = 0.0;  // quadrature error estimate, max-norm over coefficients
};

// log E[exp(c (s1 I_0 + s2 I_t))], c = T h^alpha / (Omega G_m), as a jet of the
// given shape. Slots::Initial drops I_t (s2 = 0), Slots::Later drops I_0.
LaplaceExponent laplace_exponent(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                 double threshold, const JetShape& shape, Slots slots,
                                 const AnalyticOptions& options = {});

// Joint shape around (-1, -1) with orders k-1 in both variables.
Jet2 laplace_exponent_jet(const NetworkParams& params, const SpeedDistribution& speed, double t, double threshold,
                          const AnalyticOptions& options = {});

// exp(c sigma^2 (s1 + s2)) * E[exp(c (s1 I_0 + s2 I_t))] expanded with the given
// shape; summing its coefficients up to order k-1 gives the success probability.
LaplaceExponent success_transform_jet(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                      double threshold, const JetShape& shape, Slots slots,
                                      const AnalyticOptions& options = {});

// Scalar value of the transform at (s1, s2).
double success_transform(const NetworkParams& params, const SpeedDistribution& speed, double t, double threshold,
                         double s1, double s2, const AnalyticOptions& options = {});

struct SuccessProbability {
    double value = 0.0;
    double error_bound = 0.0;
};

// P{SINR_0 >= T, SINR_t >= T}.
SuccessProbability joint_success(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                 double threshold, const AnalyticOptions& options = {});

// P{SINR_0 >= T} or P{SINR_t >= T}.
SuccessProbability marginal_success(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                    double threshold, Instant which, const AnalyticOptions& options = {});

struct SuccessReport {
    double p_joint = 0.0;
    double p_marginal_0 = 0.0;
    double p_marginal_t = 0.0;
    double p_retx_given_fail = 0.0;    // P{SINR_t >= T | SINR_0 < T}
    double p_independent_joint = 0.0;  // p_marginal_0 * p_marginal_t
    double quadrature_error_bound = 0.0;
};

// Throws NumericalError when P{SINR_0 < T} < 1e-12.
SuccessReport retransmission_report(const NetworkParams& params, const SpeedDistribution& speed, double t,
                                    double threshold, const AnalyticOptions& options = {});

} // namespace uavtc
