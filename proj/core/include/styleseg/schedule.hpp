#pragma once

#include <string>
#include <vector>

#include "styleseg/tensor.hpp"

namespace styleseg {

enum class ScheduleKind { linear, cosine };

ScheduleKind schedule_kind_from_string(const std::string& s);
std::string to_string(ScheduleKind k);

// Cumulative signal coefficients for T diffusion steps. alpha_bar(t) is
// indexed 1..T; alpha_bar(0) == 1 is the clean-data sentinel the sampler's
// final step uses. gamma(t) are the per-step loss weights (all ones).
struct NoiseSchedule {
    int T = 0;
    ScheduleKind kind = ScheduleKind::linear;
    std::vector<double> alpha_bar_;  // size T+1, [0] = 1.0
    std::vector<double> gamma_;      // size T+1, [0] unused

    double alpha_bar(int t) const { return alpha_bar_[static_cast<size_t>(t)]; }
    double gamma(int t) const { return gamma_[static_cast<size_t>(t)]; }

    void validate() const;
};

// Closed form used for the cosine kind, exposed so tests can evaluate it
// independently:
//   u(t)  = s0 + (t/T) * (1 - s0 - s1),  s0 = 0.008, s1 = 0.05
//   abar  = cos(u * pi/2)^2 / cos(s0 * pi/2)^2
double cosine_alpha_bar(int t, int T);

NoiseSchedule make_schedule(int T, ScheduleKind kind);

// Eq-style forward diffusion: z_t = sqrt(abar_t) z0 + sqrt(1-abar_t) eps.
template <typename T>
Tensor<T> forward_diffuse(const Tensor<T>& z0, int t, const Tensor<T>& eps,
                          const NoiseSchedule& sched) {
    if (t < 1 || t > sched.T)
        throw ContractError("forward_diffuse: t out of range 1..T");
    check_same_shape(z0, eps, "forward_diffuse");
    double ab = sched.alpha_bar(t);
    T a = static_cast<T>(std::sqrt(ab));
    T b = static_cast<T>(std::sqrt(1.0 - ab));
    Tensor<T> zt(z0.shape);
    for (int64_t i = 0; i < z0.numel(); ++i) zt[i] = a * z0[i] + b * eps[i];
    return zt;
}

// Clean-signal estimate from a noise estimate; the affine inverse of the
// forward process: zhat = (z_t - sqrt(1-abar_t) eps) / sqrt(abar_t).
template <typename T>
Tensor<T> invert_diffuse(const Tensor<T>& zt, int t, const Tensor<T>& eps_hat,
                         const NoiseSchedule& sched) {
    if (t < 1 || t > sched.T)
        throw ContractError("invert_diffuse: t out of range 1..T");
    check_same_shape(zt, eps_hat, "invert_diffuse");
    double ab = sched.alpha_bar(t);
    T inv_a = static_cast<T>(1.0 / std::sqrt(ab));
    T b = static_cast<T>(std::sqrt(1.0 - ab));
    Tensor<T> z0(zt.shape);
    for (int64_t i = 0; i < zt.numel(); ++i) z0[i] = (zt[i] - b * eps_hat[i]) * inv_a;
    return z0;
}

}  // namespace styleseg
