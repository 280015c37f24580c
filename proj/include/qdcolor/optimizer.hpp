#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qdcolor {

// Bias-corrected Adam with PyTorch's default constants.
class Adam {
public:
    explicit Adam(std::size_t num_params, double eta, double beta1 = 0.9, double beta2 = 0.999,
                  double epsilon = 1e-8);

    // theta <- theta - eta * m_hat / (sqrt(v_hat) + epsilon)
    void step(std::span<double> params, std::span<const double> grad);
    void reset();

    std::uint64_t step_count() const noexcept { return step_count_; }
    double eta() const noexcept { return eta_; }
    const std::vector<double>& first_moment() const noexcept { return m_; }
    const std::vector<double>& second_moment() const noexcept { return v_; }

private:
    double eta_;
    double beta1_;
    double beta2_;
    double epsilon_;
    std::uint64_t step_count_ = 0;
    double beta1_power_ = 1.0;
    double beta2_power_ = 1.0;
    std::vector<double> m_;
    std::vector<double> v_;
};

}  // namespace qdcolor
