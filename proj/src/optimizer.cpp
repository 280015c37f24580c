#include "qdcolor/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdcolor {

Adam::Adam(std::size_t num_params, double eta, double beta1, double beta2, double epsilon)
    : eta_(eta), beta1_(beta1), beta2_(beta2), epsilon_(epsilon), m_(num_params, 0.0), v_(num_params, 0.0) {
    if (!(eta > 0.0)) throw std::invalid_argument("learning rate must be > 0");
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
        throw std::invalid_argument("Adam betas must lie in [0, 1)");
    }
}

void Adam::step(std::span<double> params, std::span<const double> grad) {
    if (params.size() != m_.size() || grad.size() != m_.size()) {
        throw std::invalid_argument("Adam: parameter layout mismatch");
    }
    ++step_count_;
    beta1_power_ *= beta1_;
    beta2_power_ *= beta2_;
    const double bias1 = 1.0 - beta1_power_;
    const double bias2 = 1.0 - beta2_power_;
    for (std::size_t k = 0; k < m_.size(); ++k) {
        const double g = grad[k];
        m_[k] = beta1_ * m_[k] + (1.0 - beta1_) * g;
        v_[k] = beta2_ * v_[k] + (1.0 - beta2_) * g * g;
        const double m_hat = m_[k] / bias1;
        const double v_hat = v_[k] / bias2;
        params[k] -= eta_ * m_hat / (std::sqrt(v_hat) + epsilon_);
    }
}

void Adam::reset() {
    std::fill(m_.begin(), m_.end(), 0.0);
    std::fill(v_.begin(), v_.end(), 0.0);
    step_count_ = 0;
    beta1_power_ = 1.0;
    beta2_power_ = 1.0;
}

}  // namespace qdcolor
