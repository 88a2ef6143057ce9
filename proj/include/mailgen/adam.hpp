#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace mailgen {

/// Adam optimizer state over an ordered list of parameter tensors.
struct AdamOptimizer {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long step_count = 0;
    std::vector<Eigen::MatrixXd> m, v;

    void reset(const std::vector<Eigen::MatrixXd*>& params) {
        step_count = 0;
        m.clear();
        v.clear();
        for (const Eigen::MatrixXd* p : params) {
            m.push_back(Eigen::MatrixXd::Zero(p->rows(), p->cols()));
            v.push_back(Eigen::MatrixXd::Zero(p->rows(), p->cols()));
        }
    }

    void step(const std::vector<Eigen::MatrixXd*>& params,
              const std::vector<const Eigen::MatrixXd*>& grads, double learning_rate) {
        if (params.size() != m.size() || grads.size() != m.size()) {
            throw std::invalid_argument("adam: tensor list does not match optimizer state");
        }
        ++step_count;
        const double bias1 = 1.0 - std::pow(beta1, static_cast<double>(step_count));
        const double bias2 = 1.0 - std::pow(beta2, static_cast<double>(step_count));
        for (std::size_t k = 0; k < params.size(); ++k) {
            m[k] = beta1 * m[k] + (1.0 - beta1) * (*grads[k]);
            v[k] = (beta2 * v[k].array() + (1.0 - beta2) * grads[k]->array().square()).matrix();
            const Eigen::ArrayXXd m_hat = m[k].array() / bias1;
            const Eigen::ArrayXXd v_hat = v[k].array() / bias2;
            params[k]->array() -= learning_rate * m_hat / (v_hat.sqrt() + epsilon);
        }
    }
};

}  // namespace mailgen
