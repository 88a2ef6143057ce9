#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "mailgen/rng.hpp"

namespace mailgen {

/// A normalized probability vector over the vocabulary.
struct Distribution {
    Eigen::VectorXd probabilities;

    int size() const { return static_cast<int>(probabilities.size()); }

    int argmax() const {
        Eigen::Index best;
        probabilities.maxCoeff(&best);
        return static_cast<int>(best);
    }

    /// Shannon entropy in nats; 0 log 0 counts as 0.
    double entropy() const {
        double h = 0.0;
        for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
            const double p = probabilities[i];
            if (p > 0.0) h -= p * std::log(p);
        }
        return h;
    }
};

/// Numerically stable softmax with a temperature divisor:
/// p_j = exp(l_j / tau) / sum_k exp(l_k / tau). Accepts tau in (0, 2].
inline Distribution apply_temperature(const Eigen::VectorXd& logits, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("apply_temperature: tau must be positive");
    if (tau > 2.0) throw std::invalid_argument("apply_temperature: tau above supported range (0, 2]");
    if (logits.size() == 0) throw std::invalid_argument("apply_temperature: empty logits");
    if (!logits.allFinite()) throw std::invalid_argument("apply_temperature: non-finite logits");
    const double m = logits.maxCoeff();
    Eigen::VectorXd shifted = ((logits.array() - m) / tau).exp();
    Distribution dist;
    dist.probabilities = shifted / shifted.sum();
    return dist;
}

inline Distribution softmax(const Eigen::VectorXd& logits) {
    return apply_temperature(logits, 1.0);
}

/// Draws one index from the distribution by CDF inversion.
inline int sample_token(const Distribution& dist, Rng& rng) {
    const double u = uniform_real(rng);
    double cumulative = 0.0;
    const Eigen::Index n = dist.probabilities.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += dist.probabilities[i];
        if (u < cumulative) return static_cast<int>(i);
    }
    return static_cast<int>(n - 1);  // guards against rounding at the tail
}

}  // namespace mailgen
