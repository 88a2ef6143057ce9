#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mailgen/rng.hpp"

namespace mailgen {

inline void fill_uniform(Eigen::MatrixXd& m, Rng& rng, double lo = -0.08, double hi = 0.08) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            m(r, c) = uniform_real(rng, lo, hi);
        }
    }
}

/// One LSTM direction. Gates are packed row-wise in i, f, g, o order, so
/// wx is (4H x E), wh is (4H x H) and b is (4H x 1).
struct LstmCell {
    Eigen::MatrixXd wx;
    Eigen::MatrixXd wh;
    Eigen::MatrixXd b;

    int hidden_size() const { return static_cast<int>(wh.cols()); }
    int input_size() const { return static_cast<int>(wx.cols()); }

    static LstmCell zeros(int hidden, int input) {
        LstmCell cell;
        cell.wx = Eigen::MatrixXd::Zero(4 * hidden, input);
        cell.wh = Eigen::MatrixXd::Zero(4 * hidden, hidden);
        cell.b = Eigen::MatrixXd::Zero(4 * hidden, 1);
        return cell;
    }

    static LstmCell random(int hidden, int input, Rng& rng) {
        LstmCell cell = zeros(hidden, input);
        fill_uniform(cell.wx, rng);
        fill_uniform(cell.wh, rng);
        fill_uniform(cell.b, rng);
        return cell;
    }
};

/// Per-step activations cached during the forward pass; columns are batch
/// elements.
struct LstmTrace {
    std::vector<Eigen::MatrixXd> x, i, f, g, o, c_prev, tanh_c;
    std::vector<Eigen::MatrixXd> h_prev;
};

namespace detail {

inline Eigen::ArrayXXd sigmoid(const Eigen::ArrayXXd& z) {
    return 1.0 / (1.0 + (-z).exp());
}

}  // namespace detail

/// Runs the cell over `xs` (one (E x B) matrix per step) and returns the final
/// hidden state (H x B). When `trace` is non-null the activations needed for
/// backprop are recorded.
inline Eigen::MatrixXd lstm_forward(const LstmCell& cell, const std::vector<Eigen::MatrixXd>& xs,
                                    LstmTrace* trace = nullptr) {
    const int hidden = cell.hidden_size();
    const Eigen::Index batch = xs.empty() ? 1 : xs.front().cols();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(hidden, batch);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(hidden, batch);
    for (const Eigen::MatrixXd& x : xs) {
        Eigen::MatrixXd gates = cell.wx * x + cell.wh * h;
        gates.colwise() += Eigen::VectorXd(cell.b.col(0));
        const Eigen::ArrayXXd i = detail::sigmoid(gates.topRows(hidden).array());
        const Eigen::ArrayXXd f = detail::sigmoid(gates.middleRows(hidden, hidden).array());
        const Eigen::ArrayXXd g = gates.middleRows(2 * hidden, hidden).array().tanh();
        const Eigen::ArrayXXd o = detail::sigmoid(gates.bottomRows(hidden).array());
        const Eigen::MatrixXd c_prev = c;
        c = (f * c_prev.array() + i * g).matrix();
        const Eigen::ArrayXXd tanh_c = c.array().tanh();
        if (trace) {
            trace->x.push_back(x);
            trace->i.push_back(i.matrix());
            trace->f.push_back(f.matrix());
            trace->g.push_back(g.matrix());
            trace->o.push_back(o.matrix());
            trace->c_prev.push_back(c_prev);
            trace->tanh_c.push_back(tanh_c.matrix());
            trace->h_prev.push_back(h);
        }
        h = (o * tanh_c).matrix();
    }
    return h;
}

/// Backpropagation through time from the gradient at the final hidden state.
/// Accumulates parameter gradients into `grads` (same shapes as the cell) and
/// returns the gradient with respect to each step input.
inline std::vector<Eigen::MatrixXd> lstm_backward(const LstmCell& cell, const LstmTrace& trace,
                                                  const Eigen::MatrixXd& d_h_final,
                                                  LstmCell& grads) {
    const int hidden = cell.hidden_size();
    const std::size_t steps = trace.x.size();
    std::vector<Eigen::MatrixXd> dx(steps);
    Eigen::MatrixXd dh = d_h_final;
    Eigen::MatrixXd dc = Eigen::MatrixXd::Zero(dh.rows(), dh.cols());
    for (std::size_t s = steps; s-- > 0;) {
        const Eigen::ArrayXXd i = trace.i[s].array();
        const Eigen::ArrayXXd f = trace.f[s].array();
        const Eigen::ArrayXXd g = trace.g[s].array();
        const Eigen::ArrayXXd o = trace.o[s].array();
        const Eigen::ArrayXXd tanh_c = trace.tanh_c[s].array();

        const Eigen::ArrayXXd d_o = dh.array() * tanh_c;
        dc.array() += dh.array() * o * (1.0 - tanh_c.square());
        const Eigen::ArrayXXd d_i = dc.array() * g;
        const Eigen::ArrayXXd d_f = dc.array() * trace.c_prev[s].array();
        const Eigen::ArrayXXd d_g = dc.array() * i;

        Eigen::MatrixXd d_gates(4 * hidden, dh.cols());
        d_gates.topRows(hidden) = (d_i * i * (1.0 - i)).matrix();
        d_gates.middleRows(hidden, hidden) = (d_f * f * (1.0 - f)).matrix();
        d_gates.middleRows(2 * hidden, hidden) = (d_g * (1.0 - g.square())).matrix();
        d_gates.bottomRows(hidden) = (d_o * o * (1.0 - o)).matrix();

        grads.wx += d_gates * trace.x[s].transpose();
        grads.wh += d_gates * trace.h_prev[s].transpose();
        grads.b.col(0) += d_gates.rowwise().sum();

        dx[s] = cell.wx.transpose() * d_gates;
        dh = cell.wh.transpose() * d_gates;
        dc = (dc.array() * f).matrix();
    }
    return dx;
}

}  // namespace mailgen
