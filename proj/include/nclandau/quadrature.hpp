#ifndef NCLANDAU_QUADRATURE_HPP
#define NCLANDAU_QUADRATURE_HPP

#include <Eigen/Dense>
#include <functional>

namespace nclandau {

/// Nodes and weights of an n-point Gaussian rule.
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;

    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// Gauss-Laguerre rule for weight x^alpha e^{-x} on [0, inf).
/// Exact for polynomials of degree <= 2n-1; order limited to 150.
QuadratureRule gauss_laguerre(int n, double alpha = 0.0);

/// Adaptive Simpson integration of f on [a, b] to absolute tolerance tol.
/// Throws QuadratureError if the recursion limit is hit before convergence.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 60);

} // namespace nclandau

#endif
