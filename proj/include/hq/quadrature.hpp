#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hq {

using cplx = std::complex<double>;

enum class QuadratureRule { trapezoid, gauss_legendre };

/// Nodes and weights of a rule on a finite interval.
struct NodeSet {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
NodeSet gauss_legendre(int n);

/// n-point rule mapped onto [a, b]; the trapezoid rule includes both endpoints.
/// n = 1 collapses to the midpoint rule for either kind.
NodeSet fixed_rule(QuadratureRule rule, double a, double b, int n);

struct IntegrationResult {
    cplx value;
    int evaluations = 0;
    double last_change = 0.0;  // |I_2M - I_M| at acceptance
};

using ComplexIntegrand = std::function<cplx(double)>;

/// Integrates f over [a, b] by refinement doubling (composite 16-point
/// Gauss-Legendre panels, or trapezoid) until successive estimates differ by
/// less than rel_tol relative. Throws ConvergenceFailure at the refinement cap.
IntegrationResult integrate(const ComplexIntegrand& f, double a, double b,
                            QuadratureRule rule = QuadratureRule::gauss_legendre,
                            double rel_tol = 1e-10);

inline cplx integral(const ComplexIntegrand& f, double a, double b,
                     QuadratureRule rule = QuadratureRule::gauss_legendre,
                     double rel_tol = 1e-10) {
    return integrate(f, a, b, rule, rel_tol).value;
}

}  // namespace hq
