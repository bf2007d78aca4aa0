#include "hq/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hq/errors.hpp"

namespace hq {

NodeSet gauss_legendre(int n) {
    NodeSet rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute P_{n-1} at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

NodeSet fixed_rule(QuadratureRule rule, double a, double b, int n) {
    NodeSet out;
    if (n < 1) throw ConfigError("quadrature rule needs at least one node");
    if (n == 1) {
        out.nodes = {0.5 * (a + b)};
        out.weights = {b - a};
        return out;
    }
    if (rule == QuadratureRule::trapezoid) {
        const double h = (b - a) / (n - 1);
        out.nodes.resize(n);
        out.weights.assign(n, h);
        for (int i = 0; i < n; ++i) out.nodes[i] = a + i * h;
        out.nodes[n - 1] = b;
        out.weights.front() = out.weights.back() = 0.5 * h;
        return out;
    }
    out = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        out.nodes[i] = mid + half * out.nodes[i];
        out.weights[i] *= half;
    }
    return out;
}

namespace {

constexpr int kPanelOrder = 16;
constexpr int kMaxPanelLevels = 16;     // up to 65536 panels
constexpr int kMaxTrapezoidLevels = 24; // up to ~1.7e7 intervals

const NodeSet& panel_rule() {
    static const NodeSet rule = gauss_legendre(kPanelOrder);
    return rule;
}

bool accepted(cplx now, cplx before, double magnitude_scale, double rel_tol) {
    const double change = std::abs(now - before);
    return change <= rel_tol * std::abs(now) || change <= 1e-15 * magnitude_scale;
}

IntegrationResult integrate_gl(const ComplexIntegrand& f, double a, double b, double rel_tol) {
    const NodeSet& ref = panel_rule();
    IntegrationResult result;
    auto composite = [&](int panels, double& scale) {
        const double h = (b - a) / panels;
        cplx sum = 0.0;
        scale = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (p + 0.5) * h;
            for (int i = 0; i < kPanelOrder; ++i) {
                const cplx v = f(mid + 0.5 * h * ref.nodes[i]);
                const double w = 0.5 * h * ref.weights[i];
                sum += w * v;
                scale += w * std::abs(v);
            }
        }
        result.evaluations += panels * kPanelOrder;
        return sum;
    };
    double scale = 0.0;
    cplx previous = composite(1, scale);
    for (int level = 1; level <= kMaxPanelLevels; ++level) {
        const cplx current = composite(1 << level, scale);
        if (accepted(current, previous, scale, rel_tol)) {
            result.value = current;
            result.last_change = std::abs(current - previous);
            return result;
        }
        previous = current;
    }
    throw ConvergenceFailure("Gauss-Legendre refinement did not reach tolerance " +
                             std::to_string(rel_tol));
}

IntegrationResult integrate_trapezoid(const ComplexIntegrand& f, double a, double b,
                                      double rel_tol) {
    IntegrationResult result;
    const cplx fa = f(a), fb = f(b);
    double abs_sum = 0.5 * (std::abs(fa) + std::abs(fb));
    cplx sum = 0.5 * (fa + fb);
    result.evaluations = 2;
    long intervals = 1;
    cplx previous = sum * (b - a);
    for (int level = 1; level <= kMaxTrapezoidLevels; ++level) {
        const double h = (b - a) / (2 * intervals);
        for (long i = 0; i < intervals; ++i) {
            const cplx v = f(a + (2 * i + 1) * h);
            sum += v;
            abs_sum += std::abs(v);
        }
        result.evaluations += static_cast<int>(intervals);
        intervals *= 2;
        const cplx current = sum * h;
        if (level >= 3 && accepted(current, previous, abs_sum * h, rel_tol)) {
            result.value = current;
            result.last_change = std::abs(current - previous);
            return result;
        }
        previous = current;
    }
    throw ConvergenceFailure("trapezoid refinement did not reach tolerance " +
                             std::to_string(rel_tol));
}

}  // namespace

IntegrationResult integrate(const ComplexIntegrand& f, double a, double b, QuadratureRule rule,
                            double rel_tol) {
    if (a == b) return {};
    if (b < a) {
        IntegrationResult r = integrate(f, b, a, rule, rel_tol);
        r.value = -r.value;
        return r;
    }
    return rule == QuadratureRule::trapezoid ? integrate_trapezoid(f, a, b, rel_tol)
                                             : integrate_gl(f, a, b, rel_tol);
}

}  // namespace hq
