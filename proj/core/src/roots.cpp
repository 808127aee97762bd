#include "trivortex/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace trivortex {

namespace {

using Cmplx = std::complex<double>;

std::pair<Cmplx, Cmplx> eval_with_derivative(const UniPoly<double>& p, Cmplx z) {
    Cmplx v{0.0, 0.0}, d{0.0, 0.0};
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        d = d * z + v;
        v = v * z + *it;
    }
    return {v, d};
}

std::vector<Cmplx> quadratic_roots(double a, double b, double c) {
    const Cmplx disc = std::sqrt(Cmplx(b * b - 4.0 * a * c, 0.0));
    // q-form avoids cancellation between -b and the radical
    const Cmplx q = -0.5 * (b + (b >= 0 ? 1.0 : -1.0) * disc);
    if (std::abs(q) > 0.0) return {q / a, c / q};
    return {disc / (2.0 * a), -disc / (2.0 * a)};
}

std::vector<Cmplx> cubic_roots(double a, double b, double c, double d) {
    // depressed form t^3 + p t + q, x = t - b/(3a)
    const double shift = b / (3.0 * a);
    const double p = (3.0 * a * c - b * b) / (3.0 * a * a);
    const double q = (2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a * a * a);
    std::vector<Cmplx> t;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    const double scale = std::max({std::abs(p), std::cbrt(std::abs(q)), 1e-300});
    if (std::abs(p) < 1e-14 * scale && std::abs(q) < 1e-14 * scale * scale * scale) {
        t = {0.0, 0.0, 0.0};
    } else if (disc >= 0.0) {
        // three real roots: trigonometric branch, immune to the Cardano
        // cancellation near double roots
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            t.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0));
    } else {
        const double A = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        const double u = std::cbrt(-q / 2.0 + (q <= 0 ? A : -A));
        const double u2 = (q <= 0) ? u : std::cbrt(-q / 2.0 - A);
        const double big = (q <= 0) ? u : u2;
        const double real_root = big - p / (3.0 * big);
        t.push_back(real_root);
        auto rest = quadratic_roots(1.0, real_root, real_root * real_root + p);
        t.insert(t.end(), rest.begin(), rest.end());
    }
    for (auto& z : t) z -= shift;
    return t;
}

std::vector<Cmplx> companion_roots(const UniPoly<double>& p) {
    const int n = p.degree();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    const double lead = p.leading();
    for (int k = 0; k < n; ++k) m(k, n - 1) = -p.coeff(k) / lead;
    for (int k = 1; k < n; ++k) m(k, k - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
    std::vector<Cmplx> roots(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) roots[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    return roots;
}

void snap_real(std::vector<Cmplx>& roots) {
    for (auto& z : roots) {
        const double scale = std::max(1.0, std::abs(z));
        if (std::abs(z.imag()) < 1e-12 * scale) z = Cmplx(z.real(), 0.0);
    }
    std::sort(roots.begin(), roots.end(), [](const Cmplx& a, const Cmplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

}  // namespace

std::complex<double> newton_polish(const UniPoly<double>& p, Cmplx z, int max_iter) {
    Cmplx best = z;
    double best_abs = std::abs(p.eval(z));
    for (int it = 0; it < max_iter; ++it) {
        auto [v, d] = eval_with_derivative(p, z);
        if (std::abs(d) == 0.0) break;
        const Cmplx step = v / d;
        z -= step;
        const double now = std::abs(p.eval(z));
        if (now < best_abs) {
            best_abs = now;
            best = z;
        }
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    return best;
}

std::vector<Cmplx> poly_roots(const UniPoly<double>& p) {
    const int n = p.degree();
    if (n < 1) throw PreconditionError("poly_roots: degree must be at least 1");
    std::vector<Cmplx> roots;
    switch (n) {
        case 1:
            roots = {Cmplx(-p.coeff(0) / p.coeff(1), 0.0)};
            break;
        case 2:
            roots = quadratic_roots(p.coeff(2), p.coeff(1), p.coeff(0));
            break;
        case 3:
            roots = cubic_roots(p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0));
            break;
        default:
            roots = companion_roots(p);
            break;
    }
    for (auto& z : roots) z = newton_polish(p, z);
    snap_real(roots);
    return roots;
}

std::vector<Cmplx> poly_roots(const UniPoly<Rational>& p) { return poly_roots(to_double_poly(p)); }

std::vector<double> poly_real_roots(const UniPoly<double>& p) {
    std::vector<double> out;
    for (const auto& z : poly_roots(p))
        if (z.imag() == 0.0) out.push_back(z.real());
    return out;
}

}  // namespace trivortex
