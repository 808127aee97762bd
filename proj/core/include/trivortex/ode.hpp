#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "trivortex/errors.hpp"

namespace trivortex {

enum class StepStatus { Continue, Stop };

enum class OdeOutcome { Completed, StoppedByObserver, NonFinite, StepUnderflow };

/// Embedded Dormand-Prince 5(4) pair with PI-free standard step control.
/// The observer sees every accepted step and may stop the run; invariant
/// monitoring and event handling live in the callers.
class AdaptiveRK {
  public:
    using Rhs = std::function<void(double t, const std::vector<double>& y, std::vector<double>& dy)>;
    using Observer = std::function<StepStatus(double t, const std::vector<double>& y)>;

    explicit AdaptiveRK(Rhs rhs) : rhs_(std::move(rhs)) {}

    /// Integrates y in place from t0 to t1 (either direction). The observer
    /// is invoked at t0 and after each accepted step.
    OdeOutcome run(std::vector<double>& y, double t0, double t1, double tol,
                   const Observer& observe) const {
        const double dir = (t1 >= t0) ? 1.0 : -1.0;
        double t = t0;
        const std::size_t n = y.size();
        std::vector<double> k[7], ytmp(n), y5(n), y4(n);
        for (auto& v : k) v.assign(n, 0.0);

        if (observe && observe(t, y) == StepStatus::Stop) return OdeOutcome::StoppedByObserver;
        if (t == t1) return OdeOutcome::Completed;

        double h = dir * std::min(std::abs(t1 - t0), initial_step(y, t0, tol, dir));
        const double hmin = 1e-14 * std::max(std::abs(t0), std::abs(t1)) + 1e-300;
        rhs_(t, y, k[0]);

        for (long step = 0; step < max_steps_; ++step) {
            if (std::abs(h) < hmin) return OdeOutcome::StepUnderflow;
            if (dir * (t + h - t1) > 0.0) h = t1 - t;

            for (int s = 1; s < 7; ++s) {
                for (std::size_t i = 0; i < n; ++i) {
                    double acc = 0.0;
                    for (int j = 0; j < s; ++j) acc += A[s][j] * k[j][i];
                    ytmp[i] = y[i] + h * acc;
                }
                rhs_(t + C[s] * h, ytmp, k[s]);
            }
            double err = 0.0;
            bool finite = true;
            for (std::size_t i = 0; i < n; ++i) {
                double s5 = 0.0, s4 = 0.0;
                for (int j = 0; j < 7; ++j) {
                    s5 += B5[j] * k[j][i];
                    s4 += B4[j] * k[j][i];
                }
                y5[i] = y[i] + h * s5;
                y4[i] = y[i] + h * s4;
                if (!std::isfinite(y5[i])) finite = false;
                const double sc = tol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                const double e = (y5[i] - y4[i]) / sc;
                err += e * e;
            }
            err = std::sqrt(err / static_cast<double>(n));
            if (!finite) {
                h *= 0.25;
                if (std::abs(h) < hmin) return OdeOutcome::NonFinite;
                continue;
            }
            if (err <= 1.0) {
                t += h;
                y = y5;
                rhs_(t, y, k[0]);  // FSAL not exploited; recompute for clarity
                if (observe && observe(t, y) == StepStatus::Stop)
                    return OdeOutcome::StoppedByObserver;
                if (dir * (t - t1) >= 0.0) return OdeOutcome::Completed;
            }
            const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
            h *= fac;
        }
        throw IntegrationError("AdaptiveRK: step budget exhausted");
    }

    void set_max_steps(long n) { max_steps_ = n; }

  private:
    double initial_step(const std::vector<double>& y, double t0, double tol, double dir) const {
        std::vector<double> dy(y.size());
        rhs_(t0, y, dy);
        double ny = 0.0, nd = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            ny = std::max(ny, std::abs(y[i]));
            nd = std::max(nd, std::abs(dy[i]));
        }
        (void)dir;
        if (nd <= 0.0) return 1e-3;
        return std::max(1e-12, 0.01 * std::max(ny, 1.0) / nd * std::pow(tol / 1e-6, 0.25));
    }

    static constexpr double C[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double A[7][6] = {
        {0, 0, 0, 0, 0, 0},
        {1.0 / 5, 0, 0, 0, 0, 0},
        {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
        {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
        {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static constexpr double B5[7] = {35.0 / 384,       0.0,         500.0 / 1113, 125.0 / 192,
                                     -2187.0 / 6784, 11.0 / 84, 0.0};
    static constexpr double B4[7] = {5179.0 / 57600,  0.0,          7571.0 / 16695, 393.0 / 640,
                                     -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    Rhs rhs_;
    long max_steps_ = 50'000'000;
};

}  // namespace trivortex
