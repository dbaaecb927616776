#include "oracles/exact_riemann.hpp"

#include <cmath>
#include <stdexcept>

namespace oracles {

namespace {

double sound_speed(const GasState& s, double gamma) { return std::sqrt(gamma * s.p / s.rho); }

// f_K(p) and its derivative for one side
void wave_function(double p, const GasState& k, double gamma, double& f, double& df) {
    const double a = sound_speed(k, gamma);
    if (p > k.p) { // shock
        const double A = 2.0 / ((gamma + 1.0) * k.rho);
        const double B = (gamma - 1.0) / (gamma + 1.0) * k.p;
        const double root = std::sqrt(A / (p + B));
        f = (p - k.p) * root;
        df = root * (1.0 - 0.5 * (p - k.p) / (p + B));
    } else { // rarefaction
        const double pr = p / k.p;
        f = 2.0 * a / (gamma - 1.0) * (std::pow(pr, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
        df = std::pow(pr, -(gamma + 1.0) / (2.0 * gamma)) / (k.rho * a);
    }
}

} // namespace

ExactRiemann::ExactRiemann(GasState left, GasState right, double gamma)
    : left_(left), right_(right), gamma_(gamma) {
    const double aL = sound_speed(left_, gamma_);
    const double aR = sound_speed(right_, gamma_);

    // two-rarefaction initial guess
    const double z = (gamma_ - 1.0) / (2.0 * gamma_);
    double p = std::pow((aL + aR - 0.5 * (gamma_ - 1.0) * (right_.u - left_.u)) /
                            (aL / std::pow(left_.p, z) + aR / std::pow(right_.p, z)),
                        1.0 / z);
    p = std::max(p, 1e-12 * std::min(left_.p, right_.p));

    for (int it = 0; it < 100; ++it) {
        double fl, dfl, fr, dfr;
        wave_function(p, left_, gamma_, fl, dfl);
        wave_function(p, right_, gamma_, fr, dfr);
        const double g = fl + fr + (right_.u - left_.u);
        const double dp = g / (dfl + dfr);
        double p_new = p - dp;
        if (p_new <= 0.0) p_new = 0.5 * p;
        if (std::fabs(p_new - p) < 1e-14 * p_new) {
            p = p_new;
            break;
        }
        p = p_new;
    }
    p_star_ = p;
    double fl, dfl, fr, dfr;
    wave_function(p, left_, gamma_, fl, dfl);
    wave_function(p, right_, gamma_, fr, dfr);
    u_star_ = 0.5 * (left_.u + right_.u) + 0.5 * (fr - fl);
}

GasState ExactRiemann::sample(double xi) const {
    const double g = gamma_;
    const double beta = (g - 1.0) / (g + 1.0);

    if (xi < u_star_) {
        const GasState& K = left_;
        const double a = sound_speed(K, g);
        if (p_star_ > K.p) { // left shock
            const double S = K.u - a * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / K.p +
                                                 (g - 1.0) / (2.0 * g));
            if (xi < S) return K;
            const double rho = K.rho * ((p_star_ / K.p + beta) / (beta * p_star_ / K.p + 1.0));
            return GasState{rho, u_star_, p_star_};
        }
        const double a_star = a * std::pow(p_star_ / K.p, (g - 1.0) / (2.0 * g));
        const double head = K.u - a;
        const double tail = u_star_ - a_star;
        if (xi < head) return K;
        if (xi > tail) {
            const double rho = K.rho * std::pow(p_star_ / K.p, 1.0 / g);
            return GasState{rho, u_star_, p_star_};
        }
        // inside the left fan
        const double u = (2.0 / (g + 1.0)) * (a + (g - 1.0) / 2.0 * K.u + xi);
        const double c = (2.0 / (g + 1.0)) * (a + (g - 1.0) / 2.0 * (K.u - xi));
        const double rho = K.rho * std::pow(c / a, 2.0 / (g - 1.0));
        return GasState{rho, u, K.p * std::pow(c / a, 2.0 * g / (g - 1.0))};
    }

    const GasState& K = right_;
    const double a = sound_speed(K, g);
    if (p_star_ > K.p) { // right shock
        const double S = K.u + a * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / K.p +
                                             (g - 1.0) / (2.0 * g));
        if (xi > S) return K;
        const double rho = K.rho * ((p_star_ / K.p + beta) / (beta * p_star_ / K.p + 1.0));
        return GasState{rho, u_star_, p_star_};
    }
    const double a_star = a * std::pow(p_star_ / K.p, (g - 1.0) / (2.0 * g));
    const double head = K.u + a;
    const double tail = u_star_ + a_star;
    if (xi > head) return K;
    if (xi < tail) {
        const double rho = K.rho * std::pow(p_star_ / K.p, 1.0 / g);
        return GasState{rho, u_star_, p_star_};
    }
    const double u = (2.0 / (g + 1.0)) * (-a + (g - 1.0) / 2.0 * K.u + xi);
    const double c = (2.0 / (g + 1.0)) * (a - (g - 1.0) / 2.0 * (K.u - xi));
    const double rho = K.rho * std::pow(c / a, 2.0 / (g - 1.0));
    return GasState{rho, u, K.p * std::pow(c / a, 2.0 * g / (g - 1.0))};
}

} // namespace oracles
