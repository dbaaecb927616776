#ifndef MIXKIN_TESTS_EXACT_RIEMANN_HPP
#define MIXKIN_TESTS_EXACT_RIEMANN_HPP

// Exact solver for the gamma-law Riemann problem, used as an independent
// oracle for the Euler reference solvers. Star-region pressure by Newton
// iteration on the standard two-wave function, then self-similar sampling.

namespace oracles {

struct GasState {
    double rho;
    double u;
    double p;
};

class ExactRiemann {
public:
    ExactRiemann(GasState left, GasState right, double gamma);

    double star_pressure() const { return p_star_; }
    double star_velocity() const { return u_star_; }

    /// Solution at similarity coordinate xi = (x - x0) / t.
    GasState sample(double xi) const;

    /// True when xi lies left of the contact (composition from the left
    /// initial state).
    bool left_of_contact(double xi) const { return xi < u_star_; }

private:
    GasState left_, right_;
    double gamma_;
    double p_star_ = 0.0, u_star_ = 0.0;
};

} // namespace oracles

#endif
