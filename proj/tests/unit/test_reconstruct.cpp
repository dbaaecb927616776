#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mixkin/errors.hpp"
#include "mixkin/reconstruct.hpp"

using namespace mixkin;

namespace {

std::vector<double> random_row(int n, unsigned seed, double offset = 2.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = offset + dist(rng);
    return v;
}

} // namespace

TEST_CASE("shift kernel identities") {
    SUBCASE("theta = 0 weights") {
        for (int degree : {2, 4}) {
            const ShiftKernel k = make_shift_kernel(0.0, degree);
            const double expect_alpha[5] = {1.0, 0.0, 1.0 / 24.0, 0.0, 1.0 / 1920.0};
            for (int l = 0; l <= degree; ++l) {
                CHECK(k.alpha[static_cast<std::size_t>(l)] ==
                      doctest::Approx(expect_alpha[l]).epsilon(1e-15));
                CHECK(k.beta[static_cast<std::size_t>(l)] == doctest::Approx(0.0).epsilon(1e-15));
            }
        }
    }
    SUBCASE("partition of unity at l = 0") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const double theta = dist(rng);
            const ShiftKernel k = make_shift_kernel(theta, 4);
            CHECK(k.alpha[0] + k.beta[0] == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
    SUBCASE("closed form") {
        const double theta = 0.3125;
        const double s = 2.0 * theta - 1.0;
        const ShiftKernel k = make_shift_kernel(theta, 4);
        double fact = 1.0;
        for (int l = 0; l <= 4; ++l) {
            fact *= (l + 1);
            const double denom = std::pow(2.0, l + 1) * fact;
            CHECK(k.alpha[static_cast<std::size_t>(l)] ==
                  doctest::Approx((1.0 - std::pow(s, l + 1)) / denom).epsilon(1e-14));
            CHECK(k.beta[static_cast<std::size_t>(l)] ==
                  doctest::Approx((std::pow(s, l + 1) - std::pow(-1.0, l + 1)) / denom)
                      .epsilon(1e-14));
        }
    }
    SUBCASE("unsupported degree") { CHECK_THROWS_AS(make_shift_kernel(0.1, 3), ConfigError); }
}

TEST_CASE("cweno: constants are reproduced") {
    for (int degree : {2, 4}) {
        std::vector<double> row(32, 0.7251);
        const PolyField f = cweno_reconstruct(row, degree, Boundary::periodic);
        for (int i = 0; i < 32; ++i) {
            CHECK(f.poly(i)[0] == doctest::Approx(0.7251).epsilon(1e-15));
            for (int l = 1; l <= degree; ++l) CHECK(std::fabs(f.poly(i)[l]) <= 1e-15);
        }
    }
}

TEST_CASE("cweno: cell averages are conserved for random data") {
    for (int degree : {2, 4}) {
        for (Boundary bc : {Boundary::periodic, Boundary::freeflow}) {
            const auto row = random_row(48, 99);
            const PolyField f = cweno_reconstruct(row, degree, bc);
            for (int i = 0; i < 48; ++i) {
                CHECK(f.cell_average(i) ==
                      doctest::Approx(row[static_cast<std::size_t>(i)]).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("cweno: degree-k data reproduces the deconvolved polynomial") {
    // Exact inversion of the sliding average for polynomials of degree <= 4:
    // h = u - dx^2/24 u'' + 7 dx^4/5760 u''''. Amplitudes are kept small so
    // the nonlinear weights sit at their ideal values and the pure algebra
    // is visible.
    const int n = 32;
    const double dx = 1.0 / n;
    const double amp = 1e-6;

    for (int degree : {2, 4}) {
        auto u = [&](double x) {
            double val = amp * (0.3 + 1.7 * x - 0.9 * x * x);
            if (degree == 4) val += amp * (0.4 * x * x * x - 1.1 * x * x * x * x);
            return val;
        };
        auto d2u = [&](double x) {
            double val = amp * (-1.8);
            if (degree == 4) val += amp * (2.4 * x - 13.2 * x * x);
            return val;
        };
        auto d4u = [&](double) { return degree == 4 ? amp * (-26.4) : 0.0; };
        auto h = [&](double x) {
            return u(x) - dx * dx / 24.0 * d2u(x) + 7.0 * dx * dx * dx * dx / 5760.0 * d4u(x);
        };

        std::vector<double> row(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = u((i + 0.5) * dx);

        const PolyField f = cweno_reconstruct(row, degree, Boundary::freeflow);
        for (int i = 8; i < n - 8; ++i) {
            const double x_i = (i + 0.5) * dx;
            CHECK(std::fabs(f.point_eval(i, 0.25) - h(x_i + 0.25 * dx)) <= 1e-12);
            for (double theta : {0.0, 0.31, 0.77}) {
                CHECK(std::fabs(q_eval(f, i, theta) - u(x_i + theta * dx)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("q_eval: theta = 0 returns the nodal value") {
    const auto row = random_row(40, 5);
    for (int degree : {2, 4}) {
        const PolyField f = cweno_reconstruct(row, degree, Boundary::periodic);
        for (int i = 0; i < 40; ++i) {
            CHECK(std::fabs(q_eval(f, i, 0.0) - row[static_cast<std::size_t>(i)]) <= 1e-13);
        }
    }
}

TEST_CASE("q_eval: constant field is constant for any theta") {
    std::vector<double> row(24, 3.25);
    for (int degree : {2, 4}) {
        const PolyField f = cweno_reconstruct(row, degree, Boundary::periodic);
        for (double theta : {0.0, 0.12, 0.5, 0.93}) {
            CHECK(q_eval(f, 7, theta) == doctest::Approx(3.25).epsilon(1e-15));
        }
    }
}

TEST_CASE("q_eval: refinement orders on sin(pi x)") {
    const double pi = std::acos(-1.0);
    for (int degree : {2, 4}) {
        std::vector<double> errs;
        for (int nx : {40, 80, 160, 320}) {
            const double dx = 2.0 / nx;
            std::vector<double> row(static_cast<std::size_t>(nx));
            for (int i = 0; i < nx; ++i) row[static_cast<std::size_t>(i)] = std::sin(pi * (-1.0 + i * dx));
            const PolyField f = cweno_reconstruct(row, degree, Boundary::periodic);
            double err = 0.0;
            for (int i = 0; i < nx; ++i) {
                const double x = -1.0 + (i + 0.37) * dx;
                err = std::max(err, std::fabs(q_eval(f, i, 0.37) - std::sin(pi * x)));
            }
            errs.push_back(err);
        }
        const double order = std::log2(errs.front() / errs.back()) / 3.0;
        if (degree == 2) {
            CHECK(order >= 2.7);
        } else {
            CHECK(order >= 4.5);
        }
    }
}

TEST_CASE("shift_field: zero displacement is the identity") {
    const auto row = random_row(30, 17);
    for (int degree : {2, 4}) {
        const auto out = shift_field(row, 0.0, 0.1, degree, Boundary::periodic);
        CHECK(out == row);
    }
}

TEST_CASE("shift_field: whole-cell periodic shifts rotate the row") {
    const auto row = random_row(30, 21);
    const double dx = 0.05;
    for (int m : {1, -3, 7, 30, -61}) {
        const auto out = shift_field(row, m * dx, dx, 2, Boundary::periodic);
        for (int i = 0; i < 30; ++i) {
            CHECK(out[static_cast<std::size_t>(i)] ==
                  row[static_cast<std::size_t>(((i + m) % 30 + 30) % 30)]);
        }
    }
}

TEST_CASE("shift_field: periodic sums are conserved") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> disp(-8.0, 8.0);
    for (int degree : {2, 4}) {
        const auto row = random_row(64, 1000 + static_cast<unsigned>(degree));
        double sum_in = 0.0;
        for (double v : row) sum_in += v;
        for (int trial = 0; trial < 25; ++trial) {
            const double dx = 0.02;
            const auto out = shift_field(row, disp(rng) * dx, dx, degree, Boundary::periodic);
            double sum_out = 0.0;
            for (double v : out) sum_out += v;
            CHECK(sum_out == doctest::Approx(sum_in).epsilon(1e-12));
        }
    }
}

TEST_CASE("shift_field: forward then backward returns smooth data at high order") {
    const double pi = std::acos(-1.0);
    const int nx = 128;
    const double dx = 2.0 / nx;
    std::vector<double> row(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) row[static_cast<std::size_t>(i)] = 1.5 + std::sin(pi * (-1.0 + i * dx));
    for (int degree : {2, 4}) {
        const double delta = 2.63 * dx;
        const auto fwd = shift_field(row, delta, dx, degree, Boundary::periodic);
        const auto back = shift_field(fwd, -delta, dx, degree, Boundary::periodic);
        double err = 0.0;
        for (int i = 0; i < nx; ++i) {
            err = std::max(err, std::fabs(back[static_cast<std::size_t>(i)] - row[static_cast<std::size_t>(i)]));
        }
        const double bound = std::pow(dx, degree + 1) * 250.0;
        CHECK(err <= bound);
    }
}

TEST_CASE("shift_field: step stays essentially non-oscillatory") {
    const int nx = 200;
    const double dx = 0.01;
    std::vector<double> row(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) row[static_cast<std::size_t>(i)] = i < nx / 2 ? 1.0 : 0.0;
    for (int degree : {2, 4}) {
        const auto out = shift_field(row, 0.4 * dx, dx, degree, Boundary::freeflow);
        double overshoot = 0.0;
        for (double v : out) {
            overshoot = std::max(overshoot, v - 1.0);
            overshoot = std::max(overshoot, -v);
        }
        CHECK(overshoot <= 1e-2);
    }
}

TEST_CASE("shift_field: freeflow feet beyond the domain take the edge value") {
    std::vector<double> row{4.0, 3.0, 2.0, 1.0, 0.5, 0.25, 0.125, 0.0625};
    const double dx = 0.125;
    SUBCASE("large left shift") {
        const auto out = shift_field(row, -20.0 * dx, dx, 2, Boundary::freeflow);
        for (double v : out) CHECK(v == 4.0);
    }
    SUBCASE("large right shift") {
        const auto out = shift_field(row, 20.0 * dx, dx, 2, Boundary::freeflow);
        for (double v : out) CHECK(v == 0.0625);
    }
    SUBCASE("fractional shift keeps interior smooth") {
        const auto out = shift_field(row, -1.3 * dx, dx, 2, Boundary::freeflow);
        CHECK(out[0] == 4.0); // foot outside the left edge
        for (double v : out) CHECK(std::isfinite(v));
    }
}

TEST_CASE("cweno_reconstruct rejects unsupported degrees and short rows") {
    const auto row = random_row(10, 3);
    CHECK_THROWS_AS(cweno_reconstruct(row, 3, Boundary::periodic), ConfigError);
    CHECK_THROWS_AS(cweno_reconstruct(std::vector<double>{1.0, 2.0, 3.0}, 2, Boundary::periodic),
                    ConfigError);
    CHECK_THROWS_AS(cweno_reconstruct(std::vector<double>{1., 2., 3., 4., 5.}, 4, Boundary::periodic),
                    ConfigError);
}
