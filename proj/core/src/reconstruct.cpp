#include "mixkin/reconstruct.hpp"

#include <cmath>
#include <string>

#include "mixkin/errors.hpp"

namespace mixkin {

namespace {

#ifndef MIXKIN_WENO_EPS2
#define MIXKIN_WENO_EPS2 1e-6
#endif
#ifndef MIXKIN_WENO_EPS4
#define MIXKIN_WENO_EPS4 1e-6
#endif
constexpr double kWenoEps2 = MIXKIN_WENO_EPS2; // weight regularization, 3-point
constexpr double kWenoEps4 = MIXKIN_WENO_EPS4; // weight regularization, 5-point
constexpr double kFact[5] = {1.0, 1.0, 2.0, 6.0, 24.0};

// Jiang-Shu smoothness of a polynomial in scaled cell coordinates,
// sum_m int_{-1/2}^{1/2} (d^m P / ds^m)^2 ds. The dx powers of the usual
// definition cancel exactly in this scaling.
inline double smoothness2(double p1, double p2) {
    return p1 * p1 + (13.0 / 3.0) * p2 * p2;
}

inline double smoothness4(double p1, double p2, double p3, double p4) {
    return p1 * p1 + 0.5 * p1 * p3 + (13.0 / 3.0) * p2 * p2 + (21.0 / 5.0) * p2 * p4 +
           (3129.0 / 80.0) * p3 * p3 + (87617.0 / 140.0) * p4 * p4;
}

// CWENO23: lateral linears, central parabola, ideal weights (1/4, 1/4, 1/2).
inline void cweno23_cell(const double* w, double* coef) {
    const double a = w[-1], b = w[0], c = w[1];
    const double dl = b - a;
    const double dr = c - b;
    const double dd = dr - dl;
    const double q1c = 0.5 * (c - a);

    const double is_l = dl * dl;
    const double is_r = dr * dr;
    const double is_c = smoothness2(q1c, dd);

    double al = 0.25 / ((kWenoEps2 + is_l) * (kWenoEps2 + is_l));
    double ar = 0.25 / ((kWenoEps2 + is_r) * (kWenoEps2 + is_r));
    double ac = 0.50 / ((kWenoEps2 + is_c) * (kWenoEps2 + is_c));
    const double inv = 1.0 / (al + ar + ac);
    al *= inv;
    ar *= inv;
    ac *= inv;

    // central candidate (P_opt - sum c_k P_k)/c_c = {b - dd/12, q1c, dd}
    coef[0] = b - ac * dd / 12.0;
    coef[1] = al * dl + ar * dr + ac * q1c;
    coef[2] = ac * dd;
}

// CWENO35: three lateral quadratics, central quartic, ideal weights
// (1/6, 1/6, 1/6, 1/2).
inline void cweno35_cell(const double* w, double* coef) {
    const double a = w[-2], b = w[-1], c = w[0], d = w[1], e = w[2];

    const double q1_1 = 0.5 * (a - 4.0 * b + 3.0 * c);
    const double q2_1 = 0.5 * (a - 2.0 * b + c);
    const double q1_2 = 0.5 * (d - b);
    const double q2_2 = 0.5 * (b - 2.0 * c + d);
    const double q1_3 = 0.5 * (-3.0 * c + 4.0 * d - e);
    const double q2_3 = 0.5 * (c - 2.0 * d + e);

    // quartic matching all five cell averages (constant term folded into
    // the conservation identity below)
    const double p1 = (5.0 * a - 34.0 * b + 34.0 * d - 5.0 * e) / 48.0;
    const double p2 = -(a - 12.0 * b + 22.0 * c - 12.0 * d + e) / 16.0;
    const double p3 = -(a - 2.0 * b + 2.0 * d - e) / 12.0;
    const double p4 = (a - 4.0 * b + 6.0 * c - 4.0 * d + e) / 24.0;

    // central candidate 2 P_opt - (Q1 + Q2 + Q3)/3; its constant term is
    // never needed explicitly (see the conservation identity below)
    const double c1 = 2.0 * p1 - (q1_1 + q1_2 + q1_3) / 3.0;
    const double c2 = 2.0 * p2 - (q2_1 + q2_2 + q2_3) / 3.0;
    const double c3 = 2.0 * p3;
    const double c4 = 2.0 * p4;

    const double is_1 = smoothness2(q1_1, q2_1);
    const double is_2 = smoothness2(q1_2, q2_2);
    const double is_3 = smoothness2(q1_3, q2_3);
    const double is_c = smoothness4(c1, c2, c3, c4);

    const double sixth = 1.0 / 6.0;
    double a1 = sixth / ((kWenoEps4 + is_1) * (kWenoEps4 + is_1));
    double a2 = sixth / ((kWenoEps4 + is_2) * (kWenoEps4 + is_2));
    double a3 = sixth / ((kWenoEps4 + is_3) * (kWenoEps4 + is_3));
    double ac = 0.5 / ((kWenoEps4 + is_c) * (kWenoEps4 + is_c));
    const double inv = 1.0 / (a1 + a2 + a3 + ac);
    a1 *= inv;
    a2 *= inv;
    a3 *= inv;
    ac *= inv;

    // every candidate has cell average exactly c, so rebuild coef[0] from
    // that identity; the conservation defect then stays at rounding level
    coef[2] = a1 * q2_1 + a2 * q2_2 + a3 * q2_3 + ac * c2;
    coef[4] = ac * c4;
    coef[0] = c - coef[2] / 12.0 - coef[4] / 80.0;
    coef[1] = a1 * q1_1 + a2 * q1_2 + a3 * q1_3 + ac * c1;
    coef[3] = ac * c3;
}

} // namespace

ShiftKernel make_shift_kernel(double theta, int degree) {
    if (degree != 2 && degree != 4) {
        throw ConfigError("UnsupportedDegree: reconstruction degree must be 2 or 4, got " +
                          std::to_string(degree));
    }
    ShiftKernel k;
    k.theta = theta;
    k.degree = degree;
    const double s = 2.0 * theta - 1.0;
    double spow = 1.0;  // s^(l+1)
    double sign = 1.0;  // (-1)^(l+1)
    double denom = 1.0; // 2^(l+1) (l+1)!
    for (int l = 0; l <= degree; ++l) {
        spow *= s;
        sign = -sign;
        denom *= 2.0 * (l + 1);
        k.alpha[static_cast<std::size_t>(l)] = (1.0 - spow) / denom;
        k.beta[static_cast<std::size_t>(l)] = (spow - sign) / denom;
    }
    return k;
}

double PolyField::cell_average(std::int64_t cell) const {
    const double* p = poly(cell);
    double avg = p[0];
    if (degree_ >= 2) avg += p[2] / 12.0;
    if (degree_ >= 4) avg += p[4] / 80.0;
    return avg;
}

double PolyField::point_eval(std::int64_t cell, double s) const {
    const double* p = poly(cell);
    double val = p[degree_];
    for (int l = degree_ - 1; l >= 0; --l) val = val * s + p[l];
    return val;
}

PolyField cweno_reconstruct(std::span<const double> values, int degree, Boundary bc) {
    if (degree != 2 && degree != 4) {
        throw ConfigError("UnsupportedDegree: reconstruction degree must be 2 or 4, got " +
                          std::to_string(degree));
    }
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    if (n < degree + 2) {
        throw ConfigError("cweno_reconstruct: row of length " + std::to_string(n) +
                          " shorter than degree " + std::to_string(degree) + " stencil");
    }

    const int pad = degree / 2 + 1;
    std::vector<double> padded(static_cast<std::size_t>(n + 2 * pad));
    double* w = padded.data() + pad;
    for (std::int64_t i = 0; i < n; ++i) w[i] = values[static_cast<std::size_t>(i)];
    if (bc == Boundary::periodic) {
        for (int g = 1; g <= pad; ++g) {
            w[-g] = w[n - g];
            w[n - 1 + g] = w[g - 1];
        }
    } else {
        for (int g = 1; g <= pad; ++g) {
            w[-g] = w[0];
            w[n - 1 + g] = w[n - 1];
        }
    }

    PolyField f;
    f.degree_ = degree;
    f.cells_ = static_cast<int>(n);
    f.bc_ = bc;
    const std::int64_t lo = f.lo(), hi = f.hi();
    f.coef_.resize(static_cast<std::size_t>(hi - lo) * static_cast<std::size_t>(degree + 1));

    double* coef = f.coef_.data();
    if (degree == 2) {
        for (std::int64_t c = lo; c < hi; ++c, coef += 3) cweno23_cell(w + c, coef);
    } else {
        for (std::int64_t c = lo; c < hi; ++c, coef += 5) cweno35_cell(w + c, coef);
    }
    return f;
}

double q_eval(const PolyField& field, std::int64_t cell, double theta) {
    const ShiftKernel k = make_shift_kernel(theta, field.degree());
    std::int64_t right = cell + 1;
    if (field.bc() == Boundary::periodic) {
        const std::int64_t n = field.cells();
        cell = ((cell % n) + n) % n;
        right = (cell + 1 == n) ? 0 : cell + 1;
    }
    const double* p0 = field.poly(cell);
    const double* p1 = field.poly(right);
    double val = 0.0;
    for (int l = 0; l <= field.degree(); ++l) {
        const auto lu = static_cast<std::size_t>(l);
        val += kFact[lu] * (k.alpha[lu] * p0[l] + k.beta[lu] * p1[l]);
    }
    return val;
}

void shift_field(std::span<const double> values, double displacement, double dx,
                 int degree, Boundary bc, std::span<double> out) {
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    if (out.size() != values.size()) {
        throw ConfigError("shift_field: output row length mismatch");
    }

    const double t = displacement / dx;
    double fbase = std::floor(t);
    double theta = t - fbase;
    if (theta >= 1.0) {
        fbase += 1.0;
        theta = 0.0;
    }
    // whole-cell displacements computed in floating point land a few ulps
    // off an integer; snap so they stay exact gathers
    const double snap = 4.0 * 2.220446049250313e-16 * std::max(1.0, std::fabs(t));
    if (theta <= snap) {
        theta = 0.0;
    } else if (1.0 - theta <= snap) {
        fbase += 1.0;
        theta = 0.0;
    }
    const std::int64_t base = static_cast<std::int64_t>(fbase);

    if (theta == 0.0) {
        // whole-cell shifts reduce to an index gather
        if (bc == Boundary::periodic) {
            std::int64_t c = ((base % n) + n) % n;
            for (std::int64_t i = 0; i < n; ++i) {
                out[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(c)];
                if (++c == n) c = 0;
            }
        } else {
            for (std::int64_t i = 0; i < n; ++i) {
                const std::int64_t c = std::min<std::int64_t>(std::max<std::int64_t>(i + base, 0), n - 1);
                out[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(c)];
            }
        }
        return;
    }

    const PolyField field = cweno_reconstruct(values, degree, bc);
    const ShiftKernel kern = make_shift_kernel(theta, degree);
    double wa[kMaxRecDegree + 1], wb[kMaxRecDegree + 1];
    for (int l = 0; l <= degree; ++l) {
        wa[l] = kFact[l] * kern.alpha[static_cast<std::size_t>(l)];
        wb[l] = kFact[l] * kern.beta[static_cast<std::size_t>(l)];
    }
    const std::size_t stride = static_cast<std::size_t>(degree + 1);

    if (bc == Boundary::periodic) {
        std::int64_t c = ((base % n) + n) % n;
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t c2 = (c + 1 == n) ? 0 : c + 1;
            const double* p0 = field.poly(c);
            const double* p1 = field.poly(c2);
            double val = 0.0;
            for (int l = 0; l <= degree; ++l) val += wa[l] * p0[l] + wb[l] * p1[l];
            out[static_cast<std::size_t>(i)] = val;
            if (++c == n) c = 0;
        }
    } else {
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t c = i + base;
            const double pos = static_cast<double>(c) + theta; // foot in node-index units
            if (pos < -0.5) {
                out[static_cast<std::size_t>(i)] = values[0];
            } else if (pos > static_cast<double>(n - 1) + 0.5) {
                out[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(n - 1)];
            } else {
                const double* p0 = field.poly(c);
                const double* p1 = p0 + stride;
                double val = 0.0;
                for (int l = 0; l <= degree; ++l) val += wa[l] * p0[l] + wb[l] * p1[l];
                out[static_cast<std::size_t>(i)] = val;
            }
        }
    }
}

std::vector<double> shift_field(std::span<const double> values, double displacement,
                                double dx, int degree, Boundary bc) {
    std::vector<double> out(values.size());
    shift_field(values, displacement, dx, degree, bc, out);
    return out;
}

} // namespace mixkin
