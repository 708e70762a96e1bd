#pragma once

// Gamma-function constants of the projection-average bound: ball volumes,
// sphere areas, the needle constant r_k, and the dimensional constant
// d! kappa_d / (n! kappa_n). Every shipped constant has two independent
// evaluation routes; constants_table() reports both with their gap.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixvol {

/// Gamma function by the g=7, 9-term Lanczos approximation, with the
/// reflection formula below 0.5. Relative error is ~1e-14 on [0.5, 50].
inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("gamma_fn: argument must be positive");
    static constexpr double g = 7.0;
    static constexpr double coeff[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    double a = coeff[0];
    for (int i = 1; i < 9; ++i) a += coeff[i] / (z + i);
    const double t = z + g + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

inline double factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Surface measure of S^{k-1}, i.e. 2 pi^{k/2} / Gamma(k/2).
inline double sphere_area(int k) {
    if (k < 1) throw std::invalid_argument("sphere_area: k must be >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * k) / gamma_fn(0.5 * k);
}

/// Volume of the unit ball B^k; equals sphere_area(k)/k by construction.
inline double ball_volume(int k) {
    if (k < 1) throw std::invalid_argument("ball_volume: k must be >= 1");
    return sphere_area(k) / k;
}

/// The needle constant r_k = Gamma(k/2) / (sqrt(pi) (k-1) Gamma((k-1)/2)).
/// Equals ball_volume(k-1) / sphere_area(k).
inline double r_constant(int k) {
    if (k < 2) throw std::invalid_argument("r_constant: k must be >= 2");
    return gamma_fn(0.5 * k) /
           (std::sqrt(std::numbers::pi) * (k - 1) * gamma_fn(0.5 * (k - 1)));
}

/// d! Vol(B^d) / (n! Vol(B^n)), the constant of the segment-average form.
inline double theorem_constant(int d, int n) {
    if (!(1 <= d && d < n)) throw std::invalid_argument("theorem_constant: need 1 <= d < n");
    return factorial(d) * ball_volume(d) / (factorial(n) * ball_volume(n));
}

/// Closed form of the same constant via the duplication formula:
/// (1/(2 sqrt(pi)))^{n-d} Gamma((d+1)/2) / Gamma((n+1)/2).
inline double theorem_constant_closed_form(int d, int n) {
    if (!(1 <= d && d < n)) throw std::invalid_argument("theorem_constant: need 1 <= d < n");
    return std::pow(0.5 / std::sqrt(std::numbers::pi), n - d) * gamma_fn(0.5 * (d + 1)) /
           gamma_fn(0.5 * (n + 1));
}

/// One row of the self-test table: a constant computed two independent ways.
struct ConstantReport {
    std::string name;
    double value = 0.0;
    double alternate_value = 0.0;
    double relative_gap = 0.0;

    static ConstantReport of(std::string name, double value, double alternate) {
        ConstantReport r;
        r.name = std::move(name);
        r.value = value;
        r.alternate_value = alternate;
        r.relative_gap = std::abs(value - alternate) / std::max(std::abs(value), 1e-300);
        return r;
    }
};

/// Product r_{d+1} ... r_n against its closed form
/// Gamma(n/2) Gamma(d) / (pi^{(n-d)/2} Gamma(d/2) Gamma(n)).
inline ConstantReport r_product_identity(int d, int n) {
    if (!(1 <= d && d < n && n <= 30))
        throw std::invalid_argument("r_product_identity: need 1 <= d < n <= 30");
    double prod = 1.0;
    for (int k = d + 1; k <= n; ++k) prod *= r_constant(k);
    const double closed = gamma_fn(0.5 * n) * gamma_fn(static_cast<double>(d)) /
                          (std::pow(std::numbers::pi, 0.5 * (n - d)) * gamma_fn(0.5 * d) *
                           gamma_fn(static_cast<double>(n)));
    char name[64];
    std::snprintf(name, sizeof(name), "r_product(d=%d,n=%d)", d, n);
    return ConstantReport::of(name, prod, closed);
}

/// All shipped two-route identities, for the `constants` command and the
/// constants acceptance gate.
inline std::vector<ConstantReport> constants_table(int max_n = 10) {
    std::vector<ConstantReport> out;
    char name[64];
    for (int k = 2; k <= max_n; ++k) {
        std::snprintf(name, sizeof(name), "r_%d vs VolB%d/VolS%d", k, k - 1, k - 1);
        out.push_back(ConstantReport::of(name, r_constant(k),
                                         ball_volume(k - 1) / sphere_area(k)));
    }
    for (int n = 2; n <= max_n; ++n)
        for (int d = 1; d < n; ++d) {
            std::snprintf(name, sizeof(name), "d!K_d/(n!K_n)(d=%d,n=%d)", d, n);
            out.push_back(ConstantReport::of(name, theorem_constant(d, n),
                                             theorem_constant_closed_form(d, n)));
        }
    for (int n = 2; n <= max_n; ++n)
        for (int d = 1; d < n; ++d) out.push_back(r_product_identity(d, n));
    for (int n = 2; n <= max_n; ++n)
        for (int d = 1; d < n; ++d) {
            double prod = 1.0;
            for (int k = d + 1; k <= n; ++k) prod *= r_constant(k);
            std::snprintf(name, sizeof(name), "r_product=const(d=%d,n=%d)", d, n);
            out.push_back(ConstantReport::of(name, prod, theorem_constant(d, n)));
        }
    for (int k = 2; k <= max_n; ++k) {
        std::snprintf(name, sizeof(name), "r_%d*K_%d=K_%d/%d", k, k, k - 1, k);
        const double lhs = r_constant(k) * ball_volume(k);
        const double rhs = (k >= 2 ? ball_volume(k - 1) : 1.0) / k;
        out.push_back(ConstantReport::of(name, lhs, rhs));
    }
    // duplication formula Gamma(2z) = 2^{2z-1/2}/sqrt(2 pi) Gamma(z) Gamma(z+1/2)
    for (double z : {0.75, 1.0, 2.25, 3.7, 11.5}) {
        std::snprintf(name, sizeof(name), "duplication(z=%.2f)", z);
        const double rhs = std::pow(2.0, 2.0 * z - 0.5) / std::sqrt(2.0 * std::numbers::pi) *
                           gamma_fn(z) * gamma_fn(z + 0.5);
        out.push_back(ConstantReport::of(name, gamma_fn(2.0 * z), rhs));
    }
    return out;
}

}  // namespace mixvol
