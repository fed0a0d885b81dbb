#include "blowup/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace blowup {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr int kSeriesCap = 10000;
constexpr double kSeriesTol = 1e-16;
// c - a - b closer than this to an integer takes the logarithmic branch.
constexpr double kIntegerSnap = 1e-10;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::nearbyint(x);
}

// sin(πx) with exact zeros at the integers.
double sin_pi(double x) {
    const double n = std::nearbyint(x);
    const double r = x - n;
    const double v = std::sin(kPi * r);
    return (static_cast<long long>(n) % 2 == 0) ? v : -v;
}

// ln Γ(x) for x >= 0.5.
double lanczos_log_gamma(double x) {
    x -= 1.0;
    double acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (x + static_cast<double>(i));
    const double t = x + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(acc);
}

struct SignedLog {
    double log_abs = 0.0;
    int sign = 1;
    bool zero = false;  // a reciprocal gamma factor hit a pole
};

// Accumulates products/quotients of gamma functions in log space.
class GammaRatio {
public:
    GammaRatio& mul(double x) {
        int sg = 1;
        acc_.log_abs += log_abs_gamma(x, sg);
        acc_.sign *= sg;
        return *this;
    }
    GammaRatio& div(double x) {
        if (is_nonpositive_integer(x)) {
            acc_.zero = true;
            return *this;
        }
        int sg = 1;
        acc_.log_abs -= log_abs_gamma(x, sg);
        acc_.sign *= sg;
        return *this;
    }
    double value() const { return acc_.zero ? 0.0 : acc_.sign * std::exp(acc_.log_abs); }

private:
    SignedLog acc_;
};

// Defining power series; terminates exactly when a or b is a nonpositive integer.
double series_2f1(double a, double b, double c, double z) {
    double term = 1.0;
    double sum = 1.0;
    int small_run = 0;
    for (int n = 0; n < kSeriesCap; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        if (term == 0.0) return sum;
        sum += term;
        if (std::abs(term) <= kSeriesTol * std::abs(sum)) {
            if (++small_run >= 2) return sum;
        } else {
            small_run = 0;
        }
    }
    throw ConvergenceError("gauss_2f1: series did not converge within " + std::to_string(kSeriesCap) +
                           " terms");
}

// 2F1(a, b; a+b+m; 1-w) for integer m >= 0 and w in (0, 1/2].
double log_case_2f1(double a, double b, int m, double w) {
    const double c = a + b + m;
    double finite = 0.0;
    if (m > 0) {
        double term = 1.0;
        double sum = 1.0;
        for (int n = 0; n + 1 < m; ++n) {
            const double dn = static_cast<double>(n);
            term *= (a + dn) * (b + dn) / ((dn + 1.0) * (1.0 - m + dn)) * w;
            sum += term;
        }
        finite = GammaRatio().mul(m).mul(c).div(a + m).div(b + m).value() * sum;
    }

    const double log_w = std::log(w);
    double psi_n1 = digamma(1.0);
    double psi_nm1 = digamma(m + 1.0);
    double psi_a = digamma(a + m);
    double psi_b = digamma(b + m);
    // (a+m)_n (b+m)_n / (n! (n+m)!) w^n, starting from 1/m!
    double coef = std::exp(-std::lgamma(m + 1.0));
    double sum = 0.0;
    int small_run = 0;
    int n = 0;
    for (; n < kSeriesCap; ++n) {
        const double term = coef * (log_w - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum += term;
        if (coef == 0.0) break;
        if (std::abs(term) <= kSeriesTol * std::abs(sum) && n > 2) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
        const double dn = static_cast<double>(n);
        coef *= (a + m + dn) * (b + m + dn) / ((dn + 1.0) * (dn + m + 1.0)) * w;
        psi_n1 += 1.0 / (dn + 1.0);
        psi_nm1 += 1.0 / (dn + m + 1.0);
        psi_a += 1.0 / (a + m + dn);
        psi_b += 1.0 / (b + m + dn);
    }
    if (n >= kSeriesCap) throw ConvergenceError("gauss_2f1: logarithmic series did not converge");
    const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;
    const double log_part = -sign_m * std::pow(w, m) * GammaRatio().mul(c).div(a).div(b).value() * sum;
    return finite + log_part;
}

// 2F1(a, b; c; z) with z in [0, 1) and w = 1 - z supplied exactly.
double positive_2f1(double a, double b, double c, double z, double w) {
    if (z <= 0.5 || is_nonpositive_integer(a) || is_nonpositive_integer(b)) return series_2f1(a, b, c, z);

    const double m_real = c - a - b;
    const double m_round = std::nearbyint(m_real);
    if (std::abs(m_real - m_round) > kIntegerSnap) {
        const double first = GammaRatio().mul(c).mul(m_real).div(c - a).div(c - b).value();
        const double second = GammaRatio().mul(c).mul(-m_real).div(a).div(b).value();
        double out = 0.0;
        if (first != 0.0) out += first * series_2f1(a, b, 1.0 - m_real, w);
        if (second != 0.0) out += second * std::pow(w, m_real) * series_2f1(c - a, c - b, 1.0 + m_real, w);
        return out;
    }
    const int m = static_cast<int>(m_round);
    if (m >= 0) return log_case_2f1(a, b, m, w);
    // Euler: F(a,b;c;z) = w^{c-a-b} F(c-a, c-b; c; z), which flips the sign of m.
    const double ea = c - a;
    const double eb = c - b;
    if (is_nonpositive_integer(ea) || is_nonpositive_integer(eb))
        return std::pow(w, m_real) * series_2f1(ea, eb, c, z);
    return std::pow(w, m_real) * log_case_2f1(ea, eb, -m, w);
}

void check_hyper_params(double c) {
    if (!std::isfinite(c) || is_nonpositive_integer(c))
        throw std::domain_error("gauss_2f1: c must not be zero or a negative integer");
}

}  // namespace

void OperatorParams::validate() const {
    if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("operator: a must satisfy a >= 0");
    if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("operator: b must satisfy b > 0");
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("operator: s must lie in (0, 1)");
    if (N < 1) throw std::invalid_argument("operator: N must be a positive integer");
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
    if (x < 0.5) return lanczos_log_gamma(x + 1.0) - std::log(x);
    return lanczos_log_gamma(x);
}

double log_abs_gamma(double x, int& sign) {
    if (is_nonpositive_integer(x)) throw std::domain_error("gamma: pole at nonpositive integer");
    if (x > 0.0) {
        sign = 1;
        return log_gamma(x);
    }
    // Reflection: Γ(x) Γ(1-x) = π / sin(πx).
    const double sp = sin_pi(x);
    sign = sp > 0.0 ? 1 : -1;
    return std::log(kPi) - std::log(std::abs(sp)) - log_gamma(1.0 - x);
}

double gamma_fn(double x) {
    int sign = 1;
    const double l = log_abs_gamma(x, sign);
    return sign * std::exp(l);
}

double reciprocal_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    int sign = 1;
    const double l = log_abs_gamma(x, sign);
    return sign * std::exp(-l);
}

double abs_gamma_negative(double x) {
    if (!(x > -1.0 && x < 0.0)) throw std::domain_error("abs_gamma_negative: argument must lie in (-1, 0)");
    return std::abs(std::exp(log_gamma(x + 1.0)) / x);
}

double digamma(double x) {
    if (is_nonpositive_integer(x)) throw std::domain_error("digamma: pole at nonpositive integer");
    if (x < 0.0) {
        // ψ(1-x) - ψ(x) = π cot(πx)
        const double n = std::nearbyint(x);
        const double cot = std::cos(kPi * (x - n)) / std::sin(kPi * (x - n));
        return digamma(1.0 - x) - kPi * cot;
    }
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double tail =
        inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 / 132))));
    return acc + std::log(x) - 0.5 * inv - tail;
}

double gauss_2f1(const HyperParams& p) { return gauss_2f1(p.a, p.b, p.c, p.z); }

double gauss_2f1(double a, double b, double c, double z) {
    check_hyper_params(c);
    if (!(z < 1.0)) throw std::domain_error("gauss_2f1: argument must satisfy z < 1");
    if (z == 0.0) return 1.0;
    if (std::abs(z) <= 0.5) return series_2f1(a, b, c, z);
    if (z > 0.0) return positive_2f1(a, b, c, z, 1.0 - z);
    // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)). Keep a polynomial
    // parameter in the first slot so the transformed series still terminates.
    if (is_nonpositive_integer(b) && !is_nonpositive_integer(a)) std::swap(a, b);
    const double one_minus_z = 1.0 - z;
    const double zt = z / (z - 1.0);
    return std::pow(one_minus_z, -a) * positive_2f1(a, c - b, c, zt, 1.0 / one_minus_z);
}

double gauss_2f1_complement(double a, double b, double c, double w) {
    check_hyper_params(c);
    if (!(w > 0.0 && w <= 1.0)) throw std::domain_error("gauss_2f1_complement: w must lie in (0, 1]");
    if (w == 1.0) return 1.0;
    return positive_2f1(a, b, c, 1.0 - w, w);
}

double frac_constant(int N, double s) {
    OperatorParams{0.0, 1.0, s, N}.validate();
    const double log_c = 2.0 * s * std::log(2.0) + log_gamma(0.5 * (N + 2.0 * s)) -
                         0.5 * N * std::log(kPi) - std::log(abs_gamma_negative(-s));
    return std::exp(log_c);
}

double frac_constant(const OperatorParams& params) {
    params.validate();
    return frac_constant(params.N, params.s);
}

double psi_mass(double beta, int N) {
    if (N < 1) throw std::invalid_argument("psi_mass: N must be a positive integer");
    if (!(beta > 0.5 * N)) throw std::domain_error("psi_mass: beta must exceed N/2 for a finite mass");
    return std::exp(0.5 * N * std::log(kPi) + log_gamma(beta - 0.5 * N) - log_gamma(beta));
}

double unit_sphere_area(int N) {
    if (N < 1) throw std::invalid_argument("unit_sphere_area: N must be a positive integer");
    return 2.0 * std::exp(0.5 * N * std::log(kPi) - log_gamma(0.5 * N));
}

}  // namespace blowup
