// Special functions and rotation-group kernels.
//
// All factorial ratios are evaluated in log space with separate sign
// tracking; half-integer angular momenta are carried as doubled integers
// so selection rules stay exact.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spinosc {

using cplx = std::complex<double>;

/// Half-integer angular momentum stored as twice its value.
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int tw) : twice(tw) {}

    double value() const { return 0.5 * twice; }
    bool is_integer() const { return twice % 2 == 0; }

    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
};

constexpr HalfInt half(int twice) { return HalfInt(twice); }

namespace specfun {

namespace detail {

inline const std::vector<double>& log_factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(4097);
        // exact in double up to 20!, lgamma beyond
        double f = 1.0;
        for (int n = 0; n <= 20; ++n) {
            t[n] = std::log(f);
            f *= n + 1.0;
        }
        for (std::size_t n = 21; n < t.size(); ++n) t[n] = std::lgamma(double(n) + 1.0);
        return t;
    }();
    return table;
}

} // namespace detail

/// ln(n!), relative error below 1e-14; exact for n <= 20.
inline double log_factorial(int n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    const auto& t = detail::log_factorial_table();
    if (std::size_t(n) < t.size()) return t[std::size_t(n)];
    return std::lgamma(double(n) + 1.0);
}

/// Binomial coefficient C(n, k) for n >= 0; zero outside 0 <= k <= n.
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n <= 60) { // exact product form for small n
        double r = 1.0;
        k = std::min(k, n - k);
        for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
        return r;
    }
    return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

/// Associated Laguerre polynomial L_n^k(x) by upward recurrence in n.
/// Negative integer k >= -n is reduced through
/// L_n^{-j}(x) = (-x)^j (n-j)!/n! L_{n-j}^{j}(x).
inline double laguerre_assoc(int n, int k, double x) {
    if (n < 0) throw std::domain_error("laguerre_assoc: n < 0");
    if (k < -n) throw std::domain_error("laguerre_assoc: k < -n");
    if (k < 0) {
        const int j = -k;
        double scale = std::exp(log_factorial(n - j) - log_factorial(n));
        double pw = 1.0;
        for (int i = 0; i < j; ++i) pw *= -x;
        return pw * scale * laguerre_assoc(n - j, j, x);
    }
    long double lm1 = 0.0L, l = 1.0L, xl = x;
    for (int i = 0; i < n; ++i) {
        long double lp1 = ((2.0L * i + k + 1.0L - xl) * l - (i + k) * lm1) / (i + 1.0L);
        lm1 = l;
        l = lp1;
    }
    return double(l);
}

/// Physicists' Hermite polynomial H_n(z), complex argument.
inline cplx hermite(int n, cplx z) {
    if (n < 0) throw std::domain_error("hermite: n < 0");
    cplx hm1 = 0.0, h = 1.0;
    for (int i = 0; i < n; ++i) {
        cplx hp1 = 2.0 * z * h - 2.0 * double(i) * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

/// Generalized binomial C(t, k) = t(t-1)...(t-k+1)/k!, any integer t.
inline double binomial_general(int t, int k) {
    if (k < 0) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= double(t - i) / double(i + 1);
    return r;
}

/// Jacobi polynomial P_l^{a,b}(x) from the explicit binomial sum
///   sum_k C(l+a, l-k) C(l+b, k) ((x-1)/2)^k ((x+1)/2)^{l-k}.
/// Integer a, b may be negative; generalized binomials keep the sum defined.
inline double jacobi(int l, int a, int b, double x) {
    if (l < 0) throw std::domain_error("jacobi: l < 0");
    const double xm = 0.5 * (x - 1.0);
    const double xp = 0.5 * (x + 1.0);
    double sum = 0.0;
    for (int k = 0; k <= l; ++k) {
        double term = binomial_general(l + a, l - k) * binomial_general(l + b, k);
        if (term == 0.0) continue;
        for (int i = 0; i < k; ++i) term *= xm;
        for (int i = 0; i < l - k; ++i) term *= xp;
        sum += term;
    }
    return sum;
}

/// Associated Legendre P_l^m(x) with the Condon-Shortley (-1)^m factor,
/// m >= 0, by the (m,m) -> (m+1,m) -> upward-in-l recurrence.
inline double legendre_assoc(int l, int m, double x) {
    if (m < 0 || m > l) throw std::domain_error("legendre_assoc: need 0 <= m <= l");
    const double s2 = std::max(0.0, 1.0 - x * x);
    double pmm = 1.0;
    if (m > 0) {
        const double sx = std::sqrt(s2);
        double fact = 1.0;
        for (int i = 0; i < m; ++i) {
            pmm *= -fact * sx;
            fact += 2.0;
        }
    }
    if (l == m) return pmm;
    double pm1 = pmm;
    double p = x * (2.0 * m + 1.0) * pmm;
    for (int ll = m + 2; ll <= l; ++ll) {
        double pn = ((2.0 * ll - 1.0) * x * p - (ll + m - 1.0) * pm1) / double(ll - m);
        pm1 = p;
        p = pn;
    }
    return p;
}

/// Spherical harmonic Y_lm(theta, phi); for m < 0 via (-1)^m Y_{l,-m}^*.
inline cplx spherical_harmonic(int l, int m, double theta, double phi) {
    if (l < 0 || std::abs(m) > l) throw std::domain_error("spherical_harmonic: bad (l, m)");
    if (m < 0) {
        cplx y = spherical_harmonic(l, -m, theta, phi);
        double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        return sgn * std::conj(y);
    }
    double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI)) *
                  std::exp(0.5 * (log_factorial(l - m) - log_factorial(l + m)));
    double plm = legendre_assoc(l, m, std::cos(theta));
    return norm * plm * std::polar(1.0, m * phi);
}

namespace detail {

inline bool triangle_ok(int tja, int tjb, int tjc) {
    return tjc >= std::abs(tja - tjb) && tjc <= tja + tjb && (tja + tjb + tjc) % 2 == 0;
}

} // namespace detail

/// Wigner 3j symbol; all arguments doubled (2j, 2m). Returns 0 whenever a
/// selection rule fails. Racah single-sum in log-factorial arithmetic.
inline double wigner3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    if (tm1 + tm2 + tm3 != 0) return 0.0;
    if (tj1 < 0 || tj2 < 0 || tj3 < 0) return 0.0;
    if (!detail::triangle_ok(tj1, tj2, tj3)) return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
    if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0) return 0.0;

    // all of these are integers by the checks above
    const int jpm1 = (tj1 + tm1) / 2, jmm1 = (tj1 - tm1) / 2;
    const int jpm2 = (tj2 + tm2) / 2, jmm2 = (tj2 - tm2) / 2;
    const int jpm3 = (tj3 + tm3) / 2, jmm3 = (tj3 - tm3) / 2;
    const int jjj1 = (tj1 + tj2 - tj3) / 2;
    const int jjj2 = (tj1 - tj2 + tj3) / 2;
    const int jjj3 = (-tj1 + tj2 + tj3) / 2;
    const int jsum = (tj1 + tj2 + tj3) / 2;

    const double log_pref =
        0.5 * (log_factorial(jjj1) + log_factorial(jjj2) + log_factorial(jjj3) -
               log_factorial(jsum + 1) + log_factorial(jpm1) + log_factorial(jmm1) +
               log_factorial(jpm2) + log_factorial(jmm2) + log_factorial(jpm3) +
               log_factorial(jmm3));

    const int t_lo = std::max({0, jmm1 - jjj2, jpm2 - jjj3});
    const int t_hi = std::min({jjj1, jmm1, jpm2});
    double sum = 0.0;
    for (int t = t_lo; t <= t_hi; ++t) {
        double log_den = log_factorial(t) + log_factorial(jjj1 - t) + log_factorial(jmm1 - t) +
                         log_factorial(jpm2 - t) + log_factorial(jjj2 - jmm1 + t) +
                         log_factorial(jjj3 - jpm2 + t);
        double term = std::exp(log_pref - log_den);
        sum += (t % 2 == 0) ? term : -term;
    }
    const int phase = (tj1 - tj2 - tm3) / 2;
    return ((phase % 2 + 2) % 2 == 0) ? sum : -sum;
}

/// Reduced Wigner rotation matrix d^j_{m'm}(b), doubled indices, via the
/// Jacobi-polynomial formula. Index pairs outside the region m'+m >= 0,
/// m'-m >= 0 are mapped in by d^j_{m'm} = d^j_{-m,-m'} and
/// d^j_{m'm} = (-1)^{m'-m} d^j_{mm'}.
inline double wigner_d_small(int tj, int tmp, int tm, double beta) {
    if (std::abs(tmp) > tj || std::abs(tm) > tj)
        throw std::domain_error("wigner_d_small: |m| > j");
    if ((tj + tmp) % 2 != 0 || (tj + tm) % 2 != 0)
        throw std::domain_error("wigner_d_small: m, j parity mismatch");

    double sign = 1.0;
    int a = tmp, b = tm;
    if (a + b < 0) {
        int na = -b, nb = -a;
        a = na;
        b = nb;
    }
    if (a - b < 0) {
        std::swap(a, b);
        if (((a - b) / 2) % 2 != 0) sign = -sign;
    }
    const int mm_plus = (a + b) / 2;  // m'+m >= 0
    const int mm_minus = (a - b) / 2; // m'-m >= 0
    const int l = (tj - a) / 2;       // j-m'

    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);
    double pref = std::exp(0.5 * (log_factorial((tj + a) / 2) + log_factorial((tj - a) / 2) -
                                  log_factorial((tj + b) / 2) - log_factorial((tj - b) / 2)));
    double cw = 1.0, sw = 1.0;
    for (int i = 0; i < mm_plus; ++i) cw *= c;
    for (int i = 0; i < mm_minus; ++i) sw *= s;
    return sign * pref * cw * sw * jacobi(l, mm_minus, mm_plus, std::cos(beta));
}

/// Terminating hypergeometric sum 2F0(-n, -m;; x), summed
/// largest-magnitude-term first with Kahan compensation.
inline double hyp2f0_terminating(int n, int m, double x) {
    if (n < 0 || m < 0) throw std::domain_error("hyp2f0_terminating: negative order");
    const int kmax = std::min(n, m);
    std::array<double, 64> stack_terms;
    std::vector<double> heap_terms;
    double* terms = stack_terms.data();
    if (kmax + 1 > int(stack_terms.size())) {
        heap_terms.resize(std::size_t(kmax) + 1);
        terms = heap_terms.data();
    }
    double t = 1.0;
    terms[0] = t;
    for (int k = 0; k < kmax; ++k) {
        t *= double(-(n - k)) * double(-(m - k)) * x / double(k + 1);
        terms[k + 1] = t;
    }
    std::sort(terms, terms + kmax + 1,
              [](double p, double q) { return std::abs(p) > std::abs(q); });
    double sum = 0.0, comp = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        double y = terms[k] - comp;
        double v = sum + y;
        comp = (v - sum) - y;
        sum = v;
    }
    return sum;
}

/// Displacement-operator matrix element G_{mn}(X) = <m|D(X)|n>.
inline cplx displacement_elem(int m, int n, cplx X) {
    if (m < 0 || n < 0) throw std::domain_error("displacement_elem: negative index");
    if (X == 0.0) return (m == n) ? 1.0 : 0.0;
    const double x2 = std::norm(X);
    const double gauss = -0.5 * x2;
    if (m >= n) {
        double logr = gauss + 0.5 * (log_factorial(n) - log_factorial(m));
        cplx pw = 1.0;
        for (int i = 0; i < m - n; ++i) pw *= X;
        return std::exp(logr) * pw * laguerre_assoc(n, m - n, x2);
    }
    double logr = gauss + 0.5 * (log_factorial(m) - log_factorial(n));
    cplx pw = 1.0;
    for (int i = 0; i < n - m; ++i) pw *= -std::conj(X);
    return std::exp(logr) * pw * laguerre_assoc(m, n - m, x2);
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::domain_error("gauss_legendre: n < 1");
    nodes.assign(std::size_t(n), 0.0);
    weights.assign(std::size_t(n), 0.0);
    const int mhalf = (n + 1) / 2;
    for (int i = 0; i < mhalf; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int l = 2; l <= n; ++l) {
                double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / double(l);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[std::size_t(i)] = -x;
        nodes[std::size_t(n - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[std::size_t(i)] = w;
        weights[std::size_t(n - 1 - i)] = w;
    }
}

/// Gauss-Hermite nodes and weights for weight exp(-x^2) (Newton on H_n,
/// ascending nodes). Intended for moderate n (< 350).
inline void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::domain_error("gauss_hermite: n < 1");
    nodes.assign(std::size_t(n), 0.0);
    weights.assign(std::size_t(n), 0.0);
    // orthonormal-Hermite recurrence keeps values in range
    auto eval = [n](double x, double& h, double& dh) {
        double p0 = std::pow(M_PI, -0.25), p1 = std::sqrt(2.0) * x * p0;
        for (int l = 2; l <= n; ++l) {
            double p2 = x * std::sqrt(2.0 / l) * p1 - std::sqrt((l - 1.0) / l) * p0;
            p0 = p1;
            p1 = p2;
        }
        h = p1;
        dh = std::sqrt(2.0 * n) * p0;
    };
    const int mhalf = (n + 1) / 2;
    double x = 0.0;
    for (int i = 0; i < mhalf; ++i) {
        // Stroud-Secrest style initial guesses, largest root first
        if (i == 0)
            x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            x -= 1.14 * std::pow(double(n), 0.426) / x;
        else if (i == 2)
            x = 1.86 * x - 0.86 * nodes[std::size_t(n - 1)];
        else if (i == 3)
            x = 1.91 * x - 0.91 * nodes[std::size_t(n - 2)];
        else
            x = 2.0 * x - nodes[std::size_t(n - i + 1)];
        double h = 0.0, dh = 1.0;
        for (int it = 0; it < 200; ++it) {
            eval(x, h, dh);
            double dx = h / dh;
            x -= dx;
            if (std::abs(dx) < 1e-14 * (1.0 + std::abs(x))) break;
        }
        eval(x, h, dh);
        nodes[std::size_t(n - 1 - i)] = x;
        nodes[std::size_t(i)] = -x;
        double w = 2.0 / (dh * dh);
        weights[std::size_t(n - 1 - i)] = w;
        weights[std::size_t(i)] = w;
    }
    if (n % 2 == 1) nodes[std::size_t(n / 2)] = 0.0;
}

} // namespace specfun
} // namespace spinosc
