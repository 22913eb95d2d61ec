// Independent reference implementations used only by the tests. These stay
// deliberately naive (extended precision, brute-force sums) so they share no
// code path with the library.

#pragma once

#include <complex>
#include <vector>
#include <cmath>

#include <Eigen/Dense>

namespace oracle {

using cplxl = std::complex<long double>;

inline long double factl(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline long double binoml(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0.0L;
    return factl(n) / (factl(k) * factl(n - k));
}

// explicit sum  L_n^k(x) = sum_l (-1)^l / l! C(n+k, n-l) x^l
// evaluated in quad precision; the alternating sum cancels heavily for x > 1
inline long double laguerre_sum(int n, int k, long double x) {
    __float128 s = 0, xp = 1, xq = (__float128)x;
    for (int l = 0; l <= n; ++l) {
        __float128 f = 1;
        for (int i = 2; i <= l; ++i) f *= i;
        __float128 bin = 1;
        for (int i = 1; i <= n - l; ++i) bin = bin * (__float128)(k + l + i) / (__float128)i;
        s += ((l % 2 == 0) ? 1 : -1) * bin * xp / f;
        xp *= xq;
    }
    return (long double)s;
}

// H_n coefficients out of exp(2zt - t^2) = sum_n H_n(z) t^n / n!
inline cplxl hermite_series(int n, cplxl z) {
    cplxl s = 0.0L;
    for (int j = 0; 2 * j <= n; ++j) {
        cplxl pw = 1.0L;
        for (int i = 0; i < n - 2 * j; ++i) pw *= 2.0L * z;
        s += ((j % 2 == 0) ? 1.0L : -1.0L) / (factl(j) * factl(n - 2 * j)) * pw;
    }
    return s * factl(n);
}

// term-by-term Jacobi sum in long double
inline long double jacobi_sum(int l, int a, int b, long double x) {
    long double s = 0.0L;
    for (int k = 0; k <= l; ++k) {
        long double t = binoml(l + a, l - k) * binoml(l + b, k);
        for (int i = 0; i < k; ++i) t *= (x - 1.0L) / 2.0L;
        for (int i = 0; i < l - k; ++i) t *= (x + 1.0L) / 2.0L;
        s += t;
    }
    return s;
}

// Racah sum with naive long double factorials; doubled arguments
inline long double racah_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    if (tm1 + tm2 + tm3 != 0) return 0.0L;
    if (tj3 < std::abs(tj1 - tj2) || tj3 > tj1 + tj2) return 0.0L;
    if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0L;
    auto f = [](int twice) { return factl(twice / 2); };
    long double delta = std::sqrt(f(tj1 + tj2 - tj3) * f(tj1 - tj2 + tj3) *
                                  f(-tj1 + tj2 + tj3) / f(tj1 + tj2 + tj3 + 2));
    long double pre = std::sqrt(f(tj1 + tm1) * f(tj1 - tm1) * f(tj2 + tm2) * f(tj2 - tm2) *
                                f(tj3 + tm3) * f(tj3 - tm3));
    long double s = 0.0L;
    for (int t = 0; t <= (tj1 + tj2 + tj3) / 2; ++t) {
        int a1 = (tj1 + tj2 - tj3) / 2 - t;
        int a2 = (tj1 - tm1) / 2 - t;
        int a3 = (tj2 + tm2) / 2 - t;
        int a4 = (tj3 - tj2 + tm1) / 2 + t;
        int a5 = (tj3 - tj1 - tm2) / 2 + t;
        if (a1 < 0 || a2 < 0 || a3 < 0 || a4 < 0 || a5 < 0) continue;
        long double term = 1.0L / (factl(t) * factl(a1) * factl(a2) * factl(a3) * factl(a4) *
                                   factl(a5));
        s += (t % 2 == 0) ? term : -term;
    }
    int ph = (tj1 - tj2 - tm3) / 2;
    long double sign = (((ph % 2) + 2) % 2 == 0) ? 1.0L : -1.0L;
    return sign * delta * pre * s;
}

// series exp(A) for small matrices
inline Eigen::MatrixXcd mat_exp_series(const Eigen::MatrixXcd& a) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k < 120; ++k) {
        term = (term * a) / double(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    return sum;
}

// spin matrices in the |s, m> basis ordered m = s..-s (doubled spin)
inline void spin_xyz(int ts, Eigen::MatrixXcd& sx, Eigen::MatrixXcd& sy, Eigen::MatrixXcd& sz) {
    int d = ts + 1;
    double s = 0.5 * ts;
    Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(d, d);
    sz = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) sz(i, i) = s - i;
    for (int i = 1; i < d; ++i) {
        double m = s - i; // S+ |s,m> = sqrt((s-m)(s+m+1)) |s,m+1>
        sp(i - 1, i) = std::sqrt((s - m) * (s + m + 1.0));
    }
    Eigen::MatrixXcd sm = sp.adjoint();
    sx = 0.5 * (sp + sm);
    sy = std::complex<double>(0, -0.5) * (sp - sm);
}

// Gauss-Legendre x trapezoid quadrature over the sphere
template <typename F>
double sphere_quad(F&& f, int ntheta, int nphi) {
    std::vector<double> x(ntheta), w(ntheta);
    // Newton iteration on Legendre polynomials, independent coding
    for (int i = 0; i < ntheta; ++i) {
        double xi = std::cos(M_PI * (i + 0.75) / (ntheta + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = xi;
            for (int l = 2; l <= ntheta; ++l) {
                double p2 = ((2.0 * l - 1.0) * xi * p1 - (l - 1.0) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            double dp = ntheta * (xi * p1 - p0) / (xi * xi - 1.0);
            double dx = p1 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) {
                w[std::size_t(i)] = 2.0 / ((1.0 - xi * xi) * dp * dp);
                break;
            }
        }
        x[std::size_t(i)] = xi;
    }
    double total = 0.0;
    for (int i = 0; i < ntheta; ++i) {
        double theta = std::acos(x[std::size_t(i)]);
        double inner = 0.0;
        for (int j = 0; j < nphi; ++j) inner += f(theta, 2.0 * M_PI * j / nphi);
        total += w[std::size_t(i)] * inner * 2.0 * M_PI / nphi;
    }
    return total;
}

} // namespace oracle
