// Block-diagonal adiabatic Hamiltonian for spin s = 1 and s = 3/2:
// per-photon-manifold matrices, closed-form spectra and a Jacobi
// eigensolver fallback for the points where the closed forms degenerate.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "specfun.hpp"

namespace spinosc {

struct ModelParams {
    double omega = 1.0; // oscillator frequency
    double delta = 0.0; // qudit gap
    double lam = 0.0;   // coupling

    double lam_tilde() const { return lam / omega; }

    /// Advisory only: the adiabatic picture assumes delta << omega.
    bool outside_adiabatic_regime() const { return delta >= omega; }

    void validate() const {
        if (!(omega > 0.0)) throw std::invalid_argument("ModelParams: omega must be positive");
        if (delta < 0.0) throw std::invalid_argument("ModelParams: delta must be >= 0");
        if (!std::isfinite(lam_tilde()))
            throw std::invalid_argument("ModelParams: lambda/omega not finite");
    }
};

/// Spin sector restricted to the two supported values.
struct SpinSector {
    HalfInt s;

    explicit SpinSector(HalfInt spin) : s(spin) {
        if (s.twice != 2 && s.twice != 3)
            throw std::invalid_argument("SpinSector: only s = 1 and s = 3/2 supported");
    }
    static SpinSector spin1() { return SpinSector(half(2)); }
    static SpinSector spin3half() { return SpinSector(half(3)); }

    int dim() const { return s.twice + 1; }
    double sval() const { return s.value(); }
    /// m value of basis row i, rows ordered m = s .. -s.
    HalfInt m_of_row(int i) const { return half(s.twice - 2 * i); }
};

struct SpinMatrices {
    Eigen::MatrixXcd sx, sy, sz, sp, sm;
};

/// S_x, S_y, S_z (and ladder operators) in the |s, m> basis, m = s .. -s.
inline SpinMatrices spin_matrices(const SpinSector& sec) {
    const int d = sec.dim();
    const double s = sec.sval();
    SpinMatrices out;
    out.sp = Eigen::MatrixXcd::Zero(d, d);
    out.sz = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) out.sz(i, i) = s - i;
    for (int i = 1; i < d; ++i) {
        const double m = s - i; // S+|s,m> = sqrt((s-m)(s+m+1)) |s,m+1>
        out.sp(i - 1, i) = std::sqrt((s - m) * (s + m + 1.0));
    }
    out.sm = out.sp.adjoint();
    out.sx = 0.5 * (out.sp + out.sm);
    out.sy = cplx(0.0, -0.5) * (out.sp - out.sm);
    return out;
}

/// Scaled gap of the n-th manifold,
/// Delta_n = -(Delta / sqrt(2) omega) exp(-lt^2/2) L_n(lt^2).
inline double delta_n(const ModelParams& p, int n) {
    if (n < 0) throw std::domain_error("delta_n: n < 0");
    const double lt2 = p.lam_tilde() * p.lam_tilde();
    return -(p.delta / (std::sqrt(2.0) * p.omega)) * std::exp(-0.5 * lt2) *
           specfun::laguerre_assoc(n, 0, lt2);
}

/// n-th photonic block of the adiabatic Hamiltonian (energy units of p.omega).
inline Eigen::MatrixXcd block_hamiltonian(const SpinSector& sec, const ModelParams& p, int n) {
    if (n < 0) throw std::domain_error("block_hamiltonian: n < 0");
    const double lt = p.lam_tilde();
    const double dn = delta_n(p, n);
    Eigen::MatrixXcd h;
    if (sec.s.twice == 2) {
        h.resize(3, 3);
        h.setZero();
        h(0, 0) = n - lt * lt;
        h(1, 1) = n;
        h(2, 2) = n - lt * lt;
        h(0, 1) = h(1, 0) = dn;
        h(1, 2) = h(2, 1) = dn;
    } else {
        h.resize(4, 4);
        h.setZero();
        const double d32 = n - 2.25 * lt * lt;
        const double d12 = n - 0.25 * lt * lt;
        h(0, 0) = d32;
        h(1, 1) = d12;
        h(2, 2) = d12;
        h(3, 3) = d32;
        const double c32 = std::sqrt(1.5) * dn;
        h(0, 1) = h(1, 0) = c32;
        h(2, 3) = h(3, 2) = c32;
        h(1, 2) = h(2, 1) = std::sqrt(2.0) * dn;
    }
    return p.omega * h;
}

/// Cyclic-Jacobi eigendecomposition of a small complex Hermitian matrix.
/// Eigenvalues ascending, eigenvectors orthonormal with the
/// largest-magnitude component made real positive.
inline void hermitian_eig(const Eigen::MatrixXcd& h, Eigen::VectorXd& evals,
                          Eigen::MatrixXcd& evecs) {
    const int d = int(h.rows());
    if (h.cols() != d) throw std::invalid_argument("hermitian_eig: matrix not square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("hermitian_eig: input not Hermitian within tolerance");

    Eigen::MatrixXcd a = 0.5 * (h + h.adjoint());
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(d, d);
    const double hnorm = std::max(a.norm(), 1e-300);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) off += 2.0 * std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-13 * hnorm) break;

        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= 1e-300) continue;
                const cplx u = a(p, q) / r; // e^{i phase}
                const double app = a(p, p).real(), aqq = a(q, q).real();
                double t;
                if (app == aqq) {
                    t = 1.0;
                } else {
                    const double tau = (aqq - app) / (2.0 * r);
                    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J acts on columns (p, q): col_p' = c col_p - s conj(u) col_q,
                // col_q' = s u col_p + c col_q
                for (int i = 0; i < d; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(u) * aiq;
                    a(i, q) = s * u * aip + c * aiq;
                }
                for (int i = 0; i < d; ++i) {
                    const cplx api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * u * aqi;
                    a(q, i) = s * std::conj(u) * api + c * aqi;
                }
                for (int i = 0; i < d; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * std::conj(u) * viq;
                    v(i, q) = s * u * vip + c * viq;
                }
            }
    }

    std::vector<int> order(std::size_t(d));
    for (int i = 0; i < d; ++i) order[std::size_t(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    evals.resize(d);
    evecs.resize(d, d);
    for (int k = 0; k < d; ++k) {
        evals(k) = a(order[std::size_t(k)], order[std::size_t(k)]).real();
        evecs.col(k) = v.col(order[std::size_t(k)]);
        int imax = 0;
        evecs.col(k).cwiseAbs().maxCoeff(&imax);
        const cplx piv = evecs(imax, k);
        if (std::abs(piv) > 0.0) evecs.col(k) *= std::conj(piv) / std::abs(piv);
    }
}

/// Spectrum of one photonic block. Branch (column) order follows the
/// analytic labels: s=1 -> (0, +, -); s=3/2 -> (l=+1,k=+), (+1,-), (-1,+), (-1,-).
/// Energies are stored dimensionless (E / omega).
struct BlockSpectrum {
    int n = 0;
    Eigen::VectorXd energies;  // E / omega, branch-label order
    Eigen::MatrixXcd vectors;  // columns, basis |s,m; n_m>, rows m = s .. -s
    bool closed_form = true;   // false when the Jacobi fallback was used
    bool degenerate = false;
};

namespace detail {

inline void canonical_phase(Eigen::MatrixXcd& m) {
    for (int k = 0; k < m.cols(); ++k) {
        int imax = 0;
        m.col(k).cwiseAbs().maxCoeff(&imax);
        const cplx piv = m(imax, k);
        if (std::abs(piv) > 0.0) m.col(k) *= std::conj(piv) / std::abs(piv);
    }
}

/// closed-form energies alone (always well defined, E / omega)
inline Eigen::VectorXd closed_form_energies(const SpinSector& sec, const ModelParams& p, int n) {
    const double lt2 = p.lam_tilde() * p.lam_tilde();
    const double dn = delta_n(p, n);
    Eigen::VectorXd e(sec.dim());
    if (sec.s.twice == 2) {
        const double deltan = std::sqrt(8.0 * dn * dn + lt2 * lt2);
        e(0) = n - lt2;
        e(1) = n - 0.5 * (lt2 - deltan);
        e(2) = n - 0.5 * (lt2 + deltan);
    } else {
        int idx = 0;
        for (int l : {+1, -1}) {
            const double chi = std::sqrt(lt2 * lt2 + l * std::sqrt(2.0) * lt2 * dn + 2.0 * dn * dn);
            for (int k : {+1, -1}) e(idx++) = n - 1.25 * lt2 + l * dn / std::sqrt(2.0) + k * chi;
        }
    }
    return e;
}

} // namespace detail

inline BlockSpectrum block_spectrum(const SpinSector& sec, const ModelParams& p, int n) {
    if (n < 0) throw std::domain_error("block_spectrum: n < 0");
    p.validate();
    const double lt2 = p.lam_tilde() * p.lam_tilde();
    const double dn = delta_n(p, n);

    BlockSpectrum out;
    out.n = n;
    out.energies = detail::closed_form_energies(sec, p, n);

    bool ok = std::abs(dn) >= 1e-12;
    if (ok && sec.s.twice == 2) {
        const double deltan = std::sqrt(8.0 * dn * dn + lt2 * lt2);
        const double dminus = 8.0 * dn * dn / (deltan + lt2); // deltan - lt2, no cancellation
        const double nplus = 2.0 * deltan * (deltan + lt2);
        const double nminus = 2.0 * deltan * dminus;
        ok = nplus >= 1e-12 && nminus >= 1e-12;
        if (ok) {
            out.vectors.resize(3, 3);
            out.vectors.col(0) << 1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0);
            out.vectors.col(1) << 2.0 * dn / std::sqrt(nplus), (lt2 + deltan) / std::sqrt(nplus),
                2.0 * dn / std::sqrt(nplus);
            out.vectors.col(2) << 2.0 * dn / std::sqrt(nminus), -dminus / std::sqrt(nminus),
                2.0 * dn / std::sqrt(nminus);
        }
    } else if (ok) {
        out.vectors.resize(4, 4);
        int idx = 0;
        for (int l : {+1, -1}) {
            const double chi = std::sqrt(lt2 * lt2 + l * std::sqrt(2.0) * lt2 * dn + 2.0 * dn * dn);
            // chi - lt2 rewritten to avoid cancellation at small Delta_n
            const double chi_m_lt2 = (l * std::sqrt(2.0) * lt2 * dn + 2.0 * dn * dn) / (chi + lt2);
            for (int k : {+1, -1}) {
                const double gamma =
                    (k > 0) ? (l + std::sqrt(2.0) * (chi + lt2) / dn) / std::sqrt(3.0)
                            : (l - std::sqrt(2.0) * chi_m_lt2 / dn) / std::sqrt(3.0);
                const double norm = std::sqrt(2.0 * (1.0 + gamma * gamma));
                if (!std::isfinite(gamma) || !std::isfinite(1.0 / norm)) {
                    ok = false;
                    break;
                }
                out.vectors.col(idx) << 1.0 / norm, gamma / norm, l * gamma / norm, l / norm;
                ++idx;
            }
            if (!ok) break;
        }
    }

    if (!ok) {
        // Laguerre zero or degenerate normalization: Jacobi fallback with
        // branches matched to the nearest closed-form energy.
        Eigen::VectorXd ev;
        Eigen::MatrixXcd vec;
        hermitian_eig(block_hamiltonian(sec, p, n) / p.omega, ev, vec);
        const int d = sec.dim();
        out.vectors.resize(d, d);
        std::vector<bool> used(std::size_t(d), false);
        for (int b = 0; b < d; ++b) {
            int best = -1;
            double bestdiff = 0.0;
            for (int j = 0; j < d; ++j) {
                if (used[std::size_t(j)]) continue;
                const double diff = std::abs(ev(j) - out.energies(b));
                if (best < 0 || diff < bestdiff) {
                    best = j;
                    bestdiff = diff;
                }
            }
            used[std::size_t(best)] = true;
            out.vectors.col(b) = vec.col(best);
            out.energies(b) = ev(best);
        }
        out.closed_form = false;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (std::abs(ev(i) - ev(j)) < 1e-12) out.degenerate = true;
    }

    detail::canonical_phase(out.vectors);
    return out;
}

} // namespace spinosc
