#include "cpq/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace cpq {

CMat::CMat(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw Error(ErrorCode::InvalidArgument, "negative matrix dimension");
    a_.assign(static_cast<size_t>(rows) * cols, Scalar(0.0));
}

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::diag(const std::vector<Scalar>& entries) {
    CMat m(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
    for (size_t i = 0; i < entries.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = entries[i];
    return m;
}

CMat CMat::operator+(const CMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error(ErrorCode::Dimension, "shape mismatch in matrix sum");
    CMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

CMat CMat::operator-(const CMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error(ErrorCode::Dimension, "shape mismatch in matrix difference");
    CMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

CMat CMat::operator*(const CMat& o) const {
    if (cols_ != o.rows_)
        throw Error(ErrorCode::Dimension, "shape mismatch in matrix product");
    CMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Scalar aik = (*this)(i, k);
            if (aik == Scalar(0.0)) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    }
    return r;
}

CMat CMat::operator*(Scalar s) const {
    CMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

CMat CMat::adjoint() const {
    CMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMat CMat::transpose() const {
    CMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Scalar CMat::trace() const {
    if (!square()) throw Error(ErrorCode::Dimension, "trace of non-square matrix");
    Scalar t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMat::frobenius() const {
    double s = 0.0;
    for (const Scalar& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

bool CMat::all_finite() const {
    for (const Scalar& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Scalar aij = a(i, j);
            if (aij == Scalar(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

CMat swap_op(int dim_a, int dim_b) {
    if (dim_a < 1 || dim_b < 1)
        throw Error(ErrorCode::InvalidArgument, "swap_op requires positive dimensions");
    CMat r(dim_a * dim_b, dim_a * dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int k = 0; k < dim_b; ++k) r(k * dim_a + i, i * dim_b + k) = 1.0;
    return r;
}

CMat cyclic_shift(int dim_single, int count) {
    if (dim_single < 1 || count < 1)
        throw Error(ErrorCode::InvalidArgument, "cyclic_shift requires positive arguments");
    long total = 1;
    for (int i = 0; i < count; ++i) total *= dim_single;
    CMat r(static_cast<int>(total), static_cast<int>(total));
    const long tail = total / dim_single;  // dim of slots 2..count
    for (long a = 0; a < dim_single; ++a)
        for (long rest = 0; rest < tail; ++rest) {
            const long in = a * tail + rest;
            const long out = rest * dim_single + a;
            r(static_cast<int>(out), static_cast<int>(in)) = 1.0;
        }
    return r;
}

CMat partial_trace_first(const CMat& m, int dim_aux, int dim_rest) {
    if (!m.square() || m.rows() != dim_aux * dim_rest)
        throw Error(ErrorCode::Dimension, "partial_trace_first dimension mismatch");
    CMat r(dim_rest, dim_rest);
    for (int a = 0; a < dim_aux; ++a)
        for (int i = 0; i < dim_rest; ++i)
            for (int j = 0; j < dim_rest; ++j) r(i, j) += m(a * dim_rest + i, a * dim_rest + j);
    return r;
}

CMat solve(const CMat& a, const CMat& b) {
    if (!a.square()) throw Error(ErrorCode::Dimension, "solve requires a square matrix");
    if (a.rows() != b.rows()) throw Error(ErrorCode::Dimension, "solve: rhs row mismatch");
    const int n = a.rows();
    const double threshold = 1e-13 * a.frobenius();
    CMat lu = a;
    CMat x = b;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(lu(col, col));
        for (int i = col + 1; i < n; ++i) {
            const double v = std::abs(lu(i, col));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= threshold)
            throw Error(ErrorCode::Singular, "singular matrix in solve (pivot " +
                                                 std::to_string(best) + ")",
                        best);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
            for (int j = 0; j < x.cols(); ++j) std::swap(x(col, j), x(piv, j));
        }
        const Scalar d = lu(col, col);
        for (int i = col + 1; i < n; ++i) {
            const Scalar f = lu(i, col) / d;
            if (f == Scalar(0.0)) continue;
            lu(i, col) = 0.0;
            for (int j = col + 1; j < n; ++j) lu(i, j) -= f * lu(col, j);
            for (int j = 0; j < x.cols(); ++j) x(i, j) -= f * x(col, j);
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        const Scalar d = lu(col, col);
        for (int j = 0; j < x.cols(); ++j) {
            Scalar acc = x(col, j);
            for (int k = col + 1; k < n; ++k) acc -= lu(col, k) * x(k, j);
            x(col, j) = acc / d;
        }
    }
    if (!x.all_finite()) throw Error(ErrorCode::Singular, "non-finite solve result");
    return x;
}

CMat inverse(const CMat& a) { return solve(a, CMat::identity(a.rows())); }

CompareReport approx_eq(const CMat& a, const CMat& b, Tolerance tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::Dimension, "approx_eq shape mismatch");
    CompareReport rep;
    rep.residual = (a - b).frobenius();
    rep.bound = tol.abs + tol.rel * std::max(a.frobenius(), b.frobenius());
    rep.ok = rep.residual <= rep.bound;
    return rep;
}

double rel_residual(const CMat& a, const CMat& b) {
    const double scale = std::max({a.frobenius(), b.frobenius(), 1e-300});
    return (a - b).frobenius() / scale;
}

namespace {

// Cyclic complex Jacobi diagonalization of a Hermitian matrix; returns the
// eigenvalues (unsorted).
std::vector<double> hermitian_eigenvalues(CMat h) {
    const int n = h.rows();
    const double scale = std::max(h.frobenius(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(h(p, q));
        if (std::sqrt(off) <= 1e-15 * scale) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Scalar hpq = h(p, q);
                const double apq = std::abs(hpq);
                if (apq <= 1e-300) continue;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const Scalar phase = hpq / apq;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Plane unitary J = diag(1, conj(phase)) * [[c, s], [-s, c]]
                // restricted to (p,q); update h <- J^H h J.
                for (int i = 0; i < n; ++i) {
                    const Scalar hip = h(i, p);
                    const Scalar hiq = h(i, q);
                    h(i, p) = c * hip - s * std::conj(phase) * hiq;
                    h(i, q) = s * hip + c * std::conj(phase) * hiq;
                }
                for (int j = 0; j < n; ++j) {
                    const Scalar hpj = h(p, j);
                    const Scalar hqj = h(q, j);
                    h(p, j) = c * hpj - s * phase * hqj;
                    h(q, j) = s * hpj + c * phase * hqj;
                }
                h(p, q) = std::conj(h(q, p));
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = h(i, i).real();
    return ev;
}

}  // namespace

std::vector<double> singular_values(const CMat& a) {
    const CMat h = a.adjoint() * a;
    std::vector<double> ev = hermitian_eigenvalues(h);
    for (double& v : ev) v = std::sqrt(std::max(v, 0.0));
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

int numeric_rank(const CMat& a, double rel_gap) {
    const std::vector<double> sv = singular_values(a);
    if (sv.empty() || sv[0] <= 0.0) return 0;
    int rank = 0;
    for (double v : sv)
        if (v > rel_gap * sv[0]) ++rank;
    return rank;
}

double commutator_norm(const CMat& a, const CMat& b) { return (a * b - b * a).frobenius(); }

}  // namespace cpq
