#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpq {

using Scalar = std::complex<double>;

enum class ErrorCode {
    InvalidArgument,
    Dimension,
    Degenerate,
    Singular,
    Budget,
    Config,
    Internal,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& msg, double detail = 0.0)
        : std::runtime_error(msg), code_(code), detail_(detail) {}

    ErrorCode code() const { return code_; }

    // For Singular errors this carries the smallest pivot / singular value
    // estimate observed before giving up.
    double detail() const { return detail_; }

  private:
    ErrorCode code_;
    double detail_;
};

// Dense complex matrix, row-major. Every operator-valued quantity in the
// library lives in one of these; dimensions stay small (N <= 9, chains of a
// few sites), so there is no attempt at sparsity or blocking.
class CMat {
  public:
    CMat() : rows_(0), cols_(0) {}
    CMat(int rows, int cols);

    static CMat identity(int n);
    static CMat diag(const std::vector<Scalar>& entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<Scalar>& data() const { return a_; }

    CMat operator+(const CMat& o) const;
    CMat operator-(const CMat& o) const;
    CMat operator*(const CMat& o) const;
    CMat operator*(Scalar s) const;
    CMat operator-() const { return (*this) * Scalar(-1.0); }

    CMat adjoint() const;
    CMat transpose() const;

    Scalar trace() const;
    double frobenius() const;
    bool all_finite() const;

  private:
    int rows_, cols_;
    std::vector<Scalar> a_;
};

inline CMat operator*(Scalar s, const CMat& m) { return m * s; }

struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-12;
};

struct CompareReport {
    bool ok = false;
    double residual = 0.0;
    double bound = 0.0;
};

// Kronecker product with (i,k) row-major composite indexing, so that the left
// factor is the outer (most significant) tensor slot.
CMat kron(const CMat& a, const CMat& b);

// Permutation matrix A (x) B -> B (x) A.
CMat swap_op(int dim_a, int dim_b);

// Permutation on dim^count slots sending a (x) b_1 (x) ... (x) b_{count-1}
// to b_1 (x) ... (x) b_{count-1} (x) a.
CMat cyclic_shift(int dim_single, int count);

// Trace over the first tensor slot of an operator on (aux (x) rest).
CMat partial_trace_first(const CMat& m, int dim_aux, int dim_rest);

// x with a*x = b via partially pivoted elimination. Throws ErrorCode::Singular
// (carrying the offending pivot magnitude) when a pivot falls below
// 1e-13 * ||a||_F.
CMat solve(const CMat& a, const CMat& b);
CMat inverse(const CMat& a);

// ||a-b||_F <= tol.abs + tol.rel * max(||a||_F, ||b||_F)
CompareReport approx_eq(const CMat& a, const CMat& b, Tolerance tol = {});

// ||a-b||_F / max(||a||_F, ||b||_F, tiny); the workhorse residual for all
// identity certification.
double rel_residual(const CMat& a, const CMat& b);

// Singular values in descending order (Jacobi on a^H a; fine at these sizes).
std::vector<double> singular_values(const CMat& a);

// Number of singular values above rel_gap * sigma_max.
int numeric_rank(const CMat& a, double rel_gap = 1e-6);

double commutator_norm(const CMat& a, const CMat& b);

}  // namespace cpq
