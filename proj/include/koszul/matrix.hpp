#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "koszul/localring.hpp"

namespace koszul {

// Dense matrix over the local ring.
class LMatrix {
  public:
    LMatrix() = default;
    LMatrix(RingCtx R, int rows, int cols);

    static LMatrix identity(const RingCtx &R, int n);
    static LMatrix zero(const RingCtx &R, int rows, int cols) { return LMatrix(R, rows, cols); }
    static LMatrix diagonal(const RingCtx &R, const std::vector<LocalScalar> &d);
    static LMatrix scalar(const RingCtx &R, int n, const LocalScalar &c);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const RingCtx &ring() const { return ring_; }

    LocalScalar &at(int i, int j) { return a_.at(size_t(i) * cols_ + j); }
    const LocalScalar &at(int i, int j) const { return a_.at(size_t(i) * cols_ + j); }

    LMatrix operator*(const LMatrix &o) const;
    LMatrix operator+(const LMatrix &o) const;
    LMatrix operator-(const LMatrix &o) const;
    LMatrix operator-() const;
    LMatrix scaled(const LocalScalar &c) const;
    LMatrix transposed() const;

    bool equals(const LMatrix &o) const;
    bool operator==(const LMatrix &o) const { return equals(o); }
    bool is_zero() const;
    bool is_identity() const;

    LMatrix block(int r0, int c0, int nr, int nc) const;
    static LMatrix hstack(const LMatrix &l, const LMatrix &r);
    static LMatrix vstack(const LMatrix &t, const LMatrix &b);
    static LMatrix block_diag(const LMatrix &a, const LMatrix &b);
    std::vector<LocalScalar> col(int j) const;

    LMatrix map(const std::function<LocalScalar(const LocalScalar &)> &fn) const;
    LMatrix subst_zero_var(int v) const;
    LMatrix reduced() const;

  private:
    RingCtx ring_;
    int rows_ = 0, cols_ = 0;
    std::vector<LocalScalar> a_;
};

// Determinant and adjugate with M * adj == det * I (also for singular M).
LocalScalar det(const LMatrix &M);
std::pair<LocalScalar, LMatrix> det_adj(const LMatrix &M);

// Inverse of a matrix whose determinant is a unit.
LMatrix inverse_unit(const LMatrix &M);

// Exact solve M y = b over the local ring; SingularMatrix when det == 0,
// nullopt when the unique fraction-field solution leaves the ring.
std::optional<std::vector<LocalScalar>> solve_in_local(const LMatrix &M,
                                                       const std::vector<LocalScalar> &b);
// Columnwise version: solves M Y = B.
std::optional<LMatrix> solve_in_local_matrix(const LMatrix &M, const LMatrix &B);

// P * M * Q = diag(I_{r-k}, f * I_k) with P, Q invertible over the ring.
struct EquivalenceForm {
    LMatrix P, Pinv, Q, Qinv;
    int k = 0;
};
EquivalenceForm local_equivalence_form(const LMatrix &M, int fvar);

// Rank over the fraction field.
int rank_fraction_field(const LMatrix &M);

// Reduction at the origin (residue field) and plain linear algebra there.
struct QMat {
    int rows = 0, cols = 0;
    BaseField field;
    std::vector<Rat> a;
    Rat &at(int i, int j) { return a.at(size_t(i) * cols + j); }
    const Rat &at(int i, int j) const { return a.at(size_t(i) * cols + j); }
};
QMat residue(const LMatrix &M);
int rank_residue(QMat M);
// Greedy basis extension over the residue field: returns column indices of B
// that extend the column space of A to full rank, or nullopt.
std::optional<std::vector<int>> extend_column_basis(const QMat &A, const QMat &B);
// A maximal independent set of columns over the residue field.
std::vector<int> independent_columns(const QMat &M);

// Smith normal form over the one-variable local ring (a DVR):
// U * M * V = D with D diagonal of the form x^e * unit, e ascending.
struct SmithL1 {
    LMatrix U, Uinv, V, Vinv, D;
    std::vector<int> val; // valuations of the diagonal, one per diagonal slot
};
SmithL1 smith_l1(const LMatrix &M, int xvar);

// Exact solve over the DVR via Smith form (M may be rectangular); nullopt when
// b is not in the image.
std::optional<std::vector<LocalScalar>> solve_l1(const LMatrix &M, const std::vector<LocalScalar> &b,
                                                 int xvar);

// Order of vanishing at the origin of a one-variable scalar (reduced form).
int valuation_l1(const LocalScalar &s, int xvar);

} // namespace koszul
