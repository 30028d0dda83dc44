#include "koszul/matrix.hpp"

#include <algorithm>

namespace koszul {

LMatrix::LMatrix(RingCtx R, int rows, int cols) : ring_(std::move(R)), rows_(rows), cols_(cols) {
    a_.assign(size_t(rows) * cols, LocalScalar::zero(ring_));
}

LMatrix LMatrix::identity(const RingCtx &R, int n) {
    LMatrix m(R, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = LocalScalar::one(R);
    return m;
}

LMatrix LMatrix::diagonal(const RingCtx &R, const std::vector<LocalScalar> &d) {
    LMatrix m(R, int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m.at(i, i) = d[i];
    return m;
}

LMatrix LMatrix::scalar(const RingCtx &R, int n, const LocalScalar &c) {
    LMatrix m(R, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
}

LMatrix LMatrix::operator*(const LMatrix &o) const {
    if (cols_ != o.rows_) throw ShapeMismatch("matrix product shape mismatch");
    LMatrix r(ring_, rows_, o.cols_);
    std::vector<LocalScalar> acc;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) {
            acc.clear();
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero() || o.at(k, j).is_zero()) continue;
                acc.push_back(at(i, k) * o.at(k, j));
            }
            if (acc.empty()) continue;
            if (acc.size() == 1) {
                r.at(i, j) = std::move(acc[0]);
            } else {
                r.at(i, j) = LocalScalar::sum(ring_, acc);
            }
        }
    return r;
}

LMatrix LMatrix::operator+(const LMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix sum shape mismatch");
    LMatrix r(ring_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

LMatrix LMatrix::operator-(const LMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix difference shape mismatch");
    LMatrix r(ring_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

LMatrix LMatrix::operator-() const {
    LMatrix r(ring_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

LMatrix LMatrix::scaled(const LocalScalar &c) const {
    LMatrix r(ring_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

LMatrix LMatrix::transposed() const {
    LMatrix r(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool LMatrix::equals(const LMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (!a_[i].equals(o.a_[i])) return false;
    return true;
}

bool LMatrix::is_zero() const {
    for (const auto &x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool LMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    return equals(identity(ring_, rows_));
}

LMatrix LMatrix::block(int r0, int c0, int nr, int nc) const {
    LMatrix r(ring_, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
    return r;
}

LMatrix LMatrix::hstack(const LMatrix &l, const LMatrix &r) {
    if (l.rows_ != r.rows_) throw ShapeMismatch("hstack row mismatch");
    LMatrix m(l.ring_, l.rows_, l.cols_ + r.cols_);
    for (int i = 0; i < l.rows_; ++i) {
        for (int j = 0; j < l.cols_; ++j) m.at(i, j) = l.at(i, j);
        for (int j = 0; j < r.cols_; ++j) m.at(i, l.cols_ + j) = r.at(i, j);
    }
    return m;
}

LMatrix LMatrix::vstack(const LMatrix &t, const LMatrix &b) {
    if (t.cols_ != b.cols_) throw ShapeMismatch("vstack col mismatch");
    LMatrix m(t.ring_, t.rows_ + b.rows_, t.cols_);
    for (int j = 0; j < t.cols_; ++j) {
        for (int i = 0; i < t.rows_; ++i) m.at(i, j) = t.at(i, j);
        for (int i = 0; i < b.rows_; ++i) m.at(t.rows_ + i, j) = b.at(i, j);
    }
    return m;
}

LMatrix LMatrix::block_diag(const LMatrix &a, const LMatrix &b) {
    LMatrix m(a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) m.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
    return m;
}

std::vector<LocalScalar> LMatrix::col(int j) const {
    std::vector<LocalScalar> v;
    v.reserve(rows_);
    for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

LMatrix LMatrix::map(const std::function<LocalScalar(const LocalScalar &)> &fn) const {
    LMatrix r(ring_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fn(a_[i]);
    return r;
}

LMatrix LMatrix::subst_zero_var(int v) const {
    return map([v](const LocalScalar &s) { return s.subst_zero_var(v); });
}

LMatrix LMatrix::reduced() const {
    return map([](const LocalScalar &s) { return s.reduced(); });
}

// ---------------------------------------------------------------------------
// determinant / adjugate (division-free subset DP)
// ---------------------------------------------------------------------------

namespace {

// Row-cleared copy: row i of M times the product D_i of its denominator
// factors, so the DP below works on polynomials only.  inv_total is
// 1 / prod_i D_i kept with a factored denominator.
struct Cleared {
    std::vector<std::vector<Poly>> a;
    std::vector<LocalScalar> rowmul;  // D_i as a polynomial numerator
    LocalScalar inv_total;            // 1 / prod D_i, factored
};

Cleared clear_rows(const LMatrix &M) {
    const int n = M.rows(), c = M.cols();
    const RingCtx &R = M.ring();
    Cleared out;
    out.a.assign(size_t(n), std::vector<Poly>(size_t(c)));
    out.inv_total = LocalScalar::one(R);
    std::vector<std::vector<LocalScalar>> red{size_t(n), std::vector<LocalScalar>(size_t(c))};
    for (int i = 0; i < n; ++i) {
        // lcm of the factored denominators of the row
        std::vector<std::pair<Poly, int>> lcm;
        Rat cden(1);
        for (int j = 0; j < c; ++j) {
            red[i][j] = M.at(i, j).reduced();
            cden = R.field.mul(cden, red[i][j].den_const()); // reduced() keeps it 1
            for (const auto &[f, e] : red[i][j].den_factors()) {
                bool found = false;
                for (auto &[g, eg] : lcm)
                    if (g == f) {
                        eg = std::max(eg, e);
                        found = true;
                        break;
                    }
                if (!found) lcm.emplace_back(f, e);
            }
        }
        Poly D = Poly::constant(R.field, R.nvars(), 1);
        for (const auto &[f, e] : lcm)
            for (int t = 0; t < e; ++t) {
                D = D * f;
                out.inv_total = out.inv_total * LocalScalar(Poly::constant(R.field, R.nvars(), 1), f);
            }
        for (int j = 0; j < c; ++j) {
            // complement: prod f^(lcm_e - entry_e) / entry_const
            Poly comp = Poly::constant(R.field, R.nvars(),
                                       R.field.inv(red[i][j].den_const()));
            for (const auto &[f, e] : lcm) {
                int have = 0;
                for (const auto &[g, eg] : red[i][j].den_factors())
                    if (g == f) have = eg;
                for (int t = 0; t < e - have; ++t) comp = comp * f;
            }
            out.a[i][j] = red[i][j].num() * comp;
        }
        out.rowmul.push_back(LocalScalar(std::move(D)));
    }
    return out;
}

// Signed minors with a fixed row left out, over polynomial entries:
// f[full ^ (1<<j)] = minor of rows != skip, columns != j.
std::vector<Poly> minor_dp(const std::vector<std::vector<Poly>> &A, int n, int skip,
                           const BaseField &field, int nvars) {
    std::vector<Poly> f(size_t(1) << n, Poly::zero(field, nvars));
    f[0] = Poly::constant(field, nvars, 1);
    std::vector<int> rowseq;
    for (int i = 0; i < n; ++i)
        if (i != skip) rowseq.push_back(i);
    for (uint32_t mask = 0; mask + 1 < (uint32_t(1) << n); ++mask) {
        int used = __builtin_popcount(mask);
        if (used >= int(rowseq.size())) continue;
        if (f[mask].is_zero()) continue;
        int row = rowseq[size_t(used)];
        for (int j = 0; j < n; ++j) {
            if (mask & (1u << j)) continue;
            const Poly &m = A[size_t(row)][size_t(j)];
            if (m.is_zero()) continue;
            Poly t = f[mask] * m;
            uint32_t nm = mask | (1u << j);
            f[nm] = (__builtin_popcount(mask >> (j + 1)) & 1) ? f[nm] - t : f[nm] + t;
        }
    }
    return f;
}

} // namespace

LocalScalar det(const LMatrix &M) {
    if (M.rows() != M.cols()) throw ShapeMismatch("determinant of a non-square matrix");
    const int n = M.rows();
    const RingCtx &R = M.ring();
    if (n == 0) return LocalScalar::one(R);
    Cleared C = clear_rows(M);
    auto f = minor_dp(C.a, n, /*skip=*/-1, R.field, R.nvars());
    return (LocalScalar(f[(size_t(1) << n) - 1]) * C.inv_total).reduced();
}

std::pair<LocalScalar, LMatrix> det_adj(const LMatrix &M) {
    if (M.rows() != M.cols()) throw ShapeMismatch("adjugate of a non-square matrix");
    const int n = M.rows();
    const RingCtx &R = M.ring();
    LMatrix adj = LMatrix::identity(R, n);
    if (n == 0) return {LocalScalar::one(R), adj};
    Cleared C = clear_rows(M);
    // adj(M)(j,i) = (-1)^{i+j} minor(i,j) of M; minors of the cleared matrix
    // carry every row scale except row i's.
    uint32_t full = (uint32_t(1) << n) - 1;
    for (int i = 0; i < n; ++i) {
        auto f = minor_dp(C.a, n, i, R.field, R.nvars());
        LocalScalar scale = (C.rowmul[size_t(i)] * C.inv_total).reduced();
        for (int j = 0; j < n; ++j) {
            LocalScalar c = LocalScalar(f[full ^ (1u << j)]) * scale;
            if ((i + j) & 1) c = -c;
            adj.at(j, i) = c.reduced();
        }
    }
    LocalScalar d = LocalScalar::zero(R);
    for (int j = 0; j < n; ++j) d = d + M.at(0, j) * adj.at(j, 0);
    return {d.reduced(), adj};
}

LMatrix inverse_unit(const LMatrix &M) {
    auto [d, adj] = det_adj(M);
    if (!d.is_unit()) throw NotInvertible("matrix determinant is not a unit");
    LocalScalar di = d.inverse();
    return adj.map([&](const LocalScalar &s) { return (s * di).reduced(); });
}

std::optional<LMatrix> solve_in_local_matrix(const LMatrix &M, const LMatrix &B) {
    if (M.rows() != M.cols() || M.rows() != B.rows())
        throw ShapeMismatch("solve shape mismatch");
    auto [d, adj] = det_adj(M);
    if (d.is_zero()) throw SingularMatrix("singular system");
    LMatrix Y = adj * B;
    LMatrix out(M.ring(), B.rows(), B.cols());
    for (int i = 0; i < Y.rows(); ++i)
        for (int j = 0; j < Y.cols(); ++j) {
            const LocalScalar &y = Y.at(i, j);
            if (y.is_zero()) { out.at(i, j) = y; continue; }
            // y/det as a raw fraction; the denominator may vanish at the
            // origin, so reduce before testing ring membership.
            Poly n = y.num() * d.den();
            Poly m = y.den() * d.num();
            Poly g = poly_gcd(n, m);
            if (!g.is_constant()) {
                n = poly_exact_divide(n, g);
                m = poly_exact_divide(m, g);
            }
            if (m.at_origin() == 0) return std::nullopt;
            out.at(i, j) = LocalScalar(std::move(n), std::move(m)).reduced();
        }
    if (!(M * out).equals(B)) throw MathError("solve verification failed");
    return out;
}

std::optional<std::vector<LocalScalar>> solve_in_local(const LMatrix &M,
                                                       const std::vector<LocalScalar> &b) {
    LMatrix B(M.ring(), int(b.size()), 1);
    for (int i = 0; i < int(b.size()); ++i) B.at(i, 0) = b[i];
    auto Y = solve_in_local_matrix(M, B);
    if (!Y) return std::nullopt;
    return Y->col(0);
}

// ---------------------------------------------------------------------------
// local equivalence form
// ---------------------------------------------------------------------------

EquivalenceForm local_equivalence_form(const LMatrix &M, int fvar) {
    if (M.rows() != M.cols()) throw ShapeMismatch("equivalence form of a non-square matrix");
    const int n = M.rows();
    const RingCtx &R = M.ring();
    LMatrix A = M;
    EquivalenceForm E{LMatrix::identity(R, n), LMatrix::identity(R, n),
                      LMatrix::identity(R, n), LMatrix::identity(R, n), 0};

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) {
            std::swap(A.at(i, c), A.at(j, c));
            std::swap(E.P.at(i, c), E.P.at(j, c));
            std::swap(E.Pinv.at(c, i), E.Pinv.at(c, j));
        }
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < n; ++r) {
            std::swap(A.at(r, i), A.at(r, j));
            std::swap(E.Q.at(r, i), E.Q.at(r, j));
            std::swap(E.Qinv.at(i, r), E.Qinv.at(j, r));
        }
    };
    auto scale_row = [&](int i, const LocalScalar &u) { // u a unit
        LocalScalar ui = u.inverse();
        for (int c = 0; c < n; ++c) {
            A.at(i, c) = (A.at(i, c) * u).reduced();
            E.P.at(i, c) = (E.P.at(i, c) * u).reduced();
            E.Pinv.at(c, i) = (E.Pinv.at(c, i) * ui).reduced();
        }
    };
    auto add_row = [&](int dst, int src, const LocalScalar &c) { // row dst += c * row src
        for (int k = 0; k < n; ++k) {
            A.at(dst, k) = (A.at(dst, k) + c * A.at(src, k)).reduced();
            E.P.at(dst, k) = (E.P.at(dst, k) + c * E.P.at(src, k)).reduced();
            E.Pinv.at(k, src) = (E.Pinv.at(k, src) - c * E.Pinv.at(k, dst)).reduced();
        }
    };
    auto add_col = [&](int dst, int src, const LocalScalar &c) { // col dst += c * col src
        for (int k = 0; k < n; ++k) {
            A.at(k, dst) = (A.at(k, dst) + c * A.at(k, src)).reduced();
            E.Q.at(k, dst) = (E.Q.at(k, dst) + c * E.Q.at(k, src)).reduced();
            E.Qinv.at(src, k) = (E.Qinv.at(src, k) - c * E.Qinv.at(dst, k)).reduced();
        }
    };

    int p = 0;
    for (; p < n; ++p) {
        int pi = -1, pj = -1;
        for (int i = p; i < n && pi < 0; ++i)
            for (int j = p; j < n; ++j)
                if (A.at(i, j).is_unit()) { pi = i; pj = j; break; }
        if (pi < 0) break;
        swap_rows(p, pi);
        swap_cols(p, pj);
        scale_row(p, A.at(p, p).inverse());
        for (int i = p + 1; i < n; ++i)
            if (!A.at(i, p).is_zero()) add_row(i, p, -A.at(i, p));
        for (int j = p + 1; j < n; ++j)
            if (!A.at(p, j).is_zero()) add_col(j, p, -A.at(p, j));
        // clear earlier cross entries created by previous column ops
        for (int i = 0; i < p; ++i)
            if (!A.at(i, p).is_zero()) add_row(i, p, -A.at(i, p));
        for (int j = 0; j < p; ++j)
            if (!A.at(p, j).is_zero()) add_col(j, p, -A.at(p, j));
    }
    const int k = n - p;
    E.k = k;
    if (k > 0) {
        // Residual block must be f * (invertible over the local ring).
        LMatrix Rblk(R, k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                auto q = A.at(p + i, p + j).divided_by_var(fvar);
                if (!q) throw NotSimpleShape("residual entry is not divisible by f");
                Rblk.at(i, j) = *q;
            }
        LocalScalar dr = det(Rblk);
        if (!dr.is_unit()) throw NotSimpleShape("residual block over f is not invertible");
        LMatrix Ri = inverse_unit(Rblk);
        // rows[p..n) := Ri * rows[p..n)
        LMatrix P2 = LMatrix::identity(R, n), P2inv = LMatrix::identity(R, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                P2.at(p + i, p + j) = Ri.at(i, j);
                P2inv.at(p + i, p + j) = Rblk.at(i, j);
            }
        A = P2 * A;
        E.P = P2 * E.P;
        E.Pinv = E.Pinv * P2inv;
    }
    // verification
    LMatrix want = LMatrix::identity(R, n);
    LocalScalar f = LocalScalar::variable(R, fvar);
    for (int i = p; i < n; ++i) want.at(i, i) = f;
    if (!(E.P * M * E.Q).equals(want)) throw MathError("equivalence form verification failed");
    if (!(E.P * E.Pinv).is_identity() || !(E.Q * E.Qinv).is_identity())
        throw MathError("equivalence form inverse bookkeeping failed");
    E.P = E.P.reduced();
    E.Pinv = E.Pinv.reduced();
    E.Q = E.Q.reduced();
    E.Qinv = E.Qinv.reduced();
    return E;
}

// ---------------------------------------------------------------------------
// ranks
// ---------------------------------------------------------------------------

int rank_fraction_field(const LMatrix &M) {
    // Fraction-free elimination: pivots need not be units of the local ring,
    // so rows are cross-scaled instead of divided.
    LMatrix A = M;
    int r = 0;
    int rows = A.rows(), cols = A.cols();
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!A.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(A.at(r, j), A.at(piv, j));
        for (int i = r + 1; i < rows; ++i) {
            if (A.at(i, c).is_zero()) continue;
            LocalScalar p = A.at(r, c), m = A.at(i, c);
            for (int j = c; j < cols; ++j)
                A.at(i, j) = (p * A.at(i, j) - m * A.at(r, j)).reduced();
        }
        ++r;
    }
    return r;
}

QMat residue(const LMatrix &M) {
    QMat q;
    q.rows = M.rows();
    q.cols = M.cols();
    q.field = M.ring().field;
    q.a.resize(size_t(q.rows) * q.cols);
    for (int i = 0; i < q.rows; ++i)
        for (int j = 0; j < q.cols; ++j) q.at(i, j) = M.at(i, j).at_origin();
    return q;
}

int rank_residue(QMat M) {
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int piv = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < M.cols; ++j) std::swap(M.at(r, j), M.at(piv, j));
        for (int i = r + 1; i < M.rows; ++i) {
            if (M.at(i, c) == 0) continue;
            Rat m = M.field.div(M.at(i, c), M.at(r, c));
            for (int j = c; j < M.cols; ++j)
                M.at(i, j) = M.field.sub(M.at(i, j), M.field.mul(m, M.at(r, j)));
        }
        ++r;
    }
    return r;
}

std::optional<std::vector<int>> extend_column_basis(const QMat &A, const QMat &B) {
    QMat W;
    W.rows = A.rows;
    W.cols = A.cols + B.cols;
    W.field = A.field;
    W.a.resize(size_t(W.rows) * W.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) W.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) W.at(i, A.cols + j) = B.at(i, j);
    }
    std::vector<int> chosen;
    int r = 0;
    std::vector<int> prows; // pivot row per rank step
    // row echelon over all columns, recording which B-columns introduce pivots
    for (int c = 0; c < W.cols && r < W.rows; ++c) {
        int piv = -1;
        for (int i = r; i < W.rows; ++i)
            if (W.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < W.cols; ++j) std::swap(W.at(r, j), W.at(piv, j));
        for (int i = r + 1; i < W.rows; ++i) {
            if (W.at(i, c) == 0) continue;
            Rat m = W.field.div(W.at(i, c), W.at(r, c));
            for (int j = c; j < W.cols; ++j)
                W.at(i, j) = W.field.sub(W.at(i, j), W.field.mul(m, W.at(r, j)));
        }
        if (c >= A.cols) chosen.push_back(c - A.cols);
        ++r;
    }
    if (r < W.rows) return std::nullopt;
    return chosen;
}

std::vector<int> independent_columns(const QMat &M) {
    QMat W = M;
    std::vector<int> chosen;
    int r = 0;
    for (int c = 0; c < W.cols && r < W.rows; ++c) {
        int piv = -1;
        for (int i = r; i < W.rows; ++i)
            if (W.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < W.cols; ++j) std::swap(W.at(r, j), W.at(piv, j));
        for (int i = r + 1; i < W.rows; ++i) {
            if (W.at(i, c) == 0) continue;
            Rat m = W.field.div(W.at(i, c), W.at(r, c));
            for (int j = c; j < W.cols; ++j)
                W.at(i, j) = W.field.sub(W.at(i, j), W.field.mul(m, W.at(r, j)));
        }
        chosen.push_back(c);
        ++r;
    }
    return chosen;
}

// ---------------------------------------------------------------------------
// Smith form over the one-variable local ring
// ---------------------------------------------------------------------------

int valuation_l1(const LocalScalar &s, int xvar) {
    if (s.is_zero()) return -1;
    LocalScalar r = s.reduced();
    int v = 0;
    Poly n = r.num();
    while (n.divisible_by_var(xvar)) {
        n = n.divided_by_var(xvar);
        ++v;
    }
    return v;
}

SmithL1 smith_l1(const LMatrix &M, int xvar) {
    const RingCtx &R = M.ring();
    const int rows = M.rows(), cols = M.cols();
    SmithL1 S{LMatrix::identity(R, rows), LMatrix::identity(R, rows),
              LMatrix::identity(R, cols), LMatrix::identity(R, cols), M, {}};
    LMatrix &A = S.D;
    LocalScalar x = LocalScalar::variable(R, xvar);

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols; ++c) std::swap(A.at(i, c), A.at(j, c));
        for (int c = 0; c < rows; ++c) {
            std::swap(S.U.at(i, c), S.U.at(j, c));
            std::swap(S.Uinv.at(c, i), S.Uinv.at(c, j));
        }
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < rows; ++r) std::swap(A.at(r, i), A.at(r, j));
        for (int r = 0; r < cols; ++r) {
            std::swap(S.V.at(r, i), S.V.at(r, j));
            std::swap(S.Vinv.at(i, r), S.Vinv.at(j, r));
        }
    };
    auto scale_row = [&](int i, const LocalScalar &u) {
        LocalScalar ui = u.inverse();
        for (int c = 0; c < cols; ++c) A.at(i, c) = (A.at(i, c) * u).reduced();
        for (int c = 0; c < rows; ++c) {
            S.U.at(i, c) = (S.U.at(i, c) * u).reduced();
            S.Uinv.at(c, i) = (S.Uinv.at(c, i) * ui).reduced();
        }
    };
    auto add_row = [&](int dst, int src, const LocalScalar &c) {
        for (int k = 0; k < cols; ++k) A.at(dst, k) = (A.at(dst, k) + c * A.at(src, k)).reduced();
        for (int k = 0; k < rows; ++k) {
            S.U.at(dst, k) = (S.U.at(dst, k) + c * S.U.at(src, k)).reduced();
            S.Uinv.at(k, src) = (S.Uinv.at(k, src) - c * S.Uinv.at(k, dst)).reduced();
        }
    };
    auto add_col = [&](int dst, int src, const LocalScalar &c) {
        for (int k = 0; k < rows; ++k) A.at(k, dst) = (A.at(k, dst) + c * A.at(k, src)).reduced();
        for (int k = 0; k < cols; ++k) {
            S.V.at(k, dst) = (S.V.at(k, dst) + c * S.V.at(k, src)).reduced();
            S.Vinv.at(src, k) = (S.Vinv.at(src, k) - c * S.Vinv.at(dst, k)).reduced();
        }
    };

    int p = 0;
    const int lim = std::min(rows, cols);
    while (p < lim) {
        int bi = -1, bj = -1, bv = -1;
        for (int i = p; i < rows; ++i)
            for (int j = p; j < cols; ++j) {
                if (A.at(i, j).is_zero()) continue;
                int v = valuation_l1(A.at(i, j), xvar);
                if (bv < 0 || v < bv) { bv = v; bi = i; bj = j; }
            }
        if (bi < 0) break;
        swap_rows(p, bi);
        swap_cols(p, bj);
        // pivot = x^bv * unit; normalize to x^bv
        LocalScalar piv = A.at(p, p).reduced();
        Poly u = piv.num();
        for (int t = 0; t < bv; ++t) u = u.divided_by_var(xvar);
        scale_row(p, LocalScalar(piv.den(), u)); // multiply by unit-part inverse
        for (int i = p + 1; i < rows; ++i) {
            if (A.at(i, p).is_zero()) continue;
            LocalScalar q = A.at(i, p).divided_by_var_n(xvar, bv).value();
            add_row(i, p, -q);
        }
        for (int j = p + 1; j < cols; ++j) {
            if (A.at(p, j).is_zero()) continue;
            LocalScalar q = A.at(p, j).divided_by_var_n(xvar, bv).value();
            add_col(j, p, -q);
        }
        S.val.push_back(bv);
        ++p;
    }
    if (!(S.U * M * S.V).equals(A)) throw MathError("smith form verification failed");
    return S;
}

std::optional<std::vector<LocalScalar>> solve_l1(const LMatrix &M, const std::vector<LocalScalar> &b,
                                                 int xvar) {
    SmithL1 S = smith_l1(M, xvar);
    LMatrix bb(M.ring(), M.rows(), 1);
    for (int i = 0; i < M.rows(); ++i) bb.at(i, 0) = b.at(i);
    LMatrix c = S.U * bb;
    std::vector<LocalScalar> z(M.cols(), LocalScalar::zero(M.ring()));
    for (int i = 0; i < M.rows(); ++i) {
        LocalScalar ci = c.at(i, 0);
        if (i < int(S.val.size())) {
            auto q = ci.divided_by_var_n(xvar, S.val[i]);
            if (!q) return std::nullopt;
            z[i] = *q;
        } else if (!ci.is_zero()) {
            return std::nullopt;
        }
    }
    LMatrix zz(M.ring(), M.cols(), 1);
    for (int i = 0; i < M.cols(); ++i) zz.at(i, 0) = z[i];
    LMatrix y = S.V * zz;
    std::vector<LocalScalar> out = y.col(0);
    // verify
    LMatrix chk = M * y;
    for (int i = 0; i < M.rows(); ++i)
        if (!chk.at(i, 0).equals(b[i])) throw MathError("l1 solve verification failed");
    return out;
}

} // namespace koszul
