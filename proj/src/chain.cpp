#include "koszul/chain.hpp"

#include <algorithm>

namespace koszul {

int ChainComplex::total_rank() const {
    int t = 0;
    for (int r : ranks) t += r;
    return t;
}

void ChainComplex::check() const {
    if (ranks.empty()) {
        if (!diff.empty()) throw ShapeMismatch("chain complex layout");
        return;
    }
    if (diff.size() + 1 != ranks.size()) throw ShapeMismatch("chain complex layout");
    for (size_t i = 0; i < diff.size(); ++i) {
        if (diff[i].rows() != ranks[i] || diff[i].cols() != ranks[i + 1])
            throw ShapeMismatch("differential shape");
    }
    for (size_t i = 0; i + 1 < diff.size(); ++i)
        if (!(diff[i] * diff[i + 1]).is_zero()) throw MathError("d*d != 0");
}

bool ChainComplex::operator==(const ChainComplex &o) const {
    int a = std::min(lo, o.lo), b = std::max(hi(), o.hi());
    for (int n = a; n <= b; ++n) {
        if (rank(n) != o.rank(n)) return false;
        if (!d(n).equals(o.d(n))) return false;
    }
    return true;
}

ChainComplex direct_sum(const ChainComplex &a, const ChainComplex &b) {
    if (a.ranks.empty()) return b;
    if (b.ranks.empty()) return a;
    ChainComplex c;
    c.ring = a.ring;
    c.lo = std::min(a.lo, b.lo);
    int hi = std::max(a.hi(), b.hi());
    for (int n = c.lo; n <= hi; ++n) c.ranks.push_back(a.rank(n) + b.rank(n));
    for (int n = c.lo + 1; n <= hi; ++n) c.diff.push_back(LMatrix::block_diag(a.d(n), b.d(n)));
    return c;
}

bool ChainMap::is_chain_map() const {
    int a = std::min(x.lo, y.lo), b = std::max(x.hi(), y.hi()) + 1;
    for (int n = a; n <= b; ++n)
        if (!(f(n - 1) * x.d(n)).equals(y.d(n) * f(n))) return false;
    return true;
}

bool ChainMap::equals(const ChainMap &o) const {
    int a = std::min(x.lo, o.x.lo), b = std::max(x.hi(), o.x.hi());
    for (int n = a; n <= b; ++n)
        if (!f(n).equals(o.f(n))) return false;
    return true;
}

ChainMap identity_map(const ChainComplex &x) {
    ChainMap m{x, x, {}};
    for (int n = x.lo; n <= x.hi(); ++n)
        if (x.rank(n) > 0) m.comp[n] = LMatrix::identity(x.ring, x.rank(n));
    return m;
}

ChainMap zero_map_between(const ChainComplex &x, const ChainComplex &y) { return ChainMap{x, y, {}}; }

ChainMap compose(const ChainMap &g, const ChainMap &f) {
    ChainMap m{f.x, g.y, {}};
    int a = std::min(f.x.lo, g.y.lo), b = std::max(f.x.hi(), g.y.hi());
    for (int n = a; n <= b; ++n) {
        if (m.y.rank(n) == 0 || m.x.rank(n) == 0) continue;
        m.comp[n] = g.f(n) * f.f(n);
    }
    return m;
}

ChainMap add_maps(const ChainMap &a, const ChainMap &b) {
    ChainMap m{a.x, a.y, {}};
    int lo = std::min(a.x.lo, a.y.lo), hi = std::max(a.x.hi(), a.y.hi());
    for (int n = lo; n <= hi; ++n)
        if (a.y.rank(n) > 0 && a.x.rank(n) > 0) m.comp[n] = a.f(n) + b.f(n);
    return m;
}

ChainMap sub_maps(const ChainMap &a, const ChainMap &b) { return add_maps(a, negate_map(b)); }

ChainMap negate_map(const ChainMap &a) {
    ChainMap m{a.x, a.y, {}};
    for (const auto &[n, mm] : a.comp) m.comp[n] = -mm;
    return m;
}

ChainMap direct_sum_maps(const ChainMap &a, const ChainMap &b) {
    ChainMap m{direct_sum(a.x, b.x), direct_sum(a.y, b.y), {}};
    int lo = std::min(m.x.lo, m.y.lo), hi = std::max(m.x.hi(), m.y.hi());
    for (int n = lo; n <= hi; ++n) {
        if (m.x.rank(n) == 0 || m.y.rank(n) == 0) continue;
        // block layout must match direct_sum's degreewise (a | b) order
        LMatrix top = LMatrix::hstack(a.f(n), LMatrix::zero(a.x.ring, a.y.rank(n), b.x.rank(n)));
        LMatrix bot = LMatrix::hstack(LMatrix::zero(a.x.ring, b.y.rank(n), a.x.rank(n)), b.f(n));
        m.comp[n] = LMatrix::vstack(top, bot);
    }
    return m;
}

ChainComplex mapping_cone(const ChainMap &f) {
    const ChainComplex &x = f.x, &y = f.y;
    ChainComplex c;
    c.ring = x.ring;
    if (x.ranks.empty() && y.ranks.empty()) return c;
    c.lo = std::min(x.lo, y.lo);
    int hi = std::max(x.hi() + 1, y.hi());
    for (int n = c.lo; n <= hi; ++n) c.ranks.push_back(x.rank(n - 1) + y.rank(n));
    for (int n = c.lo + 1; n <= hi; ++n) {
        // d(n): x_{n-1} (+) y_n -> x_{n-2} (+) y_{n-1} ; [[-d^x, 0], [-f, d^y]]
        LMatrix tl = -x.d(n - 1);
        LMatrix tr = LMatrix::zero(c.ring, x.rank(n - 2), y.rank(n));
        LMatrix bl = -f.f(n - 1);
        LMatrix br = y.d(n);
        c.diff.push_back(LMatrix::vstack(LMatrix::hstack(tl, tr), LMatrix::hstack(bl, br)));
    }
    c.check();
    return c;
}

bool is_classical_homotopy(const DegreeMap &h, const ChainMap &f, const ChainMap &g) {
    const ChainComplex &x = f.x, &y = f.y;
    auto H = [&](int n) -> LMatrix {
        auto it = h.find(n);
        if (it != h.end()) return it->second;
        return LMatrix::zero(x.ring, y.rank(n + 1), x.rank(n));
    };
    int a = std::min(x.lo, y.lo), b = std::max(x.hi(), y.hi());
    for (int n = a; n <= b; ++n) {
        LMatrix want = f.f(n) - g.f(n);
        LMatrix got = y.d(n + 1) * H(n) + H(n - 1) * x.d(n);
        if (!want.equals(got)) return false;
    }
    return true;
}

bool exact_at_l1(const ChainComplex &c, int n, int xvar) {
    // ker d_n = im d_{n+1} over the DVR via Smith form of d_n.
    LMatrix dn = c.d(n), dn1 = c.d(n + 1);
    if (c.rank(n) == 0) return true;
    SmithL1 S = smith_l1(dn, xvar);
    std::vector<int> kercols; // diagonal entries are nonzero, so ker = trailing columns
    for (int j = int(S.val.size()); j < dn.cols(); ++j) kercols.push_back(j);
    // coordinates of im d_{n+1} in the kernel basis: rows of Vinv * d_{n+1}
    LMatrix W = S.Vinv * dn1;
    QMat Z;
    Z.rows = int(kercols.size());
    Z.cols = dn1.cols();
    Z.field = c.ring.field;
    Z.a.resize(size_t(Z.rows) * Z.cols);
    for (int i = 0; i < Z.rows; ++i)
        for (int j = 0; j < Z.cols; ++j) Z.at(i, j) = W.at(kercols[i], j).at_origin();
    // non-kernel rows of W vanish automatically since d d = 0
    return rank_residue(Z) == Z.rows;
}

bool exact_at_rank(const ChainComplex &c, int n) {
    return rank_fraction_field(c.d(n)) + rank_fraction_field(c.d(n + 1)) == c.rank(n);
}

bool quasi_iso_l1(const ChainMap &f, int xvar) {
    ChainComplex cone = mapping_cone(f);
    for (int n = cone.lo; n <= cone.hi(); ++n)
        if (!exact_at_l1(cone, n, xvar)) return false;
    return true;
}

bool quasi_iso_rank(const ChainMap &f) {
    ChainComplex cone = mapping_cone(f);
    for (int n = cone.lo; n <= cone.hi(); ++n)
        if (!exact_at_rank(cone, n)) return false;
    return true;
}

} // namespace koszul
