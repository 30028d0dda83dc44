#include "koszul/cube.hpp"

#include <algorithm>
#include <cstdlib>

namespace koszul {

const LMatrix &Cube::d(int k, Mask T) const {
    auto it = bnd.find({k, T});
    if (it == bnd.end()) throw MathError("missing boundary");
    return it->second;
}

void Cube::set_d(int k, Mask T, LMatrix m) {
    if (!has(T, k)) throw InvalidParams("boundary direction not in subset");
    bnd[{k, T}] = std::move(m);
}

const LMatrix &PresentedCube::d(int k, Mask T) const {
    auto it = bnd.find({k, T});
    if (it == bnd.end()) throw MathError("missing boundary");
    return it->second;
}

PresentedModule PresentedCube::as_module() const {
    if (nS() != 0 || rel.at(0).size() != 1) throw ShapeMismatch("not a single presented module");
    return PresentedModule{rel.at(0).at(0)};
}

ValidateReport validate(const Cube &c) {
    ValidateReport rep;
    int n = c.nS();
    if (int(c.rank.size()) != 1 << n) {
        rep.problems.push_back("rank table size mismatch");
        return rep;
    }
    for (Mask T = 0; T < Mask(1) << n; ++T) {
        for (int k : members(T)) {
            auto it = c.bnd.find({k, T});
            if (it == c.bnd.end()) {
                rep.problems.push_back("missing boundary");
                return rep;
            }
            const LMatrix &d = it->second;
            if (d.rows() != c.rank[without(T, k)] || d.cols() != c.rank[T])
                rep.problems.push_back("boundary shape mismatch");
        }
    }
    if (!rep.problems.empty()) return rep;
    for (Mask T = 0; T < Mask(1) << n; ++T) {
        auto mem = members(T);
        for (size_t a = 0; a < mem.size(); ++a)
            for (size_t b = a + 1; b < mem.size(); ++b) {
                int j = mem[a], k = mem[b];
                LMatrix lhs = c.d(j, without(T, k)) * c.d(k, T);
                LMatrix rhs = c.d(k, without(T, j)) * c.d(j, T);
                if (!lhs.equals(rhs)) rep.violations.push_back({T, j, k});
            }
    }
    return rep;
}

bool is_natural(const CubeMorphism &m) {
    int n = m.src.nS();
    if (m.tgt.nS() != n) return false;
    for (Mask T = 0; T < Mask(1) << n; ++T) {
        if (m.comp[T].rows() != m.tgt.rank[T] || m.comp[T].cols() != m.src.rank[T]) return false;
        for (int k : members(T)) {
            LMatrix lhs = m.comp[without(T, k)] * m.src.d(k, T);
            LMatrix rhs = m.tgt.d(k, T) * m.comp[T];
            if (!lhs.equals(rhs)) return false;
        }
    }
    return true;
}

CubeMorphism identity_morphism(const Cube &c) {
    CubeMorphism m{c, c, {}};
    for (Mask T = 0; T < Mask(1) << c.nS(); ++T)
        m.comp.push_back(LMatrix::identity(c.ctx.ring, c.rank[T]));
    return m;
}

CubeMorphism compose(const CubeMorphism &g, const CubeMorphism &f) {
    CubeMorphism m{f.src, g.tgt, {}};
    for (Mask T = 0; T < Mask(1) << f.src.nS(); ++T) m.comp.push_back(g.comp[T] * f.comp[T]);
    return m;
}

CubeMorphism add_morphisms(const CubeMorphism &a, const CubeMorphism &b) {
    CubeMorphism m{a.src, a.tgt, {}};
    for (Mask T = 0; T < Mask(1) << a.src.nS(); ++T) m.comp.push_back(a.comp[T] + b.comp[T]);
    return m;
}

CubeMorphism inverse_morphism(const CubeMorphism &m) {
    CubeMorphism r{m.tgt, m.src, {}};
    for (Mask T = 0; T < Mask(1) << m.src.nS(); ++T) r.comp.push_back(inverse_unit(m.comp[T]));
    return r;
}

bool is_cube_iso(const CubeMorphism &m) {
    if (!is_natural(m)) return false;
    for (const auto &c : m.comp) {
        if (c.rows() != c.cols()) return false;
        if (!det(c).is_unit()) return false;
    }
    return true;
}

Cube direct_sum(const Cube &a, const Cube &b) {
    Cube c;
    c.ctx = a.ctx;
    int n = a.nS();
    c.rank.resize(size_t(1) << n);
    for (Mask T = 0; T < Mask(1) << n; ++T) c.rank[T] = a.rank[T] + b.rank[T];
    for (Mask T = 0; T < Mask(1) << n; ++T)
        for (int k : members(T)) c.set_d(k, T, LMatrix::block_diag(a.d(k, T), b.d(k, T)));
    return c;
}

CubeMorphism direct_sum_morphisms(const CubeMorphism &a, const CubeMorphism &b) {
    CubeMorphism m{direct_sum(a.src, b.src), direct_sum(a.tgt, b.tgt), {}};
    const RingCtx &R = a.src.ctx.ring;
    for (Mask T = 0; T < Mask(1) << a.src.nS(); ++T) {
        LMatrix top = LMatrix::hstack(a.comp[T], LMatrix::zero(R, a.tgt.rank[T], b.src.rank[T]));
        LMatrix bot = LMatrix::hstack(LMatrix::zero(R, b.tgt.rank[T], a.src.rank[T]), b.comp[T]);
        m.comp.push_back(LMatrix::vstack(top, bot));
    }
    return m;
}

Cube restrict(const Cube &c, Mask U, Mask V) {
    if (U & V) throw OverlappingSets("restriction subsets overlap");
    std::vector<int> dirs = members(U);
    Cube r;
    r.ctx = c.ctx.with_directions(dirs);
    int n = int(dirs.size());
    r.rank.resize(size_t(1) << n);
    for (Mask W = 0; W < Mask(1) << n; ++W) r.rank[W] = c.rank[embed_mask(W, dirs) | V];
    for (Mask W = 0; W < Mask(1) << n; ++W)
        for (int i = 0; i < n; ++i)
            if (has(W, i)) r.set_d(i, W, c.d(dirs[i], embed_mask(W, dirs) | V));
    return r;
}

int mmax_default() {
    if (const char *e = std::getenv("KOSZUL_MMAX")) {
        int v = std::atoi(e);
        if (v > 0) return v;
    }
    return 16;
}

namespace {

// Minimal m <= m_max with f^m * coker(d) = 0, or -1.
int annihilation_exponent(const LMatrix &d, int fv, int m_max) {
    const RingCtx &R = d.ring();
    auto [dt, adj] = det_adj(d);
    if (dt.is_zero()) return -1;
    if (dt.is_unit()) return 0;
    // membership of f^m e_i: (f^m * adj_col_i) / det in the ring for all i
    for (int m = 1; m <= m_max; ++m) {
        bool ok = true;
        LocalScalar fm = LocalScalar::one(R);
        for (int t = 0; t < m; ++t) fm = fm * LocalScalar::variable(R, fv);
        for (int i = 0; i < d.rows() && ok; ++i)
            for (int j = 0; j < d.cols() && ok; ++j) {
                LocalScalar y = adj.at(j, i) * fm; // column i of adj scaled
                Poly n = y.num() * dt.den();
                Poly den = y.den() * dt.num();
                Poly g = poly_gcd(n, den);
                if (!g.is_constant()) den = poly_exact_divide(den, g);
                if (den.at_origin() == 0) ok = false;
            }
        if (ok) return m;
    }
    return -1;
}

} // namespace

KoszulReport is_koszul(const Cube &c, int m_max) {
    if (m_max < 0) m_max = mmax_default();
    KoszulReport rep;
    rep.ok = true;
    rep.m.assign(size_t(c.nS()), 0);
    ValidateReport v = validate(c);
    if (!v.ok()) {
        rep.ok = false;
        rep.problems.push_back("not a cube (face laws or shapes fail)");
        return rep;
    }
    for (Mask T = 1; T < Mask(1) << c.nS(); ++T)
        for (int k : members(T)) {
            const LMatrix &d = c.d(k, T);
            if (d.rows() != d.cols()) {
                rep.ok = false;
                rep.problems.push_back("non-square boundary");
                continue;
            }
            int m = annihilation_exponent(d, c.ctx.fvar_of(k), m_max);
            if (m < 0) {
                rep.ok = false;
                rep.problems.push_back("boundary not injective or cokernel not annihilated");
            } else {
                rep.m[size_t(k)] = std::max(rep.m[size_t(k)], m);
            }
        }
    return rep;
}

bool is_reduced(const Cube &c) {
    KoszulReport rep = is_koszul(c);
    if (!rep.ok) return false;
    for (int m : rep.m)
        if (m > 1) return false;
    return true;
}

bool eq_mod_image(const LMatrix &a, const LMatrix &b, const PresentedModule &pres) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("eq_mod_image shapes");
    if (a.rows() != pres.pres.rows()) throw ShapeMismatch("eq_mod_image ambient");
    LMatrix diff = a - b;
    if (diff.is_zero()) return true;
    return solve_in_local_matrix(pres.pres, diff).has_value();
}

PresentedCube h0(const Cube &c, int k) {
    KoszulReport kr; // only need squareness/injectivity along k
    for (Mask T = 0; T < Mask(1) << c.nS(); ++T) {
        if (!has(T, k)) continue;
        const LMatrix &d = c.d(k, T);
        if (d.rows() != d.cols() || det(d).is_zero())
            throw NotKoszulDirection("direction not Koszul (square injective)");
    }
    (void)kr;
    std::vector<int> dirs;
    for (int j = 0; j < c.nS(); ++j)
        if (j != k) dirs.push_back(j);
    PresentedCube p;
    p.ctx = c.ctx.with_directions(dirs);
    int n = int(dirs.size());
    p.ambient.resize(size_t(1) << n);
    p.rel.resize(size_t(1) << n);
    for (Mask W = 0; W < Mask(1) << n; ++W) {
        Mask T = embed_mask(W, dirs);
        p.ambient[W] = c.rank[T];
        p.rel[W] = {c.d(k, T | bit(k))};
        for (int i = 0; i < n; ++i)
            if (has(W, i)) p.bnd[{i, W}] = c.d(dirs[i], T);
    }
    // face laws modulo the image
    for (Mask W = 0; W < Mask(1) << n; ++W) {
        auto mem = members(W);
        for (size_t a = 0; a < mem.size(); ++a)
            for (size_t b2 = a + 1; b2 < mem.size(); ++b2) {
                int i = mem[a], j = mem[b2];
                LMatrix lhs = p.d(i, without(W, j)) * p.d(j, W);
                LMatrix rhs = p.d(j, without(W, i)) * p.d(i, W);
                Mask W2 = without(without(W, i), j);
                if (!eq_mod_image(lhs, rhs, PresentedModule{p.rel[W2][0]}))
                    throw MathError("presented faces fail modulo image");
            }
    }
    return p;
}

PresentedCube h0_iterated(const Cube &c, Mask T) {
    for (int k : members(T)) {
        for (Mask W = 0; W < Mask(1) << c.nS(); ++W) {
            if (!has(W, k)) continue;
            const LMatrix &d = c.d(k, W);
            if (d.rows() != d.cols() || det(d).is_zero())
                throw NotKoszulDirection("direction not Koszul (square injective)");
        }
    }
    std::vector<int> dirs;
    for (int j = 0; j < c.nS(); ++j)
        if (!has(T, j)) dirs.push_back(j);
    PresentedCube p;
    p.ctx = c.ctx.with_directions(dirs);
    int n = int(dirs.size());
    p.ambient.resize(size_t(1) << n);
    p.rel.resize(size_t(1) << n);
    for (Mask W = 0; W < Mask(1) << n; ++W) {
        Mask base = embed_mask(W, dirs);
        p.ambient[W] = c.rank[base];
        for (int t : members(T)) p.rel[W].push_back(c.d(t, base | bit(t)));
        for (int i = 0; i < n; ++i)
            if (has(W, i)) p.bnd[{i, W}] = c.d(dirs[i], base);
    }
    // inherited boundaries commute on the nose
    for (Mask W = 0; W < Mask(1) << n; ++W) {
        auto mem = members(W);
        for (size_t a = 0; a < mem.size(); ++a)
            for (size_t b2 = a + 1; b2 < mem.size(); ++b2) {
                int i = mem[a], j = mem[b2];
                if (!(p.d(i, without(W, j)) * p.d(j, W)).equals(p.d(j, without(W, i)) * p.d(i, W)))
                    throw MathError("inherited faces fail");
            }
    }
    return p;
}

PresentedCube restrict_presented(const PresentedCube &c, Mask U, Mask V) {
    if (U & V) throw OverlappingSets("restriction subsets overlap");
    std::vector<int> dirs = members(U);
    PresentedCube r;
    r.ctx = c.ctx.with_directions(dirs);
    int n = int(dirs.size());
    r.ambient.resize(size_t(1) << n);
    r.rel.resize(size_t(1) << n);
    for (Mask W = 0; W < Mask(1) << n; ++W) {
        Mask T = embed_mask(W, dirs) | V;
        r.ambient[W] = c.ambient[T];
        r.rel[W] = c.rel[T];
        for (int i = 0; i < n; ++i)
            if (has(W, i)) r.bnd[{i, W}] = c.d(dirs[i], embed_mask(W, dirs) | V);
    }
    return r;
}

bool presented_equal(const PresentedCube &a, const PresentedCube &b) {
    if (a.nS() != b.nS()) return false;
    for (Mask W = 0; W < Mask(1) << a.nS(); ++W) {
        if (a.ambient[W] != b.ambient[W]) return false;
        if (a.rel[W].size() != b.rel[W].size()) return false;
        for (size_t i = 0; i < a.rel[W].size(); ++i)
            if (!a.rel[W][i].equals(b.rel[W][i])) return false;
        for (int k : members(W))
            if (!a.d(k, W).equals(b.d(k, W))) return false;
    }
    return true;
}

ChainComplex total_complex(const Cube &c) {
    int n = c.nS();
    const RingCtx &R = c.ctx.ring;
    // block layout per degree: subsets of size p ascending as integers
    std::vector<std::vector<Mask>> layer(size_t(n) + 1);
    std::vector<std::vector<int>> offset(size_t(n) + 1);
    ChainComplex t;
    t.ring = R;
    t.lo = 0;
    for (int p = 0; p <= n; ++p) {
        int total = 0;
        for (Mask T = 0; T < Mask(1) << n; ++T)
            if (card(T) == p) {
                layer[p].push_back(T);
                offset[p].push_back(total);
                total += c.rank[T];
            }
        t.ranks.push_back(total);
    }
    for (int p = 1; p <= n; ++p) {
        LMatrix d(R, t.ranks[p - 1], t.ranks[p]);
        for (size_t ti = 0; ti < layer[p].size(); ++ti) {
            Mask T = layer[p][ti];
            for (int k : members(T)) {
                Mask T2 = without(T, k);
                size_t si = size_t(std::find(layer[p - 1].begin(), layer[p - 1].end(), T2) -
                                   layer[p - 1].begin());
                const LMatrix &blk = c.d(k, T);
                bool neg = sign_exponent(T, k) & 1;
                for (int i = 0; i < blk.rows(); ++i)
                    for (int j = 0; j < blk.cols(); ++j)
                        d.at(offset[p - 1][si] + i, offset[p][ti] + j) =
                            neg ? -blk.at(i, j) : blk.at(i, j);
            }
        }
        t.diff.push_back(std::move(d));
    }
    t.check(); // includes d*d = 0
    return t;
}

ChainMap total_morphism(const CubeMorphism &m) {
    ChainComplex sx = total_complex(m.src), sy = total_complex(m.tgt);
    int n = m.src.nS();
    ChainMap f{sx, sy, {}};
    const RingCtx &R = m.src.ctx.ring;
    for (int p = 0; p <= n; ++p) {
        LMatrix blk(R, sy.rank(p), sx.rank(p));
        int ro = 0, co = 0;
        for (Mask T = 0; T < Mask(1) << n; ++T) {
            if (card(T) != p) continue;
            const LMatrix &mm = m.comp[T];
            for (int i = 0; i < mm.rows(); ++i)
                for (int j = 0; j < mm.cols(); ++j) blk.at(ro + i, co + j) = mm.at(i, j);
            ro += m.tgt.rank[T];
            co += m.src.rank[T];
        }
        f.comp[p] = std::move(blk);
    }
    if (!f.is_chain_map()) throw MathError("total morphism is not a chain map");
    return f;
}

bool tot_acyclic_positive(const Cube &c) {
    ChainComplex t = total_complex(c);
    int live_vars = c.ctx.ring.nvars() - int(c.ctx.killed_vars.size());
    bool dvr = live_vars == 1;
    for (int p = 1; p <= c.nS(); ++p) {
        bool ok = dvr ? exact_at_l1(t, p, c.ctx.fvar_of(0)) : exact_at_rank(t, p);
        if (!ok) return false;
    }
    return true;
}

bool check_restriction_homology_identity(const Cube &c, Mask X, Mask Y) {
    if (X & Y) throw OverlappingSets("X and Y overlap");
    Mask rest = full_mask(c.nS()) & ~(X | Y);
    PresentedCube hy = h0_iterated(c, Y);
    // directions of hy are S \ Y in ascending order; translate X and T masks
    std::vector<int> hydirs;
    for (int j = 0; j < c.nS(); ++j)
        if (!has(Y, j)) hydirs.push_back(j);
    auto to_hy = [&](Mask m) {
        Mask out = 0;
        for (size_t i = 0; i < hydirs.size(); ++i)
            if (has(m, hydirs[i])) out |= bit(int(i));
        return out;
    };
    for (Mask T : subsets_of(rest)) {
        PresentedCube side1 = restrict_presented(hy, to_hy(X), to_hy(T));
        Cube cr = restrict(c, X | Y, T);
        // directions of cr are X | Y ascending; Y's positions within them
        std::vector<int> crdirs = members(X | Y);
        Mask Ycr = 0;
        for (size_t i = 0; i < crdirs.size(); ++i)
            if (has(Y, crdirs[i])) Ycr |= bit(int(i));
        PresentedCube side2 = h0_iterated(cr, Ycr);
        if (!presented_equal(side1, side2)) return false;
    }
    return true;
}

} // namespace koszul
