#include "koszul/typical.hpp"

#include <algorithm>

namespace koszul {

TypicalType fundamental_power(int nS, int m) { return TypicalType{m, std::vector<int>(size_t(nS), m)}; }

Mask type_profile(const TypicalType &t, int i) {
    Mask p = 0;
    for (int s = 0; s < int(t.n.size()); ++s)
        if (t.n[s] > i) p |= bit(s);
    return p;
}

Cube make_typical(const RegularContext &ctx, const TypicalType &t) {
    if (int(t.n.size()) != ctx.nS()) throw InvalidType("type arity mismatch");
    if (t.r < 0) throw InvalidType("negative rank");
    for (int ns : t.n)
        if (ns < 0 || ns > t.r) throw InvalidType("block size out of range");
    Cube c;
    c.ctx = ctx;
    int nS = ctx.nS();
    c.rank.assign(size_t(1) << nS, t.r);
    for (int s = 0; s < nS; ++s) {
        LMatrix d = LMatrix::identity(ctx.ring, t.r);
        LocalScalar f = ctx.f(s);
        for (int i = 0; i < t.n[s]; ++i) d.at(i, i) = f;
        for (Mask T = 0; T < Mask(1) << nS; ++T)
            if (has(T, s)) c.set_d(s, T, d);
    }
    return c;
}

TypSum typ_direct_sum(const RegularContext &ctx, const TypicalType &t1, const TypicalType &t2) {
    TypicalType sum{t1.r + t2.r, {}};
    for (size_t s = 0; s < t1.n.size(); ++s) sum.n.push_back(t1.n[s] + t2.n[s]);
    // match source coordinates (t1 then t2) to target coordinates by profile
    std::map<Mask, std::vector<int>> buckets;
    for (int i = 0; i < sum.r; ++i) buckets[type_profile(sum, i)].push_back(i);
    std::vector<int> dest;
    auto take = [&](Mask p) {
        auto &v = buckets[p];
        if (v.empty()) throw IncompatibleTypes("coordinate profiles do not merge");
        int i = v.front();
        v.erase(v.begin());
        return i;
    };
    for (int i = 0; i < t1.r; ++i) dest.push_back(take(type_profile(t1, i)));
    for (int i = 0; i < t2.r; ++i) dest.push_back(take(type_profile(t2, i)));
    LMatrix perm(ctx.ring, sum.r, sum.r);
    for (int j = 0; j < sum.r; ++j) perm.at(dest[j], j) = LocalScalar::one(ctx.ring);
    Cube lhs = direct_sum(make_typical(ctx, t1), make_typical(ctx, t2));
    Cube rhs = make_typical(ctx, sum);
    CubeMorphism iso{lhs, rhs, {}};
    for (Mask T = 0; T < Mask(1) << ctx.nS(); ++T) iso.comp.push_back(perm);
    if (!is_cube_iso(iso)) throw MathError("direct sum isomorphism failed verification");
    return TypSum{sum, std::move(iso)};
}

TypSplit split_nondeg_deg(const RegularContext &ctx, const TypicalType &t, int s) {
    TypicalType nd{t.n.at(s), {}}, dg{t.r - t.n.at(s), {}};
    for (size_t u = 0; u < t.n.size(); ++u) {
        nd.n.push_back(std::min(t.n[u], t.n[size_t(s)]));
        dg.n.push_back(std::max(t.n[u] - t.n[size_t(s)], 0));
    }
    TypSum sum = typ_direct_sum(ctx, nd, dg);
    if (sum.type != t) throw MathError("nondeg/deg split does not reassemble");
    return TypSplit{nd, dg, std::move(sum.iso)};
}

namespace {

void check_is_typical(const RegularContext &ctx, const TypicalType &t, const Cube &c,
                      const char *what) {
    Cube want = make_typical(ctx, t);
    if (c.rank != want.rank) throw ShapeMismatch(std::string(what) + ": not the expected typical cube");
    for (const auto &[key, m] : want.bnd)
        if (!c.d(key.first, key.second).equals(m))
            throw ShapeMismatch(std::string(what) + ": not the expected typical cube");
}

} // namespace

BlockMorphism blocks_of(const RegularContext &ctx, const TypicalType &src, const TypicalType &tgt,
                        const CubeMorphism &phi, int s) {
    check_is_typical(ctx, src, phi.src, "blocks_of source");
    check_is_typical(ctx, tgt, phi.tgt, "blocks_of target");
    BlockMorphism b;
    b.s = s;
    b.src = src;
    b.tgt = tgt;
    int ns = src.n.at(s), nt = tgt.n.at(s);
    int fv = ctx.fvar_of(s);
    for (Mask T = 0; T < Mask(1) << ctx.nS(); ++T) {
        if (has(T, s)) continue;
        const LMatrix &lo = phi.at(T);
        LMatrix A = lo.block(0, 0, nt, ns);
        LMatrix B = lo.block(0, ns, nt, src.r - ns);
        LMatrix C = lo.block(nt, 0, tgt.r - nt, ns);
        LMatrix D = lo.block(nt, ns, tgt.r - nt, src.r - ns);
        LMatrix dn(ctx.ring, nt, src.r - ns);
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < src.r - ns; ++j) {
                auto q = B.at(i, j).divided_by_var(fv);
                if (!q) throw NotBlockCompatible("upper-right block not divisible by f_s");
                dn.at(i, j) = *q;
            }
        b.nn[T] = A;
        b.dn[T] = dn;
        b.nd[T] = C;
        b.dd[T] = D;
        // the vertex with s present must carry the matching presentation
        const LMatrix &hiM = phi.at(T | bit(s));
        LocalScalar f = ctx.f(s);
        LMatrix want = LMatrix::vstack(LMatrix::hstack(A, dn), LMatrix::hstack(C.scaled(f), D));
        if (!hiM.equals(want)) throw NotBlockCompatible("vertices violate the block pattern");
    }
    return b;
}

CubeMorphism morphism_of_blocks(const RegularContext &ctx, const BlockMorphism &b) {
    Cube src = make_typical(ctx, b.src), tgt = make_typical(ctx, b.tgt);
    CubeMorphism m{src, tgt, {}};
    m.comp.resize(size_t(1) << ctx.nS(), LMatrix());
    LocalScalar f = ctx.f(b.s);
    for (Mask T = 0; T < Mask(1) << ctx.nS(); ++T) {
        if (has(T, b.s)) continue;
        const LMatrix &A = b.nn.at(T), &B = b.dn.at(T), &C = b.nd.at(T), &D = b.dd.at(T);
        m.comp[T] = LMatrix::vstack(LMatrix::hstack(A, B.scaled(f)), LMatrix::hstack(C, D));
        m.comp[T | bit(b.s)] =
            LMatrix::vstack(LMatrix::hstack(A, B), LMatrix::hstack(C.scaled(f), D));
    }
    if (!is_natural(m)) throw NotBlockCompatible("block data does not assemble naturally");
    return m;
}

BlockMorphism compose_blocks(const RegularContext &ctx, const BlockMorphism &psi,
                             const BlockMorphism &phi) {
    if (psi.s != phi.s) throw ShapeMismatch("block composition along different directions");
    BlockMorphism r;
    r.s = phi.s;
    r.src = phi.src;
    r.tgt = psi.tgt;
    LocalScalar f = ctx.f(phi.s);
    for (Mask T = 0; T < Mask(1) << ctx.nS(); ++T) {
        if (has(T, phi.s)) continue;
        const LMatrix &pnn = psi.nn.at(T), &pdn = psi.dn.at(T), &pnd = psi.nd.at(T),
                      &pdd = psi.dd.at(T);
        const LMatrix &qnn = phi.nn.at(T), &qdn = phi.dn.at(T), &qnd = phi.nd.at(T),
                      &qdd = phi.dd.at(T);
        r.nn[T] = pnn * qnn + (pdn * qnd).scaled(f);
        r.dn[T] = pnn * qdn + pdn * qdd;
        r.nd[T] = pnd * qnn + pdd * qnd;
        r.dd[T] = (pnd * qdn).scaled(f) + pdd * qdd;
    }
    return r;
}

TypicalType ud_type(const TypicalType &t, int s) {
    TypicalType u = t;
    u.n.at(s) = t.r - t.n.at(s);
    return u;
}

BlockMorphism ud_blocks(const BlockMorphism &b) {
    BlockMorphism u;
    u.s = b.s;
    u.src = ud_type(b.src, b.s);
    u.tgt = ud_type(b.tgt, b.s);
    u.nn = b.dd;
    u.dn = b.nd;
    u.nd = b.dn;
    u.dd = b.nn;
    return u;
}

CubeMorphism ud_morphism(const RegularContext &ctx, const TypicalType &src, const TypicalType &tgt,
                         const CubeMorphism &phi, int s) {
    return morphism_of_blocks(ctx, ud_blocks(blocks_of(ctx, src, tgt, phi, s)));
}

CubeMorphism typ_hom_family(const RegularContext &ctx, const TypicalType &src,
                            const TypicalType &tgt, const LMatrix &base) {
    if (base.rows() != tgt.r || base.cols() != src.r) throw ShapeMismatch("base matrix shape");
    Cube csrc = make_typical(ctx, src), ctgt = make_typical(ctx, tgt);
    CubeMorphism m{csrc, ctgt, {}};
    int nS = ctx.nS();
    for (Mask T = 0; T < Mask(1) << nS; ++T) {
        LMatrix comp(ctx.ring, tgt.r, src.r);
        for (int i = 0; i < tgt.r; ++i) {
            Mask Pi = type_profile(tgt, i);
            for (int j = 0; j < src.r; ++j) {
                Mask Pj = type_profile(src, j);
                LocalScalar v = base.at(i, j);
                if (v.is_zero()) continue;
                for (int t : members((Pi & ~Pj) & ~T)) v = v * ctx.f(t);
                for (int t : members((Pj & ~Pi) & T)) v = v * ctx.f(t);
                comp.at(i, j) = v;
            }
        }
        m.comp.push_back(std::move(comp));
    }
    if (!is_natural(m)) throw MathError("typ_hom_family not natural");
    return m;
}

LMatrix typ_hom_base(const RegularContext &ctx, const TypicalType &src, const TypicalType &tgt,
                     const CubeMorphism &phi) {
    Mask full = full_mask(ctx.nS());
    const LMatrix &top = phi.at(full);
    LMatrix base(ctx.ring, tgt.r, src.r);
    for (int i = 0; i < tgt.r; ++i) {
        Mask Pi = type_profile(tgt, i);
        for (int j = 0; j < src.r; ++j) {
            Mask Pj = type_profile(src, j);
            LocalScalar v = top.at(i, j);
            for (int t : members(Pj & ~Pi)) {
                auto q = v.divided_by_var(ctx.fvar_of(t));
                if (!q) throw NotLiftableShape("entry violates the forced divisibility");
                v = *q;
            }
            base.at(i, j) = v;
        }
    }
    return base;
}

IsoCharacterization iso_characterization(const CubeMorphism &a) {
    const RegularContext &ctx = a.src.ctx;
    IsoCharacterization out;
    if (!is_natural(a)) throw ShapeMismatch("not a morphism of cubes");
    for (const auto &c : a.comp)
        if (!c.equals(a.comp[0]))
            throw ShapeMismatch("endomorphisms of fundamental powers are constant families");
    LocalScalar dt = det(a.comp[0]);
    out.invertible = dt.is_unit();
    for (int s = 0; s < ctx.nS(); ++s)
        out.per_s.push_back(dt.subst_zero_var(ctx.fvar_of(s)).is_unit());
    out.h0_some = std::any_of(out.per_s.begin(), out.per_s.end(), [](bool b) { return b; });
    out.h0_all = std::all_of(out.per_s.begin(), out.per_s.end(), [](bool b) { return b; });
    ChainMap tot = total_morphism(a);
    int live_vars = ctx.ring.nvars() - int(ctx.killed_vars.size());
    bool dvr = live_vars == 1;
    out.tot_quasi_iso = dvr ? quasi_iso_l1(tot, ctx.fvar_of(0)) : quasi_iso_rank(tot);
    out.consistent = (out.invertible == out.h0_some) && (out.invertible == out.h0_all) &&
                     (!out.invertible || out.tot_quasi_iso) &&
                     (!dvr || out.tot_quasi_iso == out.invertible);
    return out;
}

namespace {

LMatrix h0_boundary(const RegularContext &ctx, const TypicalType &t, int s, int j) {
    // boundary of H_0^s(Typ(t)) in direction j: diag(f_j E_min, E) of size n_s
    int ns = t.n.at(s);
    LMatrix d = LMatrix::identity(ctx.ring, ns);
    LocalScalar f = ctx.f(j);
    for (int i = 0; i < std::min(t.n.at(j), ns); ++i) d.at(i, i) = f;
    return d;
}

} // namespace

CubeMorphism lift_h0_s(const RegularContext &ctx, const TypicalType &src, const TypicalType &tgt,
                       int s, const std::map<Mask, LMatrix> &gbar) {
    int fv = ctx.fvar_of(s);
    int ks = src.n.at(s), kt = tgt.n.at(s);
    // validate gbar: canonical entries, right shapes, natural modulo f_s
    for (Mask T = 0; T < Mask(1) << ctx.nS(); ++T) {
        if (has(T, s)) continue;
        auto it = gbar.find(T);
        if (it == gbar.end()) throw NotLiftableShape("missing component");
        const LMatrix &g = it->second;
        if (g.rows() != kt || g.cols() != ks) throw NotLiftableShape("component shape");
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j)
                if (!g.at(i, j).free_of_var(fv))
                    throw NotLiftableShape("component not in canonical form");
        for (int j : members(T)) {
            LMatrix lhs = gbar.at(without(T, j)) * h0_boundary(ctx, src, s, j);
            LMatrix rhs = h0_boundary(ctx, tgt, s, j) * g;
            if (!lhs.equals(rhs)) throw NotLiftableShape("family not natural over the quotient");
        }
    }
    Cube csrc = make_typical(ctx, src), ctgt = make_typical(ctx, tgt);
    CubeMorphism m{csrc, ctgt, {}};
    m.comp.resize(size_t(1) << ctx.nS(), LMatrix());
    for (Mask T = 0; T < Mask(1) << ctx.nS(); ++T) {
        if (has(T, s)) continue;
        LMatrix comp(ctx.ring, tgt.r, src.r);
        const LMatrix &g = gbar.at(T);
        for (int i = 0; i < kt; ++i)
            for (int j = 0; j < ks; ++j) comp.at(i, j) = g.at(i, j).reduced();
        m.comp[T] = comp;
        m.comp[T | bit(s)] = comp;
    }
    if (!is_natural(m)) throw NotLiftableShape("canonical lift not natural");
    // h0-reduction check: the induced map on cokernels equals gbar
    for (Mask T = 0; T < Mask(1) << ctx.nS(); ++T) {
        if (has(T, s)) continue;
        LMatrix emb(ctx.ring, tgt.r, src.r);
        const LMatrix &g = gbar.at(T);
        for (int i = 0; i < kt; ++i)
            for (int j = 0; j < ks; ++j) emb.at(i, j) = g.at(i, j);
        if (!eq_mod_image(m.comp[T], emb, PresentedModule{ctgt.d(s, T | bit(s))}))
            throw NotLiftableShape("h0 reduction mismatch");
    }
    return m;
}

CubeMorphism lift_h0_full(const RegularContext &ctx, const TypicalType &src,
                          const TypicalType &tgt, const LMatrix &gbar) {
    int ks = *std::min_element(src.n.begin(), src.n.end());
    int kt = *std::min_element(tgt.n.begin(), tgt.n.end());
    if (ctx.nS() == 0) {
        ks = src.r;
        kt = tgt.r;
    }
    if (gbar.rows() != kt || gbar.cols() != ks) throw NotLiftableShape("component shape");
    for (int i = 0; i < kt; ++i)
        for (int j = 0; j < ks; ++j)
            for (int s = 0; s < ctx.nS(); ++s)
                if (!gbar.at(i, j).free_of_var(ctx.fvar_of(s)))
                    throw NotLiftableShape("component not in canonical form");
    Cube csrc = make_typical(ctx, src), ctgt = make_typical(ctx, tgt);
    LMatrix comp(ctx.ring, tgt.r, src.r);
    for (int i = 0; i < kt; ++i)
        for (int j = 0; j < ks; ++j) comp.at(i, j) = gbar.at(i, j).reduced();
    CubeMorphism m{csrc, ctgt, {}};
    for (Mask T = 0; T < Mask(1) << ctx.nS(); ++T) m.comp.push_back(comp);
    if (!is_natural(m)) throw NotLiftableShape("canonical lift not natural");
    return m;
}

std::pair<bool, bool> variant_iso(const RegularContext &ctx, const TypicalType &t,
                                  const CubeMorphism &f, int s) {
    if (t.n.at(s) != t.r) throw NotNonDegenerate("cube is degenerate along s");
    bool iso = is_cube_iso(f);
    bool h0iso = true;
    int fv = ctx.fvar_of(s);
    for (Mask T = 0; T < Mask(1) << ctx.nS(); ++T) {
        if (has(T, s)) continue;
        if (!det(f.comp[T]).subst_zero_var(fv).is_unit()) h0iso = false;
    }
    if (iso != h0iso) throw MathError("variant iso lemma violated");
    return {iso, h0iso};
}

SplitExactWitness split_exact_from_h0(const CubeMorphism &alpha, const CubeMorphism &beta) {
    const RegularContext &ctx = alpha.src.ctx;
    const RingCtx &R = ctx.ring;
    int nS = ctx.nS();
    // fundamental powers: constant matrices
    int l = alpha.src.rank[0], mrk = alpha.tgt.rank[0], nrk = beta.tgt.rank[0];
    for (Mask T = 0; T < Mask(1) << nS; ++T) {
        if (!alpha.comp[T].equals(alpha.comp[0]) || !beta.comp[T].equals(beta.comp[0]))
            throw ShapeMismatch("morphisms of fundamental powers must be constant");
    }
    if (!is_natural(alpha) || !is_natural(beta)) throw ShapeMismatch("inputs not natural");
    LMatrix A = alpha.comp[0], B = beta.comp[0];
    if (!(B * A).is_zero()) throw MathError("beta alpha != 0");
    // H_0^S exactness: residue ranks and a split short exact sequence shape
    QMat A0 = residue(A), B0 = residue(B);
    if (rank_residue(A0) != l || rank_residue(B0) != nrk || l + nrk != mrk)
        throw H0NotExact("induced H_0 sequence is not (split) exact");
    // section of B over the quotient ring: invertible column selection
    QMat none{B0.rows, 0, R.field, {}};
    auto cols = extend_column_basis(none, B0);
    if (!cols) throw H0NotExact("beta has no unit minor");
    std::vector<char> killall(size_t(R.nvars()), 0);
    for (int s = 0; s < nS; ++s) killall[size_t(ctx.fvar_of(s))] = 1;
    LMatrix Bq = B.map([&](const LocalScalar &x) { return x.subst_zero(killall); });
    LMatrix Bsub(R, nrk, nrk);
    for (int j = 0; j < nrk; ++j)
        for (int i = 0; i < nrk; ++i) Bsub.at(i, j) = Bq.at(i, (*cols)[size_t(j)]);
    LMatrix gbar(R, mrk, nrk); // right inverse of Bq
    LMatrix Bsi = inverse_unit(Bsub);
    for (int j = 0; j < nrk; ++j)
        for (int i = 0; i < nrk; ++i) gbar.at((*cols)[size_t(i)], j) = Bsi.at(i, j);
    if (!(Bq * gbar).is_identity()) throw MathError("section construction failed");
    TypicalType tl = fundamental_power(nS, l), tm = fundamental_power(nS, mrk),
                tn = fundamental_power(nS, nrk);
    CubeMorphism gamma0 = lift_h0_full(ctx, tn, tm, gbar);
    // correct: gamma = gamma0 (beta gamma0)^{-1}
    LMatrix W = B * gamma0.comp[0];
    if (!det(W).is_unit()) throw MathError("beta gamma is not invertible");
    LMatrix G = gamma0.comp[0] * inverse_unit(W);
    CubeMorphism gamma{make_typical(ctx, tn), make_typical(ctx, tm), {}};
    for (Mask T = 0; T < Mask(1) << nS; ++T) gamma.comp.push_back(G);
    if (!(B * G).is_identity()) throw MathError("beta gamma != id");
    if (!is_natural(gamma)) throw MathError("gamma not natural");
    // kernel basis from the idempotent E - G B
    LMatrix E = LMatrix::identity(R, mrk) - G * B;
    std::vector<int> kc = independent_columns(residue(E));
    if (int(kc.size()) != l) throw MathError("kernel basis selection failed");
    LMatrix K(R, mrk, l);
    for (int j = 0; j < l; ++j)
        for (int i = 0; i < mrk; ++i) K.at(i, j) = E.at(i, kc[size_t(j)]);
    if (!(B * K).is_zero()) throw MathError("kernel candidate not in ker beta");
    // delta: K delta = A, solved through a unit row minor of K
    QMat Kt = residue(K.transposed());
    auto rowsel = extend_column_basis(QMat{l, 0, R.field, {}}, Kt);
    if (!rowsel || int(rowsel->size()) != l) throw MathError("kernel basis not split");
    LMatrix Ksub(R, l, l), Asub(R, l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            Ksub.at(i, j) = K.at((*rowsel)[size_t(i)], j);
            Asub.at(i, j) = A.at((*rowsel)[size_t(i)], j);
        }
    LMatrix D = inverse_unit(Ksub) * Asub;
    if (!(K * D).equals(A)) throw MathError("kernel comparison failed");
    CubeMorphism delta{make_typical(ctx, tl), make_typical(ctx, tl), {}};
    CubeMorphism kernel{make_typical(ctx, tl), make_typical(ctx, tm), {}};
    for (Mask T = 0; T < Mask(1) << nS; ++T) {
        delta.comp.push_back(D);
        kernel.comp.push_back(K);
    }
    if (!is_natural(delta) || !is_natural(kernel)) throw MathError("witness not natural");
    IsoCharacterization ic = iso_characterization(delta);
    if (!ic.invertible || !ic.consistent) throw MathError("delta is not an isomorphism");
    (void)tm;
    return SplitExactWitness{std::move(gamma), std::move(delta), std::move(kernel)};
}

} // namespace koszul
