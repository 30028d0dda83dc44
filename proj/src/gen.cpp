#include "koszul/gen.hpp"

namespace koszul {

RegularContext standard_context(int nvars, const BaseField &f) {
    static const char *names[] = {"x", "y", "z", "w"};
    RingCtx ring{f, {}};
    std::vector<int> fvar;
    for (int i = 0; i < nvars; ++i) {
        ring.vars.push_back(names[i % 4]);
        fvar.push_back(i);
    }
    return RegularContext{std::move(ring), std::move(fvar), {}};
}

TypicalType random_typical_type(Rng &rng, int nS, int rmax) {
    TypicalType t{rng.range(0, rmax), {}};
    for (int s = 0; s < nS; ++s) t.n.push_back(t.r == 0 ? 0 : rng.range(0, t.r));
    return t;
}

namespace {

Cube conjugate(const Cube &c, Rng &rng) {
    int nS = c.nS();
    std::vector<LMatrix> U, Uinv;
    for (Mask T = 0; T < Mask(1) << nS; ++T) {
        LMatrix u = rng.unit_matrix(c.ctx.ring, c.rank[T]);
        U.push_back(u);
        Uinv.push_back(inverse_unit(u));
    }
    Cube out;
    out.ctx = c.ctx;
    out.rank = c.rank;
    for (const auto &[key, d] : c.bnd) {
        auto [k, T] = key;
        out.set_d(k, T, (U[without(T, k)] * d * Uinv[T]).reduced());
    }
    return out;
}

} // namespace

Cube conjugated_simple(const RegularContext &ctx, Rng &rng, const TypicalType &type) {
    return conjugate(make_typical(ctx, type), rng);
}

Cube conjugated_diagonal(const RegularContext &ctx, Rng &rng, int r,
                         const std::vector<std::vector<int>> &exponents) {
    int nS = ctx.nS();
    Cube c;
    c.ctx = ctx;
    c.rank.assign(size_t(1) << nS, r);
    for (int k = 0; k < nS; ++k) {
        LMatrix d = LMatrix::identity(ctx.ring, r);
        for (int i = 0; i < r; ++i) {
            LocalScalar v = LocalScalar::one(ctx.ring);
            for (int e = 0; e < exponents.at(size_t(k)).at(size_t(i)); ++e) v = v * ctx.f(k);
            d.at(i, i) = v;
        }
        for (Mask T = 0; T < Mask(1) << nS; ++T)
            if (has(T, k)) c.set_d(k, T, d);
    }
    return conjugate(c, rng);
}

Cube nonsimple_koszul(const RegularContext &ctx, Rng &rng, int r) {
    int nS = ctx.nS();
    std::vector<std::vector<int>> ex(size_t(nS), std::vector<int>(size_t(r), 0));
    for (int k = 0; k < nS; ++k)
        for (int i = 0; i < r; ++i) ex[size_t(k)][size_t(i)] = rng.range(0, 2);
    // force a square factor somewhere
    ex[size_t(rng.range(0, nS - 1))][size_t(rng.range(0, r - 1))] = 2;
    return conjugated_diagonal(ctx, rng, r, ex);
}

CubeMorphism random_fundamental_endo(const RegularContext &ctx, Rng &rng, int m, bool invertible) {
    Cube c = make_typical(ctx, fundamental_power(ctx.nS(), m));
    LMatrix base = rng.unit_matrix(ctx.ring, m);
    if (!invertible) {
        // kill the determinant at the origin in one of two ways
        if (rng.flip() && ctx.nS() > 0) {
            base = base.scaled(ctx.f(rng.range(0, ctx.nS() - 1)));
        } else {
            LMatrix d = LMatrix::identity(ctx.ring, m);
            d.at(0, 0) = rng.nonunit(ctx.ring);
            base = base * d;
        }
    }
    CubeMorphism e{c, c, {}};
    for (Mask T = 0; T < Mask(1) << ctx.nS(); ++T) e.comp.push_back(base);
    return e;
}

} // namespace koszul
