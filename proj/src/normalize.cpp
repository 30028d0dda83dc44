#include "koszul/normalize.hpp"

#include <algorithm>

#include "koszul/rng.hpp"

namespace koszul {

namespace {

constexpr int kSectionTrials = 64;

struct Normalizer {
    NormalizeCertificate cert;
    int depth_limit;

    NormalizationResult run(const Cube &x, int depth) {
        if (depth > depth_limit) throw NotSimple("recursion depth exceeded");
        const RegularContext &ctx = x.ctx;
        const RingCtx &R = ctx.ring;
        int nS = ctx.nS();
        if (nS == 0) {
            TypicalType t{x.rank[0], {}};
            NormalizationResult res{t, identity_morphism(x), {}};
            return res;
        }
        const int s = 0;
        const int fv = ctx.fvar_of(s);
        Mask rest = full_mask(nS) & ~bit(s);
        Cube x1 = restrict(x, rest, bit(s));
        Cube x0 = restrict(x, rest, 0);
        NormalizationResult r1 = run(x1, depth + 1);
        NormalizationResult r0 = run(x0, depth + 1);
        if (r1.type != r0.type) throw NotSimple("restrictions have different typical types");
        const TypicalType m = r0.type; // common (S \ s)-type, over ctx_rest
        const int r = m.r;
        std::vector<int> restdirs = members(rest);
        RegularContext ctx_rest = ctx.with_directions(restdirs);
        CubeMorphism th1inv = inverse_morphism(r1.theta);

        const int nW = 1 << (nS - 1);
        std::vector<LMatrix> delta{size_t(nW), LMatrix{}};
        for (Mask W = 0; W < Mask(nW); ++W) {
            Mask T = embed_mask(W, restdirs);
            delta[W] = (r0.theta.comp[W] * x.d(s, T | bit(s)) * th1inv.comp[W]).reduced();
        }

        bool degenerate = true;
        for (Mask W = 0; W < Mask(nW); ++W)
            if (!det(delta[W]).is_unit()) degenerate = false;

        if (degenerate) {
            TypicalType t{r, {}};
            t.n.push_back(0);
            for (int v : m.n) t.n.push_back(v);
            Cube tgt = make_typical(ctx, t);
            CubeMorphism theta{x, tgt, {}};
            theta.comp.resize(size_t(1) << nS, LMatrix());
            for (Mask W = 0; W < Mask(nW); ++W) {
                Mask T = embed_mask(W, restdirs);
                theta.comp[T] = r0.theta.comp[W];
                theta.comp[T | bit(s)] = (delta[W] * r1.theta.comp[W]).reduced();
            }
            return NormalizationResult{t, std::move(theta), {}};
        }

        // non-degenerate: equivalence form of every delta along f_s
        std::vector<EquivalenceForm> eq;
        eq.reserve(size_t(nW));
        for (Mask W = 0; W < Mask(nW); ++W) {
            try {
                eq.push_back(local_equivalence_form(delta[W], fv));
            } catch (const NotSimpleShape &e) {
                throw NotSimple(std::string("boundary is not in the simple class: ") + e.what());
            }
        }
        const int k = eq[0].k;
        for (const auto &e : eq)
            if (e.k != k) throw NotSimple("inconsistent cokernel ranks along the direction");

        // H_0^s as a cube over the quotient ring
        RegularContext ctxq = ctx.quotient(s);
        Cube H;
        H.ctx = ctxq;
        H.rank.assign(size_t(nW), k);
        Cube typ_rest = make_typical(ctx_rest, m);
        for (Mask W = 0; W < Mask(nW); ++W) {
            for (int j = 0; j < nS - 1; ++j) {
                if (!has(W, j)) continue;
                LMatrix M = (eq[without(W, j)].P * typ_rest.d(j, W) * eq[W].Pinv).reduced();
                // induced map on cokernels: bottom-left block must vanish mod f_s
                for (int i = 0; i < k; ++i)
                    for (int jj = 0; jj < r - k; ++jj)
                        if (!M.at(r - k + i, jj).subst_zero_var(fv).is_zero())
                            throw NotSimple("homology boundary not well defined");
                H.set_d(j, W, M.block(r - k, r - k, k, k).subst_zero_var(fv).reduced());
            }
        }
        cert.require("homology cube faces", validate(H).ok());
        NormalizationResult rh = run(H, depth + 1);
        const TypicalType tq = rh.type; // (k, n'') over ctxq

        TypicalType t3{k, {}}; // n''' = n'' with full block at s
        t3.n.push_back(k);
        for (int v : tq.n) t3.n.push_back(v);
        Cube tgt3 = make_typical(ctx, t3);

        // beta on the typicalized cube: c_W = Theta''_W о (bottom k rows of P_W)
        std::vector<LMatrix> beta0{size_t(nW), LMatrix{}}, beta1{size_t(nW), LMatrix{}};
        for (Mask W = 0; W < Mask(nW); ++W) {
            LMatrix bottom = eq[W].P.block(r - k, 0, k, r);
            beta0[W] = (rh.theta.comp[W] * bottom).subst_zero_var(fv).reduced();
            LMatrix prod = beta0[W] * delta[W];
            LMatrix b1(R, k, r);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < r; ++j) {
                    auto q = prod.at(i, j).divided_by_var(fv);
                    if (!q) throw NotSimple("beta does not divide along the direction");
                    b1.at(i, j) = *q;
                }
            beta1[W] = b1.reduced();
        }
        // H_0^s(beta) = Theta'': induced map through the last-k columns of Pinv
        for (Mask W = 0; W < Mask(nW); ++W) {
            LMatrix induced =
                (beta0[W] * eq[W].Pinv.block(0, r - k, r, k)).subst_zero_var(fv);
            cert.require("beta reduces to the recursive theta",
                         induced.equals(rh.theta.comp[W]));
        }

        // section search: u0 from a base matrix, u1 = delta^{-1} (f_s u0)
        std::vector<LMatrix> alpha0{size_t(nW), LMatrix{}}, alpha1{size_t(nW), LMatrix{}};
        bool found = false;
        for (int trial = 0; trial < kSectionTrials && !found; ++trial) {
            Rng rng(0x9e3779b97f4a7c15ull + uint64_t(trial));
            LMatrix base(R, r, k);
            if (trial == 0) {
                // first candidate: the canonical embedding pattern
                for (int i = 0; i < std::min(r, k); ++i) base.at(i, i) = LocalScalar::one(R);
            } else {
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < k; ++j)
                        base.at(i, j) = LocalScalar::constant(R, rng.coeff(R.field, 2));
            }
            TypicalType src_rest{k, tq.n}; // (S\s)-shape of Typ(t3)
            CubeMorphism u0;
            try {
                u0 = typ_hom_family(ctx_rest, src_rest, m, base);
            } catch (const MathError &) {
                continue;
            }
            // H_0^s(u) must be invertible over the quotient
            bool ok = true;
            for (Mask W = 0; W < Mask(nW) && ok; ++W) {
                LMatrix J = (eq[W].P.block(r - k, 0, k, r) * u0.comp[W]).subst_zero_var(fv);
                if (!det(J).is_unit()) ok = false;
            }
            if (!ok) continue;
            // w = beta u, an endomorphism of Typ(t3); its two vertex values agree
            std::vector<LMatrix> u1{size_t(nW), LMatrix{}};
            std::vector<LMatrix> winv{size_t(nW), LMatrix{}};
            LocalScalar f = ctx.f(s);
            for (Mask W = 0; W < Mask(nW) && ok; ++W) {
                LMatrix D1(R, r, r); // f_s * (diag form)^{-1} = diag(f_s I, I)
                for (int i = 0; i < r - k; ++i) D1.at(i, i) = f;
                for (int i = r - k; i < r; ++i) D1.at(i, i) = LocalScalar::one(R);
                u1[W] = (eq[W].Q * D1 * eq[W].P * u0.comp[W]).reduced();
                LMatrix w0 = (beta0[W] * u0.comp[W]).reduced();
                LMatrix w1 = (beta1[W] * u1[W]).reduced();
                if (!w0.equals(w1)) { ok = false; break; }
                if (!det(w0).is_unit()) { ok = false; break; }
                winv[W] = inverse_unit(w0);
            }
            if (!ok) continue;
            for (Mask W = 0; W < Mask(nW); ++W) {
                alpha0[W] = (u0.comp[W] * winv[W]).reduced();
                alpha1[W] = (u1[W] * winv[W]).reduced();
            }
            found = true;
        }
        if (!found) throw NotSimple("no section through the homology quotient found");
        for (Mask W = 0; W < Mask(nW); ++W) {
            cert.require("beta alpha = id (base vertex)",
                         (beta0[W] * alpha0[W]).is_identity());
            cert.require("beta alpha = id (top vertex)", (beta1[W] * alpha1[W]).is_identity());
        }

        // split off the complement: change of basis [alpha | standard columns]
        auto split_vertex = [&](const LMatrix &al, LMatrix &K, LMatrix &q) {
            QMat none{r, 0, R.field, {}};
            auto cols = extend_column_basis(residue(al), residue(LMatrix::identity(R, r)));
            (void)none;
            if (!cols || int(cols->size()) != r - k)
                throw NotSimple("complement selection failed");
            K = LMatrix(R, r, r - k);
            for (int j = 0; j < r - k; ++j) K.at((*cols)[size_t(j)], j) = LocalScalar::one(R);
            LMatrix C = LMatrix::hstack(al, K);
            if (!det(C).is_unit()) throw NotSimple("splitting basis is not invertible");
            LMatrix Cinv = inverse_unit(C);
            q = Cinv.block(k, 0, r - k, r);
        };
        std::vector<LMatrix> K0{size_t(nW), LMatrix{}}, K1{size_t(nW), LMatrix{}}, q0{size_t(nW), LMatrix{}}, q1{size_t(nW), LMatrix{}};
        for (Mask W = 0; W < Mask(nW); ++W) {
            split_vertex(alpha0[W], K0[W], q0[W]);
            split_vertex(alpha1[W], K1[W], q1[W]);
        }

        // the complement cube y over the full direction set
        Cube y;
        y.ctx = ctx;
        y.rank.assign(size_t(1) << nS, r - k);
        for (Mask W = 0; W < Mask(nW); ++W) {
            Mask T = embed_mask(W, restdirs);
            y.set_d(s, T | bit(s), (q0[W] * delta[W] * K1[W]).reduced());
            for (int j = 0; j < nS - 1; ++j) {
                if (!has(W, j)) continue;
                Mask W2 = without(W, j);
                const LMatrix &G = typ_rest.d(j, W);
                y.set_d(restdirs[j], T, (q0[W2] * G * K0[W]).reduced());
                y.set_d(restdirs[j], T | bit(s), (q1[W2] * G * K1[W]).reduced());
            }
        }
        cert.require("complement cube faces", validate(y).ok());
        for (Mask W = 0; W < Mask(nW); ++W)
            cert.require("complement degenerate along the direction",
                         det(y.d(s, embed_mask(W, restdirs) | bit(s))).is_unit());
        NormalizationResult ry = run(y, depth + 1);

        TypSum sum = [&] {
            try {
                return typ_direct_sum(ctx, t3, ry.type);
            } catch (const IncompatibleTypes &e) {
                throw NotSimple(std::string("summands do not merge: ") + e.what());
            }
        }();

        Cube tgt = make_typical(ctx, sum.type);
        CubeMorphism theta{x, tgt, {}};
        theta.comp.resize(size_t(1) << nS, LMatrix());
        const LMatrix &perm = sum.iso.comp[0];
        for (Mask W = 0; W < Mask(nW); ++W) {
            Mask T = embed_mask(W, restdirs);
            LMatrix st0 = LMatrix::vstack(beta0[W], ry.theta.comp[T] * q0[W]);
            LMatrix st1 = LMatrix::vstack(beta1[W], ry.theta.comp[T | bit(s)] * q1[W]);
            theta.comp[T] = (perm * st0 * r0.theta.comp[W]).reduced();
            theta.comp[T | bit(s)] = (perm * st1 * r1.theta.comp[W]).reduced();
        }
        (void)tgt3;
        return NormalizationResult{sum.type, std::move(theta), {}};
    }
};

} // namespace

NormalizationResult normalize_simple(const Cube &x) {
    ValidateReport v = validate(x);
    if (!v.ok()) throw NotKoszulDirection("input is not a cube");
    KoszulReport kr = is_koszul(x);
    if (!kr.ok) throw NotKoszulDirection("input is not a Koszul cube");
    Normalizer nz;
    nz.depth_limit = 4 * std::max(1, x.nS()) + 8;
    NormalizationResult res = nz.run(x, 0);
    res.cert = nz.cert;
    res.cert.require("final re-verification", verify_normalization(x, res));
    return res;
}

bool verify_normalization(const Cube &x, const NormalizationResult &r) {
    Cube want = make_typical(x.ctx, r.type);
    if (r.theta.tgt.rank != want.rank) return false;
    for (const auto &[key, m] : want.bnd)
        if (!r.theta.tgt.d(key.first, key.second).equals(m)) return false;
    if (!validate(want).ok()) return false;
    if (r.theta.src.rank != x.rank) return false;
    for (const auto &[key, m] : x.bnd)
        if (!r.theta.src.d(key.first, key.second).equals(m)) return false;
    // naturality against x and the typical target, plus unit determinants
    CubeMorphism chk{x, want, r.theta.comp};
    if (!is_natural(chk)) return false;
    for (const auto &c : chk.comp) {
        if (c.rows() != c.cols()) return false;
        if (!det(c).is_unit()) return false;
    }
    return true;
}

} // namespace koszul
