#include "koszul/typical.hpp"
#include "koszul/rng.hpp"
#include <cstdio>
using namespace koszul;
int main() {
    RegularContext cxy{RingCtx{BaseField::rationals(), {"x", "y"}}, {0, 1}, {}};
    Rng rng(19);
    auto random_type = [&](int nS, int rmax) {
        TypicalType t{rng.range(0, rmax), {}};
        for (int s = 0; s < nS; ++s) t.n.push_back(t.r == 0 ? 0 : rng.range(0, t.r));
        return t;
    };
    for (int t = 0; t < 30; ++t) {
        TypicalType a = random_type(2, 3), b = random_type(2, 3), cc = random_type(2, 3);
        int s = rng.range(0, 1);
        CubeMorphism f = typ_hom_family(cxy, a, b, rng.matrix(cxy.ring, b.r, a.r));
        CubeMorphism g = typ_hom_family(cxy, b, cc, rng.matrix(cxy.ring, cc.r, b.r));
        BlockMorphism bf = blocks_of(cxy, a, b, f, s);
        BlockMorphism bg = blocks_of(cxy, b, cc, g, s);
        try {
            CubeMorphism lhs = morphism_of_blocks(cxy, compose_blocks(cxy, bg, bf));
            CubeMorphism rhs = compose(g, f);
            for (Mask T = 0; T < 4; ++T)
                if (!lhs.comp[T].equals(rhs.comp[T])) printf("MISMATCH t=%d T=%u\n", t, T);
        } catch (const std::exception &e) {
            printf("t=%d s=%d a=(%d;%d,%d) b=(%d;%d,%d) c=(%d;%d,%d): %s\n", t, s, a.r, a.n[0],
                   a.n[1], b.r, b.n[0], b.n[1], cc.r, cc.n[0], cc.n[1], e.what());
        }
    }
    puts("done");
    return 0;
}
