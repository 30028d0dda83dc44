#include "koszul/gen.hpp"
#include <chrono>
#include <cstdio>
using namespace koszul;
static long ms(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
}
int main() {
    RegularContext ctx = standard_context(3);
    Rng rng(777);
    long total = 0;
    for (int t = 0; t < 6; ++t) {
        TypicalType hidden{4, {rng.range(0, 4), rng.range(0, 4), rng.range(0, 4)}};
        auto t0 = std::chrono::steady_clock::now();
        Cube c = conjugated_simple(ctx, rng, hidden);
        auto t1 = std::chrono::steady_clock::now();
        NormalizationResult r = normalize_simple(c);
        auto t2 = std::chrono::steady_clock::now();
        printf("t=%d n=(%d,%d,%d) gen=%ldms norm=%ldms ok=%d\n", t, hidden.n[0], hidden.n[1],
               hidden.n[2], ms(t0, t1), ms(t1, t2), int(r.type == hidden));
        total += ms(t1, t2);
        fflush(stdout);
    }
    printf("total=%ldms\n", total);
    return 0;
}
