#include "koszul/gen.hpp"
#include <chrono>
#include <cstdio>
using namespace koszul;
static long ms(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
}
int main(int argc, char **argv) {
    int nS = argc > 1 ? atoi(argv[1]) : 2;
    int cases = argc > 2 ? atoi(argv[2]) : 4;
    RegularContext ctx = standard_context(nS);
    Rng rng(100 + nS);
    for (int t = 0; t < cases; ++t) {
        TypicalType hidden = random_typical_type(rng, nS, 3);
        auto t0 = std::chrono::steady_clock::now();
        Cube c = conjugated_simple(ctx, rng, hidden);
        auto t1 = std::chrono::steady_clock::now();
        NormalizationResult r = normalize_simple(c);
        auto t2 = std::chrono::steady_clock::now();
        printf("nS=%d t=%d r=%d gen=%ldms norm=%ldms ok=%d\n", nS, t, hidden.r, ms(t0, t1),
               ms(t1, t2), int(r.type == hidden));
        fflush(stdout);
    }
    return 0;
}
