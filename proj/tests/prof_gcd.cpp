#include "koszul/matrix.hpp"
#include "koszul/rng.hpp"
#include <chrono>
#include <cstdio>
using namespace koszul;
static long us(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::microseconds>(b - a).count();
}
int main() {
    RingCtx R{BaseField::rationals(), {"x", "y"}};
    Rng rng(5);
    for (int deg = 2; deg <= 10; deg += 2) {
        Poly a = rng.poly(R, deg, 3 * deg);
        Poly b = rng.poly(R, deg, 3 * deg);
        Poly c = rng.poly(R, deg / 2, deg);
        auto t0 = std::chrono::steady_clock::now();
        Poly g = poly_gcd(a * c, b * c);
        auto t1 = std::chrono::steady_clock::now();
        printf("deg=%d terms(a*c)=%zu gcd_us=%ld gterms=%zu\n", deg, (a * c).size(), us(t0, t1),
               g.size());
        fflush(stdout);
    }
    return 0;
}
