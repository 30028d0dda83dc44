#include "koszul/matrix.hpp"
#include "koszul/rng.hpp"
#include <chrono>
#include <cstdio>
using namespace koszul;
static long ms(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
}
int main() {
    RingCtx R{BaseField::rationals(), {"x", "y"}};
    Rng rng(5);
    for (int n = 1; n <= 5; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        LMatrix m = rng.matrix(R, n, n);
        auto t1 = std::chrono::steady_clock::now();
        auto [d, adj] = det_adj(m);
        auto t2 = std::chrono::steady_clock::now();
        bool ok = (m * adj).equals(LMatrix::scalar(R, n, d));
        auto t3 = std::chrono::steady_clock::now();
        printf("n=%d gen=%ldms detadj=%ldms verify=%ldms ok=%d\n", n, ms(t0, t1), ms(t1, t2),
               ms(t2, t3), int(ok));
        fflush(stdout);
    }
    return 0;
}
