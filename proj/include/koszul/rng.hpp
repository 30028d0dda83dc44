#pragma once

#include <cstdint>
#include <random>

#include "koszul/matrix.hpp"

namespace koszul {

// Deterministic PRNG wrapper; all sampling goes through these helpers so
// reports are byte-identical across platforms for a fixed seed.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }
    int range(int lo, int hi) { // inclusive bounds
        return lo + int(next() % uint64_t(hi - lo + 1));
    }
    bool flip() { return next() & 1u; }

    Rat coeff(const BaseField &f, int bound = 3) {
        if (f.is_prime_field()) return f.normalize(Rat(Int(next() % 64)));
        return Rat(range(-bound, bound));
    }
    Rat nonzero_coeff(const BaseField &f, int bound = 3) {
        for (;;) {
            Rat c = coeff(f, bound);
            if (f.normalize(c) != 0) return c;
        }
    }

    // Low-degree polynomial; constant term forced to `origin` when requested.
    Poly poly(const RingCtx &R, int max_deg = 1, int extra_terms = 2,
              std::optional<Rat> origin = std::nullopt) {
        Poly p(R.field, R.nvars());
        if (origin) p.add_term(Exp(R.nvars(), 0), R.field.normalize(*origin));
        for (int t = 0; t < extra_terms; ++t) {
            Exp e(R.nvars(), 0);
            int deg = range(0, max_deg);
            for (int d = 0; d < deg; ++d) e[range(0, R.nvars() - 1)] += 1;
            if (origin && e == Exp(R.nvars(), 0)) continue;
            p.add_term(e, coeff(R.field));
        }
        return p;
    }

    LocalScalar scalar(const RingCtx &R) {
        Poly num = poly(R, 1, 2);
        if (flip()) return LocalScalar(num);
        Poly den = poly(R, 1, 1, Rat(1));
        return LocalScalar(num, den);
    }
    LocalScalar unit(const RingCtx &R) {
        Poly num = poly(R, 1, 2, nonzero_coeff(R.field, 2));
        if (flip()) return LocalScalar(num);
        Poly den = poly(R, 1, 1, Rat(1));
        return LocalScalar(num, den);
    }
    LocalScalar nonunit(const RingCtx &R) {
        Poly num = poly(R, 1, 2, Rat(0));
        return LocalScalar(num);
    }

    LMatrix matrix(const RingCtx &R, int rows, int cols) {
        LMatrix m(R, rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(i, j) = scalar(R);
        return m;
    }

    // Product of elementary operations: invertible over the local ring.
    LMatrix unit_matrix(const RingCtx &R, int n, int steps = -1) {
        LMatrix m = LMatrix::identity(R, n);
        if (n == 0) return m;
        if (steps < 0) steps = 2 * n;
        for (int s = 0; s < steps; ++s) {
            int kind = range(0, 2);
            if (kind == 0 && n > 1) { // row swap
                int i = range(0, n - 1), j = range(0, n - 1);
                if (i != j)
                    for (int c = 0; c < n; ++c) std::swap(m.at(i, c), m.at(j, c));
            } else if (kind == 1) { // scale by a unit
                int i = range(0, n - 1);
                LocalScalar u = unit(R);
                for (int c = 0; c < n; ++c) m.at(i, c) = (m.at(i, c) * u).reduced();
            } else if (n > 1) { // add multiple of another row
                int i = range(0, n - 1), j = range(0, n - 1);
                if (i == j) continue;
                LocalScalar c = scalar(R);
                for (int k = 0; k < n; ++k) m.at(i, k) = (m.at(i, k) + c * m.at(j, k)).reduced();
            }
        }
        return m;
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace koszul
