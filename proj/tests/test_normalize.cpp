#include <doctest.h>

#include "koszul/gen.hpp"

using namespace koszul;

namespace {
LocalScalar S(const RegularContext &c, const std::string &t) { return parse_scalar(c.ring, t); }
}

TEST_CASE("normalize a cube that is already typical") {
    RegularContext ctx = standard_context(2);
    Cube c = make_typical(ctx, TypicalType{2, {1, 2}});
    NormalizationResult r = normalize_simple(c);
    CHECK(r.type == TypicalType{2, {1, 2}});
    CHECK(r.cert.all());
    CHECK(verify_normalization(c, r));
}

TEST_CASE("normalize a conjugated one-direction cube") {
    RegularContext ctx = standard_context(1);
    Rng rng(3);
    LMatrix U = rng.unit_matrix(ctx.ring, 2), V = rng.unit_matrix(ctx.ring, 2);
    Cube c;
    c.ctx = ctx;
    c.rank = {2, 2};
    c.set_d(0, 1, U * LMatrix::diagonal(ctx.ring, {S(ctx, "x"), S(ctx, "1")}) * V);
    NormalizationResult r = normalize_simple(c);
    CHECK(r.type == TypicalType{2, {1}});
    CHECK(verify_normalization(c, r));
}

TEST_CASE("non-simple boundary raises NotSimple") {
    RegularContext ctx = standard_context(1);
    Cube c;
    c.ctx = ctx;
    c.rank = {1, 1};
    LMatrix d(ctx.ring, 1, 1);
    d.at(0, 0) = S(ctx, "x^2");
    c.set_d(0, 1, d);
    CHECK_THROWS_AS(normalize_simple(c), NotSimple);
}

TEST_CASE("non-Koszul input is rejected up front") {
    RegularContext ctx = standard_context(2);
    Cube c;
    c.ctx = RegularContext{ctx.ring, {0}, {}};
    c.rank = {2, 2};
    c.set_d(0, 1, LMatrix::diagonal(ctx.ring, {S(ctx, "x"), S(ctx, "y")}));
    CHECK_THROWS_AS(normalize_simple(c), NotKoszulDirection);
}

TEST_CASE("seeded conjugated cubes recover the hidden type") {
    for (int nS = 1; nS <= 3; ++nS) {
        RegularContext ctx = standard_context(nS);
        Rng rng(100 + nS);
        for (int t = 0; t < 6; ++t) {
            TypicalType hidden = random_typical_type(rng, nS, 3);
            Cube c = conjugated_simple(ctx, rng, hidden);
            NormalizationResult r = normalize_simple(c);
            CHECK(r.type == hidden);
            CHECK(r.cert.all());
            CHECK(verify_normalization(c, r));
        }
    }
}

TEST_CASE("seeded non-simple Koszul inputs raise NotSimple") {
    for (int nS = 1; nS <= 2; ++nS) {
        RegularContext ctx = standard_context(nS);
        Rng rng(200 + nS);
        for (int t = 0; t < 4; ++t) {
            Cube c = nonsimple_koszul(ctx, rng, rng.range(1, 3));
            CHECK(is_koszul(c).ok);
            CHECK_THROWS_AS(normalize_simple(c), NotSimple);
        }
    }
}

TEST_CASE("determinism: identical input gives identical output") {
    RegularContext ctx = standard_context(2);
    Rng rng1(7), rng2(7);
    Cube c1 = conjugated_simple(ctx, rng1, TypicalType{3, {1, 2}});
    Cube c2 = conjugated_simple(ctx, rng2, TypicalType{3, {1, 2}});
    NormalizationResult a = normalize_simple(c1), b = normalize_simple(c2);
    CHECK(a.type == b.type);
    for (Mask T = 0; T < 4; ++T) CHECK(a.theta.comp[T].equals(b.theta.comp[T]));
}
