#pragma once

#include "koszul/normalize.hpp"
#include "koszul/rng.hpp"

namespace koszul {

// Seeded instance generators shared by the test suites and the CLI.

RegularContext standard_context(int nvars, const BaseField &f = BaseField::rationals());

TypicalType random_typical_type(Rng &rng, int nS, int rmax);

// Typical cube conjugated by per-vertex invertible matrices; isomorphic to
// Typ(type) by construction.
Cube conjugated_simple(const RegularContext &ctx, Rng &rng, const TypicalType &type);

// Koszul cube with diagonal boundaries f_k^{e_{k,i}} (constant per direction
// and coordinate), conjugated by per-vertex units.  Simple iff all e <= 1.
Cube conjugated_diagonal(const RegularContext &ctx, Rng &rng, int r,
                         const std::vector<std::vector<int>> &exponents);

// Non-simple Koszul instance: some exponent >= 2.
Cube nonsimple_koszul(const RegularContext &ctx, Rng &rng, int r);

// Random endomorphism of Typ(f_S)^{(+)m}; invertible or singular by request.
CubeMorphism random_fundamental_endo(const RegularContext &ctx, Rng &rng, int m, bool invertible);

} // namespace koszul
