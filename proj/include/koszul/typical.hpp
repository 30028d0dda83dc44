#pragma once

#include "koszul/cube.hpp"

namespace koszul {

// Type (r, {n_s}) of a typical cube: rank r everywhere, s-boundaries
// diag(f_s I_{n_s}, I_{r-n_s}).
struct TypicalType {
    int r = 0;
    std::vector<int> n;

    bool operator==(const TypicalType &o) const { return r == o.r && n == o.n; }
    bool operator!=(const TypicalType &o) const { return !(*this == o); }
};

TypicalType fundamental_power(int nS, int m); // Typ(f_S)^{(+)m}

Cube make_typical(const RegularContext &ctx, const TypicalType &t);

// Profile of coordinate i (0-based): directions whose f-block covers it.
Mask type_profile(const TypicalType &t, int i);

struct TypSum {
    TypicalType type;
    CubeMorphism iso; // Typ(t1) (+) Typ(t2) -> Typ(type), a constant permutation
};
// Throws IncompatibleTypes when the coordinate profiles do not merge.
TypSum typ_direct_sum(const RegularContext &ctx, const TypicalType &t1, const TypicalType &t2);

struct TypSplit {
    TypicalType nondeg, deg;
    CubeMorphism iso; // Typ(nondeg) (+) Typ(deg) -> Typ(t)
};
TypSplit split_nondeg_deg(const RegularContext &ctx, const TypicalType &t, int s);

// 2x2 block presentation of a morphism between typical cubes along s; each
// block is a family indexed by subsets with the s-bit clear.
struct BlockMorphism {
    int s = 0;
    TypicalType src, tgt;
    std::map<Mask, LMatrix> nn, dn, nd, dd;
};

BlockMorphism blocks_of(const RegularContext &ctx, const TypicalType &src, const TypicalType &tgt,
                        const CubeMorphism &phi, int s);
CubeMorphism morphism_of_blocks(const RegularContext &ctx, const BlockMorphism &b);
BlockMorphism compose_blocks(const RegularContext &ctx, const BlockMorphism &psi,
                             const BlockMorphism &phi);

// The upside-down involution acts on types and on block data; the block swap
// is functorial for compose_blocks.  Re-assembly as a cube morphism is only
// defined when the swapped data is natural (always for one direction).
TypicalType ud_type(const TypicalType &t, int s);
BlockMorphism ud_blocks(const BlockMorphism &b);
CubeMorphism ud_morphism(const RegularContext &ctx, const TypicalType &src, const TypicalType &tgt,
                         const CubeMorphism &phi, int s);

// Morphisms of typical cubes are freely parametrized by a base matrix; the
// family twists each entry by the forced f-monomials.
CubeMorphism typ_hom_family(const RegularContext &ctx, const TypicalType &src,
                            const TypicalType &tgt, const LMatrix &base);
LMatrix typ_hom_base(const RegularContext &ctx, const TypicalType &src, const TypicalType &tgt,
                     const CubeMorphism &phi);

struct IsoCharacterization {
    bool invertible = false;     // (1)
    bool h0_some = false;        // (2)
    bool h0_all = false;         // (3)
    bool tot_quasi_iso = false;  // (4)
    std::vector<bool> per_s;
    bool consistent = false; // (1)<=>(2)<=>(3), (1)=>(4), and (4)=>(1) on a DVR
};
IsoCharacterization iso_characterization(const CubeMorphism &a);

// Lift a morphism of s-direction homologies between typical cubes; gbar maps
// masks with the s-bit clear to matrices with canonical (f_s-free) entries.
CubeMorphism lift_h0_s(const RegularContext &ctx, const TypicalType &src, const TypicalType &tgt,
                       int s, const std::map<Mask, LMatrix> &gbar);
// Lift through the full quotient H_0^S (a single matrix over R/f_S).
CubeMorphism lift_h0_full(const RegularContext &ctx, const TypicalType &src,
                          const TypicalType &tgt, const LMatrix &gbar);

// (1) f iso <=> (2) H_0^s(f) iso for non-degenerate-along-s typical cubes.
std::pair<bool, bool> variant_iso(const RegularContext &ctx, const TypicalType &t,
                                  const CubeMorphism &f, int s);

struct SplitExactWitness {
    CubeMorphism gamma;  // section: beta о gamma = id
    CubeMorphism delta;  // kernel comparison iso
    CubeMorphism kernel; // embedding of ker(beta) realized by delta's target
};
// alpha: Typ^l -> Typ^m, beta: Typ^m -> Typ^n with beta alpha = 0.
SplitExactWitness split_exact_from_h0(const CubeMorphism &alpha, const CubeMorphism &beta);

} // namespace koszul
