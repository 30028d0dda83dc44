#pragma once

#include <map>
#include <string>

#include "koszul/chain.hpp"
#include "koszul/subsets.hpp"

namespace koszul {

// S-cube of free modules: vertex ranks indexed by subsets of S, boundary
// matrices d^k_T : x_T -> x_{T\{k}} for k in T, satisfying the face laws.
struct Cube {
    RegularContext ctx;
    std::vector<int> rank;                     // indexed by Mask, size 1 << nS
    std::map<std::pair<int, Mask>, LMatrix> bnd;

    int nS() const { return ctx.nS(); }
    Mask all() const { return full_mask(nS()); }
    int rank_at(Mask T) const { return rank.at(T); }
    const LMatrix &d(int k, Mask T) const;
    void set_d(int k, Mask T, LMatrix m);
};

struct CubeMorphism {
    Cube src, tgt;
    std::vector<LMatrix> comp; // indexed by Mask

    const LMatrix &at(Mask T) const { return comp.at(T); }
};

struct FaceViolation {
    Mask T;
    int j, k;
};

struct ValidateReport {
    std::vector<FaceViolation> violations;
    std::vector<std::string> problems; // shape issues
    bool ok() const { return violations.empty() && problems.empty(); }
};

ValidateReport validate(const Cube &c);

bool is_natural(const CubeMorphism &m);
CubeMorphism identity_morphism(const Cube &c);
CubeMorphism compose(const CubeMorphism &g, const CubeMorphism &f);
CubeMorphism add_morphisms(const CubeMorphism &a, const CubeMorphism &b);
// Vertexwise inverse; requires every component determinant to be a unit.
CubeMorphism inverse_morphism(const CubeMorphism &m);
bool is_cube_iso(const CubeMorphism &m); // natural + all vertex dets units
Cube direct_sum(const Cube &a, const Cube &b);
CubeMorphism direct_sum_morphisms(const CubeMorphism &a, const CubeMorphism &b);

// Restriction x|_U^V for disjoint U, V (masks over the directions of c).
Cube restrict(const Cube &c, Mask U, Mask V);

struct KoszulReport {
    bool ok = false;
    std::vector<int> m; // per-direction annihilation exponent (max over boundaries)
    std::vector<std::string> problems;
};

int mmax_default(); // 16, overridable through KOSZUL_MMAX
KoszulReport is_koszul(const Cube &c, int m_max = -1);
bool is_reduced(const Cube &c); // Koszul with every exponent <= 1

// Module presented by a square injective matrix: L^r / im(pres).
struct PresentedModule {
    LMatrix pres;
    int ambient() const { return pres.rows(); }
};

// columns of (a - b) contained in im(pres)?
bool eq_mod_image(const LMatrix &a, const LMatrix &b, const PresentedModule &pres);

// Cube of presented modules: the inherited boundary matrices act on ambient
// coordinates modulo the image of the relation blocks.
struct PresentedCube {
    RegularContext ctx;                         // remaining directions
    std::vector<int> ambient;                   // per Mask
    std::vector<std::vector<LMatrix>> rel;      // per Mask: square injective relation blocks
    std::map<std::pair<int, Mask>, LMatrix> bnd;

    int nS() const { return ctx.nS(); }
    const LMatrix &d(int k, Mask T) const;
    // The single vertex as a module when nS == 0 and one relation block.
    PresentedModule as_module() const;
};

// k-direction homology H_0^k as a presented cube over the remaining directions.
PresentedCube h0(const Cube &c, int k);
// Iterated H_0^T in ascending direction order (one accumulated presentation).
PresentedCube h0_iterated(const Cube &c, Mask T);
PresentedCube restrict_presented(const PresentedCube &c, Mask U, Mask V);
bool presented_equal(const PresentedCube &a, const PresentedCube &b);

// Total complex with the alternating-sign convention; verifies d*d = 0.
ChainComplex total_complex(const Cube &c);
ChainMap total_morphism(const CubeMorphism &m);

// H_p(Tot) = 0 for p > 0: exact over a one-variable ring, rank-level otherwise.
bool tot_acyclic_positive(const Cube &c);

// eq H_0^Y(x)|_X^? = H_0^Y(x|_X^?), compared as literal presentation data.
bool check_restriction_homology_identity(const Cube &c, Mask X, Mask Y);

} // namespace koszul
