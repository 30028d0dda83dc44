#pragma once

#include <map>

#include "koszul/matrix.hpp"

namespace koszul {

// Bounded chain complex of free modules with homological grading
// (differentials lower the degree by one).
struct ChainComplex {
    RingCtx ring;
    int lo = 0;
    std::vector<int> ranks;   // ranks[i] is the rank in degree lo + i
    std::vector<LMatrix> diff; // diff[i]: degree lo+i+1 -> lo+i

    static ChainComplex zero(const RingCtx &R) { return ChainComplex{R, 0, {}, {}}; }

    int hi() const { return lo + int(ranks.size()) - 1; }
    int rank(int n) const {
        if (n < lo || n > hi()) return 0;
        return ranks[size_t(n - lo)];
    }
    LMatrix d(int n) const { // degree n -> n-1
        if (n - 1 < lo || n > hi()) return LMatrix::zero(ring, rank(n - 1), rank(n));
        return diff[size_t(n - 1 - lo)];
    }
    int total_rank() const;

    void check() const; // shapes and d*d == 0
    bool operator==(const ChainComplex &o) const;
};

ChainComplex direct_sum(const ChainComplex &a, const ChainComplex &b);

// Chain map between two complexes; absent degrees are zero.
struct ChainMap {
    ChainComplex x, y; // source, target
    std::map<int, LMatrix> comp;

    LMatrix f(int n) const {
        auto it = comp.find(n);
        if (it != comp.end()) return it->second;
        return LMatrix::zero(x.ring, y.rank(n), x.rank(n));
    }
    void set(int n, LMatrix m) {
        if (m.rows() != y.rank(n) || m.cols() != x.rank(n)) throw ShapeMismatch("chain map component");
        comp[n] = std::move(m);
    }
    bool is_chain_map() const;
    bool equals(const ChainMap &o) const;
};

ChainMap identity_map(const ChainComplex &x);
ChainMap zero_map_between(const ChainComplex &x, const ChainComplex &y);
ChainMap compose(const ChainMap &g, const ChainMap &f); // g after f
ChainMap add_maps(const ChainMap &a, const ChainMap &b);
ChainMap sub_maps(const ChainMap &a, const ChainMap &b);
ChainMap negate_map(const ChainMap &a);
ChainMap direct_sum_maps(const ChainMap &a, const ChainMap &b);

// Mapping cone of a chain map: Cone(f)_n = x_{n-1} (+) y_n.
ChainComplex mapping_cone(const ChainMap &f);

// Classical homotopy data: h[n]: x_n -> y_{n+1}.
using DegreeMap = std::map<int, LMatrix>;

// Does f - g = d h + h d hold?
bool is_classical_homotopy(const DegreeMap &h, const ChainMap &f, const ChainMap &g);

// Exactness checks.
bool exact_at_l1(const ChainComplex &c, int n, int xvar);      // DVR, exact
bool exact_at_rank(const ChainComplex &c, int n);              // fraction field
bool quasi_iso_l1(const ChainMap &f, int xvar);                // cone exact everywhere
bool quasi_iso_rank(const ChainMap &f);

} // namespace koszul
