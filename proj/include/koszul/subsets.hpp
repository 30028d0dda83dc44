#pragma once

#include <cstdint>
#include <vector>

namespace koszul {

// Subsets of the direction set S (|S| <= 16) as bitmasks.
using Mask = uint32_t;

inline Mask bit(int k) { return Mask(1) << k; }
inline bool has(Mask T, int k) { return T & bit(k); }
inline Mask without(Mask T, int k) { return T & ~bit(k); }
inline int card(Mask T) { return __builtin_popcount(T); }
inline Mask full_mask(int n) { return (Mask(1) << n) - 1; }

inline std::vector<int> members(Mask T) {
    std::vector<int> v;
    for (int k = 0; T >> k; ++k)
        if (has(T, k)) v.push_back(k);
    return v;
}

// All subsets of the given mask, ascending as integers.
inline std::vector<Mask> subsets_of(Mask T) {
    std::vector<Mask> out;
    Mask sub = 0;
    for (;;) {
        out.push_back(sub);
        if (sub == T) break;
        sub = (sub - T) & T;
    }
    return out;
}

// Map a mask over positions {0..|dirs|-1} into the ambient mask picking dirs.
inline Mask embed_mask(Mask small, const std::vector<int> &dirs) {
    Mask out = 0;
    for (int i = 0; i < int(dirs.size()); ++i)
        if (has(small, i)) out |= bit(dirs[i]);
    return out;
}

// Count of j in T with j < k (the Koszul sign exponent).
inline int sign_exponent(Mask T, int k) { return card(T & (bit(k) - 1)); }

} // namespace koszul
