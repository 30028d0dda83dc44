#pragma once

#include "koszul/typical.hpp"

namespace koszul {

struct NormalizeCertificate {
    std::vector<std::pair<std::string, bool>> checks;

    void record(const std::string &name, bool ok) { checks.emplace_back(name, ok); }
    void require(const std::string &name, bool ok) {
        record(name, ok);
        if (!ok) throw NotSimple("certificate failed: " + name);
    }
    bool all() const {
        for (const auto &[n, ok] : checks)
            if (!ok) return false;
        return true;
    }
};

struct NormalizationResult {
    TypicalType type;
    CubeMorphism theta; // x -> make_typical(ctx, type), verified invertible
    NormalizeCertificate cert;
};

// The structure theorem as an algorithm.  Throws NotKoszulDirection when the
// input is not Koszul and NotSimple when any certificate fails (the input is
// Koszul but not in the simple class).
NormalizationResult normalize_simple(const Cube &x);

// Independent re-verification of a result against the input.
bool verify_normalization(const Cube &x, const NormalizationResult &r);

} // namespace koszul
