#pragma once

#include <optional>
#include <string>
#include <vector>

#include "koszul/poly.hpp"

namespace koszul {

// Ambient ring: k[x_1..x_d] localized at the origin.
struct RingCtx {
    BaseField field;
    std::vector<std::string> vars;

    int nvars() const { return int(vars.size()); }
    bool operator==(const RingCtx &o) const { return field == o.field && vars == o.vars; }
    bool operator!=(const RingCtx &o) const { return !(*this == o); }
};

// Fraction num/den with den a unit of the local ring (nonzero at the origin).
// The denominator is kept factored: den = dconst * prod f_i^{e_i} with every
// factor normalized to f_i(0) = 1, so cancellations are per-factor exact
// divisions.  Representation is lazy; equality is by cross-multiplication.
class LocalScalar {
  public:
    LocalScalar() = default;
    LocalScalar(Poly num, Poly den);
    explicit LocalScalar(Poly num);

    static LocalScalar zero(const RingCtx &R);
    static LocalScalar one(const RingCtx &R);
    static LocalScalar constant(const RingCtx &R, const Rat &c);
    static LocalScalar variable(const RingCtx &R, int v);

    const Poly &num() const { return num_; }
    Poly den() const; // assembled denominator
    const std::vector<std::pair<Poly, int>> &den_factors() const { return dfac_; }
    const Rat &den_const() const { return dconst_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_unit() const { return num_.at_origin() != 0; }
    Rat at_origin() const; // value at the origin (den never vanishes there)

    LocalScalar operator+(const LocalScalar &o) const;
    // Sum with one common-denominator pass (used by matrix products).
    static LocalScalar sum(const RingCtx &R, const std::vector<LocalScalar> &terms);
    LocalScalar operator-(const LocalScalar &o) const;
    LocalScalar operator*(const LocalScalar &o) const;
    LocalScalar operator-() const;
    LocalScalar inverse() const; // requires unit
    LocalScalar operator/(const LocalScalar &o) const { return *this * o.inverse(); }

    bool equals(const LocalScalar &o) const;
    bool operator==(const LocalScalar &o) const { return equals(o); }
    bool operator!=(const LocalScalar &o) const { return !equals(o); }

    // Lowest terms via multivariate gcd; denominator scaled to constant term 1.
    LocalScalar reduced() const;

    // Substitute 0 for the given variables (a ring homomorphism L_d -> L_{d-|T|}).
    LocalScalar subst_zero(const std::vector<char> &kill) const;
    LocalScalar subst_zero_var(int v) const;

    bool free_of_var(int v) const; // after reduction, independent of variable v

    // Exact division by a variable inside the local ring; nullopt when the
    // quotient leaves the ring.
    std::optional<LocalScalar> divided_by_var(int v) const;
    std::optional<LocalScalar> divided_by_var_n(int v, int n) const;

    std::string to_string(const std::vector<std::string> &vars) const;

  private:
    void maybe_shrink();
    void push_factor(Poly f, int e); // normalizes to f(0) = 1, merges equal factors
    Poly num_;
    Rat dconst_ = 1;
    std::vector<std::pair<Poly, int>> dfac_; // sorted, non-constant, value 1 at the origin
};

// Context for a distinguished regular sequence: direction s (0-based) is
// assigned the variable fvar[s]; killed_vars lists variables already
// quotiented away in nested contexts.
struct RegularContext {
    RingCtx ring;
    std::vector<int> fvar;
    std::vector<int> killed_vars;

    int nS() const { return int(fvar.size()); }
    LocalScalar f(int s) const { return LocalScalar::variable(ring, fvar.at(s)); }
    int fvar_of(int s) const { return fvar.at(s); }

    // Quotient by f_s: drops direction s and kills its variable.
    RegularContext quotient(int s) const;
    // Keep only the directions listed (in the given order).
    RegularContext with_directions(const std::vector<int> &dirs) const;

    void check_valid() const; // injectivity, bounds, disjointness from killed
    bool operator==(const RegularContext &o) const {
        return ring == o.ring && fvar == o.fvar && killed_vars == o.killed_vars;
    }
};

// Text grammar for scalars: `<poly>` or `<poly> / (<poly>)`, with `p/q`
// rational coefficients, `+ - *`, `^`, parentheses and declared variable names.
LocalScalar parse_scalar(const RingCtx &R, const std::string &text);
Poly parse_poly(const RingCtx &R, const std::string &text);

} // namespace koszul
