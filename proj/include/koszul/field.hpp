#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "koszul/errors.hpp"

namespace koszul {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class FieldKind { rationals, prime };

// Coefficient field: Q, or F_p for a prime p.  F_p elements are kept as
// rationals with denominator 1 and numerator in [0, p).
struct BaseField {
    FieldKind kind = FieldKind::rationals;
    Int p = 0;

    bool operator==(const BaseField &o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const BaseField &o) const { return !(*this == o); }

    static BaseField rationals() { return BaseField{FieldKind::rationals, 0}; }
    static BaseField prime(Int p);

    bool is_prime_field() const { return kind == FieldKind::prime; }

    Rat normalize(const Rat &v) const;
    Rat add(const Rat &a, const Rat &b) const { return normalize(a + b); }
    Rat sub(const Rat &a, const Rat &b) const { return normalize(a - b); }
    Rat mul(const Rat &a, const Rat &b) const { return normalize(a * b); }
    Rat neg(const Rat &a) const { return normalize(-a); }
    Rat inv(const Rat &a) const;
    Rat div(const Rat &a, const Rat &b) const { return mul(a, inv(b)); }
};

inline Int mod_floor(Int a, const Int &p) {
    a %= p;
    if (a < 0) a += p;
    return a;
}

// Extended Euclid inverse of a mod p.
inline Int mod_inverse(Int a, const Int &p) {
    a = mod_floor(a, p);
    if (a == 0) throw MathError("division by zero in F_p");
    Int r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw MathError("non-invertible element mod p");
    return mod_floor(s0, p);
}

inline BaseField BaseField::prime(Int p) {
    if (p < 2) throw InvalidParams("field characteristic must be a prime >= 2");
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw InvalidParams("field characteristic must be prime");
    return BaseField{FieldKind::prime, std::move(p)};
}

inline Rat BaseField::normalize(const Rat &v) const {
    if (kind == FieldKind::rationals) return v;
    Int num = boost::multiprecision::numerator(v);
    Int den = boost::multiprecision::denominator(v);
    Int r = mod_floor(num, p);
    if (den != 1) r = mod_floor(r * mod_inverse(den, p), p);
    return Rat(r);
}

inline Rat BaseField::inv(const Rat &a) const {
    if (a == 0) throw MathError("division by zero");
    if (kind == FieldKind::rationals) return Rat(1) / a;
    return Rat(mod_inverse(boost::multiprecision::numerator(a), p));
}

} // namespace koszul
