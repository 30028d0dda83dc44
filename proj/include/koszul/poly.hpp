#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

// Exponent vector; one entry per ring variable.
using Exp = std::vector<uint32_t>;

// Sparse multivariate polynomial over a base field.  Terms map exponent
// vectors (lex-ordered by std::map) to nonzero coefficients.
class Poly {
  public:
    Poly() = default;
    Poly(BaseField field, int nvars) : field_(std::move(field)), nvars_(nvars) {}

    static Poly zero(const BaseField &f, int nvars) { return Poly(f, nvars); }
    static Poly constant(const BaseField &f, int nvars, const Rat &c);
    static Poly variable(const BaseField &f, int nvars, int v);
    static Poly monomial(const BaseField &f, int nvars, const Exp &e, const Rat &c);

    const BaseField &field() const { return field_; }
    int nvars() const { return nvars_; }
    const std::map<Exp, Rat> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    size_t size() const { return terms_.size(); }

    // Coefficient of the all-zero exponent, i.e. the value at the origin.
    Rat at_origin() const;

    int degree() const;               // total degree, -1 for zero
    int degree_in(int v) const;       // degree in one variable
    bool uses_var(int v) const;

    Poly operator+(const Poly &o) const;
    Poly operator-(const Poly &o) const;
    Poly operator*(const Poly &o) const;
    Poly operator-() const;
    Poly scaled(const Rat &c) const;
    Poly pow(unsigned k) const;

    bool operator==(const Poly &o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly &o) const { return !(*this == o); }

    // Substitute 0 for every variable with kill[v] != 0.
    Poly subst_zero(const std::vector<char> &kill) const;
    Poly subst_zero_var(int v) const;

    bool divisible_by_var(int v) const;
    Poly divided_by_var(int v) const; // exact; throws if not divisible

    void add_term(const Exp &e, const Rat &c); // accumulates, drops zeros

    std::string to_string(const std::vector<std::string> &vars) const;

  private:
    BaseField field_;
    int nvars_ = 0;
    std::map<Exp, Rat> terms_;
};

// gcd normalized so the lex-leading coefficient is positive (Q: integer
// primitive) or 1 (F_p); gcd(0,0) = 0.
Poly poly_gcd(const Poly &a, const Poly &b);

// One-sided fast filter: true means a and b are certainly coprime (checked on
// a univariate specialization modulo a word-size prime); false is inconclusive.
bool certainly_coprime(const Poly &a, const Poly &b);

// Exact division; throws MathError if b does not divide a.
Poly poly_exact_divide(const Poly &a, const Poly &b);

} // namespace koszul
