#include "koszul/poly.hpp"

#include <algorithm>
#include <sstream>

namespace koszul {

Poly Poly::constant(const BaseField &f, int nvars, const Rat &c) {
    Poly p(f, nvars);
    p.add_term(Exp(nvars, 0), f.normalize(c));
    return p;
}

Poly Poly::variable(const BaseField &f, int nvars, int v) {
    Poly p(f, nvars);
    Exp e(nvars, 0);
    e.at(v) = 1;
    p.add_term(e, Rat(1));
    return p;
}

Poly Poly::monomial(const BaseField &f, int nvars, const Exp &e, const Rat &c) {
    Poly p(f, nvars);
    p.add_term(e, f.normalize(c));
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Exp(nvars_, 0);
}

Rat Poly::at_origin() const {
    auto it = terms_.find(Exp(nvars_, 0));
    return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::degree() const {
    int d = -1;
    for (const auto &[e, c] : terms_) {
        int t = 0;
        for (auto x : e) t += int(x);
        d = std::max(d, t);
    }
    return d;
}

int Poly::degree_in(int v) const {
    int d = -1;
    for (const auto &[e, c] : terms_) d = std::max(d, int(e[v]));
    return terms_.empty() ? -1 : d;
}

bool Poly::uses_var(int v) const {
    for (const auto &[e, c] : terms_)
        if (e[v] > 0) return true;
    return false;
}

void Poly::add_term(const Exp &e, const Rat &c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, field_.normalize(c));
        it = terms_.find(e);
        if (it != terms_.end() && it->second == 0) terms_.erase(it);
        return;
    }
    it->second = field_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly &o) const {
    Poly r = *this;
    for (const auto &[e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly &o) const {
    Poly r = *this;
    for (const auto &[e, c] : o.terms_) r.add_term(e, field_.neg(c));
    return r;
}

Poly Poly::operator-() const {
    Poly r(field_, nvars_);
    for (const auto &[e, c] : terms_) r.terms_.emplace(e, field_.neg(c));
    return r;
}

Poly Poly::scaled(const Rat &c) const {
    Poly r(field_, nvars_);
    if (c == 0) return r;
    for (const auto &[e, k] : terms_) {
        Rat v = field_.mul(k, c);
        if (v != 0) r.terms_.emplace(e, v);
    }
    return r;
}

Poly Poly::operator*(const Poly &o) const {
    Poly r(field_, nvars_);
    Exp e(nvars_, 0);
    for (const auto &[ea, ca] : terms_) {
        for (const auto &[eb, cb] : o.terms_) {
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, field_.mul(ca, cb));
        }
    }
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly r = Poly::constant(field_, nvars_, 1);
    Poly b = *this;
    while (k) {
        if (k & 1u) r = r * b;
        b = b * b;
        k >>= 1u;
    }
    return r;
}

Poly Poly::subst_zero(const std::vector<char> &kill) const {
    Poly r(field_, nvars_);
    for (const auto &[e, c] : terms_) {
        bool dead = false;
        for (int v = 0; v < nvars_; ++v)
            if (kill[v] && e[v] > 0) { dead = true; break; }
        if (!dead) r.terms_.emplace(e, c);
    }
    return r;
}

Poly Poly::subst_zero_var(int v) const {
    std::vector<char> kill(nvars_, 0);
    kill.at(v) = 1;
    return subst_zero(kill);
}

bool Poly::divisible_by_var(int v) const {
    for (const auto &[e, c] : terms_)
        if (e[v] == 0) return false;
    return true;
}

Poly Poly::divided_by_var(int v) const {
    Poly r(field_, nvars_);
    for (const auto &[e, c] : terms_) {
        if (e[v] == 0) throw MathError("polynomial not divisible by variable");
        Exp e2 = e;
        e2[v] -= 1;
        r.terms_.emplace(e2, c);
    }
    return r;
}

std::string Poly::to_string(const std::vector<std::string> &vars) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print lex-descending so leading terms come first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Exp &e = it->first;
        Rat c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (neg) c = -c;
        bool has_var = false;
        for (int v = 0; v < nvars_; ++v)
            if (e[v] > 0) has_var = true;
        if (c != 1 || !has_var) {
            os << c;
            if (has_var) os << "*";
        }
        bool first_var = true;
        for (int v = 0; v < nvars_; ++v) {
            if (e[v] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << vars.at(v);
            if (e[v] > 1) os << "^" << e[v];
        }
    }
    return os.str();
}

Poly poly_exact_divide(const Poly &a, const Poly &b) {
    if (b.is_zero()) throw MathError("division by zero polynomial");
    Poly r = a;
    Poly q(a.field(), a.nvars());
    const auto &lead = *b.terms().rbegin();
    const BaseField &f = a.field();
    while (!r.is_zero()) {
        const auto &lr = *r.terms().rbegin();
        Exp e(a.nvars(), 0);
        bool ok = true;
        for (int v = 0; v < a.nvars(); ++v) {
            if (lr.first[v] < lead.first[v]) { ok = false; break; }
            e[v] = lr.first[v] - lead.first[v];
        }
        if (!ok) throw MathError("inexact polynomial division");
        Rat c = f.div(lr.second, lead.second);
        Poly t = Poly::monomial(f, a.nvars(), e, c);
        q = q + t;
        r = r - t * b;
    }
    return q;
}

} // namespace koszul
