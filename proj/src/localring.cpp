#include "koszul/localring.hpp"

#include <algorithm>
#include <cctype>

namespace koszul {

namespace {
// Lazy fractions are shrunk once they pass this term-count budget.
constexpr size_t kReduceThreshold = 28;
} // namespace

namespace {

// strict order on polynomials for keeping factor lists sorted
bool poly_less(const Poly &a, const Poly &b) { return a.terms() < b.terms(); }

} // namespace

void LocalScalar::push_factor(Poly f, int e) {
    if (e <= 0 || f.is_constant()) {
        if (!f.is_constant()) return;
        for (int i = 0; i < e; ++i) dconst_ = num_.field().mul(dconst_, f.at_origin());
        return;
    }
    Rat c = f.at_origin();
    if (c == 0) throw MathError("denominator factor is not a unit of the local ring");
    if (c != 1) {
        f = f.scaled(num_.field().inv(c));
        for (int i = 0; i < e; ++i) dconst_ = num_.field().mul(dconst_, c);
    }
    auto it = std::lower_bound(dfac_.begin(), dfac_.end(), f,
                               [](const auto &p, const Poly &x) { return poly_less(p.first, x); });
    if (it != dfac_.end() && it->first == f) {
        it->second += e;
    } else {
        dfac_.insert(it, {std::move(f), e});
    }
}

LocalScalar::LocalScalar(Poly num, Poly den) : num_(std::move(num)) {
    if (den.at_origin() == 0) throw MathError("denominator is not a unit of the local ring");
    if (den.is_constant()) {
        dconst_ = den.at_origin();
    } else {
        push_factor(std::move(den), 1);
    }
}

LocalScalar::LocalScalar(Poly num) : num_(std::move(num)) {}

Poly LocalScalar::den() const {
    Poly d = Poly::constant(num_.field(), num_.nvars(), dconst_);
    for (const auto &[f, e] : dfac_)
        for (int i = 0; i < e; ++i) d = d * f;
    return d;
}

LocalScalar LocalScalar::zero(const RingCtx &R) {
    return LocalScalar(Poly::zero(R.field, R.nvars()));
}
LocalScalar LocalScalar::one(const RingCtx &R) {
    return LocalScalar(Poly::constant(R.field, R.nvars(), 1));
}
LocalScalar LocalScalar::constant(const RingCtx &R, const Rat &c) {
    return LocalScalar(Poly::constant(R.field, R.nvars(), c));
}
LocalScalar LocalScalar::variable(const RingCtx &R, int v) {
    return LocalScalar(Poly::variable(R.field, R.nvars(), v));
}

Rat LocalScalar::at_origin() const {
    return num_.field().div(num_.at_origin(), dconst_);
}

void LocalScalar::maybe_shrink() {
    if (num_.size() > kReduceThreshold && !dfac_.empty()) *this = reduced();
}

LocalScalar LocalScalar::operator+(const LocalScalar &o) const {
    const BaseField &F = num_.field();
    LocalScalar r;
    if (dfac_ == o.dfac_) {
        r = *this;
        if (dconst_ == o.dconst_) {
            r.num_ = num_ + o.num_;
        } else {
            r.num_ = num_.scaled(o.dconst_) + o.num_.scaled(dconst_);
            r.dconst_ = F.mul(dconst_, o.dconst_);
        }
        if (r.num_.is_zero()) return LocalScalar(std::move(r.num_));
        r.maybe_shrink();
        return r;
    }
    // lcm of the factor lists; numerators scaled by the missing complements
    r.num_ = Poly::zero(F, num_.nvars());
    r.dconst_ = F.mul(dconst_, o.dconst_);
    Poly compA = Poly::constant(F, num_.nvars(), o.dconst_);
    Poly compB = Poly::constant(F, num_.nvars(), dconst_);
    size_t i = 0, j = 0;
    auto mul_pow = [](Poly &acc, const Poly &f, int e) {
        for (int t = 0; t < e; ++t) acc = acc * f;
    };
    std::vector<std::pair<Poly, int>> merged;
    while (i < dfac_.size() || j < o.dfac_.size()) {
        if (j >= o.dfac_.size() || (i < dfac_.size() && poly_less(dfac_[i].first, o.dfac_[j].first))) {
            merged.push_back(dfac_[i]);
            mul_pow(compB, dfac_[i].first, dfac_[i].second); // missing from o's den
            ++i;
        } else if (i >= dfac_.size() || poly_less(o.dfac_[j].first, dfac_[i].first)) {
            merged.push_back(o.dfac_[j]);
            mul_pow(compA, o.dfac_[j].first, o.dfac_[j].second); // missing from ours
            ++j;
        } else {
            int e = std::max(dfac_[i].second, o.dfac_[j].second);
            merged.emplace_back(dfac_[i].first, e);
            mul_pow(compA, dfac_[i].first, e - dfac_[i].second);
            mul_pow(compB, dfac_[i].first, e - o.dfac_[j].second);
            ++i;
            ++j;
        }
    }
    r.num_ = num_ * compA + o.num_ * compB;
    if (r.num_.is_zero()) return LocalScalar(std::move(r.num_));
    r.dfac_ = std::move(merged);
    r.maybe_shrink();
    return r;
}

LocalScalar LocalScalar::operator-(const LocalScalar &o) const { return *this + (-o); }

LocalScalar LocalScalar::sum(const RingCtx &R, const std::vector<LocalScalar> &terms) {
    const BaseField &F = R.field;
    LocalScalar r;
    r.num_ = Poly::zero(F, R.nvars());
    if (terms.empty()) return r;
    // lcm of every factor list and product of the constants
    for (const auto &t : terms) {
        for (const auto &[f, e] : t.dfac_) {
            auto it = std::lower_bound(
                r.dfac_.begin(), r.dfac_.end(), f,
                [](const auto &p, const Poly &x) { return poly_less(p.first, x); });
            if (it != r.dfac_.end() && it->first == f) {
                it->second = std::max(it->second, e);
            } else {
                r.dfac_.insert(it, {f, e});
            }
        }
        r.dconst_ = F.mul(r.dconst_, t.dconst_);
    }
    for (const auto &t : terms) {
        if (t.num_.is_zero()) continue;
        Poly comp = Poly::constant(F, R.nvars(), F.div(r.dconst_, t.dconst_));
        for (const auto &[f, e] : r.dfac_) {
            int have = 0;
            for (const auto &[g, eg] : t.dfac_)
                if (g == f) { have = eg; break; }
            for (int k = 0; k < e - have; ++k) comp = comp * f;
        }
        r.num_ = r.num_ + t.num_ * comp;
    }
    if (r.num_.is_zero()) return LocalScalar(std::move(r.num_));
    if (r.num_.size() > kReduceThreshold && !r.dfac_.empty()) r = r.reduced();
    return r;
}

LocalScalar LocalScalar::operator*(const LocalScalar &o) const {
    if (is_zero() || o.is_zero()) return LocalScalar(Poly::zero(num_.field(), num_.nvars()));
    LocalScalar r;
    r.num_ = num_ * o.num_;
    r.dconst_ = num_.field().mul(dconst_, o.dconst_);
    r.dfac_ = dfac_;
    for (const auto &[f, e] : o.dfac_) r.push_factor(f, e);
    r.maybe_shrink();
    return r;
}

LocalScalar LocalScalar::operator-() const {
    LocalScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

LocalScalar LocalScalar::inverse() const {
    if (!is_unit()) throw MathError("inverse of a non-unit");
    LocalScalar r;
    r.num_ = Poly::constant(num_.field(), num_.nvars(), dconst_);
    for (const auto &[f, e] : dfac_)
        for (int i = 0; i < e; ++i) r.num_ = r.num_ * f;
    if (num_.is_constant()) {
        r.dconst_ = num_.at_origin();
    } else {
        r.push_factor(num_, 1); // normalizes the factor, folds its value at 0
    }
    return r;
}

bool LocalScalar::equals(const LocalScalar &o) const {
    if (num_.is_zero()) return o.num_.is_zero();
    if (o.num_.is_zero()) return false;
    // strip common factors, then cross-multiply
    Poly da = Poly::constant(num_.field(), num_.nvars(), dconst_);
    Poly db = Poly::constant(num_.field(), num_.nvars(), o.dconst_);
    size_t i = 0, j = 0;
    auto mul_pow = [](Poly &acc, const Poly &f, int e) {
        for (int t = 0; t < e; ++t) acc = acc * f;
    };
    while (i < dfac_.size() || j < o.dfac_.size()) {
        if (j >= o.dfac_.size() || (i < dfac_.size() && poly_less(dfac_[i].first, o.dfac_[j].first))) {
            mul_pow(da, dfac_[i].first, dfac_[i].second);
            ++i;
        } else if (i >= dfac_.size() || poly_less(o.dfac_[j].first, dfac_[i].first)) {
            mul_pow(db, o.dfac_[j].first, o.dfac_[j].second);
            ++j;
        } else {
            int d = dfac_[i].second - o.dfac_[j].second;
            if (d > 0) mul_pow(da, dfac_[i].first, d);
            if (d < 0) mul_pow(db, o.dfac_[j].first, -d);
            ++i;
            ++j;
        }
    }
    return num_ * db == o.num_ * da;
}

LocalScalar LocalScalar::reduced() const {
    if (num_.is_zero()) return LocalScalar(num_);
    LocalScalar r = *this;
    const BaseField &F = num_.field();
    std::vector<std::pair<Poly, int>> keep;
    for (auto &[f, e] : r.dfac_) {
        Poly fac = f;
        int ee = e;
        while (ee > 0) {
            if (certainly_coprime(r.num_, fac)) break;
            Poly g = poly_gcd(r.num_, fac);
            if (g.is_constant()) break;
            r.num_ = poly_exact_divide(r.num_, g);
            Poly rest = poly_exact_divide(fac, g);
            ee -= 1;
            if (!rest.is_constant()) {
                Rat c = rest.at_origin();
                if (c != 1) rest = rest.scaled(F.inv(c));
                // rest(0) must be normalized back into dconst
                r.dconst_ = F.mul(r.dconst_, c);
                keep.emplace_back(rest, 1);
            } else {
                r.dconst_ = F.mul(r.dconst_, rest.at_origin());
            }
            // the untouched powers continue the loop against num
            fac = f;
        }
        if (ee > 0) keep.emplace_back(f, ee);
    }
    std::sort(keep.begin(), keep.end(),
              [](const auto &a, const auto &b) { return poly_less(a.first, b.first); });
    // merge equal factors after sorting
    std::vector<std::pair<Poly, int>> merged;
    for (auto &p : keep) {
        if (!merged.empty() && merged.back().first == p.first) {
            merged.back().second += p.second;
        } else {
            merged.push_back(std::move(p));
        }
    }
    r.dfac_ = std::move(merged);
    return r;
}

LocalScalar LocalScalar::subst_zero(const std::vector<char> &kill) const {
    LocalScalar r;
    r.num_ = num_.subst_zero(kill);
    r.dconst_ = dconst_;
    for (const auto &[f, e] : dfac_) r.push_factor(f.subst_zero(kill), e);
    return r;
}

LocalScalar LocalScalar::subst_zero_var(int v) const {
    std::vector<char> kill(size_t(num_.nvars()), 0);
    kill.at(size_t(v)) = 1;
    return subst_zero(kill);
}

bool LocalScalar::free_of_var(int v) const {
    if (num_.uses_var(v)) {
        LocalScalar s0 = subst_zero_var(v);
        return equals(s0);
    }
    for (const auto &[f, e] : dfac_)
        if (f.uses_var(v)) return equals(subst_zero_var(v));
    return true;
}

std::optional<LocalScalar> LocalScalar::divided_by_var(int v) const {
    if (is_zero()) return *this;
    LocalScalar r = reduced();
    if (!r.num_.divisible_by_var(v)) return std::nullopt;
    r.num_ = r.num_.divided_by_var(v);
    return r;
}

std::optional<LocalScalar> LocalScalar::divided_by_var_n(int v, int n) const {
    LocalScalar r = *this;
    for (int i = 0; i < n; ++i) {
        auto q = r.divided_by_var(v);
        if (!q) return std::nullopt;
        r = *q;
    }
    return r;
}

std::string LocalScalar::to_string(const std::vector<std::string> &vars) const {
    LocalScalar r = reduced();
    Poly d = r.den();
    if (d.is_constant()) {
        if (d.at_origin() == 1) return r.num_.to_string(vars);
        return r.num_.scaled(r.num_.field().inv(d.at_origin())).to_string(vars);
    }
    return "(" + r.num_.to_string(vars) + ")/(" + d.to_string(vars) + ")";
}

// ---------------------------------------------------------------------------
// RegularContext
// ---------------------------------------------------------------------------

RegularContext RegularContext::quotient(int s) const {
    RegularContext out = *this;
    out.killed_vars.push_back(fvar.at(s));
    out.fvar.erase(out.fvar.begin() + s);
    return out;
}

RegularContext RegularContext::with_directions(const std::vector<int> &dirs) const {
    RegularContext out = *this;
    out.fvar.clear();
    for (int d : dirs) out.fvar.push_back(fvar.at(d));
    return out;
}

void RegularContext::check_valid() const {
    std::vector<int> seen;
    for (int v : fvar) {
        if (v < 0 || v >= ring.nvars()) throw InvalidParams("sequence variable out of range");
        if (std::count(seen.begin(), seen.end(), v)) throw InvalidParams("sequence assignment not injective");
        if (std::count(killed_vars.begin(), killed_vars.end(), v))
            throw InvalidParams("sequence variable already quotiented");
        seen.push_back(v);
    }
}

// ---------------------------------------------------------------------------
// Scalar text grammar
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
    const std::string &s;
    size_t i = 0;
    int line = 1, col = 1;

    void adv() {
        if (i < s.size() && s[i] == '\n') { ++line; col = 0; }
        ++i;
        ++col;
    }
    void skip_ws() {
        while (i < s.size() && std::isspace(uint8_t(s[i]))) adv();
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) { adv(); return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string &msg) { throw ParseError(msg, line, col); }
};

struct PolyParser {
    Lexer &lx;
    const RingCtx &R;

    Poly parse_expr() {
        Poly acc = parse_term();
        for (;;) {
            if (lx.accept('+')) acc = acc + parse_term();
            else if (lx.accept('-')) acc = acc - parse_term();
            else return acc;
        }
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        while (lx.peek() == '*') {
            lx.accept('*');
            acc = acc * parse_factor();
        }
        return acc;
    }

    Poly parse_factor() {
        bool neg = false;
        while (lx.peek() == '-') { lx.accept('-'); neg = !neg; }
        Poly base = parse_base();
        if (lx.peek() == '^') {
            lx.accept('^');
            base = base.pow(parse_uint());
        }
        return neg ? -base : base;
    }

    Poly parse_base() {
        char c = lx.peek();
        if (c == '(') {
            lx.accept('(');
            Poly p = parse_expr();
            if (!lx.accept(')')) lx.fail("expected ')'");
            return p;
        }
        if (std::isdigit(uint8_t(c))) {
            Int n = parse_int_literal();
            // p/q rational coefficient: '/' immediately followed by digits
            if (lx.i < lx.s.size() && lx.s[lx.i] == '/' && lx.i + 1 < lx.s.size() &&
                std::isdigit(uint8_t(lx.s[lx.i + 1]))) {
                lx.adv();
                Int d = parse_int_literal();
                if (d == 0) lx.fail("zero denominator in coefficient");
                return Poly::constant(R.field, R.nvars(), Rat(n) / Rat(d));
            }
            return Poly::constant(R.field, R.nvars(), Rat(n));
        }
        if (std::isalpha(uint8_t(c)) || c == '_') {
            std::string name;
            while (lx.i < lx.s.size() && (std::isalnum(uint8_t(lx.s[lx.i])) || lx.s[lx.i] == '_')) {
                name += lx.s[lx.i];
                lx.adv();
            }
            for (int v = 0; v < R.nvars(); ++v)
                if (R.vars[v] == name) return Poly::variable(R.field, R.nvars(), v);
            lx.fail("unknown variable '" + name + "'");
        }
        lx.fail("unexpected character");
    }

    Int parse_int_literal() {
        lx.skip_ws();
        std::string digits;
        while (lx.i < lx.s.size() && std::isdigit(uint8_t(lx.s[lx.i]))) {
            digits += lx.s[lx.i];
            lx.adv();
        }
        if (digits.empty()) lx.fail("expected number");
        return Int(digits);
    }

    unsigned parse_uint() {
        Int n = parse_int_literal();
        if (n < 0 || n > 1000) lx.fail("exponent out of range");
        return unsigned(n);
    }
};

} // namespace

Poly parse_poly(const RingCtx &R, const std::string &text) {
    Lexer lx{text};
    PolyParser pp{lx, R};
    Poly p = pp.parse_expr();
    if (!lx.eof()) lx.fail("trailing input");
    return p;
}

LocalScalar parse_scalar(const RingCtx &R, const std::string &text) {
    Lexer lx{text};
    PolyParser pp{lx, R};
    Poly num = pp.parse_expr();
    if (lx.eof()) return LocalScalar(std::move(num));
    if (!lx.accept('/')) lx.fail("expected '/' or end of scalar");
    if (!lx.accept('(')) lx.fail("denominator must be parenthesized");
    Poly den = pp.parse_expr();
    if (!lx.accept(')')) lx.fail("expected ')'");
    if (!lx.eof()) lx.fail("trailing input");
    if (den.at_origin() == 0) lx.fail("denominator vanishes at the origin");
    return LocalScalar(std::move(num), std::move(den));
}

} // namespace koszul
