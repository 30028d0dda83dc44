// Multivariate gcd via subresultant pseudo-remainder sequences over a dense
// recursive representation with integer (or F_p) coefficients.  Entry point
// is poly_gcd in poly.hpp; sparse rational polynomials are converted in,
// the gcd is computed here, and the result converted back.

#include "koszul/poly.hpp"

#include <algorithm>
#include <functional>

namespace koszul {

namespace {

// Dense recursive polynomial: nv == 0 holds a constant, otherwise a
// coefficient list in the top variable (index nv-1), entries over nv-1 vars.
struct ZP {
    int nv = 0;
    Int c;                // nv == 0
    std::vector<ZP> coef; // nv > 0; coef[d] multiplies var^d

    bool is_zero() const { return nv == 0 ? c == 0 : coef.empty(); }
    int deg() const { return int(coef.size()) - 1; }
};

struct ZCtx {
    bool fp = false;
    Int p = 0;
    Int norm(Int v) const { return fp ? mod_floor(std::move(v), p) : v; }
};

ZP zp_const(int nv, Int v, const ZCtx &C) {
    ZP r;
    if (nv == 0) {
        r.c = C.norm(std::move(v));
        return r;
    }
    r.nv = nv;
    ZP inner = zp_const(nv - 1, std::move(v), C);
    if (!inner.is_zero()) r.coef.push_back(std::move(inner));
    return r;
}

void trim(ZP &a) {
    while (!a.coef.empty() && a.coef.back().is_zero()) a.coef.pop_back();
}

ZP zp_add(const ZP &a, const ZP &b, const ZCtx &C) {
    if (a.nv == 0) {
        ZP r;
        r.c = C.norm(a.c + b.c);
        return r;
    }
    ZP r;
    r.nv = a.nv;
    size_t n = std::max(a.coef.size(), b.coef.size());
    ZP zero = zp_const(a.nv - 1, 0, C);
    for (size_t i = 0; i < n; ++i) {
        const ZP &x = i < a.coef.size() ? a.coef[i] : zero;
        const ZP &y = i < b.coef.size() ? b.coef[i] : zero;
        r.coef.push_back(zp_add(x, y, C));
    }
    trim(r);
    return r;
}

ZP zp_neg(const ZP &a, const ZCtx &C) {
    ZP r = a;
    if (a.nv == 0) {
        r.c = C.norm(-a.c);
        return r;
    }
    for (auto &x : r.coef) x = zp_neg(x, C);
    return r;
}

ZP zp_sub(const ZP &a, const ZP &b, const ZCtx &C) { return zp_add(a, zp_neg(b, C), C); }

ZP zp_mul(const ZP &a, const ZP &b, const ZCtx &C) {
    if (a.nv == 0) {
        ZP r;
        r.c = C.norm(a.c * b.c);
        return r;
    }
    ZP r;
    r.nv = a.nv;
    if (a.coef.empty() || b.coef.empty()) return r;
    r.coef.assign(a.coef.size() + b.coef.size() - 1, zp_const(a.nv - 1, 0, C));
    for (size_t i = 0; i < a.coef.size(); ++i)
        for (size_t j = 0; j < b.coef.size(); ++j)
            r.coef[i + j] = zp_add(r.coef[i + j], zp_mul(a.coef[i], b.coef[j], C), C);
    trim(r);
    return r;
}

// Exact division (throws when inexact).
ZP zp_exact_div(const ZP &a, const ZP &b, const ZCtx &C) {
    if (b.is_zero()) throw MathError("zp division by zero");
    if (a.nv == 0) {
        ZP r;
        if (C.fp) {
            r.c = C.norm(a.c * mod_inverse(b.c, C.p));
        } else {
            if (a.c % b.c != 0) throw MathError("inexact integer division");
            r.c = a.c / b.c;
        }
        return r;
    }
    ZP rem = a;
    ZP q;
    q.nv = a.nv;
    if (rem.is_zero()) return q;
    if (rem.deg() < b.deg()) throw MathError("inexact zp division");
    q.coef.assign(size_t(rem.deg() - b.deg()) + 1, zp_const(a.nv - 1, 0, C));
    while (!rem.is_zero() && rem.deg() >= b.deg()) {
        ZP t = zp_exact_div(rem.coef.back(), b.coef.back(), C);
        int shift = rem.deg() - b.deg();
        q.coef[size_t(shift)] = t;
        ZP tb;
        tb.nv = a.nv;
        tb.coef.assign(size_t(shift) + b.coef.size(), zp_const(a.nv - 1, 0, C));
        for (size_t i = 0; i < b.coef.size(); ++i) tb.coef[shift + i] = zp_mul(t, b.coef[i], C);
        trim(tb);
        int before = rem.deg();
        rem = zp_sub(rem, tb, C);
        if (!rem.is_zero() && rem.deg() >= before) throw MathError("inexact zp division");
    }
    if (!rem.is_zero()) throw MathError("inexact zp division");
    trim(q);
    return q;
}

ZP zp_gcd(const ZP &a, const ZP &b, const ZCtx &C);

ZP zp_content(const ZP &a, const ZCtx &C) {
    ZP g = zp_const(a.nv - 1, 0, C);
    for (const auto &x : a.coef) {
        g = zp_gcd(g, x, C);
        if (!C.fp && g.nv == 0 && boost::multiprecision::abs(g.c) == 1) break;
        if (C.fp && g.nv == 0 && g.c != 0) break;
    }
    return g;
}

ZP zp_lift(const ZP &low, int nv) { // embed an (nv-1)-variable poly as degree 0
    ZP r;
    r.nv = nv;
    if (!low.is_zero()) r.coef.push_back(low);
    return r;
}

// Pseudo-remainder of a by b in the top variable: the R in
// lc(b)^(deg a - deg b + 1) * a = Q*b + R.
ZP zp_prem(ZP a, const ZP &b, const ZCtx &C) {
    const ZP &lb = b.coef.back();
    const int db = b.deg();
    int needed = a.deg() - db + 1;
    while (!a.is_zero() && a.deg() >= db) {
        ZP la = a.coef.back();
        int shift = a.deg() - db;
        ZP lba;
        lba.nv = a.nv;
        lba.coef.reserve(a.coef.size());
        for (const auto &x : a.coef) lba.coef.push_back(zp_mul(lb, x, C));
        trim(lba);
        ZP sb;
        sb.nv = a.nv;
        sb.coef.assign(size_t(shift) + b.coef.size(), zp_const(a.nv - 1, 0, C));
        for (size_t i = 0; i < b.coef.size(); ++i) sb.coef[shift + i] = zp_mul(la, b.coef[i], C);
        trim(sb);
        a = zp_sub(lba, sb, C);
        --needed;
    }
    // degree can drop by more than one per step; pad the missing lc factors
    for (; needed > 0; --needed) {
        ZP lba;
        lba.nv = a.nv;
        lba.coef.reserve(a.coef.size());
        for (const auto &x : a.coef) lba.coef.push_back(zp_mul(lb, x, C));
        trim(lba);
        a = std::move(lba);
    }
    return a;
}

const ZP *bottom_lead(const ZP &a) {
    const ZP *lead = &a;
    while (lead->nv > 0) lead = &lead->coef.back();
    return lead;
}

ZP zp_unit_normalize(const ZP &a, const ZCtx &C) {
    if (a.is_zero()) return a;
    if (!C.fp) return bottom_lead(a)->c < 0 ? zp_neg(a, C) : a;
    Int inv = mod_inverse(bottom_lead(a)->c, C.p);
    ZP s = a;
    std::function<void(ZP &)> scale = [&](ZP &t) {
        if (t.nv == 0) {
            t.c = C.norm(t.c * inv);
            return;
        }
        for (auto &x : t.coef) scale(x);
    };
    scale(s);
    return s;
}

ZP zp_pow(const ZP &a, int k, const ZCtx &C, int nv) {
    ZP r = zp_const(nv, 1, C);
    for (int i = 0; i < k; ++i) r = zp_mul(r, a, C);
    return r;
}

ZP zp_gcd(const ZP &a, const ZP &b, const ZCtx &C) {
    if (a.is_zero()) return zp_unit_normalize(b, C);
    if (b.is_zero()) return zp_unit_normalize(a, C);
    if (a.nv == 0) {
        ZP r;
        r.c = C.fp ? Int(1) : boost::multiprecision::gcd(a.c, b.c);
        return r;
    }
    ZP ca = zp_content(a, C), cb = zp_content(b, C);
    ZP cg = zp_gcd(ca, cb, C);
    ZP f = zp_exact_div(a, zp_lift(ca, a.nv), C);
    ZP g = zp_exact_div(b, zp_lift(cb, a.nv), C);
    if (f.deg() < g.deg()) std::swap(f, g);

    if (g.deg() == 0) { // coprime in the top variable unless g is f-divisor... g is a unit times pp
        return zp_unit_normalize(zp_lift(cg, a.nv), C);
    }
    int d = f.deg() - g.deg();
    ZP minus_one = zp_const(a.nv - 1, -1, C);
    ZP beta = zp_pow(minus_one, d + 1, C, a.nv - 1);
    ZP psi = minus_one;
    for (;;) {
        ZP r = zp_prem(f, g, C);
        if (r.is_zero()) { f = g; break; } // pp(g) is the gcd of primitive parts
        r = zp_exact_div(r, zp_lift(beta, a.nv), C);
        ZP neg_lg = zp_neg(g.coef.back(), C);
        if (d > 0) psi = zp_exact_div(zp_pow(neg_lg, d, C, a.nv - 1), zp_pow(psi, d - 1, C, a.nv - 1), C);
        d = g.deg() - r.deg();
        beta = zp_mul(neg_lg, zp_pow(psi, d, C, a.nv - 1), C);
        f = g;
        g = r;
        if (g.deg() == 0) { // nonzero remainder of degree 0: primitive parts coprime
            f = zp_const(a.nv, 1, C);
            break;
        }
    }
    ZP prim = f;
    if (prim.deg() > 0) {
        ZP cf = zp_content(prim, C);
        prim = zp_exact_div(prim, zp_lift(cf, a.nv), C);
    }
    return zp_unit_normalize(zp_mul(prim, zp_lift(cg, a.nv), C), C);
}

// ---------------------------------------------------------------------------
// conversions
// ---------------------------------------------------------------------------

void gather_terms(const ZP &a, Exp &e, std::map<Exp, Int> &out) {
    if (a.nv == 0) {
        if (a.c != 0) out[e] = a.c;
        return;
    }
    for (size_t d = 0; d < a.coef.size(); ++d) {
        e[a.nv - 1] = uint32_t(d);
        gather_terms(a.coef[d], e, out);
    }
    e[a.nv - 1] = 0;
}

ZP build_zp(const std::map<Exp, Int> &tm, int nv, const ZCtx &C) {
    ZP r;
    r.nv = nv;
    if (nv == 0) {
        r.c = tm.empty() ? Int(0) : tm.begin()->second;
        return r;
    }
    std::map<uint32_t, std::map<Exp, Int>> buckets;
    for (const auto &[e, c] : tm) {
        Exp sub(e.begin(), e.end() - 1);
        buckets[e.back()][sub] = c;
    }
    if (!buckets.empty()) {
        uint32_t maxd = buckets.rbegin()->first;
        for (uint32_t d = 0; d <= maxd; ++d) {
            auto it = buckets.find(d);
            r.coef.push_back(build_zp(it == buckets.end() ? std::map<Exp, Int>{} : it->second,
                                      nv - 1, C));
        }
    }
    trim(r);
    return r;
}

ZP to_zp(const Poly &p, const ZCtx &C) {
    Int den(1);
    if (!p.field().is_prime_field()) {
        for (const auto &[e, c] : p.terms())
            den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(c));
    }
    std::map<Exp, Int> tm;
    for (const auto &[e, c] : p.terms()) {
        Int n = boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c));
        tm[e] = C.norm(n);
    }
    return build_zp(tm, p.nvars(), C);
}

Poly from_zp(const ZP &a, const BaseField &f, int nvars) {
    std::map<Exp, Int> tm;
    Exp e(nvars, 0);
    gather_terms(a, e, tm);
    Poly p(f, nvars);
    for (auto &[ee, c] : tm) p.add_term(ee, Rat(c));
    return p;
}

} // namespace

Poly poly_gcd(const Poly &a, const Poly &b) {
    if (a.is_zero() && b.is_zero()) return a;
    const BaseField &f = a.field();
    if (a.is_constant() && !a.is_zero()) return Poly::constant(f, a.nvars(), 1);
    if (b.is_constant() && !b.is_zero()) return Poly::constant(f, a.nvars(), 1);
    if (certainly_coprime(a, b)) return Poly::constant(f, a.nvars(), 1);
    ZCtx C{f.is_prime_field(), f.p};
    ZP g = zp_gcd(to_zp(a, C), to_zp(b, C), C);
    Poly out = from_zp(g, f, a.nvars());
    if (out.is_constant()) return Poly::constant(f, a.nvars(), 1);
    if (!f.is_prime_field()) {
        // strip integer content for a canonical representative
        Int ic(0);
        for (const auto &[e, c] : out.terms())
            ic = boost::multiprecision::gcd(ic, boost::multiprecision::numerator(c));
        if (ic > 1) out = out.scaled(Rat(1) / Rat(ic));
    }
    return out;
}

namespace {

// modular arithmetic on a word-size prime
constexpr uint64_t kFilterPrime = 1000003;

uint64_t addm(uint64_t a, uint64_t b) { return (a + b) % kFilterPrime; }
uint64_t mulm(uint64_t a, uint64_t b) { return (a * b) % kFilterPrime; }

uint64_t powm(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    a %= kFilterPrime;
    while (e) {
        if (e & 1) r = mulm(r, a);
        a = mulm(a, a);
        e >>= 1;
    }
    return r;
}
uint64_t invm(uint64_t a) { return powm(a, kFilterPrime - 2); }

std::optional<uint64_t> coef_mod(const Rat &c) {
    uint64_t n = uint64_t(boost::multiprecision::numerator(c) % Int(kFilterPrime) +
                          (boost::multiprecision::numerator(c) < 0 ? Int(kFilterPrime) : Int(0)));
    Int dd = boost::multiprecision::denominator(c) % Int(kFilterPrime);
    if (dd == 0) return std::nullopt;
    return mulm(n % kFilterPrime, invm(uint64_t(dd)));
}

// specialize x_i -> c_i * t and return dense univariate coefficients mod p
std::optional<std::vector<uint64_t>> specialize(const Poly &p, const std::vector<uint64_t> &c) {
    int deg = p.degree();
    std::vector<uint64_t> out(size_t(deg) + 1, 0);
    for (const auto &[e, k] : p.terms()) {
        auto km = coef_mod(k);
        if (!km) return std::nullopt;
        uint64_t v = *km;
        int tot = 0;
        for (int i = 0; i < p.nvars(); ++i) {
            if (e[i] == 0) continue;
            tot += int(e[i]);
            v = mulm(v, powm(c[size_t(i)], e[i]));
        }
        out[size_t(tot)] = addm(out[size_t(tot)], v);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

int uni_gcd_degree(std::vector<uint64_t> a, std::vector<uint64_t> b) {
    while (!b.empty()) {
        // a mod b
        uint64_t lb = invm(b.back());
        while (a.size() >= b.size()) {
            uint64_t q = mulm(a.back(), lb);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[off + i] = (a[off + i] + kFilterPrime - mulm(q, b[i]) % kFilterPrime) % kFilterPrime;
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return int(a.size()) - 1;
}

} // namespace

bool certainly_coprime(const Poly &a, const Poly &b) {
    if (a.is_zero() || b.is_zero()) return false;
    if (a.field().is_prime_field()) {
        Int p = a.field().p;
        if (p <= 3 || Int(kFilterPrime) % p == 0) return false; // stay conservative
        // For F_p inputs the coefficients are plain residues; embed them.
    }
    std::vector<uint64_t> c(size_t(a.nvars()));
    uint64_t seed = 0x2545f4914f6cdd1dull;
    for (auto &v : c) {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        v = 1 + seed % (kFilterPrime - 1);
    }
    if (a.field().is_prime_field()) {
        // specializing mod kFilterPrime is meaningless for F_p coefficients
        return false;
    }
    auto ua = specialize(a, c), ub = specialize(b, c);
    if (!ua || !ub) return false;
    if (int(ua->size()) - 1 != a.degree() || int(ub->size()) - 1 != b.degree())
        return false; // degree dropped: unlucky point
    return uni_gcd_degree(*ua, *ub) == 0;
}

} // namespace koszul
