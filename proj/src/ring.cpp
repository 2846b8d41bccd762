#include "grauth/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace grauth {

namespace {

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 i = 2; i * i <= p; ++i)
        if (p % i == 0) return false;
    return true;
}

i64 ipow_checked(i64 base, int e, i64 cap) {
    i64 v = 1;
    for (int i = 0; i < e; ++i) {
        if (v > cap / base) return -1;
        v *= base;
    }
    return v;
}

// --- dense polynomial helpers over Z_m (coefficients in [0, m)) ---

using Poly = std::vector<i64>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, i64 m) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % m;
    }
    trim(out);
    return out;
}

// remainder of a by monic f, coefficients mod m
Poly poly_mod(Poly a, const Poly& f, i64 m) {
    trim(a);
    size_t df = f.size() - 1;
    while (a.size() > df) {
        i64 lead = a.back();
        size_t shift = a.size() - 1 - df;
        if (lead != 0) {
            for (size_t i = 0; i <= df; ++i) {
                i64& t = a[shift + i];
                t = ((t - lead * f[i]) % m + m) % m;
            }
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

// x^e mod (f, m) by square-and-multiply
Poly poly_xpow(i64 e, const Poly& f, i64 m) {
    Poly result{1};
    Poly base{0, 1};
    base = poly_mod(base, f, m);
    while (e > 0) {
        if (e & 1) result = poly_mod(poly_mul(result, base, m), f, m);
        base = poly_mod(poly_mul(base, base, m), f, m);
        e >>= 1;
    }
    return result;
}

// trial-division irreducibility over F_p for small degrees
bool divides(const Poly& f, const Poly& g, i64 p) {
    Poly rem = poly_mod(f, g, p);
    return rem.empty();
}

void enum_monic(i64 p, int deg, i64 index, Poly& out) {
    out.assign(deg + 1, 0);
    out[deg] = 1;
    for (int i = 0; i < deg; ++i) {
        out[i] = index % p;
        index /= p;
    }
}

bool irreducible_fp(const Poly& f, i64 p) {
    int d = int(f.size()) - 1;
    if (d <= 0) return false;
    if (d == 1) return true;
    Poly g;
    for (int dg = 1; dg <= d / 2; ++dg) {
        i64 count = 1;
        for (int i = 0; i < dg; ++i) count *= p;
        for (i64 idx = 0; idx < count; ++idx) {
            enum_monic(p, dg, idx, g);
            if (divides(f, g, p)) return false;
        }
    }
    return true;
}

Poly smallest_irreducible(i64 p, int d) {
    i64 count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    Poly f;
    for (i64 idx = 0; idx < count; ++idx) {
        enum_monic(p, d, idx, f);
        if (irreducible_fp(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

bool is_teich_modulus(const Poly& f, i64 p, int d, i64 m) {
    // x^{p^d} == x mod (f, m)
    i64 e = 1;
    for (int i = 0; i < d; ++i) e *= p;
    Poly x{0, 1};
    x = poly_mod(x, f, m);
    return poly_xpow(e, f, m) == x;
}

// Lift the irreducible f over F_p to Z_{p^r} so that x^{p^d} = x holds in the
// quotient; one digit of precision per step, the correction is unique.
Poly hensel_lift(Poly f, i64 p, int r, int d) {
    i64 m = p;
    for (int k = 1; k < r; ++k) {
        i64 step = 1;
        for (int i = 0; i < k; ++i) step *= p;
        m *= p;
        i64 cand_count = 1;
        for (int i = 0; i < d; ++i) cand_count *= p;
        bool found = false;
        for (i64 idx = 0; idx < cand_count && !found; ++idx) {
            Poly cand = f;
            i64 t = idx;
            for (int i = 0; i < d; ++i) {
                cand[i] = (cand[i] + (t % p) * step) % m;
                t /= p;
            }
            if (is_teich_modulus(cand, p, d, m)) {
                f = cand;
                found = true;
            }
        }
        if (!found) throw std::logic_error("Hensel lift failed");
    }
    return f;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> fs;
    for (i64 f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            int e = 0;
            while (n % f == 0) { n /= f; ++e; }
            fs.push_back({f, e});
        }
    }
    if (n > 1) fs.push_back({n, 1});
    return fs;
}

} // namespace

RingPtr Ring::make(i64 p, int r, int d, i64 size_cap) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (r < 1 || d < 1) throw std::invalid_argument("r and d must be positive");
    i64 size = ipow_checked(p, r * d, size_cap);
    if (size < 0)
        throw std::invalid_argument("ring size p^{rd} exceeds enumeration cap");

    auto ring = std::shared_ptr<Ring>(new Ring());
    ring->p_ = p;
    ring->r_ = r;
    ring->d_ = d;
    ring->pr_ = 1;
    for (int i = 0; i < r; ++i) ring->pr_ *= p;
    ring->pd_ = 1;
    for (int i = 0; i < d; ++i) ring->pd_ *= p;
    ring->size_ = size;

    Poly f = smallest_irreducible(p, d);
    if (r > 1) f = hensel_lift(f, p, r, d);
    f.resize(d + 1, 0);
    ring->modulus_ = f;

    if (r > 1) ring->residue_ = Ring::make(p, 1, d, size_cap);

    const Ring* self = ring.get();
    // Teichmuller generator: lift the lex-smallest multiplicative generator of
    // the residue field and iterate e -> e^{p^d} to its fixpoint.
    const Ring* F = (r > 1) ? ring->residue_.get() : self;
    i64 group = ring->pd_ - 1;
    auto factors = factorize(group);
    Elem gen;
    bool have_gen = false;
    for (i64 idx = 1; idx < F->size() && !have_gen; ++idx) {
        Elem cand = F->element(idx);
        bool ok = true;
        for (auto& [q, e] : factors) {
            (void)e;
            Elem t = F->pow(cand, group / q);
            if (t == F->one()) { ok = false; break; }
        }
        if (ok) { gen = cand; have_gen = true; }
    }
    if (!have_gen) throw std::logic_error("no residue field generator found");

    // trivial lift of the generator, then fixpoint iteration
    Elem e{self, gen.c};
    e.c.resize(d, 0);
    for (int iter = 0; iter < 64; ++iter) {
        Elem next = self->pow(e, ring->pd_);
        if (next == e) break;
        e = next;
    }
    if (self->pow(e, ring->pd_) != e)
        throw std::logic_error("Teichmuller fixpoint iteration failed");
    ring->xi_ = e;
    ring->teich_powers_.clear();
    Elem cur = self->one();
    for (i64 j = 0; j < group; ++j) {
        ring->teich_powers_.push_back(cur);
        cur = self->mul(cur, e);
    }
    if (cur != self->one())
        throw std::logic_error("Teichmuller generator has wrong order");

    ring->teich_pow_by_index_.assign(size, -2);
    ring->teich_pow_by_index_[0] = -1;
    for (i64 j = 0; j < group; ++j)
        ring->teich_pow_by_index_[self->index_of(ring->teich_powers_[j])] = j;

    ring->teich_lift_by_res_.assign(ring->pd_, -1);
    ring->teich_lift_by_res_[0] = 0;
    for (i64 j = 0; j < group; ++j) {
        Elem res = self->rho(ring->teich_powers_[j]);
        i64 ridx = res.ring->index_of(res);
        ring->teich_lift_by_res_[ridx] = self->index_of(ring->teich_powers_[j]);
    }
    for (i64 i = 0; i < ring->pd_; ++i)
        if (ring->teich_lift_by_res_[i] < 0)
            throw std::logic_error("Teichmuller lift table incomplete");

    return ring;
}

void Ring::check_same(const Elem& a, const Elem& b) const {
    if (a.ring != this || b.ring != this)
        throw std::invalid_argument("operands belong to different rings");
}

std::vector<i64> Ring::reduce(std::vector<i64> poly) const {
    for (auto& c : poly) c = ((c % pr_) + pr_) % pr_;
    poly = poly_mod(std::move(poly), modulus_, pr_);
    poly.resize(d_, 0);
    return poly;
}

Elem Ring::zero() const { return Elem{this, std::vector<i64>(d_, 0)}; }

Elem Ring::one() const {
    std::vector<i64> c(d_, 0);
    c[0] = 1 % pr_;
    return Elem{this, std::move(c)};
}

Elem Ring::from_int(i64 v) const {
    std::vector<i64> c(d_, 0);
    c[0] = ((v % pr_) + pr_) % pr_;
    return Elem{this, std::move(c)};
}

Elem Ring::element(i64 index) const {
    if (index < 0 || index >= size_) throw std::out_of_range("element index");
    std::vector<i64> c(d_, 0);
    for (int i = 0; i < d_; ++i) {
        c[i] = index % pr_;
        index /= pr_;
    }
    return Elem{this, std::move(c)};
}

i64 Ring::index_of(const Elem& a) const {
    if (a.ring != this) throw std::invalid_argument("wrong ring");
    i64 idx = 0;
    for (int i = d_ - 1; i >= 0; --i) idx = idx * pr_ + a.c[i];
    return idx;
}

Elem Ring::make_elem(std::vector<i64> coeffs) const {
    return Elem{this, reduce(std::move(coeffs))};
}

Elem Ring::add(const Elem& a, const Elem& b) const {
    check_same(a, b);
    std::vector<i64> c(d_);
    for (int i = 0; i < d_; ++i) c[i] = (a.c[i] + b.c[i]) % pr_;
    return Elem{this, std::move(c)};
}

Elem Ring::sub(const Elem& a, const Elem& b) const {
    check_same(a, b);
    std::vector<i64> c(d_);
    for (int i = 0; i < d_; ++i) c[i] = ((a.c[i] - b.c[i]) % pr_ + pr_) % pr_;
    return Elem{this, std::move(c)};
}

Elem Ring::neg(const Elem& a) const {
    std::vector<i64> c(d_);
    for (int i = 0; i < d_; ++i) c[i] = (pr_ - a.c[i]) % pr_;
    return Elem{this, std::move(c)};
}

Elem Ring::mul(const Elem& a, const Elem& b) const {
    check_same(a, b);
    std::vector<i64> prod = poly_mul(a.c, b.c, pr_);
    prod = poly_mod(std::move(prod), modulus_, pr_);
    prod.resize(d_, 0);
    return Elem{this, std::move(prod)};
}

Elem Ring::pow(const Elem& a, i64 e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    Elem result = one();
    Elem base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Elem Ring::mul_int(const Elem& a, i64 v) const {
    v = ((v % pr_) + pr_) % pr_;
    std::vector<i64> c(d_);
    for (int i = 0; i < d_; ++i) c[i] = (a.c[i] * v) % pr_;
    return Elem{this, std::move(c)};
}

bool Ring::is_zero(const Elem& a) const {
    for (i64 v : a.c)
        if (v != 0) return false;
    return true;
}

bool Ring::is_unit(const Elem& a) const {
    Elem res = rho(a);
    return !res.ring->is_zero(res);
}

RingPtr Ring::residue_field() const {
    if (r_ == 1) return shared_from_this();
    return residue_;
}

Elem Ring::rho(const Elem& a) const {
    const Ring* F = (r_ == 1) ? this : residue_.get();
    std::vector<i64> c(d_);
    for (int i = 0; i < d_; ++i) c[i] = a.c[i] % p_;
    return Elem{F, std::move(c)};
}

i64 Ring::teich_power_of(const Elem& a) const {
    return teich_pow_by_index_[index_of(a)];
}

Elem Ring::teich(i64 j) const {
    i64 group = pd_ - 1;
    if (group == 0) return one();
    j = ((j % group) + group) % group;
    return teich_powers_[j];
}

Elem Ring::teich_lift(const Elem& res) const {
    const Ring* F = (r_ == 1) ? this : residue_.get();
    if (res.ring != F) throw std::invalid_argument("not a residue element");
    return element(teich_lift_by_res_[F->index_of(res)]);
}

std::vector<Elem> Ring::padic_digits(const Elem& a) const {
    std::vector<Elem> digits;
    digits.reserve(r_);
    Elem cur = a;
    for (int i = 0; i < r_; ++i) {
        Elem t = teich_lift(rho(cur));
        digits.push_back(t);
        if (i + 1 < r_) {
            Elem diff = sub(cur, t);
            std::vector<i64> c(d_);
            for (int j = 0; j < d_; ++j) {
                if (diff.c[j] % p_ != 0)
                    throw std::logic_error("digit extraction: non-divisible coefficient");
                c[j] = diff.c[j] / p_;
            }
            cur = Elem{this, std::move(c)};
        }
    }
    return digits;
}

Elem Ring::from_digits(const std::vector<Elem>& digits) const {
    if (int(digits.size()) != r_)
        throw std::invalid_argument("expected r digits");
    Elem acc = zero();
    i64 pk = 1;
    for (int i = 0; i < r_; ++i) {
        if (!is_teich(digits[i]))
            throw std::invalid_argument("digit is not a Teichmuller element");
        acc = add(acc, mul_int(digits[i], pk));
        pk *= p_;
    }
    return acc;
}

Elem Ring::frobenius(const Elem& a, int e) const {
    i64 group = pd_ - 1;
    i64 pe = 1;
    for (int i = 0; i < e; ++i) pe = (group > 0) ? (pe * p_) % group : 0;
    auto digits = padic_digits(a);
    for (auto& t : digits) {
        i64 j = teich_power_of(t);
        if (j >= 0) t = teich((j * pe) % (group > 0 ? group : 1));
    }
    return from_digits(digits);
}

bool Ring::in_socle(const Elem& a) const {
    i64 prm1 = pr_ / p_;
    for (i64 v : a.c)
        if (v % prm1 != 0) return false;
    return true;
}

Elem Ring::socle_elem(const Elem& t) const {
    if (!is_teich(t)) throw std::invalid_argument("socle scale must be Teichmuller");
    return mul_int(t, pr_ / p_);
}

std::string Ring::to_string(const Elem& a) const {
    std::ostringstream os;
    for (int i = 0; i < d_; ++i) {
        if (i) os << ',';
        os << a.c[i];
    }
    return os.str();
}

Elem Ring::parse(const std::string& s) const {
    std::vector<i64> c;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) c.push_back(std::stoll(tok));
    if (int(c.size()) != d_) throw std::invalid_argument("bad element text: " + s);
    return make_elem(std::move(c));
}

// ---------------------------------------------------------------------------

Extension::Extension(RingPtr a, RingPtr b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_->p() != b_->p() || a_->r() != b_->r() || b_->d() % a_->d() != 0)
        throw std::invalid_argument("B is not an unramified extension of A");
    n_ = b_->d() / a_->d();
    qa_ = a_->residue_size();

    i64 ga = a_->teich_order();       // q - 1
    i64 gb = b_->teich_order();       // q^n - 1

    embed_teich_.assign(ga > 0 ? ga : 1, -1);
    proj_teich_.assign(gb > 0 ? gb : 1, -2);

    // image of xi_A: the smallest-exponent Teichmuller element of B of order
    // q-1 that is a root of xi_A's minimal polynomial over Z_{p^r}
    Elem image;
    bool found = false;
    if (a_.get() == b_.get()) {
        image = a_->xi();
        found = true;
    } else if (ga == 1) {
        image = b_->one();
        found = true;
    } else {
        // minimal polynomial via Frobenius conjugates; coefficients are scalars
        std::vector<Elem> mp{a_->one()}; // product of (X - xi^{p^i})
        for (int i = 0; i < a_->d(); ++i) {
            Elem conj = a_->frobenius(a_->xi(), i);
            std::vector<Elem> next(mp.size() + 1, a_->zero());
            for (size_t k = 0; k < mp.size(); ++k) {
                next[k + 1] = a_->add(next[k + 1], mp[k]);
                next[k] = a_->sub(next[k], a_->mul(mp[k], conj));
            }
            mp = std::move(next);
        }
        std::vector<i64> scalar(mp.size());
        for (size_t k = 0; k < mp.size(); ++k) {
            for (int j = 1; j < a_->d(); ++j)
                if (mp[k].c[j] != 0)
                    throw std::logic_error("minimal polynomial is not scalar");
            scalar[k] = mp[k].c[0];
        }
        for (i64 j = 0; j < gb && !found; ++j) {
            if (gb / std::gcd(j, gb) != ga && !(j == 0 && ga == 1)) continue;
            Elem cand = b_->teich(j);
            Elem acc = b_->zero();
            for (size_t i = scalar.size(); i-- > 0;) {
                acc = b_->mul(acc, cand);
                acc = b_->add(acc, b_->from_int(scalar[i]));
            }
            if (b_->is_zero(acc)) { image = cand; found = true; }
        }
    }
    if (!found) throw std::logic_error("no embedding of xi_A into T(B)");

    Elem cur = b_->one();
    for (i64 j = 0; j < ga; ++j) {
        embed_teich_[j] = b_->index_of(cur);
        i64 pw = b_->teich_power_of(cur);
        if (pw < 0) throw std::logic_error("embedding image is not Teichmuller");
        proj_teich_[pw] = j;
        cur = b_->mul(cur, image);
    }
    if (cur != b_->one())
        throw std::logic_error("embedding image has wrong multiplicative order");
}

Elem Extension::embed(const Elem& a) const {
    if (a.ring != a_.get()) throw std::invalid_argument("element not in A");
    auto digits = a_->padic_digits(a);
    Elem acc = b_->zero();
    i64 pk = 1;
    for (int i = 0; i < a_->r(); ++i) {
        i64 j = a_->teich_power_of(digits[i]);
        Elem img = (j == -1) ? b_->zero() : b_->element(embed_teich_[j]);
        acc = b_->add(acc, b_->mul_int(img, pk));
        pk *= a_->p();
    }
    return acc;
}

bool Extension::in_image(const Elem& b) const {
    auto digits = b_->padic_digits(b);
    for (auto& t : digits) {
        i64 j = b_->teich_power_of(t);
        if (j >= 0 && proj_teich_[j] == -2) return false;
    }
    return true;
}

Elem Extension::project(const Elem& b) const {
    if (b.ring != b_.get()) throw std::invalid_argument("element not in B");
    auto digits = b_->padic_digits(b);
    Elem acc = a_->zero();
    i64 pk = 1;
    for (int i = 0; i < a_->r(); ++i) {
        i64 j = b_->teich_power_of(digits[i]);
        Elem da = a_->zero();
        if (j >= 0) {
            i64 ja = proj_teich_[j];
            if (ja == -2)
                throw std::invalid_argument("element is not in the image of A");
            da = a_->teich(ja);
        }
        acc = a_->add(acc, a_->mul_int(da, pk));
        pk *= a_->p();
    }
    return acc;
}

Elem Extension::rel_frobenius(const Elem& b) const {
    i64 group = b_->teich_order();
    auto digits = b_->padic_digits(b);
    for (auto& t : digits) {
        i64 j = b_->teich_power_of(t);
        if (j >= 0) t = b_->teich((j * qa_) % (group > 0 ? group : 1));
    }
    return b_->from_digits(digits);
}

Elem Extension::trace(const Elem& b) const {
    Elem acc = b_->zero();
    Elem cur = b;
    for (int i = 0; i < n_; ++i) {
        acc = b_->add(acc, cur);
        cur = rel_frobenius(cur);
    }
    return project(acc);
}

std::vector<Elem> coprime_teichmuller(const Ring& ring) {
    i64 group = ring.teich_order();
    std::vector<Elem> out;
    if (group == 1) {
        out.push_back(ring.one());
        return out;
    }
    for (i64 k = 0; k < group; ++k)
        if (std::gcd(k, group) == 1) out.push_back(ring.teich(k));
    return out;
}

} // namespace grauth
