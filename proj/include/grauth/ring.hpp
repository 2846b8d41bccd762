#ifndef GRAUTH_RING_HPP
#define GRAUTH_RING_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace grauth {

using i64 = long long;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Element of GR(p^r, d): d coefficients mod p^r, ascending degree.
// Elements carry a raw pointer to their ring; rings outlive all elements.
struct Elem {
    const Ring* ring = nullptr;
    std::vector<i64> c;

    bool operator==(const Elem& o) const { return ring == o.ring && c == o.c; }
    bool operator!=(const Elem& o) const { return !(*this == o); }
};

// Exact arithmetic in the Galois ring GR(p^r, d) = Z_{p^r}[x]/(f), where f is
// the lex-smallest monic irreducible of degree d over F_p, Hensel-lifted to
// Z_{p^r} so that f divides x^{p^d} - x.  Immutable after construction.
class Ring : public std::enable_shared_from_this<Ring> {
public:
    static constexpr i64 kDefaultCap = i64(1) << 20;

    static RingPtr make(i64 p, int r, int d, i64 size_cap = kDefaultCap);

    i64 p() const { return p_; }
    int r() const { return r_; }
    int d() const { return d_; }
    i64 char_mod() const { return pr_; }     // p^r
    i64 size() const { return size_; }       // p^{rd}
    i64 residue_size() const { return pd_; } // p^d
    const std::vector<i64>& modulus() const { return modulus_; }

    // element construction / enumeration
    Elem zero() const;
    Elem one() const;
    Elem from_int(i64 v) const; // constant polynomial v mod p^r
    Elem element(i64 index) const;
    i64 index_of(const Elem& a) const;
    Elem make_elem(std::vector<i64> coeffs) const; // reduces coeffs mod p^r

    // arithmetic
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, i64 e) const;
    Elem mul_int(const Elem& a, i64 v) const;
    bool is_zero(const Elem& a) const;
    bool is_unit(const Elem& a) const;

    // residue field F_{p^d} (a Ring with r = 1; itself when r = 1 already)
    RingPtr residue_field() const;
    Elem rho(const Elem& a) const; // coefficient-wise reduction mod p

    // Teichmuller set {0} u {xi^j}
    const Elem& xi() const { return xi_; }
    const std::vector<Elem>& teich_powers() const { return teich_powers_; }
    i64 teich_order() const { return pd_ - 1; }
    // -1 for zero, j for xi^j, -2 if not a Teichmuller element
    i64 teich_power_of(const Elem& a) const;
    bool is_teich(const Elem& a) const { return teich_power_of(a) != -2; }
    Elem teich(i64 j) const; // xi^{j mod (p^d - 1)}
    // multiplicative lift of a residue-field element into the Teichmuller set
    Elem teich_lift(const Elem& res) const;

    // p-adic digits: a = sum digits[i] p^i with digits[i] in T
    std::vector<Elem> padic_digits(const Elem& a) const;
    Elem from_digits(const std::vector<Elem>& digits) const;

    // digit-wise power-of-p Frobenius: Teichmuller digit t -> t^{p^e}
    Elem frobenius(const Elem& a, int e) const;

    // socle membership: a in p^{r-1} GR
    bool in_socle(const Elem& a) const;
    Elem socle_elem(const Elem& t) const; // t * p^{r-1}, t Teichmuller

    // canonical text form "c0,c1,..." (ascending degree)
    std::string to_string(const Elem& a) const;
    Elem parse(const std::string& s) const;

    Ring(const Ring&) = delete;
    Ring& operator=(const Ring&) = delete;

private:
    Ring() = default;
    void check_same(const Elem& a, const Elem& b) const;
    std::vector<i64> reduce(std::vector<i64> poly) const;

    i64 p_ = 0, pr_ = 0, pd_ = 0, size_ = 0;
    int r_ = 0, d_ = 0;
    std::vector<i64> modulus_;
    RingPtr residue_;                    // null when r == 1
    Elem xi_;
    std::vector<Elem> teich_powers_;     // xi^0 .. xi^{p^d-2}
    std::vector<i64> teich_pow_by_index_; // element index -> power, -1 zero, -2 none
    std::vector<i64> teich_lift_by_res_;  // residue element index -> ring element index
};

// Unramified extension B/A of Galois rings with the same p, r and d_B = n d_A.
// A embeds into B along the Teichmuller subfield; trace is the sum of the
// relative Frobenius iterates.
class Extension {
public:
    Extension(RingPtr a, RingPtr b);

    const RingPtr& A() const { return a_; }
    const RingPtr& B() const { return b_; }
    int n() const { return n_; }
    i64 q() const { return qa_; } // |residue field of A|

    Elem embed(const Elem& a) const;          // A -> B
    Elem project(const Elem& b) const;        // B -> A; throws if not in image
    bool in_image(const Elem& b) const;
    Elem rel_frobenius(const Elem& b) const;  // digit-wise t -> t^q
    Elem trace(const Elem& b) const;          // Tr_{B/A}, lands in A

private:
    RingPtr a_, b_;
    int n_ = 1;
    i64 qa_ = 0;
    std::vector<i64> embed_teich_;            // power j in A -> element index of image in B
    std::vector<i64> proj_teich_;             // teich power in B -> power in A, -2 if outside
};

// { xi_B^k : gcd(k, |T|-1) = 1 }, the Teichmuller elements whose exponent is
// coprime to the residue group order.
std::vector<Elem> coprime_teichmuller(const Ring& ring);

} // namespace grauth

#endif
