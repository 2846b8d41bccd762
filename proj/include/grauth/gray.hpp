#ifndef GRAUTH_GRAY_HPP
#define GRAUTH_GRAY_HPP

#include "grauth/ring.hpp"

namespace grauth {

// Image of the Gray map: a vector of q^{r-1} residue-field elements.
using GrayVec = std::vector<Elem>;

// Generalized Gray map Phi : A -> F_q^{q^{r-1}} over the coordinate
// enumeration Xi = (0, rho(xi), ..., rho(xi^{q-1})).  With p-adic digits
// a = sum a_i p^i and coordinate index k written in base q (least significant
// digit first), coordinate k is rho(a_{r-1}) + sum_{i<r-1} rho(a_i) Xi[k_i].
class GrayMap {
public:
    explicit GrayMap(RingPtr a);

    const RingPtr& ring() const { return a_; }
    const RingPtr& field() const { return f_; }
    i64 q() const { return q_; }
    i64 width() const { return width_; } // q^{r-1}

    const std::vector<Elem>& xi_enum() const { return xi_enum_; }

    Elem coord(const Elem& a, i64 k) const;
    GrayVec image(const Elem& a) const;

    // Phi(a + c p^{r-1}) computed directly, checked against the socle
    // additivity identity Phi(a) + rho(c)*1; throws on mismatch.
    GrayVec add_socle(const Elem& a, const Elem& c) const;

    std::string to_string(const GrayVec& v) const; // coords joined by ":"

private:
    RingPtr a_, f_;
    i64 q_ = 0, width_ = 0;
    std::vector<Elem> xi_enum_;
};

} // namespace grauth

#endif
