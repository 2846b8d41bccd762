#include "grauth/gray.hpp"

#include <sstream>

namespace grauth {

GrayMap::GrayMap(RingPtr a) : a_(std::move(a)) {
    f_ = a_->residue_field();
    q_ = a_->residue_size();
    width_ = 1;
    for (int i = 1; i < a_->r(); ++i) width_ *= q_;

    xi_enum_.reserve(q_);
    xi_enum_.push_back(f_->zero());
    for (i64 j = 1; j < q_; ++j)
        xi_enum_.push_back(a_->rho(a_->teich(j)));
}

Elem GrayMap::coord(const Elem& a, i64 k) const {
    if (k < 0 || k >= width_) throw std::out_of_range("Gray coordinate index");
    auto digits = a_->padic_digits(a);
    int r = a_->r();
    Elem acc = a_->rho(digits[r - 1]);
    for (int i = 0; i < r - 1; ++i) {
        i64 ki = k % q_;
        k /= q_;
        acc = f_->add(acc, f_->mul(a_->rho(digits[i]), xi_enum_[ki]));
    }
    return acc;
}

GrayVec GrayMap::image(const Elem& a) const {
    auto digits = a_->padic_digits(a);
    int r = a_->r();
    std::vector<Elem> rhod(r);
    for (int i = 0; i < r; ++i) rhod[i] = a_->rho(digits[i]);

    GrayVec out;
    out.reserve(width_);
    for (i64 k = 0; k < width_; ++k) {
        i64 kk = k;
        Elem acc = rhod[r - 1];
        for (int i = 0; i < r - 1; ++i) {
            i64 ki = kk % q_;
            kk /= q_;
            acc = f_->add(acc, f_->mul(rhod[i], xi_enum_[ki]));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

GrayVec GrayMap::add_socle(const Elem& a, const Elem& c) const {
    if (!a_->is_teich(c))
        throw std::invalid_argument("socle summand must be Teichmuller");
    Elem shifted = a_->add(a, a_->socle_elem(c));
    GrayVec direct = image(shifted);
    GrayVec base = image(a);
    Elem rc = a_->rho(c);
    for (i64 k = 0; k < width_; ++k)
        if (direct[k] != f_->add(base[k], rc))
            throw std::logic_error("Gray socle additivity violated");
    return direct;
}

std::string GrayMap::to_string(const GrayVec& v) const {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ':';
        os << f_->to_string(v[i]);
    }
    return os.str();
}

} // namespace grauth
