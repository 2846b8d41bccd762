#include "grauth/code.hpp"

#include "grauth/report.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace grauth {

Elem parse_teich_token(const Ring& ring, const std::string& tok) {
    if (tok == "0") return ring.zero();
    if (tok == "1") return ring.one();
    if (tok.rfind("xi^", 0) == 0) {
        i64 j = std::stoll(tok.substr(3));
        return ring.teich(j);
    }
    throw std::invalid_argument("bad Teichmuller token: " + tok);
}

std::string teich_token(const Ring& ring, const Elem& e) {
    i64 j = ring.teich_power_of(e);
    if (j == -1) return "0";
    if (j == 0) return "1";
    if (j == -2) throw std::invalid_argument("element is not Teichmuller");
    return "xi^" + std::to_string(j);
}

namespace {

std::string f_describe(const Ring& b, const ResilientMap& f) {
    if (f.kind == ResilientMap::Kind::Table)
        return "table[" + std::to_string(f.table.size()) + "]";
    std::string s = "linear:";
    for (size_t j = 0; j < f.coeffs.size(); ++j) {
        if (j) s += ',';
        s += teich_token(b, f.coeffs[j]);
    }
    return s;
}

} // namespace

i64 CodeInstance::pair_key(const Elem& s0, const std::vector<Elem>& s1) const {
    i64 key = B->index_of(s0);
    for (auto& c : s1) key = key * B->size() + B->index_of(c);
    return key;
}

CodeInstance CodeInstance::build(const CodeConfig& cfg) {
    CodeInstance ci;
    ci.cfg = cfg;
    if (cfg.r < 2)
        throw std::invalid_argument("construction requires r >= 2");
    if (cfg.t < 1 || cfg.t > cfg.n)
        throw std::invalid_argument("resiliency order t must satisfy 1 <= t <= n");

    ci.A = Ring::make(cfg.p, cfg.r, cfg.ell, cfg.size_cap);
    ci.B = (cfg.n == 1) ? ci.A : Ring::make(cfg.p, cfg.r, cfg.ell * cfg.n, cfg.size_cap);
    ci.ext = std::make_shared<Extension>(ci.A, ci.B);
    ci.gray = std::make_shared<GrayMap>(ci.A);
    ci.q = ci.A->residue_size();
    ci.qm = ci.B->residue_size();

    const Ring& A = *ci.A;
    const Ring& B = *ci.B;
    i64 q = ci.q, qm = ci.qm;
    int r = cfg.r, n = cfg.n, t = cfg.t;

    i64 eta_count = i64(r - 1) * n;
    if (eta_count > q - 2)
        throw std::invalid_argument("T(A)-{0,1} too small for eta");

    // eta: (r-1)n distinct elements of T(A)-{0,1}
    if (!cfg.eta.empty()) {
        for (auto& tok : cfg.eta) ci.eta.push_back(parse_teich_token(A, tok));
    } else {
        for (i64 j = 1; j <= eta_count; ++j) ci.eta.push_back(A.teich(j));
    }
    if (i64(ci.eta.size()) != eta_count)
        throw std::invalid_argument("eta must have (r-1)n elements");
    {
        std::set<i64> seen;
        for (auto& e : ci.eta) {
            i64 pw = A.teich_power_of(e);
            if (pw == -1 || pw == 0 || pw == -2)
                throw std::invalid_argument("eta elements must lie in T(A)-{0,1}");
            if (!seen.insert(pw).second)
                throw std::invalid_argument("eta elements must be distinct");
        }
    }

    // theta: n-sequence over G(T(B)), repetitions allowed
    if (!cfg.theta.empty()) {
        for (auto& tok : cfg.theta) ci.theta.push_back(parse_teich_token(B, tok));
    } else {
        for (int j = 0; j < n; ++j) ci.theta.push_back(B.xi());
    }
    if (int(ci.theta.size()) != n)
        throw std::invalid_argument("theta must have n elements");
    for (auto& th : ci.theta) {
        i64 pw = B.teich_power_of(th);
        bool ok = (pw >= 0) && (qm == 2 ? pw == 0 : std::gcd(pw, qm - 1) == 1);
        if (!ok)
            throw std::invalid_argument("theta elements must lie in G(T(B))");
    }

    // Z: all of T(B)-{0} minus the embedded eta, q^m-(r-1)n-1 elements
    std::set<i64> eta_in_B;
    for (auto& e : ci.eta) eta_in_B.insert(B.index_of(ci.ext->embed(e)));
    i64 z_count = qm - eta_count - 1;
    if (!cfg.zeta.empty()) {
        for (auto& tok : cfg.zeta) ci.zeta.push_back(parse_teich_token(B, tok));
    } else {
        for (i64 j = 1; j <= qm - 1 && i64(ci.zeta.size()) < z_count; ++j) {
            Elem cand = B.teich(j); // j = qm-1 wraps to 1
            if (eta_in_B.count(B.index_of(cand))) continue;
            ci.zeta.push_back(cand);
        }
    }
    if (i64(ci.zeta.size()) != z_count)
        throw std::invalid_argument("Z must have q^m-(r-1)n-1 elements");
    {
        std::set<i64> seen;
        for (auto& z : ci.zeta) {
            i64 idx = B.index_of(z);
            if (B.teich_power_of(z) < 0)
                throw std::invalid_argument("Z elements must lie in T(B)-{0}");
            if (eta_in_B.count(idx))
                throw std::invalid_argument("Z must be disjoint from eta");
            if (!seen.insert(idx).second)
                throw std::invalid_argument("Z elements must be distinct");
        }
    }

    // resilient map
    ci.f.kind = ResilientMap::Kind::Linear;
    ci.f.claimed_t = t;
    if (cfg.f_spec.empty() || cfg.f_spec == "linear") {
        ci.f.coeffs.assign(n, B.one());
    } else if (cfg.f_spec.rfind("linear:", 0) == 0) {
        std::istringstream is(cfg.f_spec.substr(7));
        std::string tok;
        while (std::getline(is, tok, ','))
            ci.f.coeffs.push_back(parse_teich_token(B, tok));
        if (int(ci.f.coeffs.size()) != n)
            throw std::invalid_argument("linear map needs n coefficients");
        for (auto& c : ci.f.coeffs)
            if (!B.is_unit(c))
                throw std::invalid_argument("linear map coefficients must be units");
    } else {
        throw std::invalid_argument("unsupported f spec: " + cfg.f_spec);
    }

    // enumerations
    ci.num_x = 1;
    for (int j = 0; j < n; ++j) ci.num_x *= B.size();
    ci.width = 1;
    for (int i = 1; i < r; ++i) ci.width *= q;
    ci.key_count = ci.num_x * q * ci.width;

    // N = union of X_{b,t} over b in T(B)^n
    {
        std::set<i64> seen;
        std::vector<Elem> tb; // Teichmuller set of B in enumeration order
        tb.push_back(B.zero());
        for (i64 j = 0; j < qm - 1; ++j) tb.push_back(B.teich(j));
        std::vector<i64> bidx(n, 0);
        bool done = false;
        while (!done) {
            std::vector<Elem> b(n);
            for (int j = 0; j < n; ++j) b[j] = tb[bidx[j]];
            std::vector<std::vector<Elem>> members;
            // head: sum_{j<=t-2} b_j e_j
            std::vector<Elem> head(n, B.zero());
            for (int j = 0; j <= t - 2; ++j) head[j] = b[j];
            members.push_back(head);
            for (int j = t - 1; j < n; ++j) {
                std::vector<Elem> v(n, B.zero());
                v[j] = b[j];
                members.push_back(v);
            }
            for (auto& v : members) {
                i64 key = ci.alpha_b(v);
                if (seen.insert(key).second) ci.N.push_back(v);
            }
            // next tuple
            int pos = n - 1;
            while (pos >= 0 && ++bidx[pos] == i64(tb.size())) bidx[pos--] = 0;
            if (pos < 0) done = true;
        }
    }

    // L = { sum r_i p^i : digits in T(A)^{r-1} }
    {
        std::set<i64> seen;
        std::vector<Elem> ta;
        ta.push_back(A.zero());
        for (i64 j = 0; j < q - 1; ++j) ta.push_back(A.teich(j));
        std::vector<i64> didx(r - 1, 0);
        bool done = false;
        while (!done) {
            Elem acc = A.zero();
            i64 pk = 1;
            for (int i = 0; i < r - 1; ++i) {
                acc = A.add(acc, A.mul_int(ta[didx[i]], pk));
                pk *= cfg.p;
            }
            if (seen.insert(A.index_of(acc)).second) ci.L.push_back(acc);
            int pos = r - 2;
            while (pos >= 0 && ++didx[pos] == i64(ta.size())) didx[pos--] = 0;
            if (pos < 0) done = true;
        }
    }

    // D_eta
    for (int i = 1; i <= r - 1; ++i) {
        for (int j = 0; j < n; ++j) {
            i64 pi = 1;
            for (int k = 0; k < i; ++k) pi *= cfg.p;
            SourcePair pr;
            pr.s0 = ci.ext->embed(ci.eta[i64(i - 1) * n + j]);
            pr.s1.assign(n, B.zero());
            pr.s1[j] = B.from_int(pi);
            ci.D_eta.push_back(pr);
        }
    }

    // T_{eta theta Z} = D_eta u union_k T_{theta zeta_k k}
    {
        std::set<i64> seen;
        for (size_t di = 0; di < ci.D_eta.size(); ++di) {
            auto& pr = ci.D_eta[di];
            i64 key = ci.pair_key(pr.s0, pr.s1);
            if (seen.insert(key).second) {
                ci.T_etathetaZ.push_back(pr);
                PairProvenance prov;
                prov.from_D_eta = true;
                prov.i = int(di) / n + 1;
                prov.j = int(di) % n;
                ci.T_provenance.push_back(prov);
            }
        }
        for (i64 k = 0; k < i64(ci.zeta.size()); ++k) {
            int texp = 1 + int(k % (r - 1));
            i64 pt = 1;
            for (int i = 0; i < texp; ++i) pt *= cfg.p;
            for (i64 i = 0; i <= qm - 2; ++i) {
                for (int j = 0; j < n; ++j) {
                    Elem thi = B.pow(ci.theta[j], i);
                    SourcePair pr;
                    pr.s0 = thi;
                    pr.s1.assign(n, B.zero());
                    pr.s1[j] = B.add(ci.zeta[k], B.mul_int(thi, pt));
                    i64 key = ci.pair_key(pr.s0, pr.s1);
                    if (seen.insert(key).second) {
                        ci.T_etathetaZ.push_back(pr);
                        PairProvenance prov;
                        prov.k = k;
                        prov.j = j;
                        prov.theta_pow = i;
                        prov.t_exp = texp;
                        ci.T_provenance.push_back(prov);
                    }
                }
            }
        }
    }

    // P = ({0} x (N-{0})) u T_{eta theta Z} u ((T(A)-eta-{0}) x {0})
    {
        std::set<i64> seen;
        auto push = [&](const Elem& s0, const std::vector<Elem>& s1) {
            i64 key = ci.pair_key(s0, s1);
            if (seen.insert(key).second) ci.P.push_back(SourcePair{s0, s1});
        };
        for (auto& v : ci.N) {
            bool zero = true;
            for (auto& c : v)
                if (!B.is_zero(c)) { zero = false; break; }
            if (!zero) push(B.zero(), v);
        }
        for (auto& pr : ci.T_etathetaZ) push(pr.s0, pr.s1);
        std::vector<Elem> zero_vec(n, B.zero());
        std::set<i64> eta_pows;
        for (auto& e : ci.eta) eta_pows.insert(A.teich_power_of(e));
        for (i64 j = 0; j < q - 1; ++j) {
            if (eta_pows.count(j)) continue;
            push(ci.ext->embed(A.teich(j)), zero_vec);
        }
    }

    for (size_t pi = 0; pi < ci.P.size(); ++pi)
        ci.pair_lookup_[ci.pair_key(ci.P[pi].s0, ci.P[pi].s1)] = i64(pi);
    for (size_t li = 0; li < ci.L.size(); ++li)
        ci.l_lookup_[ci.A->index_of(ci.L[li])] = i64(li);

    // S = P x L
    for (auto& pr : ci.P)
        for (auto& s2 : ci.L)
            ci.S.push_back(SourceState{pr.s0, pr.s1, s2});

    return ci;
}

i64 CodeInstance::alpha_b(const std::vector<Elem>& x) const {
    i64 idx = 0;
    for (auto& c : x) idx = idx * B->size() + B->index_of(c);
    return idx;
}

std::vector<Elem> CodeInstance::x_of(i64 index) const {
    std::vector<Elem> x(cfg.n);
    for (int j = cfg.n - 1; j >= 0; --j) {
        x[j] = B->element(index % B->size());
        index /= B->size();
    }
    return x;
}

i64 CodeInstance::alpha_a(const Elem& w) const {
    if (A->is_zero(w)) return 0;
    auto digits = A->padic_digits(w);
    for (int i = 0; i + 1 < cfg.r; ++i)
        if (!A->is_zero(digits[i]))
            throw std::invalid_argument("w is not a socle element");
    i64 j = A->teich_power_of(digits[cfg.r - 1]);
    return j + 1;
}

Elem CodeInstance::w_of(i64 index) const {
    if (index == 0) return A->zero();
    return A->socle_elem(A->teich(index - 1));
}

KeyCoords CodeInstance::key_coords(i64 k) const {
    if (k < 0 || k >= key_count) throw std::out_of_range("key out of range");
    KeyCoords kc;
    kc.offset = k % width;
    kc.block = k / width;
    kc.x_index = kc.block / q;
    kc.w_index = kc.block % q;
    return kc;
}

i64 CodeInstance::key_of(i64 x_index, i64 w_index, i64 offset) const {
    return (x_index * q + w_index) * width + offset;
}

Elem CodeInstance::v_s_w(const SourceState& s, const Elem& w,
                         const std::vector<Elem>& x) const {
    Elem acc = B->mul(s.s0, f.eval(*B, x, alpha_b(x)));
    for (int j = 0; j < cfg.n; ++j)
        acc = B->add(acc, B->mul(s.s1[j], x[j]));
    Elem tr = ext->trace(acc);
    return A->add(A->add(tr, s.s2), w);
}

Elem CodeInstance::encode(i64 k, const SourceState& s) const {
    KeyCoords kc = key_coords(k);
    Elem v = v_s_w(s, w_of(kc.w_index), x_of(kc.x_index));
    return gray->coord(v, kc.offset);
}

std::vector<Elem> CodeInstance::u_s(const SourceState& s) const {
    std::vector<Elem> out;
    out.reserve(key_count);
    for (i64 xi = 0; xi < num_x; ++xi) {
        std::vector<Elem> x = x_of(xi);
        for (i64 wi = 0; wi < q; ++wi) {
            Elem v = v_s_w(s, w_of(wi), x);
            GrayVec g = gray->image(v);
            for (auto& c : g) out.push_back(c);
        }
    }
    return out;
}

std::optional<i64> CodeInstance::pair_index(const Elem& s0,
                                            const std::vector<Elem>& s1) const {
    auto it = pair_lookup_.find(pair_key(s0, s1));
    if (it == pair_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<i64> CodeInstance::l_index(const Elem& s2) const {
    auto it = l_lookup_.find(A->index_of(s2));
    if (it == l_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<i64> CodeInstance::state_index(const SourceState& s) const {
    auto pi = pair_index(s.s0, s.s1);
    auto li = l_index(s.s2);
    if (!pi || !li) return std::nullopt;
    return *pi * i64(L.size()) + *li;
}

std::string CodeInstance::state_to_string(const SourceState& s) const {
    std::ostringstream os;
    os << B->to_string(s.s0) << '|';
    for (int j = 0; j < cfg.n; ++j) {
        if (j) os << ';';
        os << B->to_string(s.s1[j]);
    }
    os << '|' << A->to_string(s.s2);
    return os.str();
}

std::string CodeInstance::canonical_params() const {
    std::ostringstream os;
    os << "p=" << cfg.p << " r=" << cfg.r << " ell=" << cfg.ell
       << " n=" << cfg.n << " t=" << cfg.t << "\n";
    auto dump_poly = [&](const std::vector<i64>& m) {
        std::string s;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(m[i]);
        }
        return s;
    };
    os << "modulus_A=" << dump_poly(A->modulus()) << "\n";
    os << "modulus_B=" << dump_poly(B->modulus()) << "\n";
    os << "xi_A=" << A->to_string(A->xi()) << "\n";
    os << "xi_B=" << B->to_string(B->xi()) << "\n";
    os << "eta=";
    for (size_t i = 0; i < eta.size(); ++i)
        os << (i ? "," : "") << teich_token(*A, eta[i]);
    os << "\ntheta=";
    for (size_t i = 0; i < theta.size(); ++i)
        os << (i ? "," : "") << teich_token(*B, theta[i]);
    os << "\nZ=";
    for (size_t i = 0; i < zeta.size(); ++i)
        os << (i ? "," : "") << teich_token(*B, zeta[i]);
    os << "\nf=" << f_describe(*B, f) << "\n";
    os << "alpha_b=lex-by-coefficient alpha_a=zero-then-teich-powers"
       << " gray-index=little-endian-base-q\n";
    return os.str();
}

std::string CodeInstance::fingerprint() const {
    return hex64(fnv1a64(canonical_params()));
}

CodeInstance::Cardinalities CodeInstance::cardinalities() const {
    Cardinalities c{};
    int r = cfg.r, n = cfg.n, t = cfg.t;
    c.N_enum = i64(N.size());
    i64 qm_t1 = 1;
    for (int i = 0; i < t - 1; ++i) qm_t1 *= qm;
    c.N_formula = qm_t1 + i64(n - (t - 1)) * qm;
    c.L_enum = i64(L.size());
    c.L_formula = width;
    c.D_eta_enum = i64(D_eta.size());
    c.D_eta_formula = i64(r - 1) * n;
    {
        // enumerate T_{theta zeta_0 0} afresh and count distinct members
        std::set<i64> seen;
        if (!zeta.empty()) {
            int texp = 1;
            i64 pt = cfg.p;
            for (i64 i = 0; i <= qm - 2; ++i) {
                for (int j = 0; j < n; ++j) {
                    Elem thi = B->pow(theta[j], i);
                    std::vector<Elem> s1(n, B->zero());
                    s1[j] = B->add(zeta[0], B->mul_int(thi, pt));
                    seen.insert(pair_key(thi, s1));
                }
            }
            (void)texp;
        }
        c.T_thetazetak_enum = i64(seen.size());
    }
    c.T_thetazetak_formula = (qm - 1) * n;
    c.T_etathetaZ_enum = i64(T_etathetaZ.size());
    c.T_etathetaZ_formula = (i64(r - 1) + (qm - 1 - i64(r - 1) * n) * (qm - 1)) * n;
    i64 pm = 1;
    for (int i = 0; i < n; ++i) pm *= cfg.p;
    c.side_condition_qm = i64(r - 1) * (n + 1) < qm - 1;
    c.side_condition_pm = i64(r - 1) * (n + 1) < pm - 1;
    return c;
}

} // namespace grauth
