#ifndef GRAUTH_CODE_HPP
#define GRAUTH_CODE_HPP

#include "grauth/gray.hpp"
#include "grauth/resilience.hpp"
#include "grauth/ring.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>

namespace grauth {

// Instance parameters, as read from a config file.  Set elements are written
// in Teichmuller form: "0", "1" or "xi^j".
struct CodeConfig {
    i64 p = 2;
    int r = 2;
    int ell = 1;
    int n = 1;
    int t = 1;
    std::vector<std::string> eta;   // defaults chosen when empty
    std::vector<std::string> theta;
    std::vector<std::string> zeta;  // the set Z
    std::string f_spec;             // "linear:1,1" style; default all-ones linear
    std::uint64_t seed = 1;
    i64 size_cap = Ring::kDefaultCap;
};

struct SourcePair {
    Elem s0;                 // in B
    std::vector<Elem> s1;    // in B^n
};

struct SourceState {
    Elem s0;
    std::vector<Elem> s1;
    Elem s2;                 // in L, an element of A
};

struct KeyCoords {
    i64 block;    // k div q^{r-1} = alpha_b(x) q + alpha_a(w)
    i64 offset;   // k mod q^{r-1}
    i64 x_index;  // alpha_b(x)
    i64 w_index;  // alpha_a(w)
};

// provenance of a T_{eta theta Z} member, used by the constructive witnesses
struct PairProvenance {
    bool from_D_eta = false;
    int i = 0, j = 0;        // D_eta: (eta_{(i-1)n+j}, p^i e_j)
    i64 k = -1;              // union part: index of zeta_k
    i64 theta_pow = 0;       // exponent i of theta_j
    int t_exp = 0;           // 1 + (k mod (r-1))
};

// A fully assembled code instance: rings, the construction sets, the source
// state space, and the encoding pipeline.
class CodeInstance {
public:
    static CodeInstance build(const CodeConfig& cfg);

    CodeConfig cfg;
    RingPtr A, B;
    std::shared_ptr<Extension> ext;
    std::shared_ptr<GrayMap> gray;
    i64 q = 0;    // p^ell
    i64 qm = 0;   // p^{ell n} = |T(B)|

    std::vector<Elem> eta;     // (r-1)n elements of T(A) - {0,1}
    std::vector<Elem> theta;   // n elements of G(T(B))
    std::vector<Elem> zeta;    // q^m - (r-1)n - 1 elements of T(B) - {0}
    ResilientMap f;

    std::vector<std::vector<Elem>> N;        // subset of B^n
    std::vector<Elem> L;                     // subset of A
    std::vector<SourcePair> D_eta;
    std::vector<SourcePair> T_etathetaZ;     // D_eta first, then the union part
    std::vector<PairProvenance> T_provenance;
    std::vector<SourcePair> P;               // admissible (s0, s1) pairs
    std::vector<SourceState> S;              // P x L

    i64 num_x = 0;      // |B^n|
    i64 width = 0;      // q^{r-1}
    i64 key_count = 0;  // num_x * q * width = q^{r(mn+1)}

    // enumerations
    i64 alpha_b(const std::vector<Elem>& x) const;
    std::vector<Elem> x_of(i64 index) const;
    i64 alpha_a(const Elem& w) const;
    Elem w_of(i64 index) const;              // socle element of A

    KeyCoords key_coords(i64 k) const;
    i64 key_of(i64 x_index, i64 w_index, i64 offset) const;

    // encoding pipeline
    Elem v_s_w(const SourceState& s, const Elem& w, const std::vector<Elem>& x) const;
    Elem encode(i64 k, const SourceState& s) const;   // tag in F_q, lazy
    std::vector<Elem> u_s(const SourceState& s) const; // all key_count tags

    // membership / lookup
    std::optional<i64> pair_index(const Elem& s0, const std::vector<Elem>& s1) const;
    std::optional<i64> l_index(const Elem& s2) const;
    std::optional<i64> state_index(const SourceState& s) const;
    const SourceState& state(i64 idx) const { return S[idx]; }

    std::string canonical_params() const; // self-describing key-value dump
    std::string fingerprint() const;      // FNV-1a hash of canonical_params

    // cardinality audit: formula vs enumerated values
    struct Cardinalities {
        i64 N_enum, N_formula;
        i64 L_enum, L_formula;
        i64 D_eta_enum, D_eta_formula;
        i64 T_thetazetak_enum, T_thetazetak_formula;
        i64 T_etathetaZ_enum, T_etathetaZ_formula;
        bool side_condition_qm; // (r-1)(n+1) < q^m - 1
        bool side_condition_pm; // (r-1)(n+1) < p^m - 1
    };
    Cardinalities cardinalities() const;

    std::string state_to_string(const SourceState& s) const;

private:
    std::unordered_map<i64, i64> pair_lookup_; // encoded (s0,s1) -> P index
    std::unordered_map<i64, i64> l_lookup_;    // A element index -> L index
    i64 pair_key(const Elem& s0, const std::vector<Elem>& s1) const;
};

// Teichmuller tokens as used in config files and reports: "0", "1", "xi^j".
Elem parse_teich_token(const Ring& ring, const std::string& tok);
std::string teich_token(const Ring& ring, const Elem& e);

} // namespace grauth

#endif
