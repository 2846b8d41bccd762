#ifndef GRAUTH_VERIFIER_HPP
#define GRAUTH_VERIFIER_HPP

#include "grauth/code.hpp"

#include <array>
#include <map>

namespace grauth {

struct Rational {
    i64 num = 0;
    i64 den = 1;

    void reduce();
    double value() const { return double(num) / double(den); }
    std::string str() const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

enum class CaseKind { I = 0, II = 1, III = 2, IV = 3 };

const char* case_name(CaseKind k);

struct CasePartition {
    CaseKind kind;
    i64 x0, x1;   // alpha_b indices of the two blocks
    i64 w0, w1;   // alpha_a indices
    i64 k00, k10; // intra-block offsets
};

struct Witness {
    i64 k0 = -1, k1 = -1;
    CasePartition part{};
    std::string assertion;  // "I", "II.0.0", ..., "brute-force", "collision"
    i64 state = -1;         // index into S, -1 when no witness exists
    i64 tag0 = -1, tag1 = -1;
    std::string note;
};

struct InjectivityReport {
    i64 pairs = 0;
    i64 collisions = 0;
    i64 fallbacks = 0;
    std::array<i64, 4> by_case{};
    std::map<std::string, i64> by_assertion;
    bool oracle_agreement = true;
    std::vector<std::string> findings;

    double constructive_fraction() const {
        return pairs ? double(pairs - fallbacks) / double(pairs) : 1.0;
    }
};

struct AttackReport {
    Rational p_I;
    i64 pI_state = -1, pI_tag = -1;
    Rational p_S;
    i64 pS_obs_state = -1, pS_obs_tag = -1;   // observed (s, t)
    i64 pS_sub_state = -1, pS_sub_tag = -1;   // substituted (s', t')
};

// Verifies injectivity of k -> e_k both constructively (per the case
// analysis) and against the full-row oracle, and computes the exact
// impersonation/substitution probabilities.
class Verifier {
public:
    explicit Verifier(const CodeInstance& code, int jobs = 1);

    const CodeInstance& code() const { return code_; }
    // tag matrix M[s][k], tags as residue-field element indices
    const std::vector<std::vector<std::int16_t>>& matrix() const { return M_; }

    CasePartition classify(i64 k0, i64 k1) const;
    Witness construct_witness(i64 k0, i64 k1) const;
    bool rows_differ(i64 k0, i64 k1) const; // independent full-row oracle

    InjectivityReport verify_exhaustive() const;
    InjectivityReport verify_sampled(i64 count, std::uint64_t seed) const;

    AttackReport attack_probs() const;

private:
    void process_pair(i64 k0, i64 k1, InjectivityReport& rep) const;
    bool try_accept(Witness& w, i64 state_idx, const char* label) const;
    bool try_family_pair_l(Witness& w, i64 pair_idx, const char* label) const;

    const CodeInstance& code_;
    int jobs_;
    std::vector<std::vector<std::int16_t>> M_;
};

} // namespace grauth

#endif
