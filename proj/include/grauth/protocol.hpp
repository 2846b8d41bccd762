#ifndef GRAUTH_PROTOCOL_HPP
#define GRAUTH_PROTOCOL_HPP

#include "grauth/verifier.hpp"

namespace grauth {

struct Message {
    SourceState source;
    Elem tag; // residue-field element
};

enum class AdversaryKind { Impersonation, Substitution };

struct SimConfig {
    i64 trials = 100000;
    std::uint64_t seed = 1;
    AdversaryKind adversary = AdversaryKind::Impersonation;
};

struct AttackEstimate {
    i64 trials = 0;
    i64 successes = 0;
    double frequency = 0.0;
    double std_error = 0.0;   // binomial
    double exact = 0.0;       // definitional probability the strategy targets
    std::string rng_id;       // recorded in reports for reproducibility
};

// transmitter side: evaluate the tag and form the message
Message transmit(const CodeInstance& code, i64 key, const SourceState& s);

// receiver side: recompute the tag under the shared key
bool receive(const CodeInstance& code, i64 key, const Message& m);

// wire format: 4-byte little-endian length prefix, then an ASCII payload of
// canonical element texts: s0 "|" s1_0 ";" ... ";" s1_{n-1} "|" s2 "|" tag
std::string encode_message(const CodeInstance& code, const Message& m);
Message decode_message(const CodeInstance& code, const std::string& frame);

// Monte-Carlo attack run against the exact-argmax adversary strategy derived
// from public code parameters (everything except the key).
AttackEstimate run_attack(const CodeInstance& code, const Verifier& verifier,
                          const SimConfig& sim);

} // namespace grauth

#endif
