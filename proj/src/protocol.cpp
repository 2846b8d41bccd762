#include "grauth/protocol.hpp"

#include <cmath>
#include <sstream>

namespace grauth {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// per-trial stream: deterministic function of (seed, trial index)
struct TrialRng {
    std::uint64_t state;
    TrialRng(std::uint64_t seed, i64 trial) {
        state = seed ^ (0x2545f4914f6cdd1dULL * std::uint64_t(trial + 1));
        for (int i = 0; i < 2; ++i) splitmix64(state);
    }
    i64 uniform(i64 n) { return i64(splitmix64(state) % std::uint64_t(n)); }
};

} // namespace

Message transmit(const CodeInstance& code, i64 key, const SourceState& s) {
    return Message{s, code.encode(key, s)};
}

bool receive(const CodeInstance& code, i64 key, const Message& m) {
    if (int(m.source.s1.size()) != code.cfg.n)
        throw std::invalid_argument("malformed message: wrong s1 arity");
    return code.encode(key, m.source) == m.tag;
}

std::string encode_message(const CodeInstance& code, const Message& m) {
    std::ostringstream os;
    os << code.state_to_string(m.source) << '|'
       << code.gray->field()->to_string(m.tag);
    std::string payload = os.str();
    std::uint32_t len = std::uint32_t(payload.size());
    std::string frame;
    for (int i = 0; i < 4; ++i) frame.push_back(char((len >> (8 * i)) & 0xff));
    frame += payload;
    return frame;
}

Message decode_message(const CodeInstance& code, const std::string& frame) {
    if (frame.size() < 4) throw std::invalid_argument("truncated frame");
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i)
        len |= std::uint32_t(static_cast<unsigned char>(frame[i])) << (8 * i);
    if (frame.size() != 4 + size_t(len))
        throw std::invalid_argument("frame length mismatch");
    std::string payload = frame.substr(4);

    std::vector<std::string> fields;
    std::istringstream is(payload);
    std::string tok;
    while (std::getline(is, tok, '|')) fields.push_back(tok);
    if (fields.size() != 4)
        throw std::invalid_argument("malformed message payload");

    Message m;
    m.source.s0 = code.B->parse(fields[0]);
    std::istringstream vs(fields[1]);
    while (std::getline(vs, tok, ';')) m.source.s1.push_back(code.B->parse(tok));
    if (int(m.source.s1.size()) != code.cfg.n)
        throw std::invalid_argument("malformed message: wrong s1 arity");
    m.source.s2 = code.A->parse(fields[2]);
    m.tag = code.gray->field()->parse(fields[3]);
    return m;
}

AttackEstimate run_attack(const CodeInstance& code, const Verifier& verifier,
                          const SimConfig& sim) {
    if (sim.trials < 1) throw std::invalid_argument("trials must be >= 1");
    AttackEstimate est;
    est.trials = sim.trials;
    est.rng_id = "splitmix64(seed,trial)";

    AttackReport exact = verifier.attack_probs();
    const auto& M = verifier.matrix();
    i64 nk = code.key_count;

    if (sim.adversary == AdversaryKind::Impersonation) {
        est.exact = exact.p_I.value();
        // forge the argmax message with no observation; fresh uniform key
        for (i64 trial = 0; trial < sim.trials; ++trial) {
            TrialRng rng(sim.seed, trial);
            i64 k = rng.uniform(nk);
            if (M[exact.pI_state][k] == exact.pI_tag) est.successes += 1;
        }
    } else {
        est.exact = exact.p_S.value();
        // the adversary conditions on observing the argmax message (s, t);
        // keys are drawn uniformly from the matching set by rejection
        for (i64 trial = 0; trial < sim.trials; ++trial) {
            TrialRng rng(sim.seed, trial);
            i64 k;
            do {
                k = rng.uniform(nk);
            } while (M[exact.pS_obs_state][k] != exact.pS_obs_tag);
            Message forged{code.S[exact.pS_sub_state],
                           code.gray->field()->element(exact.pS_sub_tag)};
            if (receive(code, k, forged)) est.successes += 1;
        }
    }
    est.frequency = double(est.successes) / double(est.trials);
    est.std_error = std::sqrt(est.exact * (1.0 - est.exact) / double(est.trials));
    return est;
}

} // namespace grauth
