#ifndef GRAUTH_CONFIG_HPP
#define GRAUTH_CONFIG_HPP

#include "grauth/code.hpp"
#include "grauth/protocol.hpp"
#include "grauth/verifier.hpp"

namespace grauth {

// Flat key-value config file: one "key = value" per line, '#' comments.
// Keys: p, r, ell, n, t, eta, theta, Z, f, seed, cap.
CodeConfig load_config(const std::string& path);
CodeConfig parse_config(const std::string& text);

enum class ReportFormat { Table, Records };

// Deterministic report renderers; identical inputs yield identical bytes.
// ring-info and gray-table need only the rings, not a full code instance, so
// they stay usable at parameters where the code construction has no room
// (e.g. the classical p = 2, ell = 1 Gray map).
std::string render_ring_info(const Ring& A, const Ring& B, ReportFormat fmt);
std::string render_gray_table(const GrayMap& gray, ReportFormat fmt);
std::string render_build_code(const CodeInstance& code, ReportFormat fmt);
std::string render_resilience(const CodeInstance& code,
                              const ResilienceReport& rep, ReportFormat fmt);
std::string render_injectivity(const CodeInstance& code,
                               const InjectivityReport& rep, ReportFormat fmt);
std::string render_attack(const CodeInstance& code, const AttackReport& rep,
                          ReportFormat fmt);
std::string render_simulation(const CodeInstance& code, const SimConfig& sim,
                              const AttackEstimate& est, ReportFormat fmt);

} // namespace grauth

#endif
