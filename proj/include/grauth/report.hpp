#ifndef GRAUTH_REPORT_HPP
#define GRAUTH_REPORT_HPP

#include <cstdint>
#include <string>

namespace grauth {

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

} // namespace grauth

#endif
