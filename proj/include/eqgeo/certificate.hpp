#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eqgeo/radical.hpp"

namespace eqgeo {

// The only accepted on-disk form: two-space indented JSON plus a newline.
std::string certificate_text(const json& certificate);
std::string certificate_text(const WitnessCertificate& certificate);

struct CheckResult {
  bool valid = true;
  std::vector<std::string> problems;

  json to_json() const { return {{"valid", valid}, {"problems", problems}}; }
};

// Re-derives everything from the certificate alone: digest, group hash,
// E0 membership, every separator by evaluation, redundant steps and the
// final Rad(E0) = Rad(E) with the named oracle. Nested certificates are
// checked recursively.
CheckResult check_certificate(const json& certificate);
// Also rejects any byte sequence that is not the canonical text.
CheckResult check_certificate_text(std::string_view bytes);

}  // namespace eqgeo
