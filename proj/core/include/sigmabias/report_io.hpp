#pragma once

#include <filesystem>
#include <string>

#include "sigmabias/density.hpp"
#include "sigmabias/sieve.hpp"

namespace sigmabias {

// Reports are plain key-value text with exact fractions next to decimals, so
// a certificate can be audited and diffed without tooling.

std::string bound_report_text(const BoundReport& report);
std::string sieve_report_text(const SieveReport& report);

// Parses a report back far enough to recover its originating configuration
// and headline values.  Throws std::invalid_argument on malformed input.
BoundReport parse_bound_report(const std::string& text);
SieveReport parse_sieve_report(const std::string& text);

// Write-to-temp then atomic rename: no partial report file ever exists at
// `path`, even on failure.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace sigmabias
