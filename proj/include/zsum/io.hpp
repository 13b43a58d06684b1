#pragma once

#include <string>

#include "zsum/constructions.hpp"
#include "zsum/factorize.hpp"

namespace zsum {

// Certificate document: {group, left, right, assignment, claimed_rho};
// verified on load.
std::string certificate_to_json(const Certificate& cert, int64_t claimed_rho);
Certificate certificate_from_json(const std::string& text, int64_t* claimed_rho = nullptr);
void write_certificate(const Certificate& cert, int64_t claimed_rho, const std::string& path);
Certificate read_certificate(const std::string& path, int64_t* claimed_rho = nullptr);

std::string witness_report_to_json(const WitnessReport& report);

}  // namespace zsum
