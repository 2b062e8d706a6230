#pragma once

// Catalog and errata serialization. Records carry an FNV-1a 64 checksum of
// their canonical text so a catalog read back can be re-verified.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "integrable/derive.hpp"
#include "integrable/hierarchy.hpp"

namespace integrable::io {

using Json = nlohmann::json;

std::uint64_t fnv1a(std::string_view bytes);

/// "family base order rhs" with the rhs in canonical ring grammar.
std::string canonical_text(const FlowRecord& f);
/// 16 lowercase hex digits.
std::string checksum(const FlowRecord& f);

Json to_json(const DiffPoly& e);
DiffPoly poly_from_json(const Json& j);

Json to_json(const FlowRecord& f);
/// Throws Error on malformed input or a checksum mismatch.
FlowRecord flow_from_json(const Json& j);

Json catalog_json(const std::vector<FlowRecord>& flows);
std::vector<FlowRecord> catalog_from_json(const Json& j);

/// One tab-separated line per flow: family, base, order, provenance,
/// checksum, rhs.
std::string catalog_text(const std::vector<FlowRecord>& flows);
std::vector<FlowRecord> catalog_from_text(std::string_view text);

/// LaTeX body of a polynomial (no math delimiters); a_b is written a_{b}.
std::string latex(const DiffPoly& e, int base);
std::string catalog_latex(const std::vector<FlowRecord>& flows);
/// Reads back the output of latex().
DiffPoly parse_latex(std::string_view text, int base);

Json to_json(const Erratum& e);
Json errata_json(const std::vector<Erratum>& errata);

Json to_json(const PseudoDiffOperator& op);

struct CatalogCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Re-derives every record (checksum and regenerated flow) and reports
/// mismatches.
CatalogCheck verify_catalog(const std::vector<FlowRecord>& flows);

}  // namespace integrable::io
