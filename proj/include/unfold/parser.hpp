#pragma once

// Recursive-descent parser for the shared expression grammar:
//
//   expr    := ["+" | "-"] term (("+" | "-") term)*
//   term    := factor ("*" factor)*
//   factor  := base ("^" NAT)?
//   base    := RAT | VAR | "(" expr ")" | wedge | "E" | "h"
//   wedge   := "D(" NAT ("," NAT)* ")"
//   RAT     := INT ("/" INT)?
//
// Wedge indices are 1-based. They are normally written increasing; any other
// order of distinct indices is accepted and the permutation sign applied.
// "h" is only accepted by the series entry points.

#include <stdexcept>
#include <string>
#include <string_view>

#include "unfold/polynomial.hpp"
#include "unfold/polyvector.hpp"
#include "unfold/series.hpp"

namespace unfold {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Full grammar without h.
GElement parse_gelement(std::string_view text, const ContextPtr& ctx);
/// Same, but rejects E and D(...).
Polynomial parse_polynomial(std::string_view text, const ContextPtr& ctx);
/// With h allowed; terms above h^order are dropped.
HSeries<GElement> parse_gseries(std::string_view text, const ContextPtr& ctx, std::size_t order);
HSeries<Polynomial> parse_poly_series(std::string_view text, const ContextPtr& ctx, std::size_t order);

/// Splits "x,y,z" into a ring context.
ContextPtr parse_variables(std::string_view list);

}  // namespace unfold
