#pragma once

// Stimulus CSV: header "tick,<pins>", then one row per sample with 0-based
// contiguous ticks and 0/1 cells. Row i is sample i+1 of the trace.

#include <string>
#include <string_view>

#include "moore/core.hpp"

namespace moore::cli
{

/// Throws ParseError on malformed text and PinMismatch when the header is
/// not exactly `expected` (any order). The trace uses `expected`'s order.
[[nodiscard]] Trace parse_stimulus( std::string_view text, const PinSet& expected );

[[nodiscard]] std::string format_stimulus( const Trace& w );

} // namespace moore::cli
