#pragma once

// Output writers for the per-tick outputs of a run (tick 0 is Λ).

#include <span>
#include <string>

#include "moore/core.hpp"

namespace moore::cli
{

/// Identifier for the i-th VCD variable: "!", "\"", "#", ... then two
/// characters once the printable range is used up.
[[nodiscard]] std::string vcd_identifier( std::size_t i );

[[nodiscard]] std::string to_vcd( const PinSet& pins, std::span<const OutputVector> ticks );
[[nodiscard]] std::string to_csv( const PinSet& pins, std::span<const OutputVector> ticks );

} // namespace moore::cli
