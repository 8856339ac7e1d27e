#pragma once

// Devices built from gates and adders as wire-only products.

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "moore/core.hpp"
#include "moore/product.hpp"

namespace moore
{

/// Cross-coupled NAND pair. Factor 0 drives q, factor 1 drives qbar;
/// inputs {set, reset}, outputs {q, qbar}.
struct LatchSpec
{
    std::size_t base_delay_t;
    std::pair<Level, Level> gate_initials;
    ProductSpec spec;
};

/// Inputs {carry_in, v1_1..v1_n, v2_1..v2_n}; outputs {r_1..r_n, carry_out}.
struct RippleSpec
{
    std::size_t n_bits;
    std::size_t bit_delay_t;
    ProductSpec spec;
};

[[nodiscard]] LatchSpec make_sr_latch( std::size_t t, std::pair<Level, Level> gate_initials = { Level::high, Level::low } );

/// Single-output machine exposing the latch's q pin.
[[nodiscard]] Transducer latch_q( const LatchSpec& l );

/// 7-input NAND from three 3-input NANDs; the third gate combines pin 7
/// with the outputs of the first two. Output pin "out".
[[nodiscard]] ProductSpec make_nand7( std::size_t t, std::array<Level, 3> initials = { Level::high, Level::high, Level::high } );

/// `initials` holds (sum, carry_out) per bit; empty means all zero.
[[nodiscard]] RippleSpec make_ripple_adder( std::size_t n, std::size_t t,
                                            std::vector<std::pair<Level, Level>> initials = {} );

/// Ripple-adder pin names.
[[nodiscard]] PinSet ripple_inputs( std::size_t n );
[[nodiscard]] PinSet ripple_outputs( std::size_t n );

/// carry_in + unsigned(v1) + unsigned(v2) == unsigned(r) + 2^n carry_out, for
/// a sample over ripple_inputs(n) and an output over ripple_outputs(n).
[[nodiscard]] bool adder_star_holds( std::size_t n, const Sample& last, const OutputVector& out );

/// Evaluates the composite on w and checks the identity against Last(w).
/// Throws EmptyTrace on Λ.
[[nodiscard]] bool adder_star_property( const RippleSpec& v, const Trace& w );

} // namespace moore
