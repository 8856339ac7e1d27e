#pragma once

// Component machines: NAND and OR gates with a propagation delay, and the
// single-bit adder.
//
// A gate is only constrained once an input condition has persisted for t
// steps. When no constraint fires the executable gates keep their previous
// output (HoldLast). The adversarial reading, where the output may be either
// level whenever it is unconstrained, is not a deterministic machine; the
// checker builds it from nand_allowed().
//
// Gate state layout: one (level, run) word pair per input pin with the run
// capped at t, followed by the current output level.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "moore/core.hpp"

namespace moore
{

enum class TransientPolicy
{
    hold_last,
    adversarial,
};

struct GateParams
{
    PinSet pins;
    std::size_t delay_t = 1;
    Level initial_output = Level::high;
    TransientPolicy policy = TransientPolicy::hold_last;
};

struct AdderParams
{
    std::size_t delay_t = 1;
    Level initial_sum = Level::low;
    Level initial_carry = Level::low;
};

inline constexpr std::string_view gate_output_pin = "out";

/// {"1", ..., "count"}
[[nodiscard]] PinSet numbered_pins( std::size_t count );

/// Pins {v1, v2, carry_in}; outputs {sum, carry_out}.
[[nodiscard]] const PinSet& adder_inputs();
[[nodiscard]] const PinSet& adder_outputs();

/// Subset of {0,1} a gate may output; never empty.
class AllowedOutputs
{
public:
    [[nodiscard]] static AllowedOutputs any() { return { true, true }; }
    [[nodiscard]] static AllowedOutputs only( Level l ) { return { l == Level::low, l == Level::high }; }

    [[nodiscard]] bool contains( Level l ) const { return l == Level::high ? _one : _zero; }
    [[nodiscard]] bool singleton() const { return _zero != _one; }
    /// The forced level; only meaningful when singleton().
    [[nodiscard]] Level forced() const { return to_level( _one ); }
    /// In exploration order, 0 before 1.
    [[nodiscard]] std::vector<Level> levels() const;

    friend bool operator==( const AllowedOutputs&, const AllowedOutputs& ) = default;

private:
    AllowedOutputs( bool zero, bool one ) : _zero{ zero }, _one{ one } {}
    bool _zero;
    bool _one;
};

struct PinRun
{
    Level level;
    std::size_t run;
};

/// Throws Error on an empty pin set or a zero delay.
void validate( const GateParams& p );

[[nodiscard]] Transducer make_nand( const GateParams& p );
/// The low output (every pin held at 0 for t steps) completes the OR
/// constraint symmetrically.
[[nodiscard]] Transducer make_or( const GateParams& p );
[[nodiscard]] Transducer make_adder_bit( const AdderParams& p );

[[nodiscard]] AllowedOutputs nand_allowed( std::span<const PinRun> runs, std::size_t t );
/// Decodes a make_nand() state.
[[nodiscard]] AllowedOutputs nand_allowed( const State& gate_state, std::size_t t );
[[nodiscard]] std::vector<PinRun> gate_runs( const State& gate_state );

/// Exhaustive check of the two NAND constraints with delay t on every
/// trace up to `depth`. `m` must have a single output pin.
[[nodiscard]] Verdict check_gate_constraints( const Transducer& m, std::size_t t, std::size_t depth );

} // namespace moore
