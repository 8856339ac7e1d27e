#pragma once

// Counters and predicates over traces and output sequences.
//
// Each observer has a pure form, which takes a whole trace, and where the
// checker needs it an incremental form that is fed one sample at a time and
// answers for the trace seen so far. The two forms are tested against each
// other.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "moore/core.hpp"

namespace moore::obs
{

struct HoldQuery
{
    PinId pin;
    Level level;
};

/// Bits indexed from 1 in the mathematical sense; bits[0] is the least
/// significant bit.
class BitVector
{
public:
    explicit BitVector( std::vector<Level> bits );
    [[nodiscard]] std::span<const Level> bits() const { return _bits; }
    [[nodiscard]] std::size_t size() const { return _bits.size(); }

private:
    std::vector<Level> _bits;
};

[[nodiscard]] std::size_t time( const Trace& w );
/// Throws UnknownPin.
[[nodiscard]] std::size_t high( const Trace& w, std::string_view pin );
/// Trailing run of samples with q.pin at q.level. Throws UnknownPin.
[[nodiscard]] std::size_t hold( const Trace& w, const HoldQuery& q );
/// #f over a run() result: trailing count of equal adjacent outputs.
[[nodiscard]] std::size_t stable_output( std::span<const OutputVector> outputs );
/// Same, looking only at one output pin.
[[nodiscard]] std::size_t stable_output( std::span<const OutputVector> outputs, std::string_view pin );
/// Throws EmptyTrace on Λ.
[[nodiscard]] Sample last( const Trace& w );
[[nodiscard]] std::size_t stable( const Trace& w );
/// Requires pins "set" and "reset"; t_latch >= 1.
[[nodiscard]] Level latched( const Trace& w, Level b, std::size_t t_latch );
[[nodiscard]] std::uint64_t unsigned_value( const BitVector& v );

/// Hold counters for every pin of a pin set at once.
class PinRuns
{
public:
    explicit PinRuns( std::size_t pins ) : _level( pins, Level::low ), _run( pins, 0 ) {}

    void push( std::span<const Level> sample );
    [[nodiscard]] std::size_t hold( std::size_t pin, Level level ) const
    {
        return _level[ pin ] == level ? _run[ pin ] : 0;
    }
    [[nodiscard]] std::size_t size() const { return _run.size(); }

private:
    std::vector<Level> _level;
    std::vector<std::size_t> _run;
};

/// Incremental Stable(w).
class StableCounter
{
public:
    void push( std::span<const Level> sample );
    [[nodiscard]] std::size_t value() const { return _count; }
    [[nodiscard]] bool empty() const { return !_last.has_value(); }
    [[nodiscard]] const std::vector<Level>& last() const { return *_last; }

private:
    std::optional<std::vector<Level>> _last;
    std::size_t _count = 0;
};

/// Incremental #f. Seeded with the Λ output.
class OutputStability
{
public:
    explicit OutputStability( std::vector<Level> initial );
    void push( std::span<const Level> output );
    [[nodiscard]] std::size_t whole() const { return _whole; }
    [[nodiscard]] std::size_t pin( std::size_t i ) const { return _per_pin[ i ]; }

private:
    std::vector<Level> _last;
    std::size_t _whole = 0;
    std::vector<std::size_t> _per_pin;
};

/// Incremental latched(w, b, t_latch) over a trace with set/reset pins at the
/// given positions.
class LatchedTracker
{
public:
    LatchedTracker( Level b, std::size_t t_latch, std::size_t set_pin, std::size_t reset_pin );

    /// `runs` must already include `sample`.
    void push( std::span<const Level> sample, const PinRuns& runs );
    [[nodiscard]] Level value() const { return _value; }
    [[nodiscard]] Level target() const { return _b; }
    [[nodiscard]] std::size_t t_latch() const { return _t; }

private:
    Level _b;
    std::size_t _t;
    std::size_t _set;
    std::size_t _reset;
    Level _value = Level::low;
};

} // namespace moore::obs
