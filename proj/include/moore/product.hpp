#pragma once

// Feedback product of machines with wire-only connections.
//
// Every factor input pin is driven either by an external pin of the
// composite or by an output pin of some factor. Factor sources read the
// outputs of the state *before* the step, so every wire between components
// carries one step of delay. Composite outputs select factor output pins of
// the state after the step.

#include <cstddef>
#include <map>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "moore/core.hpp"

namespace moore
{

class SpecInvalid : public Error
{
public:
    using Error::Error;
};

struct External
{
    PinId pin;
    friend bool operator==( const External&, const External& ) = default;
};

struct FactorPin
{
    std::size_t factor;
    PinId pin;
    friend bool operator==( const FactorPin&, const FactorPin& ) = default;
};

using WireSource = std::variant<External, FactorPin>;

/// (factor index, factor input pin) -> source. Each key is driven once by
/// construction; totality is checked by validate().
using ConnectionMap = std::map<std::pair<std::size_t, PinId>, WireSource>;

struct Exposure
{
    PinId pin;
    FactorPin from;
};

/// Composite output pins in declaration order.
using OutputSelection = std::vector<Exposure>;

struct ProductSpec
{
    std::vector<Transducer> factors;
    ConnectionMap wiring;
    OutputSelection exposure;
    PinSet input_pins;
};

/// Pin interface of one factor.
struct FactorPins
{
    PinSet inputs;
    PinSet outputs;
};

/// Wiring compiled to flat indices. Shared by deterministic and
/// nondeterministic products.
class WiringPlan
{
public:
    /// Throws SpecInvalid naming the first violated invariant.
    WiringPlan( const PinSet& inputs, std::vector<FactorPins> factors, const ConnectionMap& wiring,
                const OutputSelection& exposure );

    [[nodiscard]] const PinSet& inputs() const { return _inputs; }
    [[nodiscard]] const PinSet& outputs() const { return _outputs; }
    [[nodiscard]] std::size_t factor_count() const { return _factors.size(); }
    [[nodiscard]] const FactorPins& factor( std::size_t i ) const { return _factors[ i ]; }

    /// Offset of factor i's outputs inside the flat output vector.
    [[nodiscard]] std::size_t output_offset( std::size_t i ) const { return _output_offset[ i ]; }
    [[nodiscard]] std::size_t flat_output_size() const { return _flat_outputs; }

    /// Input sample for factor i from the composite input and the flat
    /// factor outputs (pre-step).
    void assemble( std::size_t i, std::span<const Level> external, std::span<const Level> flat_outputs,
                   std::vector<Level>& dst ) const;
    /// Composite output from the flat factor outputs.
    [[nodiscard]] std::vector<Level> expose( std::span<const Level> flat_outputs ) const;

    /// Edge j -> i whenever factor i reads an output of factor j.
    [[nodiscard]] std::vector<std::vector<std::size_t>> dependencies() const;

private:
    PinSet _inputs;
    PinSet _outputs;
    std::vector<FactorPins> _factors;
    std::vector<std::size_t> _output_offset;
    std::size_t _flat_outputs = 0;
    // Per factor, per input pin: index < |inputs| reads the external sample,
    // otherwise flat output index + |inputs|.
    std::vector<std::vector<std::size_t>> _source;
    std::vector<std::size_t> _exposed;
};

[[nodiscard]] WiringPlan plan( const ProductSpec& spec );
void validate( const ProductSpec& spec );

/// Splits a composite state into factor states.
[[nodiscard]] std::vector<State> split_state( const State& composite, std::size_t factors );
[[nodiscard]] State join_states( const std::vector<State>& parts );

[[nodiscard]] Transducer compose( const ProductSpec& spec );

/// Input traces each factor sees, built by the recursive induced-input
/// mapping using factor outputs obtained from eval() on the traces so far.
[[nodiscard]] std::vector<Trace> induced_inputs( const ProductSpec& spec, const Trace& w );

struct Theorem1Options
{
    std::size_t depth = 4;
    std::size_t random_trials = 0;
    std::size_t random_length = 50;
    std::uint64_t seed = 0;
    std::size_t max_nodes = 5'000'000;
};

/// Compares the composite machine against the selection applied to the
/// factors' own evaluations on their induced inputs. Exhaustive to `depth`
/// (state pairs already visited are not re-expanded) plus random traces
/// compared at every prefix.
[[nodiscard]] Verdict theorem1_check( const ProductSpec& spec, const Theorem1Options& options );

[[nodiscard]] bool is_feedback_free( const ProductSpec& spec );

} // namespace moore
