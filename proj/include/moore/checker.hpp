#pragma once

// Bounded universal checking of implication properties over traces.
//
// check_universal() visits every trace up to a depth in canonical sample
// order and evaluates each property at every prefix. Nondeterministic
// machines add a branch per allowed output at each step. On failure the
// verdict carries the shortest violating trace (lexicographically first
// among the shortest) together with the branch choices that produce it.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "moore/circuits.hpp"
#include "moore/core.hpp"
#include "moore/gates.hpp"
#include "moore/product.hpp"

namespace moore
{

// Antecedent conditions. A property's antecedent is the conjunction of its
// conditions; its value is the smallest of their values.

struct HoldAtLeast
{
    PinId pin;
    Level level;
    std::size_t bound;
};

struct StableAtLeast
{
    std::size_t bound;
};

struct LatchedEquals
{
    Level b;
    std::size_t t_latch;
};

using Condition = std::variant<HoldAtLeast, StableAtLeast, LatchedEquals>;

// Consequents.

struct OutputEquals
{
    PinId pin;
    Level level;
};

/// #out >= offset, or #out >= antecedent value - offset when `relative`.
/// Without a pin the whole output vector is compared.
struct StableOutputAtLeast
{
    std::optional<PinId> pin;
    std::int64_t offset = 0;
    bool relative = false;
};

/// Ripple-adder identity on the last sample and the current output.
struct StarEquality
{
    std::size_t n_bits;
};

using Consequent = std::variant<OutputEquals, StableOutputAtLeast, StarEquality>;

struct Property
{
    std::string name;
    std::vector<Condition> antecedent;
    Consequent consequent;
    std::map<std::string, std::int64_t> parameters;
};

/// Machine whose output may be chosen from a set at every step. The chosen
/// output is part of the successor state, so it is what other components
/// read on the next step.
class NondetMachine
{
public:
    virtual ~NondetMachine() = default;

    [[nodiscard]] virtual const PinSet& inputs() const = 0;
    [[nodiscard]] virtual const PinSet& outputs() const = 0;
    [[nodiscard]] virtual State initial() const = 0;
    /// Appends successors in branch order; at least one.
    virtual void successors( const State& s, std::span<const Level> input, std::vector<State>& out ) const = 0;
    [[nodiscard]] virtual std::vector<Level> output( const State& s ) const = 0;
};

class NondetTransducer
{
public:
    explicit NondetTransducer( std::shared_ptr<const NondetMachine> impl );
    /// Deterministic machine seen as a single-branch one.
    NondetTransducer( const Transducer& m );

    [[nodiscard]] const PinSet& inputs() const { return _impl->inputs(); }
    [[nodiscard]] const PinSet& outputs() const { return _impl->outputs(); }
    [[nodiscard]] State initial_state() const { return _impl->initial(); }
    void successors( const State& s, std::span<const Level> input, std::vector<State>& out ) const
    {
        _impl->successors( s, input, out );
    }
    [[nodiscard]] std::vector<Level> output_levels( const State& s ) const { return _impl->output( s ); }

private:
    std::shared_ptr<const NondetMachine> _impl;
};

/// NAND gate that may output either level whenever neither constraint fires.
[[nodiscard]] NondetTransducer make_adversarial_nand( const GateParams& p );

/// Product of nondeterministic factors; each step branches over the
/// cartesian product of factor choices (factor 0 most significant).
[[nodiscard]] NondetTransducer compose_nondet( const std::vector<NondetTransducer>& factors, const PinSet& inputs,
                                               const ConnectionMap& wiring, const OutputSelection& exposure );

/// SR latch over adversarial gates with the same wiring as `l`.
[[nodiscard]] NondetTransducer adversarial_latch( const LatchSpec& l );

enum class SearchMode
{
    /// Every trace (and branch) is visited.
    exhaustive,
    /// Breadth-first over (machine state, observer state) with duplicates
    /// pruned. Observer counters are capped at the largest bound any
    /// property uses, so it only applies to non-relative properties.
    memoized,
};

struct CheckOptions
{
    SearchMode mode = SearchMode::exhaustive;
    /// Nodes visited before giving up with BUDGET.
    std::uint64_t max_nodes = 200'000'000;
};

[[nodiscard]] Verdict check_universal( const NondetTransducer& m, std::span<const Property> props, std::size_t depth,
                                       const CheckOptions& options = {} );
[[nodiscard]] Verdict check_universal( const NondetTransducer& m, const Property& prop, std::size_t depth,
                                       const CheckOptions& options = {} );

/// Re-runs a counterexample and reports whether some property fails at its
/// last prefix.
[[nodiscard]] bool replay_violates( const NondetTransducer& m, std::span<const Property> props,
                                    const Counterexample& cex );

/// Outputs along a counterexample, Λ first.
[[nodiscard]] std::vector<OutputVector> replay_outputs( const NondetTransducer& m, const Counterexample& cex );

/// #N(w) >= H(w,p,0) - (t+k) for both pins of a 2-input NAND.
[[nodiscard]] Verdict check_stability_lemma( std::size_t t, std::size_t k, std::size_t depth, TransientPolicy policy,
                                             const CheckOptions& options = {} );

struct LatchClaimResult
{
    std::size_t t_latch;
    std::size_t depth;
    Verdict claim;
    /// Same check with t_latch - 1.
    Verdict tightness;
};

/// latched(w, b, 3t+2) = 1 implies q = b, on every trace up to 3t+2+slack.
[[nodiscard]] LatchClaimResult check_latch_claim( std::size_t t, std::size_t slack, TransientPolicy policy,
                                                  std::pair<Level, Level> gate_initials = { Level::high, Level::low },
                                                  const CheckOptions& options = {} );

/// Stable(w) >= t+k implies both adder outputs stable for k steps.
[[nodiscard]] Verdict check_adder_lemma( std::size_t t, std::size_t k, std::size_t depth,
                                         const CheckOptions& options = {} );

struct RippleStarOptions
{
    std::size_t prefix_length = 8;
    std::size_t trials = 10;
    std::uint64_t seed = 0;
};

/// Every input assignment, held n*t+n steps after random prefixes, must
/// satisfy the adder identity.
[[nodiscard]] Verdict check_ripple_star( std::size_t n, std::size_t t, const RippleStarOptions& options = {} );

/// Properties used by the named checks, exposed for replay.
[[nodiscard]] std::vector<Property> stability_lemma_properties( std::size_t t, std::size_t k );
[[nodiscard]] std::vector<Property> latch_claim_properties( std::size_t t_latch );
[[nodiscard]] std::vector<Property> adder_lemma_properties( std::size_t t, std::size_t k );

} // namespace moore
