#pragma once

// Transformation monoid of a finite machine and the combinational test.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "moore/core.hpp"

namespace moore
{

class ElementBudgetExceeded : public Error
{
public:
    using Error::Error;
};

/// A total map on the state universe, stored as its image vector.
using Element = std::vector<std::uint32_t>;

struct TransformationMonoid
{
    PinSet inputs;
    /// Reachable states of the minimized machine, initial state first.
    std::vector<State> state_universe;
    /// elements[0] is the identity.
    std::vector<Element> elements;
    /// generators[a] is the index in `elements` of the map for sample a,
    /// samples in canonical order.
    std::vector<std::size_t> generators;

    [[nodiscard]] std::size_t size() const { return elements.size(); }
    [[nodiscard]] const Element& identity() const { return elements.front(); }
    /// Map that applies a, then b.
    [[nodiscard]] static Element compose( const Element& a, const Element& b );
    /// Index of e in `elements`, or size() when absent.
    [[nodiscard]] std::size_t find( const Element& e ) const;
};

constexpr std::size_t default_max_states = 100'000;

[[nodiscard]] TransformationMonoid monoid( const Transducer& m, std::size_t max_elements,
                                           std::size_t max_states = default_max_states );

/// Map sending each universe state to where w leads it.
[[nodiscard]] Element act( const TransformationMonoid& mon, const Trace& w );

struct MonoidStats
{
    std::size_t size = 0;
    std::size_t states = 0;
    std::size_t distinct_generators = 0;
    std::size_t idempotents = 0;
    bool has_nontrivial_unit = false;
    bool aperiodic = true;
};

[[nodiscard]] MonoidStats describe( const TransformationMonoid& mon );

/// True when repeating any input word never cycles through more than one
/// state: every element's functional graph has only fixed-point loops.
[[nodiscard]] bool is_combinational( const Transducer& m, std::size_t max_elements = 1'000'000,
                                     std::size_t max_states = default_max_states );

/// Minimized transition graph with self-loops removed is acyclic.
[[nodiscard]] bool has_only_self_loops( const Transducer& m, std::size_t max_states = default_max_states );

[[nodiscard]] Verdict monoid_laws( const TransformationMonoid& mon, std::size_t trials, std::uint64_t seed = 0 );

} // namespace moore
