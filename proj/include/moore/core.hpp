#pragma once

// Transducers (Moore machines) over binary pin samples.
//
// A machine reads one Sample per time step and exposes an OutputVector in
// every state. The representing function of a machine maps a Trace w to the
// output of the state reached by following w from the initial state; eval()
// computes exactly that. States are opaque word vectors owned by each
// machine implementation; nothing in this header looks inside them.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moore
{

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class PinMismatch : public Error
{
public:
    using Error::Error;
};

class UnknownPin : public Error
{
public:
    using Error::Error;
};

class EmptyTrace : public Error
{
public:
    using Error::Error;
};

class StateBudgetExceeded : public Error
{
public:
    using Error::Error;
};

enum class Level : std::uint8_t
{
    low = 0,
    high = 1,
};

constexpr int to_int( Level l ) { return static_cast<int>( l ); }
constexpr Level to_level( bool b ) { return b ? Level::high : Level::low; }
constexpr Level flip( Level l ) { return l == Level::high ? Level::low : Level::high; }
constexpr char to_char( Level l ) { return l == Level::high ? '1' : '0'; }

using PinId = std::string;

/// Ordered set of uniquely named pins. Copies share storage.
class PinSet
{
public:
    PinSet();
    explicit PinSet( std::vector<PinId> names );
    PinSet( std::initializer_list<PinId> names );

    [[nodiscard]] std::size_t size() const { return _names->size(); }
    [[nodiscard]] bool empty() const { return _names->empty(); }
    [[nodiscard]] const PinId& operator[]( std::size_t i ) const { return ( *_names )[ i ]; }
    [[nodiscard]] const std::vector<PinId>& names() const { return *_names; }
    [[nodiscard]] auto begin() const { return _names->begin(); }
    [[nodiscard]] auto end() const { return _names->end(); }

    [[nodiscard]] std::optional<std::size_t> find( std::string_view pin ) const;
    /// Throws UnknownPin.
    [[nodiscard]] std::size_t index_of( std::string_view pin ) const;
    [[nodiscard]] bool contains( std::string_view pin ) const { return find( pin ).has_value(); }

    /// Same names, any order.
    [[nodiscard]] bool same_set( const PinSet& other ) const;

    /// Pin indices sorted by name; this is the enumeration order of samples.
    [[nodiscard]] const std::vector<std::size_t>& canonical_order() const { return *_canonical; }

    [[nodiscard]] std::string to_string() const;

    friend bool operator==( const PinSet& a, const PinSet& b );

private:
    std::shared_ptr<const std::vector<PinId>> _names;
    std::shared_ptr<const std::vector<std::size_t>> _canonical;
};

/// A total assignment of levels to a pin set. Used both for input samples
/// and for output vectors.
class Assignment
{
public:
    Assignment() = default;
    Assignment( PinSet pins, std::vector<Level> levels );

    [[nodiscard]] const PinSet& pins() const { return _pins; }
    [[nodiscard]] std::span<const Level> levels() const { return _levels; }
    [[nodiscard]] std::size_t size() const { return _levels.size(); }
    [[nodiscard]] Level at( std::size_t i ) const { return _levels.at( i ); }
    /// Throws UnknownPin.
    [[nodiscard]] Level operator[]( std::string_view pin ) const;

    /// Levels listed in `target` order. Throws PinMismatch unless the sets agree.
    [[nodiscard]] std::vector<Level> levels_in( const PinSet& target ) const;
    [[nodiscard]] Assignment reordered( const PinSet& target ) const;
    [[nodiscard]] Assignment project( const PinSet& subset ) const;

    /// Pin-wise equality; pin order does not matter.
    friend bool operator==( const Assignment& a, const Assignment& b );

    [[nodiscard]] std::string to_string() const;

private:
    PinSet _pins;
    std::vector<Level> _levels;
};

using Sample = Assignment;
using OutputVector = Assignment;

/// Finite sequence of samples over one pin set. The empty trace is Λ.
class Trace
{
public:
    Trace() = default;
    explicit Trace( PinSet pins );
    Trace( PinSet pins, std::vector<std::vector<Level>> rows );

    [[nodiscard]] const PinSet& pins() const { return _pins; }
    [[nodiscard]] std::size_t size() const { return _rows.size(); }
    [[nodiscard]] bool empty() const { return _rows.empty(); }
    [[nodiscard]] std::span<const Level> row( std::size_t i ) const { return _rows.at( i ); }
    [[nodiscard]] const std::vector<std::vector<Level>>& rows() const { return _rows; }
    [[nodiscard]] Sample operator[]( std::size_t i ) const { return { _pins, _rows.at( i ) }; }

    void push_back( std::vector<Level> row );
    void push_back( const Sample& sample );
    void pop_back() { _rows.pop_back(); }

    [[nodiscard]] Trace prefix( std::size_t n ) const;
    [[nodiscard]] Trace reordered( const PinSet& target ) const;

    friend Trace operator+( const Trace& w, const Trace& z );
    friend bool operator==( const Trace& a, const Trace& b );

    [[nodiscard]] std::string to_string() const;

private:
    PinSet _pins;
    std::vector<std::vector<Level>> _rows;
};

enum class Status
{
    pass,
    fail,
    budget,
};

[[nodiscard]] std::string_view to_string( Status s );

/// A violating trace plus, for nondeterministic machines, the branch index
/// taken at each step (empty for deterministic runs).
struct Counterexample
{
    Trace trace;
    std::vector<std::uint32_t> choices;
};

struct Verdict
{
    Status status = Status::pass;
    std::optional<Counterexample> counterexample;
    std::uint64_t traces_explored = 0;
    /// False when the result holds for traces of every length.
    bool bounded = true;
    std::string detail;

    [[nodiscard]] bool passed() const { return status == Status::pass; }
};

// Sample enumeration. Pins are ordered by name, levels 0 before 1; the
// first pin in name order is the most significant digit of the index.
[[nodiscard]] std::size_t sample_count( const PinSet& pins );
[[nodiscard]] std::vector<Level> sample_levels( const PinSet& pins, std::size_t index );
[[nodiscard]] std::size_t sample_index( const PinSet& pins, std::span<const Level> levels );
[[nodiscard]] std::vector<std::vector<Level>> all_samples( const PinSet& pins );

struct State
{
    std::vector<std::int32_t> words;

    friend bool operator==( const State&, const State& ) = default;
    friend auto operator<=>( const State&, const State& ) = default;
};

struct StateHash
{
    std::size_t operator()( const State& s ) const noexcept;
};

/// Implementation interface for deterministic machines. Input spans are in
/// inputs() order; output vectors are in outputs() order.
class Machine
{
public:
    virtual ~Machine() = default;

    [[nodiscard]] virtual const PinSet& inputs() const = 0;
    [[nodiscard]] virtual const PinSet& outputs() const = 0;
    [[nodiscard]] virtual State initial() const = 0;
    [[nodiscard]] virtual State step( const State& s, std::span<const Level> input ) const = 0;
    [[nodiscard]] virtual std::vector<Level> output( const State& s ) const = 0;
};

/// Immutable, cheaply copyable handle to a machine.
class Transducer
{
public:
    explicit Transducer( std::shared_ptr<const Machine> impl );

    [[nodiscard]] const PinSet& inputs() const { return _impl->inputs(); }
    [[nodiscard]] const PinSet& outputs() const { return _impl->outputs(); }
    [[nodiscard]] State initial_state() const { return _impl->initial(); }
    [[nodiscard]] State step( const State& s, std::span<const Level> input ) const
    {
        return _impl->step( s, input );
    }
    /// Reorders the sample if needed; throws PinMismatch.
    [[nodiscard]] State step( const State& s, const Sample& a ) const;
    [[nodiscard]] std::vector<Level> output_levels( const State& s ) const { return _impl->output( s ); }
    [[nodiscard]] OutputVector output( const State& s ) const { return { outputs(), _impl->output( s ) }; }

    [[nodiscard]] const Machine& machine() const { return *_impl; }

private:
    std::shared_ptr<const Machine> _impl;
};

using StepFunction = std::function<State( const State&, std::span<const Level> )>;
using OutputFunction = std::function<std::vector<Level>( const State& )>;

/// Builds a machine from plain functions.
[[nodiscard]] Transducer make_transducer( PinSet inputs, PinSet outputs, State initial,
                                          StepFunction step, OutputFunction out );

/// Restricts a machine's outputs to `pins` (listed in that order).
[[nodiscard]] Transducer project_outputs( const Transducer& m, const PinSet& pins );

[[nodiscard]] OutputVector eval( const Transducer& m, const Trace& w );

/// Outputs of every prefix of w, Λ first; size is |w| + 1.
[[nodiscard]] std::vector<OutputVector> run( const Transducer& m, const Trace& w );

/// State reached by following w from `from`.
[[nodiscard]] State follow( const Transducer& m, State from, const Trace& w );

/// Explicit transition table of the reachable part of a machine. Row 0 is
/// the initial state; columns are sample indices.
struct StateGraph
{
    PinSet inputs;
    PinSet outputs;
    std::vector<State> states;
    std::vector<std::vector<std::uint32_t>> next;
    std::vector<std::vector<Level>> out;
};

/// Breadth-first closure of the initial state. Throws StateBudgetExceeded
/// once more than max_states states are discovered.
[[nodiscard]] StateGraph tabulate( const Transducer& m, std::size_t max_states );

[[nodiscard]] std::vector<State> reachable_states( const Transducer& m, std::size_t max_states );

/// Machine over equivalence classes of reachable states. The initial class
/// is state 0 and classes are numbered in breadth-first order.
[[nodiscard]] Transducer minimize( const Transducer& m, std::size_t max_states );

/// Builds a table-driven machine; `graph.states` is ignored.
[[nodiscard]] Transducer from_graph( const StateGraph& graph );

struct EquivalenceOptions
{
    std::size_t max_pairs = 1'000'000;
};

/// Bounded comparison of representing functions. A PASS is marked unbounded
/// when every reachable state pair was explored before the depth limit.
[[nodiscard]] Verdict equivalent( const Transducer& m1, const Transducer& m2, std::size_t depth,
                                  const EquivalenceOptions& options = {} );

/// Shortest trace whose outputs differ when followed from `a` and from `b`.
[[nodiscard]] std::optional<Trace> distinguish( const Transducer& m, const State& a, const State& b,
                                                std::size_t max_length );

} // namespace moore
