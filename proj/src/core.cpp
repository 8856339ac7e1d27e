#include "moore/core.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace moore
{

namespace
{

std::shared_ptr<const std::vector<std::size_t>> canonical_of( const std::vector<PinId>& names )
{
    std::vector<std::size_t> order( names.size() );
    std::iota( order.begin(), order.end(), std::size_t{ 0 } );
    std::sort( order.begin(), order.end(),
               [ & ]( std::size_t a, std::size_t b ) { return names[ a ] < names[ b ]; } );
    return std::make_shared<const std::vector<std::size_t>>( std::move( order ) );
}

// Maps positions of `target` to positions of `source`; both must hold the
// same pin names.
std::vector<std::size_t> permutation( const PinSet& source, const PinSet& target )
{
    if ( !source.same_set( target ) )
        throw PinMismatch( "pin sets differ: " + source.to_string() + " vs " + target.to_string() );
    std::vector<std::size_t> perm( target.size() );
    for ( std::size_t i = 0; i < target.size(); ++i )
        perm[ i ] = source.index_of( target[ i ] );
    return perm;
}

} // namespace

// PinSet

PinSet::PinSet() : PinSet( std::vector<PinId>{} ) {}

PinSet::PinSet( std::vector<PinId> names )
{
    for ( std::size_t i = 0; i < names.size(); ++i )
    {
        if ( names[ i ].empty() )
            throw Error( "pin names must be non-empty" );
        for ( std::size_t j = 0; j < i; ++j )
            if ( names[ j ] == names[ i ] )
                throw Error( "duplicate pin name '" + names[ i ] + "'" );
    }
    _canonical = canonical_of( names );
    _names = std::make_shared<const std::vector<PinId>>( std::move( names ) );
}

PinSet::PinSet( std::initializer_list<PinId> names ) : PinSet( std::vector<PinId>( names ) ) {}

std::optional<std::size_t> PinSet::find( std::string_view pin ) const
{
    for ( std::size_t i = 0; i < _names->size(); ++i )
        if ( ( *_names )[ i ] == pin )
            return i;
    return std::nullopt;
}

std::size_t PinSet::index_of( std::string_view pin ) const
{
    if ( auto i = find( pin ) )
        return *i;
    throw UnknownPin( "unknown pin '" + std::string( pin ) + "' in " + to_string() );
}

bool PinSet::same_set( const PinSet& other ) const
{
    if ( _names == other._names )
        return true;
    if ( size() != other.size() )
        return false;
    return std::all_of( begin(), end(), [ & ]( const PinId& p ) { return other.contains( p ); } );
}

std::string PinSet::to_string() const
{
    std::string s = "{";
    for ( std::size_t i = 0; i < size(); ++i )
    {
        if ( i )
            s += ',';
        s += ( *this )[ i ];
    }
    return s + "}";
}

bool operator==( const PinSet& a, const PinSet& b )
{
    return a._names == b._names || *a._names == *b._names;
}

// Assignment

Assignment::Assignment( PinSet pins, std::vector<Level> levels )
        : _pins{ std::move( pins ) }, _levels{ std::move( levels ) }
{
    if ( _pins.size() != _levels.size() )
        throw PinMismatch( "assignment over " + _pins.to_string() + " has " +
                           std::to_string( _levels.size() ) + " levels" );
}

Level Assignment::operator[]( std::string_view pin ) const
{
    return _levels[ _pins.index_of( pin ) ];
}

std::vector<Level> Assignment::levels_in( const PinSet& target ) const
{
    if ( target == _pins )
        return _levels;
    auto perm = permutation( _pins, target );
    std::vector<Level> out( perm.size() );
    for ( std::size_t i = 0; i < perm.size(); ++i )
        out[ i ] = _levels[ perm[ i ] ];
    return out;
}

Assignment Assignment::reordered( const PinSet& target ) const
{
    return { target, levels_in( target ) };
}

Assignment Assignment::project( const PinSet& subset ) const
{
    std::vector<Level> out;
    out.reserve( subset.size() );
    for ( const auto& p : subset )
        out.push_back( ( *this )[ p ] );
    return { subset, std::move( out ) };
}

bool operator==( const Assignment& a, const Assignment& b )
{
    if ( a._pins == b._pins )
        return a._levels == b._levels;
    if ( !a._pins.same_set( b._pins ) )
        return false;
    return a._levels == b.levels_in( a._pins );
}

std::string Assignment::to_string() const
{
    std::string s;
    for ( std::size_t i = 0; i < _levels.size(); ++i )
    {
        if ( i )
            s += ' ';
        s += _pins[ i ] + "=" + to_char( _levels[ i ] );
    }
    return s;
}

// Trace

Trace::Trace( PinSet pins ) : _pins{ std::move( pins ) } {}

Trace::Trace( PinSet pins, std::vector<std::vector<Level>> rows ) : _pins{ std::move( pins ) }
{
    for ( auto& r : rows )
        push_back( std::move( r ) );
}

void Trace::push_back( std::vector<Level> row )
{
    if ( row.size() != _pins.size() )
        throw PinMismatch( "sample has " + std::to_string( row.size() ) + " levels, trace pins are " +
                           _pins.to_string() );
    _rows.push_back( std::move( row ) );
}

void Trace::push_back( const Sample& sample )
{
    _rows.push_back( sample.levels_in( _pins ) );
}

Trace Trace::prefix( std::size_t n ) const
{
    Trace t( _pins );
    t._rows.assign( _rows.begin(), _rows.begin() + static_cast<std::ptrdiff_t>( std::min( n, size() ) ) );
    return t;
}

Trace Trace::reordered( const PinSet& target ) const
{
    if ( target == _pins )
        return *this;
    auto perm = permutation( _pins, target );
    Trace t( target );
    t._rows.reserve( _rows.size() );
    for ( const auto& r : _rows )
    {
        std::vector<Level> out( perm.size() );
        for ( std::size_t i = 0; i < perm.size(); ++i )
            out[ i ] = r[ perm[ i ] ];
        t._rows.push_back( std::move( out ) );
    }
    return t;
}

Trace operator+( const Trace& w, const Trace& z )
{
    Trace out = w;
    for ( const auto& r : z.reordered( w._pins )._rows )
        out._rows.push_back( r );
    return out;
}

bool operator==( const Trace& a, const Trace& b )
{
    if ( a.size() != b.size() || !a._pins.same_set( b._pins ) )
        return false;
    return a._rows == b.reordered( a._pins )._rows;
}

std::string Trace::to_string() const
{
    if ( _rows.empty() )
        return "Λ";
    std::string s;
    for ( std::size_t i = 0; i < _rows.size(); ++i )
    {
        if ( i )
            s += " ; ";
        s += ( *this )[ i ].to_string();
    }
    return s;
}

std::string_view to_string( Status s )
{
    switch ( s )
    {
    case Status::pass:
        return "PASS";
    case Status::fail:
        return "FAIL";
    case Status::budget:
        return "BUDGET";
    }
    return "?";
}

// Sample enumeration

std::size_t sample_count( const PinSet& pins )
{
    if ( pins.size() > 24 )
        throw Error( "too many input pins to enumerate samples: " + std::to_string( pins.size() ) );
    return std::size_t{ 1 } << pins.size();
}

std::vector<Level> sample_levels( const PinSet& pins, std::size_t index )
{
    const auto& order = pins.canonical_order();
    const std::size_t k = order.size();
    std::vector<Level> levels( k );
    for ( std::size_t j = 0; j < k; ++j )
        levels[ order[ j ] ] = to_level( ( index >> ( k - 1 - j ) ) & 1U );
    return levels;
}

std::size_t sample_index( const PinSet& pins, std::span<const Level> levels )
{
    const auto& order = pins.canonical_order();
    std::size_t index = 0;
    for ( std::size_t pos : order )
        index = ( index << 1 ) | static_cast<std::size_t>( to_int( levels[ pos ] ) );
    return index;
}

std::vector<std::vector<Level>> all_samples( const PinSet& pins )
{
    const std::size_t n = sample_count( pins );
    std::vector<std::vector<Level>> out;
    out.reserve( n );
    for ( std::size_t i = 0; i < n; ++i )
        out.push_back( sample_levels( pins, i ) );
    return out;
}

std::size_t StateHash::operator()( const State& s ) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for ( auto w : s.words )
    {
        h ^= static_cast<std::size_t>( static_cast<std::uint32_t>( w ) );
        h *= 0x100000001b3ULL;
    }
    return h ^ s.words.size();
}

// Transducer

Transducer::Transducer( std::shared_ptr<const Machine> impl ) : _impl{ std::move( impl ) }
{
    if ( !_impl )
        throw Error( "null machine" );
}

State Transducer::step( const State& s, const Sample& a ) const
{
    if ( a.pins() == inputs() )
        return _impl->step( s, a.levels() );
    auto levels = a.levels_in( inputs() );
    return _impl->step( s, levels );
}

namespace
{

class FunctionMachine final : public Machine
{
public:
    FunctionMachine( PinSet in, PinSet out, State init, StepFunction step, OutputFunction output )
            : _in{ std::move( in ) }, _out{ std::move( out ) }, _init{ std::move( init ) },
              _step{ std::move( step ) }, _output{ std::move( output ) }
    {
    }

    const PinSet& inputs() const override { return _in; }
    const PinSet& outputs() const override { return _out; }
    State initial() const override { return _init; }
    State step( const State& s, std::span<const Level> input ) const override { return _step( s, input ); }
    std::vector<Level> output( const State& s ) const override
    {
        auto v = _output( s );
        if ( v.size() != _out.size() )
            throw PinMismatch( "output function returned " + std::to_string( v.size() ) + " levels for " +
                               _out.to_string() );
        return v;
    }

private:
    PinSet _in;
    PinSet _out;
    State _init;
    StepFunction _step;
    OutputFunction _output;
};

class ProjectionMachine final : public Machine
{
public:
    ProjectionMachine( Transducer inner, PinSet pins ) : _inner{ std::move( inner ) }, _pins{ std::move( pins ) }
    {
        for ( const auto& p : _pins )
            _index.push_back( _inner.outputs().index_of( p ) );
    }

    const PinSet& inputs() const override { return _inner.inputs(); }
    const PinSet& outputs() const override { return _pins; }
    State initial() const override { return _inner.initial_state(); }
    State step( const State& s, std::span<const Level> input ) const override { return _inner.step( s, input ); }
    std::vector<Level> output( const State& s ) const override
    {
        auto full = _inner.output_levels( s );
        std::vector<Level> out( _index.size() );
        for ( std::size_t i = 0; i < _index.size(); ++i )
            out[ i ] = full[ _index[ i ] ];
        return out;
    }

private:
    Transducer _inner;
    PinSet _pins;
    std::vector<std::size_t> _index;
};

class TableMachine final : public Machine
{
public:
    explicit TableMachine( const StateGraph& g )
            : _in{ g.inputs }, _out{ g.outputs }, _next{ g.next }, _output{ g.out }
    {
        if ( _next.empty() || _next.size() != _output.size() )
            throw Error( "state graph needs at least one state and one output row per state" );
        const std::size_t width = sample_count( _in );
        for ( const auto& row : _next )
        {
            if ( row.size() != width )
                throw Error( "state graph row width does not match the sample count" );
            for ( auto t : row )
                if ( t >= _next.size() )
                    throw Error( "state graph transition out of range" );
        }
    }

    const PinSet& inputs() const override { return _in; }
    const PinSet& outputs() const override { return _out; }
    State initial() const override { return State{ { 0 } }; }
    State step( const State& s, std::span<const Level> input ) const override
    {
        auto row = static_cast<std::size_t>( s.words.at( 0 ) );
        return State{ { static_cast<std::int32_t>( _next[ row ][ sample_index( _in, input ) ] ) } };
    }
    std::vector<Level> output( const State& s ) const override
    {
        return _output[ static_cast<std::size_t>( s.words.at( 0 ) ) ];
    }

private:
    PinSet _in;
    PinSet _out;
    std::vector<std::vector<std::uint32_t>> _next;
    std::vector<std::vector<Level>> _output;
};

} // namespace

Transducer make_transducer( PinSet inputs, PinSet outputs, State initial, StepFunction step, OutputFunction out )
{
    return Transducer( std::make_shared<FunctionMachine>( std::move( inputs ), std::move( outputs ),
                                                          std::move( initial ), std::move( step ),
                                                          std::move( out ) ) );
}

Transducer project_outputs( const Transducer& m, const PinSet& pins )
{
    return Transducer( std::make_shared<ProjectionMachine>( m, pins ) );
}

Transducer from_graph( const StateGraph& graph )
{
    return Transducer( std::make_shared<TableMachine>( graph ) );
}

// Evaluation

State follow( const Transducer& m, State from, const Trace& w )
{
    const Trace local = w.reordered( m.inputs() );
    for ( const auto& row : local.rows() )
        from = m.step( from, row );
    return from;
}

OutputVector eval( const Transducer& m, const Trace& w )
{
    return m.output( follow( m, m.initial_state(), w ) );
}

std::vector<OutputVector> run( const Transducer& m, const Trace& w )
{
    const Trace local = w.reordered( m.inputs() );
    std::vector<OutputVector> out;
    out.reserve( local.size() + 1 );
    State s = m.initial_state();
    out.push_back( m.output( s ) );
    for ( const auto& row : local.rows() )
    {
        s = m.step( s, row );
        out.push_back( m.output( s ) );
    }
    return out;
}

StateGraph tabulate( const Transducer& m, std::size_t max_states )
{
    if ( max_states == 0 )
        throw Error( "state budget must be positive" );
    StateGraph g;
    g.inputs = m.inputs();
    g.outputs = m.outputs();
    const auto samples = all_samples( m.inputs() );

    std::unordered_map<State, std::uint32_t, StateHash> ids;
    auto intern = [ & ]( State s ) -> std::uint32_t {
        auto [ it, inserted ] = ids.try_emplace( s, static_cast<std::uint32_t>( g.states.size() ) );
        if ( inserted )
        {
            if ( g.states.size() >= max_states )
                throw StateBudgetExceeded( "more than " + std::to_string( max_states ) + " reachable states" );
            g.states.push_back( std::move( s ) );
        }
        return it->second;
    };

    intern( m.initial_state() );
    for ( std::size_t i = 0; i < g.states.size(); ++i )
    {
        std::vector<std::uint32_t> row( samples.size() );
        for ( std::size_t a = 0; a < samples.size(); ++a )
            row[ a ] = intern( m.step( g.states[ i ], samples[ a ] ) );
        g.next.push_back( std::move( row ) );
        g.out.push_back( m.output_levels( g.states[ i ] ) );
    }
    return g;
}

std::vector<State> reachable_states( const Transducer& m, std::size_t max_states )
{
    return tabulate( m, max_states ).states;
}

// Equivalence

namespace
{

struct PairNode
{
    State a;
    State b;
    std::size_t parent;
    std::uint32_t sample;
    std::size_t depth;
};

State pair_key( const State& a, const State& b )
{
    State k;
    k.words.reserve( a.words.size() + b.words.size() + 1 );
    k.words.push_back( static_cast<std::int32_t>( a.words.size() ) );
    k.words.insert( k.words.end(), a.words.begin(), a.words.end() );
    k.words.insert( k.words.end(), b.words.begin(), b.words.end() );
    return k;
}

Trace path_to( const std::vector<PairNode>& nodes, std::size_t i, const PinSet& pins )
{
    std::vector<std::vector<Level>> rows;
    while ( nodes[ i ].depth > 0 )
    {
        rows.push_back( sample_levels( pins, nodes[ i ].sample ) );
        i = nodes[ i ].parent;
    }
    std::reverse( rows.begin(), rows.end() );
    return Trace( pins, std::move( rows ) );
}

} // namespace

Verdict equivalent( const Transducer& m1, const Transducer& m2, std::size_t depth, const EquivalenceOptions& options )
{
    if ( !m1.inputs().same_set( m2.inputs() ) )
        throw PinMismatch( "input pins differ: " + m1.inputs().to_string() + " vs " + m2.inputs().to_string() );
    if ( !m1.outputs().same_set( m2.outputs() ) )
        throw PinMismatch( "output pins differ: " + m1.outputs().to_string() + " vs " + m2.outputs().to_string() );

    const PinSet& pins = m1.inputs();
    const auto samples = all_samples( pins );
    std::vector<std::vector<Level>> samples2;
    samples2.reserve( samples.size() );
    for ( const auto& s : samples )
        samples2.push_back( Assignment( pins, s ).levels_in( m2.inputs() ) );

    auto agree = [ & ]( const State& a, const State& b ) { return m1.output( a ) == m2.output( b ); };

    Verdict v;
    std::vector<PairNode> nodes;
    std::unordered_set<State, StateHash> seen;
    bool truncated = false;

    nodes.push_back( { m1.initial_state(), m2.initial_state(), 0, 0, 0 } );
    seen.insert( pair_key( nodes[ 0 ].a, nodes[ 0 ].b ) );

    for ( std::size_t i = 0; i < nodes.size(); ++i )
    {
        ++v.traces_explored;
        if ( !agree( nodes[ i ].a, nodes[ i ].b ) )
        {
            v.status = Status::fail;
            v.counterexample = Counterexample{ path_to( nodes, i, pins ), {} };
            v.detail = "outputs differ after " + std::to_string( nodes[ i ].depth ) + " samples";
            return v;
        }
        if ( nodes[ i ].depth == depth )
        {
            truncated = true;
            continue;
        }
        for ( std::uint32_t a = 0; a < samples.size(); ++a )
        {
            State na = m1.step( nodes[ i ].a, samples[ a ] );
            State nb = m2.step( nodes[ i ].b, samples2[ a ] );
            if ( !seen.insert( pair_key( na, nb ) ).second )
                continue;
            if ( nodes.size() >= options.max_pairs )
            {
                v.status = Status::budget;
                v.detail = "state pair budget of " + std::to_string( options.max_pairs ) + " exhausted";
                return v;
            }
            nodes.push_back( { std::move( na ), std::move( nb ), i, a, nodes[ i ].depth + 1 } );
        }
    }
    v.status = Status::pass;
    v.bounded = truncated;
    v.detail = truncated ? "agree on all traces up to length " + std::to_string( depth )
                         : "agree on all traces (every reachable state pair explored)";
    return v;
}

std::optional<Trace> distinguish( const Transducer& m, const State& a, const State& b, std::size_t max_length )
{
    const PinSet& pins = m.inputs();
    const auto samples = all_samples( pins );
    std::vector<PairNode> nodes;
    std::unordered_set<State, StateHash> seen;
    nodes.push_back( { a, b, 0, 0, 0 } );
    seen.insert( pair_key( a, b ) );
    for ( std::size_t i = 0; i < nodes.size(); ++i )
    {
        if ( m.output_levels( nodes[ i ].a ) != m.output_levels( nodes[ i ].b ) )
            return path_to( nodes, i, pins );
        if ( nodes[ i ].depth == max_length )
            continue;
        for ( std::uint32_t s = 0; s < samples.size(); ++s )
        {
            State na = m.step( nodes[ i ].a, samples[ s ] );
            State nb = m.step( nodes[ i ].b, samples[ s ] );
            if ( seen.insert( pair_key( na, nb ) ).second )
                nodes.push_back( { std::move( na ), std::move( nb ), i, s, nodes[ i ].depth + 1 } );
        }
    }
    return std::nullopt;
}

} // namespace moore
