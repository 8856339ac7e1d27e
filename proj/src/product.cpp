#include "moore/product.hpp"

#include <algorithm>
#include <unordered_set>

namespace moore
{

// WiringPlan

WiringPlan::WiringPlan( const PinSet& inputs, std::vector<FactorPins> factors, const ConnectionMap& wiring,
                        const OutputSelection& exposure )
        : _inputs{ inputs }, _factors{ std::move( factors ) }
{
    if ( _factors.empty() )
        throw SpecInvalid( "a product needs at least one factor" );

    for ( std::size_t i = 0; i < _factors.size(); ++i )
    {
        _output_offset.push_back( _flat_outputs );
        _flat_outputs += _factors[ i ].outputs.size();
    }

    auto resolve = [ & ]( const WireSource& src, const std::string& where ) -> std::size_t {
        if ( const auto* ext = std::get_if<External>( &src ) )
        {
            if ( auto idx = _inputs.find( ext->pin ) )
                return *idx;
            throw SpecInvalid( where + " is driven by unknown external pin '" + ext->pin + "'" );
        }
        const auto& fp = std::get<FactorPin>( src );
        if ( fp.factor >= _factors.size() )
            throw SpecInvalid( where + " is driven by nonexistent factor " + std::to_string( fp.factor ) );
        auto idx = _factors[ fp.factor ].outputs.find( fp.pin );
        if ( !idx )
            throw SpecInvalid( where + " is driven by unknown output pin '" + fp.pin + "' of factor " +
                               std::to_string( fp.factor ) );
        return _inputs.size() + _output_offset[ fp.factor ] + *idx;
    };

    for ( const auto& [ key, src ] : wiring )
    {
        if ( key.first >= _factors.size() )
            throw SpecInvalid( "wire targets nonexistent factor " + std::to_string( key.first ) );
        if ( !_factors[ key.first ].inputs.contains( key.second ) )
            throw SpecInvalid( "wire targets unknown input pin '" + key.second + "' of factor " +
                               std::to_string( key.first ) );
    }

    _source.resize( _factors.size() );
    for ( std::size_t i = 0; i < _factors.size(); ++i )
    {
        for ( const auto& pin : _factors[ i ].inputs )
        {
            const std::string where = "input pin '" + pin + "' of factor " + std::to_string( i );
            auto it = wiring.find( { i, pin } );
            if ( it == wiring.end() )
                throw SpecInvalid( where + " is not driven" );
            _source[ i ].push_back( resolve( it->second, where ) );
        }
    }

    std::vector<PinId> names;
    for ( const auto& e : exposure )
    {
        const std::string where = "output pin '" + e.pin + "'";
        if ( std::find( names.begin(), names.end(), e.pin ) != names.end() )
            throw SpecInvalid( where + " is exposed twice" );
        names.push_back( e.pin );
        _exposed.push_back( resolve( e.from, where ) - _inputs.size() );
    }
    if ( names.empty() )
        throw SpecInvalid( "a product must expose at least one output pin" );
    _outputs = PinSet( std::move( names ) );
}

void WiringPlan::assemble( std::size_t i, std::span<const Level> external, std::span<const Level> flat_outputs,
                           std::vector<Level>& dst ) const
{
    const auto& src = _source[ i ];
    dst.resize( src.size() );
    const std::size_t n_ext = _inputs.size();
    for ( std::size_t p = 0; p < src.size(); ++p )
        dst[ p ] = src[ p ] < n_ext ? external[ src[ p ] ] : flat_outputs[ src[ p ] - n_ext ];
}

std::vector<Level> WiringPlan::expose( std::span<const Level> flat_outputs ) const
{
    std::vector<Level> out( _exposed.size() );
    for ( std::size_t i = 0; i < _exposed.size(); ++i )
        out[ i ] = flat_outputs[ _exposed[ i ] ];
    return out;
}

std::vector<std::vector<std::size_t>> WiringPlan::dependencies() const
{
    std::vector<std::vector<std::size_t>> edges( _factors.size() );
    const std::size_t n_ext = _inputs.size();
    for ( std::size_t i = 0; i < _factors.size(); ++i )
        for ( auto s : _source[ i ] )
        {
            if ( s < n_ext )
                continue;
            const std::size_t flat = s - n_ext;
            std::size_t j = 0;
            while ( j + 1 < _factors.size() && _output_offset[ j + 1 ] <= flat )
                ++j;
            if ( std::find( edges[ j ].begin(), edges[ j ].end(), i ) == edges[ j ].end() )
                edges[ j ].push_back( i );
        }
    return edges;
}

WiringPlan plan( const ProductSpec& spec )
{
    std::vector<FactorPins> pins;
    pins.reserve( spec.factors.size() );
    for ( const auto& f : spec.factors )
        pins.push_back( { f.inputs(), f.outputs() } );
    return WiringPlan( spec.input_pins, std::move( pins ), spec.wiring, spec.exposure );
}

void validate( const ProductSpec& spec )
{
    (void)plan( spec );
}

// Composite states are the factor states laid end to end, each prefixed by
// its word count.

std::vector<State> split_state( const State& composite, std::size_t factors )
{
    std::vector<State> parts( factors );
    std::size_t pos = 0;
    const auto& w = composite.words;
    for ( std::size_t i = 0; i < factors; ++i )
    {
        if ( pos >= w.size() )
            throw Error( "malformed composite state" );
        const auto len = static_cast<std::size_t>( w[ pos++ ] );
        if ( pos + len > w.size() )
            throw Error( "malformed composite state" );
        parts[ i ].words.assign( w.begin() + static_cast<std::ptrdiff_t>( pos ),
                                 w.begin() + static_cast<std::ptrdiff_t>( pos + len ) );
        pos += len;
    }
    return parts;
}

State join_states( const std::vector<State>& parts )
{
    State s;
    for ( const auto& p : parts )
    {
        s.words.push_back( static_cast<std::int32_t>( p.words.size() ) );
        s.words.insert( s.words.end(), p.words.begin(), p.words.end() );
    }
    return s;
}

namespace
{

class ProductMachine final : public Machine
{
public:
    explicit ProductMachine( const ProductSpec& spec ) : _plan{ plan( spec ) }, _factors{ spec.factors }
    {
        std::vector<State> init;
        for ( const auto& f : _factors )
            init.push_back( f.initial_state() );
        _init = join_states( init );
    }

    const PinSet& inputs() const override { return _plan.inputs(); }
    const PinSet& outputs() const override { return _plan.outputs(); }
    State initial() const override { return _init; }

    State step( const State& s, std::span<const Level> input ) const override
    {
        auto parts = split_state( s, _factors.size() );
        const auto flat = flat_outputs( parts );
        std::vector<Level> local;
        for ( std::size_t i = 0; i < _factors.size(); ++i )
        {
            _plan.assemble( i, input, flat, local );
            parts[ i ] = _factors[ i ].step( parts[ i ], local );
        }
        return join_states( parts );
    }

    std::vector<Level> output( const State& s ) const override
    {
        return _plan.expose( flat_outputs( split_state( s, _factors.size() ) ) );
    }

private:
    std::vector<Level> flat_outputs( const std::vector<State>& parts ) const
    {
        std::vector<Level> flat;
        flat.reserve( _plan.flat_output_size() );
        for ( std::size_t i = 0; i < _factors.size(); ++i )
        {
            auto o = _factors[ i ].output_levels( parts[ i ] );
            flat.insert( flat.end(), o.begin(), o.end() );
        }
        return flat;
    }

    WiringPlan _plan;
    std::vector<Transducer> _factors;
    State _init;
};

// The induced-input route reads the connection map directly instead of going
// through WiringPlan, so the two sides of theorem1_check share no wiring code.
std::vector<Level> induced_sample( const ProductSpec& spec, std::size_t i, const Assignment& a,
                                   const std::vector<OutputVector>& factor_outputs )
{
    const auto& f = spec.factors[ i ];
    std::vector<Level> c;
    c.reserve( f.inputs().size() );
    for ( const auto& pin : f.inputs() )
    {
        const auto& src = spec.wiring.at( { i, pin } );
        if ( const auto* ext = std::get_if<External>( &src ) )
            c.push_back( a[ ext->pin ] );
        else
        {
            const auto& fp = std::get<FactorPin>( src );
            c.push_back( factor_outputs.at( fp.factor )[ fp.pin ] );
        }
    }
    return c;
}

OutputVector select( const ProductSpec& spec, const PinSet& out_pins, const std::vector<OutputVector>& factor_outputs )
{
    std::vector<Level> levels;
    for ( const auto& e : spec.exposure )
        levels.push_back( factor_outputs.at( e.from.factor )[ e.from.pin ] );
    return { out_pins, std::move( levels ) };
}

} // namespace

Transducer compose( const ProductSpec& spec )
{
    return Transducer( std::make_shared<ProductMachine>( spec ) );
}

std::vector<Trace> induced_inputs( const ProductSpec& spec, const Trace& w )
{
    validate( spec );
    if ( !w.pins().same_set( spec.input_pins ) )
        throw PinMismatch( "trace pins " + w.pins().to_string() + " differ from product inputs " +
                           spec.input_pins.to_string() );
    std::vector<Trace> u;
    for ( const auto& f : spec.factors )
        u.emplace_back( f.inputs() );

    for ( std::size_t k = 0; k < w.size(); ++k )
    {
        std::vector<OutputVector> outs;
        for ( std::size_t i = 0; i < spec.factors.size(); ++i )
            outs.push_back( eval( spec.factors[ i ], u[ i ] ) );
        const Sample a = w[ k ];
        std::vector<std::vector<Level>> c;
        for ( std::size_t i = 0; i < spec.factors.size(); ++i )
            c.push_back( induced_sample( spec, i, a, outs ) );
        for ( std::size_t i = 0; i < spec.factors.size(); ++i )
            u[ i ].push_back( std::move( c[ i ] ) );
    }
    return u;
}

bool is_feedback_free( const ProductSpec& spec )
{
    const auto edges = plan( spec ).dependencies();
    const std::size_t n = edges.size();
    // Kahn's algorithm; a self-loop counts as feedback.
    std::vector<std::size_t> indegree( n, 0 );
    for ( const auto& out : edges )
        for ( auto j : out )
            ++indegree[ j ];
    std::vector<std::size_t> ready;
    for ( std::size_t i = 0; i < n; ++i )
        if ( indegree[ i ] == 0 )
            ready.push_back( i );
    std::size_t removed = 0;
    while ( !ready.empty() )
    {
        const auto i = ready.back();
        ready.pop_back();
        ++removed;
        for ( auto j : edges[ i ] )
            if ( --indegree[ j ] == 0 )
                ready.push_back( j );
    }
    return removed == n;
}

Verdict theorem1_check( const ProductSpec& spec, const Theorem1Options& options )
{
    const auto composite = compose( spec );
    const PinSet& in = composite.inputs();
    const PinSet& out_pins = composite.outputs();
    const std::size_t n = spec.factors.size();
    const auto samples = all_samples( in );

    Verdict v;

    // Exhaustive part. A node carries the composite state and the factor
    // states advanced by the induced-input recursion; a pair seen before at
    // an equal or smaller depth has nothing new below it.
    struct Node
    {
        State composite;
        std::vector<State> factors;
        std::size_t parent;
        std::uint32_t sample;
        std::size_t depth;
    };
    auto factor_outputs = [ & ]( const std::vector<State>& fs ) {
        std::vector<OutputVector> outs;
        for ( std::size_t i = 0; i < n; ++i )
            outs.push_back( spec.factors[ i ].output( fs[ i ] ) );
        return outs;
    };
    auto path = [ & ]( const std::vector<Node>& nodes, std::size_t i ) {
        std::vector<std::vector<Level>> rows;
        for ( ; nodes[ i ].depth > 0; i = nodes[ i ].parent )
            rows.push_back( samples[ nodes[ i ].sample ] );
        std::reverse( rows.begin(), rows.end() );
        return Trace( in, std::move( rows ) );
    };

    std::vector<Node> nodes;
    std::unordered_set<State, StateHash> seen;
    {
        std::vector<State> fs;
        for ( const auto& f : spec.factors )
            fs.push_back( f.initial_state() );
        nodes.push_back( { composite.initial_state(), fs, 0, 0, 0 } );
        std::vector<State> key_parts{ nodes[ 0 ].composite };
        key_parts.insert( key_parts.end(), fs.begin(), fs.end() );
        seen.insert( join_states( key_parts ) );
    }
    bool complete = true;
    for ( std::size_t i = 0; i < nodes.size(); ++i )
    {
        ++v.traces_explored;
        const auto outs = factor_outputs( nodes[ i ].factors );
        if ( !( composite.output( nodes[ i ].composite ) == select( spec, out_pins, outs ) ) )
        {
            v.status = Status::fail;
            v.counterexample = Counterexample{ path( nodes, i ), {} };
            v.detail = "composite output differs from the selected factor outputs";
            return v;
        }
        if ( nodes[ i ].depth == options.depth )
        {
            complete = false;
            continue;
        }
        for ( std::uint32_t s = 0; s < samples.size(); ++s )
        {
            const Assignment a( in, samples[ s ] );
            std::vector<State> next( n );
            for ( std::size_t f = 0; f < n; ++f )
                next[ f ] = spec.factors[ f ].step( nodes[ i ].factors[ f ], induced_sample( spec, f, a, outs ) );
            State c = composite.step( nodes[ i ].composite, samples[ s ] );
            std::vector<State> key_parts{ c };
            key_parts.insert( key_parts.end(), next.begin(), next.end() );
            if ( !seen.insert( join_states( key_parts ) ).second )
                continue;
            if ( nodes.size() >= options.max_nodes )
            {
                v.status = Status::budget;
                v.detail = "node budget exhausted during exhaustive search";
                return v;
            }
            nodes.push_back( { std::move( c ), std::move( next ), i, s, nodes[ i ].depth + 1 } );
        }
    }

    // Random part: literal induced inputs, every prefix compared.
    std::mt19937_64 rng( options.seed );
    for ( std::size_t trial = 0; trial < options.random_trials; ++trial )
    {
        Trace w( in );
        for ( std::size_t k = 0; k < options.random_length; ++k )
            w.push_back( samples[ rng() % samples.size() ] );
        const auto u = induced_inputs( spec, w );
        const auto expected = run( composite, w );
        for ( std::size_t k = 0; k <= w.size(); ++k )
        {
            std::vector<OutputVector> outs;
            for ( std::size_t f = 0; f < n; ++f )
                outs.push_back( eval( spec.factors[ f ], u[ f ].prefix( k ) ) );
            ++v.traces_explored;
            if ( !( expected[ k ] == select( spec, out_pins, outs ) ) )
            {
                v.status = Status::fail;
                v.counterexample = Counterexample{ w.prefix( k ), {} };
                v.detail = "random trial " + std::to_string( trial ) + " disagrees";
                return v;
            }
        }
    }

    v.status = Status::pass;
    v.bounded = !complete;
    v.detail = "composite agrees with factor evaluation on induced inputs";
    return v;
}

} // namespace moore
