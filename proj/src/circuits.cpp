#include "moore/circuits.hpp"

#include "moore/gates.hpp"
#include "moore/observers.hpp"

namespace moore
{

namespace
{

const PinId out_pin{ gate_output_pin };

} // namespace

LatchSpec make_sr_latch( std::size_t t, std::pair<Level, Level> gate_initials )
{
    if ( t == 0 )
        throw Error( "latch delay must be at least 1" );
    const PinSet pins = numbered_pins( 2 );
    ProductSpec spec;
    spec.input_pins = PinSet{ "set", "reset" };
    spec.factors = { make_nand( { pins, t, gate_initials.first } ), make_nand( { pins, t, gate_initials.second } ) };
    spec.wiring = {
            { { 0, "1" }, External{ "reset" } },
            { { 0, "2" }, FactorPin{ 1, out_pin } },
            { { 1, "1" }, External{ "set" } },
            { { 1, "2" }, FactorPin{ 0, out_pin } },
    };
    spec.exposure = { { "q", { 0, out_pin } }, { "qbar", { 1, out_pin } } };
    validate( spec );
    return { t, gate_initials, std::move( spec ) };
}

Transducer latch_q( const LatchSpec& l )
{
    return project_outputs( compose( l.spec ), PinSet{ "q" } );
}

ProductSpec make_nand7( std::size_t t, std::array<Level, 3> initials )
{
    if ( t == 0 )
        throw Error( "gate delay must be at least 1" );
    const PinSet pins = numbered_pins( 3 );
    ProductSpec spec;
    spec.input_pins = numbered_pins( 7 );
    for ( auto init : initials )
        spec.factors.push_back( make_nand( { pins, t, init } ) );
    for ( std::size_t p = 1; p <= 3; ++p )
    {
        spec.wiring[ { 0, std::to_string( p ) } ] = External{ std::to_string( p ) };
        spec.wiring[ { 1, std::to_string( p ) } ] = External{ std::to_string( p + 3 ) };
    }
    spec.wiring[ { 2, "1" } ] = External{ "7" };
    spec.wiring[ { 2, "2" } ] = FactorPin{ 0, out_pin };
    spec.wiring[ { 2, "3" } ] = FactorPin{ 1, out_pin };
    spec.exposure = { { out_pin, { 2, out_pin } } };
    validate( spec );
    return spec;
}

PinSet ripple_inputs( std::size_t n )
{
    std::vector<PinId> names{ "carry_in" };
    for ( std::size_t i = 1; i <= n; ++i )
        names.push_back( "v1_" + std::to_string( i ) );
    for ( std::size_t i = 1; i <= n; ++i )
        names.push_back( "v2_" + std::to_string( i ) );
    return PinSet( std::move( names ) );
}

PinSet ripple_outputs( std::size_t n )
{
    std::vector<PinId> names;
    for ( std::size_t i = 1; i <= n; ++i )
        names.push_back( "r_" + std::to_string( i ) );
    names.push_back( "carry_out" );
    return PinSet( std::move( names ) );
}

RippleSpec make_ripple_adder( std::size_t n, std::size_t t, std::vector<std::pair<Level, Level>> initials )
{
    if ( n == 0 )
        throw Error( "ripple adder needs at least one bit" );
    if ( t == 0 )
        throw Error( "adder delay must be at least 1" );
    if ( initials.empty() )
        initials.assign( n, { Level::low, Level::low } );
    if ( initials.size() != n )
        throw Error( "ripple adder needs one initial (sum, carry) pair per bit" );

    ProductSpec spec;
    spec.input_pins = ripple_inputs( n );
    for ( std::size_t i = 0; i < n; ++i )
    {
        spec.factors.push_back( make_adder_bit( { t, initials[ i ].first, initials[ i ].second } ) );
        const auto bit = std::to_string( i + 1 );
        spec.wiring[ { i, "v1" } ] = External{ "v1_" + bit };
        spec.wiring[ { i, "v2" } ] = External{ "v2_" + bit };
        if ( i == 0 )
            spec.wiring[ { i, "carry_in" } ] = External{ "carry_in" };
        else
            spec.wiring[ { i, "carry_in" } ] = FactorPin{ i - 1, "carry_out" };
        spec.exposure.push_back( { "r_" + bit, { i, "sum" } } );
    }
    spec.exposure.push_back( { "carry_out", { n - 1, "carry_out" } } );
    validate( spec );
    return { n, t, std::move( spec ) };
}

bool adder_star_holds( std::size_t n, const Sample& last, const OutputVector& out )
{
    std::vector<Level> v1;
    std::vector<Level> v2;
    std::vector<Level> r;
    for ( std::size_t i = 1; i <= n; ++i )
    {
        const auto bit = std::to_string( i );
        v1.push_back( last[ "v1_" + bit ] );
        v2.push_back( last[ "v2_" + bit ] );
        r.push_back( out[ "r_" + bit ] );
    }
    const std::uint64_t lhs = static_cast<std::uint64_t>( to_int( last[ "carry_in" ] ) ) +
                              obs::unsigned_value( obs::BitVector( v1 ) ) +
                              obs::unsigned_value( obs::BitVector( v2 ) );
    const std::uint64_t rhs = obs::unsigned_value( obs::BitVector( r ) ) +
                              ( static_cast<std::uint64_t>( to_int( out[ "carry_out" ] ) ) << n );
    return lhs == rhs;
}

bool adder_star_property( const RippleSpec& v, const Trace& w )
{
    const Sample a = obs::last( w );
    return adder_star_holds( v.n_bits, a, eval( compose( v.spec ), w ) );
}

} // namespace moore
