#include <gtest/gtest.h>

#include "moore/gates.hpp"
#include "moore/observers.hpp"
#include "support.hpp"

using namespace moore;
using moore::test::L;

namespace
{

const PinSet one{ "p" };
const PinSet latch_pins{ "set", "reset" };

Trace pin_trace( std::initializer_list<int> levels )
{
    Trace w( one );
    for ( int x : levels )
        w.push_back( { L( x ) } );
    return w;
}

std::vector<OutputVector> outputs( std::initializer_list<int> levels )
{
    std::vector<OutputVector> v;
    for ( int x : levels )
        v.emplace_back( one, std::vector<Level>{ L( x ) } );
    return v;
}

} // namespace

TEST( Observers, Time )
{
    EXPECT_EQ( obs::time( Trace( one ) ), 0u );
    EXPECT_EQ( obs::time( pin_trace( { 0, 1, 0, 1, 1 } ) ), 5u );
    EXPECT_EQ( obs::time( pin_trace( { 0, 1 } ) + pin_trace( { 1 } ) ), 3u );
}

TEST( Observers, HighAndHold )
{
    EXPECT_EQ( obs::high( Trace( one ), "p" ), 0u );
    EXPECT_EQ( obs::high( pin_trace( { 1, 1, 0 } ), "p" ), 0u );
    EXPECT_EQ( obs::high( pin_trace( { 0, 1, 1 } ), "p" ), 2u );
    EXPECT_EQ( obs::hold( Trace( one ), { "p", Level::low } ), 0u );
    EXPECT_EQ( obs::hold( pin_trace( { 1, 1, 0 } ), { "p", Level::low } ), 1u );
    EXPECT_THROW( (void)obs::hold( pin_trace( { 1 } ), { "q", Level::low } ), UnknownPin );
}

TEST( Observers, StableOutput )
{
    EXPECT_EQ( obs::stable_output( outputs( { 1 } ) ), 0u );
    EXPECT_EQ( obs::stable_output( outputs( { 1, 1, 1 } ) ), 2u );
    EXPECT_EQ( obs::stable_output( outputs( { 1, 0, 0 } ) ), 1u );
}

TEST( Observers, LastAndStable )
{
    EXPECT_THROW( (void)obs::last( Trace( one ) ), EmptyTrace );
    EXPECT_EQ( obs::last( pin_trace( { 0, 1 } ) )[ "p" ], Level::high );
    EXPECT_EQ( obs::stable( Trace( one ) ), 0u );
    EXPECT_EQ( obs::stable( pin_trace( { 1, 1, 1 } ) ), 2u );
    EXPECT_EQ( obs::stable( pin_trace( { 0, 1 } ) ), 0u );
}

TEST( Observers, Latched )
{
    for ( std::size_t t : { 1, 3, 5 } )
    {
        EXPECT_EQ( obs::latched( Trace( latch_pins ), Level::high, t ), Level::low );
        Trace w = test::repeat( latch_pins, { L( 1 ), L( 0 ) }, t );
        EXPECT_EQ( obs::latched( w, Level::high, t ), Level::high );
        EXPECT_EQ( obs::latched( w.prefix( t - 1 ), Level::high, t ), Level::low );
        EXPECT_EQ( obs::latched( w, Level::low, t ), Level::low );
        w.push_back( { L( 1 ), L( 1 ) } );
        EXPECT_EQ( obs::latched( w, Level::high, t ), Level::high );
        w.push_back( { L( 0 ), L( 1 ) } );
        EXPECT_EQ( obs::latched( w, Level::high, t ), Level::low );
    }
    EXPECT_THROW( (void)obs::latched( Trace( latch_pins ), Level::high, 0 ), Error );
    EXPECT_THROW( (void)obs::latched( Trace( one ), Level::high, 1 ), UnknownPin );
}

TEST( Observers, UnsignedValue )
{
    EXPECT_EQ( obs::unsigned_value( obs::BitVector( { L( 0 ), L( 0 ), L( 0 ) } ) ), 0u );
    EXPECT_EQ( obs::unsigned_value( obs::BitVector( { L( 1 ), L( 0 ), L( 1 ) } ) ), 5u );
    EXPECT_EQ( obs::unsigned_value( obs::BitVector( { L( 1 ), L( 1 ) } ) ), 3u );
    // index 1 is the low-order bit
    EXPECT_EQ( obs::unsigned_value( obs::BitVector( { L( 0 ), L( 1 ) } ) ), 2u );
    EXPECT_THROW( obs::BitVector( {} ), Error );
}

TEST( Observers, CounterRecursionsAndIncrementalFormsAgree )
{
    std::mt19937_64 rng( 7 );
    for ( int trial = 0; trial < 200; ++trial )
    {
        const Trace w = test::random_trace( latch_pins, 1 + rng() % 14, rng );
        obs::PinRuns runs( 2 );
        obs::StableCounter stable;
        obs::LatchedTracker l1( Level::high, 2, 0, 1 );
        obs::LatchedTracker l0( Level::low, 2, 0, 1 );
        for ( std::size_t n = 1; n <= w.size(); ++n )
        {
            const Trace prev = w.prefix( n - 1 );
            const Trace cur = w.prefix( n );
            runs.push( w.row( n - 1 ) );
            stable.push( w.row( n - 1 ) );
            l1.push( w.row( n - 1 ), runs );
            l0.push( w.row( n - 1 ), runs );
            for ( const auto& p : latch_pins )
            {
                const std::size_t i = latch_pins.index_of( p );
                for ( Level b : { Level::low, Level::high } )
                {
                    const auto h = obs::hold( cur, { p, b } );
                    EXPECT_EQ( runs.hold( i, b ), h );
                    const auto before = obs::hold( prev, { p, b } );
                    EXPECT_TRUE( h == 0 || h == before + 1 );
                }
                EXPECT_EQ( obs::high( cur, p ), obs::hold( cur, { p, Level::high } ) );
                EXPECT_GE( obs::hold( cur, { p, obs::last( cur )[ p ] } ), obs::stable( cur ) );
                EXPECT_FALSE( obs::hold( cur, { p, Level::low } ) > 0 && obs::hold( cur, { p, Level::high } ) > 0 );
            }
            const auto s = obs::stable( cur );
            EXPECT_EQ( stable.value(), s );
            EXPECT_TRUE( s == 0 || s == obs::stable( prev ) + 1 );
            EXPECT_EQ( l1.value(), obs::latched( cur, Level::high, 2 ) );
            EXPECT_EQ( l0.value(), obs::latched( cur, Level::low, 2 ) );
        }
    }
}

TEST( Observers, LatchedTriggerIsMonotoneUnderRepetition )
{
    std::mt19937_64 rng( 3 );
    for ( int trial = 0; trial < 200; ++trial )
    {
        Trace w = test::random_trace( latch_pins, 1 + rng() % 10, rng );
        for ( Level b : { Level::low, Level::high } )
        {
            if ( obs::latched( w, b, 2 ) != Level::high )
                continue;
            Trace z = w;
            z.push_back( obs::last( w ) );
            EXPECT_EQ( obs::latched( z, b, 2 ), Level::high ) << w.to_string();
        }
    }
}

TEST( Observers, OutputStabilityMatchesPureForm )
{
    std::mt19937_64 rng( 11 );
    const auto m = make_nand( { numbered_pins( 2 ), 2 } );
    for ( int trial = 0; trial < 100; ++trial )
    {
        const auto outs = run( m, test::random_trace( m.inputs(), rng() % 12, rng ) );
        obs::OutputStability inc( std::vector<Level>( outs[ 0 ].levels().begin(), outs[ 0 ].levels().end() ) );
        EXPECT_EQ( inc.whole(), 0u );
        for ( std::size_t i = 1; i < outs.size(); ++i )
        {
            inc.push( outs[ i ].levels() );
            const std::span<const OutputVector> prefix( outs.data(), i + 1 );
            EXPECT_EQ( inc.whole(), obs::stable_output( prefix ) );
            EXPECT_EQ( inc.pin( 0 ), obs::stable_output( prefix, "out" ) );
        }
    }
}
