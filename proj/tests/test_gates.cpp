#include <gtest/gtest.h>

#include "moore/gates.hpp"
#include "moore/observers.hpp"
#include "support.hpp"

using namespace moore;
using moore::test::L;

namespace
{

Level out( const Transducer& m, const Trace& w )
{
    return eval( m, w )[ "out" ];
}

// Uncapped reference: recompute every hold counter from the trace.
Level reference_gate( const Trace& w, std::size_t t, Level init, bool is_or )
{
    Level y = init;
    for ( std::size_t n = 1; n <= w.size(); ++n )
    {
        const Trace prefix = w.prefix( n );
        bool any_low = false;
        bool all_low = true;
        bool any_high = false;
        bool all_high = true;
        for ( const auto& p : w.pins() )
        {
            const bool low = obs::hold( prefix, { p, Level::low } ) >= t;
            const bool high = obs::hold( prefix, { p, Level::high } ) >= t;
            any_low |= low;
            all_low &= low;
            any_high |= high;
            all_high &= high;
        }
        if ( is_or )
            y = any_high ? Level::high : all_low ? Level::low : y;
        else
            y = any_low ? Level::high : all_high ? Level::low : y;
    }
    return y;
}

} // namespace

TEST( Nand, Constraints )
{
    const PinSet two = numbered_pins( 2 );
    const auto m = make_nand( { two, 2 } );
    EXPECT_EQ( out( m, test::repeat( two, { L( 1 ), L( 1 ) }, 2 ) ), Level::low );
    for ( int other : { 0, 1 } )
        EXPECT_EQ( out( make_nand( { two, 2, Level::low } ), test::repeat( two, { L( 0 ), L( other ) }, 2 ) ),
                   Level::high );
    EXPECT_EQ( out( m, test::repeat( two, { L( 1 ), L( 1 ) }, 1 ) ), Level::high );
}

TEST( Nand, Validation )
{
    EXPECT_THROW( (void)make_nand( { numbered_pins( 2 ), 0 } ), Error );
    EXPECT_THROW( (void)make_nand( { PinSet(), 1 } ), Error );
}

TEST( Or, ConstraintsAndSymmetricCompletion )
{
    const PinSet two = numbered_pins( 2 );
    const auto m1 = make_or( { two, 1, Level::low } );
    EXPECT_EQ( out( m1, test::repeat( two, { L( 0 ), L( 1 ) }, 1 ) ), Level::high );
    const auto m2 = make_or( { two, 2, Level::high } );
    EXPECT_EQ( out( m2, test::repeat( two, { L( 0 ), L( 0 ) }, 2 ) ), Level::low );
    EXPECT_EQ( out( m2, Trace( two ) ), Level::high );
}

TEST( Gates, MatchUncappedReferenceToDepth8 )
{
    for ( std::size_t t : { 1, 2, 3 } )
        for ( Level init : { Level::low, Level::high } )
        {
            const PinSet two = numbered_pins( 2 );
            const auto n = make_nand( { two, t, init } );
            const auto o = make_or( { two, t, init } );
            test::for_all_traces( two, t == 3 ? 8 : 7, [ & ]( const Trace& w ) {
                ASSERT_EQ( out( n, w ), reference_gate( w, t, init, false ) ) << w.to_string();
                ASSERT_EQ( out( o, w ), reference_gate( w, t, init, true ) ) << w.to_string();
            } );
        }
    const PinSet three = numbered_pins( 3 );
    const auto n3 = make_nand( { three, 2 } );
    test::for_all_traces( three, 5, [ & ]( const Trace& w ) {
        ASSERT_EQ( out( n3, w ), reference_gate( w, 2, Level::high, false ) );
    } );
}

TEST( Nand, AllowedOutputs )
{
    EXPECT_EQ( nand_allowed( std::vector<PinRun>{ { Level::low, 0 }, { Level::low, 0 } }, 2 ), AllowedOutputs::any() );
    EXPECT_EQ( nand_allowed( std::vector<PinRun>{ { Level::low, 2 }, { Level::high, 1 } }, 2 ),
               AllowedOutputs::only( Level::high ) );
    EXPECT_EQ( nand_allowed( std::vector<PinRun>{ { Level::high, 2 }, { Level::high, 2 } }, 2 ),
               AllowedOutputs::only( Level::low ) );
    EXPECT_EQ( nand_allowed( std::vector<PinRun>{ { Level::high, 2 }, { Level::high, 1 } }, 2 ), AllowedOutputs::any() );
    const auto m = make_nand( { numbered_pins( 2 ), 2 } );
    EXPECT_EQ( nand_allowed( m.initial_state(), 2 ), AllowedOutputs::any() );
}

TEST( Nand, OutputChangesOnlyWhenAConstraintFires )
{
    for ( std::size_t t : { 1, 2, 3 } )
    {
        const PinSet two = numbered_pins( 2 );
        const auto m = make_nand( { two, t } );
        test::for_all_traces( two, 6, [ & ]( const Trace& w ) {
            const State s = follow( m, m.initial_state(), w );
            const auto runs = gate_runs( s );
            // mutual exclusion of the two antecedents
            const bool some_low = std::any_of( runs.begin(), runs.end(), [ & ]( const PinRun& r ) {
                return r.level == Level::low && r.run >= t;
            } );
            const bool all_high = std::all_of( runs.begin(), runs.end(), [ & ]( const PinRun& r ) {
                return r.level == Level::high && r.run >= t;
            } );
            ASSERT_FALSE( some_low && all_high );
            for ( const auto& a : all_samples( two ) )
            {
                const State next = m.step( s, a );
                const auto allowed = nand_allowed( next, t );
                const Level before = m.output_levels( s )[ 0 ];
                const Level after = m.output_levels( next )[ 0 ];
                ASSERT_TRUE( allowed.contains( after ) );
                if ( after != before )
                {
                    ASSERT_TRUE( allowed.singleton() && allowed.forced() == after );
                }
            }
        } );
    }
}

TEST( AdderBit, Examples )
{
    const PinSet& in = adder_inputs();
    auto sample = [ & ]( int v1, int v2, int c ) {
        return Sample( PinSet{ "v1", "v2", "carry_in" }, { L( v1 ), L( v2 ), L( c ) } ).levels_in( in );
    };
    const auto a1 = make_adder_bit( { 1 } );
    auto o = eval( a1, test::repeat( in, sample( 1, 1, 0 ), 1 ) );
    EXPECT_EQ( o[ "sum" ], Level::low );
    EXPECT_EQ( o[ "carry_out" ], Level::high );
    o = eval( a1, test::repeat( in, sample( 0, 0, 0 ), 1 ) );
    EXPECT_EQ( o[ "sum" ], Level::low );
    EXPECT_EQ( o[ "carry_out" ], Level::low );
    const auto a2 = make_adder_bit( { 2 } );
    o = eval( a2, test::repeat( in, sample( 1, 1, 1 ), 2 ) );
    EXPECT_EQ( o[ "sum" ], Level::high );
    EXPECT_EQ( o[ "carry_out" ], Level::high );
    // one step is not enough at t=2
    o = eval( a2, test::repeat( in, sample( 1, 1, 1 ), 1 ) );
    EXPECT_EQ( o[ "sum" ], Level::low );
}

TEST( AdderBit, OutputsFollowFormulasOnceStable )
{
    for ( std::size_t t : { 1, 2 } )
    {
        const auto m = make_adder_bit( { t, Level::high, Level::low } );
        test::for_all_traces( adder_inputs(), 4, [ & ]( const Trace& w ) {
            if ( w.empty() || obs::stable( w ) < t )
                return;
            const Sample a = obs::last( w );
            const int total = to_int( a[ "v1" ] ) + to_int( a[ "v2" ] ) + to_int( a[ "carry_in" ] );
            const auto o = eval( m, w );
            ASSERT_EQ( to_int( o[ "sum" ] ), total % 2 );
            ASSERT_EQ( to_int( o[ "carry_out" ] ), total / 2 );
        } );
    }
}

TEST( GateConstraints, Verdicts )
{
    const PinSet two = numbered_pins( 2 );
    EXPECT_TRUE( check_gate_constraints( make_nand( { two, 1 } ), 1, 6 ).passed() );
    EXPECT_TRUE( check_gate_constraints( make_nand( { two, 2 } ), 2, 6 ).passed() );

    const auto or_v = check_gate_constraints( make_or( { two, 1 } ), 1, 2 );
    ASSERT_EQ( or_v.status, Status::fail );
    ASSERT_TRUE( or_v.counterexample );

    // A t=2 gate is too slow for t=1 constraints; regression value from the checker.
    const auto slow = check_gate_constraints( make_nand( { two, 2 } ), 1, 4 );
    ASSERT_EQ( slow.status, Status::fail );
    EXPECT_EQ( slow.counterexample->trace.size(), 1u );
    EXPECT_EQ( slow.counterexample->trace[ 0 ], Sample( two, { L( 1 ), L( 1 ) } ) );
}
