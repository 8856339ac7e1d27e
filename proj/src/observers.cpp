#include "moore/observers.hpp"

#include <algorithm>

namespace moore::obs
{

BitVector::BitVector( std::vector<Level> bits ) : _bits{ std::move( bits ) }
{
    if ( _bits.empty() )
        throw Error( "bit vector must have at least one bit" );
    if ( _bits.size() > 63 )
        throw Error( "bit vector wider than 63 bits" );
}

std::size_t time( const Trace& w )
{
    return w.size();
}

std::size_t high( const Trace& w, std::string_view pin )
{
    return hold( w, { std::string( pin ), Level::high } );
}

std::size_t hold( const Trace& w, const HoldQuery& q )
{
    const std::size_t p = w.pins().index_of( q.pin );
    std::size_t h = 0;
    for ( const auto& row : w.rows() )
        h = row[ p ] == q.level ? h + 1 : 0;
    return h;
}

std::size_t stable_output( std::span<const OutputVector> outputs )
{
    std::size_t n = 0;
    for ( std::size_t i = 1; i < outputs.size(); ++i )
        n = outputs[ i ] == outputs[ i - 1 ] ? n + 1 : 0;
    return n;
}

std::size_t stable_output( std::span<const OutputVector> outputs, std::string_view pin )
{
    std::size_t n = 0;
    for ( std::size_t i = 1; i < outputs.size(); ++i )
        n = outputs[ i ][ pin ] == outputs[ i - 1 ][ pin ] ? n + 1 : 0;
    return n;
}

Sample last( const Trace& w )
{
    if ( w.empty() )
        throw EmptyTrace( "Last is undefined on the empty trace" );
    return w[ w.size() - 1 ];
}

std::size_t stable( const Trace& w )
{
    std::size_t n = 0;
    for ( std::size_t i = 1; i < w.size(); ++i )
        n = std::equal( w.row( i ).begin(), w.row( i ).end(), w.row( i - 1 ).begin() ) ? n + 1 : 0;
    return n;
}

Level latched( const Trace& w, Level b, std::size_t t_latch )
{
    if ( t_latch == 0 )
        throw Error( "t_latch must be at least 1" );
    const std::size_t set = w.pins().index_of( "set" );
    const std::size_t reset = w.pins().index_of( "reset" );

    // Direct transcription of the three-branch recursion, evaluated on every
    // prefix with the hold counters recomputed from scratch.
    Level value = Level::low;
    for ( std::size_t n = 1; n <= w.size(); ++n )
    {
        const Trace prefix = w.prefix( n );
        const auto a = w.row( n - 1 );
        const bool set_branch = b == Level::high && hold( prefix, { "reset", Level::low } ) >= t_latch &&
                                hold( prefix, { "set", Level::high } ) >= t_latch;
        const bool reset_branch = b == Level::low && hold( prefix, { "reset", Level::high } ) >= t_latch &&
                                  hold( prefix, { "set", Level::low } ) >= t_latch;
        const bool hold_branch = a[ set ] == Level::high && a[ reset ] == Level::high && value == Level::high;
        value = to_level( set_branch || reset_branch || hold_branch );
    }
    return value;
}

std::uint64_t unsigned_value( const BitVector& v )
{
    std::uint64_t sum = 0;
    for ( std::size_t i = 0; i < v.size(); ++i )
        sum += static_cast<std::uint64_t>( to_int( v.bits()[ i ] ) ) << i;
    return sum;
}

// Incremental forms

void PinRuns::push( std::span<const Level> sample )
{
    for ( std::size_t p = 0; p < _run.size(); ++p )
    {
        if ( _run[ p ] > 0 && _level[ p ] == sample[ p ] )
            ++_run[ p ];
        else
        {
            _level[ p ] = sample[ p ];
            _run[ p ] = 1;
        }
    }
}

void StableCounter::push( std::span<const Level> sample )
{
    if ( _last && std::equal( sample.begin(), sample.end(), _last->begin(), _last->end() ) )
        ++_count;
    else
    {
        _count = 0;
        _last.emplace( sample.begin(), sample.end() );
    }
}

OutputStability::OutputStability( std::vector<Level> initial )
        : _last{ std::move( initial ) }, _per_pin( _last.size(), 0 )
{
}

void OutputStability::push( std::span<const Level> output )
{
    bool all = true;
    for ( std::size_t i = 0; i < _last.size(); ++i )
    {
        if ( output[ i ] == _last[ i ] )
            ++_per_pin[ i ];
        else
        {
            _per_pin[ i ] = 0;
            all = false;
            _last[ i ] = output[ i ];
        }
    }
    _whole = all ? _whole + 1 : 0;
}

LatchedTracker::LatchedTracker( Level b, std::size_t t_latch, std::size_t set_pin, std::size_t reset_pin )
        : _b{ b }, _t{ t_latch }, _set{ set_pin }, _reset{ reset_pin }
{
    if ( t_latch == 0 )
        throw Error( "t_latch must be at least 1" );
}

void LatchedTracker::push( std::span<const Level> sample, const PinRuns& runs )
{
    const bool set_branch =
            _b == Level::high && runs.hold( _reset, Level::low ) >= _t && runs.hold( _set, Level::high ) >= _t;
    const bool reset_branch =
            _b == Level::low && runs.hold( _reset, Level::high ) >= _t && runs.hold( _set, Level::low ) >= _t;
    const bool hold_branch =
            sample[ _set ] == Level::high && sample[ _reset ] == Level::high && _value == Level::high;
    _value = to_level( set_branch || reset_branch || hold_branch );
}

} // namespace moore::obs
