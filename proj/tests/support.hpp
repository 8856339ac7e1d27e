#pragma once

#include <functional>
#include <random>

#include "moore/core.hpp"

namespace moore::test
{

inline Trace random_trace( const PinSet& pins, std::size_t len, std::mt19937_64& rng )
{
    Trace w( pins );
    const auto n = sample_count( pins );
    for ( std::size_t i = 0; i < len; ++i )
        w.push_back( sample_levels( pins, rng() % n ) );
    return w;
}

/// Calls f on every trace of length <= depth, Λ included.
inline void for_all_traces( const PinSet& pins, std::size_t depth, const std::function<void( const Trace& )>& f )
{
    const auto samples = all_samples( pins );
    Trace w( pins );
    std::function<void()> rec = [ & ] {
        f( w );
        if ( w.size() == depth )
            return;
        for ( const auto& s : samples )
        {
            w.push_back( s );
            rec();
            w.pop_back();
        }
    };
    rec();
}

/// Trace holding one sample `count` times.
inline Trace repeat( const PinSet& pins, std::vector<Level> row, std::size_t count )
{
    Trace w( pins );
    for ( std::size_t i = 0; i < count; ++i )
        w.push_back( row );
    return w;
}

inline Level L( int x )
{
    return to_level( x );
}

} // namespace moore::test
