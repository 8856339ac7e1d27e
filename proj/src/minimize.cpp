#include "moore/core.hpp"

#include <map>
#include <vector>

namespace moore
{

namespace
{

// Moore-style partition refinement: start from the partition by output and
// split blocks by the blocks of their successors until nothing changes.
std::vector<std::uint32_t> refine( const StateGraph& g )
{
    const std::size_t n = g.states.size();
    std::vector<std::uint32_t> block( n );
    std::size_t count = 0;
    {
        std::map<std::vector<Level>, std::uint32_t> by_output;
        for ( std::size_t s = 0; s < n; ++s )
        {
            auto [ it, inserted ] = by_output.try_emplace( g.out[ s ], static_cast<std::uint32_t>( by_output.size() ) );
            block[ s ] = it->second;
        }
        count = by_output.size();
    }

    for ( ;; )
    {
        std::map<std::vector<std::uint32_t>, std::uint32_t> by_signature;
        std::vector<std::uint32_t> next_block( n );
        for ( std::size_t s = 0; s < n; ++s )
        {
            std::vector<std::uint32_t> sig;
            sig.reserve( g.next[ s ].size() + 1 );
            sig.push_back( block[ s ] );
            for ( auto t : g.next[ s ] )
                sig.push_back( block[ t ] );
            auto [ it, inserted ] =
                    by_signature.try_emplace( std::move( sig ), static_cast<std::uint32_t>( by_signature.size() ) );
            next_block[ s ] = it->second;
        }
        block = std::move( next_block );
        if ( by_signature.size() == count )
            return block;
        count = by_signature.size();
    }
}

} // namespace

Transducer minimize( const Transducer& m, std::size_t max_states )
{
    const StateGraph g = tabulate( m, max_states );
    const auto block = refine( g );

    // Renumber blocks breadth-first from the initial state so the result is
    // independent of the refinement's internal numbering.
    constexpr auto unset = static_cast<std::uint32_t>( -1 );
    std::vector<std::uint32_t> id( g.states.size(), unset );
    std::vector<std::size_t> representative;
    auto claim = [ & ]( std::size_t s ) {
        if ( id[ block[ s ] ] == unset )
        {
            id[ block[ s ] ] = static_cast<std::uint32_t>( representative.size() );
            representative.push_back( s );
        }
    };
    claim( 0 );
    for ( std::size_t i = 0; i < representative.size(); ++i )
        for ( auto t : g.next[ representative[ i ] ] )
            claim( t );

    StateGraph q;
    q.inputs = g.inputs;
    q.outputs = g.outputs;
    for ( std::size_t i = 0; i < representative.size(); ++i )
    {
        const std::size_t r = representative[ i ];
        std::vector<std::uint32_t> row;
        row.reserve( g.next[ r ].size() );
        for ( auto t : g.next[ r ] )
            row.push_back( id[ block[ t ] ] );
        q.states.push_back( State{ { static_cast<std::int32_t>( i ) } } );
        q.next.push_back( std::move( row ) );
        q.out.push_back( g.out[ r ] );
    }
    return from_graph( q );
}

} // namespace moore
