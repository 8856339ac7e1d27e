#include "moore/algebra.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace moore
{

namespace
{

struct ElementHash
{
    std::size_t operator()( const Element& e ) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for ( auto x : e )
            h = ( h ^ x ) * 1099511628211ull;
        return h;
    }
};

/// Only fixed points lie on cycles of e.
bool loops_trivial( const Element& e )
{
    // 0 = unseen, 1 = on current walk, 2 = done
    std::vector<std::uint8_t> mark( e.size(), 0 );
    std::vector<std::uint32_t> walk;
    for ( std::uint32_t s = 0; s < e.size(); ++s )
    {
        if ( mark[ s ] )
            continue;
        walk.clear();
        std::uint32_t x = s;
        while ( !mark[ x ] )
        {
            mark[ x ] = 1;
            walk.push_back( x );
            x = e[ x ];
        }
        if ( mark[ x ] == 1 && e[ x ] != x )
            return false;
        for ( auto y : walk )
            mark[ y ] = 2;
    }
    return true;
}

} // namespace

Element TransformationMonoid::compose( const Element& a, const Element& b )
{
    Element r( a.size() );
    for ( std::size_t s = 0; s < a.size(); ++s )
        r[ s ] = b[ a[ s ] ];
    return r;
}

std::size_t TransformationMonoid::find( const Element& e ) const
{
    for ( std::size_t i = 0; i < elements.size(); ++i )
        if ( elements[ i ] == e )
            return i;
    return elements.size();
}

TransformationMonoid monoid( const Transducer& m, std::size_t max_elements, std::size_t max_states )
{
    const StateGraph g = tabulate( minimize( m, max_states ), max_states );
    TransformationMonoid mon;
    mon.inputs = g.inputs;
    mon.state_universe = g.states;
    const std::size_t n = g.states.size();
    const std::size_t samples = sample_count( g.inputs );

    std::unordered_map<Element, std::size_t, ElementHash> index;
    auto intern = [ & ]( Element e ) {
        auto [ it, fresh ] = index.emplace( e, mon.elements.size() );
        if ( fresh )
        {
            if ( mon.elements.size() >= max_elements )
                throw ElementBudgetExceeded( "monoid has more than " + std::to_string( max_elements ) + " elements" );
            mon.elements.push_back( std::move( e ) );
        }
        return it->second;
    };

    Element id( n );
    for ( std::uint32_t s = 0; s < n; ++s )
        id[ s ] = s;
    intern( std::move( id ) );

    std::vector<Element> gens;
    for ( std::size_t a = 0; a < samples; ++a )
    {
        Element e( n );
        for ( std::size_t s = 0; s < n; ++s )
            e[ s ] = g.next[ s ][ a ];
        mon.generators.push_back( intern( e ) );
        gens.push_back( std::move( e ) );
    }
    // Right-multiplying every element by every generator reaches all words.
    for ( std::size_t i = 0; i < mon.elements.size(); ++i )
        for ( const auto& gen : gens )
            intern( TransformationMonoid::compose( mon.elements[ i ], gen ) );
    return mon;
}

Element act( const TransformationMonoid& mon, const Trace& w )
{
    const Trace r = w.reordered( mon.inputs );
    Element e = mon.identity();
    for ( std::size_t i = 0; i < r.size(); ++i )
        e = TransformationMonoid::compose( e, mon.elements[ mon.generators[ sample_index( mon.inputs, r.row( i ) ) ] ] );
    return e;
}

MonoidStats describe( const TransformationMonoid& mon )
{
    MonoidStats st;
    st.size = mon.size();
    st.states = mon.state_universe.size();
    std::vector<std::size_t> gens = mon.generators;
    std::sort( gens.begin(), gens.end() );
    st.distinct_generators = static_cast<std::size_t>( std::unique( gens.begin(), gens.end() ) - gens.begin() );
    for ( std::size_t i = 0; i < mon.size(); ++i )
    {
        const Element& e = mon.elements[ i ];
        if ( TransformationMonoid::compose( e, e ) == e )
            ++st.idempotents;
        if ( i > 0 )
        {
            std::vector<bool> hit( e.size(), false );
            bool bijective = true;
            for ( auto x : e )
            {
                if ( hit[ x ] )
                    bijective = false;
                hit[ x ] = true;
            }
            if ( bijective )
                st.has_nontrivial_unit = true;
        }
        if ( !loops_trivial( e ) )
            st.aperiodic = false;
    }
    return st;
}

bool is_combinational( const Transducer& m, std::size_t max_elements, std::size_t max_states )
{
    const auto mon = monoid( m, max_elements, max_states );
    for ( const auto& e : mon.elements )
        if ( !loops_trivial( e ) )
            return false;
    return true;
}

bool has_only_self_loops( const Transducer& m, std::size_t max_states )
{
    const StateGraph g = tabulate( minimize( m, max_states ), max_states );
    const std::size_t n = g.states.size();
    std::vector<std::size_t> indegree( n, 0 );
    std::vector<std::vector<std::uint32_t>> succ( n );
    for ( std::uint32_t s = 0; s < n; ++s )
    {
        std::vector<std::uint32_t> targets = g.next[ s ];
        std::sort( targets.begin(), targets.end() );
        targets.erase( std::unique( targets.begin(), targets.end() ), targets.end() );
        for ( auto t : targets )
            if ( t != s )
            {
                succ[ s ].push_back( t );
                ++indegree[ t ];
            }
    }
    std::vector<std::uint32_t> ready;
    for ( std::uint32_t s = 0; s < n; ++s )
        if ( indegree[ s ] == 0 )
            ready.push_back( s );
    std::size_t removed = 0;
    while ( !ready.empty() )
    {
        const auto s = ready.back();
        ready.pop_back();
        ++removed;
        for ( auto t : succ[ s ] )
            if ( --indegree[ t ] == 0 )
                ready.push_back( t );
    }
    return removed == n;
}

Verdict monoid_laws( const TransformationMonoid& mon, std::size_t trials, std::uint64_t seed )
{
    Verdict v;
    const auto fail = [ & ]( std::string why ) {
        v.status = Status::fail;
        v.detail = std::move( why );
        return v;
    };
    if ( mon.elements.empty() )
        return fail( "monoid has no elements" );
    const Element& id = mon.identity();
    for ( std::size_t s = 0; s < id.size(); ++s )
        if ( id[ s ] != s )
            return fail( "element 0 is not the identity" );

    std::unordered_map<Element, std::size_t, ElementHash> index;
    for ( std::size_t i = 0; i < mon.size(); ++i )
        index.emplace( mon.elements[ i ], i );
    if ( index.size() != mon.size() )
        return fail( "duplicate elements" );

    for ( std::size_t i = 0; i < mon.size(); ++i )
    {
        const Element& a = mon.elements[ i ];
        if ( TransformationMonoid::compose( id, a ) != a || TransformationMonoid::compose( a, id ) != a )
            return fail( "identity is not neutral for element " + std::to_string( i ) );
        for ( std::size_t j = 0; j < mon.size(); ++j )
        {
            ++v.traces_explored;
            if ( !index.contains( TransformationMonoid::compose( a, mon.elements[ j ] ) ) )
                return fail( "not closed: " + std::to_string( i ) + " then " + std::to_string( j ) );
        }
    }

    std::mt19937_64 rng( seed );
    for ( std::size_t k = 0; k < trials; ++k )
    {
        const auto& a = mon.elements[ rng() % mon.size() ];
        const auto& b = mon.elements[ rng() % mon.size() ];
        const auto& c = mon.elements[ rng() % mon.size() ];
        using M = TransformationMonoid;
        if ( M::compose( M::compose( a, b ), c ) != M::compose( a, M::compose( b, c ) ) )
            return fail( "associativity fails" );
    }
    v.status = Status::pass;
    return v;
}

} // namespace moore
